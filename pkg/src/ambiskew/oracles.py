"""Slow, independent re-derivations of the fast kernel answers.

Three oracles, each deliberately structured unlike the code it checks:

* ``slow_mul`` multiplies by free-word rewriting.  A product is a bag of
  words in y, x and coefficient atoms; single adjacent-pair rewrites using
  only the defining relations are applied in an order chosen by a seeded
  generator until every word is normal.  Confluence of the rewriting
  system means any order must land on the fast multiplier's answer.
* ``splitting_search`` enumerates every candidate splitting element with
  bounded support and bounded integer coefficients and keeps those that
  split v exactly.  An empty result certifies, for that box, what the
  solver's ``singular`` verdict claims globally.
* ``special_search`` enumerates monomial candidates in a bounded window
  of powers and replays the three special-element identities on each.

>>> from .algebras import LaurentAlgebra, diagonal_auto
>>> from .rings import AmbiskewRing
>>> from .scalars import ScalarContext
>>> import random
>>> ctx = ScalarContext()
>>> alg = LaurentAlgebra(ctx)
>>> two = ctx.int_(2)
>>> ring = AmbiskewRing(alg, diagonal_auto(alg, {"t": two}), alg.gen_elem("t"), two)
>>> rng = random.Random(7)
>>> f = ring.add(ring.gen_elem("x"), ring.gen_elem("y"))
>>> ring.eq(slow_mul(ring, f, f, rng), ring.mul(f, f))
True
>>> [(sp.m, sp.j, alg.render(sp.c)) for sp in special_search(ring, window=1)]
[(0, -1, 't^-1'), (0, 1, 't')]
"""

from __future__ import annotations

import itertools
import random

from .algebras import normalizing_auto
from .localization import SpecialElement
from .scalars import Scalar

__all__ = [
    "brute_force_oracles",
    "slow_mul",
    "special_search",
    "splitting_search",
]


# ---------------------------------------------------------------------------
# the word-rewriting multiplier
# ---------------------------------------------------------------------------

_Y = "y"
_X = "x"


def _word_of(ring, key, scalar: Scalar):
    i, j, bk = key
    atoms: list = [_X] * i
    atoms.append(("c", {bk: ring.ctx.one}))
    atoms.extend([_Y] * j)
    return [scalar, atoms]


def _rewrite_spots(word) -> list[int]:
    atoms = word[1]
    spots = []
    for i in range(len(atoms) - 1):
        a, b = atoms[i], atoms[i + 1]
        if a is _Y and (b is _X or isinstance(b, tuple)):
            spots.append(i)
        elif isinstance(a, tuple) and (b is _X or isinstance(b, tuple)):
            spots.append(i)
    return spots


def _apply_rule(ring, word, pos: int) -> list:
    scalar, atoms = word
    a, b = atoms[pos], atoms[pos + 1]
    pre, post = atoms[:pos], atoms[pos + 2:]
    base = ring.base
    if a is _Y and b is _X:
        inv = ring.rho.inv()
        out = [[scalar * inv, pre + [_X, _Y] + post]]
        if ring.v:
            out.append([-(scalar * inv), pre + [("c", dict(ring.v))] + post])
        return out
    if a is _Y:
        moved = base.apply(ring.alpha, b[1])
        if not moved:
            return []
        return [[scalar, pre + [("c", moved), _Y] + post]]
    if b is _X:
        moved = base.apply(ring.beta_inv, a[1])
        if not moved:
            return []
        return [[scalar, pre + [_X, ("c", moved)] + post]]
    merged = base.mul(a[1], b[1])
    if not merged:
        return []
    return [[scalar, pre + [("c", merged)] + post]]


def _accumulate(ring, word, out: dict) -> None:
    scalar, atoms = word
    i = 0
    while i < len(atoms) and atoms[i] is _X:
        i += 1
    coeff = dict(ring.base.one)
    k = i
    if k < len(atoms) and isinstance(atoms[k], tuple):
        coeff = atoms[k][1]
        k += 1
    j = len(atoms) - k
    coeff = ring.base.smul(scalar, coeff)
    for bk, s in coeff.items():
        key = (i, j, bk)
        tot = out.get(key, ring.ctx.zero) + s
        if tot.is_zero():
            out.pop(key, None)
        else:
            out[key] = tot


def slow_mul(ring, f: dict, g: dict, rng: random.Random | None = None) -> dict:
    """The product f*g by randomized single-step word rewriting."""
    if rng is None:
        rng = random.Random(0)
    words = []
    for k1, s1 in f.items():
        for k2, s2 in g.items():
            w1, w2 = _word_of(ring, k1, s1), _word_of(ring, k2, s2)
            words.append([w1[0] * w2[0], w1[1] + w2[1]])
    out: dict = {}
    while words:
        word = words.pop(rng.randrange(len(words)))
        if word[0].is_zero():
            continue
        spots = _rewrite_spots(word)
        if not spots:
            _accumulate(ring, word, out)
            continue
        words.extend(_apply_rule(ring, word, rng.choice(spots)))
    return out


# ---------------------------------------------------------------------------
# exhaustive searches
# ---------------------------------------------------------------------------


def splitting_search(ring, exponents=(0, 1), bound: int = 2) -> list[dict]:
    """Every admissible u with support in ``exponents``, integer
    coefficients in [-bound, bound], and v = u - rho*alpha(u).

    >>> from .algebras import CyclicGroupAlgebra, DiagonalAuto
    >>> from .rings import AmbiskewRing
    >>> from .scalars import ScalarContext
    >>> ctx = ScalarContext()
    >>> fc2 = CyclicGroupAlgebra(ctx, 2, -ctx.one)
    >>> flip = DiagonalAuto((-ctx.one,))
    >>> ring = AmbiskewRing(fc2, flip, dict(fc2.one), ctx.one)
    >>> splitting_search(ring, exponents=(0, 1), bound=3)
    []
    """
    base = ring.base
    ctx = ring.ctx
    found = []
    for coeffs in itertools.product(range(-bound, bound + 1),
                                    repeat=len(exponents)):
        u = {e: ctx.int_(c) for e, c in zip(exponents, coeffs) if c}
        lhs = base.sub(u, base.smul(ring.rho, base.apply(ring.alpha, u)))
        if not base.eq(lhs, ring.v):
            continue
        if u and normalizing_auto(base, u) is None:
            continue
        if not base.eq(base.apply(ring.gamma, u), u):
            continue
        found.append(u)
    return found


def special_search(ring, window: int = 4) -> list[SpecialElement]:
    """Every monomial (m, j)-special element with powers and indices in
    [-window, window] and (m, j) != (0, 0), each replayed exactly."""
    base = ring.base
    found = []
    monomials = _monomials(base, window)
    for m, j in itertools.product(range(-window, window + 1), repeat=2):
        if (m, j) == (0, 0):
            continue
        for c in monomials:
            witness = SpecialElement(c, m, j)
            try:
                witness.check(base, ring.alpha, ring.gamma, ring.rho)
            except AssertionError:
                continue
            found.append(witness)
    return found


def _monomials(base, window: int) -> list[dict]:
    kind = base.kind
    if kind == "field":
        return [dict(base.one)]
    if kind == "laurent":
        return [{e: base.ctx.one} for e in range(-window, window + 1)]
    if kind == "cyclic_group":
        return [{e: base.ctx.one} for e in range(base.n)]
    if kind == "quadratic":
        return [{0: base.ctx.one}, {1: base.ctx.one}]
    if kind == "poly":
        return [{e: base.ctx.one} for e in range(window + 1)]
    raise ValueError(f"no monomial enumeration for a {kind} base")


def brute_force_oracles(ring, products: int = 25, exponents=(0, 1),
                        bound: int = 2, window: int = 4,
                        seed: int = 0) -> dict:
    """Run all three oracles and summarize.

    ``products`` random pairs are multiplied both ways; the summary
    records whether every slow product matched the fast one, the rendered
    splitting elements found in the box, and the (m, j) pairs of the
    special elements found in the window.
    """
    rng = random.Random(seed)
    agree = 0
    for _ in range(products):
        f = _random_element(ring, rng)
        g = _random_element(ring, rng)
        if ring.eq(slow_mul(ring, f, g, rng), ring.mul(f, g)):
            agree += 1
    splittings = [ring.base.render(u) for u in
                  splitting_search(ring, exponents, bound)]
    specials = [(sp.m, sp.j, ring.base.render(sp.c))
                for sp in special_search(ring, window)]
    return {
        "products": products,
        "products_agree": agree,
        "splittings": splittings,
        "specials": specials,
    }


def _random_element(ring, rng: random.Random) -> dict:
    base = ring.base
    out: dict = {}
    for _ in range(rng.randrange(1, 4)):
        i, j = rng.randrange(0, 3), rng.randrange(0, 3)
        mono = rng.choice(_monomials(base, 2))
        coeff = base.smul(ring.ctx.int_(rng.randrange(-3, 4)), mono)
        term = {(i, j, bk): s for bk, s in coeff.items()}
        out = ring.add(out, term)
    return out
