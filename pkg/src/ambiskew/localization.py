"""Simplicity of the Casimir localization S = R_Z.

A conformal quadruple has a normal Casimir element z, and inverting its
powers yields the localization S.  Simplicity of S is equivalent to three
statements inside the coefficient algebra: {alpha, gamma}-simplicity, the
absence of (m, j)-special elements with (m, j) != (0, 0), and membership of
some power of the splitting element u in v^(m)A for every m >= 1.  The
localization itself is never constructed; every check is coefficient
arithmetic.

For diagonal automorphisms on a monomial basis the special-element hunt is
an integer lattice problem: the coefficient field has no zero divisors, so
each defining identity pins one multiplicative relation between rho and the
generator scales, and a witness exists exactly when the relation lattice
contains a vector of the wanted shape.

>>> from .algebras import FieldAlgebra
>>> from .rings import AmbiskewRing
>>> from .scalars import ScalarContext
>>> ctx = ScalarContext(parameters=("q",))
>>> field = FieldAlgebra(ctx)
>>> plane = AmbiskewRing(field, field.identity_auto(), {}, ctx.param("q"))
>>> localized_simple(plane).status.value
'holds'
>>> zctx = ScalarContext(cyclotomic_order=5)
>>> zfield = FieldAlgebra(zctx)
>>> zplane = AmbiskewRing(zfield, zfield.identity_auto(), {}, zctx.zeta())
>>> bad = localized_simple(zplane)
>>> bad.reason
'failed: no_special'
>>> dict(bad.conditions)["no_special"].certificate["m"]
5
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .algebras import AffineAuto, DiagonalAuto, NestedAuto
from .bounds import DEFAULT, Bounds
from .intlattice import column_kernel
from .multiplicative import relation_kernel
from .scalars import Scalar, root_of_unity_order
from .verdict import Status, Verdict, conjunction, fails, holds, inconclusive

__all__ = [
    "SpecialElement",
    "TorusMatrix",
    "localized_simple",
    "quantum_torus_simple",
    "special_element_search",
]

_UNSUPPORTED = ("the special-element search needs diagonal automorphisms on "
                "a monomial basis, or a polynomial shift with gamma = id")


# ---------------------------------------------------------------------------
# special elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialElement:
    """A nonzero c with gamma(c) = rho^m c, alpha(c) = rho^j c and
    c*gamma^j(a) = alpha^m(a)*c for every a.

    Any such element with (m, j) != (0, 0) obstructs the simplicity of the
    Casimir localization.  ``check`` replays the three identities exactly;
    the search never returns a witness it has not replayed.
    """

    c: dict
    m: int
    j: int

    def check(self, algebra, alpha, gamma, rho: Scalar) -> None:
        if algebra.is_zero(self.c):
            raise AssertionError("a special element must be nonzero")
        if not algebra.eq(algebra.apply(gamma, self.c),
                          algebra.smul(rho ** self.m, self.c)):
            raise AssertionError("gamma does not scale the witness by rho^m")
        if not algebra.eq(algebra.apply(alpha, self.c),
                          algebra.smul(rho ** self.j, self.c)):
            raise AssertionError("alpha does not scale the witness by rho^j")
        gamma_j = _auto_power(algebra, gamma, self.j)
        alpha_m = _auto_power(algebra, alpha, self.m)
        for name in algebra.gens():
            a = algebra.gen_elem(name)
            left = algebra.mul(self.c, algebra.apply(gamma_j, a))
            right = algebra.mul(algebra.apply(alpha_m, a), self.c)
            if not algebra.eq(left, right):
                raise AssertionError(f"the witness is not normal against {name}")


def _auto_power(algebra, auto, k: int):
    if k < 0:
        return _auto_power(algebra, algebra.invert(auto), -k)
    out = algebra.identity_auto()
    for _ in range(k):
        out = algebra.compose(auto, out)
    return out


def special_element_search(algebra, alpha, gamma, rho: Scalar,
                           mode: str = "all", units_only: bool = False):
    """Hunt for an (m, j)-special element, returning ``(witness, complete)``.

    ``mode="all"`` wants any (m, j) != (0, 0); ``mode="zero_m_only"`` wants
    m = 0 and j != 0, the relaxed form available when u is not nilpotent.
    ``complete=True`` makes a ``None`` definitive.  ``units_only`` restricts
    the hunt to unit candidates, which loses nothing when the algebra is
    {alpha, gamma}-simple (special elements are then forced to be units);
    over an iterated coefficient ring that restriction is what makes the
    embedded-monomial reduction exhaustive.

    >>> from .algebras import FieldAlgebra
    >>> from .scalars import ScalarContext
    >>> ctx = ScalarContext(cyclotomic_order=6)
    >>> field = FieldAlgebra(ctx)
    >>> one = field.identity_auto()
    >>> w, complete = special_element_search(field, one, one, ctx.zeta(),
    ...                                      mode="zero_m_only")
    >>> (w.m, w.j), complete
    ((0, 6), True)
    >>> special_element_search(field, one, one, ctx.int_(2))
    (None, True)
    """
    if mode not in ("all", "zero_m_only"):
        raise ValueError(f"unknown search mode: {mode!r}")
    if algebra.auto_is_identity(alpha) and algebra.auto_is_identity(gamma):
        return _identity_pair_search(algebra, alpha, gamma, rho, mode)
    if algebra.kind == "poly":
        return _shift_search(algebra, alpha, gamma, rho)
    frame = _eigen_frame(algebra, alpha, gamma, units_only)
    return _lattice_search(algebra, alpha, gamma, rho, mode, frame)


def _identity_pair_search(algebra, alpha, gamma, rho: Scalar, mode: str):
    """alpha = gamma = id: scalars act without zero divisors, so both eigen
    identities force rho^m = rho^j = 1, and c = 1 is then a witness because
    the normality identity degenerates to a = a."""
    k = root_of_unity_order(rho)
    if k is None:
        return None, True
    m = 0 if mode == "zero_m_only" else k
    witness = SpecialElement(algebra.one, m, k)
    witness.check(algebra, alpha, gamma, rho)
    return witness, True


def _shift_search(algebra, alpha, gamma, rho: Scalar):
    """Polynomial algebra with a shift: alpha preserves degree and leading
    coefficient, so alpha(c) = rho^j c forces rho^j = 1; normality of a
    regular witness in a domain forces alpha^m = gamma^j = id, and with
    gamma = id that pins m = 0."""
    if not algebra.auto_is_identity(gamma):
        raise ValueError(_UNSUPPORTED)
    if not isinstance(alpha, AffineAuto) or alpha.a != algebra.ctx.one \
            or alpha.b.is_zero():
        raise ValueError(_UNSUPPORTED)
    k = root_of_unity_order(rho)
    if k is None:
        return None, True
    witness = SpecialElement(algebra.one, 0, k)
    witness.check(algebra, alpha, gamma, rho)
    return witness, True


class _Frame(NamedTuple):
    """Eigen data of a diagonal pair: one (alpha-scale, gamma-scale) per
    free exponent of a candidate monomial, one condition triple per algebra
    generator, a builder from exponent vectors to elements, and whether the
    candidate set loses no generality."""

    index_pairs: list
    gen_conditions: list
    build: object
    complete: bool


def _eigen_frame(algebra, alpha, gamma, units_only: bool) -> _Frame:
    kind = algebra.kind
    ctx = algebra.ctx
    if kind == "field":
        return _Frame([], [], lambda exps: algebra.one, True)
    if kind in ("cyclic_group", "laurent"):
        for auto in (alpha, gamma):
            if not isinstance(auto, DiagonalAuto):
                raise ValueError(_UNSUPPORTED)
        pair = (algebra.eigenvalue(alpha, 1), algebra.eigenvalue(gamma, 1))
        if kind == "cyclic_group":
            build = lambda exps: algebra.monomial(exps[0] % algebra.n, ctx.one)
        else:
            build = lambda exps: algebra.monomial(exps[0], ctx.one)
        return _Frame([pair], [pair + ((ctx.one,),)], build, True)
    if kind == "ambiskew":
        if not isinstance(alpha, NestedAuto) or not isinstance(gamma, NestedAuto):
            raise ValueError(_UNSUPPORTED)
        inner = _eigen_frame(algebra.base, alpha.base, gamma.base, units_only)
        # Candidates are embedded ground monomials.  Moving one past y or x
        # uses the ring's own structure maps, so those normality conditions
        # pick up the candidate's eigenvalue under alpha or beta.
        own_alpha = _slot_scales(algebra.base, algebra.alpha)
        own_beta = _slot_scales(algebra.base, algebra.beta)
        gens = list(inner.gen_conditions)
        gens.append((alpha.lam_y, gamma.lam_y,
                     tuple(s ** -1 for s in own_alpha)))
        gens.append((alpha.lam_x, gamma.lam_x,
                     tuple(s ** -1 for s in own_beta)))
        build = lambda exps: algebra.embed(inner.build(exps))
        complete = bool(inner.complete and units_only
                        and algebra.is_domain() is True)
        return _Frame(inner.index_pairs, gens, build, complete)
    raise ValueError(_UNSUPPORTED)


def _slot_scales(algebra, auto) -> list[Scalar]:
    """Eigenvalues of an automorphism on the innermost ground generators,
    aligned with the frame's exponent slots."""
    if algebra.kind == "ambiskew":
        return _slot_scales(algebra.base, auto.base)
    if algebra.kind == "field":
        return []
    if not isinstance(auto, DiagonalAuto):
        raise ValueError(_UNSUPPORTED)
    return [algebra.eigenvalue(auto, 1)]


def _lattice_search(algebra, alpha, gamma, rho: Scalar, mode: str,
                    frame: _Frame):
    ctx = algebra.ctx
    one = ctx.one
    rho_inv = rho ** -1
    conditions = [
        [rho_inv, one] + [lg for _, lg in frame.index_pairs],
        [one, rho_inv] + [la for la, _ in frame.index_pairs],
    ]
    for la, lg, factors in frame.gen_conditions:
        conditions.append([la ** -1, lg] + list(factors))
    basis = relation_kernel(conditions)
    if basis is None:
        return None, False
    if mode == "zero_m_only":
        basis = _zero_m_sublattice(basis)
        wanted = lambda m, j: m == 0 and j != 0
    else:
        wanted = lambda m, j: (m, j) != (0, 0)
    if not any(wanted(b[0], b[1]) for b in basis):
        return None, frame.complete
    vec = _pick_vector(basis, wanted)
    witness = SpecialElement(frame.build(vec[2:]), vec[0], vec[1])
    witness.check(algebra, alpha, gamma, rho)
    return witness, True


def _zero_m_sublattice(basis: list[list[int]]) -> list[list[int]]:
    ms = [b[0] for b in basis]
    if all(v == 0 for v in ms):
        return [list(b) for b in basis]
    out = []
    for combo in column_kernel([ms], len(basis)):
        vec = [sum(c * b[t] for c, b in zip(combo, basis))
               for t in range(len(basis[0]))]
        if any(vec):
            out.append(vec)
    return out


def _pick_vector(basis: list[list[int]], wanted) -> list[int]:
    """Smallest usable vector among small combinations of the basis, so the
    reported witness does not depend on elimination order: sign-normalized,
    then minimal in max(|m|, |j|), then in exponent weight."""
    span = 2 if len(basis) <= 4 else 1
    best_key, best = None, None
    for combo in itertools.product(range(-span, span + 1), repeat=len(basis)):
        vec = [sum(c * b[t] for c, b in zip(combo, basis))
               for t in range(len(basis[0]))]
        m, j = vec[0], vec[1]
        if not wanted(m, j):
            continue
        if m < 0 or (m == 0 and j < 0):
            vec = [-t for t in vec]
            m, j = vec[0], vec[1]
        key = (max(abs(m), abs(j)), sum(abs(t) for t in vec[2:]), tuple(vec))
        if best_key is None or key < best_key:
            best_key, best = key, vec
    return best


# ---------------------------------------------------------------------------
# the localization criterion
# ---------------------------------------------------------------------------


def localized_simple(ring, bounds: Bounds = DEFAULT) -> Verdict:
    """Three-condition criterion for the simplicity of S = R_Z.

    Requires a conformal quadruple (a singular one has no Casimir element
    to invert and raises ValueError).  The conditions:

    - ``alpha_gamma_simple``: no proper nonzero ideal of the coefficient
      algebra is stable under both alpha and gamma;
    - ``no_special``: no (m, j)-special element with (m, j) != (0, 0); when
      the full hunt is out of reach but u is provably not nilpotent, the
      hunt may be relaxed to m = 0 (theorem tag ``localized.nonnilpotent``);
    - ``radical``: for every m >= 1 some power of u lies in v^(m)A, decided
      through the eigen structure of v or a bounded scan.
    """
    conf = ring.conformality()
    if conf.status is Status.FAILS:
        raise ValueError("the quadruple is singular: there is no Casimir "
                         "element to invert")
    if conf.status is not Status.HOLDS:
        raise ValueError("whether a Casimir element exists was not decided")
    base = ring.base
    nil = base.radical_contains(base.zero, conf.u)
    simple = base.alpha_simple([ring.alpha, ring.gamma])
    special, relaxed = _no_special(ring, nil, units_only=simple.holds)
    tag = "localized.nonnilpotent" if relaxed else "localized.full"
    return conjunction([
        ("alpha_gamma_simple", simple),
        ("no_special", special),
        ("radical", _radical_all_m(ring, conf.u, nil, bounds)),
    ], theorem=tag)


def _no_special(ring, nil: Verdict, units_only: bool) -> tuple[Verdict, bool]:
    base = ring.base
    note = None
    try:
        witness, complete = special_element_search(
            base, ring.alpha, ring.gamma, ring.rho, units_only=units_only)
    except ValueError as exc:
        witness, complete, note = None, False, str(exc)
    if witness is not None:
        return _special_fails(base, witness), False
    if complete:
        return holds("no (m, j)-special element exists with (m, j) != (0, 0)"), False
    if nil.status is Status.FAILS and note is None:
        witness, complete = special_element_search(
            base, ring.alpha, ring.gamma, ring.rho, mode="zero_m_only",
            units_only=units_only)
        if witness is not None:
            return _special_fails(base, witness), False
        if complete:
            return holds("no (0, j)-special element exists with j != 0, and "
                         "u is not nilpotent, which rules out m != 0"), True
    return inconclusive(note or "the special-element lattice was not decided"), False


def _special_fails(base, w: SpecialElement) -> Verdict:
    return fails(f"{base.render(w.c)} is ({w.m}, {w.j})-special",
                 certificate={"kind": "special_element", "m": w.m, "j": w.j,
                              "element": base.render(w.c)})


def _radical_all_m(ring, u: dict, nil: Verdict, bounds: Bounds) -> Verdict:
    base, ctx = ring.base, ring.ctx
    if nil.status is Status.HOLDS:
        cert = {"kind": "nilpotent_u"}
        if nil.certificate and "power" in nil.certificate:
            cert["power"] = nil.certificate["power"]
        return holds("u is nilpotent, so a power of u lies in every v^(m)A",
                     certificate=cert)
    if base.is_zero(ring.v):
        if nil.status is Status.FAILS:
            return fails("v = 0 and u is not nilpotent",
                         certificate={"kind": "vanishing_v_m", "m": 1})
        return inconclusive("v = 0, so the condition needs u to be "
                            "nilpotent, which was not decided")
    mu = ring.v_eigenvalue()
    if mu is None:
        return _radical_by_scan(ring, u, bounds)
    ratio = ring.rho * mu
    if ratio == ctx.one:
        vanish_at = ctx.characteristic or None
    else:
        vanish_at = root_of_unity_order(ratio)
    if vanish_at is not None:
        if not base.is_zero(ring.v_m(vanish_at)):
            raise AssertionError("v_m must vanish when the eigen ratio has "
                                 "finite multiplicative order")
        if nil.status is Status.FAILS:
            return fails(f"v^({vanish_at}) = 0 and u is not nilpotent",
                         certificate={"kind": "vanishing_v_m", "m": vanish_at,
                                      "ratio": str(ratio)})
        return inconclusive(f"v^({vanish_at}) = 0, so the condition needs u "
                            "to be nilpotent, which was not decided")
    inner = base.radical_contains(ring.v, u)
    if inner.status is Status.HOLDS:
        cert = {"kind": "eigen_radical", "ratio": str(ratio)}
        if inner.certificate and "power" in inner.certificate:
            cert["power"] = inner.certificate["power"]
        return holds("every v^(m) is a nonzero scalar multiple of v, whose "
                     "ideal absorbs a power of u", certificate=cert)
    if inner.status is Status.FAILS:
        return fails("no power of u lies in vA, which equals v^(m)A for "
                     "every m",
                     certificate={"kind": "radical_witness", "m": 1,
                                  "detail": inner.certificate})
    return inconclusive("membership of powers of u in vA was not decided")


def _radical_by_scan(ring, u: dict, bounds: Bounds) -> Verdict:
    base = ring.base
    for m in range(1, bounds.m_max + 1):
        answer = base.radical_contains(ring.v_m(m), u)
        if answer.status is Status.FAILS:
            return fails(f"no power of u lies in v^({m})A",
                         certificate={"kind": "radical_witness", "m": m,
                                      "detail": answer.certificate})
        if answer.status is not Status.HOLDS:
            return inconclusive(f"membership of powers of u in v^({m})A "
                                "was not decided")
    return inconclusive("v is not an eigenvector of alpha; membership "
                        f"verified through m = {bounds.m_max}",
                        certificate={"kind": "bounded_scan",
                                     "m_max": bounds.m_max})


# ---------------------------------------------------------------------------
# quantum tori
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusMatrix:
    """Commutation data for a quantum torus: x_i x_j = q_{i,j} x_j x_i.

    The diagonal must be 1 and the matrix multiplicatively antisymmetric,
    both exactly.
    """

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise ValueError("the commutation matrix needs at least one row")
        for row in self.entries:
            if len(row) != n:
                raise ValueError("the commutation matrix must be square")
        for i in range(n):
            if not self.entries[i][i].is_one():
                raise ValueError("the diagonal of a commutation matrix is 1")
            for j in range(n):
                q = self.entries[i][j]
                if q.is_zero():
                    raise ValueError("commutation scalars must be nonzero")
                if not (q * self.entries[j][i]).is_one():
                    raise ValueError("the commutation matrix is not "
                                     "multiplicatively antisymmetric")

    @property
    def n(self) -> int:
        return len(self.entries)


def quantum_torus_simple(Q: TorusMatrix) -> Verdict:
    """Whether the quantum torus with commutation matrix Q is simple.

    The torus is simple exactly when the only integer vector (m_1..m_n)
    with prod_k q_{k,i}^{m_k} = 1 for every column i is zero.  The integer
    relation lattice of the entries decides this; a nonzero kernel vector
    is returned as a replayable witness.

    >>> from .scalars import ScalarContext
    >>> ctx = ScalarContext(cyclotomic_order=6)
    >>> Q = TorusMatrix(((ctx.one, ctx.zeta()), (ctx.zeta() ** -1, ctx.one)))
    >>> quantum_torus_simple(Q).certificate["vector"]
    [0, 6]
    """
    n = Q.n
    conditions = [[Q.entries[k][i] for k in range(n)] for i in range(n)]
    basis = relation_kernel(conditions)
    if basis is None:
        return inconclusive("some commutation scalar has no monomial-like "
                            "decomposition", theorem="torus.lattice")
    if not basis:
        return holds("only the zero vector relates the columns of the "
                     "commutation matrix",
                     certificate={"kind": "trivial_kernel", "rank": n},
                     theorem="torus.lattice")
    vec = basis[0]
    for i in range(n):
        prod = Q.entries[0][i] ** vec[0]
        for k in range(1, n):
            prod = prod * Q.entries[k][i] ** vec[k]
        if not prod.is_one():
            raise AssertionError("the kernel vector does not replay to 1")
    return fails("the commutation scalars satisfy a nontrivial relation "
                 f"with exponents {vec}",
                 certificate={"kind": "torus_relation", "vector": list(vec)},
                 theorem="torus.lattice")
