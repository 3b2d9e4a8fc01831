"""Multiplicative structure of scalars.

Several decision procedures reduce to exact questions about the
multiplicative group generated by finitely many scalars: whether a product
of powers can equal 1, and what the full lattice of such relations is.  For
scalars that are "monomial-like" (a root of unity times a rational times a
monomial in the parameters) this is decidable: torsion exponents live mod M
(the torsion order of the coefficient field), prime and parameter exponents
live in Z, and the relation lattice is an integer kernel with one congruence
row per condition.

Scalars outside that shape (e.g. 1 + zeta) have no decomposition here and
the callers report Inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .intlattice import kernel_with_congruences
from .scalars import Scalar, ScalarContext


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def factor_rational(c: Fraction) -> dict[int, int]:
    """Prime factorization of a positive rational, exponents in Z.

    >>> factor_rational(Fraction(12, 5))
    {2: 2, 3: 1, 5: -1}
    """
    if c <= 0:
        raise ValueError("factor_rational wants a positive rational")
    out = _factor_int(c.numerator)
    for p, e in _factor_int(c.denominator).items():
        out[p] = out.get(p, 0) - e
    return dict(sorted(out.items()))


@lru_cache(maxsize=None)
def _dlog_table(p: int) -> tuple[int, dict[int, int]]:
    """A primitive root g mod p and the full discrete-log table."""
    for g in range(2, p):
        seen = {}
        x = 1
        for e in range(p - 1):
            if x in seen:
                break
            seen[x] = e
            x = x * g % p
        if len(seen) == p - 1:
            return g, seen
    return 1, {1: 0}  # p == 2


def torsion_modulus(ctx: ScalarContext) -> int:
    """Order of the torsion unit group of the coefficient field."""
    if ctx.characteristic:
        return ctx.characteristic - 1
    n = ctx.cyclotomic_order
    return n if n % 2 == 0 else 2 * n


def torsion_generator(ctx: ScalarContext) -> Scalar:
    """A generator of the torsion units (order = torsion_modulus)."""
    if ctx.characteristic:
        g, _ = _dlog_table(ctx.characteristic)
        return ctx.int_(g)
    n = ctx.cyclotomic_order
    if n % 2 == 0:
        return ctx.zeta()
    # -zeta^((n+1)/2) squares to zeta and has order 2n
    return -(ctx.zeta((n + 1) // 2))


@dataclass(frozen=True)
class MultExpr:
    """torsion_generator^torsion * prod p^e_p * prod param^e_i."""

    torsion: int
    primes: tuple[tuple[int, int], ...]
    params: tuple[int, ...]


def decompose(s: Scalar) -> MultExpr | None:
    """Monomial-like decomposition of a nonzero scalar, or None.

    >>> ctx = ScalarContext(cyclotomic_order=6, parameters=("q",))
    >>> decompose(ctx.fraction(Fraction(-12, 5)) * ctx.zeta(2) * ctx.param("q") ** 3)
    MultExpr(torsion=5, primes=((2, 2), (3, 1), (5, -1)), params=(3,))
    """
    if s.is_zero() or len(s.num) != 1 or len(s.den) != 1:
        return None
    (en, cn), = s.num.items()
    (ed, cd), = s.den.items()
    params = tuple(a - b for a, b in zip(en, ed))
    dom = s.ctx.dom
    c = dom.div(cn, cd)
    m = torsion_modulus(s.ctx)
    if s.ctx.characteristic:
        _, table = _dlog_table(s.ctx.characteristic)
        return MultExpr(table[c] % m if m > 1 else 0, (), params)
    n = s.ctx.cyclotomic_order
    for k in range(n):
        rat = dom.rational_value(dom.mul(c, dom.zeta_pow(-k)))
        if rat is not None:
            sign = rat < 0
            primes = tuple(sorted(factor_rational(abs(rat)).items()))
            t = k * (1 if n % 2 == 0 else 2)
            if sign:
                t += m // 2
            return MultExpr(t % m, primes, params)
    return None


def recompose(ctx: ScalarContext, e: MultExpr) -> Scalar:
    """Inverse of decompose, used to cross-check decompositions."""
    s = torsion_generator(ctx) ** e.torsion
    for p, k in e.primes:
        s = s * ctx.int_(p) ** k
    for name, k in zip(ctx.parameters, e.params):
        s = s * ctx.param(name) ** k
    return s


def relation_kernel(conditions: list[list[Scalar]]) -> list[list[int]] | None:
    """Basis of {x in Z^v : prod_i cond[i]^x_i = 1 for every condition}.

    Each condition is a list of scalars aligned with the variables.  Returns
    None when some scalar has no monomial-like decomposition (the caller
    should report Inconclusive rather than guess).
    """
    if not conditions or not conditions[0]:
        raise ValueError("relation_kernel needs at least one condition and variable")
    ctx = conditions[0][0].ctx
    nvars = len(conditions[0])
    decs = []
    for cond in conditions:
        if len(cond) != nvars:
            raise ValueError("conditions must all have the same arity")
        row = [decompose(s) for s in cond]
        if any(d is None for d in row):
            return None
        decs.append(row)
    primes = sorted({p for row in decs for d in row for p, _ in d.primes})
    m = torsion_modulus(ctx)
    exact: list[list[int]] = []
    mod_rows: list[list[int]] = []
    for row in decs:
        for p in primes:
            r = [dict(d.primes).get(p, 0) for d in row]
            if any(r):
                exact.append(r)
        for i in range(len(ctx.parameters)):
            r = [d.params[i] for d in row]
            if any(r):
                exact.append(r)
        if m > 1:
            r = [d.torsion for d in row]
            if any(c % m for c in r):
                mod_rows.append(r)
    basis = kernel_with_congruences(exact, mod_rows, m, nvars)
    return sorted(basis, key=lambda v: (sum(map(abs, v)), v))
