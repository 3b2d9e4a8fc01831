"""Simplicity criteria for ambiskew polynomial rings.

In characteristic zero the ring R(A, alpha, v, rho) is simple exactly when
the coefficient algebra has no proper alpha-stable ideal, the defining
quadruple is singular (no admissible u solves v = u - rho*alpha(u)), and
every v^(m) is a unit of A.  In characteristic p the singularity condition
strengthens to the absence of a height-n witness: elements u and
b_0, ..., b_{n-1} with

    rho^(p^n) * alpha(u) - u = v^(p^n) + sum_i b_i * v^(p^i)

and alpha(b_i) = rho^(p^i - p^n) * b_i; height 0 is the ordinary splitting
equation.  A tower of extensions is certified level by level: once a level
is simple, every automorphism leaves only the trivial ideals stable, so
the next level reduces to its own singularity and unit conditions.

Every verdict carries a certificate.  A failing index m replays through
v_m and is_unit, a splitting element or height-n witness replays through
its defining equation, and a stable-ideal generator names the obstructing
ideal.  A search that merely exhausts a bound returns Inconclusive; Holds
is only claimed when the family structure makes the search complete.

>>> from .scalars import ScalarContext
>>> from .algebras import FieldAlgebra
>>> from .rings import AmbiskewRing
>>> ctx = ScalarContext()
>>> field = FieldAlgebra(ctx)
>>> weyl = AmbiskewRing(field, field.identity_auto(), field.one, ctx.one)
>>> simple_char0(weyl).status.value
'holds'
>>> qctx = ScalarContext(parameters=("q",))
>>> qfield = FieldAlgebra(qctx)
>>> plane = AmbiskewRing(qfield, qfield.identity_auto(), {}, qctx.param("q"))
>>> [name for name, sub in simple_char0(plane).conditions if sub.fails]
['singular', 'units']
"""

from __future__ import annotations

from .algebras import _diagonal_on_basis, scalar_ratio, solve_splitting_ex
from .bounds import DEFAULT, Bounds
from .linear import gauss_solve
from .scalars import root_of_unity_order
from .verdict import Status, Verdict, conjunction, fails, holds, inconclusive

# ---------------------------------------------------------------------------
# condition (iii): every v^(m) is a unit
# ---------------------------------------------------------------------------


def units_for_all_m(ring, bounds: Bounds = DEFAULT) -> Verdict:
    """Whether v^(m) is a unit of the coefficient algebra for all m >= 1.

    When v is an eigenvector of alpha the sequence collapses to q-integer
    multiples of v and the answer is exact for every m.  Otherwise the terms
    rho^l * alpha^l(v) are scanned for a scalar period, which turns each
    residue class of m into an integer pencil that the coefficient family
    decides; without a period the check is truncated at ``bounds.m_max``.
    """
    base, ctx = ring.base, ring.ctx
    p = ctx.characteristic
    if base.is_zero(ring.v):
        return fails("v^(1) = v is zero",
                     certificate={"kind": "vanishing_v_m", "m": 1})
    mu = ring.v_eigenvalue()
    if mu is None:
        return _units_by_period(ring, bounds)
    ratio = ring.rho * mu
    unit = base.is_unit(ring.v)
    if unit.status is Status.FAILS:
        return fails("v = v^(1) is not a unit",
                     certificate={"kind": "nonunit_v_m", "m": 1,
                                  "value": base.render(ring.v),
                                  "detail": unit.certificate})
    if unit.status is Status.INCONCLUSIVE:
        return inconclusive("whether v is a unit was not decided")
    if ratio == ctx.one:
        if p:
            if not base.is_zero(ring.v_m(p)):
                raise AssertionError("v_m(p) must vanish when the eigen "
                                     "ratio is one in characteristic p")
            return fails(f"v^({p}) = {p}*v vanishes in characteristic {p}",
                         certificate={"kind": "vanishing_v_m", "m": p,
                                      "ratio": str(ratio)})
        return holds("v^(m) = m*v for all m and v is a unit",
                     certificate=_eigen_certificate(base, ring, ratio, unit))
    order = root_of_unity_order(ratio)
    if order is not None:
        if not base.is_zero(ring.v_m(order)):
            raise AssertionError("v_m(k) must vanish when the eigen ratio "
                                 "is a k-th root of unity")
        return fails(
            f"v^({order}) vanishes: rho*alpha rescales v by a root of "
            f"unity of order {order}",
            certificate={"kind": "vanishing_v_m", "m": order,
                         "ratio": str(ratio)})
    return holds("v^(m) is a nonzero q-integer multiple of the unit v, "
                 "with a rescaling factor of infinite multiplicative order",
                 certificate=_eigen_certificate(base, ring, ratio, unit))


def _eigen_certificate(base, ring, ratio, unit) -> dict:
    cert = {"kind": "eigen_units", "ratio": str(ratio),
            "v": base.render(ring.v)}
    if unit.inverse is not None:
        cert["v_inverse"] = base.render(unit.inverse)
    return cert


def _units_by_period(ring, bounds: Bounds) -> Verdict:
    base, ctx = ring.base, ring.ctx
    term = dict(ring.v)
    period = ratio = None
    for l in range(1, bounds.period_max + 1):
        term = base.smul(ring.rho, base.apply(ring.alpha, term))
        r = scalar_ratio(base, term, ring.v)
        if r is not None:
            period, ratio = l, r
            break
    if period is None:
        return _units_by_scan(
            ring, bounds, f"no scalar period within {bounds.period_max} steps")
    span = period
    if ratio != ctx.one:
        order = root_of_unity_order(ratio)
        if order is None:
            return _units_by_scan(
                ring, bounds,
                f"the terms repeat only up to the factor {ratio}, which has "
                "infinite multiplicative order")
        span = period * order
    check = dict(ring.v)
    for _ in range(span):
        check = base.smul(ring.rho, base.apply(ring.alpha, check))
    if not base.eq(check, ring.v):
        raise AssertionError("the derived period does not reproduce v")
    return _units_by_pencils(ring, span, bounds)


def _units_by_pencils(ring, span: int, bounds: Bounds) -> Verdict:
    """Exact decision once rho^l * alpha^l(v) has exact period ``span``:
    v^(q*span + r) = q * v^(span) + v^(r) reduces each residue to a pencil."""
    base = ring.base
    top = ring.v_m(span)
    worst = None
    for r in range(span):
        start = 1 if r == 0 else 0
        try:
            q = base.first_nonunit_in_pencil(top, ring.v_m(r), start)
        except ValueError:
            return _units_by_scan(
                ring, bounds,
                "the coefficient tower does not decide unit pencils")
        if q is not None:
            m = q * span + r
            if worst is None or m < worst:
                worst = m
    if worst is None:
        return holds(
            f"the terms of v^(m) repeat with period {span} and every "
            "residue pencil stays invertible",
            certificate={"kind": "periodic_units", "period": span})
    bad = ring.v_m(worst)
    answer = base.is_unit(bad)
    if answer.status is Status.HOLDS:
        raise AssertionError(
            f"pencil decision disagrees with a direct unit check at m={worst}")
    return fails(f"v^({worst}) is not a unit",
                 certificate={"kind": "nonunit_v_m", "m": worst,
                              "value": base.render(bad),
                              "detail": answer.certificate})


def _units_by_scan(ring, bounds: Bounds, note: str) -> Verdict:
    base = ring.base
    for m in range(1, bounds.m_max + 1):
        answer = base.is_unit(ring.v_m(m))
        if answer.status is Status.FAILS:
            return fails(f"v^({m}) is not a unit",
                         certificate={"kind": "nonunit_v_m", "m": m,
                                      "value": base.render(ring.v_m(m)),
                                      "detail": answer.certificate})
        if answer.status is Status.INCONCLUSIVE:
            return inconclusive(
                f"whether v^({m}) is a unit was not decided")
    return inconclusive(
        f"{note}; units verified through m = {bounds.m_max}",
        certificate={"kind": "bounded_scan", "m_max": bounds.m_max})


# ---------------------------------------------------------------------------
# condition (ii): singularity
# ---------------------------------------------------------------------------


def singular(ring) -> Verdict:
    """Whether the quadruple admits no splitting element at all."""
    conf = ring.conformality()
    base = ring.base
    if conf.status is Status.HOLDS:
        return fails("v = u - rho*alpha(u) for an admissible u",
                     certificate={"kind": "splitting_element",
                                  "u": base.render(conf.u),
                                  "casimir": ring.render(conf.casimir)})
    if conf.status is Status.FAILS:
        cert = {"kind": "singular"}
        if conf.detail:
            cert["obstruction"] = conf.detail
        return holds("no admissible splitting element exists",
                     certificate=cert)
    return inconclusive("the splitting solver declined to decide",
                        certificate=conf.detail)


# ---------------------------------------------------------------------------
# characteristic zero
# ---------------------------------------------------------------------------


def simple_char0(ring, bounds: Bounds = DEFAULT) -> Verdict:
    """Simplicity of the ring when the scalars have characteristic zero.

    The three conditions are reported together so a failing ring shows every
    obstruction: a stable coefficient ideal, a splitting element (whose
    Casimir element generates a proper ideal), or a non-unit v^(m).
    """
    if ring.ctx.characteristic:
        raise ValueError("this criterion needs characteristic zero; "
                         "use simple_charp")
    conditions = [
        ("alpha_simple", ring.base.alpha_simple([ring.alpha])),
        ("singular", singular(ring)),
        ("units", units_for_all_m(ring, bounds)),
    ]
    return conjunction(conditions, theorem="simple.char0")


# ---------------------------------------------------------------------------
# characteristic p
# ---------------------------------------------------------------------------


def simple_charp(ring, bounds: Bounds = DEFAULT) -> Verdict:
    """Simplicity of the ring when the scalars have characteristic p > 0."""
    if not ring.ctx.characteristic:
        raise ValueError("this criterion needs positive characteristic; "
                         "use simple_char0")
    conditions = [
        ("alpha_simple", ring.base.alpha_simple([ring.alpha])),
        ("no_generalized_splitting", _no_generalized_splitting(ring, bounds)),
        ("units", units_for_all_m(ring, bounds)),
    ]
    return conjunction(conditions, theorem="simple.charp")


def _no_generalized_splitting(ring, bounds: Bounds) -> Verdict:
    base, ctx = ring.base, ring.ctx
    conf = ring.conformality()
    if conf.status is Status.HOLDS:
        return fails("a height-0 witness exists: an ordinary splitting element",
                     certificate={"kind": "generalized_splitting", "n": 0,
                                  "u": base.render(conf.u), "b": []})
    if conf.status is Status.INCONCLUSIVE:
        return inconclusive("the height-0 splitting solver declined to decide",
                            certificate=conf.detail)
    if not base.auto_is_identity(ring.gamma):
        return inconclusive(
            "the height-n witness search only runs over a trivial gamma")
    if not _diagonal_on_basis(base, ring.alpha):
        return inconclusive(
            "the height-n witness search needs alpha diagonal on the basis")
    if len(ring.v) == 1:
        b0 = _monomial_witness(base, ring.alpha, ring.v, ring.rho)
        if b0 is not None:
            return fails("a height-1 witness exists, with u = 0",
                         certificate={"kind": "generalized_splitting", "n": 1,
                                      "u": base.render({}),
                                      "b": [base.render(b0)]})
    keys = _finite_keys(base)
    if keys is None:
        return inconclusive(
            "the witness search is exhaustive only over finite-dimensional "
            "coefficient families or a monomial v")
    bound = _exhaustive_height(base, ring.alpha, ring.rho, ring.v, bounds)
    for n in range(1, bounds.n_max + 1):
        found = _witness_for_height(base, ring.alpha, ring.rho, ring.v, n, keys)
        if found is not None:
            u, bs = found
            return fails(f"a height-{n} witness exists",
                         certificate={"kind": "generalized_splitting", "n": n,
                                      "u": base.render(u),
                                      "b": [base.render(b) for b in bs]})
    if bound is not None and bound <= bounds.n_max:
        return holds(
            "no witness exists at any height: beyond the repetition of the "
            "Frobenius orbit of v the search adds nothing new",
            certificate={"kind": "no_witness", "n_searched": bounds.n_max,
                         "exhaustive_height": bound})
    return inconclusive(
        f"no witness up to height {bounds.n_max}, and the family gives no "
        "bound that closes the search",
        certificate={"kind": "search_exhausted", "n_max": bounds.n_max})


def _elem_power(algebra, a: dict, k: int) -> dict:
    out = dict(algebra.one)
    for _ in range(k):
        out = algebra.mul(out, a)
    return out


def _monomial_witness(base, alpha, v: dict, rho):
    """The height-1 witness b0 = -v^(p-1), u = 0, when it is admissible.

    For a monomial v the splitting equation can only be resonant when
    rho * alpha rescales v trivially, and then b0 satisfies both the
    eigenvalue side condition and the height-1 equation.  Both are replayed
    here rather than assumed.
    """
    ctx = base.ctx
    p = ctx.characteristic
    b0 = base.smul(-ctx.one, _elem_power(base, v, p - 1))
    if not base.eq(base.apply(alpha, b0), base.smul(rho ** (1 - p), b0)):
        return None
    if not base.is_zero(base.add(_elem_power(base, v, p), base.mul(b0, v))):
        return None
    return b0


def _finite_keys(base):
    if base.kind == "field":
        return [()]
    if base.kind == "cyclic_group":
        return list(range(base.n))
    if base.kind == "quadratic":
        return [0, 1]
    return None


def _witness_for_height(base, alpha, rho, v: dict, n: int, keys):
    """A witness (u, b_0..b_{n-1}) at height n over a finite basis, or None.

    The equation is linear in u and the b_i jointly once the b_i are
    restricted to the required alpha-eigenspaces, so a single exact solve
    settles existence.  Solutions are replayed before being returned.
    """
    ctx = base.ctx
    p = ctx.characteristic
    big = p ** n
    rho_big = rho ** big
    powers = [dict(v)]
    for _ in range(n):
        powers.append(_elem_power(base, powers[-1], p))
    columns = []
    for k in keys:
        lam = base.eigenvalue(alpha, k)
        scale = rho_big * lam - ctx.one
        columns.append((("u", k), {} if scale.is_zero() else {k: scale}))
    for i in range(n):
        target = rho ** (p ** i - big)
        for k in keys:
            if base.eigenvalue(alpha, k) == target:
                image = base.smul(-ctx.one, base.mul({k: ctx.one}, powers[i]))
                columns.append((("b", i, k), image))
    rows = [[image.get(kk, ctx.zero) for _, image in columns] for kk in keys]
    rhs = [powers[n].get(kk, ctx.zero) for kk in keys]
    sol = gauss_solve(rows, rhs)
    if sol is None:
        return None
    u: dict = {}
    bs: list[dict] = [dict() for _ in range(n)]
    for (label, _), value in zip(columns, sol):
        if value.is_zero():
            continue
        if label[0] == "u":
            u[label[1]] = value
        else:
            bs[label[1]][label[2]] = value
    lhs = base.sub(base.smul(rho_big, base.apply(alpha, u)), u)
    expect = powers[n]
    for i in range(n):
        expect = base.add(expect, base.mul(bs[i], powers[i]))
    if not base.eq(lhs, expect):
        raise AssertionError("the height-n witness does not replay")
    return u, bs


def _exhaustive_height(base, alpha, rho, v: dict, bounds: Bounds):
    """A height beyond which the witness search repeats itself, or None.

    Over prime-field data the Frobenius fixes every scalar, so the
    eigenvalue side conditions are the same at every height and the only
    moving part is the orbit of v under the p-th power map.  Once that
    orbit enters its cycle, a height past one full preperiod and two
    cycles reproduces an earlier system.
    """
    if base.kind in ("cyclic_group", "quadratic"):
        scales = list(alpha.scales)
    elif base.kind == "field":
        scales = []
    else:
        return None
    if any(s.as_fraction() is None for s in [rho, *scales, *v.values()]):
        return None
    p = base.ctx.characteristic
    seen = [dict(v)]
    cur = dict(v)
    for _ in range(2 * bounds.n_max + 8):
        cur = _elem_power(base, cur, p)
        for start, earlier in enumerate(seen):
            if base.eq(earlier, cur):
                cycle = len(seen) - start
                return start + 2 * cycle
        seen.append(cur)
    return None


# ---------------------------------------------------------------------------
# dispatch and stable-ideal simplicity of iterated rings
# ---------------------------------------------------------------------------


def simple(ring, bounds: Bounds = DEFAULT) -> Verdict:
    """Simplicity of the ring, dispatched on the scalar characteristic."""
    if ring.ctx.characteristic:
        return simple_charp(ring, bounds)
    return simple_char0(ring, bounds)


def ring_alpha_simple(ring, autos: list, bounds: Bounds = DEFAULT) -> Verdict:
    """Whether an iterated ring has no proper ideal stable under ``autos``.

    Three routes decide this.  A simple ring has no proper ideals at all.
    Under identity automorphisms every ideal is stable, so the question is
    simplicity itself.  And when alpha is trivial, rho = 1 and v is a
    nonzero scalar, the generators x and y span a Weyl algebra factor over
    the scalars: every ideal is the extension of a coefficient ideal, and
    stability passes to the coefficient parts of the automorphisms.
    Anything else is an honest refusal.
    """
    ctx = ring.ctx
    inner = simple(ring, bounds)
    if inner.holds:
        return holds("the ring is simple, so only the trivial ideals are "
                     "stable", certificate={"kind": "ring_simple"},
                     conditions=[("simple", inner)])
    if ring.base.is_zero(ring.v):
        return fails("with v = 0 the generator x is normal, so it generates "
                     "a proper ideal stable under every automorphism that "
                     "rescales the generators",
                     certificate={"kind": "stable_ideal",
                                  "generator": ring.x_name},
                     conditions=[("simple", inner)])
    if all(ring.auto_is_identity(t) for t in autos):
        if inner.fails:
            return fails("every ideal is stable under the identity and the "
                         "ring is not simple",
                         certificate=_stable_ideal_from(ring),
                         conditions=[("simple", inner)])
        return inconclusive("the automorphisms are trivial and simplicity "
                            "itself was not decided",
                            conditions=[("simple", inner)])
    parts = [getattr(t, "base", None) for t in autos]
    if (ctx.characteristic == 0 and ring.rho == ctx.one
            and ring.base.auto_is_identity(ring.alpha)
            and all(part is not None for part in parts)):
        scalar = ring.base.scalar_of(ring.v)
        if scalar is not None and not scalar.is_zero():
            sub = ring.base.alpha_simple(parts)
            return Verdict(
                sub.status,
                "x and y span a Weyl algebra factor over the scalars, so "
                "stable ideals of the ring extend stable coefficient "
                "ideals; " + sub.reason,
                certificate=sub.certificate,
                conditions=[("coefficient_ideals", sub)])
    return inconclusive("no stable-ideal procedure applies to this "
                        "iterated ring", conditions=[("simple", inner)])


def _stable_ideal_from(ring) -> dict:
    conf = ring.conformality()
    if conf.status is Status.HOLDS and \
            ring.is_unit(conf.casimir).status is Status.FAILS:
        return {"kind": "stable_ideal",
                "generator": ring.render(conf.casimir)}
    return {"kind": "not_simple"}


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------


def simple_iterated(chain, bounds: Bounds = DEFAULT) -> Verdict:
    """Level-by-level simplicity of a tower of ambiskew extensions.

    The first level is the characteristic-zero criterion.  Every later
    level inherits stable-ideal simplicity from the simplicity of the level
    below it, and contributes its own singularity and unit conditions; v
    must be an eigenvector of the level automorphism so those conditions
    stay decidable.  A failing or undecided level names itself in the
    combined verdict.
    """
    chain = list(chain)
    if not chain:
        raise ValueError("the chain must contain at least one ring")
    for lower, upper in zip(chain, chain[1:]):
        if upper.base is not lower:
            raise ValueError("each level must be built over the previous one")
    if chain[0].ctx.characteristic:
        raise ValueError("the iteration criterion needs characteristic zero")
    if len(chain) == 1:
        return simple_char0(chain[0], bounds)
    conditions = [("level_1", simple_char0(chain[0], bounds))]
    for index, ring in enumerate(chain[1:], start=2):
        conditions.append((f"level_{index}", _tower_level(ring, bounds)))
    return conjunction(conditions, theorem="simple.tower")


def _tower_level(ring, bounds: Bounds) -> Verdict:
    conditions = []
    mu = ring.v_eigenvalue()
    if mu is None:
        conditions.append(("eigenvector", inconclusive(
            "v is not an eigenvector of the level automorphism, so this "
            "criterion does not apply")))
    else:
        conditions.append(("eigenvector", holds(
            "the level automorphism rescales v",
            certificate={"kind": "eigenvector", "eigenvalue": str(mu)})))
    conditions.append(("singular", _tower_singular(ring)))
    conditions.append(("units", units_for_all_m(ring, bounds)))
    return conjunction(conditions)


def _tower_singular(ring) -> Verdict:
    direct = singular(ring)
    if direct.status is not Status.INCONCLUSIVE:
        return direct
    stripped = _strip_to_ground(ring)
    if stripped is None:
        return direct
    ground, v0, alpha0, gamma0 = stripped
    u0, detail, complete = solve_splitting_ex(ground, alpha0, gamma0, v0,
                                              ring.rho)
    if u0 is None and complete:
        cert = {"kind": "singular_by_projection"}
        if detail:
            cert["obstruction"] = detail
        return holds(
            "a splitting element would project, one bidegree at a time, to "
            "a splitting element over the ground algebra, and none exists "
            "there", certificate=cert)
    return direct


def _strip_to_ground(ring):
    """(ground algebra, v, alpha, gamma) with every tower level peeled off,
    or None when v does not come from the ground algebra."""
    algebra, elem = ring.base, dict(ring.v)
    alpha, gamma = ring.alpha, ring.gamma
    while algebra.kind == "ambiskew":
        if any(i or j for i, j, _ in elem):
            return None
        elem = algebra.coefficient(elem, 0, 0)
        alpha, gamma = alpha.base, gamma.base
        algebra = algebra.base
    return algebra, elem, alpha, gamma


# ---------------------------------------------------------------------------
# skew Laurent extensions
# ---------------------------------------------------------------------------


def skew_laurent_simple(algebra, sigma, bounds: Bounds = DEFAULT) -> Verdict:
    """Simplicity of the skew Laurent extension by ``sigma``.

    The extension is simple exactly when the coefficient ring has no proper
    sigma-stable ideal and no positive power of sigma is inner.  Over the
    commutative families the inner automorphisms are trivial, so the second
    condition is a pure order computation; over an iterated ring only a
    finite order gives a definite (negative) answer.
    """
    algebra.validate_auto(sigma)
    conditions = [
        ("sigma_simple", algebra.alpha_simple([sigma])),
        ("no_inner_power", _no_inner_power(algebra, sigma)),
    ]
    return conjunction(conditions, theorem="skew_laurent")


def _no_inner_power(algebra, sigma) -> Verdict:
    order = algebra.auto_order(sigma)
    if order is not None:
        return fails(f"sigma^{order} is the identity, which is inner",
                     certificate={"kind": "inner_power", "m": order})
    if algebra.kind == "ambiskew":
        return inconclusive("inner automorphisms of an iterated ring are "
                            "not decided here")
    return holds("no positive power of sigma is the identity, and a "
                 "commutative ring has no other inner automorphisms")
