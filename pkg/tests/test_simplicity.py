from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambiskew.algebras import (
    AffineAuto,
    CyclicGroupAlgebra,
    DiagonalAuto,
    FieldAlgebra,
    LaurentAlgebra,
    NestedAuto,
    PolyAlgebra,
)
from ambiskew.bounds import Bounds
from ambiskew.rings import AmbiskewRing
from ambiskew.scalars import ScalarContext, q_integer
from ambiskew.simplicity import (
    ring_alpha_simple,
    simple,
    simple_char0,
    simple_charp,
    simple_iterated,
    singular,
    skew_laurent_simple,
    units_for_all_m,
)
from ambiskew.verdict import Status

from _helpers import (
    fc2_block,
    fc4_mixed,
    poly_shift,
    quadratic_conjugation,
    quantized_weyl,
    quantum_plane,
    weyl_over_field,
)


def _conditions(verdict):
    return dict(verdict.conditions)


def _fc2_ring(rho, c0, c1, characteristic=0, parameters=()):
    ctx = ScalarContext(characteristic=characteristic, parameters=parameters)
    alg = CyclicGroupAlgebra(ctx, 2, -ctx.one)
    v = {}
    if c0:
        v[0] = ctx.fraction(Fraction(c0))
    if c1:
        v[1] = ctx.fraction(Fraction(c1))
    ring = AmbiskewRing(alg, DiagonalAuto((-ctx.one,)), v,
                        ctx.fraction(Fraction(rho)))
    return ctx, alg, ring


# -- units_for_all_m -------------------------------------------------------------


def test_units_weyl_eigen_certificate():
    ring = weyl_over_field()
    verdict = units_for_all_m(ring)
    assert verdict.status is Status.HOLDS
    assert verdict.certificate["kind"] == "eigen_units"
    assert verdict.certificate["ratio"] == "1"
    assert verdict.certificate["v_inverse"] == "1"


def test_units_root_of_unity_ratio_fails():
    ctx = ScalarContext(cyclotomic_order=5)
    field = FieldAlgebra(ctx)
    ring = AmbiskewRing(field, field.identity_auto(), field.one, ctx.zeta(1))
    verdict = units_for_all_m(ring)
    assert verdict.status is Status.FAILS
    assert verdict.certificate == {"kind": "vanishing_v_m", "m": 5,
                                   "ratio": "zeta"}
    assert q_integer(5, ctx.zeta(1)).is_zero()
    assert field.is_zero(ring.v_m(5))


def test_units_vanish_at_p_in_char_p():
    ring = weyl_over_field(characteristic=5)
    verdict = units_for_all_m(ring)
    assert verdict.status is Status.FAILS
    assert verdict.certificate["m"] == 5
    assert ring.base.is_zero(ring.v_m(5))


def test_units_pencil_finds_least_nonunit():
    ctx, alg, ring = _fc2_ring(1, 1, 3)
    verdict = units_for_all_m(ring)
    assert verdict.status is Status.FAILS
    assert verdict.certificate["m"] == 3

    # independent recurrence v^(m+1) = v + alpha(v^(m)) on coefficient pairs,
    # with alpha(c0 + c1*s) = c0 - c1*s; non-unit means a character vanishes
    total, first = (Fraction(0), Fraction(0)), None
    for m in range(1, 50):
        total = (Fraction(1) + total[0], Fraction(3) - total[1])
        if total[0] + total[1] == 0 or total[0] - total[1] == 0:
            first = m
            break
    assert first == 3


def test_units_formal_parameters_stay_invertible():
    ctx, alg, ring = fc2_block()
    verdict = units_for_all_m(ring)
    assert verdict.status is Status.HOLDS
    assert verdict.certificate == {"kind": "periodic_units", "period": 2}


def test_units_truncated_scan_is_inconclusive():
    ctx, alg, ring = quadratic_conjugation(2, 1, 1)
    verdict = units_for_all_m(ring)
    assert verdict.status is Status.INCONCLUSIVE
    assert verdict.certificate == {"kind": "bounded_scan", "m_max": 200}
    tight = units_for_all_m(ring, Bounds(m_max=12))
    assert tight.status is Status.INCONCLUSIVE
    assert tight.certificate["m_max"] == 12


def test_units_zero_v_fails_at_one():
    ring = quantum_plane()
    verdict = units_for_all_m(ring)
    assert verdict.status is Status.FAILS
    assert verdict.certificate == {"kind": "vanishing_v_m", "m": 1}


def _fc4_ring(mu):
    ctx = ScalarContext(cyclotomic_order=4)
    eps = ctx.zeta(1)
    alg = CyclicGroupAlgebra(ctx, 4, eps)
    v = {1: ctx.one, 3: ctx.fraction(Fraction(mu))}
    return units_for_all_m(AmbiskewRing(alg, DiagonalAuto((eps,)), v, eps))


def test_units_fc4_mixed_closed_form():
    # v^(m) is s + m*mu*s^3 for odd m, m*mu*s^3 for even m, so the first
    # non-unit appears at the least odd a with a*mu = -+1.
    formal = units_for_all_m(fc4_mixed()[2])
    assert formal.status is Status.HOLDS
    assert _fc4_ring(Fraction(1, 3)).certificate["m"] == 3
    assert _fc4_ring(Fraction(-1, 5)).certificate["m"] == 5
    assert _fc4_ring(2).status is Status.HOLDS
    assert _fc4_ring(1).certificate["m"] == 1


# -- singularity -----------------------------------------------------------------


def test_singular_weyl_resonance():
    verdict = singular(weyl_over_field())
    assert verdict.status is Status.HOLDS
    assert verdict.certificate["kind"] == "singular"


def test_conformal_quantized_weyl_splitting_replay():
    ring = quantized_weyl()
    verdict = singular(ring)
    assert verdict.status is Status.FAILS
    conf = ring.conformality()
    field, q = ring.base, ring.ctx.param("q")
    assert field.eq(conf.u, field.from_scalar((ring.ctx.one - q).inv()))
    lhs = field.sub(conf.u, field.smul(ring.rho, field.apply(ring.alpha, conf.u)))
    assert field.eq(lhs, ring.v)
    assert ring.eq(conf.casimir, ring.sub(ring.w_element(), ring.embed(conf.u)))


def test_singular_fc2_block():
    ctx, alg, ring = fc2_block()
    assert singular(ring).status is Status.HOLDS


# -- simple_char0 ----------------------------------------------------------------


def test_simple_char0_weyl():
    verdict = simple_char0(weyl_over_field())
    assert verdict.status is Status.HOLDS
    assert verdict.theorem == "simple.char0"
    assert [name for name, _ in verdict.conditions] == [
        "alpha_simple", "singular", "units"]


def test_simple_char0_rejects_positive_characteristic():
    with pytest.raises(ValueError, match="characteristic zero"):
        simple_char0(weyl_over_field(characteristic=5))


def test_quantum_plane_reports_both_failures():
    verdict = simple_char0(quantum_plane())
    assert verdict.status is Status.FAILS
    assert verdict.reason == "failed: singular, units"


def test_quadratic_conjugation_slices():
    # rho = 1 needs a != 0, rho = -1 needs b != 0, rho = 2 is conformal
    for a in (-2, 1):
        ctx, alg, ring = quadratic_conjugation(1, a, 1)
        assert simple_char0(ring).status is Status.HOLDS
    ctx, alg, ring = quadratic_conjugation(1, 0, 2)
    verdict = simple_char0(ring)
    assert verdict.status is Status.FAILS
    assert _conditions(verdict)["singular"].fails
    ctx, alg, ring = quadratic_conjugation(-1, 2, 1)
    assert simple_char0(ring).status is Status.HOLDS
    ctx, alg, ring = quadratic_conjugation(2, 1, 1)
    verdict = simple_char0(ring)
    assert verdict.status is Status.FAILS
    cert = _conditions(verdict)["singular"].certificate
    u = ring.conformality().u
    lhs = alg.sub(u, alg.smul(ring.rho, alg.apply(ring.alpha, u)))
    assert alg.eq(lhs, ring.v)


def test_gaussian_unit_commutator_is_simple():
    ctx, alg, ring = quadratic_conjugation(1, 1, 0)
    verdict = simple_char0(ring)
    assert verdict.status is Status.HOLDS
    units = _conditions(verdict)["units"]
    assert units.certificate["kind"] == "eigen_units"


# -- simple_charp ----------------------------------------------------------------


def test_simple_charp_weyl_f5():
    ring = weyl_over_field(characteristic=5)
    verdict = simple_charp(ring)
    assert verdict.status is Status.FAILS
    assert verdict.theorem == "simple.charp"
    conds = _conditions(verdict)
    assert conds["alpha_simple"].holds
    cert = conds["no_generalized_splitting"].certificate
    assert cert["kind"] == "generalized_splitting"
    assert cert["n"] == 1 and cert["u"] == "0" and cert["b"] == ["4"]
    # replay the height-1 equation with b0 = -1 and u = 0:
    # rho^5*alpha(u) - u = v^5 + b0*v reads 0 = 1 - 1
    field, ctx = ring.base, ring.ctx
    b0 = field.smul(-ctx.one, field.one)
    rhs = field.add(field.one, field.mul(b0, ring.v))
    assert field.is_zero(rhs)
    assert conds["units"].certificate["m"] == 5


def test_simple_charp_rejects_characteristic_zero():
    with pytest.raises(ValueError, match="positive characteristic"):
        simple_charp(weyl_over_field())


def test_poly_shift_char5_fails_on_all_three_conditions():
    ctx, alg, ring = poly_shift(characteristic=5)
    verdict = simple_charp(ring)
    assert verdict.status is Status.FAILS
    conds = _conditions(verdict)
    ideal = conds["alpha_simple"].certificate
    assert ideal["kind"] == "stable_ideal"
    gen = {5: ctx.one, 1: -ctx.one}
    assert alg.render(gen) == ideal["generator"]
    assert alg.eq(alg.apply(ring.alpha, gen), gen)
    split = conds["no_generalized_splitting"]
    assert split.certificate["n"] == 0
    u = ring.conformality().u
    lhs = alg.sub(u, alg.smul(ring.rho, alg.apply(ring.alpha, u)))
    assert alg.eq(lhs, ring.v)
    assert conds["units"].certificate["m"] == 5


def test_laurent_monomial_char5_witness():
    ctx = ScalarContext(characteristic=5)
    alg = LaurentAlgebra(ctx)
    ring = AmbiskewRing(alg, alg.identity_auto(), {1: ctx.one}, ctx.one)
    verdict = simple_charp(ring)
    cert = _conditions(verdict)["no_generalized_splitting"].certificate
    assert cert["n"] == 1 and cert["b"] == ["-t^4"]
    b0 = {4: -ctx.one}
    power5 = {5: ctx.one}
    assert alg.is_zero(alg.add(power5, alg.mul(b0, ring.v)))


def test_cyclic_char5_shortcut_witness():
    # C_4 over F_5 with eps = 2, alpha(s) = 2s, rho = 3 = 2^{-1}: singular,
    # and b0 = -v^4 = -s^4 = -1 closes the height-1 equation.
    ctx = ScalarContext(characteristic=5)
    two = ctx.int_(2)
    alg = CyclicGroupAlgebra(ctx, 4, two)
    ring = AmbiskewRing(alg, DiagonalAuto((two,)), {1: ctx.one}, ctx.int_(3))
    verdict = simple_charp(ring)
    assert verdict.status is Status.FAILS
    cert = _conditions(verdict)["no_generalized_splitting"].certificate
    assert cert["n"] == 1 and cert["u"] == "0"
    assert cert["b"] == [alg.render(alg.smul(-ctx.one, alg.one))]


def test_charp_witness_with_nonzero_u():
    ctx = ScalarContext(characteristic=5, parameters=("m",))
    alg = CyclicGroupAlgebra(ctx, 2, -ctx.one)
    ring = AmbiskewRing(alg, DiagonalAuto((-ctx.one,)),
                        {0: ctx.one, 1: ctx.param("m")}, ctx.one)
    verdict = simple_charp(ring)
    split = _conditions(verdict)["no_generalized_splitting"]
    assert split.status is Status.FAILS
    assert split.certificate["n"] == 1
    assert split.certificate["u"] != "0"


def test_charp_nonmonomial_laurent_declines():
    ctx = ScalarContext(characteristic=5)
    alg = LaurentAlgebra(ctx)
    ring = AmbiskewRing(alg, DiagonalAuto((ctx.int_(2),)),
                        {1: ctx.one, 2: ctx.one}, ctx.int_(3))
    verdict = simple_charp(ring)
    assert verdict.status is Status.FAILS
    assert verdict.reason == "failed: alpha_simple, units"
    split = _conditions(verdict)["no_generalized_splitting"]
    assert split.status is Status.INCONCLUSIVE
    assert "finite-dimensional" in split.reason


# -- dispatch and stable ideals --------------------------------------------------


def test_simple_dispatches_on_characteristic():
    assert simple(weyl_over_field()).theorem == "simple.char0"
    assert simple(weyl_over_field(characteristic=5)).theorem == "simple.charp"


def test_alpha_simple_of_simple_ring():
    ctx = ScalarContext(cyclotomic_order=3, parameters=("l",))
    eps = ctx.zeta(1)
    alg = CyclicGroupAlgebra(ctx, 3, eps)
    ring = AmbiskewRing(alg, DiagonalAuto((eps,)), {1: ctx.one}, eps.inv(),
                        y_name="y1", x_name="x1")
    lam = ctx.param("l")
    auto = NestedAuto(DiagonalAuto((eps,)), lam, eps * lam.inv())
    verdict = ring_alpha_simple(ring, [auto])
    assert verdict.status is Status.HOLDS
    assert verdict.certificate == {"kind": "ring_simple"}


def test_alpha_simple_zero_v_names_stable_generator():
    ring = quantum_plane()
    q = ring.ctx.param("q")
    scaled = NestedAuto(ring.base.identity_auto(), q, q.inv())
    ring.validate_auto(scaled)
    for autos in ([scaled], [NestedAuto(ring.base.identity_auto(),
                                        ring.ctx.one, ring.ctx.one)]):
        verdict = ring_alpha_simple(ring, autos)
        assert verdict.status is Status.FAILS
        assert verdict.certificate == {"kind": "stable_ideal",
                                       "generator": "x"}


def test_alpha_simple_identity_uses_casimir():
    ring = quantized_weyl()
    identity = NestedAuto(ring.base.identity_auto(), ring.ctx.one,
                          ring.ctx.one)
    verdict = ring_alpha_simple(ring, [identity])
    assert verdict.status is Status.FAILS
    cert = verdict.certificate
    assert cert["kind"] == "stable_ideal"
    assert cert["generator"] == ring.render(ring.conformality().casimir)


def test_alpha_simple_tensor_route():
    ctx = ScalarContext(parameters=("t", "c"))
    alg = CyclicGroupAlgebra(ctx, 2, -ctx.one)
    b1 = AmbiskewRing(alg, alg.identity_auto(), {0: 2 * ctx.param("t")},
                      ctx.one, y_name="y2", x_name="x2")
    tau = NestedAuto(DiagonalAuto((-ctx.one,)), ctx.one, ctx.one)
    b1.validate_auto(tau)
    verdict = ring_alpha_simple(b1, [tau])
    assert verdict.status is Status.HOLDS
    assert "Weyl algebra factor" in verdict.reason
    assert _conditions(verdict)["coefficient_ideals"].holds


def test_alpha_simple_refuses_unknown_shapes():
    ctx, alg, ring = quadratic_conjugation(2, 1, 0)
    auto = NestedAuto(alg.conjugation(), ctx.one, ctx.one)
    ring.validate_auto(auto)
    verdict = ring_alpha_simple(ring, [auto])
    assert verdict.status is Status.INCONCLUSIVE


# -- towers ----------------------------------------------------------------------


def test_height_one_chain_is_plain_criterion():
    ring = weyl_over_field()
    verdict = simple_iterated([ring])
    assert verdict.theorem == "simple.char0"
    assert verdict.status is Status.HOLDS


def test_chain_validation():
    with pytest.raises(ValueError, match="at least one"):
        simple_iterated([])
    r1 = weyl_over_field()
    r2 = weyl_over_field()
    with pytest.raises(ValueError, match="previous one"):
        simple_iterated([r1, r2])
    with pytest.raises(ValueError, match="characteristic zero"):
        simple_iterated([weyl_over_field(characteristic=5)])


def _h_tc_order_a(tv, cv):
    ctx = ScalarContext()
    alg = CyclicGroupAlgebra(ctx, 2, -ctx.one)
    t, c = ctx.fraction(Fraction(tv)), ctx.fraction(Fraction(cv))
    v1 = {}
    if tv:
        v1[0] = 2 * t
    if cv:
        v1[1] = -4 * c
    r1 = AmbiskewRing(alg, DiagonalAuto((-ctx.one,)), v1, ctx.one,
                      y_name="y1", x_name="x1")
    second = NestedAuto(alg.identity_auto(), ctx.one, ctx.one)
    v2 = r1.embed({0: 2 * t}) if tv else {}
    r2 = AmbiskewRing(r1, second, v2, ctx.one, y_name="y2", x_name="x2")
    return simple_iterated([r1, r2])


def test_h_tc_order_a_levels():
    assert _h_tc_order_a(1, Fraction(1, 3)).status is Status.HOLDS
    bad = _h_tc_order_a(1, Fraction(3, 2))
    assert bad.status is Status.FAILS
    assert bad.reason == "failed: level_1"
    assert _h_tc_order_a(0, 1).status is Status.FAILS


def test_h_tc_order_b_matches():
    def order_b(tv, cv):
        ctx = ScalarContext()
        alg = CyclicGroupAlgebra(ctx, 2, -ctx.one)
        t, c = ctx.fraction(Fraction(tv)), ctx.fraction(Fraction(cv))
        b1 = AmbiskewRing(alg, alg.identity_auto(),
                          {0: 2 * t} if tv else {}, ctx.one,
                          y_name="y2", x_name="x2")
        tau = NestedAuto(DiagonalAuto((-ctx.one,)), ctx.one, ctx.one)
        v2 = {}
        if tv:
            v2[(0, 0, 0)] = 2 * t
        if cv:
            v2[(0, 0, 1)] = -4 * c
        return simple_char0(AmbiskewRing(b1, tau, v2, ctx.one,
                                         y_name="y1", x_name="x1"))

    assert order_b(1, Fraction(1, 3)).status is Status.HOLDS
    bad = order_b(1, Fraction(3, 2))
    assert bad.status is Status.FAILS
    assert _conditions(bad)["units"].certificate["m"] == 3
    assert order_b(0, 1).status is Status.FAILS


def test_quantized_weyl_tower_formal_lambda():
    ctx = ScalarContext(parameters=("l21", "l31", "l32"))
    field = FieldAlgebra(ctx)
    chain = [AmbiskewRing(field, field.identity_auto(), field.one, ctx.one,
                          y_name="y1", x_name="x1")]
    scales = {2: (ctx.param("l21"),), 3: (ctx.param("l31"), ctx.param("l32"))}
    for level in (2, 3):
        below = chain[-1]
        part = field.identity_auto()
        for lam in scales[level]:
            part = NestedAuto(part, lam, lam.inv())
        below.validate_auto(part)
        chain.append(AmbiskewRing(below, part, below.one, ctx.one,
                                  y_name=f"y{level}", x_name=f"x{level}"))
        verdict = simple_iterated(chain)
        assert verdict.status is Status.HOLDS
        assert verdict.theorem == "simple.tower"


def test_cyclic_tower_monomial_levels():
    ctx = ScalarContext(cyclotomic_order=3, parameters=("l",))
    eps = ctx.zeta(1)
    alg = CyclicGroupAlgebra(ctx, 3, eps)
    r1 = AmbiskewRing(alg, DiagonalAuto((eps,)), {1: ctx.one}, eps.inv(),
                      y_name="y1", x_name="x1")
    lam = ctx.param("l")
    second = NestedAuto(DiagonalAuto((eps,)), lam, eps * lam.inv())
    good = AmbiskewRing(r1, second, r1.embed({2: ctx.one}), eps ** (-2),
                        y_name="y2", x_name="x2")
    verdict = simple_iterated([r1, good])
    assert verdict.status is Status.HOLDS
    units = _conditions(_conditions(verdict)["level_2"])["units"]
    assert units.certificate["kind"] == "eigen_units"
    assert units.certificate["ratio"] == "1"

    conformal = AmbiskewRing(r1, second, r1.embed({2: ctx.one}), ctx.one,
                             y_name="y2", x_name="x2")
    verdict = simple_iterated([r1, conformal])
    assert verdict.status is Status.FAILS
    assert verdict.reason == "failed: level_2"
    level = _conditions(verdict)["level_2"]
    assert _conditions(level)["singular"].certificate["kind"] == \
        "splitting_element"


# -- skew Laurent ----------------------------------------------------------------


def test_skew_laurent_scale_of_infinite_order():
    ctx = ScalarContext(parameters=("q",))
    alg = LaurentAlgebra(ctx)
    verdict = skew_laurent_simple(alg, DiagonalAuto((ctx.param("q"),)))
    assert verdict.status is Status.HOLDS
    assert verdict.theorem == "skew_laurent"


def test_skew_laurent_finite_order_is_inner():
    ctx = ScalarContext(cyclotomic_order=3)
    alg = CyclicGroupAlgebra(ctx, 3, ctx.zeta(1))
    verdict = skew_laurent_simple(alg, DiagonalAuto((ctx.zeta(1),)))
    assert verdict.status is Status.FAILS
    inner = _conditions(verdict)["no_inner_power"]
    assert inner.certificate == {"kind": "inner_power", "m": 3}


def test_skew_laurent_identity_on_field():
    ctx = ScalarContext()
    field = FieldAlgebra(ctx)
    verdict = skew_laurent_simple(field, field.identity_auto())
    assert verdict.status is Status.FAILS
    inner = _conditions(verdict)["no_inner_power"]
    assert inner.certificate["m"] == 1


def test_skew_laurent_shift_holds():
    ctx = ScalarContext()
    alg = PolyAlgebra(ctx)
    verdict = skew_laurent_simple(alg, AffineAuto(ctx.one, ctx.one))
    assert verdict.status is Status.HOLDS


# -- certificate replay ----------------------------------------------------------


@st.composite
def _fc2_data(draw):
    rho = draw(st.sampled_from([Fraction(1), Fraction(-1), Fraction(2),
                                Fraction(1, 2), Fraction(-3)]))
    c0 = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
    c1 = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
    return rho, c0, c1


@given(_fc2_data())
@settings(max_examples=120, deadline=None)
def test_fc2_verdicts_match_character_oracle(data):
    rho, c0, c1 = data
    ctx, alg, ring = _fc2_ring(rho, c0, c1)
    verdict = simple_char0(ring)
    assert verdict.status is not Status.INCONCLUSIVE

    # oracle: the two characters of v^(m) follow an explicit recurrence, and
    # the quadruple is singular exactly when the component of v at the
    # resonant key (rho*lambda_k = 1) is nonzero
    singular_oracle = (rho == 1 and c0 != 0) or (rho == -1 and c1 != 0)
    total, nonunit, sign = (Fraction(0), Fraction(0)), None, 1
    for m in range(1, 301):
        scale = rho ** (m - 1)
        total = (total[0] + scale * (c0 + sign * c1),
                 total[1] + scale * (c0 - sign * c1))
        if 0 in total:
            nonunit = m
            break
        sign = -sign
    expected = singular_oracle and nonunit is None
    assert (verdict.status is Status.HOLDS) == expected

    conds = _conditions(verdict)
    if conds["units"].fails:
        m = conds["units"].certificate["m"]
        assert alg.is_unit(ring.v_m(m)).status is Status.FAILS
        if m <= 300:
            assert nonunit == m
    if conds["singular"].fails:
        u = ring.conformality().u
        lhs = alg.sub(u, alg.smul(ring.rho, alg.apply(ring.alpha, u)))
        assert alg.eq(lhs, ring.v)
