from braidcalc.calculi import (
    FirstOrderCalculus,
    FlipOver,
    check_calculus,
    check_flip_identities,
    check_multi_covariance,
    flip_tau_from_sigma,
    iota_l,
    iota_r,
    solve_flip,
    solve_flips,
)
from braidcalc.linalg import LinMap, identity, permutation_map, tensor
from braidcalc.reporting import Report
from braidcalc.scalars import Q


def test_check_calculus_passes_universal(k2_universal, gr_universal):
    for c in (k2_universal, gr_universal):
        rep = check_calculus(c)
        assert rep.ok_all, [e.id for e in rep.failures()]
        assert rep.passed("EQ_21") and rep.passed("IOTA_L_SURJ") and rep.passed("IOTA_R_SURJ")


def test_check_calculus_passes_zero(k2_zero_calc, gr_zero_calc):
    for c in (k2_zero_calc, gr_zero_calc):
        assert c.gdim == 0
        assert check_calculus(c).ok_all


def test_zero_differential_breaks_surjectivity(k2_universal):
    broken = FirstOrderCalculus(
        k2_universal.group,
        k2_universal.gdim,
        k2_universal.mgl,
        k2_universal.mgr,
        LinMap.zero(k2_universal.gdim, 2),
        name="broken",
    )
    rep = check_calculus(broken)
    assert not rep.passed("IOTA_L_SURJ")
    assert rep["IOTA_L_SURJ"].witness is not None


def test_iota_unit_slot_recovers_differential(k2_universal, gr_universal):
    for c in (k2_universal, gr_universal):
        n = c.group.dim
        assert iota_l(c) @ tensor(c.group.unit, identity(n)) == c.d
        assert iota_r(c) @ tensor(identity(n), c.group.unit) == c.d


def test_iota_on_zero_calculus(k2_zero_calc):
    assert iota_l(k2_zero_calc).is_zero() and iota_r(k2_zero_calc).is_zero()


def test_iota_l_expansion_on_k2(k2_universal):
    # iota_l(d_g (x) d_g) = d_g . d(d_g), expanded through the module action
    il = iota_l(k2_universal)
    dg_dg = [Q(0)] * 4
    dg_dg[3] = Q(1)
    expected = k2_universal.mgl.apply(
        [a * b for a in (Q(0), Q(1)) for b in k2_universal.d.col(1)]
    )
    assert il.apply(dg_dg) == expected


# -- flip solving -------------------------------------------------------------


def test_solve_flip_satisfies_defining_equation(k2_universal, k2_flips):
    c = k2_universal
    g = c.group
    for direction in ("left", "right"):
        f = k2_flips[direction][1]
        rep = Report()
        check_flip_identities(c, f, g.braiding, rep, counterpart=k2_flips["right" if direction == "left" else "left"][1])
        assert rep.ok_all, [e.id for e in rep.failures()]


def test_zero_calculus_flips_trivial(k2_zero_calc):
    f = solve_flip(k2_zero_calc, k2_zero_calc.group.braiding, "left", 1)
    assert f.map.dom == 0 and f.map.cod == 0
    rep = Report()
    check_flip_identities(k2_zero_calc, f, k2_zero_calc.group.braiding, rep)
    assert rep.ok_all


def test_gr_flip_has_sign(gr_universal, gr_flips):
    ls = gr_flips["left"][1].map
    assert ls != permutation_map([1, 0], [gr_universal.gdim, 2])


def test_fake_transposition_flip_fails_battery(gr_universal, gr_flips):
    c = gr_universal
    fake_map = permutation_map([1, 0], [c.gdim, 2])
    fake = FlipOver("left", 1, fake_map, fake_map.inverse())
    rep = Report()
    check_flip_identities(c, fake, c.group.braiding, rep, counterpart=gr_flips["right"][1])
    fails = {e.id for e in rep.failures()}
    assert "EQ_221" in fails
    assert rep["EQ_221"].witness is not None


def test_flip_identities_full_range(k2_universal, k2_flips, gr_universal, gr_flips):
    for c, flips in ((k2_universal, k2_flips), (gr_universal, gr_flips)):
        rep = Report()
        for n in range(-2, 3):
            check_flip_identities(c, flips["left"][n], c.group.sigma_n(n), rep, counterpart=flips["right"][n])
            check_flip_identities(c, flips["right"][n], c.group.sigma_n(n), rep)
        assert rep.ok_all, [e.id for e in rep.failures()]


# -- tau flip -----------------------------------------------------------------


def test_tau_flip_equals_sigma_flip_on_classical(k2_universal, k2_flips, gr_universal, gr_flips):
    for c, flips in ((k2_universal, k2_flips), (gr_universal, gr_flips)):
        rep = Report()
        lt = flip_tau_from_sigma(c, flips["left"][1], rep)
        rt = flip_tau_from_sigma(c, flips["right"][1], rep)
        assert rep.ok_all, [e.id for e in rep.failures()]
        assert lt.map == flips["left"][1].map  # sigma = tau on these fixtures
        assert rt.map == flips["right"][1].map
        assert lt.map == flips["left"][0].map


def test_tau_flip_zero_calculus(k2_zero_calc):
    f = solve_flip(k2_zero_calc, k2_zero_calc.group.braiding, "left", 1)
    rep = Report()
    lt = flip_tau_from_sigma(k2_zero_calc, f, rep)
    assert rep.ok_all and lt.map.cod == 0


# -- multi-covariance ----------------------------------------------------------


def test_multi_covariance_passes(k2_universal, k2_flips, gr_universal, gr_flips):
    for c, flips in ((k2_universal, k2_flips), (gr_universal, gr_flips)):
        rep = Report()
        check_multi_covariance(c, flips, rep, 2)
        assert rep.ok_all, [e.id for e in rep.failures()]
        for key in ("EQ_234_a1_b0_c-1", "EQ_235_a2_b-2_c1", "EQ_242_n1_m-1",
                    "EQ_247_n2", "EQ_236_a-1_b1_c0", "EQ_237_a1_b2_c-2",
                    "EQ_238_a0_b1_c-1", "EQ_246_n-2_m2", "EQ_248_n-1"):
            assert rep.passed(key), key


def test_corrupted_flip_table_fails_coproduct_twisting(gr_universal, gr_flips):
    flips = {"left": dict(gr_flips["left"]), "right": dict(gr_flips["right"])}
    orig = flips["left"][1]
    flips["left"][1] = FlipOver("left", 1, orig.map.scale(Q(2)), orig.inverse.scale(Q(1) / Q(2)))
    rep = Report()
    check_multi_covariance(gr_universal, flips, rep, 2)
    assert not rep.passed("EQ_242_n1_m1")
    assert rep["EQ_242_n1_m1"].witness is not None


def test_multi_covariance_vacuous_on_zero_calculus(k2_zero_calc):
    flips = solve_flips(k2_zero_calc, 2)
    rep = Report()
    check_multi_covariance(k2_zero_calc, flips, rep, 2)
    assert rep.ok_all
