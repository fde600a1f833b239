"""Group-covariant structure of first-order calculi.

Left covariance means the coaction of the group on one-forms exists; it is
solved by factoring through iota_l.  From the solved action the module
derives the invariant projection P, the space of invariant forms, the
quotient differential pi, the classifying ideal R = ker(pi) & ker(eps),
the common invariant flip restriction sigma_star and the invariant right
multiplication circ, together with both module trivializations and the
ideal-to-calculus reconstruction (and all their mirror versions).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .calculi import (
    FirstOrderCalculus,
    FlipOver,
    check_calculus,
    iota_l,
    iota_r,
    solve_flip,
)
from .groups import InternalInconsistency, MultiBraidedGroup
from .linalg import (
    LinMap,
    NoFactor,
    NotInvertible,
    Subspace,
    compose,
    factor_through,
    identity,
    quotient,
    solve_right,
    tensor,
)
from .reporting import Report


class NotLeftCovariant(ValueError):
    pass


class NotRightCovariant(ValueError):
    pass


class SigmaStarSingular(ValueError):
    pass


class IdealInvalid(ValueError):
    "An ideal precondition failed; the message names the precondition."


def coords_in(incl: LinMap, target: LinMap) -> LinMap:
    "Solve incl @ X = target; the target must land in the included subspace."
    x = solve_right(incl, target)
    if x is None:
        raise InternalInconsistency("map does not land in the expected subspace")
    return x


def _simplified_mult(g: MultiBraidedGroup) -> LinMap:
    return compose(g.mult, g.tau_inv, g.braiding)


@dataclass
class LeftCovariantData:
    calculus: FirstOrderCalculus
    action: LinMap
    projector: LinMap
    inv_space: Subspace
    incl: LinMap
    proj_coords: LinMap
    pi: LinMap
    pi_hat: LinMap
    ideal: Subspace
    sigma_star: LinMap
    circ: LinMap
    report: Report = field(repr=False, default=None)

    @property
    def inv_dim(self) -> int:
        return self.pi.cod


@dataclass
class RightCovariantData:
    calculus: FirstOrderCalculus
    action: LinMap
    projector: LinMap
    inv_space: Subspace
    incl: LinMap
    proj_coords: LinMap
    zeta: LinMap
    zeta_hat: LinMap
    ideal: Subspace
    star_sigma: LinMap
    bullet: LinMap
    report: Report = field(repr=False, default=None)

    @property
    def inv_dim(self) -> int:
        return self.zeta.cod


def solve_left_action(c: FirstOrderCalculus, report: Report | None = None, flips: dict | None = None) -> LeftCovariantData:
    rep = report if report is not None else Report()
    g = c.group
    n, gd = g.dim, c.gdim
    I, Ig = identity(n), identity(gd)
    m, unit, phi, eps, kap, s = g.mult, g.unit, g.coproduct, g.counit, g.antipode, g.braiding
    mgl, mgr, d = c.mgl, c.mgr, c.d
    il, ir = iota_l(c), iota_r(c)
    m0 = _simplified_mult(g)

    rhs = compose(tensor(m, il), tensor(I, s, I), tensor(phi, phi))
    try:
        act = factor_through(il, rhs)
    except NoFactor as exc:
        raise NotLeftCovariant(str(exc)) from exc
    rep.check_eq("EQ_32", act @ il, rhs, note="defining equation of the left action")
    mirror = compose(tensor(m, ir), tensor(I, s, I), tensor(phi, phi))
    if not rep.check_eq("EQ_35", act @ ir, mirror):
        raise NotLeftCovariant("iota_r characterization of the left action fails")
    rep.check_eq("EQ_33", act @ d, tensor(I, d) @ phi)
    rep.check_eq("EQ_34", act @ mgl, compose(tensor(m, mgl), tensor(I, s, Ig), tensor(phi, act)))
    rep.check_eq("EQ_36", tensor(eps, Ig) @ act, Ig)
    rep.check_eq("EQ_37", tensor(phi, Ig) @ act, tensor(I, act) @ act)

    proj = compose(mgl, tensor(kap, Ig), act)
    rep.check_eq("EQ_313", proj @ proj, proj, note="invariant projector is idempotent")
    inv_space = proj.image()
    rep.check_space_eq("EQ_312", inv_space, (act - tensor(unit, Ig)).kernel(),
                       note="image of P = space of invariant forms")
    incl = inv_space.inclusion()
    proj_coords = coords_in(incl, proj)
    pi = proj_coords @ d
    pi_hat = incl @ pi
    rep.check_surjective("PI_SURJ", pi)
    ideal = pi.kernel().intersect(eps.kernel())

    rep.check_eq("EQ_314", proj @ il, compose(tensor(eps, pi_hat), g.sigma_inv, g.tau))
    rep.check_eq(
        "EQ_319",
        compose(proj, mgr, tensor(pi_hat, I)),
        pi_hat @ m0 - pi_hat @ tensor(eps, I),
    )

    q = pi.cod
    Iq = identity(q)
    if flips is not None:
        restrictions = []
        ok_rest = True
        for k in sorted(flips["left"]):
            lsk = flips["left"][k].map
            x = solve_right(tensor(I, incl), lsk @ tensor(incl, I))
            if x is None:
                rep.fail(f"SIGMA_STAR_RESTRICT_n{k}", {"reason": "flip does not preserve the invariant subspace"})
                ok_rest = False
                continue
            restrictions.append(x)
            rep.check_eq(f"EQ_315_n{k}", lsk @ tensor(pi_hat, I), tensor(I, pi_hat) @ g.tau)
        if not ok_rest or not restrictions:
            raise NotLeftCovariant("invariant restriction of the flip family missing")
        rep.check_true(
            "SIGMA_STAR_COMMON",
            all(x == restrictions[0] for x in restrictions),
            {"reason": "restrictions of shifted flips to invariant forms differ"},
            note="restriction is independent of the shift",
        )
        sigma_star = restrictions[0]
    else:
        try:
            sigma_star = factor_through(tensor(pi, I), tensor(I, pi) @ g.tau)
        except NoFactor as exc:
            raise NotLeftCovariant(f"invariant flip restriction undefined: {exc}") from exc
        rep.check_eq("EQ_315", sigma_star @ tensor(pi, I), tensor(I, pi) @ g.tau)
    rep.check_invertible("SIGMA_STAR_INVERTIBLE", sigma_star)

    circ = compose(proj_coords, mgr, tensor(incl, I))
    ik = eps.kernel().inclusion()
    rep.check_eq("EQ_321", compose(circ, tensor(pi, I), tensor(ik, I)), compose(pi, m0, tensor(ik, I)))
    rep.check_eq(
        "EQ_332",
        sigma_star @ tensor(circ, I),
        compose(tensor(I, circ), tensor(sigma_star, I), tensor(Iq, g.tau)),
    )
    rep.check_eq(
        "EQ_333",
        compose(tensor(m, Iq), tensor(I, sigma_star), tensor(sigma_star, I)),
        sigma_star @ tensor(Iq, m),
    )
    rep.check_eq(
        "EQ_334",
        pi @ m,
        compose(tensor(eps, pi) + circ @ tensor(pi, I), g.sigma_inv, g.tau),
    )
    rep.check_eq(
        "P_MODULE_LAW",
        compose(proj, mgl, tensor(I, incl)),
        compose(incl, tensor(eps, Iq)),
        note="P(a theta) = eps(a) theta on invariant forms",
    )
    kere = eps.kernel()
    rep.check_true(
        "GINV_DIM",
        q == kere.dim - ideal.dim,
        {"reason": f"dim inv = {q}, dim ker(eps) = {kere.dim}, dim R = {ideal.dim}"},
        note="dim of invariant forms = dim ker(eps) - dim R",
    )
    unit_span = Subspace.spanned_by(n, [g.unit.col(0)])
    rep.check_space_eq("PI_KERNEL", pi.kernel(), ideal.sum_with(unit_span))
    _check_left_ideal_conditions(g, ideal, rep)
    return LeftCovariantData(c, act, proj, inv_space, incl, proj_coords, pi, pi_hat, ideal, sigma_star, circ, rep)


def _check_left_ideal_conditions(g: MultiBraidedGroup, r: Subspace, rep: Report):
    "R is a right ideal for the simplified product, and tau-shifts it across."
    n = g.dim
    I = identity(n)
    m0 = _simplified_mult(g)
    ra = tensor(r.inclusion(), I).image()
    rep.check_space_le("R_IDEAL", ra.map_by(m0), r, note="m0(R (x) A) inside R")
    rep.check_space_eq("EQ_320", ra.map_by(g.tau), tensor(I, r.inclusion()).image())


def solve_right_action(c: FirstOrderCalculus, report: Report | None = None, flips: dict | None = None) -> RightCovariantData:
    rep = report if report is not None else Report()
    g = c.group
    n, gd = g.dim, c.gdim
    I, Ig = identity(n), identity(gd)
    m, unit, phi, eps, kap, s = g.mult, g.unit, g.coproduct, g.counit, g.antipode, g.braiding
    mgl, mgr, d = c.mgl, c.mgr, c.d
    il, ir = iota_l(c), iota_r(c)
    m0 = _simplified_mult(g)

    rhs = compose(tensor(ir, m), tensor(I, s, I), tensor(phi, phi))
    try:
        act = factor_through(ir, rhs)
    except NoFactor as exc:
        raise NotRightCovariant(str(exc)) from exc
    rep.check_eq("EQ_31", act @ ir, rhs, note="defining equation of the right action")
    mirror = compose(tensor(il, m), tensor(I, s, I), tensor(phi, phi))
    if not rep.check_eq("EQ_A1", act @ il, mirror):
        raise NotRightCovariant("iota_l characterization of the right action fails")
    rep.check_eq("EQ_A2", act @ mgr, compose(tensor(mgr, m), tensor(Ig, s, I), tensor(act, phi)))
    rep.check_eq("EQ_A3", act @ d, tensor(d, I) @ phi)
    rep.check_eq("EQ_A4", tensor(Ig, eps) @ act, Ig)
    rep.check_eq("EQ_A5", tensor(act, I) @ act, tensor(Ig, phi) @ act)

    proj = compose(mgr, tensor(Ig, kap), act)
    rep.check_eq("EQ_A9", proj @ proj, proj, note="right-invariant projector is idempotent")
    inv_space = proj.image()
    rep.check_space_eq("RINV_SPACE", inv_space, (act - tensor(Ig, unit)).kernel())
    incl = inv_space.inclusion()
    proj_coords = coords_in(incl, proj)
    zeta = proj_coords @ d
    zeta_hat = incl @ zeta
    rep.check_surjective("EQ_A11", zeta, note="quotient differential onto right-invariant forms")
    ideal = zeta.kernel().intersect(eps.kernel())

    rep.check_eq("EQ_A10", proj @ ir, compose(tensor(zeta_hat, eps), g.sigma_inv, g.tau))

    q = zeta.cod
    if flips is not None:
        restrictions = []
        ok_rest = True
        for k in sorted(flips["right"]):
            rsk = flips["right"][k].map
            x = solve_right(tensor(incl, I), rsk @ tensor(I, incl))
            if x is None:
                rep.fail(f"STAR_SIGMA_RESTRICT_n{k}", {"reason": "flip does not preserve the invariant subspace"})
                ok_rest = False
                continue
            restrictions.append(x)
            rep.check_eq(f"EQ_A12_n{k}", rsk @ tensor(I, zeta_hat), tensor(zeta_hat, I) @ g.tau)
        if not ok_rest or not restrictions:
            raise NotRightCovariant("invariant restriction of the right flip family missing")
        rep.check_true(
            "STAR_SIGMA_COMMON",
            all(x == restrictions[0] for x in restrictions),
            {"reason": "restrictions of shifted right flips differ"},
        )
        star_sigma = restrictions[0]
    else:
        try:
            star_sigma = factor_through(tensor(I, zeta), tensor(zeta, I) @ g.tau)
        except NoFactor as exc:
            raise NotRightCovariant(f"invariant flip restriction undefined: {exc}") from exc
        rep.check_eq("EQ_A12", star_sigma @ tensor(I, zeta), tensor(zeta, I) @ g.tau)
    rep.check_invertible("STAR_SIGMA_INVERTIBLE", star_sigma)

    bullet = compose(proj_coords, mgl, tensor(I, incl))
    rep.check_eq(
        "EQ_A19",
        incl @ bullet,
        compose(proj, mgl, tensor(I, incl)),
        note="a . theta = Q(a theta) in invariant coordinates",
    )
    rep.check_eq("EQ_A20", bullet @ tensor(I, zeta), zeta @ m0 - tensor(zeta, eps))
    kere = eps.kernel()
    rep.check_true(
        "RINV_DIM",
        q == kere.dim - ideal.dim,
        {"reason": f"dim inv = {q}, dim ker(eps) = {kere.dim}, dim K = {ideal.dim}"},
    )
    unit_span = Subspace.spanned_by(n, [g.unit.col(0)])
    rep.check_space_eq("ZETA_KERNEL", zeta.kernel(), ideal.sum_with(unit_span))
    _check_right_ideal_conditions(g, ideal, rep)
    return RightCovariantData(c, act, proj, inv_space, incl, proj_coords, zeta, zeta_hat, ideal, star_sigma, bullet, rep)


def _check_right_ideal_conditions(g: MultiBraidedGroup, k: Subspace, rep: Report):
    "K is a left ideal for the simplified product; tau shifts A (x) K across."
    n = g.dim
    I = identity(n)
    m0 = _simplified_mult(g)
    ak = tensor(I, k.inclusion()).image()
    rep.check_space_le("K_IDEAL", ak.map_by(m0), k, note="m0(A (x) K) inside K")
    rep.check_space_eq("EQ_A25", ak.map_by(g.tau), tensor(k.inclusion(), I).image())


def flip_from_actions(c: FirstOrderCalculus, lcd: LeftCovariantData, report: Report | None = None, flips: dict | None = None) -> FlipOver:
    "The sigma flip rebuilt out of the left action; checked against the solver."
    rep = report if report is not None else Report()
    g = c.group
    n = g.dim
    I, Ig = identity(n), identity(c.gdim)
    m, phi, eps, kap = g.mult, g.coproduct, g.counit, g.antipode
    act, mgr = lcd.action, c.mgr
    built = compose(tensor(m, mgr), tensor(kap, act @ mgr, kap), tensor(act, phi))
    solved = flips["left"][1] if flips is not None else solve_flip(c, g.braiding, "left", label=1)
    if not rep.check_eq("EQ_38", built, solved.map, note="action-built flip equals the solved flip"):
        raise InternalInconsistency("flip built from the left action disagrees with the solver")
    ls = solved.map
    rep.check_eq("EQ_39", act @ mgr, compose(tensor(m, mgr), tensor(I, ls, I), tensor(act, phi)))
    if flips is not None:
        ks = sorted(flips["left"])
        span = max(ks)
        half = span // 2
        for p in range(-half, half + 1):
            for r in range(-half, half + 1):
                rep.check_eq(
                    f"EQ_310_n{p}_m{r}",
                    compose(tensor(g.sigma_n(p), Ig), tensor(I, flips["left"][r].map), tensor(act, I)),
                    tensor(I, act) @ flips["left"][p + r].map,
                )
        rep.check_eq(
            "EQ_311",
            flips["left"][0].map,
            compose(tensor(eps, I, Ig), tensor(g.sigma_inv, Ig), tensor(I, act), ls),
        )
    return FlipOver("left", 1, built, built.inverse())


def flip_from_right_action(c: FirstOrderCalculus, rcd: RightCovariantData, report: Report | None = None, flips: dict | None = None) -> FlipOver:
    "Mirror construction of the right flip out of the right action."
    rep = report if report is not None else Report()
    g = c.group
    n = g.dim
    I, Ig = identity(n), identity(c.gdim)
    m, phi, kap = g.mult, g.coproduct, g.antipode
    act, mgl = rcd.action, c.mgl
    built = compose(tensor(mgl, m), tensor(kap, act @ mgl, kap), tensor(phi, act))
    solved = flips["right"][1] if flips is not None else solve_flip(c, g.braiding, "right", label=1)
    if not rep.check_eq("EQ_A6", built, solved.map):
        raise InternalInconsistency("flip built from the right action disagrees with the solver")
    rs = solved.map
    rep.check_eq("EQ_A7", act @ mgl, compose(tensor(mgl, m), tensor(I, rs, I), tensor(phi, act)))
    if flips is not None:
        ks = sorted(flips["right"])
        half = max(ks) // 2
        for p in range(-half, half + 1):
            for r in range(-half, half + 1):
                rep.check_eq(
                    f"EQ_A8_n{p}_m{r}",
                    tensor(act, I) @ flips["right"][p + r].map,
                    compose(tensor(Ig, g.sigma_n(p)), tensor(flips["right"][r].map, I), tensor(I, act)),
                )
    return FlipOver("right", 1, built, built.inverse())


def left_trivialization(c: FirstOrderCalculus, lcd: LeftCovariantData, report: Report | None = None) -> tuple[LinMap, LinMap]:
    "Gamma = A (x) (invariant forms) as left modules, with the dictionary."
    rep = report if report is not None else Report()
    g = c.group
    n, q = g.dim, lcd.inv_dim
    I, Iq, Ig = identity(n), identity(q), identity(c.gdim)
    fwd = tensor(I, lcd.proj_coords) @ lcd.action
    bwd = c.mgl @ tensor(I, lcd.incl)
    rep.check_eq("TRIV_L_FWD_BWD", fwd @ bwd, identity(n * q))
    rep.check_eq("TRIV_L_BWD_FWD", bwd @ fwd, Ig)
    rep.check_eq("EQ_317", fwd @ c.d, tensor(I, lcd.pi) @ g.coproduct)
    rep.check_eq("EQ_316", tensor(I, fwd) @ lcd.action, tensor(g.coproduct, Iq) @ fwd)
    rep.check_eq("EQ_318", fwd @ c.mgl, tensor(g.mult, Iq) @ tensor(I, fwd))
    rep.check_eq(
        "EQ_322",
        fwd @ c.mgr,
        compose(tensor(g.mult, lcd.circ), tensor(I, lcd.sigma_star, I), tensor(I, Iq, g.coproduct), tensor(fwd, I)),
    )
    return fwd, bwd


def right_trivialization(c: FirstOrderCalculus, lcd: LeftCovariantData, report: Report | None = None) -> tuple[LinMap, LinMap]:
    "Gamma = (invariant forms) (x) A as right modules; needs sigma_star invertible."
    rep = report if report is not None else Report()
    g = c.group
    n, q = g.dim, lcd.inv_dim
    I, Iq = identity(n), identity(q)
    try:
        sstar_inv = lcd.sigma_star.inverse()
    except NotInvertible as exc:
        raise SigmaStarSingular(str(exc)) from exc
    fwd_l = tensor(I, lcd.proj_coords) @ lcd.action
    fwd = c.mgr @ tensor(lcd.incl, I)
    bwd = compose(tensor(lcd.circ, g.antipode), tensor(Iq, g.coproduct @ g.kappa_inv), sstar_inv, fwd_l)
    rep.check_eq("EQ_323", fwd @ bwd, identity(c.gdim))
    rep.check_eq("EQ_324", bwd @ fwd, identity(q * n))
    rep.check_eq("EQ_325", compose(bwd, c.mgr, tensor(fwd, I)), tensor(Iq, g.mult))
    rep.check_eq(
        "EQ_326",
        compose(tensor(I, bwd), lcd.action, fwd),
        compose(tensor(lcd.sigma_star, I), tensor(Iq, g.coproduct)),
    )
    rep.check_eq(
        "EQ_327",
        compose(bwd, c.mgl, tensor(I, fwd)),
        compose(
            tensor(lcd.circ @ tensor(Iq, g.kappa_inv), g.mult),
            tensor(Iq, g.sigma_inv @ g.coproduct, I),
            tensor(sstar_inv, I),
        ),
    )
    minus_d = -(bwd @ c.d)
    rep.check_eq("EQ_328A", minus_d, compose(tensor(lcd.pi @ g.kappa_inv, I), g.sigma_inv, g.coproduct))
    rep.check_eq("EQ_328B", minus_d, compose(tensor(lcd.pi, g.antipode), g.coproduct, g.kappa_inv))
    return fwd, bwd


def right_covariant_trivializations(c: FirstOrderCalculus, rcd: RightCovariantData, report: Report | None = None):
    "The mirror dictionaries for a solved right action."
    rep = report if report is not None else Report()
    g = c.group
    n, q = g.dim, rcd.inv_dim
    I, Iq = identity(n), identity(q)
    fwd = tensor(rcd.proj_coords, I) @ rcd.action
    bwd = c.mgr @ tensor(rcd.incl, I)
    rep.check_eq("EQ_A14", fwd @ bwd, identity(q * n))
    rep.check_eq("EQ_A14_INV", bwd @ fwd, identity(c.gdim))
    rep.check_eq("EQ_A16A", compose(fwd, c.mgr, tensor(bwd, I)), tensor(Iq, g.mult))
    rep.check_eq("EQ_A16B", compose(tensor(fwd, I), rcd.action, bwd), tensor(Iq, g.coproduct))
    rep.check_eq("EQ_A17", fwd @ c.d, tensor(rcd.zeta, I) @ g.coproduct)
    rep.check_eq(
        "EQ_A18",
        compose(fwd, c.mgl, tensor(I, bwd)),
        compose(tensor(rcd.bullet, g.mult), tensor(I, rcd.star_sigma, I), tensor(g.coproduct, Iq, I)),
    )
    try:
        sstar_inv = rcd.star_sigma.inverse()
    except NotInvertible as exc:
        raise SigmaStarSingular(str(exc)) from exc
    fwd2 = c.mgl @ tensor(I, rcd.incl)
    bwd2 = compose(tensor(g.antipode, rcd.bullet), tensor(g.coproduct @ g.kappa_inv, Iq), sstar_inv, fwd)
    rep.check_eq("TRIV_A_L_FWD_BWD", bwd2 @ fwd2, identity(n * q))
    rep.check_eq("TRIV_A_L_BWD_FWD", fwd2 @ bwd2, identity(c.gdim))
    rep.check_eq(
        "EQ_A21",
        compose(bwd2, c.mgr, tensor(fwd2, I)),
        compose(
            tensor(g.mult, rcd.bullet @ tensor(g.kappa_inv, Iq)),
            tensor(I, g.sigma_inv @ g.coproduct, Iq),
            tensor(I, sstar_inv),
        ),
    )
    rep.check_eq("EQ_A22", compose(bwd2, c.mgl, tensor(I, fwd2)), tensor(g.mult, Iq))
    rep.check_eq(
        "EQ_A23",
        compose(tensor(bwd2, I), rcd.action, fwd2),
        compose(tensor(I, rcd.star_sigma), tensor(g.coproduct, Iq)),
    )
    minus_d = -(bwd2 @ c.d)
    rep.check_eq("EQ_A24A", minus_d, compose(tensor(g.antipode, rcd.zeta), g.coproduct, g.kappa_inv))
    rep.check_eq("EQ_A24B", minus_d, compose(tensor(I, rcd.zeta @ g.kappa_inv), g.sigma_inv, g.coproduct))
    return {"right_fwd": fwd, "right_bwd": bwd, "left_fwd": fwd2, "left_bwd": bwd2}


def extract_ideal(lcd: LeftCovariantData, report: Report | None = None) -> Subspace:
    rep = report if report is not None else Report()
    _check_left_ideal_conditions(lcd.calculus.group, lcd.ideal, rep)
    return lcd.ideal


def close_right_ideal(g: MultiBraidedGroup, generators) -> Subspace:
    """Span of the generators, closed under right multiplication by m0.

    Generators must lie in ker(eps); tau-stability is checked later, not
    enforced by the closure.
    """
    n = g.dim
    kere = g.counit.kernel()
    vecs = [list(v) for v in generators]
    for v in vecs:
        if not kere.contains(v):
            raise IdealInvalid("generator outside ker(eps)")
    m0 = _simplified_mult(g)
    space = Subspace.spanned_by(n, vecs)
    while True:
        new_vecs = list(space.basis)
        for v in space.basis:
            for j in range(n):
                ej = [0] * n
                ej[j] = 1
                vej = []
                for a in v:
                    for b in ej:
                        vej.append(a * b)
                new_vecs.append(m0.apply(vej))
        bigger = Subspace.spanned_by(n, new_vecs)
        if bigger == space:
            return space
        space = bigger


def close_left_ideal(g: MultiBraidedGroup, generators) -> Subspace:
    "Mirror closure under left multiplication by m0."
    n = g.dim
    kere = g.counit.kernel()
    vecs = [list(v) for v in generators]
    for v in vecs:
        if not kere.contains(v):
            raise IdealInvalid("generator outside ker(eps)")
    m0 = _simplified_mult(g)
    space = Subspace.spanned_by(n, vecs)
    while True:
        new_vecs = list(space.basis)
        for v in space.basis:
            for j in range(n):
                ejv = [0 * v[0]] * (n * n)
                for t, x in enumerate(v):
                    ejv[j * n + t] = x
                new_vecs.append(m0.apply(ejv))
        bigger = Subspace.spanned_by(n, new_vecs)
        if bigger == space:
            return space
        space = bigger


def _ideal_preconditions(g: MultiBraidedGroup, r: Subspace, side: str, rep: Report):
    n = g.dim
    I = identity(n)
    m0 = _simplified_mult(g)
    kere = g.counit.kernel()
    if not kere.contains_space(r):
        raise IdealInvalid("ideal is not contained in ker(eps)")
    if side == "left":
        ra = tensor(r.inclusion(), I).image()
        if not rep.check_space_le("R_IDEAL", ra.map_by(m0), r):
            raise IdealInvalid("not a right ideal for the simplified product")
        if not rep.check_space_eq("EQ_320", ra.map_by(g.tau), tensor(I, r.inclusion()).image()):
            raise IdealInvalid("ideal is not tau-stable")
    else:
        ak = tensor(I, r.inclusion()).image()
        if not rep.check_space_le("K_IDEAL", ak.map_by(m0), r):
            raise IdealInvalid("not a left ideal for the simplified product")
        if not rep.check_space_eq("EQ_A25", ak.map_by(g.tau), tensor(r.inclusion(), I).image()):
            raise IdealInvalid("ideal is not tau-stable")
    # unital braidings make the quotient solves below well-posed
    if g.braiding @ tensor(g.unit, I) != tensor(I, g.unit) or g.tau @ tensor(g.unit, I) != tensor(I, g.unit):
        raise IdealInvalid("braiding or its secondary is not unital")


def reconstruct_from_ideal(
    g: MultiBraidedGroup,
    r: Subspace,
    report: Report | None = None,
    name: str = "reconstructed",
    verify: bool = True,
) -> FirstOrderCalculus:
    """Build the left-covariant calculus classified by a valid ideal.

    Invariant forms are ker(eps)/r, realized as the quotient of the whole
    space by r + span(1); the calculus lives on A (x) invariants with the
    standard dictionary, and the construction is verified end to end
    (including the ideal round-trip) when `verify` is set.
    """
    rep = report if report is not None else Report()
    n = g.dim
    I = identity(n)
    _ideal_preconditions(g, r, "left", rep)
    m0 = _simplified_mult(g)
    unit_span = Subspace.spanned_by(n, [g.unit.col(0)])
    pi, q = quotient(n, r.sum_with(unit_span))
    Iq = identity(q)
    try:
        sigma_star = factor_through(tensor(pi, I), tensor(I, pi) @ g.tau)
        circ = factor_through(tensor(pi, I), pi @ m0 - pi @ tensor(g.counit, I))
    except NoFactor as exc:
        raise IdealInvalid(f"quotient structure does not descend: {exc}") from exc
    rep.check_eq("EQ_315", sigma_star @ tensor(pi, I), tensor(I, pi) @ g.tau)
    rep.check_eq(
        "EQ_332",
        sigma_star @ tensor(circ, I),
        compose(tensor(I, circ), tensor(sigma_star, I), tensor(Iq, g.tau)),
    )
    rep.check_eq(
        "EQ_333",
        compose(tensor(g.mult, Iq), tensor(I, sigma_star), tensor(sigma_star, I)),
        sigma_star @ tensor(Iq, g.mult),
    )
    rep.check_eq(
        "EQ_334",
        pi @ g.mult,
        compose(tensor(g.counit, pi) + circ @ tensor(pi, I), g.sigma_inv, g.tau),
    )
    d = tensor(I, pi) @ g.coproduct
    mgl = tensor(g.mult, Iq)
    mgr = compose(tensor(g.mult, circ), tensor(I, sigma_star, I), tensor(I, Iq, g.coproduct))
    calc = FirstOrderCalculus(g, n * q, mgl, mgr, d, name=name)
    if verify:
        calc_rep = Report(ctx=rep.ctx)
        check_calculus(calc, calc_rep)
        rep.extend(calc_rep)
        if not calc_rep.ok_all:
            raise InternalInconsistency("reconstructed calculus fails the calculus battery")
        lcd = solve_left_action(calc, rep)
        rep.check_space_eq("ROUNDTRIP_IDEAL", lcd.ideal, r, note="ideal -> calculus -> ideal is the identity")
    return calc


def reconstruct_right_from_ideal(
    g: MultiBraidedGroup,
    k: Subspace,
    report: Report | None = None,
    name: str = "reconstructed-right",
    verify: bool = True,
) -> FirstOrderCalculus:
    "Mirror reconstruction: right-covariant calculus on (invariants) (x) A."
    rep = report if report is not None else Report()
    n = g.dim
    I = identity(n)
    _ideal_preconditions(g, k, "right", rep)
    m0 = _simplified_mult(g)
    unit_span = Subspace.spanned_by(n, [g.unit.col(0)])
    zeta, q = quotient(n, k.sum_with(unit_span))
    Iq = identity(q)
    try:
        star_sigma = factor_through(tensor(I, zeta), tensor(zeta, I) @ g.tau)
        bullet = factor_through(tensor(I, zeta), zeta @ m0 - tensor(zeta, g.counit))
    except NoFactor as exc:
        raise IdealInvalid(f"quotient structure does not descend: {exc}") from exc
    rep.check_eq("EQ_A12", star_sigma @ tensor(I, zeta), tensor(zeta, I) @ g.tau)
    rep.check_eq("EQ_A20", bullet @ tensor(I, zeta), zeta @ m0 - tensor(zeta, g.counit))
    d = tensor(zeta, I) @ g.coproduct
    mgr = tensor(Iq, g.mult)
    mgl = compose(tensor(bullet, g.mult), tensor(I, star_sigma, I), tensor(g.coproduct, Iq, I))
    calc = FirstOrderCalculus(g, q * n, mgl, mgr, d, name=name)
    if verify:
        calc_rep = Report(ctx=rep.ctx)
        check_calculus(calc, calc_rep)
        rep.extend(calc_rep)
        if not calc_rep.ok_all:
            raise InternalInconsistency("reconstructed calculus fails the calculus battery")
        rcd = solve_right_action(calc, rep)
        rep.check_space_eq("ROUNDTRIP_IDEAL_RIGHT", rcd.ideal, k)
    return calc


def universal_ideals(g: MultiBraidedGroup) -> dict:
    "The two ideals every group carries: zero and the whole of ker(eps)."
    n = g.dim
    return {"zero": Subspace.zero(n), "keps": g.counit.kernel()}


def calculi_isomorphic(c1: FirstOrderCalculus, c2: FirstOrderCalculus) -> LinMap | None:
    """An invertible intertwiner of calculi (d, mgl, mgr), or None.

    For a pair of left-covariant calculi the canonical candidate comes from
    the invariant trivializations; otherwise a deterministic search over the
    intertwiner solution space is attempted (first solution in variable
    order, then prefix sums of the solution basis).
    """
    if c1.group.dim != c2.group.dim or c1.gdim != c2.gdim:
        return None
    try:
        l1 = solve_left_action(c1, Report())
        l2 = solve_left_action(c2, Report())
        rho = factor_through(l1.pi, l2.pi)
        n = c1.group.dim
        fwd1 = tensor(identity(n), l1.proj_coords) @ l1.action
        bwd2 = c2.mgl @ tensor(identity(n), l2.incl)
        cand = compose(bwd2, tensor(identity(n), rho), fwd1)
        if _is_intertwiner(c1, c2, cand) and cand.is_invertible():
            return cand
    except (NotLeftCovariant, NoFactor, InternalInconsistency):
        pass
    particular, basis = _intertwiner_solutions(c1, c2)
    if particular is None:
        return None
    candidates = [particular]
    acc = particular
    for b in basis:
        candidates.append(particular + b)
        acc = acc + b
        candidates.append(acc)
    for cand in candidates:
        if cand.is_invertible() and _is_intertwiner(c1, c2, cand):
            return cand
    return None


def _is_intertwiner(c1, c2, t: LinMap) -> bool:
    n = c1.group.dim
    I = identity(n)
    return (
        t @ c1.d == c2.d
        and t @ c1.mgl == c2.mgl @ tensor(I, t)
        and t @ c1.mgr == c2.mgr @ tensor(t, I)
    )


def _intertwiner_solutions(c1, c2):
    """Particular solution and homogeneous basis of the intertwiner equations.

    Unknown: T (g2 x g1), flattened row-major into g2*g1 coordinates.
    Equations: T d1 = d2, T mgl1 = mgl2 (id (x) T), T mgr1 = mgr2 (T (x) id).
    """
    from .linalg import _nullspace
    from .scalars import Q

    n = c1.group.dim
    g1, g2 = c1.gdim, c2.gdim
    cols = g2 * g1
    rows: list = []
    rhs: list = []

    def emit(coeffs: dict, value: Q):
        rows.append([coeffs.get(t, Q(0)) for t in range(cols)])
        rhs.append(value)

    for a in range(n):
        for i in range(g2):
            coeffs = {i * g1 + j: c1.d.entry(j, a) for j in range(g1) if c1.d.entry(j, a)}
            emit(coeffs, c2.d.entry(i, a))
    for col in range(n * g1):
        a, j0 = divmod(col, g1)
        for i in range(g2):
            coeffs: dict = {}
            for j in range(g1):
                v = c1.mgl.entry(j, col)
                if v:
                    coeffs[i * g1 + j] = coeffs.get(i * g1 + j, Q(0)) + v
            for k in range(g2):
                v = c2.mgl.entry(i, a * g2 + k)
                if v:
                    coeffs[k * g1 + j0] = coeffs.get(k * g1 + j0, Q(0)) - v
            emit(coeffs, Q(0))
    for col in range(g1 * n):
        j0, a = divmod(col, n)
        for i in range(g2):
            coeffs = {}
            for j in range(g1):
                v = c1.mgr.entry(j, col)
                if v:
                    coeffs[i * g1 + j] = coeffs.get(i * g1 + j, Q(0)) + v
            for k in range(g2):
                v = c2.mgr.entry(i, k * n + a)
                if v:
                    coeffs[k * g1 + j0] = coeffs.get(k * g1 + j0, Q(0)) - v
            emit(coeffs, Q(0))

    if cols == 0:
        return LinMap.zero(g2, g1), []
    system = LinMap.from_entries(len(rows), cols, rows) if rows else LinMap.zero(0, cols)
    target = LinMap.from_entries(len(rhs), 1, [[v] for v in rhs]) if rhs else LinMap.zero(0, 1)
    sol = solve_right(system, target)
    if sol is None:
        return None, []
    particular = LinMap.from_entries(g2, g1, [[sol.entry(i * g1 + j, 0) for j in range(g1)] for i in range(g2)])
    basis = []
    for vec in _nullspace(system.q_rows(), cols):
        basis.append(LinMap.from_entries(g2, g1, [[vec[i * g1 + j] for j in range(g1)] for i in range(g2)]))
    return particular, basis
