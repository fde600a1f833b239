"""Star structures on braided groups and star-covariant calculi.

The star is an antimultiplicative antilinear involution whose coproduct
compatibility routes through the plain transposition and the inverse
braiding.  A left-covariant calculus is star-covariant exactly when the
classifying ideal is stable under star-after-antipode; the induced star
on one-forms is built on invariant forms (with the sign of the quotient
rule) and extended by the antimultiplicative module rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicovariance import KappaData
from .calculi import FirstOrderCalculus, NotBijective, NotCovariant, solve_flip
from .covariance import LeftCovariantData, RightCovariantData
from .groups import MultiBraidedGroup
from .linalg import (
    AntilinMap,
    NoFactor,
    compose,
    factor_through,
    identity,
    permutation_map,
    tensor,
)
from .reporting import Report


class NotStarCovariant(ValueError):
    pass


@dataclass(frozen=True)
class StarGroup:
    group: MultiBraidedGroup
    star: AntilinMap

    def __post_init__(self):
        if self.star.dom != self.group.dim or self.star.cod != self.group.dim:
            raise ValueError("star must be an antilinear endomorphism of the algebra")


def check_star_group(sg: StarGroup, report: Report | None = None, shift_range: int = 2) -> Report:
    "Involutivity, antimultiplicativity, coproduct compatibility and consequences."
    rep = report if report is not None else Report()
    g = sg.group
    n = g.dim
    I = identity(n)
    star = sg.star
    psi = permutation_map([1, 0], [n, n])
    ss = star.tensor(star)
    rep.check_eq("STAR_INVOLUTION", star @ star, I)
    rep.check_eq("STAR_UNIT", star @ g.unit, AntilinMap(g.unit))
    rep.check_eq("STAR_ANTIMULT", star @ g.mult, g.mult @ (ss @ psi))
    rep.check_eq("EQ_B32", g.coproduct @ star, ss @ compose(psi, g.sigma_inv, g.coproduct))
    star_kappa = star @ g.antipode
    rep.check_eq(
        "EQ_B33",
        g.coproduct @ star_kappa,
        star_kappa.tensor(star_kappa) @ (psi @ g.coproduct),
    )
    rep.check_eq("EQ_B34", AntilinMap(g.counit.conj()), g.counit @ star_kappa)
    rep.check_eq("EQ_B35", g.kappa_inv, star_kappa @ star)
    rep.check_eq("EQ_B36", g.braiding @ ss, ss @ compose(psi, g.sigma_inv, psi))
    rep.check_eq("EQ_B37", g.tau @ ss, ss @ compose(psi, g.tau_inv, psi))
    for k in range(-shift_range, shift_range + 1):
        sk = g.sigma_n(k)
        rep.check_eq(f"EQ_62_n{k}", ss @ sk, compose(psi, sk.inverse(), psi) @ ss)
    return rep


def star_covariance(
    c: FirstOrderCalculus,
    lcd: LeftCovariantData,
    sg: StarGroup,
    report: Report | None = None,
    rcd: RightCovariantData | None = None,
    kappa_data: KappaData | None = None,
    flips: dict | None = None,
) -> AntilinMap:
    """Decide star-covariance of a left-covariant calculus and build its star.

    The decision is the exact inclusion (star after antipode)(R) inside R;
    on success the star on one-forms is returned, with the full identity
    battery recorded in the report.
    """
    rep = report if report is not None else Report()
    g = c.group
    n, q, gd = g.dim, lcd.inv_dim, c.gdim
    I = identity(n)
    star = sg.star
    sk = star @ g.antipode
    bad = next((v for v in lcd.ideal.basis if not lcd.ideal.contains(sk.apply(v))), None)
    if bad is not None:
        rep.fail(
            "STARKAPPA_IDEAL",
            {
                "vector": [str(x) for x in bad],
                "image_outside_ideal": [str(x) for x in sk.apply(bad)],
            },
            note="(star kappa)(R) escapes R",
        )
        raise NotStarCovariant("ideal is not stable under star after antipode")
    rep.ok("STARKAPPA_IDEAL", note="(star kappa)(R) inside R")

    try:
        s_inv_part = factor_through(lcd.pi.conj(), -(lcd.pi @ sk).lin)
    except NoFactor as exc:
        raise NotStarCovariant(f"quotient star undefined: {exc}") from exc
    star_inv = AntilinMap(s_inv_part)
    rep.check_eq("EQ_614", star_inv @ lcd.pi, -(lcd.pi @ sk), note="quotient rule with its sign")

    fwd = tensor(I, lcd.proj_coords) @ lcd.action
    swap = permutation_map([1, 0], [n, q])
    star_gamma = (c.mgr @ tensor(lcd.incl, I)) @ (star_inv.tensor(star) @ (swap @ fwd))
    rep.check_eq("STAR_GAMMA_INVOLUTION", star_gamma @ star_gamma, identity(gd))
    rep.check_eq("STAR_D_COMPAT", star_gamma @ c.d, c.d @ star, note="(da)* = d(a*)")
    psi_ag = permutation_map([1, 0], [n, gd])
    psi_ga = permutation_map([1, 0], [gd, n])
    rep.check_eq("STAR_BIMODULE_L", star_gamma @ c.mgl, c.mgr @ (star_gamma.tensor(star) @ psi_ag))
    rep.check_eq("STAR_BIMODULE_R", star_gamma @ c.mgr, c.mgl @ (star.tensor(star_gamma) @ psi_ga))
    if flips is not None:
        rep.check_eq(
            "EQ_613",
            lcd.action @ star_gamma,
            (flips["left"][1].map @ psi_ag) @ (star.tensor(star_gamma) @ lcd.action),
        )
    if rcd is not None:
        if flips is not None:
            rep.check_eq(
                "EQ_615",
                rcd.action @ star_gamma,
                (flips["right"][1].map @ psi_ga) @ (star_gamma.tensor(star) @ rcd.action),
            )
        rep.check_eq("EQ_616", star_gamma @ rcd.zeta_hat, -(rcd.zeta_hat @ sk))
    if kappa_data is not None:
        rep.check_eq("EQ_617", kappa_data.map @ star_gamma, star_gamma @ kappa_data.inverse)
    return star_gamma


def check_star_flip_compat(
    c: FirstOrderCalculus,
    flips: dict,
    sg: StarGroup,
    star_gamma: AntilinMap,
    report: Report | None = None,
    shift_range: int = 2,
) -> Report:
    "Flip compatibility with the star: each flip conjugates into the mirrored system."
    rep = report if report is not None else Report()
    g = sg.group
    n, gd = g.dim, c.gdim
    psi = permutation_map([1, 0], [n, n])
    star = sg.star
    for k in range(-shift_range, shift_range + 1):
        conj_braid = compose(psi, g.sigma_n(k).inverse(), psi)
        try:
            lb = solve_flip(c, conj_braid, "left", label=("conj", k))
            rb = solve_flip(c, conj_braid, "right", label=("conj", k))
        except (NotCovariant, NotBijective) as exc:
            rep.fail(f"EQ_69_n{k}", {"reason": str(exc)})
            rep.fail(f"EQ_610_n{k}", {"reason": str(exc)})
            continue
        rep.check_eq(
            f"EQ_69_n{k}",
            flips["left"][k].map @ star_gamma.tensor(star),
            star.tensor(star_gamma) @ lb.map,
        )
        rep.check_eq(
            f"EQ_610_n{k}",
            flips["right"][k].map @ star.tensor(star_gamma),
            star_gamma.tensor(star) @ rb.map,
        )
    return rep
