"""Top-level verification pipelines over bundles.

A full `verify_bundle` run checks the group record, every calculus
section with the complete covariance battery, and every ideal section
(closure, validity, reconstruction round-trip, bicovariance criterion).
Section reports are assembled in a fixed order regardless of the worker
pool, so identical input yields an identical report.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .bicovariance import (
    AdNotDescending,
    NotKappaCovariant,
    check_bicovariance,
    check_kappa0,
    check_kappa_covariance,
    ideal_bicovariance_test,
    kappa_iff_bicovariant,
    right_action_from_ad,
)
from .bundles import Bundle
from .calculi import (
    FirstOrderCalculus,
    NotBijective,
    NotCovariant,
    check_calculus,
    check_flip_identities,
    check_multi_covariance,
    flip_tau_from_sigma,
    solve_flips,
)
from .covariance import (
    IdealInvalid,
    NotLeftCovariant,
    NotRightCovariant,
    SigmaStarSingular,
    close_left_ideal,
    close_right_ideal,
    extract_ideal,
    flip_from_actions,
    flip_from_right_action,
    left_trivialization,
    reconstruct_from_ideal,
    reconstruct_right_from_ideal,
    right_covariant_trivializations,
    right_trivialization,
    solve_left_action,
    solve_right_action,
)
from .groups import (
    BraidSystem,
    Completion,
    InternalInconsistency,
    adjoint_action,
    check_adjoint,
    check_group,
    complete_braid_system,
    explore_antipode_shifts,
    kappa0,
    simplified_algebra,
)
from .linalg import LinMap
from .reporting import Report
from .star import NotStarCovariant, StarGroup, check_star_flip_compat, check_star_group, star_covariance


def verify_group_section(bundle: Bundle, shift_range: int = 2, paranoid: bool = False) -> Report:
    rep = Report(ctx="group")
    g = bundle.group
    check_group(g, rep, shift_range=shift_range, paranoid=paranoid)
    if not rep.ok_all:
        return rep
    check_kappa0(g, rep)
    check_adjoint(g, rep, shift_range=shift_range)
    shifts = explore_antipode_shifts(g, shift_range)
    rep.skip(
        "ANTIPODE_BRAID_SHIFTS",
        note="exploratory, nothing asserted: " + "; ".join(f"n={k} matches m in {v}" for k, v in shifts.items()),
    )
    if bundle.star is not None:
        check_star_group(StarGroup(g, bundle.star), rep, shift_range=shift_range)
    return rep


def verify_calculus_section(bundle: Bundle, c: FirstOrderCalculus, shift_range: int = 2) -> Report:
    rep = Report(ctx=f"calculus:{c.name}")
    g = bundle.group
    check_calculus(c, rep)
    flips = None
    try:
        flips = solve_flips(c, shift_range)
        rep.ok("FLIPS_SOLVED", note=f"left/right flips for shifts in [-{2*shift_range}, {2*shift_range}]")
    except NotCovariant as exc:
        rep.fail("NOT_SIGMA_COVARIANT", {"reason": str(exc)})
    except NotBijective as exc:
        rep.fail("FLIP_NOT_BIJECTIVE", {"reason": str(exc)})
    if flips is not None:
        for k in range(-shift_range, shift_range + 1):
            check_flip_identities(c, flips["left"][k], g.sigma_n(k), rep, counterpart=flips["right"][k])
            check_flip_identities(c, flips["right"][k], g.sigma_n(k), rep)
        flip_tau_from_sigma(c, flips["left"][1], rep)
        flip_tau_from_sigma(c, flips["right"][1], rep)
        check_multi_covariance(c, flips, rep, shift_range)
    lcd = rcd = None
    try:
        lcd = solve_left_action(c, rep, flips=flips)
    except NotLeftCovariant as exc:
        rep.fail("NOT_LEFT_COVARIANT", {"reason": str(exc)})
    try:
        rcd = solve_right_action(c, rep, flips=flips)
    except NotRightCovariant as exc:
        rep.fail("NOT_RIGHT_COVARIANT", {"reason": str(exc)})
    if lcd is not None and flips is not None:
        flip_from_actions(c, lcd, rep, flips=flips)
        left_trivialization(c, lcd, rep)
        try:
            right_trivialization(c, lcd, rep)
        except SigmaStarSingular as exc:
            rep.fail("SIGMA_STAR_SINGULAR", {"reason": str(exc)})
    if rcd is not None and flips is not None:
        flip_from_right_action(c, rcd, rep, flips=flips)
        try:
            right_covariant_trivializations(c, rcd, rep)
        except SigmaStarSingular as exc:
            rep.fail("STAR_SIGMA_SINGULAR", {"reason": str(exc)})
    if lcd is not None and rcd is not None and flips is not None:
        check_bicovariance(c, lcd, rcd, flips, rep, shift_range)
        try:
            right_action_from_ad(g, lcd, rep, rcd)
        except AdNotDescending as exc:
            rep.fail("AD_NOT_DESCENDING", {"reason": str(exc)})
    kd = None
    if lcd is not None:
        try:
            kd = check_kappa_covariance(c, rep, lcd=lcd, rcd=rcd, flips=flips, shift_range=shift_range)
        except NotKappaCovariant:
            pass  # the decision entry already records the failure and witness
        kappa_iff_bicovariant(c, rep)
    if bundle.star is not None and lcd is not None:
        sg = StarGroup(g, bundle.star)
        try:
            star_gamma = star_covariance(c, lcd, sg, rep, rcd=rcd, kappa_data=kd, flips=flips)
            if flips is not None:
                check_star_flip_compat(c, flips, sg, star_gamma, rep, shift_range)
        except NotStarCovariant:
            pass  # STARKAPPA_IDEAL already carries the witness
    return rep


def verify_ideal_section(bundle: Bundle, name: str, vectors, shift_range: int = 2) -> Report:
    rep = Report(ctx=f"ideal:{name}")
    g = bundle.group
    try:
        closed = close_right_ideal(g, vectors)
        rep.ok("IDEAL_CLOSURE", note=f"closure has dimension {closed.dim}")
    except IdealInvalid as exc:
        rep.fail("IDEAL_CLOSURE", {"reason": str(exc)})
        return rep
    try:
        calc = reconstruct_from_ideal(g, closed, rep, name=f"{name}-left")
        lcd = solve_left_action(calc, Report())
        rep.check_space_eq("ROUNDTRIP_EXTRACT", extract_ideal(lcd, Report()), closed)
    except (IdealInvalid, NotLeftCovariant, InternalInconsistency) as exc:
        rep.fail("RECONSTRUCTION_LEFT", {"reason": str(exc)})
    ideal_bicovariance_test(g, closed, rep)
    try:
        closed_left = close_left_ideal(g, vectors)
        reconstruct_right_from_ideal(g, closed_left, rep, name=f"{name}-right")
    except (IdealInvalid, NotRightCovariant, InternalInconsistency) as exc:
        rep.fail("RECONSTRUCTION_RIGHT", {"reason": str(exc)})
    return rep


_GROUP_FATAL = ("ALG_ASSOC", "ALG_UNIT_L", "ALG_UNIT_R", "SIGMA_INVERTIBLE", "KAPPA_INVERTIBLE", "TAU_OK")


def _guarded(ctx: str, fn):
    "Run one section, converting derivation blowups into a failing entry."
    from .groups import Kappa0Mismatch, TauMismatch, TauSingular
    from .linalg import NotInvertible

    try:
        return fn()
    except (TauMismatch, TauSingular, Kappa0Mismatch, NotInvertible, InternalInconsistency) as exc:
        rep = Report(ctx=ctx)
        rep.fail("SECTION_ABORTED", {"reason": str(exc)})
        return rep


def verify_bundle(bundle: Bundle, shift_range: int = 2, paranoid: bool = False, jobs: int = 1) -> Report:
    out = Report()
    group_rep = _guarded("group", lambda: verify_group_section(bundle, shift_range, paranoid))
    out.extend(group_rep)
    failed = {e.id for e in group_rep.failures()}
    if failed & set(_GROUP_FATAL) or "SECTION_ABORTED" in failed:
        for c in bundle.calculi:
            out.add_skip_section(f"calculus:{c.name}")
        for name, _ in bundle.ideals:
            out.add_skip_section(f"ideal:{name}")
        return out
    sections: list = []
    for c in bundle.calculi:
        sections.append((f"calculus:{c.name}", lambda c=c: verify_calculus_section(bundle, c, shift_range)))
    for name, vectors in bundle.ideals:
        sections.append(
            (f"ideal:{name}", lambda name=name, vectors=vectors: verify_ideal_section(bundle, name, vectors, shift_range))
        )
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_guarded, ctx, fn) for ctx, fn in sections]
            for fut in futures:
                out.extend(fut.result())
    else:
        for ctx, fn in sections:
            out.extend(_guarded(ctx, fn))
    return out


def run_covariance_mode(bundle: Bundle, mode: str, shift_range: int = 2) -> Report:
    "Targeted decision procedures for one aspect of covariance."
    rep = Report(ctx=f"covariance:{mode}")
    g = bundle.group
    if mode == "star" and bundle.star is None:
        raise IdealInvalid("bundle carries no star structure")
    if not bundle.calculi and mode != "star":
        rep.skip("NO_CALCULI", note="bundle has no calculus sections")
    if mode == "star":
        check_star_group(StarGroup(g, bundle.star), rep, shift_range)
    for c in bundle.calculi:
        sub = _guarded(f"covariance:{mode}:{c.name}", lambda c=c: _covariance_one(bundle, c, mode, shift_range))
        rep.extend(sub)
    if mode == "braided":
        shifts = explore_antipode_shifts(g, shift_range)
        rep.skip(
            "ANTIPODE_BRAID_SHIFTS",
            note="exploratory, nothing asserted: " + "; ".join(f"n={k} matches m in {v}" for k, v in shifts.items()),
        )
    return rep


def _covariance_one(bundle: Bundle, c: FirstOrderCalculus, mode: str, shift_range: int) -> Report:
    g = bundle.group
    sub = Report(ctx=f"covariance:{mode}:{c.name}")
    check_calculus(c, sub)
    if mode == "left":
        try:
            solve_left_action(c, sub)
        except NotLeftCovariant as exc:
            sub.fail("NOT_LEFT_COVARIANT", {"reason": str(exc)})
    elif mode == "right":
        try:
            solve_right_action(c, sub)
        except NotRightCovariant as exc:
            sub.fail("NOT_RIGHT_COVARIANT", {"reason": str(exc)})
    elif mode == "bi":
        lcd = rcd = None
        try:
            lcd = solve_left_action(c, sub)
        except NotLeftCovariant as exc:
            sub.fail("NOT_LEFT_COVARIANT", {"reason": str(exc)})
        try:
            rcd = solve_right_action(c, sub)
        except NotRightCovariant as exc:
            sub.fail("NOT_RIGHT_COVARIANT", {"reason": str(exc)})
        if lcd is not None and rcd is not None:
            try:
                flips = solve_flips(c, shift_range)
                check_bicovariance(c, lcd, rcd, flips, sub, shift_range)
            except (NotCovariant, NotBijective) as exc:
                sub.fail("NOT_SIGMA_COVARIANT", {"reason": str(exc)})
            ideal_bicovariance_test(g, lcd.ideal, sub)
    elif mode == "kappa":
        try:
            check_kappa_covariance(c, sub, shift_range=shift_range)
        except NotKappaCovariant:
            pass
        kappa_iff_bicovariant(c, sub)
    elif mode == "star":
        try:
            lcd = solve_left_action(c, sub)
            star_covariance(c, lcd, StarGroup(g, bundle.star), sub)
        except NotLeftCovariant as exc:
            sub.fail("NOT_LEFT_COVARIANT", {"reason": str(exc)})
        except NotStarCovariant:
            pass
    elif mode == "braided":
        try:
            flips = solve_flips(c, shift_range)
            sub.ok("FLIPS_SOLVED")
            for k in range(-shift_range, shift_range + 1):
                check_flip_identities(c, flips["left"][k], g.sigma_n(k), sub, counterpart=flips["right"][k])
                check_flip_identities(c, flips["right"][k], g.sigma_n(k), sub)
            flip_tau_from_sigma(c, flips["left"][1], sub)
            flip_tau_from_sigma(c, flips["right"][1], sub)
            check_multi_covariance(c, flips, sub, shift_range)
        except NotCovariant as exc:
            sub.fail("NOT_SIGMA_COVARIANT", {"reason": str(exc)})
        except NotBijective as exc:
            sub.fail("FLIP_NOT_BIJECTIVE", {"reason": str(exc)})
    else:
        raise ValueError(f"unknown covariance mode {mode!r}")
    return sub


def derive_map(bundle: Bundle, what: str, n: int = 1) -> LinMap:
    g = bundle.group
    if what == "tau":
        return g.tau
    if what == "sigma-n":
        return g.sigma_n(n)
    if what == "a0":
        return simplified_algebra(g).mult
    if what == "kappa0":
        return kappa0(g)
    if what == "ad":
        return adjoint_action(g)
    raise ValueError(f"unknown derivation {what!r}")


def complete_system(bundle: Bundle, max_elems: int = 64) -> Completion:
    g = bundle.group
    return complete_braid_system(BraidSystem.of(g.dim, [g.braiding, g.tau]), max_elems)


def build_calculus(bundle: Bundle, ideal_name: str, side: str = "left") -> tuple[Bundle, Report]:
    "Reconstruct the calculus for a named ideal and append it to the bundle."
    rep = Report(ctx=f"build:{ideal_name}:{side}")
    match = [vectors for name, vectors in bundle.ideals if name == ideal_name]
    if not match:
        raise KeyError(f"no ideal named {ideal_name!r} in bundle")
    g = bundle.group
    if side == "left":
        closed = close_right_ideal(g, match[0])
        calc = reconstruct_from_ideal(g, closed, rep, name=f"{ideal_name}-{side}")
    elif side == "right":
        closed = close_left_ideal(g, match[0])
        calc = reconstruct_right_from_ideal(g, closed, rep, name=f"{ideal_name}-{side}")
    else:
        raise ValueError("side must be 'left' or 'right'")
    rep.ok("IDEAL_CLOSURE", note=f"closure has dimension {closed.dim}")
    out = Bundle(bundle.group, bundle.star, list(bundle.calculi) + [calc], list(bundle.ideals))
    return out, rep
