"""First-order differential calculi as bimodule data, and flip-over operators.

A calculus is a bimodule over the group's algebra together with a
differential d whose left multiplication map iota_l = mgl (id (x) d) is
surjective.  Covariance with respect to a braiding gamma means gamma
extends to a bijective flip-over operator between Gamma (x) A and
A (x) Gamma compatible with iota; the solver realizes the extension by
factoring through iota and verifies the full identity battery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import MultiBraidedGroup
from .linalg import (
    DimensionMismatch,
    LinMap,
    NoFactor,
    NotInvertible,
    compose,
    factor_through,
    identity,
    tensor,
)
from .reporting import Report
from .scalars import Q


class NotCovariant(ValueError):
    "The flip-over operator does not exist (kernel obstruction)."


class NotBijective(ValueError):
    "A flip-over operator exists but is not invertible."


@dataclass(frozen=True)
class FirstOrderCalculus:
    group: MultiBraidedGroup
    gdim: int
    mgl: LinMap
    mgr: LinMap
    d: LinMap
    name: str = "calculus"

    def __post_init__(self):
        n = self.group.dim
        if self.mgl.dom != n * self.gdim or self.mgl.cod != self.gdim:
            raise DimensionMismatch("mgl must map A (x) Gamma -> Gamma")
        if self.mgr.dom != self.gdim * n or self.mgr.cod != self.gdim:
            raise DimensionMismatch("mgr must map Gamma (x) A -> Gamma")
        if self.d.dom != n or self.d.cod != self.gdim:
            raise DimensionMismatch("d must map A -> Gamma")


def iota_l(c: FirstOrderCalculus) -> LinMap:
    "a (x) b -> a d(b)"
    return c.mgl @ tensor(identity(c.group.dim), c.d)


def iota_r(c: FirstOrderCalculus) -> LinMap:
    "a (x) b -> d(a) b"
    return c.mgr @ tensor(c.d, identity(c.group.dim))


def check_calculus(c: FirstOrderCalculus, report: Report | None = None) -> Report:
    "Leibniz rule, d(1) = 0, the five bimodule laws, and iota surjectivity."
    rep = report if report is not None else Report()
    n = c.group.dim
    I, Ig = identity(n), identity(c.gdim)
    m, unit, d, mgl, mgr = c.group.mult, c.group.unit, c.d, c.mgl, c.mgr
    rep.check_eq("EQ_21", d @ m, mgl @ tensor(I, d) + mgr @ tensor(d, I), name="LEIBNIZ")
    rep.check_eq("D_UNIT", d @ unit, LinMap.zero(c.gdim, 1))
    rep.check_eq("BIMOD_L_ASSOC", mgl @ tensor(m, Ig), mgl @ tensor(I, mgl))
    rep.check_eq("BIMOD_R_ASSOC", mgr @ tensor(Ig, m), mgr @ tensor(mgr, I))
    rep.check_eq("BIMOD_MIXED", mgr @ tensor(mgl, I), mgl @ tensor(I, mgr))
    rep.check_eq("BIMOD_UNIT_L", mgl @ tensor(unit, Ig), Ig)
    rep.check_eq("BIMOD_UNIT_R", mgr @ tensor(Ig, unit), Ig)
    rep.check_surjective("IOTA_L_SURJ", iota_l(c))
    rep.check_surjective("IOTA_R_SURJ", iota_r(c))
    return rep


@dataclass(frozen=True)
class FlipOver:
    direction: str
    label: object
    map: LinMap
    inverse: LinMap


def solve_flip(c: FirstOrderCalculus, braid: LinMap, direction: str = "left", label=None) -> FlipOver:
    """Solve the flip-over operator extending `braid` across the calculus.

    Left: x (iota_l (x) id) = (id (x) iota_l)(braid (x) id)(id (x) braid),
    solved by factoring through the surjection iota_l (x) id; the mirror
    characterization through iota_r is verified afterwards.  Raises
    NotCovariant on a kernel obstruction, NotBijective when the solved
    operator is not invertible.
    """
    n = c.group.dim
    I = identity(n)
    il, ir = iota_l(c), iota_r(c)
    if direction == "left":
        f = tensor(il, I)
        rhs = compose(tensor(I, il), tensor(braid, I), tensor(I, braid))
        alt_f = tensor(ir, I)
        alt_rhs = compose(tensor(I, ir), tensor(braid, I), tensor(I, braid))
    elif direction == "right":
        f = tensor(I, ir)
        rhs = compose(tensor(ir, I), tensor(I, braid), tensor(braid, I))
        alt_f = tensor(I, il)
        alt_rhs = compose(tensor(il, I), tensor(I, braid), tensor(braid, I))
    else:
        raise ValueError("direction must be 'left' or 'right'")
    try:
        x = factor_through(f, rhs)
    except NoFactor as exc:
        raise NotCovariant(f"{direction} flip for {label!r}: {exc}") from exc
    if compose(x, alt_f) != alt_rhs:
        raise NotCovariant(f"{direction} flip for {label!r}: mirror iota characterization fails")
    try:
        inv = x.inverse()
    except NotInvertible as exc:
        raise NotBijective(f"{direction} flip for {label!r} is not bijective") from exc
    return FlipOver(direction, label, x, inv)


def solve_flips(c: FirstOrderCalculus, shift_range: int = 2) -> dict:
    """Left and right flips of every shifted braiding sigma_n.

    The table spans [-2K, 2K] so that identities indexed by sums of two
    shifts in [-K, K] stay inside the table.
    """
    table = {"left": {}, "right": {}}
    for n in range(-2 * shift_range, 2 * shift_range + 1):
        braid = c.group.sigma_n(n)
        table["left"][n] = solve_flip(c, braid, "left", label=n)
        table["right"][n] = solve_flip(c, braid, "right", label=n)
    return table


def _basis_tensor_left(i: int, n: int, vec) -> list:
    "Coordinates of e_i (x) vec inside an n * len(vec) space."
    out = [Q(0)] * (n * len(vec))
    for t, x in enumerate(vec):
        out[i * len(vec) + t] = x
    return out


def _basis_tensor_right(vec, j: int, n: int) -> list:
    "Coordinates of vec (x) e_j inside a len(vec) * n space."
    out = [Q(0)] * (len(vec) * n)
    for t, x in enumerate(vec):
        out[t * n + j] = x
    return out


def _kernel_is_subbimodule(c: FirstOrderCalculus, ker) -> bool:
    "Is a subspace of Gamma (x) A stable under both module multiplications?"
    n = c.group.dim
    left_act = tensor(c.mgl, identity(n))
    right_act = tensor(identity(c.gdim), c.group.mult)
    for v in ker.basis:
        for i in range(n):
            if not ker.contains(left_act.apply(_basis_tensor_left(i, n, list(v)))):
                return False
            if not ker.contains(right_act.apply(_basis_tensor_right(list(v), i, n))):
                return False
    return True


def check_flip_identities(
    c: FirstOrderCalculus,
    flip: FlipOver,
    braid: LinMap,
    report: Report | None = None,
    counterpart: FlipOver | None = None,
) -> Report:
    """The general flip-over identity battery for one braiding.

    `counterpart` is the flip of the same braiding in the opposite
    direction, enabling the two-sided compatibility check.
    """
    rep = report if report is not None else Report()
    n = c.group.dim
    I, Ig = identity(n), identity(c.gdim)
    m, unit, d, mgl, mgr = c.group.mult, c.group.unit, c.d, c.mgl, c.mgr
    s = braid
    if flip.direction == "left":
        ls = flip.map
        rep.check_eq("EQ_216", ls @ tensor(iota_l(c), I), compose(tensor(I, iota_l(c)), tensor(s, I), tensor(I, s)))
        rep.check_eq("EQ_218A", ls @ tensor(Ig, unit), tensor(unit, Ig))
        rep.check_eq("EQ_218B", ls @ tensor(d, I), tensor(I, d) @ s)
        rep.check_eq(
            "EQ_220",
            compose(tensor(I, ls), tensor(ls, I), tensor(Ig, s)),
            compose(tensor(s, Ig), tensor(I, ls), tensor(ls, I)),
        )
        rep.check_eq("EQ_221", compose(tensor(I, mgl), tensor(s, Ig), tensor(I, ls)), ls @ tensor(mgl, I))
        rep.check_eq("EQ_222", compose(tensor(I, mgr), tensor(ls, I), tensor(Ig, s)), ls @ tensor(mgr, I))
        rep.check_eq("EQ_223", compose(tensor(m, Ig), tensor(I, ls), tensor(ls, I)), ls @ tensor(Ig, m))
        rep.check_surjective("LFLIP_SURJ", ls)
        rep.check_true(
            "LFLIP_KER_SUBBIMODULE",
            _kernel_is_subbimodule(c, ls.kernel()),
            {"reason": "kernel of the left flip is not a sub-bimodule"},
        )
        try:
            opposite = solve_flip(c, s.inverse(), "right", label=("inv", flip.label))
            rep.check_eq("FLIP_INV_L", flip.inverse, opposite.map)
        except (NotCovariant, NotBijective) as exc:
            rep.fail("FLIP_INV_L", {"reason": str(exc)})
    else:
        rs = flip.map
        rep.check_eq("EQ_217", rs @ tensor(I, iota_r(c)), compose(tensor(iota_r(c), I), tensor(I, s), tensor(s, I)))
        rep.check_eq("EQ_226A", rs @ tensor(unit, Ig), tensor(Ig, unit))
        rep.check_eq("EQ_226B", rs @ tensor(I, d), tensor(d, I) @ s)
        rep.check_eq(
            "EQ_227",
            compose(tensor(Ig, s), tensor(rs, I), tensor(I, rs)),
            compose(tensor(rs, I), tensor(I, rs), tensor(s, Ig)),
        )
        rep.check_eq("EQ_228", compose(tensor(Ig, m), tensor(rs, I), tensor(I, rs)), rs @ tensor(m, Ig))
        rep.check_eq("EQ_229", compose(tensor(mgr, I), tensor(Ig, s), tensor(rs, I)), rs @ tensor(I, mgr))
        rep.check_eq("EQ_230", compose(tensor(mgl, I), tensor(I, rs), tensor(s, Ig)), rs @ tensor(I, mgl))
        rep.check_surjective("RFLIP_SURJ", rs)
        try:
            opposite = solve_flip(c, s.inverse(), "left", label=("inv", flip.label))
            rep.check_eq("FLIP_INV_R", flip.inverse, opposite.map)
        except (NotCovariant, NotBijective) as exc:
            rep.fail("FLIP_INV_R", {"reason": str(exc)})
    if counterpart is not None:
        ls = flip.map if flip.direction == "left" else counterpart.map
        rs = counterpart.map if flip.direction == "left" else flip.map
        rep.check_eq(
            "EQ_232",
            compose(tensor(I, rs), tensor(s, Ig), tensor(I, ls)),
            compose(tensor(ls, I), tensor(Ig, s), tensor(rs, I)),
        )
    return rep


def flip_tau_from_sigma(c: FirstOrderCalculus, f_sigma: FlipOver, report: Report | None = None) -> FlipOver:
    """The flip of the secondary braiding, expressed through the sigma flip.

    Also verifies the closed inverse formula and the counit compatibility,
    and the mirrored construction when given a right flip.
    """
    rep = report if report is not None else Report()
    g = c.group
    n = g.dim
    I, Ig = identity(n), identity(c.gdim)
    eps, phi, tau = g.counit, g.coproduct, g.tau
    il = iota_l(c)
    if f_sigma.direction == "left":
        ls, ls_inv = f_sigma.map, f_sigma.inverse
        lt = compose(tensor(I, Ig, eps), tensor(I, ls_inv), tensor(phi, Ig), ls)
        rep.check_eq(
            "EQ_239",
            lt @ tensor(il, I),
            compose(tensor(I, il), tensor(tau, I), tensor(I, tau)),
            note="the derived tau flip satisfies the defining flip equation",
        )
        rep.check_eq(
            "EQ_240",
            lt.inverse(),
            compose(tensor(eps, Ig, I), tensor(ls, I), tensor(Ig, phi), ls_inv),
        )
        rep.check_eq("EQ_241", tensor(eps, Ig) @ lt, tensor(Ig, eps))
        return FlipOver("left", "tau", lt, lt.inverse())
    rs, rs_inv = f_sigma.map, f_sigma.inverse
    ir = iota_r(c)
    rt = compose(tensor(eps, Ig, I), tensor(rs_inv, I), tensor(Ig, phi), rs)
    rep.check_eq(
        "EQ_243",
        rt @ tensor(I, ir),
        compose(tensor(ir, I), tensor(I, tau), tensor(tau, I)),
        note="the derived tau flip satisfies the defining flip equation",
    )
    rep.check_eq(
        "EQ_244",
        rt.inverse(),
        compose(tensor(I, Ig, eps), tensor(I, rs), tensor(phi, Ig), rs_inv),
    )
    rep.check_eq("EQ_245", tensor(Ig, eps) @ rt, tensor(eps, Ig))
    return FlipOver("right", "tau", rt, rt.inverse())


def check_multi_covariance(
    c: FirstOrderCalculus,
    flips: dict,
    report: Report | None = None,
    shift_range: int = 2,
) -> Report:
    """Identities tying the whole flip family together.

    Composition law for the ternary closure operation, the mixed braid
    relations with one calculus leg, coproduct twisting, and antipode
    twisting, plus the right-handed mirrors and the two-sided mixed law.
    """
    rep = report if report is not None else Report()
    g = c.group
    n = g.dim
    I, Ig = identity(n), identity(c.gdim)
    phi, kap = g.coproduct, g.antipode
    left, right = flips["left"], flips["right"]
    K = shift_range

    for a in range(-1, 2):
        for b in range(-1, 2):
            for cc in range(-1, 2):
                if a - b + cc not in left:
                    continue
                rep.check_eq(
                    f"EQ_234_a{a}_b{b}_c{cc}",
                    compose(left[a].map, left[b].inverse, left[cc].map),
                    left[a - b + cc].map,
                )
                rep.check_eq(
                    f"EQ_236_a{a}_b{b}_c{cc}",
                    compose(right[a].map, right[b].inverse, right[cc].map),
                    right[a - b + cc].map,
                )
    for p in range(-K, K + 1):
        for q in range(-K, K + 1):
            for r in range(-K, K + 1):
                la, lb = left[p].map, left[q].map
                gam = g.sigma_n(r)
                rep.check_eq(
                    f"EQ_235_a{p}_b{q}_c{r}",
                    compose(tensor(I, la), tensor(lb, I), tensor(Ig, gam)),
                    compose(tensor(gam, Ig), tensor(I, lb), tensor(la, I)),
                )
                ra, rb = right[p].map, right[q].map
                alp = g.sigma_n(p)
                rep.check_eq(
                    f"EQ_237_a{p}_b{q}_c{r}",
                    compose(tensor(Ig, alp), tensor(rb, I), tensor(I, right[r].map)),
                    compose(tensor(right[r].map, I), tensor(I, rb), tensor(alp, Ig)),
                )
                rep.check_eq(
                    f"EQ_238_a{p}_b{q}_c{r}",
                    compose(tensor(I, ra), tensor(g.sigma_n(q), Ig), tensor(I, left[r].map)),
                    compose(tensor(left[r].map, I), tensor(Ig, g.sigma_n(q)), tensor(ra, I)),
                )
    for m_s in range(-K, K + 1):
        for n_s in range(-K, K + 1):
            rep.check_eq(
                f"EQ_242_n{n_s}_m{m_s}",
                compose(tensor(I, left[n_s].map), tensor(left[m_s].map, I), tensor(Ig, phi)),
                tensor(phi, Ig) @ left[m_s + n_s].map,
            )
            rep.check_eq(
                f"EQ_246_n{n_s}_m{m_s}",
                compose(tensor(right[n_s].map, I), tensor(I, right[m_s].map), tensor(phi, Ig)),
                tensor(Ig, phi) @ right[n_s + m_s].map,
            )
    for n_s in range(-K, K + 1):
        rep.check_eq(
            f"EQ_247_n{n_s}",
            left[n_s].map @ tensor(Ig, kap),
            tensor(kap, Ig) @ left[-n_s].map,
        )
        rep.check_eq(
            f"EQ_248_n{n_s}",
            right[n_s].map @ tensor(kap, Ig),
            tensor(Ig, kap) @ right[-n_s].map,
        )
    return rep
