"""Braided quantum-group records and their derived structure.

A group record holds the algebra plus coproduct, counit, antipode and the
intrinsic braiding.  From these the secondary braiding tau, the shift
family sigma_n = (sigma tau^-1)^(n-1) sigma, the simplified product
m0 = m tau^-1 sigma with its antipode kappa0, and the adjoint action are
derived and cached (the cache is lock-guarded; a paranoid verification
pass recomputes everything on a fresh clone and compares).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .algebras import FiniteDimAlgebra, check_algebra
from .linalg import (
    DimensionMismatch,
    LinMap,
    compose,
    identity,
    tensor,
)
from .reporting import Report


class TauMismatch(ValueError):
    "The two defining expressions for tau differ: not a valid braided group."


class TauSingular(ValueError):
    pass


class Kappa0Mismatch(ValueError):
    pass


class InternalInconsistency(AssertionError):
    "An engine self-check failed; indicates a solver bug, not bad input."


class MultiBraidedGroup:
    def __init__(
        self,
        alg: FiniteDimAlgebra,
        coproduct: LinMap,
        counit: LinMap,
        antipode: LinMap,
        braiding: LinMap,
        sigma_cap: int = 16,
    ):
        n = alg.dim
        if coproduct.dom != n or coproduct.cod != n * n:
            raise DimensionMismatch("coproduct must map dim -> dim^2")
        if counit.dom != n or counit.cod != 1:
            raise DimensionMismatch("counit must map dim -> 1")
        if antipode.dom != n or antipode.cod != n:
            raise DimensionMismatch("antipode must be an endomorphism")
        if braiding.dom != n * n or braiding.cod != n * n:
            raise DimensionMismatch("braiding must act on dim^2")
        self.alg = alg
        self.coproduct = coproduct
        self.counit = counit
        self.antipode = antipode
        self.braiding = braiding
        self.sigma_cap = sigma_cap
        self._lock = threading.RLock()
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def mult(self) -> LinMap:
        return self.alg.mult

    @property
    def unit(self) -> LinMap:
        return self.alg.unit

    def _derived(self, key, fn):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    @property
    def sigma_inv(self) -> LinMap:
        return self._derived("sigma_inv", self.braiding.inverse)

    @property
    def kappa_inv(self) -> LinMap:
        return self._derived("kappa_inv", self.antipode.inverse)

    @property
    def tau(self) -> LinMap:
        return self._derived("tau", lambda: derive_tau(self))

    @property
    def tau_inv(self) -> LinMap:
        return self._derived("tau_inv", self.tau.inverse)

    def sigma_n(self, n: int) -> LinMap:
        if abs(n) > self.sigma_cap:
            raise ValueError(f"shift {n} beyond configured bound {self.sigma_cap}")
        return self._derived(("sigma_n", n), lambda: _sigma_n_raw(self, n))

    def uncached_clone(self) -> "MultiBraidedGroup":
        return MultiBraidedGroup(
            self.alg, self.coproduct, self.counit, self.antipode, self.braiding, self.sigma_cap
        )


def derive_tau(g: MultiBraidedGroup) -> LinMap:
    """The secondary braiding, from both of its defining expressions.

    Raises TauMismatch when the expressions disagree (the record is not a
    braided group) and TauSingular when the common value is not bijective.
    """
    n = g.dim
    I = identity(n)
    s = g.braiding
    s_inv = s.inverse()
    left = compose(tensor(g.counit, I, I), tensor(s_inv, I), tensor(I, g.coproduct), s)
    right = compose(tensor(I, I, g.counit), tensor(I, s_inv), tensor(g.coproduct, I), s)
    if left != right:
        diff = left - right
        j = diff.first_nonzero_col()
        raise TauMismatch(
            f"tau expressions disagree on basis column {j}: "
            f"{[str(x) for x in left.col(j)]} vs {[str(x) for x in right.col(j)]}"
        )
    if not left.is_invertible():
        raise TauSingular("derived tau is not bijective")
    return left


def _power(f: LinMap, k: int) -> LinMap:
    if k < 0:
        return _power(f.inverse(), -k)
    out = identity(f.dom)
    for _ in range(k):
        out = f @ out
    return out


def _sigma_n_raw(g: MultiBraidedGroup, n: int) -> LinMap:
    st = g.braiding @ g.tau_inv
    ts = g.tau_inv @ g.braiding
    a = _power(st, n - 1) @ g.braiding
    b = g.braiding @ _power(ts, n - 1)
    if a != b:
        raise InternalInconsistency(f"sigma_{n}: the two product expressions differ")
    return a


def sigma_n(g: MultiBraidedGroup, n: int) -> LinMap:
    return g.sigma_n(n)


def simplified_algebra(g: MultiBraidedGroup) -> FiniteDimAlgebra:
    "The same space with the twisted product m0 = m tau^-1 sigma."
    m0 = compose(g.mult, g.tau_inv, g.braiding)
    return FiniteDimAlgebra(g.dim, g.unit, m0, g.alg.labels)


def kappa0(g: MultiBraidedGroup) -> LinMap:
    "The antipode of the simplified algebra, from both expressions."
    a = compose(tensor(g.counit, g.antipode), g.braiding, g.coproduct)
    b = compose(tensor(g.antipode, g.counit), g.braiding, g.coproduct)
    if a != b:
        raise Kappa0Mismatch("the two expressions for kappa0 differ")
    return a


def adjoint_action(g: MultiBraidedGroup) -> LinMap:
    "The adjoint action of the group on itself, as a map dim -> dim^2."
    n = g.dim
    I = identity(n)
    return compose(
        tensor(I, g.mult),
        tensor(I, g.antipode, I),
        tensor(g.tau, I),
        tensor(I, g.coproduct),
        g.coproduct,
    )


def check_adjoint(g: MultiBraidedGroup, report: Report | None = None, shift_range: int = 2) -> Report:
    "Counit/coassociativity laws and shift twistings of the adjoint action."
    rep = report if report is not None else Report()
    n = g.dim
    I = identity(n)
    ad = adjoint_action(g)
    eps, phi, kap, tau, m, unit = g.counit, g.coproduct, g.antipode, g.tau, g.mult, g.unit
    rep.check_eq("EQ_B1", ad @ unit, tensor(unit, unit), note="adjoint action fixes the unit")
    rep.check_eq("EQ_B2A", compose(tensor(eps, I), ad), unit @ eps)
    rep.check_eq(
        "EQ_B2B",
        compose(tensor(I, m @ tensor(I, kap), I), tensor(ad, phi), phi),
        compose(tensor(I, kap, I), tensor(tau, I), tensor(I, phi), phi),
    )
    rep.check_eq("EQ_B3", compose(tensor(I, eps), ad), I)
    rep.check_eq("EQ_B4", compose(tensor(I, phi), ad), compose(tensor(ad, I), ad))
    for m_shift in range(-shift_range, shift_range + 1):
        for n_shift in range(-shift_range, shift_range + 1):
            sm, sn = g.sigma_n(m_shift), g.sigma_n(n_shift)
            rep.check_eq(
                f"EQ_B7_n{n_shift}_m{m_shift}",
                compose(tensor(I, ad), sm),
                compose(tensor(sm, I), tensor(I, sn), tensor(ad, I)),
            )
            rep.check_eq(
                f"EQ_B8_n{n_shift}_m{m_shift}",
                compose(tensor(ad, I), sn),
                compose(tensor(I, sm), tensor(sn, I), tensor(I, ad)),
            )
    return rep


@dataclass(frozen=True)
class BraidSystem:
    dim: int
    elements: tuple

    @staticmethod
    def of(dim: int, maps) -> "BraidSystem":
        seen: list = []
        for f in maps:
            if f.dom != dim * dim or f.cod != dim * dim:
                raise DimensionMismatch("braid-system elements act on dim^2")
            if f not in seen:
                seen.append(f)
        return BraidSystem(dim, tuple(seen))


def check_braid_system(t: BraidSystem, alg: FiniteDimAlgebra, report: Report | None = None) -> Report:
    """Per element: invertibility and both hexagons with the product.

    Per ordered triple (a, b, c): the mixed braid relation
    (id (x) a)(b (x) id)(id (x) c) = (c (x) id)(id (x) b)(a (x) id).
    """
    rep = report if report is not None else Report()
    n = alg.dim
    I = identity(n)
    m = alg.mult
    for i, s in enumerate(t.elements):
        rep.check_invertible(f"SYS_E{i}_INVERTIBLE", s)
        rep.check_eq(
            f"SYS_E{i}_HEX_L",
            compose(tensor(I, m), tensor(s, I), tensor(I, s)),
            s @ tensor(m, I),
            name="EQ_29",
        )
        rep.check_eq(
            f"SYS_E{i}_HEX_R",
            compose(tensor(m, I), tensor(I, s), tensor(s, I)),
            s @ tensor(I, m),
            name="EQ_210",
        )
    for i, a in enumerate(t.elements):
        for j, b in enumerate(t.elements):
            for k, c in enumerate(t.elements):
                rep.check_eq(
                    f"SYS_MIXED_{i}_{j}_{k}",
                    compose(tensor(I, a), tensor(b, I), tensor(I, c)),
                    compose(tensor(c, I), tensor(I, b), tensor(a, I)),
                )
    return rep


@dataclass(frozen=True)
class Completion:
    system: BraidSystem
    truncated: bool


def complete_braid_system(t: BraidSystem, max_elems: int = 64) -> Completion:
    """Close a braid system under the ternary operation (a, b, c) -> a b^-1 c.

    Deduplicates by exact matrix equality and stops when closed, or marks
    the result truncated once max_elems is reached.
    """
    elems: list = list(t.elements)
    inverses = {f: f.inverse() for f in elems}
    frontier = list(elems)
    while frontier:
        new: list = []
        for a in elems:
            for b in elems:
                for c in elems:
                    if a not in frontier and b not in frontier and c not in frontier:
                        continue
                    d = compose(a, inverses[b], c)
                    if d not in elems and d not in new:
                        new.append(d)
                        if len(elems) + len(new) > max_elems:
                            return Completion(BraidSystem(t.dim, tuple(elems + new)), True)
        for d in new:
            inverses[d] = d.inverse()
        elems.extend(new)
        frontier = new
    return Completion(BraidSystem(t.dim, tuple(elems)), False)


def explore_antipode_shifts(g: MultiBraidedGroup, shift_range: int = 2) -> dict:
    """Survey which shifts m satisfy sigma_n (kappa (x) kappa) = (kappa (x) kappa) sigma_m.

    Purely exploratory; nothing is asserted.
    """
    kk = tensor(g.antipode, g.antipode)
    out: dict = {}
    for n in range(-shift_range, shift_range + 1):
        lhs = g.sigma_n(n) @ kk
        out[n] = [m for m in range(-shift_range, shift_range + 1) if lhs == kk @ g.sigma_n(m)]
    return out


def check_group(
    g: MultiBraidedGroup,
    report: Report | None = None,
    shift_range: int = 2,
    paranoid: bool = False,
) -> Report:
    "The full axiom and derived-identity battery for a group record."
    rep = report if report is not None else Report()
    n = g.dim
    I = identity(n)
    m, unit, phi, eps, kap, s = g.mult, g.unit, g.coproduct, g.counit, g.antipode, g.braiding

    check_algebra(g.alg, rep)
    rep.check_invertible("SIGMA_INVERTIBLE", s)
    rep.check_invertible("KAPPA_INVERTIBLE", kap)
    rep.check_eq("COASSOC", compose(tensor(phi, I), phi), compose(tensor(I, phi), phi))
    rep.check_eq("COUNIT_L", compose(tensor(eps, I), phi), I)
    rep.check_eq("COUNIT_R", compose(tensor(I, eps), phi), I)
    rep.check_eq("ANTIPODE_L", compose(m, tensor(kap, I), phi), unit @ eps)
    rep.check_eq("ANTIPODE_R", compose(m, tensor(I, kap), phi), unit @ eps)
    rep.check_eq(
        "SIGMA_YB",
        compose(tensor(s, I), tensor(I, s), tensor(s, I)),
        compose(tensor(I, s), tensor(s, I), tensor(I, s)),
    )
    rep.check_eq("HEX_L", compose(tensor(I, m), tensor(s, I), tensor(I, s)), s @ tensor(m, I), name="EQ_29")
    rep.check_eq("HEX_R", compose(tensor(m, I), tensor(I, s), tensor(s, I)), s @ tensor(I, m), name="EQ_210")
    rep.check_eq("SIGMA_UNITAL_L", s @ tensor(unit, I), tensor(I, unit))
    rep.check_eq("SIGMA_UNITAL_R", s @ tensor(I, unit), tensor(unit, I))
    rep.check_eq(
        "PHI_MULT",
        phi @ m,
        compose(tensor(m, m), tensor(I, s, I), tensor(phi, phi)),
    )

    try:
        tau = g.tau
    except (TauMismatch, TauSingular) as exc:
        rep.fail("TAU_OK", {"reason": str(exc)})
        return rep
    rep.ok("TAU_OK", note="both defining expressions agree; tau bijective")
    rep.check_eq("TAU_UNITAL_L", tau @ tensor(unit, I), tensor(I, unit))
    rep.check_eq("TAU_UNITAL_R", tau @ tensor(I, unit), tensor(unit, I))

    eps2 = tensor(eps, eps)
    rep.check_eq("EPS_M_SIGMA_TAU", eps @ m, compose(eps2, g.sigma_inv, tau))
    rep.check_eq("EPS_SIGMA", compose(eps2, g.sigma_inv, tau), eps2)
    rep.check_eq("EPS_TAU_L", compose(tensor(eps, I), tau), tensor(I, eps))
    rep.check_eq("EPS_TAU_R", compose(tensor(I, eps), tau), tensor(eps, I))

    consistent = True
    for k in range(-shift_range, shift_range + 1):
        sk = g.sigma_n(k)
        consistent = consistent and sk == compose(g.sigma_n(k - 1), g.tau_inv, s)
        consistent = consistent and sk == compose(s, g.tau_inv, g.sigma_n(k - 1))
    rep.check_true("SIGMAN_CONSISTENT", consistent, {"reason": "shift-family recurrence failed"})

    sys_rep = Report(ctx=rep.ctx)
    check_braid_system(BraidSystem.of(n, [s, tau]), g.alg, sys_rep)
    rep.extend(sys_rep)
    rep.check_true(
        "SYS_OK",
        sys_rep.ok_all,
        {"reason": "the pair {sigma, tau} fails the braid-system battery"},
    )

    sigma_eq_tau = s == tau
    shifts_collapse = all(g.sigma_n(k) == s for k in range(-4, 5))
    m0 = compose(m, g.tau_inv, s)
    rep.check_true(
        "CLASSICAL_REDUCTION",
        (sigma_eq_tau == shifts_collapse) and (sigma_eq_tau == (m0 == m)),
        {"reason": "sigma=tau, shift collapse and m0=m disagree"},
        note=f"sigma=tau: {sigma_eq_tau}; sigma_n=sigma on [-4,4]: {shifts_collapse}; m0=m: {m0 == m}",
    )
    a0 = simplified_algebra(g)
    check_algebra(a0, rep, prefix="A0_")

    if paranoid:
        fresh = g.uncached_clone()
        agree = fresh.tau == tau and all(
            fresh.sigma_n(k) == g.sigma_n(k) for k in range(-shift_range, shift_range + 1)
        )
        rep.check_true("PARANOID_CACHE_OK", agree, {"reason": "cached derived maps differ from recomputation"})
    return rep
