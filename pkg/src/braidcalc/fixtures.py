"""Canonical structure-constant fixtures used across the test and CLI surface.

fix_one   -- the one-dimensional algebra; everything is scalar.
fix_k2    -- functions on the two-element group: pointwise product, flip braiding.
fix_gr    -- the Grassmann line 1, t with t^2 = 0 and the graded flip.
fix_k4    -- functions on the cyclic group of order four; the antipode is the
             genuine inversion permutation, which makes non-symmetric ideals
             available (useful for negative star-covariance cases).
"""

from __future__ import annotations

from fractions import Fraction

from .algebras import FiniteDimAlgebra
from .groups import MultiBraidedGroup
from .linalg import AntilinMap, LinMap, compose, identity, permutation_map
from .scalars import Q


def _delta_group_algebra(order: int, labels) -> FiniteDimAlgebra:
    "Functions on Z/order with pointwise product; unit is the constant 1."
    n = order
    mult_rows = [[0] * (n * n) for _ in range(n)]
    for i in range(n):
        mult_rows[i][i * n + i] = 1
    unit_rows = [[1] for _ in range(n)]
    return FiniteDimAlgebra(
        n,
        LinMap(n, 1, unit_rows),
        LinMap(n, n * n, mult_rows),
        tuple(labels),
    )


def _delta_group(order: int, labels) -> MultiBraidedGroup:
    n = order
    alg = _delta_group_algebra(order, labels)
    cop_rows = [[0] * n for _ in range(n * n)]
    for a in range(n):
        for b in range(n):
            cop_rows[a * n + b][(a + b) % n] = 1
    counit = LinMap(1, n, [[1] + [0] * (n - 1)])
    anti_rows = [[1 if i == (-j) % n else 0 for j in range(n)] for i in range(n)]
    return MultiBraidedGroup(
        alg,
        LinMap(n * n, n, cop_rows),
        counit,
        LinMap(n, n, anti_rows),
        permutation_map([1, 0], [n, n]),
    )


def fix_one() -> MultiBraidedGroup:
    one = identity(1)
    alg = FiniteDimAlgebra(1, one, one, ("e",))
    return MultiBraidedGroup(alg, one, one, one, one)


def fix_k2() -> MultiBraidedGroup:
    return _delta_group(2, ("d_e", "d_g"))


def fix_k4() -> MultiBraidedGroup:
    return _delta_group(4, ("d_0", "d_1", "d_2", "d_3"))


def graded_flip(degrees) -> LinMap:
    "sigma(u (x) v) = (-1)^{|u||v|} v (x) u on homogeneous basis vectors."
    n = len(degrees)
    rows = [[0] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            sign = -1 if degrees[i] % 2 and degrees[j] % 2 else 1
            rows[j * n + i][i * n + j] = sign
    return LinMap(n * n, n * n, rows)


def fix_gr() -> MultiBraidedGroup:
    "The Grassmann line: basis (1, t), t^2 = 0, primitive t, graded flip."
    mult = LinMap(2, 4, [[1, 0, 0, 0], [0, 1, 1, 0]])
    unit = LinMap(2, 1, [[1], [0]])
    alg = FiniteDimAlgebra(2, unit, mult, ("1", "t"))
    cop = LinMap(4, 2, [[1, 0], [0, 1], [0, 1], [0, 0]])
    counit = LinMap(1, 2, [[1, 0]])
    antipode = LinMap(2, 2, [[1, 0], [0, -1]])
    return MultiBraidedGroup(alg, cop, counit, antipode, graded_flip((0, 1)))


def fix_anyon() -> MultiBraidedGroup:
    """The i-graded line: basis (1, t, t^2, t^3) with t^4 = 0.

    The braiding swaps graded factors with the phase i^{ab}, so it has
    order eight and is genuinely non-involutive; the coproduct uses
    i-binomial coefficients and the antipode is diag(1, -1, i, i), whose
    square is the grading involution.  This exercises every inverse- and
    conjugation-sensitive path with exact complex scalars.
    """
    n = 4
    mult_rows = [[0] * 16 for _ in range(4)]
    for a in range(4):
        for b in range(4):
            if a + b < 4:
                mult_rows[a + b][a * 4 + b] = 1
    unit = LinMap(4, 1, [[1], [0], [0], [0]])
    alg = FiniteDimAlgebra(4, unit, LinMap(4, 16, mult_rows), ("1", "t", "t2", "t3"))
    i = Q(0, 1)
    one = Q(1)
    binom = {
        (0, 0): one,
        (1, 0): one, (1, 1): one,
        (2, 0): one, (2, 1): Q(1, 1), (2, 2): one,
        (3, 0): one, (3, 1): i, (3, 2): i, (3, 3): one,
    }
    cop_rows = [[Q(0)] * 4 for _ in range(16)]
    for k in range(4):
        for j in range(k + 1):
            cop_rows[j * 4 + (k - j)][k] = binom[(k, j)]
    counit = LinMap(1, 4, [[1, 0, 0, 0]])
    antipode = LinMap.from_entries(
        4, 4, [[one, Q(0), Q(0), Q(0)], [Q(0), Q(-1), Q(0), Q(0)], [Q(0), Q(0), i, Q(0)], [Q(0), Q(0), Q(0), i]]
    )
    sig_rows = [[Q(0)] * 16 for _ in range(16)]
    for a in range(4):
        for b in range(4):
            phase = [one, i, Q(-1), Q(0, -1)][(a * b) % 4]
            sig_rows[b * 4 + a][a * 4 + b] = phase
    return MultiBraidedGroup(
        alg,
        LinMap.from_entries(16, 4, cop_rows),
        counit,
        antipode,
        LinMap.from_entries(16, 16, sig_rows),
    )


def conjugation_star(g: MultiBraidedGroup) -> AntilinMap:
    "Coefficientwise conjugation in the given basis (basis vectors self-adjoint)."
    return AntilinMap(identity(g.dim))


def gr_star(sign: int = 1, imaginary: bool = False) -> AntilinMap:
    "t* = sign * t, or t* = i t when imaginary is set; 1* = 1."
    if imaginary:
        return AntilinMap(LinMap.from_entries(2, 2, [[Q(1), Q(0)], [Q(0), Q(0, Fraction(sign))]]))
    return AntilinMap(LinMap(2, 2, [[1, 0], [0, sign]]))


def u_basis_flip_k2() -> LinMap:
    """A second braiding on the K2 algebra: the graded flip in the character basis.

    u+ = d_e + d_g has degree 0, u- = d_e - d_g degree 1; transported back to
    the delta basis this gives a hexagon-compatible braiding distinct from the
    plain transposition, so {flip, this} generates a genuine two-element
    braid system.
    """
    p = LinMap(2, 2, [[1, 1], [1, -1]])
    p2 = p.tensor(p)
    return compose(p2, graded_flip((0, 1)), p2.inverse())
