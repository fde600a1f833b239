"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import DimensionMismatch, LinMap, compose, identity, tensor
from .reporting import Report, basis_label
from .scalars import Q


@dataclass(frozen=True)
class FiniteDimAlgebra:
    """An algebra on coordinates: multiplication (dim^2 -> dim) and unit (1 -> dim)."""

    dim: int
    unit: LinMap
    mult: LinMap
    labels: tuple = field(default=())

    def __post_init__(self):
        if self.unit.dom != 1 or self.unit.cod != self.dim:
            raise DimensionMismatch("unit must be a map 1 -> dim")
        if self.mult.dom != self.dim**2 or self.mult.cod != self.dim:
            raise DimensionMismatch("mult must be a map dim^2 -> dim")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(self.dim)))

    @property
    def unit_vector(self) -> tuple:
        return self.unit.col(0)


def multiply(alg: FiniteDimAlgebra, x, y) -> tuple:
    "Product of two coordinate vectors."
    x = list(x)
    y = list(y)
    if len(x) != alg.dim or len(y) != alg.dim:
        raise DimensionMismatch("vectors must have length dim")
    xy = []
    for a in x:
        for b in y:
            qa = a if isinstance(a, Q) else Q(a)
            qb = b if isinstance(b, Q) else Q(b)
            xy.append(qa * qb)
    return alg.mult.apply(xy)


def check_algebra(alg: FiniteDimAlgebra, report: Report | None = None, prefix: str = "") -> Report:
    "Associativity and two-sided unitality, each as an exact matrix identity."
    rep = report if report is not None else Report()
    n = alg.dim
    I = identity(n)
    m, u = alg.mult, alg.unit
    triple = [alg.labels[i] for i in range(n)]
    ok = rep.check_eq(prefix + "ALG_ASSOC", compose(m, tensor(m, I)), compose(m, tensor(I, m)))
    if not ok:
        e = rep.entries[-1]
        if e.witness and "input" in e.witness:
            idx = next(i for i, v in enumerate(e.witness["input"]) if v != "0")
            object.__setattr__(e, "note", "basis triple " + basis_label(idx, [n, n, n], triple))
    rep.check_eq(prefix + "ALG_UNIT_L", compose(m, tensor(u, I)), I)
    rep.check_eq(prefix + "ALG_UNIT_R", compose(m, tensor(I, u)), I)
    return rep
