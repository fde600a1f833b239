"""Structured pass/fail ledgers for identity verification.

Every checked identity becomes one entry with a stable key.  A failing
entry always carries a witness: a concrete input vector together with
the values both sides take on it, so the nonzero residual can be
reproduced by hand or by an independent brute-force evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import AntilinMap, LinMap, Subspace
from .scalars import Q

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"


@dataclass(frozen=True)
class Entry:
    id: str
    status: str
    ctx: str = ""
    name: str = ""
    witness: dict | None = None
    note: str = ""

    def as_dict(self) -> dict:
        d = {"id": self.id, "status": self.status}
        if self.ctx:
            d["ctx"] = self.ctx
        if self.name:
            d["name"] = self.name
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    ctx: str = ""
    entries: list = field(default_factory=list)

    # -- assembly ----------------------------------------------------

    def add(self, entry: Entry):
        self.entries.append(entry)

    def ok(self, key: str, name: str = "", note: str = ""):
        self.add(Entry(key, PASS, self.ctx, name, None, note))

    def fail(self, key: str, witness: dict, name: str = "", note: str = ""):
        self.add(Entry(key, FAIL, self.ctx, name, witness, note))

    def skip(self, key: str, name: str = "", note: str = ""):
        self.add(Entry(key, SKIP, self.ctx, name, None, note))

    def extend(self, other: "Report"):
        self.entries.extend(other.entries)

    def add_skip_section(self, ctx: str):
        self.add(Entry("SECTION_SKIPPED", SKIP, ctx, note="group record invalid; section not evaluated"))

    def sub(self, ctx: str) -> "Report":
        "A fresh report whose entries carry the given context label."
        return Report(ctx=ctx)

    # -- queries -----------------------------------------------------

    @property
    def ok_all(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if e.status == FAIL]

    def passed(self, key: str) -> bool:
        found = [e for e in self.entries if e.id == key]
        return bool(found) and all(e.status == PASS for e in found)

    def ids(self) -> list:
        return [e.id for e in self.entries]

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def __getitem__(self, key: str) -> Entry:
        for e in self.entries:
            if e.id == key:
                return e
        raise KeyError(key)

    # -- checks ------------------------------------------------------

    def check_eq(self, key: str, lhs, rhs, name: str = "", note: str = ""):
        "Exact equality of two maps (linear or antilinear), as one entry."
        if isinstance(lhs, AntilinMap) != isinstance(rhs, AntilinMap):
            self.fail(key, {"reason": "linear/antilinear type mismatch"}, name, note)
            return False
        a = lhs.lin if isinstance(lhs, AntilinMap) else lhs
        b = rhs.lin if isinstance(rhs, AntilinMap) else rhs
        if (a.cod, a.dom) != (b.cod, b.dom):
            self.fail(key, {"reason": f"shape mismatch {a.cod}x{a.dom} vs {b.cod}x{b.dom}"}, name, note)
            return False
        diff = a - b
        if diff.is_zero():
            self.ok(key, name, note)
            return True
        j = diff.first_nonzero_col()
        basis = [Q(1) if t == j else Q(0) for t in range(a.dom)]
        self.fail(key, _vector_witness(basis, a.col(j), b.col(j)), name, note)
        return False

    def check_true(self, key: str, value: bool, witness: dict | None = None, name: str = "", note: str = ""):
        if value:
            self.ok(key, name, note)
        else:
            self.fail(key, witness or {"reason": "condition false"}, name, note)
        return value

    def check_invertible(self, key: str, f: LinMap, name: str = "", note: str = ""):
        if f.is_invertible():
            self.ok(key, name, note)
            return True
        witness: dict = {"reason": "not invertible"}
        if f.dom != f.cod:
            witness["reason"] = f"not square: {f.cod}x{f.dom}"
        else:
            ker = f.kernel()
            if ker.dim:
                witness["kernel_vector"] = [str(x) for x in ker.basis[0]]
        self.fail(key, witness, name, note)
        return False

    def check_surjective(self, key: str, f: LinMap, name: str = "", note: str = ""):
        if f.is_surjective():
            self.ok(key, name, note)
            return True
        self.fail(key, {"reason": f"rank {f.rank()} < {f.cod}"}, name, note)
        return False

    def check_space_le(self, key: str, small: Subspace, big: Subspace, name: str = "", note: str = ""):
        "small is contained in big, with an offending basis vector on failure."
        for v in small.basis:
            if not big.contains(v):
                self.fail(key, {"vector_outside": [str(x) for x in v]}, name, note)
                return False
        self.ok(key, name, note)
        return True

    def check_space_eq(self, key: str, left: Subspace, right: Subspace, name: str = "", note: str = ""):
        if left == right:
            self.ok(key, name, note)
            return True
        for v in left.basis:
            if not right.contains(v):
                self.fail(key, {"vector_in_left_only": [str(x) for x in v]}, name, note)
                return False
        for v in right.basis:
            if not left.contains(v):
                self.fail(key, {"vector_in_right_only": [str(x) for x in v]}, name, note)
                return False
        self.fail(key, {"reason": "subspace mismatch"}, name, note)
        return False


def _vector_witness(vec, lhs_val, rhs_val) -> dict:
    return {
        "input": [str(x) for x in vec],
        "lhs": [str(x) for x in lhs_val],
        "rhs": [str(x) for x in rhs_val],
    }


def basis_label(index: int, dims, labels=None) -> str:
    "Decode a composite tensor index into a factor label tuple string."
    parts = []
    rem = index
    for d in reversed(dims):
        parts.append(rem % d)
        rem //= d
    parts.reverse()
    if labels is not None:
        named = [labels[p] for p in parts]
        return "(" + ", ".join(named) + ")"
    return "(" + ", ".join(str(p) for p in parts) + ")"
