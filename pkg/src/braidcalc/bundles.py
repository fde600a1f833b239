"""Bundle file format: groups, calculi and ideals as exact JSON.

Matrices are row-major arrays of exact scalar strings ("a/b" or
"a/b+c/d i"); floats are rejected outright.  Emission is canonical
(sorted keys, reduced scalars, fixed indentation), so parse -> emit is
idempotent byte for byte and reports can be keyed by a digest of the
canonical text.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .algebras import FiniteDimAlgebra
from .calculi import FirstOrderCalculus
from .groups import MultiBraidedGroup
from .linalg import AntilinMap, LinMap
from .reporting import Report
from .scalars import Q, ScalarParseError

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class DimensionError(ParseError):
    pass


@dataclass
class Bundle:
    group: MultiBraidedGroup
    star: AntilinMap | None = None
    calculi: list = field(default_factory=list)
    ideals: list = field(default_factory=list)  # (name, list of coordinate vectors)


def _reject_float(text: str):
    raise ParseError("<number>", f"floating-point literal {text!r} is forbidden; use exact 'a/b' strings")


def _parse_scalar(value, path: str) -> Q:
    if isinstance(value, bool):
        raise ParseError(path, "booleans are not scalars")
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, str):
        try:
            return Q.parse(value)
        except ScalarParseError as exc:
            raise ParseError(path, str(exc)) from exc
    raise ParseError(path, f"expected exact scalar string, got {type(value).__name__}")


def _parse_matrix(value, cod: int, dom: int, path: str) -> LinMap:
    if not isinstance(value, list):
        raise ParseError(path, "expected a list of rows")
    if len(value) != cod:
        raise DimensionError(path, f"expected {cod} rows, got {len(value)}")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dom:
            raise DimensionError(f"{path}[{i}]", f"expected {dom} entries")
        rows.append([_parse_scalar(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return LinMap.from_entries(cod, dom, rows)


def _matrix_json(f: LinMap) -> list:
    return [[str(f.entry(i, j)) for j in range(f.dom)] for i in range(f.cod)]


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ParseError(path, f"missing required field {key!r}")
    return obj[key]


def parse_bundle(text: str) -> Bundle:
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError("<document>", f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("<document>", "bundle must be a JSON object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError("format_version", f"unsupported version {version}")
    gobj = _require(data, "group", "<document>")
    dim = _require(gobj, "dim", "group")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("group.dim", "dim must be a positive integer")
    labels = gobj.get("basis_labels", [f"e{i}" for i in range(dim)])
    if len(labels) != dim or not all(isinstance(x, str) for x in labels):
        raise ParseError("group.basis_labels", f"expected {dim} strings")
    alg = FiniteDimAlgebra(
        dim,
        _parse_matrix(_require(gobj, "unit", "group"), dim, 1, "group.unit"),
        _parse_matrix(_require(gobj, "mult", "group"), dim, dim * dim, "group.mult"),
        tuple(labels),
    )
    group = MultiBraidedGroup(
        alg,
        _parse_matrix(_require(gobj, "coproduct", "group"), dim * dim, dim, "group.coproduct"),
        _parse_matrix(_require(gobj, "counit", "group"), 1, dim, "group.counit"),
        _parse_matrix(_require(gobj, "antipode", "group"), dim, dim, "group.antipode"),
        _parse_matrix(_require(gobj, "sigma", "group"), dim * dim, dim * dim, "group.sigma"),
    )
    star = None
    if "star" in gobj:
        sobj = gobj["star"]
        if not isinstance(sobj, dict) or sobj.get("antilinear") is not True:
            raise ParseError("group.star", "star must be an object with antilinear: true")
        star = AntilinMap(_parse_matrix(_require(sobj, "matrix", "group.star"), dim, dim, "group.star.matrix"))
    calculi = []
    for k, cobj in enumerate(data.get("calculi", [])):
        path = f"calculi[{k}]"
        name = cobj.get("name", f"calculus{k}")
        gdim = _require(cobj, "gdim", path)
        if not isinstance(gdim, int) or gdim < 0:
            raise ParseError(f"{path}.gdim", "gdim must be a nonnegative integer")
        calculi.append(
            FirstOrderCalculus(
                group,
                gdim,
                _parse_matrix(_require(cobj, "mgl", path), gdim, dim * gdim, f"{path}.mgl"),
                _parse_matrix(_require(cobj, "mgr", path), gdim, gdim * dim, f"{path}.mgr"),
                _parse_matrix(_require(cobj, "d", path), gdim, dim, f"{path}.d"),
                name=name,
            )
        )
    ideals = []
    for k, iobj in enumerate(data.get("ideals", [])):
        path = f"ideals[{k}]"
        name = _require(iobj, "name", path)
        gens = _require(iobj, "generators", path)
        if not isinstance(gens, list):
            raise ParseError(f"{path}.generators", "expected a list of coordinate vectors")
        vectors = []
        for t, vec in enumerate(gens):
            if not isinstance(vec, list) or len(vec) != dim:
                raise DimensionError(f"{path}.generators[{t}]", f"expected {dim} coordinates")
            vectors.append([_parse_scalar(x, f"{path}.generators[{t}][{j}]") for j, x in enumerate(vec)])
        ideals.append((name, vectors))
    return Bundle(group, star, calculi, ideals)


def emit_bundle(b: Bundle) -> str:
    g = b.group
    gobj = {
        "dim": g.dim,
        "basis_labels": list(g.alg.labels),
        "unit": _matrix_json(g.unit),
        "mult": _matrix_json(g.mult),
        "coproduct": _matrix_json(g.coproduct),
        "counit": _matrix_json(g.counit),
        "antipode": _matrix_json(g.antipode),
        "sigma": _matrix_json(g.braiding),
    }
    if b.star is not None:
        gobj["star"] = {"antilinear": True, "matrix": _matrix_json(b.star.lin)}
    data = {"format_version": FORMAT_VERSION, "group": gobj}
    if b.calculi:
        data["calculi"] = [
            {
                "name": c.name,
                "gdim": c.gdim,
                "mgl": _matrix_json(c.mgl),
                "mgr": _matrix_json(c.mgr),
                "d": _matrix_json(c.d),
            }
            for c in b.calculi
        ]
    if b.ideals:
        data["ideals"] = [
            {"name": name, "generators": [[str(x) for x in vec] for vec in vectors]}
            for name, vectors in b.ideals
        ]
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def bundle_digest(b: Bundle) -> str:
    return "sha256:" + hashlib.sha256(emit_bundle(b).encode()).hexdigest()


def emit_report(report: Report, engine_version: str, input_digest: str = "") -> str:
    data = {
        "engine": {"name": "braidcalc", "version": engine_version},
        "input_digest": input_digest,
        "entries": [e.as_dict() for e in report.entries],
        "summary": report.counts(),
    }
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
