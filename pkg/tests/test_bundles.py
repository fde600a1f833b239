import json
from pathlib import Path

import pytest

from braidcalc.bundles import (
    DimensionError,
    ParseError,
    bundle_digest,
    emit_bundle,
    emit_report,
    parse_bundle,
)
from braidcalc.reporting import Report

BUNDLE_DIR = Path(__file__).resolve().parent.parent / "bundles"


def test_shipped_bundles_parse():
    for name in ("fix_1", "fix_k2", "fix_gr", "fix_k4", "fix_a4"):
        b = parse_bundle((BUNDLE_DIR / f"{name}.json").read_text())
        assert b.group.dim >= 1


def test_k2_bundle_contents():
    b = parse_bundle((BUNDLE_DIR / "fix_k2.json").read_text())
    assert b.group.dim == 2
    assert b.group.alg.labels == ("d_e", "d_g")
    assert [c.name for c in b.calculi] == ["universal", "zero"]
    assert [name for name, _ in b.ideals] == ["zero", "keps"]
    assert b.star is not None


def test_roundtrip_is_canonical():
    for name in ("fix_1", "fix_k2", "fix_gr", "fix_k4", "fix_a4"):
        text = (BUNDLE_DIR / f"{name}.json").read_text()
        once = emit_bundle(parse_bundle(text))
        twice = emit_bundle(parse_bundle(once))
        assert once == twice
        assert once == text  # shipped files are already canonical


def test_non_canonical_scalars_normalize(k2):
    text = (BUNDLE_DIR / "fix_k2.json").read_text()
    tweaked = text.replace('"1"', '"2/2"', 1)
    assert emit_bundle(parse_bundle(tweaked)) == text


def test_floats_rejected():
    text = (BUNDLE_DIR / "fix_k2.json").read_text()
    broken = text.replace('"1"', "0.5", 1)
    with pytest.raises(ParseError):
        parse_bundle(broken)


def test_float_strings_rejected():
    text = (BUNDLE_DIR / "fix_k2.json").read_text()
    broken = text.replace('"1"', '"0.5"', 1)
    with pytest.raises(ParseError) as err:
        parse_bundle(broken)
    assert "0.5" in str(err.value)


def test_dimension_error_has_path():
    data = json.loads((BUNDLE_DIR / "fix_k2.json").read_text())
    data["group"]["counit"] = [["1"]]
    with pytest.raises(DimensionError) as err:
        parse_bundle(json.dumps(data))
    assert "counit" in str(err.value)


def test_missing_field_reported():
    data = json.loads((BUNDLE_DIR / "fix_k2.json").read_text())
    del data["group"]["sigma"]
    with pytest.raises(ParseError) as err:
        parse_bundle(json.dumps(data))
    assert "sigma" in str(err.value)


def test_digest_stability():
    b1 = parse_bundle((BUNDLE_DIR / "fix_gr.json").read_text())
    b2 = parse_bundle((BUNDLE_DIR / "fix_gr.json").read_text())
    assert bundle_digest(b1) == bundle_digest(b2)
    assert bundle_digest(b1).startswith("sha256:")


def test_emit_report_shape():
    rep = Report(ctx="group")
    rep.ok("SOME_KEY", note="fine")
    rep.fail("OTHER_KEY", {"input": ["1"], "lhs": ["2"], "rhs": ["1"]})
    text = emit_report(rep, "0.1.0", "sha256:abc")
    data = json.loads(text)
    assert data["engine"] == {"name": "braidcalc", "version": "0.1.0"}
    assert data["summary"] == {"pass": 1, "fail": 1, "skipped": 0}
    assert data["entries"][1]["witness"]["lhs"] == ["2"]


def test_bundle_star_flag_required(k2):
    data = json.loads((BUNDLE_DIR / "fix_k2.json").read_text())
    data["group"]["star"]["antilinear"] = False
    with pytest.raises(ParseError):
        parse_bundle(json.dumps(data))


def test_zero_dim_calculus_roundtrip(gr):
    b = parse_bundle((BUNDLE_DIR / "fix_gr.json").read_text())
    zero = [c for c in b.calculi if c.name == "zero"][0]
    assert zero.gdim == 0
    assert emit_bundle(parse_bundle(emit_bundle(b))) == emit_bundle(b)
