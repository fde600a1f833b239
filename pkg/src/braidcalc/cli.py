"""Command-line surface: batch verification over bundle files.

Exit codes: 0 all checks pass, 1 verification failures, 2 input errors.
A machine-readable report is always written for outcomes 0 and 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bundles import Bundle, ParseError, bundle_digest, emit_bundle, emit_report, parse_bundle
from .covariance import IdealInvalid
from .linalg import LinMap
from .reporting import Report
from .verify import build_calculus, complete_system, derive_map, run_covariance_mode, verify_bundle


def _load(path: str) -> Bundle:
    return parse_bundle(Path(path).read_text())


def _write_report(report: Report, bundle: Bundle, bundle_path: str, out: str | None):
    text = emit_report(report, __version__, bundle_digest(bundle))
    target = out if out is not None else bundle_path + ".report.json"
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)
    return target


def _summarize(report: Report, target: str):
    counts = report.counts()
    print(f"checked {len(report.entries)} entries: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped")
    for e in report.failures():
        print(f"  FAIL [{e.ctx}] {e.id}" + (f": {e.note}" if e.note else ""))
    if target != "-":
        print(f"report written to {target}")


def _matrix_json(f: LinMap) -> dict:
    return {
        "cod": f.cod,
        "dom": f.dom,
        "rows": [[str(f.entry(i, j)) for j in range(f.dom)] for i in range(f.cod)],
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="braidcalc", description=__doc__)
    parser.add_argument("--version", action="version", version=f"braidcalc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="full verification of a bundle")
    p_check.add_argument("bundle")
    p_check.add_argument("-o", "--output", default=None, help="report path ('-' for stdout)")
    p_check.add_argument("--range", type=int, default=2, dest="shift_range", help="shift window for the braid family")
    p_check.add_argument("--paranoid", action="store_true", help="recompute derived maps, bypassing caches")
    p_check.add_argument("--jobs", type=int, default=1, help="worker pool size over independent sections")

    p_derive = sub.add_parser("derive", help="emit a derived map as a matrix")
    p_derive.add_argument("bundle")
    p_derive.add_argument("--what", required=True, choices=["tau", "sigma-n", "a0", "kappa0", "ad"])
    p_derive.add_argument("-n", type=int, default=1, help="shift index for sigma-n")

    p_build = sub.add_parser("build-calculus", help="reconstruct a calculus from a named ideal")
    p_build.add_argument("bundle")
    p_build.add_argument("--ideal", required=True)
    p_build.add_argument("--side", choices=["left", "right"], default="left")
    p_build.add_argument("-o", "--output", required=True, help="output bundle path")
    p_build.add_argument("--report", default=None, help="construction report path")

    p_cov = sub.add_parser("covariance", help="targeted covariance decision")
    p_cov.add_argument("bundle")
    p_cov.add_argument("--mode", required=True, choices=["left", "right", "bi", "kappa", "star", "braided"])
    p_cov.add_argument("-o", "--output", default=None)
    p_cov.add_argument("--range", type=int, default=2, dest="shift_range")

    p_comp = sub.add_parser("complete-system", help="close the intrinsic braid pair under ternary operations")
    p_comp.add_argument("bundle")
    p_comp.add_argument("--max", type=int, default=64, dest="max_elems")

    args = parser.parse_args(argv)
    try:
        bundle = _load(args.bundle)
    except (ParseError, FileNotFoundError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "check":
            report = verify_bundle(bundle, args.shift_range, args.paranoid, args.jobs)
            target = _write_report(report, bundle, args.bundle, args.output)
            _summarize(report, target)
            return 0 if report.ok_all else 1
        if args.command == "derive":
            f = derive_map(bundle, args.what, args.n)
            print(json.dumps(_matrix_json(f), sort_keys=True, indent=2))
            return 0
        if args.command == "build-calculus":
            out_bundle, report = build_calculus(bundle, args.ideal, args.side)
            Path(args.output).write_text(emit_bundle(out_bundle))
            target = args.report if args.report is not None else args.output + ".report.json"
            Path(target).write_text(emit_report(report, __version__, bundle_digest(bundle)))
            print(f"bundle with calculus '{args.ideal}-{args.side}' written to {args.output}")
            if not report.ok_all:
                for e in report.failures():
                    print(f"  FAIL [{e.ctx}] {e.id}")
                return 1
            return 0
        if args.command == "covariance":
            report = run_covariance_mode(bundle, args.mode, args.shift_range)
            target = _write_report(report, bundle, args.bundle, args.output)
            _summarize(report, target)
            return 0 if report.ok_all else 1
        if args.command == "complete-system":
            completion = complete_system(bundle, args.max_elems)
            print(
                json.dumps(
                    {
                        "closed": not completion.truncated,
                        "size": len(completion.system.elements),
                        "elements": [_matrix_json(f) for f in completion.system.elements],
                    },
                    sort_keys=True,
                    indent=2,
                )
            )
            return 0
    except (ParseError, IdealInvalid, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
