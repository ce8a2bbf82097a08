"""Command line driver: ``klrverify run|dims|explain``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .cyclotomic import CyclotomicError
from .functors import VerificationError
from .runner import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, dims_table, run_config


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _text_summary(report: dict) -> str:
    lines = []
    for entry in report["cases"]:
        checks = entry.get("checks", {})
        marks = " ".join(f"{k}={v['status']}" for k, v in checks.items())
        lines.append(f"{entry['status'].upper():7} {entry['id']}  {marks}")
    s = report["summary"]
    lines.append(f"{s['total']} cases: {s['pass']} pass, {s['fail']} fail, "
                 f"{s['skip']} skip, {s['aborted']} aborted")
    return "\n".join(lines)


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    report, code = run_config(cfg, jobs=args.jobs, cap_seconds=args.cap_seconds,
                              flip_eta_sign=args.debug_flip_eta_sign)
    print(_text_summary(report))
    if args.json:
        Path(args.json).write_text(dump_json(report))
    return code


def cmd_dims(args) -> int:
    cfg = load_config(args.config)
    rows = dims_table(cfg)
    if args.json:
        print(dump_json(rows), end="")
        return EXIT_OK
    cols = ["beta", "i", "lambda_i", "dim_A", "dim_B", "E", "F", "EF", "FE"]
    table = [cols] + [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[k]) for row in table) for k in range(len(cols))]
    for row in table:
        print("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    return EXIT_OK


def cmd_explain(args) -> int:
    try:
        report = json.loads(Path(args.report).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read report: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for entry in report.get("cases", []):
        if entry.get("id") == args.case_id:
            break
    else:
        print(f"error: unknown case id {args.case_id!r}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"case {entry['id']}: {entry['status']}")
    if entry.get("witness"):
        print("witness:")
        print(dump_json(entry["witness"]), end="")
    for name, check in entry.get("checks", {}).items():
        cert = check.get("certificate")
        if cert is not None:
            print(f"{name} certificate:")
            if isinstance(cert, dict):
                for k, v in cert.items():
                    print(f"  {k}: {json.dumps(v, sort_keys=True)}")
            else:
                print(f"  {cert}")
        elif check["status"] == "pass":
            detail = {k: v for k, v in check.items() if k != "status"}
            print(f"{name}: {json.dumps(detail, sort_keys=True)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="klrverify", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the checks of a config")
    run.add_argument("config")
    run.add_argument("--json", metavar="PATH", help="write the JSON report here")
    run.add_argument("--jobs", type=int, default=1, help="cases run in parallel")
    run.add_argument("--cap-seconds", type=float, default=None,
                     help="abort (exit 3) when the run exceeds this wall time")
    run.add_argument("--debug-flip-eta-sign", action="store_true",
                     help="regression only: flip the sign of the lifted unit")
    run.set_defaults(func=cmd_run)
    dims = sub.add_parser("dims", help="print dimensions per case")
    dims.add_argument("config")
    dims.add_argument("--json", action="store_true", help="print JSON instead of a table")
    dims.set_defaults(func=cmd_dims)
    ex = sub.add_parser("explain", help="print the witness/certificate of a case")
    ex.add_argument("report")
    ex.add_argument("case_id")
    ex.set_defaults(func=cmd_explain)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (VerificationError, CyclotomicError) as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
