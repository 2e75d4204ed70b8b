"""Command-line driver: axiom suites, cohomology, sewing checks, replay.

Exit codes: 0 all checks pass, 1 usage or parse error, 2 a mathematical
check failed.  Reports are JSON with exact "numerator/denominator" strings
and are byte-for-byte deterministic for identical inputs and parameters
(timing is null unless --timing is given, and is excluded from the
determinism contract).

The single environment variable VERTEXALG_MAX_WEIGHT caps every weight
bound; requests above the ceiling exit with a usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .declaration import (DeclarationError, builtin_tensor26_text,
                          parse_declaration)
from .scalars import parse_rational
from .suites import (brst_suite, gerstenhaber_suite, ghost_suite,
                     oracle_suite, sew_suite, tvoa_suite, twist_suite,
                     ghost_anticommutator_check)

DEFAULT_CEILING = 12


def _ceiling():
    raw = os.environ.get("VERTEXALG_MAX_WEIGHT")
    if raw is None:
        return DEFAULT_CEILING
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"VERTEXALG_MAX_WEIGHT must be an integer: {raw!r}")


def _digest(text):
    return hashlib.sha256(text.encode()).hexdigest()


def _report(command, parameters, checks, input_digest="", timing=None):
    return {
        "schema": "vertexalg-report/1",
        "tool": "vertexalg",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "input_digest": input_digest,
        "checks": checks,
        "all_pass": all(c["status"] in ("pass", "verified-up-to-bound")
                        for c in checks),
        "timing_seconds": timing,
    }


def _emit(report, out_path=None):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0 if report["all_pass"] else 2


def _weight_arg(value, ceiling):
    w = int(value)
    if w > ceiling:
        raise SystemExit(
            f"usage error: max weight {w} exceeds ceiling {ceiling} "
            "(override with VERTEXALG_MAX_WEIGHT)")
    return w


def cmd_check_ghost(args):
    ceiling = _ceiling()
    w = _weight_arg(args.max_weight, ceiling)
    t0 = time.monotonic()
    checks = ghost_suite(w, args.index_range)
    timing = round(time.monotonic() - t0, 3) if args.timing else None
    return _emit(_report("check-ghost",
                         {"max_weight": w, "index_range": args.index_range},
                         checks, timing=timing), args.output)


def cmd_check_brst(args):
    ceiling = _ceiling()
    w = _weight_arg(args.max_weight, ceiling)
    try:
        c = parse_rational(args.central_charge)
    except ValueError:
        raise SystemExit(f"usage error: bad central charge {args.central_charge!r}")
    t0 = time.monotonic()
    checks = brst_suite(c, w, expect_anomaly=args.expect_anomaly)
    if c == 26 and not args.expect_anomaly:
        checks += gerstenhaber_suite(min(w, 2))
    timing = round(time.monotonic() - t0, 3) if args.timing else None
    return _emit(_report("check-brst",
                         {"central_charge": args.central_charge,
                          "max_weight": w,
                          "expect_anomaly": args.expect_anomaly},
                         checks, timing=timing), args.output)


def cmd_check_tvoa(args):
    ceiling = _ceiling()
    w = _weight_arg(args.max_weight, ceiling)
    if args.builtin:
        if args.builtin != "tensor-26":
            raise SystemExit(f"usage error: unknown builtin {args.builtin!r}")
        text = builtin_tensor26_text()
        source = f"builtin:{args.builtin}"
    elif args.specfile:
        try:
            with open(args.specfile) as fh:
                text = fh.read()
        except OSError as exc:
            raise SystemExit(f"usage error: {exc}")
        source = args.specfile
    else:
        raise SystemExit("usage error: a spec file or --builtin is required")
    try:
        instance, _ = parse_declaration(text)
    except json.JSONDecodeError as exc:
        raise SystemExit(
            f"parse error in {source} at line {exc.lineno}, column "
            f"{exc.colno}: {exc.msg}")
    except DeclarationError as exc:
        raise SystemExit(f"parse error in {source}: {exc}")
    t0 = time.monotonic()
    checks = tvoa_suite(instance, w, args.index_range)
    timing = round(time.monotonic() - t0, 3) if args.timing else None
    return _emit(_report("check-tvoa",
                         {"source": source, "max_weight": w,
                          "index_range": args.index_range},
                         checks, input_digest=_digest(text), timing=timing),
                 args.output)


def cmd_twist_n2(args):
    ceiling = _ceiling()
    w = _weight_arg(args.max_weight, ceiling)
    raw = args.central_charge
    charge = raw if raw == "c" else parse_rational(raw)
    t0 = time.monotonic()
    checks = twist_suite(charge, max_weight=w, index_range=args.index_range)
    timing = round(time.monotonic() - t0, 3) if args.timing else None
    return _emit(_report("twist-n2",
                         {"central_charge": raw, "max_weight": w,
                          "index_range": args.index_range},
                         checks, timing=timing), args.output)


def cmd_sew(args):
    t0 = time.monotonic()
    checks = oracle_suite(args.order) + sew_suite(args.order, args.witt_range)
    timing = round(time.monotonic() - t0, 3) if args.timing else None
    return _emit(_report("sew",
                         {"order": args.order, "witt_range": args.witt_range},
                         checks, timing=timing), args.output)


REPLAY_KINDS = {
    "ghost-anticommutator":
        lambda ce: ghost_anticommutator_check(ce["i"], ce["j"],
                                              ce["monomial"]),
}


def cmd_replay(args):
    try:
        with open(args.report) as fh:
            report = json.load(fh)
    except OSError as exc:
        raise SystemExit(f"usage error: {exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit(f"parse error in {args.report}: {exc.msg}")
    replayed = []
    for check in report.get("checks", []):
        ce = check.get("counterexample")
        if check.get("status") != "fail" or not isinstance(ce, dict):
            continue
        kind = ce.get("kind")
        if kind in REPLAY_KINDS:
            still_holds = REPLAY_KINDS[kind](ce)
            replayed.append({"check": check["name"], "kind": kind,
                             "reproduced": not still_holds})
    out = {"schema": "vertexalg-replay/1", "report": args.report,
           "replayed": replayed,
           "all_reproduced": all(r["reproduced"] for r in replayed)}
    sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    if not replayed:
        return 0
    return 0 if out["all_reproduced"] else 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vertexalg",
        description="exact checks for topological vertex algebra structures")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="also write the report to a file")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock timing (breaks byte determinism)")

    p = sub.add_parser("check-ghost", help="ghost system identity suites")
    p.add_argument("--max-weight", type=int, default=8)
    p.add_argument("--index-range", type=int, default=8)
    common(p)
    p.set_defaults(fn=cmd_check_ghost)

    p = sub.add_parser("check-brst", help="BRST differential and cohomology")
    p.add_argument("--central-charge", default="26")
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--expect-anomaly", action="store_true",
                   help="pass when the delta^2 anomaly is found (c != 26)")
    common(p)
    p.set_defaults(fn=cmd_check_brst)

    p = sub.add_parser("check-tvoa", help="axiom suite on a declared instance")
    p.add_argument("specfile", nargs="?")
    p.add_argument("--builtin", help="built-in instance name (tensor-26)")
    p.add_argument("--max-weight", type=int, default=5)
    p.add_argument("--index-range", type=int, default=4)
    common(p)
    p.set_defaults(fn=cmd_check_tvoa)

    p = sub.add_parser("twist-n2", help="N=2 twist into the axiom suite")
    p.add_argument("--central-charge", default="9",
                   help="rational value, or 'c' for symbolic")
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--index-range", type=int, default=3)
    common(p)
    p.set_defaults(fn=cmd_twist_n2)

    p = sub.add_parser("sew", help="moduli-space sewing calculus checks")
    p.add_argument("--order", type=int, default=5,
                   help="truncation degree in the sequence variables")
    p.add_argument("--witt-range", type=int, default=3)
    common(p)
    p.set_defaults(fn=cmd_sew)

    p = sub.add_parser("replay", help="re-evaluate report counterexamples")
    p.add_argument("report")
    p.set_defaults(fn=cmd_replay)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the contract reserves 2 for
        # mathematical failures, so remap
        if exc.code not in (0, None):
            raise SystemExit(1)
        raise
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except Exception as exc:  # noqa: BLE001 - surface as a usage error
        sys.stderr.write(f"error: {exc}\n")
        return 1


def console_main():
    code = main()
    raise SystemExit(code)


if __name__ == "__main__":
    raise SystemExit(main())
