"""Command-line front end.

Exit codes: 0 success, 2 unreadable input or schema error, 3 the fan fails
validation, 4 internal verification failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import BraidFanError, InternalVerificationFailure, InvalidFan, NotSmooth
from .factorize import factor_to_braid, strong_factorize
from .fan import MAX_N_ENV, braid_fan
from .jsonio import SchemaError, dumps, load_fan, write_json
from .oracle import enumerate_coarsenings, validate_fan

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_INVALID = 3
EXIT_DEFECT = 4


def _emit(payload, output: str | None) -> None:
    if output:
        write_json(output, payload)
    else:
        sys.stdout.write(dumps(payload))


def cmd_validate(args) -> int:
    report = validate_fan(load_fan(args.fan))
    sys.stdout.write(dumps(report.to_json()))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_factor(args) -> int:
    trace = factor_to_braid(load_fan(args.fan), verify=args.verify)
    print(f"steps: {len(trace)}")
    for k, step in enumerate(trace.steps, 1):
        print(f"  {k}: added {step.new_ray} ({step.center.orientation} at {list(step.center.b)})")
    if args.output:
        write_json(args.output, trace.to_json(args.verbose))
    return EXIT_OK


def cmd_strong_factor(args) -> int:
    result = strong_factorize(load_fan(args.a), load_fan(args.b), verify=args.verify)
    _emit(result.to_json(args.verbose), args.output)
    return EXIT_OK


def cmd_braid(args) -> int:
    _emit(braid_fan(args.n).to_json(), args.output)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    fan = load_fan(args.fan)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for k, cone in enumerate(fan.maximal):
        (out / f"cone_{k:03d}.dot").write_text(cone.label.to_dot(f"cone_{k:03d}"), encoding="utf-8")
    print(f"wrote {len(fan.maximal)} DOT files to {out}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    fans = enumerate_coarsenings(args.n, time_budget=args.time_budget)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    width = max(3, len(str(len(fans))))
    for k, fan in enumerate(fans):
        write_json(out / f"fan_{k:0{width}d}.json", fan.to_json())
    print(f"wrote {len(fans)} fans to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidfan",
        description="Smooth coarsenings of the braid arrangement fan and their factorization.",
    )
    parser.add_argument("--max-n", type=int, help=f"raise the bound on n (also ${MAX_N_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a fan file")
    p.add_argument("fan")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("factor", help="subdivide a fan down to the braid fan")
    p.add_argument("fan")
    p.add_argument("--verify", action="store_true", help="recheck every step with the oracle")
    p.add_argument("-o", "--output", help="write the trace JSON here")
    p.add_argument("--verbose", action="store_true", help="include intermediate fans in the trace")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("strong-factor", help="factor two fans to their common refinement")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("-o", "--output")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_strong_factor)

    p = sub.add_parser("braid", help="emit the braid fan B(n)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("export-dot", help="write one Hasse diagram per maximal cone")
    p.add_argument("fan")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("enumerate", help="write every complete smooth coarsening of B(n), n <= 4")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--time-budget", type=float, help="give up after this many seconds")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_n is not None:
        os.environ[MAX_N_ENV] = str(args.max_n)
    try:
        return args.func(args)
    except InternalVerificationFailure as exc:
        print(f"error: internal verification failure: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except (InvalidFan, NotSmooth) as exc:
        print(f"error: invalid fan: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except BraidFanError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
