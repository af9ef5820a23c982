"""Command-line front end: verify campaigns, evaluate single instances,
print the normalization-coefficient table.

Exit codes: 0 pass, 1 inequality/check violation, 2 input error,
3 precondition error.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import _exact_n_squared, normalization_coeffs
from .errors import (
    DegenerateStateError,
    DomainError,
    EntboundError,
    PreconditionError,
    SchemaError,
)
from .report import VARIANTS, evaluate_variant, run_campaign
from .serialize import config_from_json, dumps, loads, spec_from_json
from .superposition import squared_norm, superposition_entanglement

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _fail(code: int, message: str) -> int:
    print(f"entbound: {message}", file=sys.stderr)
    return code


def _read_json(path: str, what: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{what}: cannot read {path}: {exc}") from exc
    return loads(text, what)


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        config = config_from_json(_read_json(args.config, "config"))
        if args.seed is not None:
            config = dataclasses.replace(config, seed=args.seed)
        if args.trials < 1:
            raise SchemaError(f"need at least one trial, got {args.trials}")
        summary = run_campaign(
            config, args.variant, args.trials, args.out, csv_path=args.csv
        )
    except (SchemaError, DomainError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except (PreconditionError, DegenerateStateError) as exc:
        return _fail(EXIT_PRECONDITION, f"precondition failed: {exc}")
    print(
        dumps(
            {
                "trials": summary.trials,
                "violations": summary.violations,
                "min_gap": summary.min_gap,
                "mean_gap": summary.mean_gap,
                "max_gap": summary.max_gap,
                "runtime_seconds": summary.runtime_seconds,
            }
        )
    )
    return EXIT_OK if summary.violations == 0 else EXIT_VIOLATION


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        spec = spec_from_json(_read_json(args.state_file, "state"))
        ev = evaluate_variant(spec, args.variant)
        out = {
            "variant": args.variant,
            "lhs": ev.lhs,
            "rhs": ev.rhs,
            "gap": ev.gap,
            "correction": ev.correction,
            "component_entanglements": list(ev.component_entanglements),
            "squared_norm": squared_norm(spec),
            "superposition_entanglement": superposition_entanglement(spec),
        }
        if ev.permutation is not None:
            out["permutation"] = list(ev.permutation)
        if ev.checks:
            out["checks"] = ev.checks
    except (SchemaError, DomainError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except (PreconditionError, DegenerateStateError) as exc:
        return _fail(EXIT_PRECONDITION, f"precondition failed: {exc}")
    print(dumps(out))
    return EXIT_OK


def cmd_coeffs(args: argparse.Namespace) -> int:
    try:
        coeffs = normalization_coeffs(args.n)
        exact = _exact_n_squared(args.n)
    except DomainError as exc:
        return _fail(EXIT_INPUT, str(exc))
    residual = abs(math.fsum(float(Fraction(1, v)) for v in exact) - 1.0)
    print(
        dumps(
            {
                "n": args.n,
                "n_squared": exact,
                "sum_inverse_residual": residual,
                "exact_mirror_present": coeffs.n_squared_exact is not None,
            }
        )
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entbound",
        description="Entanglement bounds for multi-component superpositions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a seeded verification campaign")
    p_verify.add_argument("--config", required=True, help="ensemble config JSON path")
    p_verify.add_argument("--trials", type=int, required=True, help="number of trials")
    p_verify.add_argument("--seed", type=int, default=None, help="override config seed")
    p_verify.add_argument("--variant", choices=VARIANTS, default="constrained")
    p_verify.add_argument("--out", required=True, help="JSON-lines output path")
    p_verify.add_argument("--csv", default=None, help="optional CSV export path")
    p_verify.set_defaults(func=cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate one serialized superposition")
    p_eval.add_argument("state_file", help="superposition spec JSON path")
    p_eval.add_argument("--variant", choices=VARIANTS, default="unconstrained")
    p_eval.set_defaults(func=cmd_eval)

    p_coeffs = sub.add_parser("coeffs", help="print the normalization table")
    p_coeffs.add_argument("n", type=int, help="number of components (2..16)")
    p_coeffs.set_defaults(func=cmd_coeffs)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EntboundError as exc:  # anything not mapped above is an input problem
        return _fail(EXIT_INPUT, str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
