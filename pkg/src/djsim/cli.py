"""Command-line interface with deterministic text and JSON reports.

Exit codes: 0 when every reported check passes, 1 when some check did not
pass (on a correct build that only happens when a requested cross-check
cannot certify, e.g. a coarse --grid-step), 2 on usage or precondition
errors. JSON mode emits a single document with top-level keys
{command, inputs, results, pass}, serialized with sorted keys so that
parse-then-reserialize is byte identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .classical import OneBitFunction, min_classical_queries
from .protocol import DJOutcome, InvalidAngle, prepare_input, run
from .quantum import ORACLE_MATRICES, kickback_error, oracle_matrix
from .solver import (
    InvalidStep,
    SOLUTION_TOL,
    grid_agreement,
    grid_clusters,
    identification_infeasibility,
    nearest_solution_distance,
    real_case_analysis,
    residuals,
    solve_real_cases,
)


class UsageError(Exception):
    """Bad flag values that argparse's types cannot catch."""


@dataclass(frozen=True)
class VerificationReport:
    """Everything the verify command checks; passed iff every piece holds."""

    theta: float
    outcomes: tuple[tuple[OneBitFunction, DJOutcome], ...]
    verdicts_ok: bool
    kickback_max_error: float
    kickback_ok: bool
    involution_ok: bool
    unitarity_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.verdicts_ok
            and self.kickback_ok
            and self.involution_ok
            and self.unitarity_ok
        )


def verification_report(theta: float) -> VerificationReport:
    """Run the protocol against all four oracles and the matrix-level checks."""
    prepared = prepare_input(theta)
    outcomes = tuple((f, run(f, prepared)) for f in OneBitFunction)
    verdicts_ok = all(
        outcome.verdict == f.truth_class and outcome.oracle_calls == 1
        for f, outcome in outcomes
    )
    kickback_max = max(kickback_error(f, x) for f in OneBitFunction for x in (0, 1))
    identity = np.eye(4, dtype=int)
    involution_ok = all(
        (ORACLE_MATRICES[f] @ ORACLE_MATRICES[f] == identity).all()
        for f in OneBitFunction
    )
    unitarity_ok = all(
        (ORACLE_MATRICES[f] @ ORACLE_MATRICES[f].T == identity).all()
        for f in OneBitFunction
    )
    return VerificationReport(
        theta=theta,
        outcomes=outcomes,
        verdicts_ok=verdicts_ok,
        kickback_max_error=kickback_max,
        kickback_ok=kickback_max <= 1e-12,
        involution_ok=involution_ok,
        unitarity_ok=unitarity_ok,
    )


def fmt(x: Any) -> str:
    """Numbers for text mode: integers exactly, floats to 12 significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.12g}"


def fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return fmt(z.real)
    return f"{z.real:.12g}{z.imag:+.12g}i"


def jcomplex(z: complex) -> list[float]:
    return [z.real, z.imag]


def _amps_text(amplitudes: Sequence[complex]) -> str:
    return " ".join(fmt_complex(complex(a)) for a in amplitudes)


def _amps_json(amplitudes: Sequence[complex]) -> list[list[float]]:
    return [jcomplex(complex(a)) for a in amplitudes]


def _pattern_text(pattern: Sequence[int]) -> str:
    marks = {1: "+", -1: "-", 0: "0"}
    return "(" + ",".join(marks[p] for p in pattern) + ")"


# ---------------------------------------------------------------------------
# Command handlers: each returns (document, text lines)
# ---------------------------------------------------------------------------

def cmd_matrices(args: argparse.Namespace) -> tuple[dict, list[str]]:
    entries = []
    lines = []
    for f in OneBitFunction:
        om = oracle_matrix(f)
        rows = [[int(v) for v in row] for row in om.matrix]
        entries.append(
            {"function": f.name, "class": f.truth_class.value, "rows": rows}
        )
        lines.append(f"oracle {f.name} ({f.truth_class.value}):")
        lines.extend("  " + " ".join(str(v) for v in row) for row in rows)
    doc = {
        "command": "matrices",
        "inputs": {},
        "results": {"matrices": entries},
        "pass": True,
    }
    lines.append("pass: true")
    return doc, lines


def cmd_derive(args: argparse.Namespace) -> tuple[dict, list[str]]:
    solutions = solve_real_cases()
    cases = real_case_analysis()
    ok = all(s.max_residual <= SOLUTION_TOL for s in solutions)

    solution_entries = []
    lines = ["analytic solutions:"]
    for s in solutions:
        r = residuals(s.state)
        solution_entries.append(
            {
                "case": s.case_label.value,
                "amplitudes": _amps_json(s.state.amplitudes),
                "residuals": {
                    "first": jcomplex(r.first),
                    "second": jcomplex(r.second),
                    "norm": r.norm,
                },
                "max_residual": s.max_residual,
            }
        )
        lines.append(f"  {s.case_label.value}: amplitudes {_amps_text(s.state.amplitudes)}")
        lines.append(
            f"    residuals: first {fmt_complex(r.first)} second {fmt_complex(r.second)}"
            f" norm {fmt(r.norm)} max {fmt(s.max_residual)}"
        )

    case_entries = []
    lines.append("case tree:")
    for case in cases:
        case_entries.append(
            {
                "case": case.label.value,
                "c1_minus_c2": case.c1_minus_c2,
                "c3_minus_c4": case.c3_minus_c4,
                "amplitudes": _amps_json([float(a) for a in case.amplitudes]),
                "duplicate_of": case.duplicate_of.value if case.duplicate_of else None,
            }
        )
        tail = (
            f" duplicate of {case.duplicate_of.value} (overall sign)"
            if case.duplicate_of
            else ""
        )
        offs = f"c1 = c2 {case.c1_minus_c2:+d}, c3 = c4 {case.c3_minus_c4:+d}"
        amps = _amps_text([float(a) for a in case.amplitudes])
        lines.append(f"  {case.label.value}: {offs} -> state {amps}{tail}")

    results: dict[str, Any] = {
        "solutions": solution_entries,
        "case_tree": case_entries,
    }

    if args.grid_step is not None:
        clusters = grid_clusters(args.grid_step)
        agreement = grid_agreement(clusters, solutions, tol=args.grid_step)
        cluster_entries = []
        lines.append(f"grid search (step {fmt(args.grid_step)}):")
        for cluster in clusters:
            distance, label, sign = nearest_solution_distance(
                cluster.representative, solutions
            )
            cluster_entries.append(
                {
                    "sign_pattern": list(cluster.sign_pattern),
                    "size": cluster.size,
                    "representative": _amps_json(cluster.representative.amplitudes),
                    "max_residual": cluster.max_residual,
                    "nearest_solution": label.value,
                    "nearest_sign": sign,
                    "linf_distance": distance,
                }
            )
            lines.append(
                f"  cluster {_pattern_text(cluster.sign_pattern)}: size {cluster.size},"
                f" representative {_amps_text(cluster.representative.amplitudes)},"
                f" max residual {fmt(cluster.max_residual)},"
                f" distance {fmt(distance)} to {label.value} ({'+' if sign > 0 else '-'})"
            )
        results["grid"] = {
            "step": args.grid_step,
            "clusters": cluster_entries,
            "agreement": agreement,
        }
        lines.append(f"  agreement: {fmt(agreement)}")
        ok = ok and agreement

    doc = {
        "command": "derive",
        "inputs": {"grid_step": args.grid_step},
        "results": results,
        "pass": ok,
    }
    lines.append(f"pass: {fmt(ok)}")
    return doc, lines


def cmd_verify(args: argparse.Namespace) -> tuple[dict, list[str]]:
    report = verification_report(args.theta)
    lines = [f"theta: {fmt(args.theta)}"]

    oracle_entries = []
    for f, outcome in report.outcomes:
        expected = f.truth_class
        this_ok = outcome.verdict == expected and outcome.oracle_calls == 1
        oracle_entries.append(
            {
                "function": f.name,
                "projection_magnitude": outcome.projection_magnitude,
                "verdict": outcome.verdict.value,
                "oracle_calls": outcome.oracle_calls,
                "expected": expected.value,
                "ok": this_ok,
            }
        )
        lines.append(
            f"oracle {f.name}: projection {fmt(outcome.projection_magnitude)},"
            f" verdict {outcome.verdict.value}, oracle calls {outcome.oracle_calls},"
            f" expected {expected.value}: {'ok' if this_ok else 'MISMATCH'}"
        )

    lines.append(f"kickback max error: {fmt(report.kickback_max_error)}")
    lines.append(f"involution exact: {fmt(report.involution_ok)}")
    lines.append(f"unitarity exact: {fmt(report.unitarity_ok)}")
    lines.append(f"pass: {fmt(report.passed)}")

    doc = {
        "command": "verify",
        "inputs": {"theta": args.theta},
        "results": {
            "oracles": oracle_entries,
            "kickback_max_error": report.kickback_max_error,
            "kickback_ok": report.kickback_ok,
            "involution_ok": report.involution_ok,
            "unitarity_ok": report.unitarity_ok,
        },
        "pass": report.passed,
    }
    return doc, lines


def cmd_classical(args: argparse.Namespace) -> tuple[dict, list[str]]:
    report = min_classical_queries()
    ok = report.lower_bound == 2 and report.two_query_score == 4

    lines = [
        f"lower bound: {report.lower_bound}",
        f"strategy space: {report.strategy_space}",
        "single-query failures:",
    ]
    failure_entries = []
    for failure in report.failures:
        s = failure.strategy
        decision = {"0": s.decision[0].value, "1": s.decision[1].value}
        failure_entries.append(
            {
                "query": [s.query.x, s.query.y],
                "decision": decision,
                "misclassified": failure.misclassified.name,
                "observed": failure.observed,
                "verdict": failure.verdict.value,
                "truth": failure.truth.value,
                "consistent": [f.name for f in failure.consistent],
            }
        )
        consistent = ", ".join(f.name for f in failure.consistent)
        lines.append(
            f"  query ({s.query.x},{s.query.y})"
            f" decide 0->{s.decision[0].value} 1->{s.decision[1].value}:"
            f" misclassifies {failure.misclassified.name}"
            f" (observed {failure.observed}, said {failure.verdict.value},"
            f" is {failure.truth.value}; consistent: {consistent})"
        )

    q1, q2 = report.two_query_queries
    lines.append(
        f"two-query strategy: query ({q1.x},{q1.y}) then ({q2.x},{q2.y}),"
        " XOR the observed target bits, Balanced iff 1"
    )
    two_query_entries = []
    for result in report.two_query_results:
        two_query_entries.append(
            {
                "function": result.function.name,
                "observed": [result.first_observed, result.second_observed],
                "verdict": result.verdict.value,
                "correct": result.correct,
            }
        )
        status = "correct" if result.correct else "WRONG"
        lines.append(
            f"  {result.function.name}: observed {result.first_observed},{result.second_observed}"
            f" -> {result.verdict.value} ({status})"
        )
    lines.append(f"  score: {report.two_query_score}/4")
    lines.append(f"pass: {fmt(ok)}")

    doc = {
        "command": "classical",
        "inputs": {},
        "results": {
            "lower_bound": report.lower_bound,
            "strategy_space": report.strategy_space,
            "single_query_failures": failure_entries,
            "two_query": {
                "queries": [[q1.x, q1.y], [q2.x, q2.y]],
                "results": two_query_entries,
                "score": report.two_query_score,
            },
        },
        "pass": ok,
    }
    return doc, lines


def cmd_impossible(args: argparse.Namespace) -> tuple[dict, list[str]]:
    if args.samples < 1:
        raise UsageError(f"--samples must be at least 1, got {args.samples}")
    report = identification_infeasibility(samples=args.samples, seed=args.seed)
    ok = report.identity_ok and report.sweep_ok

    lines = [
        f"identity check: {report.identity_samples} samples"
        f" (seed {report.identity_seed}), max error {fmt(report.identity_max_error)}:"
        f" {'ok' if report.identity_ok else 'FAILED'}",
        f"forced pairing sum: {fmt(report.forced_pairing_sum)}"
        f" (exact identification requires {fmt(report.required_pairing_sum)})",
        "theta family (first/second vanish, fifth keeps magnitude 1):",
    ]
    theta_entries = []
    for check in report.theta_family:
        theta_entries.append(
            {
                "theta": check.theta,
                "first_abs": check.first_abs,
                "second_abs": check.second_abs,
                "fifth_abs": check.fifth_abs,
            }
        )
        lines.append(
            f"  theta {fmt(check.theta)}: |first| {fmt(check.first_abs)},"
            f" |second| {fmt(check.second_abs)}, |fifth| {fmt(check.fifth_abs)}"
        )
    lines.append(
        f"random sweep: {report.sweep_samples} samples (seed {report.sweep_seed}),"
        f" min joint violation {fmt(report.min_joint_violation)}:"
        f" {'ok' if report.sweep_ok else 'FAILED'}"
    )
    lines.append(f"pass: {fmt(ok)}")

    doc = {
        "command": "impossible",
        "inputs": {"samples": args.samples, "seed": args.seed},
        "results": {
            "identity": {
                "samples": report.identity_samples,
                "seed": report.identity_seed,
                "max_error": report.identity_max_error,
                "ok": report.identity_ok,
            },
            "forced_pairing_sum": report.forced_pairing_sum,
            "required_pairing_sum": report.required_pairing_sum,
            "theta_family": theta_entries,
            "sweep": {
                "samples": report.sweep_samples,
                "seed": report.sweep_seed,
                "min_joint_violation": report.min_joint_violation,
                "ok": report.sweep_ok,
            },
        },
        "pass": ok,
    }
    return doc, lines


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="djsim",
        description="Exact oracles, query bounds, and the one-query protocol "
        "for the constant-vs-balanced problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrices", help="print the four oracle matrices")
    _add_format(p)
    p.set_defaults(handler=cmd_matrices)

    p = sub.add_parser("derive", help="derive the optimal input states")
    _add_format(p)
    p.add_argument(
        "--grid-step",
        type=float,
        default=None,
        metavar="STEP",
        help="also run the grid search cross-check with this step",
    )
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("verify", help="run the one-query protocol on all oracles")
    _add_format(p)
    p.add_argument(
        "--theta",
        type=float,
        default=0.0,
        metavar="RADIANS",
        help="control-qubit relative phase (default: 0)",
    )
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("classical", help="prove the classical two-query bound")
    _add_format(p)
    p.set_defaults(handler=cmd_classical)

    p = sub.add_parser(
        "impossible", help="demonstrate that one query cannot identify the function"
    )
    _add_format(p)
    p.add_argument("--samples", type=int, default=100_000, help="sweep sample count")
    p.add_argument("--seed", type=int, default=0, help="sweep random seed")
    p.set_defaults(handler=cmd_impossible)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, lines = args.handler(args)
    except (InvalidStep, InvalidAngle, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return 0 if doc["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
