"""Command-line front end: count, zeta, verify, trace, cm, lefschetz.

Exit status: 0 when every non-reported check passes, 1 on a failed check,
2 on usage or input errors, 3 when the enumeration budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .cm import load_cm_table
from .errors import EnumerationTooLarge, ParseError, TraceZetaError
from .field import DEFAULT_BUDGET
from .pipeline import (
    cm_report,
    frobenius_from_zeta,
    lefschetz_report,
    minimal_R,
    standard_zeta_from_trace,
    trace_report,
    verify_variety,
)
from .series import pformat
from .variety import Variety, count_series, parse_variety
from .verify import VerificationReport
from .zeta import FactoredZeta, zeta_from_counts

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
COMMANDS = ("count", "zeta", "verify", "trace", "cm", "lefschetz")
FIXTURES = ("p1_f3", "p2_f2", "e1_f5", "e2_f13", "g2_f3")


class UsageError(Exception):
    """Bad command-line input that is not tied to a library module."""


def load_document(source: str) -> dict[str, Any]:
    """Read JSON from a path, or from a packaged fixture written as ``@name``."""
    try:
        if source.startswith("@"):
            name = source[1:]
            if name not in FIXTURES and name != "cm_curves":
                raise UsageError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
            text = resources.files("tracezeta.fixtures").joinpath(f"{name}.json").read_text()
        else:
            text = Path(source).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON: {exc}") from None
    return doc


def _dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _report_tsv(report: VerificationReport) -> str:
    lines = ["check\tstatus\tdetail"]
    lines += [f"{c.name}\t{c.status}\t{c.detail}" for c in report.sorted_checks()]
    return "\n".join(lines) + "\n"


def _render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return report.dumps()
    if fmt == "tsv":
        return _report_tsv(report)
    return report.to_text()


def _render_zeta(fz: FactoredZeta, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(fz.to_json())
    rows = [(f"P_{i}", "?" if f is None else pformat(f)) for i, f in enumerate(fz.factors)]
    if any(f is None for f in fz.factors):
        rows += [("odd_part", pformat(fz.odd_part)), ("even_interior", pformat(fz.even_interior))]
    if fmt == "tsv":
        return "factor\tpolynomial\n" + "".join(f"{a}\t{b}\n" for a, b in rows)
    lines = [f"Z(t) over F_{fz.q}, dimension {fz.n} ({fz.kind})", f"Z(t) = {fz}"]
    lines += [f"  {a} = {b}" for a, b in rows]
    return "\n".join(lines) + "\n"


def _variety_and_flags(args: argparse.Namespace) -> tuple[Variety, dict[str, Any]]:
    doc = load_document(args.input)
    V = parse_variety(doc)
    extras = {
        "pin_outer": bool(args.pin_outer or doc.get("pin_outer", False)),
        "cm_d": doc.get("cm_d"),
    }
    return V, extras


def _counts_R(args: argparse.Namespace, V: Variety, pin_outer: bool) -> int:
    if args.R is not None:
        return args.R
    if V.betti_hint is not None:
        return minimal_R(V.betti_hint, args.holdout, pin_outer)
    if args.max_deg is not None:
        return sum(args.max_deg) + args.holdout
    raise UsageError("no Betti numbers in the input; pass --R or --max-deg NUM DEN")


def cmd_count(args: argparse.Namespace) -> tuple[str, int]:
    V, extras = _variety_and_flags(args)
    R = _counts_R(args, V, extras["pin_outer"])
    cs = count_series(V, R, budget=args.budget, workers=args.workers)
    if args.format == "tsv":
        return cs.to_tsv(), EXIT_OK
    if args.format == "json":
        doc = {"label": V.label, "variety_digest": V.digest(), "p": V.p, "R": R, "counts": list(cs.counts)}
        return _dump_json(doc), EXIT_OK
    lines = [f"{V.label or 'variety'} over F_{V.p}"] + [f"  N_{r} = {n}" for r, n in enumerate(cs.counts, 1)]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_zeta(args: argparse.Namespace) -> tuple[str, int]:
    V, extras = _variety_and_flags(args)
    pin_outer = extras["pin_outer"]
    if V.betti_hint is None and args.max_deg is None:
        raise UsageError("no Betti numbers in the input; pass --max-deg NUM DEN")
    R = _counts_R(args, V, pin_outer)
    cs = count_series(V, R, budget=args.budget, workers=args.workers)
    bounds = tuple(args.max_deg) if args.max_deg is not None else None
    betti = None if args.max_deg is not None else V.betti_hint
    fz = zeta_from_counts(cs, betti, V.dim_hint, holdout=args.holdout, pin_outer=pin_outer, bounds=bounds)
    return _render_zeta(fz, args.format), EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    V, extras = _variety_and_flags(args)
    outcome = verify_variety(
        V,
        R=args.R,
        holdout=args.holdout,
        tol=args.tol,
        budget=args.budget,
        workers=args.workers,
        pin_outer=extras["pin_outer"],
        cm_d=extras["cm_d"],
    )
    report = outcome.report
    return _render_report(report, args.format), EXIT_OK if report.ok else EXIT_CHECK


def _curve_trace(args: argparse.Namespace) -> tuple[int, int, dict[str, Any]]:
    """(a_p, q, document) from either {"a_p", "q"} or an elliptic-curve variety."""
    doc = load_document(args.input)
    if "a_p" in doc:
        if not isinstance(doc["a_p"], int) or not isinstance(doc.get("q"), int):
            raise ParseError("'a_p' and 'q' must be integers")
        return doc["a_p"], doc["q"], doc
    V = parse_variety(doc)
    if V.betti_hint != (1, 2, 1):
        raise UsageError("trace and lefschetz need an elliptic curve (betti [1, 2, 1]) or an {a_p, q} document")
    n1 = count_series(V, 1, budget=args.budget, workers=args.workers).counts[0]
    return 1 + V.p - n1, V.p, doc


def cmd_trace(args: argparse.Namespace) -> tuple[str, int]:
    a_p, q, doc = _curve_trace(args)
    matrices = doc.get("block_matrices", [[[1]], [[1, 0], [0, 1]]])
    report = trace_report(a_p, q, matrices)
    return _render_report(report, args.format), EXIT_OK if report.ok else EXIT_CHECK


def cmd_lefschetz(args: argparse.Namespace) -> tuple[str, int]:
    a_p, q, _ = _curve_trace(args)
    z_std = standard_zeta_from_trace(a_p, q)
    _, report = lefschetz_report(z_std, frobenius_from_zeta(z_std), args.tol)
    return _render_report(report, args.format), EXIT_OK if report.ok else EXIT_CHECK


def cmd_cm(args: argparse.Namespace) -> tuple[str, int]:
    curves = load_cm_table(None if args.input in (None, "@cm_curves") else args.input)
    report = cm_report(curves, budget=args.budget, workers=args.workers)
    return _render_report(report, args.format), EXIT_OK if report.ok else EXIT_CHECK


HANDLERS = {
    "count": cmd_count,
    "zeta": cmd_zeta,
    "verify": cmd_verify,
    "trace": cmd_trace,
    "cm": cmd_cm,
    "lefschetz": cmd_lefschetz,
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracezeta",
        description="Point counts, zeta functions and trace-cohomology checks for varieties over finite fields.",
        epilog=f"Packaged inputs: {', '.join('@' + f for f in FIXTURES)}, @cm_curves.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", nargs="?", help="variety/fixture JSON path, or @name for a packaged fixture")
    parser.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="enumeration cap per extension degree")
    parser.add_argument("--holdout", type=_nonneg_int, default=2, help="held-out counts that must be predicted")
    parser.add_argument("--tol", type=_positive_float, default=1e-9, help="tolerance for root-modulus checks")
    parser.add_argument("--workers", type=_positive_int, default=1, help="threads used for point counting")
    parser.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    parser.add_argument("--output", "-o", help="write here instead of stdout")
    parser.add_argument("--R", type=_positive_int, default=None, help="number of extension degrees to count")
    parser.add_argument("--pin-outer", action="store_true", help="divide out (1 - t)(1 - q^n t) before reconstruction")
    parser.add_argument("--max-deg", type=_nonneg_int, nargs=2, metavar=("NUM", "DEN"), default=None,
                        help="reconstruction degree bounds when Betti numbers are absent")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.input is None and args.command != "cm":
        parser.error(f"{args.command} needs an input document")
    try:
        text, status = HANDLERS[args.command](args)
    except EnumerationTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TraceZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"error: [cli] {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, KeyError, TypeError, ValueError) as exc:
        print(f"error: [cli] {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
