from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from typing import Any, Callable, Sequence

from domain.census import brute_force_m, brute_force_mu, closed_form_m, closed_form_mu, projective_identities
from domain.file_lock import ExportLockedError
from domain.gf import FieldError, field_from_order
from domain.limits import DEFAULT_LIMITS, BoundExceededError, Limits
from domain.modvec import (
    DimensionError,
    TMatrix,
    VectorCase,
    classify_vector,
    parse_vector,
    reduce_to_distinguished,
    vector_times_matrix,
)
from domain.persistence import dumps_document, save_document
from domain.pgbridge import (
    ConstructionError,
    pg_oracle_lines,
    pg_oracle_points,
    recover_points_via_nfcs,
    recover_points_via_unimodular,
    verify_line_correspondence,
)
from domain.snowflake import build_snowflake, snowflake_to_dict, snowflake_to_dot
from domain.submod import SubmoduleError, enumerate_nfcs, enumerate_unimodular_submodules
from domain.ternion import TernionRing
from domain.verification import run_verification

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BOUND = 3

FORMATS = ("text", "json", "csv", "dot")

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    pass


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", required=True, help="field order as P^K or N")
    common.add_argument("--n", type=int, default=1, help="projective dimension; vectors live in R^(n+1)")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumerations")
    common.add_argument("--bound", type=int, default=None, help="cap on the number of vectors any scan may visit")
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="ternion-geometry",
        description="Vectors, cyclic submodules and projective geometry over the ternion ring of GF(q).",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser("classify", parents=[common], help="orbit of a vector of R^(n+1)")
    classify.add_argument("--vector", required=True, help='coordinates "x,y,z;x,y,z;..." as field indices')
    classify.add_argument("--reduce", action="store_true", help="also print the reduction matrix A with X*A = D")
    classify.set_defaults(handler=cmd_classify)

    reduce = commands.add_parser("reduce", parents=[common], help="classify with the reduction certificate")
    reduce.add_argument("--vector", required=True)
    reduce.set_defaults(handler=cmd_classify, reduce=True)

    enumerate_ = commands.add_parser("enumerate", parents=[common], help="free cyclic submodules")
    enumerate_.add_argument("--orbit", choices=("cs4", "cs6"), default="cs4")
    enumerate_.set_defaults(handler=cmd_enumerate)

    counts = commands.add_parser("counts", parents=[common], help="orbit and incidence counts")
    counts.add_argument("--brute-force", action="store_true", help="compare the formulas with enumeration")
    counts.set_defaults(handler=cmd_counts)

    verify = commands.add_parser("verify", parents=[common], help="run every structural check")
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(handler=cmd_verify)

    pg_check = commands.add_parser("pg-check", parents=[common], help="lines and points of PG(n,q) from submodules")
    pg_check.add_argument("--emit", metavar="PATH", help="write the line set as JSON")
    pg_check.set_defaults(handler=cmd_pg_check)

    snowflake = commands.add_parser("export-snowflake", parents=[common], help="NFCS incidence graph")
    snowflake.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    snowflake.set_defaults(handler=cmd_export_snowflake)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def _limits(args: argparse.Namespace) -> Limits:
    if args.bound is None:
        return DEFAULT_LIMITS
    if args.bound < 1:
        raise UsageError(f"--bound must be at least 1, got {args.bound}")
    return DEFAULT_LIMITS.with_scan_bound(args.bound)


def _ring(args: argparse.Namespace, limits: Limits) -> TernionRing:
    if args.n < 1:
        raise UsageError(f"--n must be at least 1, got {args.n}")
    if args.threads < 1:
        raise UsageError(f"--threads must be at least 1, got {args.threads}")
    return TernionRing(field_from_order(args.q, max_order=limits.max_field_order))


def _require_format(args: argparse.Namespace, *allowed: str) -> None:
    if args.format not in allowed:
        raise UsageError(f"{args.command} does not support --format {args.format}")


def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _matrix_rows(matrix: TMatrix) -> list[list[str]]:
    return [[str(t) for t in row] for row in matrix.rows]


def cmd_classify(args: argparse.Namespace) -> int:
    _require_format(args, "text", "json")
    limits = _limits(args)
    ring = _ring(args, limits)
    vector = parse_vector(ring, args.vector, args.n)
    orbit = classify_vector(ring, vector)
    payload: dict[str, Any] = {
        "schema": 1,
        "q": ring.field.q,
        "n": args.n,
        "vector": str(vector),
        "case": f"Case{int(orbit.case)}",
        "b": orbit.b,
    }
    verified = True
    if args.reduce:
        reduction = reduce_to_distinguished(ring, vector)
        verified = vector_times_matrix(ring, vector, reduction.matrix) == reduction.vector
        payload["reduction"] = {
            "matrix": _matrix_rows(reduction.matrix),
            "image": str(reduction.vector),
            "verified": verified,
        }

    if args.format == "json":
        _write(dumps_document(payload))
    else:
        lines = [str(orbit)]
        if args.reduce:
            lines.append("A =")
            lines.extend("  " + "  ".join(row) for row in payload["reduction"]["matrix"])
            lines.append(f"X*A = {payload['reduction']['image']} ({'verified' if verified else 'MISMATCH'})")
        _write("\n".join(lines))
    return EXIT_OK if verified else EXIT_FAILED


def cmd_enumerate(args: argparse.Namespace) -> int:
    _require_format(args, "text", "json")
    limits = _limits(args)
    ring = _ring(args, limits)
    if args.orbit == "cs4":
        submodules = enumerate_nfcs(ring, args.n, limits, args.threads)
    else:
        submodules = enumerate_unimodular_submodules(ring, args.n, limits, args.threads)
    generators = [str(s.canonical_generator) for s in submodules]
    if args.format == "json":
        payload = {
            "schema": 1,
            "q": ring.field.q,
            "n": args.n,
            "orbit": args.orbit,
            "count": len(generators),
            "generators": generators,
        }
        _write(dumps_document(payload))
    else:
        _write("\n".join(generators + [f"{len(generators)} {args.orbit} submodules"]))
    return EXIT_OK


def _count_rows(ring: TernionRing, args: argparse.Namespace, limits: Limits) -> list[tuple[str, int, int | None]]:
    q, n = ring.field.q, args.n
    m = closed_form_m(q, n)
    mu = closed_form_mu(q, n)
    observed_m: tuple[int | None, ...] = (None,) * 6
    observed_mu: tuple[int | None, ...] = (None,) * 5
    if args.brute_force:
        observed_m = brute_force_m(ring, n, limits, args.threads).m
        observed_mu = brute_force_mu(ring, n, limits, args.threads).values
    rows: list[tuple[str, int, int | None]] = []
    for case, expected, observed in zip(VectorCase, m.m, observed_m):
        rows.append((f"m{int(case)}", expected, observed))
    for name, expected, observed in zip(("mu", "mu1", "mu2", "mu3", "mu4"), mu.values, observed_mu):
        rows.append((name, expected, observed))
    return rows


def cmd_counts(args: argparse.Namespace) -> int:
    _require_format(args, "text", "json", "csv")
    limits = _limits(args)
    ring = _ring(args, limits)
    rows = _count_rows(ring, args, limits)
    identities = projective_identities(ring.field.q, args.n)
    passed = all(observed is None or observed == expected for _, expected, observed in rows)
    passed = passed and all(identities.values())

    if args.format == "json":
        payload = {
            "schema": 1,
            "q": ring.field.q,
            "n": args.n,
            "counts": {name: {"formula": expected, "observed": observed} for name, expected, observed in rows},
            "identities": identities,
            "passed": passed,
        }
        _write(dumps_document(payload))
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "formula", "observed", "status"])
        for name, expected, observed in rows:
            writer.writerow([name, expected, "" if observed is None else observed, _status(expected, observed)])
        _write(buffer.getvalue())
    else:
        lines = [f"{'':6}{'formula':>16}{'observed':>16}"]
        for name, expected, observed in rows:
            shown = "-" if observed is None else str(observed)
            lines.append(f"{name:6}{expected:>16}{shown:>16}  {_status(expected, observed)}")
        lines.extend(f"{name}: {'PASS' if holds else 'FAIL'}" for name, holds in identities.items())
        _write("\n".join(lines))
    return EXIT_OK if passed else EXIT_FAILED


def _status(expected: int, observed: int | None) -> str:
    if observed is None:
        return ""
    return "PASS" if observed == expected else "FAIL"


def cmd_verify(args: argparse.Namespace) -> int:
    _require_format(args, "text", "json")
    limits = _limits(args)
    ring = _ring(args, limits)
    report = run_verification(ring, args.n, limits, args.threads, seed=args.seed)
    if args.format == "json":
        _write(dumps_document(report.to_dict()))
    else:
        lines = []
        for check in report.checks:
            status = "SKIP" if check.skipped else "PASS" if check.passed else "FAIL"
            lines.append(f"{status}  {check.name}" + (f"  ({check.detail})" if check.detail else ""))
        lines.append(f"GF({report.q}), n={report.n}: {'all checks passed' if report.passed else 'FAILED'}")
        _write("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_pg_check(args: argparse.Namespace) -> int:
    _require_format(args, "text", "json")
    limits = _limits(args)
    ring = _ring(args, limits)
    field_ = ring.field
    nfcs = enumerate_nfcs(ring, args.n, limits, args.threads)
    lines_report = verify_line_correspondence(ring, args.n, limits, args.threads, nfcs=nfcs)
    points = pg_oracle_points(field_, args.n)
    results = {
        "lines": lines_report.passed,
        "points from unimodular submodules": recover_points_via_unimodular(ring, args.n, limits, args.threads)
        == points,
    }
    if args.n >= 2:
        results["points from NFCS pairs"] = recover_points_via_nfcs(ring, args.n, limits, nfcs=nfcs) == points
    passed = all(results.values())

    if args.emit:
        lines = sorted(pg_oracle_lines(field_, args.n))
        document = {
            "schema": 1,
            "q": field_.q,
            "n": args.n,
            "lines": [[list(v.coords) for v in line.basis] for line in lines],
        }
        save_document(args.emit, dumps_document(document))

    if args.format == "json":
        payload = {
            "schema": 1,
            "q": field_.q,
            "n": args.n,
            "nfcs": lines_report.nfcs_count,
            "lines": lines_report.line_count,
            "traces": lines_report.trace_count,
            "fiber_sizes": list(lines_report.fiber_sizes),
            "points": len(points),
            "checks": results,
            "passed": passed,
        }
        _write(dumps_document(payload))
    else:
        text = [
            f"NFCS: {lines_report.nfcs_count}",
            f"lines of PG({args.n},{field_.q}): {lines_report.line_count}",
            f"distinct radical traces: {lines_report.trace_count}",
            f"NFCS per line: {', '.join(str(s) for s in lines_report.fiber_sizes)}",
            f"points of PG({args.n},{field_.q}): {len(points)}",
        ]
        text.extend(f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results.items())
        _write("\n".join(text))
    return EXIT_OK if passed else EXIT_FAILED


def cmd_export_snowflake(args: argparse.Namespace) -> int:
    _require_format(args, "text", "json", "dot")
    limits = _limits(args)
    ring = _ring(args, limits)
    graph = build_snowflake(ring, args.n, limits, args.threads)
    if args.format == "dot":
        text = snowflake_to_dot(graph)
    else:
        text = dumps_document(snowflake_to_dict(graph))
    if args.out:
        save_document(args.out, text)
    else:
        _write(text)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    _configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except BoundExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, FieldError, DimensionError, SubmoduleError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ExportLockedError) as exc:
        logger.debug("Export failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
