"""Command-line front end.

    atanforge list [--json]
    atanforge verify ID [--PARAM VALUE ...] [options]
    atanforge sweep ID [--PARAM RANGE ...] [--workers K] [options]
    atanforge suite [options]

Exit codes: 0 pass, 1 assertion failure, 2 usage or domain error, 3 unconverged.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal, InvalidOperation
from itertools import product
from typing import Optional, Sequence

from . import registry, suite
from .precision import DEFAULT_MAX_TERMS, DomainError, PrecisionContext, SingularTermError, default_context
from .report import ERROR, FAIL, PASS, UNCONVERGED, error_report, report_text, rows_to_csv, to_json

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNCONVERGED = 0, 1, 2, 3
STATUS_EXIT = {PASS: EXIT_PASS, FAIL: EXIT_FAIL, ERROR: EXIT_USAGE, UNCONVERGED: EXIT_UNCONVERGED}


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, formats=("json", "csv", "text"), default_format="text"):
    p.add_argument("--digits", type=int, help="decimal digits (default: $ATANFORGE_DIGITS or 60)")
    p.add_argument("--tolerance", type=float, help="verification tolerance (default: tier for --digits)")
    p.add_argument("--tail-target", type=float, help="series truncation target (default: 10^-(digits+2))")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS, help="series term budget")
    p.add_argument("--format", choices=formats, default=default_format)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=suite.DEFAULT_SEED, help="seed for randomized draws")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atanforge", allow_abbrev=False, description="High-precision verification of arctangent identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="show every identity with its label and parameters", allow_abbrev=False)
    p.add_argument("--json", action="store_true", help="machine-readable schema")

    for name, help_text in (("verify", "evaluate one identity"), ("sweep", "evaluate a parameter grid")):
        p = sub.add_parser(name, help=help_text, allow_abbrev=False,
                           epilog="identity parameters are passed as --NAME VALUE; see 'atanforge list'")
        p.add_argument("identity")
        _common(p)
        if name == "sweep":
            p.add_argument("--workers", type=int, default=1, help="worker processes (output order is fixed)")

    p = sub.add_parser("suite", help="run the acceptance matrix", allow_abbrev=False)
    _common(p)
    p.add_argument("--no-scaling", action="store_true", help="skip the 100-digit rerun")
    p.add_argument("--criteria", help="comma list of criterion numbers to run")
    p.add_argument("--all-checks", action="store_true", help="include every check row in JSON output")
    return parser


def make_context(args) -> PrecisionContext:
    base = default_context() if args.digits is None else PrecisionContext(digits=args.digits)
    return PrecisionContext(
        digits=base.digits,
        verify_tolerance=args.tolerance,
        max_terms=args.max_terms,
        tail_target=args.tail_target,
    )


def parse_identity_args(tokens: Sequence[str]) -> dict:
    """``--name value`` / ``--name=value`` pairs left over by argparse."""
    out = {}
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--") or len(tok) < 3:
            raise UsageError(f"unexpected argument {tok!r}")
        if "=" in tok:
            key, value = tok[2:].split("=", 1)
            i += 1
        else:
            if i + 1 >= len(tokens):
                raise UsageError(f"{tok} needs a value")
            key, value = tok[2:], tokens[i + 1]
            i += 2
        key = key.replace("-", "_")
        if key in out:
            raise UsageError(f"--{key} given twice")
        out[key] = value
    return out


def expand_range(text: str, integer: bool) -> list:
    """``start:stop:step`` (inclusive) or a comma list; never empty."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad range {text!r}")
        try:
            start, stop = Decimal(parts[0]), Decimal(parts[1])
            step = Decimal(parts[2]) if len(parts) == 3 else Decimal(1)
        except InvalidOperation:
            raise UsageError(f"range bounds must be decimal numbers: {text!r}") from None
        if step <= 0:
            raise UsageError(f"range step must be positive: {text!r}")
        values = []
        k = 0
        while start + k * step <= stop:
            values.append(start + k * step)
            k += 1
        if integer:
            if any(v != v.to_integral_value() for v in values):
                raise UsageError(f"integer range expected: {text!r}")
            values = [int(v) for v in values]
        else:
            values = [str(v) for v in values]
    else:
        values = [v.strip() for v in text.split(",") if v.strip()]
        if integer:
            try:
                values = [int(v) for v in values]
            except ValueError:
                raise UsageError(f"integer list expected: {text!r}") from None
    if not values:
        raise UsageError(f"empty range {text!r}")
    return values


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _evaluate(identity: str, params: dict, ctx: PrecisionContext, seed: int) -> dict:
    try:
        rep = registry.evaluate(identity, params, ctx)
    except (DomainError, SingularTermError) as exc:
        anchor = registry.REGISTRY[identity].anchor if identity in registry.REGISTRY else ""
        rep = error_report(identity, anchor, params, ctx, str(exc))
    d = rep.to_dict(ctx)
    d["notes"].append(f"seed={seed}")
    return d


def _evaluate_packed(job):
    return _evaluate(*job)


def cmd_list(args) -> int:
    cat = registry.catalogue()
    if args.json:
        _write(to_json(cat), None)
        return EXIT_PASS
    lines = []
    for e in cat:
        params = " ".join(f"--{p['name']} <{p['help']}>" for p in e["params"]) or "(no parameters)"
        lines.append(f"{e['identity']:<20} {e['paper_anchor']}\n{'':<20} {params}")
    _write("\n".join(lines), None)
    return EXIT_PASS


def _render(rows: list, fmt: str, footer: Optional[dict] = None) -> str:
    if fmt == "csv":
        return rows_to_csv(rows)
    if fmt == "json":
        if footer is None and len(rows) == 1:
            return to_json(rows[0])
        return to_json({"reports": rows, "summary": footer})
    text = "\n".join(report_text(r) for r in rows)
    if footer:
        text += (f"\n-- {footer['count']} reports, {footer['failures']} not passing, "
                 f"max residual {footer['max_residual']}")
    return text


def cmd_verify(args, extra) -> int:
    ctx = make_context(args)
    registry.get(args.identity)
    d = _evaluate(args.identity, parse_identity_args(extra), ctx, args.seed)
    if d["status"] == ERROR:
        print(f"atanforge: {d['notes'][0]}", file=sys.stderr)
    _write(_render([d], args.format), args.out)
    return STATUS_EXIT[d["status"]]


def cmd_sweep(args, extra) -> int:
    ctx = make_context(args)
    entry = registry.get(args.identity)
    raw = parse_identity_args(extra)
    kinds = {p.name: p.kind for p in entry.params}
    unknown = set(raw) - set(kinds)
    if unknown:
        raise UsageError(f"{entry.id} does not take {', '.join(sorted(unknown))}")
    axes = {name: expand_range(text, kinds[name] in registry.INT_KINDS) for name, text in raw.items()}
    names = list(axes)
    points = [dict(zip(names, combo)) for combo in product(*(axes[n] for n in names))]
    jobs = [(entry.id, pt, ctx, args.seed) for pt in points]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_evaluate_packed, jobs, chunksize=max(1, len(jobs) // (4 * args.workers))))
    else:
        rows = [_evaluate_packed(j) for j in jobs]
    mp = ctx.mp
    residuals = [abs(mp.mpf(r["residual"])) for r in rows if r["residual"] is not None]
    footer = {
        "count": len(rows),
        "failures": sum(r["status"] != PASS for r in rows),
        "max_residual": mp.nstr(max(residuals), 5) if residuals else None,
        "statuses": {s: sum(r["status"] == s for r in rows) for s in (PASS, FAIL, ERROR, UNCONVERGED)},
    }
    _write(_render(rows, args.format, footer), args.out)
    statuses = {r["status"] for r in rows}
    for status in (FAIL, ERROR, UNCONVERGED):
        if status in statuses:
            return STATUS_EXIT[status]
    return EXIT_PASS


def cmd_suite(args) -> int:
    ctx = make_context(args)
    only = None
    if args.criteria:
        try:
            only = {int(v) for v in args.criteria.split(",")}
        except ValueError:
            raise UsageError(f"bad criteria list {args.criteria!r}") from None
        if not only <= set(range(1, 10)):
            raise UsageError("criteria are numbered 1 to 9")

    def progress(res):
        if args.format == "text":
            print(_criterion_line(res, ctx), file=sys.stderr if args.out is None else sys.stdout, flush=True)

    result = suite.run_suite(ctx, seed=args.seed, scaling=not args.no_scaling, only=only, progress=progress)
    if args.format == "csv":
        text = rows_to_csv(result.rows(ctx))
    elif args.format == "json":
        text = to_json(result.to_dict(ctx, include_checks=args.all_checks))
    else:
        lines = [_criterion_line(c, ctx) for c in result.criteria]
        lines.append("findings:")
        for f in result.findings:
            lines.append(f"  [{f.kind}] {f.title}: " + "; ".join(f"{k}={v}" for k, v in f.evidence.items()))
        lines.append(f"suite {'PASS' if result.passed else 'FAIL'} at {ctx.digits} digits "
                     f"in {result.elapsed_ms / 1000:.1f} s")
        text = "\n".join(lines)
    _write(text, args.out)
    return EXIT_PASS if result.passed else EXIT_FAIL


def _criterion_line(res, ctx) -> str:
    worst = res.max_residual()
    tag = "PASS" if res.passed else "FAIL"
    line = (f"criterion {res.number} {tag}: {res.title} ({len(res.checks)} checks, {len(res.failures)} failing, "
            f"max passing residual {ctx.mp.nstr(worst, 3) if worst is not None else '-'}, "
            f"{res.elapsed_ms / 1000:.1f} s)")
    for p in res.problems:
        line += f"\n    problem: {p}"
    return line


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args, extra = parser.parse_known_args(argv)
    try:
        if args.command == "list":
            if extra:
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
            return cmd_list(args)
        if args.command == "suite":
            if extra:
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
            return cmd_suite(args)
        if args.command == "verify":
            return cmd_verify(args, extra)
        return cmd_sweep(args, extra)
    except (UsageError, DomainError, SingularTermError) as exc:
        print(f"atanforge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
