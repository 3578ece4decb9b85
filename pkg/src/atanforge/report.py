"""Verification outcomes and their JSON / CSV / text renderings."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .precision import PrecisionContext, to_decimal

PASS = "pass"
FAIL = "fail"
ERROR = "error"
UNCONVERGED = "unconverged"

CSV_COLUMNS = (
    "identity",
    "paper_anchor",
    "params",
    "lhs",
    "rhs",
    "residual",
    "digits",
    "terms_used",
    "tail_bound",
    "elapsed_ms",
    "status",
    "notes",
)


@dataclass
class IdentityReport:
    identity: str
    anchor: str
    params: dict
    lhs: object
    rhs: object
    residual: object
    digits: int
    tolerance: object
    terms_used: int = 0
    tail_bound: object = None
    elapsed_ms: float = 0.0
    status: str = PASS
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def abs_residual(self):
        return abs(self.residual) if self.residual is not None else None

    def to_dict(self, ctx: PrecisionContext) -> dict:
        return {
            "identity": self.identity,
            "paper_anchor": self.anchor,
            "params": {k: _param_str(v, ctx) for k, v in self.params.items()},
            "lhs": to_decimal(self.lhs, ctx) if self.lhs is not None else None,
            "rhs": to_decimal(self.rhs, ctx) if self.rhs is not None else None,
            "residual": to_decimal(self.residual, ctx) if self.residual is not None else None,
            "digits": self.digits,
            "terms_used": self.terms_used,
            "tail_bound": to_decimal(self.tail_bound, ctx) if self.tail_bound is not None else None,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "status": self.status,
            "notes": list(self.notes),
        }


def _param_str(v, ctx):
    if isinstance(v, (int, str)):
        return v
    return to_decimal(v, ctx)


def make_report(
    identity: str,
    anchor: str,
    params: dict,
    lhs,
    rhs,
    ctx: PrecisionContext,
    started: float,
    *,
    relax: int = 0,
    terms_used: int = 0,
    tail_bound=None,
    converged: bool = True,
    notes: Sequence[str] = (),
    tolerance=None,
) -> IdentityReport:
    """Build a report; status is pass iff ``|lhs - rhs|`` is within tolerance.

    ``tolerance`` fixes an absolute threshold for checks capped by something
    other than working precision (quadrature, deliberate truncation).
    """
    residual = lhs - rhs
    tol = ctx.tolerance(relax) if tolerance is None else ctx.mp.mpf(tolerance)
    if not converged:
        status = UNCONVERGED
    elif abs(residual) <= tol:
        status = PASS
    else:
        status = FAIL
    return IdentityReport(
        identity=identity,
        anchor=anchor,
        params=dict(params),
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        digits=ctx.digits,
        tolerance=tol,
        terms_used=terms_used,
        tail_bound=tail_bound,
        elapsed_ms=(time.perf_counter() - started) * 1000.0,
        status=status,
        notes=list(notes),
    )


def error_report(identity: str, anchor: str, params: dict, ctx: PrecisionContext, message: str) -> IdentityReport:
    return IdentityReport(
        identity=identity,
        anchor=anchor,
        params=dict(params),
        lhs=None,
        rhs=None,
        residual=None,
        digits=ctx.digits,
        tolerance=ctx.tolerance(),
        status=ERROR,
        notes=[message],
    )


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def rows_to_csv(rows: Iterable[dict], columns: Sequence[str] = CSV_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        flat = dict(row)
        if isinstance(flat.get("params"), dict):
            flat["params"] = ";".join(f"{k}={v}" for k, v in flat["params"].items())
        if isinstance(flat.get("notes"), list):
            flat["notes"] = " | ".join(flat["notes"])
        writer.writerow({k: "" if flat.get(k) is None else flat.get(k) for k in columns})
    return buf.getvalue()


def report_text(d: dict) -> str:
    params = ", ".join(f"{k}={v}" for k, v in d["params"].items())
    residual = d["residual"]
    short = residual if residual is None else _short(residual)
    line = f"[{d['status'].upper():>11}] {d['identity']} ({params}) residual={short}"
    if d.get("terms_used"):
        line += f" terms={d['terms_used']}"
    for note in d.get("notes", []):
        line += f"\n    note: {note}"
    return line


def _short(text: str, digits: int = 6) -> str:
    try:
        import mpmath

        return mpmath.nstr(mpmath.mpf(text), digits)
    except (ValueError, TypeError):
        return text
