"""Tabular report rendering: markdown, csv, and full-precision jsonl.

Values are scaled x100 for presentation; markdown and csv display one
decimal place (round half away from zero), the structured format keeps
full precision for downstream tooling.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, fields
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

from .errors import NonPositiveIdeal
from .harness import DimensionSummary

COLUMNS = ("ndcg_ori", "ndcg_ins", "ndcg_rev",
           "mrr1_ori", "mrr1_ins", "mrr1_rev",
           "robustness_ori", "robustness_ins", "robustness_rev",
           "p_mrr", "wise_act", "wise_ideal", "per", "sicr")

FORMATS = ("markdown", "csv", "structured")


@dataclass
class ReportRow:
    system_id: str
    scope: str
    ndcg_ori: float
    ndcg_ins: float
    ndcg_rev: Optional[float]
    mrr1_ori: float
    mrr1_ins: float
    mrr1_rev: Optional[float]
    robustness_ori: float
    robustness_ins: float
    robustness_rev: Optional[float]
    p_mrr: float
    wise_act: float
    wise_ideal: float
    per: Optional[float]
    sicr: float


def per_gap(act: float, ideal: float) -> float:
    """Percentage gap between actual and ideal: 100 * (ideal - act) / ideal."""
    if ideal <= 0:
        raise NonPositiveIdeal(f"ideal must be positive, got {ideal}")
    return 100.0 * (ideal - act) / ideal


def row_from_summary(system_id: str, summary: DimensionSummary,
                     scale: float = 100.0) -> ReportRow:
    d = summary.as_dict()
    scaled = {k: (None if v is None else v * scale) for k, v in d.items() if k != "per"}
    per = (per_gap(scaled["wise_act"], scaled["wise_ideal"])
           if scaled["wise_ideal"] is not None and scaled["wise_ideal"] > 0 else None)
    return ReportRow(system_id=system_id, scope=summary.scope, per=per, **scaled)


def _fmt1(value: Optional[float]) -> str:
    if value is None:
        return ""
    return str(Decimal(repr(value)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def render(rows: list[ReportRow], fmt: str = "markdown") -> bytes:
    if not rows:
        raise ValueError("no rows to render")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    header = ["system_id", "scope", *COLUMNS]

    if fmt == "structured":
        out = io.StringIO()
        for row in rows:
            rec = {f.name: getattr(row, f.name) for f in fields(ReportRow)}
            out.write(json.dumps(rec, ensure_ascii=False) + "\n")
        return out.getvalue().encode("utf-8")

    table = [[row.system_id, row.scope, *(_fmt1(getattr(row, c)) for c in COLUMNS)]
             for row in rows]
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(cells) for cells in table]
        return ("\n".join(lines) + "\n").encode("utf-8")

    widths = [max(len(header[i]), *(len(cells[i]) for cells in table))
              for i in range(len(header))]
    def md_row(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    lines = [md_row(header),
             "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines.extend(md_row(cells) for cells in table)
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_csv(data: bytes) -> list[ReportRow]:
    """Inverse of render(..., 'csv') up to one-decimal precision."""
    lines = data.decode("utf-8").splitlines()
    header = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        cells = dict(zip(header, line.split(",")))
        kwargs = {"system_id": cells["system_id"], "scope": cells["scope"]}
        for col in COLUMNS:
            kwargs[col] = float(cells[col]) if cells[col] else None
        rows.append(ReportRow(**kwargs))
    return rows
