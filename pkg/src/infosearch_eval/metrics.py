"""Pure metric kernel: nDCG@k, MRR@1, Robustness@k, p-MRR, SICR and WISE.

No I/O, no shared state; every function is deterministic and re-entrant.
Absent ranks are resolved by the caller to depth+1 of the corresponding
list; absent scores resolve to -inf so strict score comparisons fail.
All values are unscaled (nDCG in [0,1], WISE in [-1,1]); presentation
scaling happens in the report layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import RankedList
from .errors import (EmptyGroup, EmptyInput, EmptyRelevantSet, InvariantBreach)

NEG_INF = float("-inf")

PMRR_AS_PRINTED = "as-printed"
PMRR_FLIPPED = "flipped"


@dataclass(frozen=True)
class MetricConfig:
    k_ndcg: int = 10
    k_wise: int = 20
    p_mrr_sign: str = PMRR_AS_PRINTED
    report_scale: float = 100.0

    def __post_init__(self):
        if self.k_ndcg < 1 or self.k_wise < 1:
            raise ValueError("cutoffs must be >= 1")
        if self.p_mrr_sign not in (PMRR_AS_PRINTED, PMRR_FLIPPED):
            raise ValueError(f"unknown p_mrr_sign {self.p_mrr_sign!r}")


@dataclass(frozen=True)
class GoldContext:
    """Per-instructed-query view of the gold document across the three modes.

    Ranks/scores are None when the gold document fell outside the retrieved
    list for that mode; depths record the list lengths so absent ranks can
    be resolved to depth+1.
    """
    r_ori: Optional[int]
    r_ins: Optional[int]
    r_rev: Optional[int]
    s_ori: Optional[float]
    s_ins: Optional[float]
    s_rev: Optional[float]
    n_positives: int
    depth_ori: int
    depth_ins: int
    depth_rev: int

    def resolved_ranks(self) -> tuple[int, int, int]:
        return (self.r_ori if self.r_ori is not None else self.depth_ori + 1,
                self.r_ins if self.r_ins is not None else self.depth_ins + 1,
                self.r_rev if self.r_rev is not None else self.depth_rev + 1)

    def resolved_scores(self) -> tuple[float, float, float]:
        return (self.s_ori if self.s_ori is not None else NEG_INF,
                self.s_ins if self.s_ins is not None else NEG_INF,
                self.s_rev if self.s_rev is not None else NEG_INF)


def ndcg_at_k(ranked: RankedList, relevant: set[str], k: int) -> float:
    """Binary-relevance nDCG@k with 1/log2(rank+1) discount."""
    if not relevant:
        raise EmptyRelevantSet("relevant set is empty")
    dcg = 0.0
    for pos, (doc_id, _) in enumerate(ranked.entries[:k], start=1):
        if doc_id in relevant:
            dcg += 1.0 / math.log2(pos + 1)
    ideal = sum(1.0 / math.log2(i + 1) for i in range(1, min(len(relevant), k) + 1))
    return dcg / ideal


def mrr_at_1(ranked: RankedList, relevant: set[str]) -> int:
    """1 iff the top-ranked document is relevant; 0 for an empty list."""
    if not relevant:
        raise EmptyRelevantSet("relevant set is empty")
    if not ranked.entries:
        return 0
    return 1 if ranked.entries[0][0] in relevant else 0


def robustness_at_k(groups: Sequence[Sequence[float]]) -> float:
    """Mean over groups of the minimum nDCG within each group."""
    if not groups:
        raise EmptyInput("no groups")
    minima = []
    for group in groups:
        if not group:
            raise EmptyGroup("empty robustness group")
        minima.append(min(group))
    return math.fsum(minima) / len(minima)


def p_mrr_doc(r_og: int, r_new: int, sign: str = PMRR_AS_PRINTED) -> float:
    """Reciprocal-rank-ratio change of one gold document between two modes."""
    mrr_og, mrr_new = 1.0 / r_og, 1.0 / r_new
    if r_og > r_new:
        value = mrr_og / mrr_new - 1.0
    else:
        value = 1.0 - mrr_new / mrr_og
    return -value if sign == PMRR_FLIPPED else value


def sicr_indicator(ctx: GoldContext) -> int:
    """Strict compliance: rank and score improve under the instruction and
    degrade under its reversal, all four comparisons strict."""
    r_ori, r_ins, r_rev = ctx.resolved_ranks()
    s_ori, s_ins, s_rev = ctx.resolved_scores()
    ok = (r_ins < r_ori) and (s_ins > s_ori) and (r_ori < r_rev) and (s_ori > s_rev)
    return 1 if ok else 0


def sicr(indicators: Iterable[int]) -> float:
    values = list(indicators)
    if not values:
        raise EmptyInput("no indicators")
    return math.fsum(values) / len(values)


def wise_reward(r_ori: int, r_ins: int, n: int, k: int) -> float:
    """Reward component; caller guarantees r_ins <= r_ori < r_rev."""
    if r_ori <= n and r_ins == 1:
        return 1.0
    if r_ori <= k:
        return (1.0 - (r_ori - r_ins) / k) / math.sqrt(r_ins)
    return 0.01


def wise_penalty(r_ori: int, r_ins: int, r_rev: int) -> float:
    """Penalty component, cases evaluated top-down; caller guarantees the
    reward condition does not hold."""
    if r_rev < r_ori < r_ins:
        return -1.0
    if r_ori <= r_ins:
        return (r_ori - r_ins) / r_ins
    if r_rev <= r_ori:
        return (r_rev - r_ori) / r_ori
    raise InvariantBreach(
        f"no penalty case for ranks ori={r_ori} ins={r_ins} rev={r_rev}")


def wise_query(ctx: GoldContext, cfg: MetricConfig) -> float:
    """Per-query WISE value in [-1, 1]."""
    r_ori, r_ins, r_rev = ctx.resolved_ranks()
    if r_ins <= r_ori < r_rev:
        return wise_reward(r_ori, r_ins, ctx.n_positives, cfg.k_wise)
    return wise_penalty(r_ori, r_ins, r_rev)


def wise_ideal_query(r_ori: int, n: int, k: int) -> float:
    """Best reward achievable from r_ori, assuming the reversed rank can
    always be pushed below r_ori."""
    return max(wise_reward(r_ori, r, n, k) for r in range(1, r_ori + 1))


def wise(values: Iterable[float]) -> float:
    vals = list(values)
    if not vals:
        raise EmptyInput("no per-query values")
    return math.fsum(vals) / len(vals)
