"""List-wise reranking I/O: prompt rendering and output parsing.

This layer performs no model calls; it renders the ranking prompt for an
external list-wise reranker and turns its bracketed-identifier output back
into a permutation, so the evaluation pipeline stays deterministic and
offline-testable.  Point-wise true-probabilities are converted separately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import RankedList
from .errors import (BadPermutation, EmptyPassages, MissingScore,
                     ScoreOutOfRange, TooManyPassages, Unparseable)

MAX_PASSAGES = 100

_PROMPT_TEMPLATE = """<|system|>
You are RankGPT, an intelligent assistant that ranks passages based on their relevance to a query.
<|user|>
I will provide you with {num} passages, each indicated by a number identifier []. Rank the passages based on their relevance to the query: {query}.

{passages}

Search Query: {query}.

Rank the {num} passages above based on their relevance to the search query. The passages should be listed in descending order using identifiers. The most relevant passages should be listed first. The output format should be [] > [], e.g., [1] > [2]. Only respond with the ranking results, do not say any word or explain.
<|assistant|>
"""

_ID_RE = re.compile(r"\[(\d+)\]")


@dataclass(frozen=True)
class ListwisePrompt:
    query_text: str
    passages: tuple[tuple[int, str], ...]
    rendered: str


def render_listwise_prompt(query_text: str, passages: list[str]) -> ListwisePrompt:
    """Render the single-pass ranking prompt for up to 100 passages."""
    if not passages:
        raise EmptyPassages("need at least one passage")
    if len(passages) > MAX_PASSAGES:
        raise TooManyPassages(f"{len(passages)} passages exceeds {MAX_PASSAGES}")
    numbered = tuple((i, p) for i, p in enumerate(passages, start=1))
    body = "\n".join(f"[{i}] {p}" for i, p in numbered)
    rendered = _PROMPT_TEMPLATE.format(num=len(passages), query=query_text,
                                       passages=body)
    return ListwisePrompt(query_text=query_text, passages=numbered, rendered=rendered)


def parse_listwise_ranking(raw: str, m: int) -> list[int]:
    """Extract a permutation of 1..m from model output.

    Out-of-range ids are dropped, duplicates keep their first occurrence,
    and missing ids are appended in ascending order (stable completion), so
    the result is always a true permutation.  Output with no valid id at
    all is a hard error: a fabricated ranking would be worse than none.
    """
    ids = [int(s) for s in _ID_RE.findall(raw)]
    seen: set[int] = set()
    perm: list[int] = []
    for i in ids:
        if 1 <= i <= m and i not in seen:
            seen.add(i)
            perm.append(i)
    if not perm:
        raise Unparseable(raw)
    perm.extend(i for i in range(1, m + 1) if i not in seen)
    return perm


def apply_rerank(base: RankedList, perm: list[int]) -> RankedList:
    """Reorder the top-|perm| entries of base by perm; the suffix keeps its
    relative order.  Scores are synthesized as 1/rank (the external model
    supplies none), which preserves strict ordering for SICR."""
    p = len(perm)
    if p > len(base.entries) or sorted(perm) != list(range(1, p + 1)):
        raise BadPermutation(f"not a permutation of 1..{p} over a {len(base.entries)}-deep list")
    reordered = [base.entries[i - 1][0] for i in perm]
    reordered.extend(doc_id for doc_id, _ in base.entries[p:])
    entries = [(doc_id, 1.0 / rank) for rank, doc_id in enumerate(reordered, start=1)]
    return RankedList(base.query_key, base.mode, entries)


def pointwise_to_list(scores: dict[str, float], candidates: list[str],
                      query_key: str, mode) -> RankedList:
    """Turn per-document true-probabilities into a canonical ranked list."""
    entries = []
    for doc_id in candidates:
        if doc_id not in scores:
            raise MissingScore(doc_id)
        s = scores[doc_id]
        if not (0.0 <= s <= 1.0):
            raise ScoreOutOfRange(f"probability {s} for {doc_id!r} outside [0, 1]")
        entries.append((doc_id, s))
    return RankedList(query_key, mode, entries)
