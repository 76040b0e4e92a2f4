"""Instruction-following retrieval evaluation toolkit.

Implements the three-mode evaluation protocol (original / instructed /
reversed) with nDCG@k, MRR@1, Robustness@k, p-MRR, SICR and WISE
(actual/ideal/gap), a BM25 reference retriever, a list-wise reranker I/O
adapter, and a synthetic-data brute-force oracle for self-verification.
"""

from .core import (CoreQuery, Dataset, Dimension, Document, InstructedQuery,
                   Mode, RankedList, RunSet, ValidationReport, rank_of,
                   score_of, validate_dataset)
from .metrics import GoldContext, MetricConfig
from .harness import DimensionSummary, EvalRecord, evaluate_system

__all__ = [
    "CoreQuery", "Dataset", "Dimension", "DimensionSummary", "Document",
    "EvalRecord", "GoldContext", "InstructedQuery", "MetricConfig", "Mode",
    "RankedList", "RunSet", "ValidationReport", "evaluate_system", "rank_of",
    "score_of", "validate_dataset",
]

__version__ = "0.1.0"
