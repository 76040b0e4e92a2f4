import pytest
from hypothesis import given
from hypothesis import strategies as st

from infosearch_eval.core import (Dimension, Document, InstructedQuery, Mode,
                                  RankedList, rank_of, score_of,
                                  validate_dataset)

from conftest import make_list


def test_rank_of_basic():
    rl = RankedList("q", Mode.ORIGINAL, [("a", 0.9), ("b", 0.5)])
    assert rank_of(rl, "b") == 2
    assert rank_of(rl, "a") == 1
    assert rank_of(rl, "c") is None


def test_rank_of_tie_broken_by_doc_id():
    rl = RankedList("q", Mode.ORIGINAL, [("b", 0.9), ("a", 0.9)])
    assert rank_of(rl, "a") == 1
    assert rank_of(rl, "b") == 2


def test_score_of():
    rl = RankedList("q", Mode.ORIGINAL, [("a", 0.9)])
    assert score_of(rl, "a") == 0.9
    assert score_of(rl, "missing") is None
    neg = RankedList("q", Mode.ORIGINAL, [("a", -0.2)])
    assert score_of(neg, "a") == -0.2


def test_duplicate_doc_rejected():
    with pytest.raises(ValueError):
        RankedList("q", Mode.ORIGINAL, [("a", 0.9), ("a", 0.5)])


entries_st = st.lists(
    st.tuples(st.integers(0, 30).map(lambda i: f"d{i:02d}"),
              st.floats(-10, 10, allow_nan=False)),
    unique_by=lambda e: e[0], max_size=20)


@given(entries_st)
def test_canonicalization_idempotent(entries):
    once = RankedList("q", Mode.ORIGINAL, entries)
    twice = RankedList("q", Mode.ORIGINAL, list(once.entries))
    assert once.entries == twice.entries


@given(entries_st)
def test_rank_of_is_bijection(entries):
    rl = RankedList("q", Mode.ORIGINAL, entries)
    ranks = [rank_of(rl, doc_id) for doc_id, _ in rl.entries]
    assert sorted(ranks) == list(range(1, len(rl.entries) + 1))


def test_validate_desk_dataset(desk_dataset):
    report = validate_dataset(desk_dataset)
    assert report.ok
    assert report.counts[Dimension.AUDIENCE] == (1, 2, 2, 4)
    assert report.counts[Dimension.FORMAT] == (1, 2, 2, 4)
    assert report.totals() == (2, 4, 4, 8)


def test_validate_detects_bad_gold(desk_dataset):
    bad = desk_dataset.instructed_queries["c0-q0"]
    desk_dataset.instructed_queries["c0-q0"] = InstructedQuery(
        query_id=bad.query_id, core_id=bad.core_id, dimension=bad.dimension,
        condition=bad.condition, instructed_text=bad.instructed_text,
        reversed_text=bad.reversed_text, gold_doc_id="d7")
    report = validate_dataset(desk_dataset)
    assert any("c0-q0" in v and "gold" in v for v in report.violations)


def test_validate_detects_empty_text(desk_dataset):
    desk_dataset.documents["d0"] = Document("d0", "", Dimension.AUDIENCE, "Layman")
    assert not validate_dataset(desk_dataset).ok


def test_validate_detects_duplicate_condition(desk_dataset):
    iq = desk_dataset.instructed_queries["c0-q1"]
    desk_dataset.instructed_queries["c0-q1"] = InstructedQuery(
        query_id=iq.query_id, core_id=iq.core_id, dimension=iq.dimension,
        condition="Layman", instructed_text=iq.instructed_text,
        reversed_text=iq.reversed_text, gold_doc_id=iq.gold_doc_id)
    report = validate_dataset(desk_dataset)
    assert any("duplicate (core_id, condition)" in v for v in report.violations)
