import pytest
from hypothesis import given
from hypothesis import strategies as st

from infosearch_eval.core import Mode, RankedList
from infosearch_eval.errors import (BadPermutation, EmptyPassages,
                                    MissingScore, ScoreOutOfRange,
                                    TooManyPassages, Unparseable)
from infosearch_eval.rerank import (apply_rerank, parse_listwise_ranking,
                                    pointwise_to_list, render_listwise_prompt)

from conftest import make_list


def test_render_prompt_structure():
    prompt = render_listwise_prompt("best pizza", ["doc one", "doc two"])
    assert "[1] doc one\n" in prompt.rendered
    assert "[2] doc two" in prompt.rendered
    assert prompt.rendered.count("best pizza") == 2
    assert "[] > []" in prompt.rendered
    assert prompt.rendered.endswith("<|assistant|>\n")


def test_render_prompt_limits():
    with pytest.raises(EmptyPassages):
        render_listwise_prompt("q", [])
    render_listwise_prompt("q", ["p"] * 100)  # top-100 accepted
    with pytest.raises(TooManyPassages):
        render_listwise_prompt("q", ["p"] * 101)


def test_parse_example_output():
    perm = parse_listwise_ranking("[9] > [4] > [20]", 20)
    assert perm[:3] == [9, 4, 20]
    assert perm[3:] == [i for i in range(1, 21) if i not in (9, 4, 20)]
    assert sorted(perm) == list(range(1, 21))


def test_parse_trivial_and_errors():
    assert parse_listwise_ranking("[1]", 1) == [1]
    with pytest.raises(Unparseable):
        parse_listwise_ranking("hello", 3)
    with pytest.raises(Unparseable):
        parse_listwise_ranking("[0] [4]", 3)  # all ids out of range


def test_parse_dedupe_then_complete():
    assert parse_listwise_ranking("[2] > [2] > [1]", 3) == [2, 1, 3]


@given(st.text(alphabet="[]0123456789 >x", max_size=60), st.integers(1, 15))
def test_parse_always_permutation_or_error(raw, m):
    try:
        perm = parse_listwise_ranking(raw, m)
    except Unparseable:
        return
    assert sorted(perm) == list(range(1, m + 1))


def test_parse_round_trip_identity():
    m = 7
    faithful = " > ".join(f"[{i}]" for i in range(1, m + 1))
    assert parse_listwise_ranking(faithful, m) == list(range(1, m + 1))


def test_apply_rerank_identity():
    base = make_list("q", Mode.INSTRUCTED, ["a", "b", "c"])
    out = apply_rerank(base, [1, 2, 3])
    assert [d for d, _ in out.entries] == ["a", "b", "c"]


def test_apply_rerank_reversal_scores():
    base = make_list("q", Mode.INSTRUCTED, ["a", "b", "c"])
    out = apply_rerank(base, [3, 2, 1])
    assert [d for d, _ in out.entries] == ["c", "b", "a"]
    assert [s for _, s in out.entries] == [1.0, 0.5, pytest.approx(1 / 3)]


def test_apply_rerank_stable_suffix():
    base = make_list("q", Mode.INSTRUCTED, [f"d{i:03d}" for i in range(6)])
    out = apply_rerank(base, [3, 1, 2])  # only the top-3 reranked
    assert [d for d, _ in out.entries] == ["d002", "d000", "d001", "d003", "d004", "d005"]


def test_apply_rerank_preserves_multiset():
    base = make_list("q", Mode.INSTRUCTED, ["a", "b", "c", "d"])
    out = apply_rerank(base, [4, 2, 3, 1])
    assert {d for d, _ in out.entries} == {"a", "b", "c", "d"}


def test_apply_rerank_bad_permutation():
    base = make_list("q", Mode.INSTRUCTED, ["a", "b"])
    with pytest.raises(BadPermutation):
        apply_rerank(base, [1, 1])
    with pytest.raises(BadPermutation):
        apply_rerank(base, [1, 2, 3])


def test_pointwise_to_list():
    rl = pointwise_to_list({"a": 0.9, "b": 0.1}, ["a", "b"], "q", Mode.INSTRUCTED)
    assert [d for d, _ in rl.entries] == ["a", "b"]
    tied = pointwise_to_list({"b": 0.5, "a": 0.5}, ["b", "a"], "q", Mode.INSTRUCTED)
    assert [d for d, _ in tied.entries] == ["a", "b"]


def test_pointwise_errors():
    with pytest.raises(MissingScore):
        pointwise_to_list({"a": 0.9}, ["a", "b"], "q", Mode.INSTRUCTED)
    with pytest.raises(ScoreOutOfRange):
        pointwise_to_list({"a": 1.2}, ["a"], "q", Mode.INSTRUCTED)
