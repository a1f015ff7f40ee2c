import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fo_fin, ltl_fin, ltl_lasso, words
from safetyfo import check, corpus
from safetyfo.semantics import (
    LassoWord,
    PastOperatorError,
    UnassignedVariableError,
    Word,
    all_codes,
    decode,
    encode,
    eval_cosafetyfo_lasso,
    eval_fo_fin,
    eval_ltl_fin,
    eval_ltl_lasso,
    fo_truth_at,
    ltl_lasso_truth,
    ltl_truth,
    parse_lasso,
    parse_word,
)
from safetyfo.fragments import FragmentError, desugar_nonstrict_guards
from safetyfo.syntax import parse_fo, parse_ltl
from safetyfo.syntax.transform import weak_next_to_next
from safetyfo.translate import ltl_to_fo
from strategies import any_ltl, cosafety_ltl, fo_formulas, future_ltl

AA = parse_ltl("a & X(a & wX false)")


# ------------------------------------------------------------------ words


def test_word_syntax_round_trip():
    w = parse_word("{a};{};{a,b}")
    assert len(w) == 3 and w[1] == frozenset() and str(w) == "{a};{};{a,b}"
    lasso = parse_lasso("{a};{} | {b}")
    assert (len(lasso.prefix), len(lasso.loop)) == (2, 1)
    assert str(lasso) == "{a};{} | {b}"
    assert str(parse_lasso("| {a}")) == "| {a}"


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        Word(())
    with pytest.raises(ValueError):
        LassoWord((), ())


def test_malformed_state_rejected():
    with pytest.raises(ValueError, match="malformed state"):
        parse_word("{a};b")


def test_lasso_positions():
    w = parse_lasso("{a} | {b};{}")
    assert [w.successor(i) for i in range(3)] == [1, 2, 1]
    assert str(w.unroll(5)) == "{a};{b};{};{b};{}"


def test_encode_decode():
    w = parse_word("{a};{b};{a,b};{}")
    assert decode(encode([w], ("a", "b"))[0], ("a", "b")) == w


# ---------------------------------------------------------- eval_ltl_fin


def test_aa_accepts_exactly_two_steps():
    assert eval_ltl_fin(AA, parse_word("{a};{a}"), 0)
    assert not eval_ltl_fin(AA, parse_word("{a};{a};{a}"), 0)


def test_weak_next_false_marks_last_position():
    assert eval_ltl_fin(parse_ltl("wX false"), parse_word("{a}"), 0)
    w = parse_word("{};{};{}")
    assert [eval_ltl_fin(parse_ltl("wX false"), w, i) for i in range(3)] == [False, False, True]


@settings(max_examples=200, deadline=None)
@given(any_ltl)
def test_vectorised_ltl_matches_oracle(f):
    for n in range(1, 5):
        codes = all_codes(2, n)
        table = ltl_truth(f, codes, ("a", "b"))
        for b in range(codes.shape[0]):
            w = tuple(decode(codes[b], ("a", "b")))
            assert [ltl_fin(f, w, i) for i in range(n)] == list(table[b])


# --------------------------------------------------------- eval_ltl_lasso


def test_lasso_examples():
    assert eval_ltl_lasso(parse_ltl("G a"), parse_lasso("| {a}"))
    w = parse_lasso("{} | {a}")
    assert eval_ltl_lasso(parse_ltl("F a"), w)
    assert not eval_ltl_lasso(parse_ltl("G a"), w)


def test_lasso_next_and_weak_next_agree():
    w = parse_lasso("| {a};{}")
    assert ltl_lasso_truth(parse_ltl("X a"), w) == ltl_lasso_truth(parse_ltl("wX a"), w)


def test_lasso_rejects_past():
    with pytest.raises(PastOperatorError):
        eval_ltl_lasso(parse_ltl("Y a"), parse_lasso("| {a}"))


LASSOS_A = list(check.enumerate_lassos(("a",), 5))
LASSOS_AB = list(check.enumerate_lassos(("a", "b"), 3))


@settings(max_examples=150, deadline=None)
@given(future_ltl)
def test_lasso_evaluator_matches_oracle(f):
    for w in LASSOS_AB:
        got = ltl_lasso_truth(f, w)
        assert got == [ltl_lasso(f, w.prefix, w.loop, i) for i in range(len(w))], str(w)


@settings(max_examples=150, deadline=None)
@given(future_ltl)
def test_weak_next_and_next_agree_on_lassos(f):
    g = weak_next_to_next(f)
    for w in LASSOS_A:
        assert ltl_lasso_truth(f, w) == ltl_lasso_truth(g, w)


# ------------------------------------------------------------ eval_fo_fin


def test_fo_examples():
    assert eval_fo_fin(parse_fo("P(x)"), parse_word("{p}"), {"x": 0})
    assert eval_fo_fin(parse_fo("exists y . (x < y & P(y))"), parse_word("{};{p}"), {"x": 0})
    f = parse_fo("forall y . (x < y & y < z -> P(y))")
    assert eval_fo_fin(f, parse_word("{};{}"), {"x": 0, "z": 1})


def test_fo_missing_assignment():
    with pytest.raises(UnassignedVariableError):
        eval_fo_fin(parse_fo("P(x) & Q(y)"), parse_word("{p}"), {"x": 0})
    with pytest.raises(IndexError):
        eval_fo_fin(parse_fo("P(x)"), parse_word("{p}"), {"x": 3})


@settings(max_examples=150, deadline=None)
@given(fo_formulas(10), st.sampled_from([1, 2, 3, 4]))
def test_fo_table_matches_oracle(f, n):
    codes = all_codes(2, n)
    table = fo_truth_at(f, codes, ("a", "b"), "x")
    for b in range(codes.shape[0]):
        w = tuple(decode(codes[b], ("a", "b")))
        assert [fo_fin(f, w, {"x": i}) for i in range(n)] == list(table[b])


# --------------------------------------------------- eval_cosafetyfo_lasso


def test_cosafety_lasso_witness_length():
    f = desugar_nonstrict_guards(parse_fo("exists y . (x <= y & P(y))"))
    r = eval_cosafetyfo_lasso(f, parse_lasso("{} | {p}"), {"x": 0}, 4)
    assert r.satisfied and r.prefix_length == 2
    # brute force: the shortest satisfying prefix really is of length 2
    assert not eval_fo_fin(f, parse_word("{}"), {"x": 0})
    assert str(r) == "true (witness prefix length 2)"


def test_cosafety_lasso_unknown():
    r = eval_cosafetyfo_lasso(parse_fo("exists y . (x < y & P(y))"), parse_lasso("| {}"), {"x": 0}, 8)
    assert not r.satisfied and str(r) == "unknown at 8"


def test_cosafety_lasso_immediate():
    r = eval_cosafetyfo_lasso(parse_fo("P(x)"), parse_lasso("{p,q} | {}"), {"x": 0}, 1)
    assert r.satisfied and r.prefix_length == 1


def test_cosafety_lasso_rejects_other_fragments():
    with pytest.raises(FragmentError):
        eval_cosafetyfo_lasso(parse_fo("forall y . (x < y -> P(y))"), parse_lasso("| {p}"), {"x": 0}, 3)


# --------------------------------------------------- properties on corpora

COSAFETY = corpus.ltl_corpus(21, 300, 8, kind="cosafety")


def test_prefix_extension():
    for f in COSAFETY:
        for n in range(1, 5):
            codes = all_codes(2, n)
            sat = ltl_truth(f, codes, ("a", "b"))[:, 0]
            for m in (1, 2):
                ext = all_codes(2, m)
                longer = np.concatenate(
                    [np.repeat(codes, ext.shape[0], axis=0), np.tile(ext, (codes.shape[0], 1))], axis=1
                )
                ok = ltl_truth(f, longer, ("a", "b"))[:, 0].reshape(codes.shape[0], -1)
                assert np.all(ok[sat]), f


def test_suffix_independence_on_lassos():
    lassos = list(check.enumerate_lassos(("a", "b"), 4))
    bounds = [len(w.prefix) + 3 * len(w.loop) for w in lassos]
    # the unrolled prefixes of every lasso, batched by length
    batches = {
        k: (np.asarray([i for i, b in enumerate(bounds) if b >= k]),
            encode([w.unroll(k) for w, b in zip(lassos, bounds) if b >= k], ("a", "b")))
        for k in range(1, max(bounds) + 1)
    }
    for f in COSAFETY[:150]:
        some_prefix = np.zeros(len(lassos), dtype=bool)
        for k, (idx, codes) in batches.items():
            some_prefix[idx] |= ltl_truth(f, codes, ("a", "b"))[:, 0]
        on_lasso = np.asarray([ltl_lasso_truth(f, w)[0] for w in lassos])
        assert np.array_equal(on_lasso, some_prefix), str(f)


@settings(max_examples=100, deadline=None)
@given(cosafety_ltl)
def test_ltl_and_fo_cross_validate(f):
    g = ltl_to_fo(f, "x", "finite")
    for w in words(("a", "b"), 4):
        for i in range(len(w)):
            assert ltl_fin(f, w, i) == fo_fin(g, w, {"x": i})
