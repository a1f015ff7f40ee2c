import pytest
from hypothesis import given, settings

from oracles import ltl_fin, ltl_lasso, words
from safetyfo import check, corpus
from safetyfo.semantics import Word, eval_ltl_fin, parse_lasso
from safetyfo.syntax import parse_fo, parse_ltl
from strategies import cosafety_ltl, future_ltl


# ------------------------------------------------------------ enumeration


def test_word_counts():
    assert [str(w) for w in check.enumerate_words({"a"}, 1)] == ["{}", "{a}"]
    assert len(list(check.enumerate_words({"a"}, 2))) == 2 + 4
    assert len(list(check.enumerate_words({"a", "b"}, 3))) == 4 + 16 + 64


def test_words_are_distinct_and_length_lex_ordered():
    ws = list(check.enumerate_words(("a", "b"), 4))
    assert len(set(ws)) == len(ws)
    assert [len(w) for w in ws] == sorted(len(w) for w in ws)
    assert set(ws) == {Word(w) for w in words(("a", "b"), 4)}


def test_lasso_counts():
    # split points times state choices: sum over total size t of t * 2^(|S| t)
    assert len(list(check.enumerate_lassos(("a",), 4))) == sum(t * 2**t for t in range(1, 5)) == 98
    assert len(list(check.enumerate_lassos(("a", "b"), 4))) == sum(t * 4**t for t in range(1, 5)) == 1252


def test_enumerate_words_rejects_zero_length():
    with pytest.raises(ValueError):
        list(check.enumerate_words(("a",), 0))


# ---------------------------------------------------------- lang_equiv_fin


def test_globally_equals_until_last():
    r = check.lang_equiv_fin(parse_ltl("G a"), parse_ltl("a U (a & wX false)"), ("a",), 5)
    assert r.verdict == check.EQUIVALENT
    assert r.to_text() == "equivalent up to length 5"
    assert r.words_explored == 2 + 4 + 8 + 16 + 32


def test_distinct_atoms_counterexample():
    r = check.lang_equiv_fin(parse_ltl("a"), parse_ltl("b"))
    assert r.verdict == check.COUNTEREXAMPLE
    assert str(r.counterexample) == "{a}" and r.position == 0
    # the reported counterexample really separates the two formulas
    assert eval_ltl_fin(parse_ltl("a"), r.counterexample, 0) != eval_ltl_fin(parse_ltl("b"), r.counterexample, 0)


@given(future_ltl)
def test_reflexive(f):
    assert check.lang_equiv_fin(f, f, ("a", "b"), 3).ok


def test_ltl_against_fo():
    r = check.lang_equiv_fin(parse_ltl("F a"), parse_fo("exists y . (x <= y & A(y))"), ("a",), 4)
    assert r.ok


def test_zero_policy_ignores_later_positions():
    f, g = parse_ltl("a"), parse_ltl("a & wX a | a & X !a")
    assert check.lang_equiv_fin(f, g, ("a",), 4, "zero").ok
    assert not check.lang_equiv_fin(parse_ltl("X a"), parse_ltl("a"), ("a",), 3, "zero").ok


def test_alphabet_must_cover_atoms():
    with pytest.raises(ValueError, match="not in the declared alphabet"):
        check.lang_equiv_fin(parse_ltl("a"), parse_ltl("c"), ("a", "b"))


@settings(max_examples=60, deadline=None)
@given(future_ltl, future_ltl)
def test_equivalence_agrees_with_oracle(f, g):
    r = check.lang_equiv_fin(f, g, ("a", "b"), 3)
    brute = next(
        ((w, i) for w in words(("a", "b"), 3) for i in range(len(w)) if ltl_fin(f, w, i) != ltl_fin(g, w, i)),
        None,
    )
    assert r.ok == (brute is None)
    if brute is not None:
        # first disagreement in length-then-lex order, lowest position
        assert (tuple(r.counterexample), r.position) == brute


def test_determinism():
    f, g = parse_ltl("a U b"), parse_ltl("b | a & X b")
    assert check.lang_equiv_fin(f, g).to_structured() == check.lang_equiv_fin(f, g).to_structured()


def test_monotone_in_bound():
    for f, g in zip(corpus.ltl_corpus(1, 50, 6), corpus.ltl_corpus(2, 50, 6)):
        r3 = check.lang_equiv_fin(f, g, ("a", "b"), 3)
        r5 = check.lang_equiv_fin(f, g, ("a", "b"), 5)
        assert r3.ok or not r5.ok
        if not r3.ok:
            assert r5.counterexample == r3.counterexample


# --------------------------------------------------------- prefix closure


def test_until_closed_under_extension():
    assert check.prefix_closure_check(parse_ltl("a U b"), ("a", "b"), 4, 2).verdict == check.HOLDS


def test_aa_violates_extension():
    r = check.prefix_closure_check(check.AA_FORMULA, ("a",), 4, 2)
    assert r.verdict == check.VIOLATED
    assert str(r.counterexample) == "{a};{a}" and str(r.extension) == "{a}"


def test_false_holds_vacuously():
    r = check.prefix_closure_check(parse_ltl("false"), ("a",), 4, 2)
    assert r.verdict == check.HOLDS and r.words_explored == 0


@settings(max_examples=80, deadline=None)
@given(cosafety_ltl)
def test_cosafety_formulas_are_closed(f):
    assert check.prefix_closure_check(f, ("a", "b"), 3, 2).ok


@settings(max_examples=60, deadline=None)
@given(future_ltl)
def test_prefix_closure_agrees_with_oracle(f):
    r = check.prefix_closure_check(f, ("a", "b"), 3, 1)
    brute = any(
        ltl_fin(f, w, 0) and not ltl_fin(f, w + e, 0) for w in words(("a", "b"), 3) for e in words(("a", "b"), 1)
    )
    assert r.ok == (not brute)


# ----------------------------------------------------------- good prefixes


def test_eventually_has_good_prefix():
    r = check.good_prefix_evidence(parse_ltl("F a"), parse_lasso("{};{a} | {a}"), 3)
    assert r.verdict == check.HOLDS and r.witness == 1


def test_globally_has_none():
    r = check.good_prefix_evidence(parse_ltl("G a"), parse_lasso("{a} | {a}"), 3)
    assert r.verdict == check.VIOLATED
    assert not ltl_lasso(parse_ltl("G a"), r.counterexample.prefix, r.counterexample.loop, 0)


def test_true_witness_zero():
    r = check.good_prefix_evidence(parse_ltl("true"), parse_lasso("| {}"), 3, alphabet=("a",))
    assert r.verdict == check.HOLDS and r.witness == 0


def test_unsatisfied_word_is_violation():
    r = check.good_prefix_evidence(parse_ltl("a"), parse_lasso("| {}"), 3, alphabet=("a",))
    assert r.verdict == check.VIOLATED


# ------------------------------------------------------- separation witness


def test_aa_language():
    assert [str(w) for w in check.enumerate_language(check.AA_FORMULA, ("a",), 4)] == ["{a};{a}"]


def test_separation_witness():
    r = check.separation_witness_aa()
    assert r.ok
    assert len(r.details) == 3 and all(d.endswith("[pass]") for d in r.details)
    assert "98 lassos" in r.details[2]


def test_aa_prefix_language_equals_companion():
    for w in check.enumerate_lassos(("a",), 4):
        member = check.prefix_language_member(check.AA_FORMULA, w, 8)
        assert member == ltl_lasso(check.AA_COMPANION, w.prefix, w.loop, 0)


def test_report_serialisation():
    r = check.lang_equiv_fin(parse_ltl("a"), parse_ltl("b"))
    lines = r.to_structured().splitlines()
    assert lines[0] == "check: lang-equiv"
    assert "counterexample: {a}" in lines and "position: 0" in lines
    assert lines[-1] == "verdict: counterexample"
