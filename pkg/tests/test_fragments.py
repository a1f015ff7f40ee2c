import pytest
from hypothesis import given, settings

from oracles import fo_equivalent
from safetyfo import corpus
from safetyfo.fragments import (
    FO_FRAGMENTS,
    LTL_FRAGMENTS,
    FragmentError,
    classify_fo,
    classify_ltl,
    desugar_nonstrict_guards,
    has_nonstrict_guards,
    require_fo,
    require_ltl,
)
from safetyfo.syntax import fo, parse_fo, parse_ltl
from safetyfo.syntax.transform import negate_fo_nnf, negate_nnf
from strategies import cosafety_fo, fo_formulas


def test_until_is_cosafety():
    v = classify_ltl(parse_ltl("a U b"))
    assert v["cosafetyLTL"] and v["cosafetyLTL-no-wX"] and not v["safetyLTL"]


def test_weak_next_offender():
    v = classify_ltl(parse_ltl("a U wX b"))
    assert v["cosafetyLTL"] and not v["cosafetyLTL-no-wX"]
    assert v.offenders["cosafetyLTL-no-wX"] == parse_ltl("wX b")


def test_f_alpha_form():
    v = classify_ltl(parse_ltl("F (a S b)"))
    assert v["F-alpha-form"] and not v["G-alpha-form"]


def test_shortcuts_classified_after_expansion_raw_also_reported():
    v = classify_ltl(parse_ltl("G a"))
    assert v["safetyLTL"] and not v["cosafetyLTL"]
    assert v.raw["safetyLTL"] is False
    assert "raw safetyLTL: false" in v.lines()


def test_verdict_lists_every_fragment():
    assert tuple(classify_ltl(parse_ltl("a")).flags) == LTL_FRAGMENTS
    assert tuple(classify_fo(parse_fo("P(x)")).flags) == FO_FRAGMENTS


def test_fo_existential_is_cosafety():
    v = classify_fo(parse_fo("exists y . (x < y & P(y))"))
    assert v["coSafetyFO"] and not v["SafetyFO"]


def test_fo_unbounded_forall_is_safety():
    v = classify_fo(parse_fo("forall y . (x < y -> P(y))"))
    assert v["SafetyFO"] and not v["coSafetyFO"]


def test_ebfo_sentence():
    assert classify_fo(parse_fo("exists x . (exists y . (y <= x & P(y)))"))["EBFO"]


def test_doubly_bounded_forall_is_cosafety():
    assert classify_fo(parse_fo("forall z . (x < z & z < y -> P(z))"))["coSafetyFO"]


def test_require_raises_with_offender():
    with pytest.raises(FragmentError) as exc:
        require_fo(parse_fo("forall y . (x < y -> P(y))"), "coSafetyFO")
    assert exc.value.offender == parse_fo("forall y . (x < y -> P(y))")
    with pytest.raises(FragmentError):
        require_ltl(parse_ltl("G a"), "cosafetyLTL")


# ---------------------------------------------------------------- desugar


def test_desugar_existential():
    got = desugar_nonstrict_guards(parse_fo("exists y . (x <= y & P(y))"))
    assert got == parse_fo("P(x) | exists y . (x < y & P(y))")


def test_desugar_doubly_bounded_universal():
    f = parse_fo("forall z . (x <= z & z <= y -> P(z))")
    got = desugar_nonstrict_guards(f)
    assert not has_nonstrict_guards(got)
    assert fo_equivalent(f, got, ("p",), 5, ("x", "y")) is None
    # the three-conjunct textbook shape agrees with it whenever x <= y
    textbook = parse_fo("P(x) & P(y) & forall z . (x < z & z < y -> P(z))")
    under = lambda g: fo.Or(fo.Less("y", "x"), g)  # noqa: E731
    assert fo_equivalent(under(got), under(textbook), ("p",), 5, ("x", "y")) is None
    assert fo_equivalent(got, textbook, ("p",), 3, ("x", "y")) is not None


def test_desugar_strict_is_identity():
    f = parse_fo("exists y . (x < y & P(y))")
    assert desugar_nonstrict_guards(f) == f


@settings(max_examples=60, deadline=None)
@given(cosafety_fo(10, free=("x", "y"), exact_free=False))
def test_desugar_preserves_semantics(f):
    g = desugar_nonstrict_guards(f)
    assert fo_equivalent(f, g, ("a", "b"), 4, ("x", "y")) is None


# ------------------------------------------------------- corpus properties

LTL_CORPUS = corpus.ltl_corpus(7, 1000, 12)
FO_CORPUS = corpus.fo_corpus(7, 1000, 12) + corpus.fo_corpus(8, 300, 10, free=("x", "y"))


def test_inclusion_monotone_ltl():
    for f in LTL_CORPUS:
        v = classify_ltl(f)
        if v["cosafetyLTL-no-wX"]:
            assert v["cosafetyLTL"], f
        if v["cosafetyLTL"] or v["safetyLTL"]:
            assert v["LTL-pure-future"], f
        if v["safetyLTL-no-X"]:
            assert v["safetyLTL"], f
        if v["G-alpha-form"] or v["F-alpha-form"]:
            assert v["LTLP"], f


def test_inclusion_monotone_fo():
    for f in FO_CORPUS:
        v = classify_fo(f)
        assert v["FO"]
        if v["EBFO"] or v["UBFO"]:
            assert not fo.free_vars(f)


def test_negation_duality_ltl():
    for f in LTL_CORPUS:
        v, w = classify_ltl(f), classify_ltl(negate_nnf(f))
        assert v["cosafetyLTL"] == w["safetyLTL"], f
        assert v["cosafetyLTL-no-wX"] == w["safetyLTL-no-X"], f


def test_negation_duality_fo():
    for f in FO_CORPUS:
        assert classify_fo(f)["coSafetyFO"]
        g = negate_fo_nnf(f)
        assert classify_fo(g)["SafetyFO"], f
        assert classify_fo(negate_fo_nnf(g))["coSafetyFO"], f


@settings(max_examples=100, deadline=None)
@given(fo_formulas(10))
def test_duality_on_arbitrary_fo(f):
    v, w = classify_fo(f), classify_fo(negate_fo_nnf(f))
    if v["coSafetyFO"]:
        assert w["SafetyFO"]
    if v["SafetyFO"]:
        assert w["coSafetyFO"]
