import itertools
import random
import re

import numpy as np
import pytest
from hypothesis import given, settings

from oracles import fo_fin, ltl_equivalent, ltl_fin, words
from safetyfo import corpus
from safetyfo.fragments import FragmentError, classify_fo, classify_ltl
from safetyfo.semantics import all_codes, fo_truth_at, ltl_truth, parse_word
from safetyfo.syntax import fo, ltl, parse_fo, parse_ltl
from safetyfo.translate import (
    ExistsForm,
    NormalForm,
    NormalFormBudgetError,
    NormalFormError,
    cosafetyfo_to_ebfo,
    cosafetyfo_to_ltl,
    ebfo_to_cosafetyfo,
    eliminate_for_finite_to_cosafety,
    eliminate_for_finite_to_safety,
    eval_normal_form,
    fo_to_cosafetyfo,
    ltl_to_fo,
    normal_form,
    normal_form_to_fo,
    normalform_to_ltl,
)
from safetyfo.translate.automata import Chain, Dfa, as_chains, chain_expressible, minimize
from strategies import cosafety_fo, cosafety_ltl, fo_formulas, future_ltl

AB = ("a", "b")


# --------------------------------------------------------------- ltl_to_fo


def test_atom():
    assert ltl_to_fo(parse_ltl("p"), "x", "finite") == parse_fo("P(x)")


def test_next_uses_empty_gap_for_successor():
    got = ltl_to_fo(parse_ltl("X p"), "x", "finite")
    assert got == parse_fo("exists y . (x < y & (forall z . (x < z & z < y -> false)) & P(y))")


def test_until_shape_and_semantics():
    f = parse_ltl("a U b")
    got = ltl_to_fo(f, "x", "finite")
    assert got == parse_fo("exists y . (x <= y & B(y) & (forall z . (x <= z & z < y -> A(z))))")
    for w in words(AB, 5):
        for i in range(len(w)):
            assert ltl_fin(f, w, i) == fo_fin(got, w, {"x": i})


def test_finite_mode_refuses_weak_next():
    with pytest.raises(FragmentError):
        ltl_to_fo(parse_ltl("wX a"), "x", "finite")
    assert ltl_to_fo(parse_ltl("wX a"), "x", "infinite") == ltl_to_fo(parse_ltl("X a"), "x", "infinite")


def test_ltl_to_fo_corpus():
    for f in corpus.ltl_corpus(31, 300, 10, kind="cosafety"):
        g = ltl_to_fo(f, "x", "finite")
        assert classify_fo(g)["coSafetyFO"], f
        assert fo.free_vars(g) <= {"x"}
        assert fo.size(g) <= 25 * ltl.size(f)


# ---------------------------------------------------------- eliminations


@pytest.mark.parametrize(
    "src, expected",
    [("G a", "a U (a & wX false)"), ("a R b", "b U (b & wX false) | b U (a & b)"), ("a U b", "a U b")],
)
def test_to_cosafety_examples(src, expected):
    assert eliminate_for_finite_to_cosafety(parse_ltl(src)) == parse_ltl(expected)


@pytest.mark.parametrize(
    "src, expected",
    [("F a", "a R (a | X true)"), ("a U b", "b R (b | X true) & b R (a | b)"), ("a R b", "a R b")],
)
def test_to_safety_examples(src, expected):
    assert eliminate_for_finite_to_safety(parse_ltl(src)) == parse_ltl(expected)


@settings(max_examples=80, deadline=None)
@given(future_ltl)
def test_eliminations_preserve_finite_semantics(f):
    to_co, to_safe = eliminate_for_finite_to_cosafety(f), eliminate_for_finite_to_safety(f)
    assert classify_ltl(to_co)["cosafetyLTL"]
    assert classify_ltl(to_safe)["safetyLTL"]
    assert ltl_equivalent(f, to_co, AB, 5) is None
    assert ltl_equivalent(f, to_safe, AB, 5) is None


# ------------------------------------------------------------- normal form


def test_order_atom_normal_form():
    nf = normal_form(parse_fo("z0 < z1"), free=("z0", "z1"))
    assert nf.disjuncts == (ExistsForm(alphas=(1, 1), betas=(1,), bindings=(("z0", 0), ("z1", 1))),)
    assert str(normal_form_to_fo(nf)) == "exists x . exists x1 . x < x1 & z0 = x & z1 = x1"


def test_predicate_normal_form():
    nf = normal_form(parse_fo("P(z0)"), free=("z0",))
    assert nf.to_structured() == "\n".join(
        [
            "free: z0",
            "letters: p",
            "disjuncts: 1",
            "disjunct 1:",
            "  variables: 1",
            "  bindings: z0=x0",
            "  alpha0: p",
        ]
    )
    assert normalform_to_ltl(nf) == parse_ltl("p")


def test_conjunction_normal_form_oracle():
    f = parse_fo("P(z0) & exists y . (z0 < y & Q(y))")
    nf = normal_form(f, free=("z0",))
    nf.check()
    for w in words(("p", "q"), 5):
        word = parse_word(";".join("{" + ",".join(sorted(s)) + "}" for s in w))
        for i in range(len(w)):
            assert eval_normal_form(nf, word, {"z0": i}) == fo_fin(f, w, {"z0": i})
    assert normalform_to_ltl(nf) == parse_ltl("p & X(true U q)")


def test_false_has_no_disjuncts():
    nf = normal_form(fo.FALSE, free=("x",))
    assert nf.disjuncts == () and normalform_to_ltl(nf) == ltl.FALSE


def _mask(letters, formula):
    n = 1 << len(letters)
    return sum(1 << c for c in range(n) if formula({p for k, p in enumerate(letters) if (c >> k) & 1}))


def test_normalform_to_ltl_degenerate_chain():
    L = ("a",)
    nf = NormalForm(("x",), L, (ExistsForm((_mask(L, lambda s: "a" in s),), (), (("x", 0),)),))
    assert normalform_to_ltl(nf) == parse_ltl("a")


def test_normalform_to_ltl_two_point_chain():
    L = ("a", "b", "c")
    has = lambda p: _mask(L, lambda s: p in s)  # noqa: E731
    nf = NormalForm(("x",), L, (ExistsForm((has("a"), has("c")), (has("b"),), (("x", 0),)),))
    assert normalform_to_ltl(nf) == parse_ltl("a & X(b U c)")


def test_normalform_to_ltl_disjunction():
    L = ("a", "b")
    has = lambda p: _mask(L, lambda s: p in s)  # noqa: E731
    d1 = ExistsForm((has("a"),), (), (("x", 0),))
    d2 = ExistsForm((has("b"), has("a")), (has("b"),), (("x", 0),))
    nf = NormalForm(("x",), L, (d1, d2))
    g = normalform_to_ltl(nf)
    assert not any(isinstance(h, ltl.WeakNext) for h in ltl.walk(g))
    assert ltl_equivalent(g, parse_ltl("a | b & X(b U a)"), L, 5) is None


def test_budget_is_enforced():
    f = ltl_to_fo(parse_ltl("(a U b) U (b U a)"), "x", "finite")
    with pytest.raises(NormalFormBudgetError) as exc:
        normal_form(f, budget=10)
    assert exc.value.budget == 10


def test_non_chain_language_raises():
    # a language outside the chain-union class: X a | b before c
    f = ltl_to_fo(parse_ltl("(X a | b) U c"), "x", "finite")
    with pytest.raises(NormalFormError, match="cannot be put in normal form"):
        normal_form(f)


NF_CORPUS = corpus.fo_corpus(41, 60, 6) + corpus.fo_corpus(42, 40, 6, free=("x", "y"), exact_free=False)


@pytest.mark.parametrize("k", range(0, 100, 10))
def test_normal_form_matches_oracle(k):
    for f in NF_CORPUS[k : k + 10]:
        free = ("r",) + tuple(sorted(fo.free_vars(f)))
        nf = normal_form(f, free=free)
        nf.check()
        for w in words(AB, 4):
            word = parse_word(";".join("{" + ",".join(sorted(s)) + "}" for s in w))
            for vals in itertools.product(range(len(w)), repeat=len(free) - 1):
                env = dict(zip(free[1:], vals), r=0)
                assert eval_normal_form(nf, word, env) == fo_fin(f, w, env), (str(f), w, env)


def test_normal_form_is_deterministic():
    for f in NF_CORPUS[:20]:
        assert normal_form(f) == normal_form(f)


# ------------------------------------------------------- FO to LTL and back


def test_cosafetyfo_to_ltl_examples():
    g = cosafetyfo_to_ltl(parse_fo("exists y . (x < y & P(y))"))
    assert ltl_equivalent(g, parse_ltl("X(true U p)"), ("p",), 5) is None
    assert cosafetyfo_to_ltl(parse_fo("P(x)")) == parse_ltl("p")
    g = cosafetyfo_to_ltl(ltl_to_fo(parse_ltl("a U b"), "x", "finite"))
    assert ltl_equivalent(g, parse_ltl("a U b"), AB, 5) is None


@pytest.mark.parametrize(
    "text", ["(X a | b) U c", "((a & X b) | (b & X (a | c))) U c", "(a U b) U c", "X (a U !b) & F (b & X a)"]
)
def test_round_trip_hard_cases(text):
    f = parse_ltl(text)
    g = cosafetyfo_to_ltl(ltl_to_fo(f, "x", "finite"))
    assert classify_ltl(g)["cosafetyLTL-no-wX"]
    assert ltl_equivalent(f, g, ("a", "b", "c"), 4) is None


@settings(max_examples=60, deadline=None)
@given(cosafety_ltl)
def test_round_trip_property(f):
    g = cosafetyfo_to_ltl(ltl_to_fo(f, "x", "finite"))
    assert classify_ltl(g)["cosafetyLTL-no-wX"]
    assert ltl_equivalent(f, g, AB, 5) is None


@settings(max_examples=60, deadline=None)
@given(cosafety_fo(8))
def test_cosafetyfo_to_ltl_on_fo_input(f):
    g = cosafetyfo_to_ltl(f)
    assert classify_ltl(g)["cosafetyLTL-no-wX"]
    for w in words(AB, 4):
        for i in range(len(w)):
            assert ltl_fin(g, w, i) == fo_fin(f, w, {"x": i})


# ------------------------------------------------------------------ bridges


def test_fo_to_cosafetyfo_example():
    got = fo_to_cosafetyfo(parse_fo("forall z . (v < z -> P(z))"), "v")
    assert got == parse_fo("exists y . (v <= y & (forall z . (v <= z & z <= y -> v < z -> P(z))))")


def test_fo_to_cosafetyfo_vacuous():
    assert fo_to_cosafetyfo(parse_fo("P(v)"), "v") == parse_fo("exists y . (v <= y & P(v))")


def _prefix_closed(f, g, max_len):
    for w in words(AB, max_len):
        some = any(fo_fin(f, w[:m], {"x": 0}) for m in range(1, len(w) + 1))
        if fo_fin(g, w, {"x": 0}) != some:
            return w
    return None


def test_fo_to_cosafetyfo_globally_like():
    f = parse_fo("forall z . (x <= z -> A(z))")
    g = fo_to_cosafetyfo(f, "x")
    assert classify_fo(g)["coSafetyFO"]
    assert _prefix_closed(f, g, 5) is None


@settings(max_examples=80, deadline=None)
@given(fo_formulas(7))
def test_fo_to_cosafetyfo_property(f):
    g = fo_to_cosafetyfo(f, "x")
    assert classify_fo(g)["coSafetyFO"]
    assert _prefix_closed(f, g, 4) is None


def test_cosafetyfo_to_ebfo_examples():
    assert cosafetyfo_to_ebfo(parse_fo("P(x)")) == parse_fo(
        "exists y . exists x . (x <= y & (forall z . (z <= y -> z < x -> false)) & P(x))"
    )
    got = cosafetyfo_to_ebfo(parse_fo("exists w . (x < w & P(w))"))
    assert parse_fo("exists w . (w <= y & x < w & P(w))") in list(fo.walk(got))
    assert classify_fo(got)["EBFO"]


def test_ebfo_to_cosafetyfo_example():
    got = ebfo_to_cosafetyfo(parse_fo("exists x . P(x)"), "v")
    assert got == parse_fo("exists y . (v <= y & (exists x . (v <= x & P(x))))")


def test_bridges_classify_and_are_linear():
    ratios = []
    for f in corpus.fo_corpus(43, 300, 10):
        e = cosafetyfo_to_ebfo(f)
        back = ebfo_to_cosafetyfo(e, "x")
        assert classify_fo(e)["EBFO"] and classify_fo(back)["coSafetyFO"]
        assert fo.size(e) <= 10 * fo.size(f) + 30
        assert fo.size(back) <= 4 * fo.size(e) + 10
        ratios.append(fo.size(back) / fo.size(e))
    assert max(ratios) < 4


def test_bridges_reject_wrong_fragment():
    with pytest.raises(FragmentError):
        cosafetyfo_to_ebfo(parse_fo("forall y . (x < y -> P(y))"))
    with pytest.raises(FragmentError):
        ebfo_to_cosafetyfo(parse_fo("P(x)"), "x")


# ---------------------------------------------------------------- automata


def _chain_regex(ch: Chain, n: int) -> re.Pattern:
    def cls(mask):
        chars = "".join(chr(65 + c) for c in range(n) if (mask >> c) & 1)
        return f"[{chars}]" if chars else "(?!)"

    parts = [cls(ch.stars[0]) + "*"]
    for letter, star in zip(ch.letters, ch.stars[1:]):
        parts += [cls(letter), cls(star) + "*"]
    return re.compile("".join(parts))


def _dfa_of(chains, n):
    """Subset construction written out over regex matching, for tests only."""
    pats = [_chain_regex(c, n) for c in chains]
    member = lambda w: any(p.fullmatch("".join(chr(65 + c) for c in w)) for p in pats)  # noqa: E731
    return member


def test_chain_unions_round_trip_through_as_chains():
    from safetyfo.translate.automata import _chain_step

    rng = random.Random(1)
    n = 3
    full = (1 << n) - 1
    for _ in range(60):
        chains = [
            Chain(tuple(rng.randint(0, full) for _ in range(k + 1)), tuple(rng.randint(1, full) for _ in range(k)))
            for k in (rng.randint(0, 3) for _ in range(rng.randint(1, 3)))
        ]
        # build the DFA by product of the chain NFAs
        start = tuple(frozenset({0}) for _ in chains)
        index, order, delta = {start: 0}, [start], []
        for st in order:
            row = []
            for c in range(n):
                nxt = tuple(_chain_step(ch, s, c) for ch, s in zip(chains, st))
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                row.append(index[nxt])
            delta.append(tuple(row))
        acc = tuple(any(len(ch.letters) in s for ch, s in zip(chains, st)) for st in order)
        d = minimize(Dfa(0, tuple(delta), acc))
        assert chain_expressible(d)
        out = as_chains(d, n)
        want, got = _dfa_of(chains, n), _dfa_of(out, n)
        for m in range(0, 6):
            for w in itertools.product(range(n), repeat=m):
                assert want(w) == got(w) == d.accepts(w)


def test_chain_expressibility_examples():
    ab_star = minimize(Dfa(0, ((1, 2), (2, 0), (2, 2)), (True, False, False)))
    assert not chain_expressible(ab_star)
    a_star_b_star = minimize(Dfa(0, ((0, 1), (2, 1), (2, 2)), (True, True, False)))
    assert chain_expressible(a_star_b_star)


# ------------------------------------------- 300-formula corpora, |w| <= 5


def _at0(f, codes):
    return fo_truth_at(f, codes, AB, "x")[:, 0]


def test_prefix_closure_corpus():
    for f in corpus.fo_corpus(51, 300, 10, kind="fo"):
        g = fo_to_cosafetyfo(f, "x")
        for n in range(1, 6):
            codes = all_codes(2, n)
            some = np.zeros(codes.shape[0], dtype=bool)
            for m in range(1, n + 1):
                some |= _at0(f, np.ascontiguousarray(codes[:, :m]))
            assert np.array_equal(_at0(g, codes), some), str(f)


def test_ebfo_bridge_corpus_on_finite_words():
    # coSafetyFO is closed under extension, so on finite words the sentence
    # (some prefix satisfies f at 0) and f at 0 coincide
    for f in corpus.fo_corpus(52, 300, 10):
        e = cosafetyfo_to_ebfo(f)
        back = ebfo_to_cosafetyfo(e, "x")
        for n in range(1, 6):
            codes = all_codes(2, n)
            want = _at0(f, codes)
            assert np.array_equal(fo_truth_at(e, codes, AB, "x")[:, 0], want), str(f)
            assert np.array_equal(_at0(back, codes), want), str(f)


def test_cosafetyfo_to_ltl_corpus():
    for f in corpus.fo_corpus(53, 300, 10):
        g = cosafetyfo_to_ltl(f)
        assert classify_ltl(g)["cosafetyLTL-no-wX"]
        for n in range(1, 6):
            codes = all_codes(2, n)
            assert np.array_equal(ltl_truth(g, codes, AB), fo_truth_at(f, codes, AB, "x")), str(f)
