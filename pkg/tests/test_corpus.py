import random

import pytest

from safetyfo import corpus
from safetyfo.fragments import classify_fo, classify_ltl
from safetyfo.syntax import fo, ltl


def test_seeded_corpora_are_reproducible():
    assert corpus.ltl_corpus(5, 50, 10) == corpus.ltl_corpus(5, 50, 10)
    assert corpus.fo_corpus(5, 50, 10) == corpus.fo_corpus(5, 50, 10)
    assert corpus.ltl_corpus(5, 50, 10) != corpus.ltl_corpus(6, 50, 10)


@pytest.mark.parametrize("kind, check", [
    ("future", ltl.is_pure_future),
    ("past", ltl.is_pure_past),
    ("cosafety", lambda f: classify_ltl(f)["cosafetyLTL-no-wX"]),
])
def test_ltl_kinds(kind, check):
    for f in corpus.ltl_corpus(11, 300, 10, kind=kind):
        assert ltl.size(f) <= 10 and check(f), f


def test_cosafety_fo_shape():
    sizes = set()
    for f in corpus.fo_corpus(12, 300, 10):
        assert classify_fo(f)["coSafetyFO"] and fo.free_vars(f) == {"x"} and fo.size(f) <= 10
        sizes.add(fo.size(f))
    assert len(sizes) >= 5


def test_two_variable_cosafety_fo():
    fs = corpus.fo_corpus(13, 100, 10, free=("x", "y"))
    assert all(fo.free_vars(f) == {"x", "y"} for f in fs)


def test_general_fo_has_no_vacuous_quantifiers():
    for f in corpus.fo_corpus(14, 300, 7, kind="fo"):
        assert fo.free_vars(f) == {"x"} and fo.size(f) <= 7
        for g in fo.walk(f):
            if isinstance(g, fo.QUANTIFIERS):
                assert g.var in fo.free_vars(g.body)


def test_too_small_budget_is_rejected():
    with pytest.raises(ValueError):
        corpus.random_cosafetyfo(random.Random(0), 1)
