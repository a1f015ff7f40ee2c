"""Seeded invariant suite behind ``safetyfo selftest``.

Each check runs a small random corpus through one translation or law and
compares against the enumeration oracle.  Counts are modest so the whole
suite finishes in well under a minute; the test suite runs larger corpora.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import check, corpus
from .fragments import classify_fo, classify_ltl, desugar_nonstrict_guards
from .semantics import all_codes, decode, fo_truth_at, ltl_lasso_truth, ltl_truth
from .syntax.transform import mirror, negate_fo_nnf, weak_next_to_next
from .translate import (
    eliminate_for_finite_to_cosafety,
    eliminate_for_finite_to_safety,
    cosafetyfo_to_ltl,
    ltl_to_fo,
    normal_form,
)
from .translate.normal_form import eval_normal_form

LETTERS = ("a", "b")


@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str
    seconds: float


def _inclusion(seed: int) -> str | None:
    for f in corpus.ltl_corpus(seed, 200, 12):
        v = classify_ltl(f)
        if v["cosafetyLTL-no-wX"] and not (v["cosafetyLTL"] and v["LTL-pure-future"]):
            return f"cosafety inclusion fails for {f}"
        if v["safetyLTL-no-X"] and not (v["safetyLTL"] and v["LTL-pure-future"]):
            return f"safety inclusion fails for {f}"
    return None


def _duality(seed: int) -> str | None:
    for f in corpus.fo_corpus(seed, 100, 12):
        if not classify_fo(negate_fo_nnf(f))["SafetyFO"]:
            return f"negation of {f} is not SafetyFO"
    return None


def _eliminations(seed: int) -> str | None:
    for f in corpus.ltl_corpus(seed, 40, 8):
        for elim in (eliminate_for_finite_to_cosafety, eliminate_for_finite_to_safety):
            r = check.lang_equiv_fin(f, elim(f), LETTERS, 4)
            if not r.ok:
                return f"{elim.__name__}({f}): {r.to_text()}"
    return None


def _ltl_fo(seed: int) -> str | None:
    for f in corpus.ltl_corpus(seed, 40, 8, kind="cosafety"):
        r = check.lang_equiv_fin(f, ltl_to_fo(f), LETTERS, 4)
        if not r.ok:
            return f"ltl_to_fo({f}): {r.to_text()}"
    return None


def _normal_form(seed: int) -> str | None:
    for f in corpus.fo_corpus(seed, 15, 6):
        nf = normal_form(f)
        for n in range(1, 5):
            codes = all_codes(2, n)
            truth = fo_truth_at(f, codes, LETTERS, "x")
            for b in range(codes.shape[0]):
                w = decode(codes[b], LETTERS)
                for i in range(n):
                    if eval_normal_form(nf, w, {"x": i}) != bool(truth[b, i]):
                        return f"normal form of {f} disagrees on {w} at {i}"
    return None


def _round_trip(seed: int) -> str | None:
    for f in corpus.ltl_corpus(seed, 15, 5, kind="cosafety"):
        g = cosafetyfo_to_ltl(ltl_to_fo(f))
        r = check.lang_equiv_fin(f, g, LETTERS, 4)
        if not r.ok:
            return f"round trip of {f}: {r.to_text()}"
    return None


def _mirror(seed: int) -> str | None:
    for f in corpus.ltl_corpus(seed, 40, 8, kind="past"):
        g = mirror(f)
        for n in range(1, 5):
            codes = all_codes(2, n)
            last = ltl_truth(f, codes, LETTERS)[:, -1]
            first = ltl_truth(g, codes[:, ::-1].copy(), LETTERS)[:, 0]
            if not np.array_equal(last, first):
                return f"mirror({f}) disagrees at length {n}"
    return None


def _weak_next(seed: int) -> str | None:
    lassos = list(check.enumerate_lassos(("a",), 4))
    for f in corpus.ltl_corpus(seed, 40, 8, letters=("a",)):
        g = weak_next_to_next(f)
        for w in lassos:
            if ltl_lasso_truth(f, w) != ltl_lasso_truth(g, w):
                return f"{f} and its strong-next version differ on {w}"
    return None


def _witness(seed: int) -> str | None:
    r = check.separation_witness_aa()
    return None if r.ok else r.to_text()


def _desugar(seed: int) -> str | None:
    for f in corpus.fo_corpus(seed, 40, 10):
        r = check.lang_equiv_fin(f, desugar_nonstrict_guards(f), LETTERS, 4)
        if not r.ok:
            return f"desugaring {f}: {r.to_text()}"
    return None


SUITE: list[tuple[str, Callable[[int], str | None]]] = [
    ("fragment-inclusion", _inclusion),
    ("negation-duality", _duality),
    ("desugar-guards", _desugar),
    ("finite-eliminations", _eliminations),
    ("ltl-to-fo", _ltl_fo),
    ("normal-form", _normal_form),
    ("cosafetyfo-round-trip", _round_trip),
    ("mirror", _mirror),
    ("weak-next-on-lassos", _weak_next),
    ("witness-aa", _witness),
]


def run(seed: int = 0) -> list[Outcome]:
    out = []
    for name, fn in SUITE:
        start = time.perf_counter()
        try:
            problem = fn(seed)
        except Exception as exc:  # reported, not raised: the suite keeps going
            problem = f"{type(exc).__name__}: {exc}"
        out.append(Outcome(name, problem is None, problem or "ok", time.perf_counter() - start))
    return out

