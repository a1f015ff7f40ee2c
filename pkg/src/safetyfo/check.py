"""Bounded, enumeration-based checks.

Everything here is a brute-force search over small words: language
equivalence, the prefix-extension property, good-prefix evidence on lasso
words, and the ``{aa}`` separation example.  Reports carry the smallest
counterexample in length-lexicographic order, and every counterexample is
re-evaluated with the reference semantics before it is reported.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .semantics import (
    LassoWord,
    Word,
    all_codes,
    decode,
    eval_fo_fin,
    eval_ltl_fin,
    eval_ltl_lasso,
    fo_truth_at,
    ltl_truth,
)
from .syntax import fo, ltl

AnyFormula = Union[ltl.Formula, fo.FoFormula]

EQUIVALENT = "equivalent-up-to-bound"
COUNTEREXAMPLE = "counterexample"
HOLDS = "property-holds-up-to-bound"
VIOLATED = "property-violated"


@dataclass
class CheckReport:
    verdict: str
    check: str
    alphabet: tuple[str, ...]
    bounds: dict[str, int]
    counterexample: Word | LassoWord | None = None
    position: int | None = None
    extension: Word | LassoWord | None = None
    witness: int | None = None
    details: list[str] = field(default_factory=list)
    words_explored: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict in (EQUIVALENT, HOLDS)

    def _fields(self) -> list[tuple[str, str]]:
        out = [("check", self.check), ("alphabet", "{" + ",".join(self.alphabet) + "}")]
        out += [(k.replace("_", "-"), str(v)) for k, v in self.bounds.items()]
        if self.counterexample is not None:
            out.append(("counterexample", str(self.counterexample)))
        if self.position is not None:
            out.append(("position", str(self.position)))
        if self.extension is not None:
            out.append(("extension", str(self.extension)))
        if self.witness is not None:
            out.append(("witness", str(self.witness)))
        out += [("detail", d) for d in self.details]
        out.append(("words-explored", str(self.words_explored)))
        return out

    def to_structured(self) -> str:
        lines = [f"{k}: {v}" for k, v in self._fields()]
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)

    def to_text(self) -> str:
        if self.verdict == EQUIVALENT:
            head = f"equivalent up to length {self.bounds.get('max_len')}"
        elif self.verdict == COUNTEREXAMPLE:
            head = f"counterexample: {self.counterexample} at position {self.position}"
        elif self.verdict == HOLDS:
            head = "property holds up to bound"
            if self.witness is not None:
                head += f" (witness i={self.witness})"
        else:
            head = "property violated"
            if self.counterexample is not None:
                head += f": {self.counterexample}"
            if self.extension is not None:
                head += f" extended by {self.extension}"
        return "\n".join([head] + [f"  {d}" for d in self.details])

    def __str__(self) -> str:
        return self.to_text()


# ------------------------------------------------------------- enumeration


def resolve_alphabet(formulas: Iterable[AnyFormula], alphabet: Iterable[str] | None = None) -> tuple[str, ...]:
    """Sorted alphabet: the declared one, or the letters of the formulas."""
    used: set[str] = set()
    for f in formulas:
        used |= set(ltl.atoms(f)) if isinstance(f, ltl.Formula) else set(fo.letters(f))
    if alphabet is None:
        return tuple(sorted(used))
    declared = set(alphabet)
    extra = used - declared
    if extra:
        raise ValueError(f"letters {sorted(extra)} are not in the declared alphabet {sorted(declared)}")
    return tuple(sorted(declared))


def enumerate_words(alphabet: Iterable[str], max_len: int) -> Iterator[Word]:
    """Every word of length 1..max_len, by length and then lexicographically
    (states ordered by their bit code, so ``{}`` comes first)."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    letters = tuple(sorted(alphabet))
    states = [frozenset(p for k, p in enumerate(letters) if (c >> k) & 1) for c in range(1 << len(letters))]
    for n in range(1, max_len + 1):
        for combo in itertools.product(states, repeat=n):
            yield Word(combo)


def enumerate_lassos(alphabet: Iterable[str], max_size: int) -> Iterator[LassoWord]:
    """Every lasso ``u . v^omega`` with ``|u| + |v| <= max_size`` and ``|v| >= 1``,
    by total size, then prefix length, then lexicographically."""
    letters = tuple(sorted(alphabet))
    states = [frozenset(p for k, p in enumerate(letters) if (c >> k) & 1) for c in range(1 << len(letters))]
    for total in range(1, max_size + 1):
        for pre_len in range(total):
            for combo in itertools.product(states, repeat=total):
                yield LassoWord(combo[:pre_len], combo[pre_len:])


def _truth(f: AnyFormula, codes: np.ndarray, letters: tuple[str, ...]) -> np.ndarray:
    if isinstance(f, ltl.Formula):
        return ltl_truth(f, codes, letters)
    free = fo.free_vars(f)
    if len(free) > 1:
        raise ValueError(f"first-order input must have at most one free variable, got {sorted(free)}")
    var = next(iter(free)) if free else "x"
    return fo_truth_at(f, codes, letters, var)


def _holds(f: AnyFormula, w: Word, i: int) -> bool:
    if isinstance(f, ltl.Formula):
        return eval_ltl_fin(f, w, i)
    free = fo.free_vars(f)
    return eval_fo_fin(f, w, {v: i for v in free})


def enumerate_language(
    f: AnyFormula, alphabet: Iterable[str] | None = None, max_len: int = 4, position: int = 0
) -> list[Word]:
    """Words of length at most ``max_len`` satisfying ``f`` at ``position``."""
    letters = resolve_alphabet([f], alphabet)
    out = []
    for n in range(position + 1, max_len + 1):
        codes = all_codes(len(letters), n)
        hits = np.nonzero(_truth(f, codes, letters)[:, position])[0]
        out.extend(decode(codes[b], letters) for b in hits)
    return out


# ------------------------------------------------------------- equivalence


def lang_equiv_fin(
    f1: AnyFormula,
    f2: AnyFormula,
    alphabet: Iterable[str] | None = None,
    max_len: int = 5,
    positions: str = "all",
) -> CheckReport:
    """Compare two formulas on every word up to ``max_len``.

    ``positions`` is ``"all"`` (every position of every word) or ``"zero"``.
    First-order inputs may have one free variable, which takes the position.
    """
    if positions not in ("all", "zero"):
        raise ValueError("positions must be 'all' or 'zero'")
    start = time.perf_counter()
    letters = resolve_alphabet([f1, f2], alphabet)
    explored = 0
    bounds = {"max_len": max_len}
    for n in range(1, max_len + 1):
        codes = all_codes(len(letters), n)
        diff = _truth(f1, codes, letters) != _truth(f2, codes, letters)
        if positions == "zero":
            diff = diff[:, :1]
        bad = np.argwhere(diff)
        if bad.size:
            b, i = (int(v) for v in bad[0])
            explored += b + 1
            w = decode(codes[b], letters)
            assert _holds(f1, w, i) != _holds(f2, w, i), "counterexample failed re-evaluation"
            return CheckReport(
                COUNTEREXAMPLE, "lang-equiv", letters, bounds, counterexample=w, position=i,
                details=[f"left: {str(_holds(f1, w, i)).lower()}", f"right: {str(_holds(f2, w, i)).lower()}"],
                words_explored=explored, seconds=time.perf_counter() - start,
            )
        explored += codes.shape[0]
    return CheckReport(EQUIVALENT, "lang-equiv", letters, bounds,
                       words_explored=explored, seconds=time.perf_counter() - start)


# ---------------------------------------------------------- prefix closure


def prefix_closure_check(
    f: AnyFormula, alphabet: Iterable[str] | None = None, max_len: int = 4, max_ext: int = 2
) -> CheckReport:
    """Does every satisfying word of length at most ``max_len`` stay satisfying
    (at position 0) after appending any nonempty word of length at most ``max_ext``?

    Violations are reported for the first satisfying word in length-lex order;
    for that word, extensions are tried by length and, within a length, from
    the fullest state down.
    """
    start = time.perf_counter()
    letters = resolve_alphabet([f], alphabet)
    k = 1 << len(letters)
    at0 = {n: _truth(f, all_codes(len(letters), n), letters)[:, 0] for n in range(1, max_len + max_ext + 1)}
    bounds = {"max_len": max_len, "max_ext": max_ext}
    explored = 0
    for n in range(1, max_len + 1):
        codes = all_codes(len(letters), n)
        for b in np.nonzero(at0[n])[0]:
            explored += 1
            for e in range(1, max_ext + 1):
                ext_codes = all_codes(len(letters), e)[::-1]
                for ext in ext_codes:
                    idx = int(b) * k**e + int(sum(int(c) * k ** (e - 1 - j) for j, c in enumerate(ext)))
                    explored += 1
                    if not at0[n + e][idx]:
                        sigma = decode(codes[b], letters)
                        tail = decode(ext, letters)
                        assert _holds(f, sigma, 0) and not _holds(f, sigma + tail, 0)
                        return CheckReport(
                            VIOLATED, "prefix-closure", letters, bounds,
                            counterexample=sigma, extension=tail,
                            details=[f"{sigma} satisfies the formula but {sigma + tail} does not"],
                            words_explored=explored, seconds=time.perf_counter() - start,
                        )
    return CheckReport(HOLDS, "prefix-closure", letters, bounds,
                       words_explored=explored, seconds=time.perf_counter() - start)


# ------------------------------------------------------------ good prefixes


def good_prefix_evidence(
    f: ltl.Formula,
    w: LassoWord,
    max_prefix: int = 4,
    ext_bound: int = 3,
    alphabet: Iterable[str] | None = None,
) -> CheckReport:
    """Search for ``i <= max_prefix`` such that the first ``i + 1`` states of
    ``w`` followed by any lasso of size at most ``ext_bound`` satisfy ``f``.

    A found ``i`` is evidence only: longer continuations are not examined.
    """
    start = time.perf_counter()
    letters = resolve_alphabet([f], alphabet) if alphabet is not None else tuple(
        sorted(set(ltl.atoms(f)) | set(w.letters()))
    )
    bounds = {"max_prefix": max_prefix, "ext_bound": ext_bound}
    if not eval_ltl_lasso(f, w, 0):
        return CheckReport(VIOLATED, "good-prefix", letters, bounds, counterexample=w,
                           details=["the lasso word does not satisfy the formula"],
                           seconds=time.perf_counter() - start)
    continuations = list(enumerate_lassos(letters, ext_bound))
    explored = 0
    first_bad = None
    for i in range(max_prefix + 1):
        head = w.unroll(i + 1)
        bad = None
        for rho in continuations:
            explored += 1
            if not eval_ltl_lasso(f, rho.after(head), 0):
                bad = rho
                break
        if bad is None:
            return CheckReport(HOLDS, "good-prefix", letters, bounds, witness=i,
                               details=[f"prefix {head} is good for all {len(continuations)} continuations"],
                               words_explored=explored, seconds=time.perf_counter() - start)
        if first_bad is None:
            first_bad = (head, bad)
    head, bad = first_bad
    return CheckReport(
        VIOLATED, "good-prefix", letters, bounds, counterexample=bad.after(w.unroll(max_prefix + 1)),
        details=[f"no good prefix up to i={max_prefix}; e.g. {head} continued by {bad} fails"],
        words_explored=explored, seconds=time.perf_counter() - start,
    )


# ------------------------------------------------------ separation witness

AA_FORMULA = ltl.And(ltl.Atom("a"), ltl.Next(ltl.And(ltl.Atom("a"), ltl.WeakNext(ltl.FALSE))))
AA_COMPANION = ltl.And(ltl.Atom("a"), ltl.Next(ltl.Atom("a")))


def prefix_language_member(f: AnyFormula, w: LassoWord, bound: int) -> bool:
    """Is some prefix of ``w`` of length at most ``bound`` satisfying ``f`` at 0?"""
    return any(_holds(f, w.unroll(n), 0) for n in range(1, bound + 1))


def separation_witness_aa(alphabet: Sequence[str] = ("a",), max_len: int = 4, lasso_size: int = 4) -> CheckReport:
    """The formula ``a & X(a & wX false)``: its finite language is ``{a}{a}``
    alone, it is not closed under extension, and yet as a set of good
    prefixes it defines the same infinite words as ``a & X a``."""
    start = time.perf_counter()
    letters = tuple(sorted(alphabet))
    details = []
    ok = True

    lang = enumerate_language(AA_FORMULA, letters, max_len)
    expected = [Word((frozenset({"a"}), frozenset({"a"})))]
    part1 = lang == expected
    ok &= part1
    details.append(
        f"(i) finite language up to length {max_len}: {{{', '.join(str(x) for x in lang)}}} "
        f"[{'pass' if part1 else 'FAIL'}]"
    )

    pc = prefix_closure_check(AA_FORMULA, letters, max_len, 2)
    aa, a = expected[0], Word((frozenset({"a"}),))
    part2 = pc.verdict == VIOLATED and pc.counterexample == aa and pc.extension == a
    ok &= part2
    details.append(
        f"(ii) extension property violated: sigma={pc.counterexample}, sigma'={pc.extension} "
        f"[{'pass' if part2 else 'FAIL'}]"
    )

    lassos = list(enumerate_lassos(letters, lasso_size))
    mismatches = []
    for w in lassos:
        k = len(w) + 2
        if prefix_language_member(AA_FORMULA, w, k) != prefix_language_member(AA_COMPANION, w, k):
            mismatches.append(w)
    part3 = not mismatches
    ok &= part3
    details.append(
        f"(iii) agreement with a & X a on {len(lassos)} lassos of size <= {lasso_size} "
        f"[{'pass' if part3 else 'FAIL'}]"
    )
    return CheckReport(
        HOLDS if ok else VIOLATED, "witness-aa", letters,
        {"max_len": max_len, "lasso_size": lasso_size},
        counterexample=mismatches[0] if mismatches else None,
        details=details, words_explored=len(lassos) + pc.words_explored,
        seconds=time.perf_counter() - start,
    )
