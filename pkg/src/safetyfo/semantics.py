"""Reference semantics: finite words, lasso words, and evaluators for LTL with
past and for first-order logic on words.

The evaluators are deliberately direct.  Temporal formulas are evaluated
bottom-up into one truth vector per subformula; FO formulas are evaluated into
a truth table indexed by the values of their free variables.  Both work on a
batch of equal-length words at once (an integer array of state codes, one bit
per letter), which is what the enumeration checks in ``check`` feed them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .syntax import fo, ltl

State = frozenset


# ------------------------------------------------------------------ words


def _state_str(s: frozenset) -> str:
    return "{" + ",".join(sorted(s)) + "}"


@dataclass(frozen=True)
class Word:
    """A nonempty finite word over the powerset of an alphabet."""

    states: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(frozenset(s) for s in self.states))
        if not self.states:
            raise ValueError("words are nonempty")

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def __iter__(self):
        return iter(self.states)

    def __add__(self, other: Word) -> Word:
        return Word(self.states + tuple(other))

    def __str__(self) -> str:
        return ";".join(_state_str(s) for s in self.states)

    def reverse(self) -> Word:
        return Word(self.states[::-1])

    def prefix(self, length: int) -> Word:
        return Word(self.states[:length])

    def letters(self) -> frozenset[str]:
        return frozenset().union(*self.states)


@dataclass(frozen=True)
class LassoWord:
    """The infinite word ``prefix . loop^omega``; the loop is nonempty."""

    prefix: tuple[frozenset, ...]
    loop: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(frozenset(s) for s in self.prefix))
        object.__setattr__(self, "loop", tuple(frozenset(s) for s in self.loop))
        if not self.loop:
            raise ValueError("lasso loop must be nonempty")

    def __len__(self) -> int:
        """Number of distinct residual positions."""
        return len(self.prefix) + len(self.loop)

    def state(self, i: int) -> frozenset:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.loop[(i - len(self.prefix)) % len(self.loop)]

    def successor(self, i: int) -> int:
        return i + 1 if i + 1 < len(self) else len(self.prefix)

    def unroll(self, length: int) -> Word:
        return Word(tuple(self.state(i) for i in range(length)))

    def after(self, finite: Word) -> LassoWord:
        """The lasso ``finite . self``."""
        return LassoWord(tuple(finite) + self.prefix, self.loop)

    def __str__(self) -> str:
        pre = ";".join(_state_str(s) for s in self.prefix)
        loop = ";".join(_state_str(s) for s in self.loop)
        return f"{pre} | {loop}" if pre else f"| {loop}"

    def letters(self) -> frozenset[str]:
        return frozenset().union(*self.prefix, *self.loop)


_STATE_RE = re.compile(r"\s*\{([^{}]*)\}\s*")


def _parse_states(text: str) -> tuple[frozenset, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for chunk in text.split(";"):
        m = _STATE_RE.fullmatch(chunk)
        if m is None:
            raise ValueError(f"malformed state {chunk.strip()!r}; expected e.g. {{a,b}} or {{}}")
        names = [n.strip() for n in m.group(1).split(",") if n.strip()]
        out.append(frozenset(names))
    return tuple(out)


def parse_word(text: str) -> Word:
    """Parse ``{a};{};{a,b}``."""
    return Word(_parse_states(text))


def parse_lasso(text: str) -> LassoWord:
    """Parse ``prefix | loop`` such as ``{a};{} | {b}`` (the prefix may be empty)."""
    if text.count("|") != 1:
        raise ValueError("a lasso is written 'prefix | loop'")
    pre, loop = text.split("|")
    return LassoWord(_parse_states(pre), _parse_states(loop))


# --------------------------------------------------------------- encoding


def encode(words: Iterable[Word], letters: tuple[str, ...]) -> np.ndarray:
    """Stack equal-length words into an int array of state codes."""
    index = {p: k for k, p in enumerate(letters)}
    rows = [[sum(1 << index[p] for p in s if p in index) for s in w] for w in words]
    return np.asarray(rows, dtype=np.int64)


def decode(code_row, letters: tuple[str, ...]) -> Word:
    return Word(
        tuple(frozenset(p for k, p in enumerate(letters) if (int(c) >> k) & 1) for c in code_row)
    )


def all_codes(n_letters: int, length: int) -> np.ndarray:
    """Every word of the given length as a code array, in lexicographic order
    (first position most significant; state order is by code)."""
    base = 1 << n_letters
    return np.asarray(list(itertools.product(range(base), repeat=length)), dtype=np.int64).reshape(
        -1, length
    )


def _letter_bits(codes: np.ndarray, letters: tuple[str, ...], letter: str) -> np.ndarray:
    if letter not in letters:
        return np.zeros(codes.shape, dtype=bool)
    return ((codes >> letters.index(letter)) & 1).astype(bool)


# --------------------------------------------------------------- LTL, finite


def ltl_truth(f: ltl.Formula, codes: np.ndarray, letters: tuple[str, ...]) -> np.ndarray:
    """Truth value of ``f`` at every position of every word; shape ``codes.shape``."""
    cache: dict[ltl.Formula, np.ndarray] = {}
    n = codes.shape[1]

    def ev(g: ltl.Formula) -> np.ndarray:
        hit = cache.get(g)
        if hit is not None:
            return hit
        out = _ltl_node(g, ev, codes, letters, n)
        cache[g] = out
        return out

    return ev(f)


def _ltl_node(g, ev, codes, letters, n) -> np.ndarray:
    shape = codes.shape
    if isinstance(g, ltl.Atom):
        return _letter_bits(codes, letters, g.name)
    if isinstance(g, ltl.TrueF):
        return np.ones(shape, dtype=bool)
    if isinstance(g, ltl.FalseF):
        return np.zeros(shape, dtype=bool)
    if isinstance(g, ltl.Not):
        return ~ev(g.arg)
    if isinstance(g, ltl.And):
        return ev(g.left) & ev(g.right)
    if isinstance(g, ltl.Or):
        return ev(g.left) | ev(g.right)
    if isinstance(g, ltl.Implies):
        return ~ev(g.left) | ev(g.right)
    if isinstance(g, (ltl.Next, ltl.WeakNext)):
        v = ev(g.arg)
        out = np.empty(shape, dtype=bool)
        out[:, :-1] = v[:, 1:]
        out[:, -1] = isinstance(g, ltl.WeakNext)
        return out
    if isinstance(g, (ltl.Yesterday, ltl.WeakYesterday)):
        v = ev(g.arg)
        out = np.empty(shape, dtype=bool)
        out[:, 1:] = v[:, :-1]
        out[:, 0] = isinstance(g, ltl.WeakYesterday)
        return out
    if isinstance(g, ltl.Eventually):
        return np.flip(np.logical_or.accumulate(np.flip(ev(g.arg), 1), axis=1), 1)
    if isinstance(g, ltl.Globally):
        return np.flip(np.logical_and.accumulate(np.flip(ev(g.arg), 1), axis=1), 1)
    if isinstance(g, ltl.Once):
        return np.logical_or.accumulate(ev(g.arg), axis=1)
    if isinstance(g, ltl.Historically):
        return np.logical_and.accumulate(ev(g.arg), axis=1)
    v1, v2 = ev(g.left), ev(g.right)
    out = np.empty(shape, dtype=bool)
    if isinstance(g, ltl.Until):
        out[:, n - 1] = v2[:, n - 1]
        for i in range(n - 2, -1, -1):
            out[:, i] = v2[:, i] | (v1[:, i] & out[:, i + 1])
    elif isinstance(g, ltl.Release):
        out[:, n - 1] = v2[:, n - 1]
        for i in range(n - 2, -1, -1):
            out[:, i] = v2[:, i] & (v1[:, i] | out[:, i + 1])
    elif isinstance(g, ltl.Since):
        out[:, 0] = v2[:, 0]
        for i in range(1, n):
            out[:, i] = v2[:, i] | (v1[:, i] & out[:, i - 1])
    elif isinstance(g, ltl.Triggered):
        out[:, 0] = v2[:, 0]
        for i in range(1, n):
            out[:, i] = v2[:, i] & (v1[:, i] | out[:, i - 1])
    else:  # pragma: no cover
        raise TypeError(f"unknown node {g!r}")
    return out


def eval_ltl_fin(f: ltl.Formula, w: Word, i: int = 0) -> bool:
    """``w, i |= f`` over the finite word ``w``."""
    if not 0 <= i < len(w):
        raise IndexError(f"position {i} outside word of length {len(w)}")
    letters = tuple(sorted(ltl.atoms(f)))
    return bool(ltl_truth(f, encode([w], letters), letters)[0, i])


# ---------------------------------------------------------------- LTL, lasso


class PastOperatorError(ValueError):
    pass


def ltl_lasso_truth(f: ltl.Formula, w: LassoWord) -> list[bool]:
    """Truth of a pure-future formula at each of the ``len(w)`` residual positions."""
    if not ltl.is_pure_future(f):
        raise PastOperatorError("lasso evaluation is defined for pure-future formulas only")
    size = len(w)
    succ = [w.successor(j) for j in range(size)]
    cache: dict[ltl.Formula, list[bool]] = {}

    def ev(g: ltl.Formula) -> list[bool]:
        if g in cache:
            return cache[g]
        if isinstance(g, ltl.Atom):
            out = [g.name in w.state(j) for j in range(size)]
        elif isinstance(g, ltl.TrueF):
            out = [True] * size
        elif isinstance(g, ltl.FalseF):
            out = [False] * size
        elif isinstance(g, ltl.Not):
            out = [not b for b in ev(g.arg)]
        elif isinstance(g, ltl.And):
            out = [a and b for a, b in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, ltl.Or):
            out = [a or b for a, b in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, ltl.Implies):
            out = [(not a) or b for a, b in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, (ltl.Next, ltl.WeakNext)):
            v = ev(g.arg)
            out = [v[succ[j]] for j in range(size)]
        elif isinstance(g, ltl.Eventually):
            out = _fixpoint([True] * size, ev(g.arg), succ, least=True)
        elif isinstance(g, ltl.Globally):
            out = _fixpoint([False] * size, ev(g.arg), succ, least=False)
        elif isinstance(g, ltl.Until):
            out = _fixpoint(ev(g.left), ev(g.right), succ, least=True)
        elif isinstance(g, ltl.Release):
            out = _fixpoint(ev(g.left), ev(g.right), succ, least=False)
        else:  # pragma: no cover
            raise TypeError(f"unknown node {g!r}")
        cache[g] = out
        return out

    return ev(f)


def _fixpoint(v1, v2, succ, least: bool) -> list[bool]:
    """Least fixpoint of ``v2 | (v1 & next)`` (until) or greatest fixpoint of
    ``v2 & (v1 | next)`` (release)."""
    size = len(succ)
    cur = [not least] * size
    while True:
        if least:
            new = [v2[j] or (v1[j] and cur[succ[j]]) for j in range(size)]
        else:
            new = [v2[j] and (v1[j] or cur[succ[j]]) for j in range(size)]
        if new == cur:
            return cur
        cur = new


def eval_ltl_lasso(f: ltl.Formula, w: LassoWord, i: int = 0) -> bool:
    if not 0 <= i < len(w):
        raise IndexError(f"position {i} outside the {len(w)} residual positions")
    return ltl_lasso_truth(f, w)[i]


# ------------------------------------------------------------------------ FO


class UnassignedVariableError(ValueError):
    pass


def _align(vars_: tuple[str, ...], arr: np.ndarray, target: tuple[str, ...]) -> np.ndarray:
    for axis, v in enumerate(target):
        if v not in vars_:
            arr = np.expand_dims(arr, axis + 1)
    return arr


def fo_table(
    f: fo.FoFormula, codes: np.ndarray, letters: tuple[str, ...]
) -> tuple[tuple[str, ...], np.ndarray]:
    """Truth table of ``f`` over a batch of words.

    Returns ``(vars, table)`` where ``vars`` are the free variables in sorted
    order and ``table[b, i1, ..., ik]`` is the truth value on word ``b`` when
    ``vars[j]`` is assigned position ``ij``.
    """
    n = codes.shape[1]
    idx = np.arange(n)

    def ev(g: fo.FoFormula) -> tuple[tuple[str, ...], np.ndarray]:
        if isinstance(g, (fo.Less, fo.Eq, fo.Neq)):
            a, b = g.left_var, g.right_var
            if a == b:
                val = isinstance(g, fo.Eq)
                return (), np.full((1,), val)
            op = {fo.Less: np.less, fo.Eq: np.equal, fo.Neq: np.not_equal}[type(g)]
            table = op.outer(idx, idx)
            if a > b:
                table = table.T
            return tuple(sorted((a, b))), table[None]
        if isinstance(g, (fo.Pred, fo.NegPred)):
            bits = _letter_bits(codes, letters, g.letter)
            return (g.var,), (bits if isinstance(g, fo.Pred) else ~bits)
        if isinstance(g, fo.FoTrue):
            return (), np.ones((1,), dtype=bool)
        if isinstance(g, fo.FoFalse):
            return (), np.zeros((1,), dtype=bool)
        if isinstance(g, fo.Not):
            vs, t = ev(g.arg)
            return vs, ~t
        if isinstance(g, (fo.And, fo.Or, fo.Implies)):
            (lv, lt), (rv, rt) = ev(g.left), ev(g.right)
            vs = tuple(sorted(set(lv) | set(rv)))
            lt, rt = _align(lv, lt, vs), _align(rv, rt, vs)
            if isinstance(g, fo.And):
                return vs, lt & rt
            if isinstance(g, fo.Or):
                return vs, lt | rt
            return vs, ~lt | rt
        if isinstance(g, (fo.Exists, fo.Forall)):
            vs, t = ev(g.body)
            if g.var not in vs:
                return vs, t
            axis = vs.index(g.var) + 1
            red = t.any(axis=axis) if isinstance(g, fo.Exists) else t.all(axis=axis)
            return vs[: axis - 1] + vs[axis:], red
        raise TypeError(f"not an FO formula: {g!r}")  # pragma: no cover

    vs, t = ev(f)
    return vs, np.broadcast_to(t, (codes.shape[0],) + (n,) * len(vs))


def fo_truth_at(
    f: fo.FoFormula, codes: np.ndarray, letters: tuple[str, ...], var: str
) -> np.ndarray:
    """For a formula with at most the free variable ``var``: truth at every
    position of every word, shape ``codes.shape``."""
    vs, t = fo_table(f, codes, letters)
    extra = set(vs) - {var}
    if extra:
        raise UnassignedVariableError(f"free variables {sorted(extra)} are not assigned")
    if not vs:
        return np.broadcast_to(t[:, None], codes.shape)
    return t


def eval_fo_fin(f: fo.FoFormula, w: Word, assignment: Mapping[str, int]) -> bool:
    """Tarskian evaluation of ``f`` on ``w``; quantifiers range over all positions."""
    free = fo.free_vars(f)
    missing = free - set(assignment)
    if missing:
        raise UnassignedVariableError(f"no value for free variable(s) {sorted(missing)}")
    for v in free:
        if not 0 <= assignment[v] < len(w):
            raise IndexError(f"{v} = {assignment[v]} outside word of length {len(w)}")
    letters = tuple(sorted(fo.letters(f)))
    vs, t = fo_table(f, encode([w], letters), letters)
    return bool(t[(0,) + tuple(assignment[v] for v in vs)])


@dataclass(frozen=True)
class PrefixWitness:
    """Outcome of a bounded witness search on a lasso word."""

    satisfied: bool
    prefix_length: int | None
    bound: int

    def __bool__(self) -> bool:
        return self.satisfied

    def __str__(self) -> str:
        if self.satisfied:
            return f"true (witness prefix length {self.prefix_length})"
        return f"unknown at {self.bound}"


def bounded_prefix_search(
    f: fo.FoFormula, w: LassoWord, assignment: Mapping[str, int], bound: int
) -> PrefixWitness:
    """Shortest prefix of ``w`` (length at most ``bound``) on which ``f``
    holds under ``assignment``; prefixes must contain every assigned position."""
    start = max([v + 1 for v in assignment.values()] + [1])
    for length in range(start, bound + 1):
        if eval_fo_fin(f, w.unroll(length), assignment):
            return PrefixWitness(True, length, bound)
    return PrefixWitness(False, None, bound)


def eval_cosafetyfo_lasso(
    f: fo.FoFormula, w: LassoWord, assignment: Mapping[str, int], bound: int
) -> PrefixWitness:
    """Membership of a lasso word in the language of a coSafetyFO formula,
    witnessed by a satisfying finite prefix.  ``unknown`` means no prefix of
    length at most ``bound`` satisfies the formula."""
    from .fragments import FragmentError, classify_fo

    verdict = classify_fo(f)
    if not verdict["coSafetyFO"]:
        raise FragmentError("coSafetyFO", verdict.offenders.get("coSafetyFO"))
    if bound < 1:
        raise ValueError("bound must be positive")
    return bounded_prefix_search(f, w, assignment, bound)
