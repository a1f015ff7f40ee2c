"""Seeded random formula generators for the invariant suites."""

from __future__ import annotations

import random
from typing import Sequence

from .fragments import classify_fo, classify_ltl
from .syntax import fo, ltl

_LTL_OPS = {
    "future": ((ltl.Not, ltl.Next, ltl.WeakNext, ltl.Eventually, ltl.Globally),
               (ltl.And, ltl.Or, ltl.Implies, ltl.Until, ltl.Release)),
    "past": ((ltl.Not, ltl.Yesterday, ltl.WeakYesterday, ltl.Once, ltl.Historically),
             (ltl.And, ltl.Or, ltl.Implies, ltl.Since, ltl.Triggered)),
    "cosafety": ((ltl.Next, ltl.Eventually), (ltl.And, ltl.Or, ltl.Until)),
}


def _ltl(rng: random.Random, n: int, letters: Sequence[str], kind: str) -> ltl.Formula:
    unary, binary = _LTL_OPS[kind]
    if n == 1:
        r = rng.random()
        if r < 0.08:
            return ltl.TRUE
        if r < 0.12:
            return ltl.FALSE
        return ltl.Atom(rng.choice(letters))
    if n == 2 and kind == "cosafety" and rng.random() < 0.4:
        return ltl.Not(ltl.Atom(rng.choice(letters)))
    if n == 2 or rng.random() < 0.35:
        return rng.choice(unary)(_ltl(rng, n - 1, letters, kind))
    k = rng.randint(1, n - 2)
    return rng.choice(binary)(_ltl(rng, k, letters, kind), _ltl(rng, n - 1 - k, letters, kind))


def random_ltl(rng: random.Random, max_size: int, letters: Sequence[str] = ("a", "b"), kind: str = "future") -> ltl.Formula:
    """A formula with at most ``max_size`` nodes.

    ``kind`` is ``future`` (pure future, all operators), ``past`` (pure past)
    or ``cosafety`` (cosafetyLTL without weak next, in negation normal form).
    """
    return _ltl(rng, rng.randint(1, max_size), tuple(letters), kind)


def ltl_corpus(seed: int, count: int, max_size: int, letters=("a", "b"), kind: str = "future") -> list[ltl.Formula]:
    rng = random.Random(seed)
    out = [random_ltl(rng, max_size, letters, kind) for _ in range(count)]
    if kind == "cosafety":
        assert all(classify_ltl(f)["cosafetyLTL-no-wX"] for f in out)
    return out


# -------------------------------------------------------------------- FO


def _var(rng: random.Random, scope: tuple) -> str:
    # favour the innermost variable so quantifiers are rarely vacuous
    return scope[-1] if rng.random() < 0.6 else rng.choice(scope)


def _fo_literal(rng: random.Random, n: int, scope: tuple, letters, negated: bool) -> fo.FoFormula | None:
    options = []
    if n >= 1:
        options += ["const"]
    if n >= 2:
        options += ["pred"] * 4
    if n >= 3 and len(scope) >= 1:
        options += ["cmp"] * 2
    kind = rng.choice(options)
    if kind == "const":
        return rng.choice((fo.TRUE, fo.FALSE))
    if kind == "pred":
        cls = fo.NegPred if negated and rng.random() < 0.3 else fo.Pred
        return cls(rng.choice(letters), _var(rng, scope))
    cls = rng.choice(fo.COMPARISONS)
    return cls(rng.choice(scope), _var(rng, scope))


def _fo_general(rng, n, scope, letters, depth) -> fo.FoFormula:
    """A formula of size exactly ``n``."""
    if n == 1:
        return rng.choice((fo.TRUE, fo.FALSE))
    if n == 2:
        return fo.Pred(rng.choice(letters), _var(rng, scope))
    if n == 3 and rng.random() < 0.5:
        return rng.choice(fo.COMPARISONS)(rng.choice(scope), _var(rng, scope))
    r = rng.random()
    if r < 0.1:
        return fo.Not(_fo_general(rng, n - 1, scope, letters, depth))
    if r < 0.5:
        v = f"y{depth}"
        cls = rng.choice(fo.QUANTIFIERS)
        return cls(v, _fo_general(rng, n - 1, scope + (v,), letters, depth + 1))
    k = rng.randint(2, n - 3) if n >= 5 else rng.randint(1, n - 2)
    cls = rng.choice((fo.And, fo.Or, fo.Implies))
    return cls(_fo_general(rng, k, scope, letters, depth), _fo_general(rng, n - 1 - k, scope, letters, depth))


def random_fo(rng: random.Random, max_size: int, letters=("a", "b"), var: str = "x") -> fo.FoFormula:
    """Unrestricted FO formula whose only free variable is ``var``."""
    n = rng.randint(2, max_size)
    while True:
        f = _fo_general(rng, n, (var,), tuple(letters), 0)
        vacuous = any(
            isinstance(g, fo.QUANTIFIERS) and g.var not in fo.free_vars(g.body) for g in fo.walk(f)
        )
        if fo.free_vars(f) == {var} and fo.size(f) <= max_size and not vacuous:
            return f


def _fo_cosafety(rng, n, scope, letters, depth) -> fo.FoFormula:
    # existential: 1 + 1 + 3 + body, or 4 without a body
    # universal:   1 + 1 + 1 + 3 + 3 + body
    choices = ["lit"]
    if n >= 4:
        choices += ["exists"] * 2
    if n >= 5:
        choices += ["and", "or"]
    if n >= 10 and len(scope) >= 2:
        choices += ["forall"]
    kind = rng.choice(choices)
    if kind == "lit":
        return _fo_literal(rng, min(n, 3), scope, letters, negated=True)
    if kind in ("and", "or"):
        k = rng.randint(2, n - 3)
        cls = fo.And if kind == "and" else fo.Or
        return cls(_fo_cosafety(rng, k, scope, letters, depth), _fo_cosafety(rng, n - 1 - k, scope, letters, depth))
    v = f"y{depth}"
    if kind == "exists":
        guard = fo.Less(rng.choice(scope), v)
        if n < 7:
            return fo.Exists(v, guard)
        body = _fo_cosafety(rng, n - 5, scope + (v,), letters, depth + 1)
        return fo.Exists(v, fo.And(guard, body))
    lo, hi = rng.sample(scope, 2)
    body = _fo_cosafety(rng, n - 9, scope + (v,), letters, depth + 1)
    return fo.Forall(v, fo.Implies(fo.And(fo.Less(lo, v), fo.Less(v, hi)), body))


def random_cosafetyfo(
    rng: random.Random, max_size: int, letters=("a", "b"), free: Sequence[str] = ("x",), exact_free: bool = True
) -> fo.FoFormula:
    """coSafetyFO formula over the free variables ``free`` with at most
    ``max_size`` size units.  With ``exact_free`` every listed variable occurs."""
    if exact_free and max_size < 1 + len(free):
        raise ValueError(f"size {max_size} is too small to mention {len(free)} free variable(s)")
    while True:
        f = _fo_cosafety(rng, rng.randint(1, max_size), tuple(free), tuple(letters), 0)
        if fo.size(f) > max_size or not classify_fo(f)["coSafetyFO"]:
            continue
        if exact_free and fo.free_vars(f) != set(free):
            continue
        return f


def fo_corpus(seed: int, count: int, max_size: int, kind: str = "cosafety", **kw) -> list[fo.FoFormula]:
    rng = random.Random(seed)
    make = random_cosafetyfo if kind == "cosafety" else random_fo
    return [make(rng, max_size, **kw) for _ in range(count)]
