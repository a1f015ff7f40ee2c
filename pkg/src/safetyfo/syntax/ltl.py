"""Abstract syntax of LTL with past operators.

Every node is an immutable dataclass.  Unary nodes keep their operand in
``arg``, binary nodes in ``left``/``right``, so ``type(f)(*new_children)``
rebuilds a node of the same kind.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Callable, Iterator


@dataclass(frozen=True)
class Formula:
    @property
    def children(self) -> tuple[Formula, ...]:
        return tuple(
            getattr(self, fld.name) for fld in fields(self) if fld.name in ("arg", "left", "right")
        )

    def rebuild(self, *children: Formula) -> Formula:
        if not children:
            return self
        return type(self)(*children)

    def __str__(self) -> str:
        return to_str(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __invert__(self) -> Formula:
        return Not(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


TRUE = TrueF()
FALSE = FalseF()


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula


@dataclass(frozen=True)
class WeakNext(Formula):
    arg: Formula


@dataclass(frozen=True)
class Yesterday(Formula):
    arg: Formula


@dataclass(frozen=True)
class WeakYesterday(Formula):
    arg: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Since(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Triggered(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula


@dataclass(frozen=True)
class Globally(Formula):
    arg: Formula


@dataclass(frozen=True)
class Once(Formula):
    arg: Formula


@dataclass(frozen=True)
class Historically(Formula):
    arg: Formula


FUTURE_OPS = (Next, WeakNext, Until, Release, Eventually, Globally)
PAST_OPS = (Yesterday, WeakYesterday, Since, Triggered, Once, Historically)

UNARY_SYMBOL: dict[type, str] = {
    Not: "!",
    Next: "X",
    WeakNext: "wX",
    Yesterday: "Y",
    WeakYesterday: "Z",
    Eventually: "F",
    Globally: "G",
    Once: "O",
    Historically: "H",
}
BINARY_SYMBOL: dict[type, str] = {
    Until: "U",
    Release: "R",
    Since: "S",
    Triggered: "T",
    And: "&",
    Or: "|",
    Implies: "->",
}
TEMPORAL_BINARY = (Until, Release, Since, Triggered)

# Printer precedence; the parser in ``syntax.parse`` uses the same table.
_PREC: dict[type, int] = {Implies: 1, Or: 2, And: 3, Until: 4, Release: 4, Since: 4, Triggered: 4}
_UNARY_PREC = 5
_ATOM_PREC = 6


def _prec(f: Formula) -> int:
    if isinstance(f, (Atom, TrueF, FalseF)):
        return _ATOM_PREC
    if type(f) in UNARY_SYMBOL:
        return _UNARY_PREC
    return _PREC[type(f)]


def to_str(f: Formula) -> str:
    """Print ``f`` in the ASCII grammar accepted by :func:`parse_ltl`."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    sym = UNARY_SYMBOL.get(type(f))
    if sym is not None:
        inner = to_str(f.arg)
        if _prec(f.arg) < _UNARY_PREC:
            return f"{sym}({inner})"
        if sym == "!":
            return f"!{inner}"
        return f"{sym} {inner}"
    sym = BINARY_SYMBOL[type(f)]
    p = _PREC[type(f)]
    left, right = to_str(f.left), to_str(f.right)
    lp, rp = _prec(f.left), _prec(f.right)
    if isinstance(f, TEMPORAL_BINARY):
        # temporal binaries always bracket nested temporal binaries
        lwrap, rwrap = lp <= p, rp <= p
    elif isinstance(f, Implies):
        lwrap, rwrap = lp <= p, rp < p
    else:
        lwrap, rwrap = lp < p, rp <= p
    if lwrap:
        left = f"({left})"
    if rwrap:
        right = f"({right})"
    return f"{left} {sym} {right}"


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(n.name for n in walk(f) if isinstance(n, Atom))


def size(f: Formula) -> int:
    """Number of symbols: one per node."""
    return sum(1 for _ in walk(f))


def is_pure_future(f: Formula) -> bool:
    return not any(isinstance(n, PAST_OPS) for n in walk(f))


def is_pure_past(f: Formula) -> bool:
    return not any(isinstance(n, FUTURE_OPS) for n in walk(f))


def transform(f: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    """Bottom-up rewrite: ``fn`` sees each node after its children were rewritten."""
    kids = f.children
    if kids:
        f = f.rebuild(*(transform(k, fn) for k in kids))
    return fn(f)


def conj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out
