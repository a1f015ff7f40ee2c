"""First-order logic over finite and infinite words.

Signature: ``<``, ``=``, ``!=`` between position variables and one monadic
predicate per proposition letter.  A predicate is identified by its letter
name (``Pred("p", "x")`` is printed ``P(x)``).

A non-strict comparison ``a <= b`` has no node of its own; it is the pattern
``Or(Less(a, b), Eq(a, b))``, built by :func:`leq` and recognised by
:func:`as_leq`.  The printer shows the pattern as ``a <= b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, fields
from typing import Callable, Iterator


@dataclass(frozen=True)
class FoFormula:
    @property
    def children(self) -> tuple[FoFormula, ...]:
        return tuple(
            getattr(self, fld.name)
            for fld in fields(self)
            if fld.name in ("arg", "left", "right", "body")
        )

    def __str__(self) -> str:
        return to_str(self)


@dataclass(frozen=True)
class Less(FoFormula):
    left_var: str
    right_var: str


@dataclass(frozen=True)
class Eq(FoFormula):
    left_var: str
    right_var: str


@dataclass(frozen=True)
class Neq(FoFormula):
    left_var: str
    right_var: str


@dataclass(frozen=True)
class Pred(FoFormula):
    letter: str
    var: str


@dataclass(frozen=True)
class NegPred(FoFormula):
    letter: str
    var: str


@dataclass(frozen=True)
class FoTrue(FoFormula):
    pass


@dataclass(frozen=True)
class FoFalse(FoFormula):
    pass


TRUE = FoTrue()
FALSE = FoFalse()


@dataclass(frozen=True)
class Not(FoFormula):
    arg: FoFormula


@dataclass(frozen=True)
class And(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True)
class Or(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True)
class Implies(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True)
class Exists(FoFormula):
    var: str
    body: FoFormula


@dataclass(frozen=True)
class Forall(FoFormula):
    var: str
    body: FoFormula


COMPARISONS = (Less, Eq, Neq)
LITERALS = (Less, Eq, Neq, Pred, NegPred, FoTrue, FoFalse)
QUANTIFIERS = (Exists, Forall)


def leq(a: str, b: str) -> FoFormula:
    return Or(Less(a, b), Eq(a, b))


def as_leq(f: FoFormula) -> tuple[str, str] | None:
    """Return ``(a, b)`` when ``f`` is the pattern for ``a <= b``."""
    if (
        isinstance(f, Or)
        and isinstance(f.left, Less)
        and isinstance(f.right, Eq)
        and (f.left.left_var, f.left.right_var) == (f.right.left_var, f.right.right_var)
    ):
        return f.left.left_var, f.left.right_var
    return None


def is_comparison(f: FoFormula) -> bool:
    return isinstance(f, COMPARISONS) or as_leq(f) is not None


def conj(parts) -> FoFormula:
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> FoFormula:
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def conjuncts(f: FoFormula) -> list[FoFormula]:
    """Flatten nested conjunctions (leaving ``a <= b`` patterns whole)."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def walk(f: FoFormula) -> Iterator[FoFormula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def atom_vars(f: FoFormula) -> tuple[str, ...]:
    if isinstance(f, COMPARISONS):
        return (f.left_var, f.right_var)
    if isinstance(f, (Pred, NegPred)):
        return (f.var,)
    return ()


def letters(f: FoFormula) -> frozenset[str]:
    return frozenset(n.letter for n in walk(f) if isinstance(n, (Pred, NegPred)))


def size(f: FoFormula) -> int:
    """One per node plus one per variable occurrence inside an atom."""
    return sum(1 + len(atom_vars(n)) for n in walk(f))


def free_vars(f: FoFormula) -> frozenset[str]:
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    out = set(atom_vars(f))
    for c in f.children:
        out |= free_vars(c)
    return frozenset(out)


def free_vars_ordered(f: FoFormula) -> tuple[str, ...]:
    """Free variables in order of first occurrence (left to right)."""
    seen: list[str] = []

    def go(g: FoFormula, bound: frozenset[str]) -> None:
        if isinstance(g, QUANTIFIERS):
            go(g.body, bound | {g.var})
            return
        for v in atom_vars(g):
            if v not in bound and v not in seen:
                seen.append(v)
        for c in g.children:
            go(c, bound)

    go(f, frozenset())
    return tuple(seen)


def all_vars(f: FoFormula) -> frozenset[str]:
    out: set[str] = set()
    for n in walk(f):
        out.update(atom_vars(n))
        if isinstance(n, QUANTIFIERS):
            out.add(n.var)
    return frozenset(out)


def rebuild(f: FoFormula, *children: FoFormula) -> FoFormula:
    if isinstance(f, QUANTIFIERS):
        (body,) = children
        return type(f)(f.var, body)
    if not children:
        return f
    return type(f)(*children)


def transform(f: FoFormula, fn: Callable[[FoFormula], FoFormula]) -> FoFormula:
    kids = f.children
    if kids:
        f = rebuild(f, *(transform(k, fn) for k in kids))
    return fn(f)


def rename_atom(f: FoFormula, mapping: dict[str, str]) -> FoFormula:
    if isinstance(f, COMPARISONS):
        return type(f)(mapping.get(f.left_var, f.left_var), mapping.get(f.right_var, f.right_var))
    if isinstance(f, (Pred, NegPred)):
        return type(f)(f.letter, mapping.get(f.var, f.var))
    return f


def substitute(f: FoFormula, mapping: dict[str, str]) -> FoFormula:
    """Replace free occurrences of variables according to ``mapping``.

    Raises ``ValueError`` if a replacement variable would be captured.
    """
    if not mapping:
        return f
    if isinstance(f, QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        if f.var in inner.values() and any(k in free_vars(f.body) for k in inner):
            raise ValueError(f"substitution would capture variable {f.var!r}")
        return type(f)(f.var, substitute(f.body, inner))
    if isinstance(f, LITERALS):
        return rename_atom(f, mapping)
    return rebuild(f, *(substitute(c, mapping) for c in f.children))


class FreshNames:
    """Monotone supply of variable names avoiding a set of taken names."""

    def __init__(self, taken=()):
        self.taken = set(taken)

    def __call__(self, name: str) -> str:
        if name not in self.taken:
            self.taken.add(name)
            return name
        base = name.rstrip("0123456789") or "v"
        for i in itertools.count(1):
            name = f"{base}{i}"
            if name not in self.taken:
                self.taken.add(name)
                return name
        raise AssertionError  # pragma: no cover


def normalize_bound(f: FoFormula, avoid=()) -> FoFormula:
    """Rename bound variables so that no quantifier shadows another binder or
    a free variable (or a name in ``avoid``).  Already-distinct names are kept.
    """
    fresh = FreshNames(set(free_vars(f)) | set(avoid))

    def go(g: FoFormula, env: dict[str, str]) -> FoFormula:
        if isinstance(g, QUANTIFIERS):
            new = fresh(g.var)
            return type(g)(new, go(g.body, {**env, g.var: new}))
        if isinstance(g, LITERALS):
            return rename_atom(g, env)
        return rebuild(g, *(go(c, env) for c in g.children))

    return go(f, {})


# ---------------------------------------------------------------- printing

_PREC = {Implies: 1, Or: 2, And: 3}
_QUANT_PREC = 0
_UNARY_PREC = 5
_ATOM_PREC = 6


def predicate_name(letter: str) -> str:
    return letter[0].upper() + letter[1:]


def _prec(f: FoFormula) -> int:
    if isinstance(f, LITERALS) or as_leq(f) is not None:
        return _ATOM_PREC
    if isinstance(f, Not):
        return _UNARY_PREC
    if isinstance(f, QUANTIFIERS):
        return _QUANT_PREC
    return _PREC[type(f)]


def to_str(f: FoFormula) -> str:
    pair = as_leq(f)
    if pair is not None:
        return f"{pair[0]} <= {pair[1]}"
    if isinstance(f, Less):
        return f"{f.left_var} < {f.right_var}"
    if isinstance(f, Eq):
        return f"{f.left_var} = {f.right_var}"
    if isinstance(f, Neq):
        return f"{f.left_var} != {f.right_var}"
    if isinstance(f, Pred):
        return f"{predicate_name(f.letter)}({f.var})"
    if isinstance(f, NegPred):
        return f"!{predicate_name(f.letter)}({f.var})"
    if isinstance(f, FoTrue):
        return "true"
    if isinstance(f, FoFalse):
        return "false"
    if isinstance(f, Not):
        # always bracketed: "!P(x)" is the negated-predicate literal
        return f"!({to_str(f.arg)})"
    if isinstance(f, Exists):
        return f"exists {f.var} . {to_str(f.body)}"
    if isinstance(f, Forall):
        return f"forall {f.var} . {to_str(f.body)}"
    p = _PREC[type(f)]
    left, right = to_str(f.left), to_str(f.right)
    lp, rp = _prec(f.left), _prec(f.right)
    if isinstance(f, Implies):
        lwrap, rwrap = lp <= p, rp < p and rp != _QUANT_PREC
    else:
        lwrap, rwrap = lp < p, rp <= p
    # a quantifier extends as far right as possible, so bracket it unless it
    # is the rightmost operand of an implication chain
    if lp == _QUANT_PREC:
        lwrap = True
    if rp == _QUANT_PREC and not isinstance(f, Implies):
        rwrap = True
    if lwrap:
        left = f"({left})"
    if rwrap:
        right = f"({right})"
    sym = {And: "&", Or: "|", Implies: "->"}[type(f)]
    return f"{left} {sym} {right}"
