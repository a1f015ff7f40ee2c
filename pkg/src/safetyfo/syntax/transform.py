"""Structural rewrites: negation normal form, dualisation, mirroring and
constant folding, for both the temporal and the first-order syntax."""

from __future__ import annotations

from . import fo
from . import ltl
from .ltl import (
    FALSE,
    TRUE,
    And,
    Atom,
    Eventually,
    FalseF,
    Globally,
    Historically,
    Implies,
    Next,
    Not,
    Once,
    Or,
    Release,
    Since,
    Triggered,
    TrueF,
    Until,
    WeakNext,
    WeakYesterday,
    Yesterday,
)

# ------------------------------------------------------------------- LTL

_DUAL_UNARY = {
    Next: WeakNext,
    WeakNext: Next,
    Yesterday: WeakYesterday,
    WeakYesterday: Yesterday,
    Eventually: Globally,
    Globally: Eventually,
    Once: Historically,
    Historically: Once,
}
_DUAL_BINARY = {
    And: Or,
    Or: And,
    Until: Release,
    Release: Until,
    Since: Triggered,
    Triggered: Since,
}


def nnf(f: ltl.Formula) -> ltl.Formula:
    """Push negations down to atoms.  Implications are expanded; the
    shortcut operators F/G/O/H are kept."""
    if isinstance(f, (Atom, TrueF, FalseF)):
        return f
    if isinstance(f, Not):
        return negate_nnf(f.arg)
    if isinstance(f, Implies):
        return Or(negate_nnf(f.left), nnf(f.right))
    return f.rebuild(*(nnf(c) for c in f.children))


def negate_nnf(f: ltl.Formula) -> ltl.Formula:
    """``nnf(Not(f))`` computed directly."""
    if isinstance(f, Atom):
        return Not(f)
    if isinstance(f, TrueF):
        return FALSE
    if isinstance(f, FalseF):
        return TRUE
    if isinstance(f, Not):
        return nnf(f.arg)
    if isinstance(f, Implies):
        return And(nnf(f.left), negate_nnf(f.right))
    cls = type(f)
    if cls in _DUAL_UNARY:
        return _DUAL_UNARY[cls](negate_nnf(f.arg))
    return _DUAL_BINARY[cls](negate_nnf(f.left), negate_nnf(f.right))


def expand_shortcuts(f: ltl.Formula) -> ltl.Formula:
    """Replace F, G, O, H by their until/release/since/triggered definitions."""

    def step(g: ltl.Formula) -> ltl.Formula:
        if isinstance(g, Eventually):
            return Until(TRUE, g.arg)
        if isinstance(g, Globally):
            return Release(FALSE, g.arg)
        if isinstance(g, Once):
            return Since(TRUE, g.arg)
        if isinstance(g, Historically):
            return Triggered(FALSE, g.arg)
        return g

    return ltl.transform(f, step)


def weak_next_to_next(f: ltl.Formula) -> ltl.Formula:
    return ltl.transform(f, lambda g: Next(g.arg) if isinstance(g, WeakNext) else g)


_MIRROR = {
    Yesterday: Next,
    WeakYesterday: WeakNext,
    Since: Until,
    Triggered: Release,
    Once: Eventually,
    Historically: Globally,
}
_MIRROR.update({v: k for k, v in list(_MIRROR.items())})


class MixedTenseError(ValueError):
    pass


def mirror(f: ltl.Formula) -> ltl.Formula:
    """Swap every past operator with its future counterpart and back.

    Only defined on pure-past or pure-future formulas.
    """
    if not (ltl.is_pure_past(f) or ltl.is_pure_future(f)):
        offender = next(n for n in ltl.walk(f) if isinstance(n, ltl.PAST_OPS))
        raise MixedTenseError(f"formula mixes past and future operators (e.g. {offender})")

    def step(g: ltl.Formula) -> ltl.Formula:
        cls = _MIRROR.get(type(g))
        return cls(*g.children) if cls else g

    return ltl.transform(f, step)


def simplify(f: ltl.Formula) -> ltl.Formula:
    """Bottom-up constant folding (valid on finite and infinite words)."""

    def step(g: ltl.Formula) -> ltl.Formula:
        if isinstance(g, Not):
            if isinstance(g.arg, TrueF):
                return FALSE
            if isinstance(g.arg, FalseF):
                return TRUE
        elif isinstance(g, And):
            if isinstance(g.left, FalseF) or isinstance(g.right, FalseF):
                return FALSE
            if isinstance(g.left, TrueF):
                return g.right
            if isinstance(g.right, TrueF):
                return g.left
        elif isinstance(g, Or):
            if isinstance(g.left, TrueF) or isinstance(g.right, TrueF):
                return TRUE
            if isinstance(g.left, FalseF):
                return g.right
            if isinstance(g.right, FalseF):
                return g.left
        elif isinstance(g, Implies):
            if isinstance(g.left, FalseF) or isinstance(g.right, TrueF):
                return TRUE
            if isinstance(g.left, TrueF):
                return g.right
        elif isinstance(g, (Next, Yesterday, Eventually, Once)):
            if isinstance(g.arg, FalseF):
                return FALSE
        elif isinstance(g, (WeakNext, WeakYesterday, Globally, Historically)):
            if isinstance(g.arg, TrueF):
                return TRUE
        elif isinstance(g, (Until, Since)):
            if isinstance(g.right, (FalseF, TrueF)):
                return g.right
            if isinstance(g.left, FalseF):
                return g.right
        elif isinstance(g, (Release, Triggered)):
            if isinstance(g.right, (FalseF, TrueF)):
                return g.right
            if isinstance(g.left, TrueF):
                return g.right
        return g

    return ltl.transform(f, step)


# -------------------------------------------------------------------- FO


def _guard_antecedent(f: fo.FoFormula, var: str) -> bool:
    """True if every conjunct of ``f`` is a comparison mentioning ``var``."""
    return all(fo.is_comparison(c) and var in _cmp_vars(c) for c in fo.conjuncts(f))


def _cmp_vars(c: fo.FoFormula) -> tuple[str, ...]:
    pair = fo.as_leq(c)
    return pair if pair is not None else fo.atom_vars(c)


def guarded_implication(body: fo.FoFormula, var: str):
    """Split ``A1 -> (A2 -> ... -> C)`` into (antecedent conjuncts, C) when
    every antecedent is a conjunction of comparisons on ``var``; else None."""
    guards: list[fo.FoFormula] = []
    while isinstance(body, fo.Implies) and _guard_antecedent(body.left, var):
        guards.extend(fo.conjuncts(body.left))
        body = body.right
    return (guards, body) if guards else None


def nnf_fo(f: fo.FoFormula) -> fo.FoFormula:
    """Negation normal form for FO.

    Negation ends up only inside ``NegPred``; negated comparisons are replaced
    by positive ones.  A universal quantifier whose body is an implication
    from comparisons on the bound variable keeps that guarded shape; every
    other implication is expanded into a disjunction.
    """
    if isinstance(f, fo.LITERALS):
        return f
    if isinstance(f, fo.Not):
        return negate_fo_nnf(f.arg)
    if isinstance(f, fo.Implies):
        return fo.Or(negate_fo_nnf(f.left), nnf_fo(f.right))
    if isinstance(f, fo.Forall):
        split = _nested_guards(f.body, f.var)
        if split is not None:
            return fo.Forall(f.var, split)
        return fo.Forall(f.var, nnf_fo(f.body))
    return fo.rebuild(f, *(nnf_fo(c) for c in f.children))


def _nested_guards(body: fo.FoFormula, var: str):
    if isinstance(body, fo.Implies) and _guard_antecedent(body.left, var):
        inner = _nested_guards(body.right, var)
        return fo.Implies(body.left, inner if inner is not None else nnf_fo(body.right))
    return None


def negate_fo_nnf(f: fo.FoFormula) -> fo.FoFormula:
    """``nnf_fo(Not(f))``, keeping quantifier guards in guard position so that
    the co-safety and safety grammars are exchanged."""
    pair = fo.as_leq(f)
    if pair is not None:
        return fo.Less(pair[1], pair[0])
    if isinstance(f, fo.Less):
        return fo.leq(f.right_var, f.left_var)
    if isinstance(f, fo.Eq):
        return fo.Neq(f.left_var, f.right_var)
    if isinstance(f, fo.Neq):
        return fo.Eq(f.left_var, f.right_var)
    if isinstance(f, fo.Pred):
        return fo.NegPred(f.letter, f.var)
    if isinstance(f, fo.NegPred):
        return fo.Pred(f.letter, f.var)
    if isinstance(f, fo.FoTrue):
        return fo.FALSE
    if isinstance(f, fo.FoFalse):
        return fo.TRUE
    if isinstance(f, fo.Not):
        return nnf_fo(f.arg)
    if isinstance(f, fo.And):
        return fo.Or(negate_fo_nnf(f.left), negate_fo_nnf(f.right))
    if isinstance(f, fo.Or):
        return fo.And(negate_fo_nnf(f.left), negate_fo_nnf(f.right))
    if isinstance(f, fo.Implies):
        return fo.And(nnf_fo(f.left), negate_fo_nnf(f.right))
    if isinstance(f, fo.Exists):
        parts = fo.conjuncts(f.body)
        guards = [c for c in parts if fo.is_comparison(c) and f.var in _cmp_vars(c)]
        if not guards:
            return fo.Forall(f.var, negate_fo_nnf(f.body))
        rest = [c for c in parts if not any(c is g for g in guards)]
        consequent = negate_fo_nnf(fo.conj(rest)) if rest else fo.FALSE
        return fo.Forall(f.var, fo.Implies(fo.conj(guards), consequent))
    if isinstance(f, fo.Forall):
        split = guarded_implication(f.body, f.var)
        if split is None:
            return fo.Exists(f.var, negate_fo_nnf(f.body))
        guards, consequent = split
        return fo.Exists(f.var, fo.conj(guards + [negate_fo_nnf(consequent)]))
    raise TypeError(f"not an FO formula: {f!r}")


def simplify_fo(f: fo.FoFormula) -> fo.FoFormula:
    """Bottom-up constant folding."""

    def step(g: fo.FoFormula) -> fo.FoFormula:
        T, F = fo.FoTrue, fo.FoFalse
        if isinstance(g, fo.Not):
            if isinstance(g.arg, T):
                return fo.FALSE
            if isinstance(g.arg, F):
                return fo.TRUE
        elif isinstance(g, fo.And):
            if isinstance(g.left, F) or isinstance(g.right, F):
                return fo.FALSE
            if isinstance(g.left, T):
                return g.right
            if isinstance(g.right, T):
                return g.left
        elif isinstance(g, fo.Or):
            if isinstance(g.left, T) or isinstance(g.right, T):
                return fo.TRUE
            if isinstance(g.left, F):
                return g.right
            if isinstance(g.right, F):
                return g.left
        elif isinstance(g, fo.Implies):
            if isinstance(g.left, F) or isinstance(g.right, T):
                return fo.TRUE
            if isinstance(g.left, T):
                return g.right
        elif isinstance(g, fo.Exists):
            if isinstance(g.body, F):
                return fo.FALSE
        elif isinstance(g, fo.Forall):
            if isinstance(g.body, T):
                return fo.TRUE
        return g

    return fo.transform(f, step)
