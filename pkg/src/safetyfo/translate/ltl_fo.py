"""Syntax-directed translation of co-safety LTL into coSafetyFO."""

from __future__ import annotations

from ..fragments import FragmentError, classify_ltl, desugar_nonstrict_guards
from ..syntax import fo, ltl
from ..syntax.transform import expand_shortcuts, nnf, weak_next_to_next


def ltl_to_fo(
    f: ltl.Formula, var: str = "x", mode: str = "finite", strict: bool = False
) -> fo.FoFormula:
    """First-order formula with the single free variable ``var`` that holds at
    a position exactly when ``f`` does.

    ``X g`` becomes ``exists y . var < y & (forall z . var < z & z < y -> false) & FO(g, y)``
    and ``g U h`` becomes
    ``exists y . var <= y & FO(h, y) & (forall z . var <= z & z < y -> FO(g, z))``.
    Non-strict guards keep the output linear in the input; ``strict=True``
    desugars them afterwards.

    In ``finite`` mode the input must be in cosafetyLTL without weak next.  In
    ``infinite`` mode weak next is first replaced by next, which has the same
    meaning on infinite words.
    """
    if mode not in ("finite", "infinite"):
        raise ValueError("mode must be 'finite' or 'infinite'")
    verdict = classify_ltl(f)
    fragment = "cosafetyLTL-no-wX" if mode == "finite" else "cosafetyLTL"
    if not verdict[fragment]:
        raise FragmentError(fragment, verdict.offenders.get(fragment))
    g = nnf(expand_shortcuts(f))
    if mode == "infinite":
        g = weak_next_to_next(g)
    fresh = fo.FreshNames({var})
    out = _fo(g, var, fresh)
    return desugar_nonstrict_guards(out) if strict else out


def _fo(g: ltl.Formula, x: str, fresh: fo.FreshNames) -> fo.FoFormula:
    if isinstance(g, ltl.Atom):
        return fo.Pred(g.name, x)
    if isinstance(g, ltl.Not):
        return fo.NegPred(g.arg.name, x)
    if isinstance(g, ltl.TrueF):
        return fo.TRUE
    if isinstance(g, ltl.FalseF):
        return fo.FALSE
    if isinstance(g, ltl.And):
        return fo.And(_fo(g.left, x, fresh), _fo(g.right, x, fresh))
    if isinstance(g, ltl.Or):
        return fo.Or(_fo(g.left, x, fresh), _fo(g.right, x, fresh))
    if isinstance(g, ltl.Next):
        y, z = fresh("y"), fresh("z")
        successor = fo.Forall(z, fo.Implies(fo.And(fo.Less(x, z), fo.Less(z, y)), fo.FALSE))
        return fo.Exists(y, fo.conj([fo.Less(x, y), successor, _fo(g.arg, y, fresh)]))
    if isinstance(g, ltl.Until):
        y, z = fresh("y"), fresh("z")
        target = _fo(g.right, y, fresh)
        hold = _fo(g.left, z, fresh)
        if isinstance(hold, fo.FoTrue):  # F h: the path constraint is vacuous
            return fo.Exists(y, fo.conj([fo.leq(x, y), target]))
        path = fo.Forall(z, fo.Implies(fo.And(fo.leq(x, z), fo.Less(z, y)), hold))
        return fo.Exists(y, fo.conj([fo.leq(x, y), target, path]))
    raise FragmentError("cosafetyLTL-no-wX", g)  # pragma: no cover
