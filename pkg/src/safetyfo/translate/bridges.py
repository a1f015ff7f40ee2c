"""Translations between full FO, coSafetyFO and the existential bounded
fragment EBFO."""

from __future__ import annotations

from ..fragments import FragmentError, classify_fo, require_fo
from ..syntax import fo
from ..syntax.transform import nnf_fo


def _single_free(f: fo.FoFormula) -> str:
    free = sorted(fo.free_vars(f))
    if len(free) != 1:
        raise FragmentError("one-free-variable FO", detail=f"free variables are {free}")
    return free[0]


def fo_to_cosafetyfo(f: fo.FoFormula, var: str = "x") -> fo.FoFormula:
    """coSafetyFO formula whose finite-word language at ``var = 0`` is the
    language of ``f`` extended by arbitrary suffixes.

    Every quantifier is confined to ``var <= z <= y`` for a fresh ``y`` and
    the result is wrapped as ``exists y . var <= y & ...``.
    """
    extra = fo.free_vars(f) - {var}
    if extra:
        raise FragmentError("one-free-variable FO", detail=f"unexpected free variables {sorted(extra)}")
    g = fo.normalize_bound(nnf_fo(f), avoid={var})
    y = fo.FreshNames(fo.all_vars(g) | {var})("y")

    def bound(h: fo.FoFormula) -> fo.FoFormula:
        if isinstance(h, fo.Exists):
            return fo.Exists(h.var, fo.conj([fo.leq(var, h.var), fo.leq(h.var, y), bound(h.body)]))
        if isinstance(h, fo.Forall):
            guard = fo.And(fo.leq(var, h.var), fo.leq(h.var, y))
            return fo.Forall(h.var, fo.Implies(guard, bound(h.body)))
        if isinstance(h, fo.LITERALS):
            return h
        return fo.rebuild(h, *(bound(c) for c in h.children))

    return fo.Exists(y, fo.And(fo.leq(var, y), bound(g)))


def cosafetyfo_to_ebfo(f: fo.FoFormula) -> fo.FoFormula:
    """EBFO sentence with the same infinite-word language as the coSafetyFO
    formula ``f`` read at position 0.

    Shape: ``exists y . exists x . x <= y & (forall z . z <= y -> z < x -> false) & f_y(x)``
    where ``f_y`` bounds every quantifier of ``f`` by ``y``; the middle
    conjunct pins ``x`` to the first position.
    """
    require_fo(f, "coSafetyFO")
    x = _single_free(f)
    g = fo.normalize_bound(f)
    fresh = fo.FreshNames(fo.all_vars(g))
    y, z = fresh("y"), fresh("z")

    def bound(h: fo.FoFormula) -> fo.FoFormula:
        if isinstance(h, fo.Exists):
            return fo.Exists(h.var, fo.conj([fo.leq(h.var, y)] + fo.conjuncts(bound(h.body))))
        if isinstance(h, fo.Forall):
            return fo.Forall(h.var, fo.Implies(fo.leq(h.var, y), bound(h.body)))
        if isinstance(h, fo.LITERALS):
            return h
        return fo.rebuild(h, *(bound(c) for c in h.children))

    first = fo.Forall(z, fo.Implies(fo.leq(z, y), fo.Implies(fo.Less(z, x), fo.FALSE)))
    return fo.Exists(y, fo.Exists(x, fo.conj([fo.leq(x, y), first, bound(g)])))


def ebfo_to_cosafetyfo(f: fo.FoFormula, var: str = "x") -> fo.FoFormula:
    """coSafetyFO formula with free variable ``var`` that, read at position 0,
    has the same infinite-word language as the EBFO sentence ``f``.

    Existentials get the lower guard ``var <= z``; universals are confined
    to ``var <= z <= y`` for the outer witness ``y``.
    """
    verdict = classify_fo(f)
    if not verdict["EBFO"]:
        raise FragmentError("EBFO", verdict.offenders.get("EBFO"))
    g = fo.normalize_bound(nnf_fo(f), avoid={var})
    y = fo.FreshNames(fo.all_vars(g) | {var})("y")

    def bound(h: fo.FoFormula) -> fo.FoFormula:
        if isinstance(h, fo.Exists):
            return fo.Exists(h.var, fo.conj([fo.leq(var, h.var)] + fo.conjuncts(bound(h.body))))
        if isinstance(h, fo.Forall):
            guard = fo.And(fo.leq(var, h.var), fo.leq(h.var, y))
            return fo.Forall(h.var, fo.Implies(guard, bound(h.body)))
        if isinstance(h, fo.LITERALS):
            return h
        return fo.rebuild(h, *(bound(c) for c in h.children))

    return fo.Exists(y, fo.And(fo.leq(var, y), bound(g)))
