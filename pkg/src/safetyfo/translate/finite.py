"""Operator eliminations that are sound on finite words only."""

from __future__ import annotations

from ..semantics import PastOperatorError
from ..syntax import ltl
from ..syntax.ltl import FALSE, TRUE, And, Or, Next, Release, Until, WeakNext
from ..syntax.transform import nnf


def _require_future(f: ltl.Formula) -> None:
    if not ltl.is_pure_future(f):
        raise PastOperatorError("finite-word eliminations take pure-future formulas")


def eliminate_for_finite_to_cosafety(f: ltl.Formula) -> ltl.Formula:
    """Finite-word equivalent in cosafetyLTL: G and R are rewritten with
    until and the end-of-word test ``wX false``."""
    _require_future(f)

    def step(g: ltl.Formula) -> ltl.Formula:
        if isinstance(g, ltl.Globally):
            return Until(g.arg, And(g.arg, WeakNext(FALSE)))
        if isinstance(g, Release):
            a, b = g.left, g.right
            return Or(Until(b, And(b, WeakNext(FALSE))), Until(b, And(a, b)))
        return g

    return ltl.transform(nnf(f), step)


def eliminate_for_finite_to_safety(f: ltl.Formula) -> ltl.Formula:
    """Finite-word equivalent in safetyLTL: F and U are rewritten with
    release and the not-at-the-end test ``X true``."""
    _require_future(f)

    def step(g: ltl.Formula) -> ltl.Formula:
        if isinstance(g, ltl.Eventually):
            return Release(g.arg, Or(g.arg, Next(TRUE)))
        if isinstance(g, Until):
            a, b = g.left, g.right
            return And(Release(b, Or(b, Next(TRUE))), Release(b, Or(a, b)))
        return g

    return ltl.transform(nnf(f), step)
