"""Syntactic fragment membership for temporal and first-order formulas."""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import fo, ltl
from .syntax.transform import (
    expand_shortcuts,
    guarded_implication,
    negate_fo_nnf,
    nnf,
)

LTL_FRAGMENTS = (
    "LTLP",
    "LTL-pure-future",
    "LTL-pure-past",
    "safetyLTL",
    "cosafetyLTL",
    "cosafetyLTL-no-wX",
    "safetyLTL-no-X",
    "G-alpha-form",
    "F-alpha-form",
)
FO_FRAGMENTS = ("FO", "SafetyFO", "coSafetyFO", "bounded-FO", "EBFO", "UBFO")


class FragmentError(ValueError):
    """Input outside the fragment an operation requires."""

    def __init__(self, fragment: str, offender=None, detail: str = ""):
        msg = f"formula is not in {fragment}"
        if offender is not None:
            msg += f" (offending subterm: {offender})"
        if detail:
            msg += f"; {detail}"
        super().__init__(msg)
        self.fragment = fragment
        self.offender = offender


@dataclass(frozen=True)
class FragmentVerdict:
    """Membership flags, first offending subterm for every failed flag, and
    (for temporal formulas) the verdicts on the unexpanded formula."""

    flags: dict[str, bool]
    offenders: dict[str, object] = field(default_factory=dict)
    raw: dict[str, bool] = field(default_factory=dict)

    def __getitem__(self, name: str) -> bool:
        return self.flags[name]

    def lines(self) -> list[str]:
        out = []
        for name, ok in self.flags.items():
            line = f"{name}: {'true' if ok else 'false'}"
            if not ok and self.offenders.get(name) is not None:
                line += f" (offender: {self.offenders[name]})"
            out.append(line)
        for name, ok in self.raw.items():
            out.append(f"raw {name}: {'true' if ok else 'false'}")
        return out


# ------------------------------------------------------------------- LTL

_SAFETY_OPS = (ltl.Next, ltl.WeakNext, ltl.Release)
_COSAFETY_OPS = (ltl.Next, ltl.WeakNext, ltl.Until)
_TEMPORAL = ltl.FUTURE_OPS + ltl.PAST_OPS


def _first(f: ltl.Formula, bad) -> ltl.Formula | None:
    return next((n for n in ltl.walk(f) if bad(n)), None)


def _temporal_offender(f: ltl.Formula, allowed: tuple) -> ltl.Formula | None:
    return _first(f, lambda n: isinstance(n, _TEMPORAL) and not isinstance(n, allowed))


def _ltl_checks(g: ltl.Formula) -> dict[str, ltl.Formula | None]:
    """Offender per safety/co-safety fragment for a formula already in NNF."""
    safety = _temporal_offender(g, _SAFETY_OPS)
    cosafety = _temporal_offender(g, _COSAFETY_OPS)
    return {
        "safetyLTL": safety,
        "cosafetyLTL": cosafety,
        "cosafetyLTL-no-wX": cosafety or _first(g, lambda n: isinstance(n, ltl.WeakNext)),
        "safetyLTL-no-X": safety or _first(g, lambda n: isinstance(n, ltl.Next)),
    }


def classify_ltl(f: ltl.Formula) -> FragmentVerdict:
    """Fragment verdicts for an LTL formula.

    Safety and co-safety fragments are decided on the negation normal form
    with F/G/O/H expanded; ``raw`` repeats those four verdicts without the
    expansion, where a shortcut operator counts as disallowed.
    """
    offenders: dict[str, object] = {
        "LTLP": None,
        "LTL-pure-future": _first(f, lambda n: isinstance(n, ltl.PAST_OPS)),
        "LTL-pure-past": _first(f, lambda n: isinstance(n, ltl.FUTURE_OPS)),
    }
    offenders.update(_ltl_checks(nnf(expand_shortcuts(f))))
    for name, cls in (("G-alpha-form", ltl.Globally), ("F-alpha-form", ltl.Eventually)):
        if not isinstance(f, cls):
            offenders[name] = f
        else:
            offenders[name] = _first(f.arg, lambda n: isinstance(n, ltl.FUTURE_OPS))
    flags = {name: offenders[name] is None for name in LTL_FRAGMENTS}
    raw = {name: off is None for name, off in _ltl_checks(nnf(f)).items()}
    return FragmentVerdict(flags, {k: v for k, v in offenders.items() if v is not None}, raw)


# -------------------------------------------------------------------- FO


def _is_lower(c: fo.FoFormula, v: str, strict_only: bool = False) -> bool:
    if isinstance(c, fo.Less):
        return c.right_var == v and c.left_var != v
    pair = fo.as_leq(c)
    return not strict_only and pair is not None and pair[1] == v and pair[0] != v


def _is_upper(c: fo.FoFormula, v: str, strict_only: bool = False) -> bool:
    if isinstance(c, fo.Less):
        return c.left_var == v and c.right_var != v
    pair = fo.as_leq(c)
    return not strict_only and pair is not None and pair[0] == v and pair[1] != v


def _guarded_offender(g: fo.FoFormula, exists_needs, forall_needs):
    """First subterm violating a guarded-quantifier grammar in NNF.

    ``exists_needs``/``forall_needs`` list the guard kinds ("lower", "upper")
    a quantifier of that kind must carry.
    """
    if isinstance(g, fo.LITERALS):
        return None
    if isinstance(g, (fo.And, fo.Or)):
        return _guarded_offender(g.left, exists_needs, forall_needs) or _guarded_offender(
            g.right, exists_needs, forall_needs
        )
    if isinstance(g, fo.Exists):
        parts = fo.conjuncts(g.body)
        if not _has_guards(parts, g.var, exists_needs):
            return g
        return _guarded_offender(g.body, exists_needs, forall_needs)
    if isinstance(g, fo.Forall):
        split = guarded_implication(g.body, g.var)
        if split is None or not _has_guards(split[0], g.var, forall_needs):
            return g
        return _guarded_offender(split[1], exists_needs, forall_needs)
    return g  # Not, unguarded Implies


def _has_guards(parts, v: str, needs) -> bool:
    ok = True
    if "lower" in needs:
        ok = ok and any(_is_lower(c, v) for c in parts)
    if "upper" in needs:
        ok = ok and any(_is_upper(c, v) for c in parts)
    return ok


def cosafety_offender(f: fo.FoFormula):
    return _guarded_offender(f, ("lower",), ("lower", "upper"))


def safety_offender(f: fo.FoFormula):
    return _guarded_offender(f, ("lower", "upper"), ("lower",))


def _bound_guard(c: fo.FoFormula, k: str, x: str) -> bool:
    if isinstance(c, fo.Less):
        return (c.left_var, c.right_var) == (k, x)
    return fo.as_leq(c) == (k, x)


def bounded_offender(f: fo.FoFormula, x: str):
    """First quantifier not bounded by ``x`` (``k <= x`` or ``k < x``)."""
    if isinstance(f, fo.LITERALS):
        return None
    if isinstance(f, fo.Exists):
        if f.var == x or not any(_bound_guard(c, f.var, x) for c in fo.conjuncts(f.body)):
            return f
        return bounded_offender(f.body, x)
    if isinstance(f, fo.Forall):
        split = guarded_implication(f.body, f.var)
        if f.var == x or split is None or not any(_bound_guard(c, f.var, x) for c in split[0]):
            return f
        return bounded_offender(split[1], x)
    for c in f.children:
        off = bounded_offender(c, x)
        if off is not None:
            return off
    return None


def classify_fo(f: fo.FoFormula) -> FragmentVerdict:
    offenders: dict[str, object] = {
        "FO": None,
        "SafetyFO": safety_offender(f),
        "coSafetyFO": cosafety_offender(f),
    }
    free = sorted(fo.free_vars(f))
    if len(free) != 1:
        offenders["bounded-FO"] = f"free variables {{{', '.join(free)}}}, expected exactly one"
    else:
        offenders["bounded-FO"] = bounded_offender(f, free[0])
    for name, cls in (("EBFO", fo.Exists), ("UBFO", fo.Forall)):
        if not isinstance(f, cls) or free:
            offenders[name] = f
        else:
            offenders[name] = bounded_offender(f.body, f.var)
    flags = {name: offenders[name] is None for name in FO_FRAGMENTS}
    return FragmentVerdict(flags, {k: v for k, v in offenders.items() if v is not None})


def require_fo(f: fo.FoFormula, fragment: str) -> None:
    verdict = classify_fo(f)
    if not verdict[fragment]:
        raise FragmentError(fragment, verdict.offenders.get(fragment))


def require_ltl(f: ltl.Formula, fragment: str) -> None:
    verdict = classify_ltl(f)
    if not verdict[fragment]:
        raise FragmentError(fragment, verdict.offenders.get(fragment))


# ------------------------------------------------------------ desugaring


def _leq_guard_index(parts, v: str):
    for k, c in enumerate(parts):
        pair = fo.as_leq(c)
        if pair is not None and v in pair and pair[0] != pair[1]:
            other = pair[0] if pair[1] == v else pair[1]
            strict = fo.Less(*pair)
            return k, other, strict
    return None


def desugar_nonstrict_guards(f: fo.FoFormula) -> fo.FoFormula:
    """Replace every non-strict quantifier guard by strict ones.

    ``exists y (g <= y & R)`` becomes ``R[y:=g] | exists y (g < y & R)``;
    ``forall y (g <= y & A -> C)`` becomes
    ``(!A[y:=g] | C[y:=g]) & forall y (g < y & A -> C)``.  Upper guards are
    handled symmetrically.  Both rewrites are equivalences under every
    assignment.
    """
    verdict = classify_fo(f)
    if not (verdict["coSafetyFO"] or verdict["SafetyFO"]):
        raise FragmentError(
            "coSafetyFO or SafetyFO", verdict.offenders.get("coSafetyFO"), "guards must be admitted shapes"
        )
    return _desugar(fo.normalize_bound(f))


def _desugar(g: fo.FoFormula) -> fo.FoFormula:
    if isinstance(g, fo.LITERALS):
        return g
    if isinstance(g, fo.Exists):
        parts = fo.conjuncts(g.body)
        branches = []
        while (hit := _leq_guard_index(parts, g.var)) is not None:
            k, other, strict = hit
            rest = parts[:k] + parts[k + 1 :]
            branches.append(_desugar(fo.substitute(fo.conj(rest), {g.var: other})))
            parts = parts[:k] + [strict] + parts[k + 1 :]
        if not branches:
            return fo.Exists(g.var, _desugar(g.body))
        return fo.disj(branches + [fo.Exists(g.var, _desugar(fo.conj(parts)))])
    if isinstance(g, fo.Forall):
        split = guarded_implication(g.body, g.var)
        if split is None:
            return fo.Forall(g.var, _desugar(g.body))
        guards, consequent = split
        branches = []
        while (hit := _leq_guard_index(guards, g.var)) is not None:
            k, other, strict = hit
            rest = guards[:k] + guards[k + 1 :]
            at = {g.var: other}
            inst = fo.substitute(consequent, at)
            if rest:
                inst = fo.Or(negate_fo_nnf(fo.substitute(fo.conj(rest), at)), inst)
            branches.append(_desugar(inst))
            guards = guards[:k] + [strict] + guards[k + 1 :]
        body = fo.Implies(fo.conj(guards), _desugar(consequent))
        return fo.conj(branches + [fo.Forall(g.var, body)])
    return fo.rebuild(g, *(_desugar(c) for c in g.children))


def has_nonstrict_guards(f: fo.FoFormula) -> bool:
    for n in fo.walk(f):
        if isinstance(n, fo.Exists):
            if _leq_guard_index(fo.conjuncts(n.body), n.var) is not None:
                return True
        elif isinstance(n, fo.Forall):
            split = guarded_implication(n.body, n.var)
            if split and _leq_guard_index(split[0], n.var) is not None:
                return True
    return False
