"""Normal form of coSafetyFO formulas as disjunctions of existential chains,
and its translation to co-safety LTL without weak next.

An :class:`ExistsForm` describes positions ``x0 < x1 < ... < xn`` of a word
together with

* a class mask ``alphas[j]`` that the state at ``xj`` must belong to,
* a class mask ``betas[j]`` that every state strictly between ``xj`` and
  ``x(j+1)`` must belong to,
* bindings of free variables to chain positions, the root variable always
  bound to ``x0``.

A :class:`NormalForm` is a finite disjunction of such forms.  The
translation is exact for every assignment in which no free variable lies
before the root variable (for a formula with one free variable: always).

How the engine treats each connective:

* atoms enumerate the orderings of their variables and the root;
* disjunction concatenates;
* conjunction merges two chains in every order-compatible way, identifying
  positions where allowed;
* a guarded existential forgets the binding of its variable;
* a guarded universal is expanded per arrangement of the outer variables.
  Between two consecutive outer positions, the chains of the body split into
  the part inside the open interval and the rest.  The words that can fill
  the interval form a regular language, which :mod:`.automata` writes back
  as a union of chains.  This last step can fail: some coSafetyFO formulas
  have no normal form at all, and then :class:`NormalFormError` is raised.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..fragments import FragmentError, classify_fo, desugar_nonstrict_guards
from ..semantics import Word
from ..syntax import fo, ltl
from ..syntax.transform import guarded_implication, negate_fo_nnf, simplify
from .automata import (
    Chain,
    MarkedChain,
    NotExpressibleError,
    chain_in_chain,
    everywhere_chains,
    everywhere_language,
)


class NormalFormError(ValueError):
    pass


class NormalFormBudgetError(NormalFormError):
    def __init__(self, budget: int, stats: Mapping[str, int]):
        detail = ", ".join(f"{k}={v}" for k, v in stats.items())
        super().__init__(f"normal-form budget of {budget} exceeded ({detail})")
        self.budget = budget
        self.stats = dict(stats)


@dataclass(frozen=True)
class ExistsForm:
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    bindings: tuple[tuple[str, int], ...]

    @property
    def n(self) -> int:
        """Index of the last chain position (the form quantifies n+1 positions)."""
        return len(self.alphas) - 1

    def binding(self, var: str) -> int | None:
        return dict(self.bindings).get(var)

    def check(self, root: str) -> None:
        """Raise ``AssertionError`` unless the structural invariants hold."""
        assert len(self.betas) == len(self.alphas) - 1
        assert (root, 0) in self.bindings, "root must be bound to x0"
        assert all(0 <= i <= self.n for _, i in self.bindings)
        assert len({v for v, _ in self.bindings}) == len(self.bindings)


@dataclass(frozen=True)
class NormalForm:
    free: tuple[str, ...]
    letters: tuple[str, ...]
    disjuncts: tuple[ExistsForm, ...]

    @property
    def root(self) -> str:
        return self.free[0]

    @property
    def n_classes(self) -> int:
        return 1 << len(self.letters)

    def class_of(self, state: frozenset) -> int:
        return sum(1 << k for k, p in enumerate(self.letters) if p in state)

    def check(self) -> None:
        for d in self.disjuncts:
            d.check(self.root)
            assert {v for v, _ in d.bindings} <= set(self.free)
            full = (1 << self.n_classes) - 1
            assert all(0 < a <= full for a in d.alphas)
            assert all(0 <= b <= full for b in d.betas)

    def mask_str(self, mask: int) -> str:
        return str(mask_formula(mask, self.letters))

    def to_structured(self) -> str:
        lines = [
            f"free: {','.join(self.free)}",
            f"letters: {','.join(self.letters)}",
            f"disjuncts: {len(self.disjuncts)}",
        ]
        for k, d in enumerate(self.disjuncts, 1):
            lines.append(f"disjunct {k}:")
            lines.append(f"  variables: {d.n + 1}")
            lines.append("  bindings: " + ", ".join(f"{v}=x{i}" for v, i in d.bindings))
            for j, a in enumerate(d.alphas):
                lines.append(f"  alpha{j}: {self.mask_str(a)}")
            for j, b in enumerate(d.betas, 1):
                lines.append(f"  beta{j}: {self.mask_str(b)}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_structured()


# ----------------------------------------------------------- mask helpers


@functools.lru_cache(maxsize=None)
def _mask_expr(mask: int, letters: tuple[str, ...]):
    from sympy import symbols
    from sympy.logic import SOPform

    syms = symbols(list(letters)) if len(letters) > 1 else (symbols(letters[0]),)
    minterms = [
        [(c >> k) & 1 for k in range(len(letters))] for c in range(1 << len(letters)) if (mask >> c) & 1
    ]
    return SOPform(list(syms), minterms)


def mask_formula(mask: int, letters: tuple[str, ...]) -> ltl.Formula:
    """Propositional formula (as LTL) true exactly on the classes in ``mask``."""
    full = (1 << (1 << len(letters))) - 1
    if mask == full:
        return ltl.TRUE
    if mask == 0:
        return ltl.FALSE
    return _from_sympy(_mask_expr(mask, letters))


def _from_sympy(e) -> ltl.Formula:
    from sympy.logic.boolalg import And, Not, Or

    if isinstance(e, Not):
        return ltl.Not(_from_sympy(e.args[0]))
    if isinstance(e, (And, Or)):
        parts = sorted((_from_sympy(a) for a in e.args), key=str)
        return (ltl.conj if isinstance(e, And) else ltl.disj)(parts)
    if e is True or str(e) == "True":
        return ltl.TRUE
    if e is False or str(e) == "False":
        return ltl.FALSE
    return ltl.Atom(str(e))


def _prop_to_fo(f: ltl.Formula, var: str) -> fo.FoFormula:
    if isinstance(f, ltl.Atom):
        return fo.Pred(f.name, var)
    if isinstance(f, ltl.Not):
        return fo.NegPred(f.arg.name, var)
    if isinstance(f, ltl.TrueF):
        return fo.TRUE
    if isinstance(f, ltl.FalseF):
        return fo.FALSE
    cls = fo.And if isinstance(f, ltl.And) else fo.Or
    return cls(_prop_to_fo(f.left, var), _prop_to_fo(f.right, var))


# ------------------------------------------------------------------ engine


def _weak_orders(items: Sequence[str], root: str):
    """Ordered partitions of ``items`` (which contain ``root``) with the
    root in the first block, as rank maps."""
    others = [v for v in items if v != root]
    for m in range(1, len(others) + 2):
        for ranks in itertools.product(range(m), repeat=len(others)):
            used = set(ranks) | {0}
            if len(used) == m:
                yield {root: 0, **dict(zip(others, ranks))}, m


class _Engine:
    def __init__(self, letters: tuple[str, ...], root: str, budget: int, chain_cap: int):
        self.letters = letters
        self.root = root
        self.budget = budget
        self.chain_cap = chain_cap
        self.n_classes = 1 << len(letters)
        self.full = (1 << self.n_classes) - 1
        self.stats = {"forms": 0, "merges": 0, "interval_languages": 0}
        self._memo: dict[fo.FoFormula, tuple[ExistsForm, ...]] = {}

    def letter_mask(self, p: str) -> int:
        if p not in self.letters:
            return 0
        k = self.letters.index(p)
        return sum(1 << c for c in range(self.n_classes) if (c >> k) & 1)

    def _tick(self, key: str, amount: int = 1) -> None:
        self.stats[key] += amount
        if self.stats["forms"] + self.stats["merges"] > self.budget:
            raise NormalFormBudgetError(self.budget, self.stats)

    def make(self, alphas, betas, bindings) -> ExistsForm:
        self._tick("forms")
        return ExistsForm(tuple(alphas), tuple(betas), tuple(sorted(bindings)))

    # -- skeletons

    def skeleton(self, ranks: Mapping[str, int], m: int) -> ExistsForm:
        return self.make([self.full] * m, [self.full] * (m - 1), ranks.items())

    # -- recursion

    def nf(self, g: fo.FoFormula) -> tuple[ExistsForm, ...]:
        hit = self._memo.get(g)
        if hit is None:
            hit = self._nf(g)
            self._memo[g] = hit
        return hit

    def _nf(self, g: fo.FoFormula) -> tuple[ExistsForm, ...]:
        if isinstance(g, fo.FoTrue):
            return (self.make([self.full], [], [(self.root, 0)]),)
        if isinstance(g, fo.FoFalse):
            return ()
        if isinstance(g, (fo.Less, fo.Eq, fo.Neq)):
            a, b = g.left_var, g.right_var
            test = {
                fo.Less: lambda r: r[a] < r[b],
                fo.Eq: lambda r: r[a] == r[b],
                fo.Neq: lambda r: r[a] != r[b],
            }[type(g)]
            return self.atom({a, b}, test)
        if isinstance(g, (fo.Pred, fo.NegPred)):
            mask = self.letter_mask(g.letter)
            if isinstance(g, fo.NegPred):
                mask = self.full & ~mask
            return self.atom({g.var}, lambda r: True, (g.var, mask))
        if isinstance(g, fo.Or):
            return self.reduce(self.nf(g.left) + self.nf(g.right))
        if isinstance(g, fo.And):
            return self.conj(self.nf(g.left), self.nf(g.right))
        if isinstance(g, fo.Exists):
            return self.exists(g)
        if isinstance(g, fo.Forall):
            return self.forall(g)
        raise FragmentError("coSafetyFO", g)

    def atom(self, vars_: set, test, constraint=None) -> tuple[ExistsForm, ...]:
        items = sorted(vars_ | {self.root})
        out = []
        for ranks, m in _weak_orders(items, self.root):
            if not test(ranks):
                continue
            alphas = [self.full] * m
            if constraint is not None:
                var, mask = constraint
                alphas[ranks[var]] &= mask
                if not alphas[ranks[var]]:
                    continue
            out.append(self.make(alphas, [self.full] * (m - 1), ranks.items()))
        return tuple(out)

    def reduce(self, forms: Iterable[ExistsForm]) -> tuple[ExistsForm, ...]:
        """Deduplicate and drop forms subsumed by a pointwise larger form of
        the same shape."""
        uniq = list(dict.fromkeys(forms))
        groups: dict[tuple, list[ExistsForm]] = {}
        for f in uniq:
            groups.setdefault((f.n, f.bindings), []).append(f)
        keep = []
        for f in uniq:
            peers = groups[(f.n, f.bindings)]
            if not any(p is not f and _covers(p, f) for p in peers):
                keep.append(f)
        # forms binding only the root are plain patterns read from x0 onwards
        rooted = [f for f in keep if f.bindings == ((self.root, 0),)]
        if len(rooted) < 2:
            return tuple(keep)
        pattern = {f: self.as_chain(f) for f in rooted}
        dropped: set[ExistsForm] = set()
        for f in rooted:
            for g in rooted:
                if f is not g and g not in dropped and chain_in_chain(pattern[f], pattern[g], self.n_classes):
                    dropped.add(f)
                    break
        return tuple(f for f in keep if f not in dropped)

    def as_chain(self, f: ExistsForm) -> Chain:
        return Chain((0,) + f.betas + (self.full,), f.alphas)

    def conj(self, left: Sequence[ExistsForm], right: Sequence[ExistsForm]) -> tuple[ExistsForm, ...]:
        out = []
        for a in left:
            for b in right:
                out.extend(self.merge(a, b))
        return self.reduce(out)

    def conj_all(self, parts: Sequence[Sequence[ExistsForm]]) -> tuple[ExistsForm, ...]:
        acc: tuple[ExistsForm, ...] = tuple(parts[0])
        for p in parts[1:]:
            if not acc:
                return ()
            acc = self.conj(acc, p)
        return acc

    def merge(self, a: ExistsForm, b: ExistsForm) -> list[ExistsForm]:
        """All chains satisfying both ``a`` and ``b`` (roots identified)."""
        self._tick("merges")
        full = self.full
        bind_a, bind_b = dict(a.bindings), dict(b.bindings)
        at_a = [[] for _ in a.alphas]
        at_b = [[] for _ in b.alphas]
        for v, i in a.bindings:
            at_a[i].append(v)
        for v, j in b.bindings:
            at_b[j].append(v)
        n, m = a.n, b.n
        out: list[ExistsForm] = []

        def ok_a(i, j_target):
            return all(bind_b.get(v, j_target) == j_target for v in at_a[i])

        def ok_b(j, i_target):
            return all(bind_a.get(v, i_target) == i_target for v in at_b[j])

        def rec(i, j, alphas, betas, binds):
            if i == n and j == m:
                out.append(self.make(alphas, betas, binds.items()))
                return
            gap = (a.betas[i] if i < n else full) & (b.betas[j] if j < m else full)
            if i < n and ok_a(i + 1, None):
                alpha = a.alphas[i + 1] & (b.betas[j] if j < m else full)
                if alpha:
                    pos = len(alphas)
                    rec(i + 1, j, alphas + [alpha], betas + [gap],
                        {**binds, **{v: pos for v in at_a[i + 1]}})
            if j < m and ok_b(j + 1, None):
                alpha = b.alphas[j + 1] & (a.betas[i] if i < n else full)
                if alpha:
                    pos = len(alphas)
                    rec(i, j + 1, alphas + [alpha], betas + [gap],
                        {**binds, **{v: pos for v in at_b[j + 1]}})
            if i < n and j < m and ok_a(i + 1, j + 1) and ok_b(j + 1, i + 1):
                alpha = a.alphas[i + 1] & b.alphas[j + 1]
                if alpha:
                    pos = len(alphas)
                    rec(i + 1, j + 1, alphas + [alpha], betas + [gap],
                        {**binds, **{v: pos for v in at_a[i + 1] + at_b[j + 1]}})

        if ok_a(0, 0) and ok_b(0, 0):
            alpha0 = a.alphas[0] & b.alphas[0]
            if alpha0:
                rec(0, 0, [alpha0], [], {v: 0 for v in at_a[0] + at_b[0]})
        return out

    # -- quantifiers

    def exists(self, g: fo.Exists) -> tuple[ExistsForm, ...]:
        out = []
        for f in self.nf(g.body):
            if f.binding(g.var) is None:
                raise NormalFormError(f"quantified variable {g.var} is not guarded")
            out.append(self.make(f.alphas, f.betas, [(v, i) for v, i in f.bindings if v != g.var]))
        return self.reduce(out)

    def forall(self, g: fo.Forall) -> tuple[ExistsForm, ...]:
        z = g.var
        split = guarded_implication(g.body, z)
        if split is None:
            raise FragmentError("coSafetyFO", g)
        guards, consequent = split
        lowers, uppers, others = [], [], []
        for c in guards:
            if isinstance(c, fo.Less) and c.right_var == z and c.left_var != z:
                lowers.append(c.left_var)
            elif isinstance(c, fo.Less) and c.left_var == z and c.right_var != z:
                uppers.append(c.right_var)
            else:
                others.append(c)
        if not lowers or not uppers:
            raise FragmentError("coSafetyFO", g, "universal quantifiers need lower and upper guards")
        body = consequent
        if others:
            body = fo.Or(negate_fo_nnf(fo.conj(others)), consequent)
        outer = sorted(fo.free_vars(g) | {self.root})
        out: list[ExistsForm] = []
        for ranks, m in _weak_orders(outer, self.root):
            skel = self.skeleton(ranks, m)
            lo = max(ranks[v] for v in lowers)
            hi = min(ranks[v] for v in uppers)
            if lo >= hi:
                out.append(skel)
                continue
            rep = {}
            for v in outer:
                rep.setdefault(ranks[v], v)
            parts: list[Sequence[ExistsForm]] = [(skel,)]
            for block in range(lo + 1, hi):
                parts.append(self.nf(fo.substitute(body, {z: rep[block]})))
            for block in range(lo, hi):
                parts.append(self.gap(body, z, skel, block, rep))
            out.extend(self.conj_all(parts))
        return self.reduce(out)

    def gap(self, body: fo.FoFormula, z: str, skel: ExistsForm, block: int, rep) -> tuple[ExistsForm, ...]:
        """Forms equivalent, under the arrangement ``skel``, to
        ``forall z (rep[block] < z < rep[block+1] -> body)``."""
        u, w = rep[block], rep[block + 1]
        with_z = _insert(skel, block, Chain((self.full, self.full), (self.full,)), self.make)
        with_z = self.make(with_z.alphas, with_z.betas, with_z.bindings + ((z, block + 1),))
        groups: dict[ExistsForm, list[MarkedChain]] = {}
        for d in self.conj(self.nf(body), (with_z,)):
            p, q, t = d.binding(u), d.binding(w), d.binding(z)
            theta = MarkedChain(Chain(d.betas[p:q], d.alphas[p + 1 : q]), t - p - 1)
            shift = q - p - 1
            eta = self.make(
                d.alphas[: p + 1] + d.alphas[q:],
                d.betas[:p] + (self.full,) + d.betas[q:],
                [(v, i if i <= p else i - shift) for v, i in d.bindings if v != z],
            )
            groups.setdefault(eta, []).append(theta)
        etas = list(groups)
        out: list[ExistsForm] = []
        seen: dict[tuple[int, ...], object] = {}
        for size in range(len(etas) + 1):
            for subset in itertools.combinations(range(len(etas)), size):
                thetas = [th for k in subset for th in groups[etas[k]]]
                self._tick("interval_languages")
                lang = everywhere_language(thetas, self.n_classes)
                seen[subset] = lang
                if any(seen.get(subset[:k] + subset[k + 1 :]) == lang for k in range(size)):
                    continue
                try:
                    chains = everywhere_chains(thetas, self.n_classes, self.chain_cap)
                except NotExpressibleError as exc:
                    raise NormalFormError(
                        f"universal quantifier over {z} cannot be put in normal form: {exc}"
                    ) from exc
                base = self.conj_all([(skel,)] + [(etas[k],) for k in subset])
                if not base:
                    continue
                fills = [_insert(skel, block, ch, self.make) for ch in chains]
                out.extend(self.conj(base, fills))
        return self.reduce(out)


def _covers(big: ExistsForm, small: ExistsForm) -> bool:
    return all((s & ~b) == 0 for s, b in zip(small.alphas, big.alphas)) and all(
        (s & ~b) == 0 for s, b in zip(small.betas, big.betas)
    )


def _insert(skel: ExistsForm, block: int, ch: Chain, make) -> ExistsForm:
    """Replace the gap after position ``block`` of ``skel`` by the chain ``ch``."""
    k = len(ch.letters)
    alphas = skel.alphas[: block + 1] + ch.letters + skel.alphas[block + 1 :]
    betas = skel.betas[:block] + ch.stars + skel.betas[block + 1 :]
    bindings = [(v, i if i <= block else i + k) for v, i in skel.bindings]
    return make(alphas, betas, bindings)


# ------------------------------------------------------------- public API


def normal_form(
    f: fo.FoFormula,
    free: Sequence[str] | None = None,
    budget: int = 10**6,
    chain_cap: int = 64,
) -> NormalForm:
    """Disjunction of existential chains equivalent to the coSafetyFO formula ``f``.

    ``free`` fixes the free-variable signature; its first entry is the root
    variable (default: free variables in order of occurrence, or ``x`` for a
    sentence).  Equivalence holds for all assignments that place no free
    variable before the root.
    """
    verdict = classify_fo(f)
    if not verdict["coSafetyFO"]:
        raise FragmentError("coSafetyFO", verdict.offenders.get("coSafetyFO"))
    free = tuple(free) if free else (fo.free_vars_ordered(f) or ("x",))
    missing = fo.free_vars(f) - set(free)
    if missing:
        raise ValueError(f"free variables {sorted(missing)} missing from the signature")
    g = fo.normalize_bound(desugar_nonstrict_guards(f), avoid=set(free))
    letters = tuple(sorted(fo.letters(f)))
    engine = _Engine(letters, free[0], budget, chain_cap)
    forms = engine.nf(g)
    return NormalForm(free, letters, forms)


def eval_normal_form(nf: NormalForm, w: Word, assignment: Mapping[str, int]) -> bool:
    """Direct check of the chain semantics on a finite word."""
    classes = [nf.class_of(s) for s in w]
    return any(_form_holds(d, classes, assignment) for d in nf.disjuncts)


def _form_holds(d: ExistsForm, classes: Sequence[int], assignment: Mapping[str, int]) -> bool:
    at: dict[int, int] = {}
    for v, i in d.bindings:
        if v not in assignment:
            continue
        if at.setdefault(i, assignment[v]) != assignment[v]:
            return False
    n = len(classes)

    def fits(j: int, p: int) -> bool:
        return (d.alphas[j] >> classes[p]) & 1 == 1 and at.get(j, p) == p

    frontier = {p for p in range(n) if fits(0, p)}
    for j in range(1, d.n + 1):
        nxt = set()
        for p in frontier:
            for q in range(p + 1, n):
                if fits(j, q):
                    nxt.add(q)
                if not (d.betas[j - 1] >> classes[q]) & 1:
                    break
        frontier = nxt
        if not frontier:
            return False
    return bool(frontier)


def normal_form_to_fo(nf: NormalForm) -> fo.FoFormula:
    """The normal form written as an FO formula (for display and cross-checks)."""
    fresh = fo.FreshNames(set(nf.free))
    out = []
    for d in nf.disjuncts:
        xs = [fresh("x") for _ in d.alphas]
        parts: list[fo.FoFormula] = []
        for j in range(d.n):
            parts.append(fo.Less(xs[j], xs[j + 1]))
        for v, i in d.bindings:
            parts.append(fo.Eq(v, xs[i]))
        for j, a in enumerate(d.alphas):
            if a != (1 << nf.n_classes) - 1:
                parts.append(_prop_to_fo(mask_formula(a, nf.letters), xs[j]))
        for j, b in enumerate(d.betas):
            if b != (1 << nf.n_classes) - 1:
                wv = fresh("w")
                guard = fo.And(fo.Less(xs[j], wv), fo.Less(wv, xs[j + 1]))
                parts.append(fo.Forall(wv, fo.Implies(guard, _prop_to_fo(mask_formula(b, nf.letters), wv))))
        body: fo.FoFormula = fo.conj(parts)
        for xv in reversed(xs):
            body = fo.Exists(xv, body)
        out.append(body)
    return fo.disj(out)


def normalform_to_ltl(nf: NormalForm) -> ltl.Formula:
    """Co-safety LTL formula (no weak next) equivalent to a one-variable normal form.

    A chain becomes ``A0 & X(B1 U (A1 & X(B2 U ... An)))``.
    """
    if len(nf.free) != 1:
        raise ValueError(f"expected one free variable, got {list(nf.free)}")
    parts = []
    for d in nf.disjuncts:
        if any(v != nf.root for v, _ in d.bindings):
            raise ValueError("disjunct binds a variable other than the root")
        out = mask_formula(d.alphas[-1], nf.letters)
        for j in range(d.n - 1, -1, -1):
            step = ltl.Until(mask_formula(d.betas[j], nf.letters), out)
            out = ltl.And(mask_formula(d.alphas[j], nf.letters), ltl.Next(step))
        parts.append(simplify(out))
    return simplify(ltl.disj(parts))


def cosafetyfo_to_ltl(f: fo.FoFormula, budget: int = 10**6) -> ltl.Formula:
    """Co-safety LTL formula without weak next, equivalent at every position
    to the one-variable coSafetyFO formula ``f``.

    A universal quantifier whose consequent speaks only about the bound
    variable is translated on its own first and replaced by a fresh letter;
    the resulting gap languages are then plain ``mask*`` patterns.  Without
    this step some inputs, e.g. the first-order encoding of
    ``(X a | b) U c``, have no normal form at all.
    """
    free = fo.free_vars(f)
    if len(free) > 1:
        raise FragmentError("one-free-variable coSafetyFO", detail=f"free variables {sorted(free)}")
    require = classify_fo(f)
    if not require["coSafetyFO"]:
        raise FragmentError("coSafetyFO", require.offenders.get("coSafetyFO"))
    root = next(iter(free)) if free else "x"
    g = fo.normalize_bound(desugar_nonstrict_guards(f), avoid={root})
    fresh = fo.FreshNames(set(fo.letters(g)) | fo.all_vars(g))
    return _translate(g, root, fresh, {}, budget)


def _translate(g: fo.FoFormula, root: str, fresh, defs: dict, budget: int) -> ltl.Formula:
    g = _abstract(g, fresh, defs, budget)
    out = normalform_to_ltl(normal_form(g, free=(root,), budget=budget))
    return simplify(
        ltl.transform(out, lambda n: defs.get(n.name, n) if isinstance(n, ltl.Atom) else n)
    )


def _is_propositional(g: fo.FoFormula) -> bool:
    return all(isinstance(n, (fo.Pred, fo.NegPred, fo.FoTrue, fo.FoFalse, fo.And, fo.Or)) for n in fo.walk(g))


def _abstract(g: fo.FoFormula, fresh, defs: dict, budget: int) -> fo.FoFormula:
    if isinstance(g, fo.LITERALS):
        return g
    if isinstance(g, fo.Forall):
        split = guarded_implication(g.body, g.var)
        if split is not None:
            guards, consequent = split
            consequent = _abstract(consequent, fresh, defs, budget)
            if fo.free_vars(consequent) <= {g.var} and not _is_propositional(consequent):
                sub = _translate(consequent, g.var, fresh, defs, budget)
                name = next((k for k, v in defs.items() if v == sub), None)
                if name is None:
                    name = fresh("aux")
                    defs[name] = sub
                consequent = fo.Pred(name, g.var)
            return fo.Forall(g.var, fo.Implies(fo.conj(guards), consequent))
    return fo.rebuild(g, *(_abstract(c, fresh, defs, budget) for c in g.children))
