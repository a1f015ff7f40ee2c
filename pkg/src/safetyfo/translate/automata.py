"""Small finite-automaton toolkit over letter classes.

A *class* is the restriction of a state to the letters of the formula under
translation, encoded as an int; a *mask* is a set of classes encoded as an
int bitmask.  A :class:`Chain` is the word pattern
``stars[0]* letters[0] stars[1]* ... letters[k-1] stars[k]*`` in which every
star and letter is a mask.  The normal-form engine needs one question
answered here: given several chains each with one marked letter, which words
have a matching chain marked at *every* position, and how can that language
be written as a finite union of chains.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence


class NotExpressibleError(ValueError):
    pass


@dataclass(frozen=True)
class Chain:
    stars: tuple[int, ...]
    letters: tuple[int, ...]

    def __post_init__(self):
        assert len(self.stars) == len(self.letters) + 1


@dataclass(frozen=True)
class MarkedChain:
    chain: Chain
    mark: int  # index into chain.letters


@dataclass(frozen=True)
class Dfa:
    start: int
    delta: tuple[tuple[int, ...], ...]  # delta[state][class]
    accepting: tuple[bool, ...]

    def accepts(self, word: Sequence[int]) -> bool:
        q = self.start
        for c in word:
            q = self.delta[q][c]
        return self.accepting[q]


def _bits(mask: int, c: int) -> bool:
    return (mask >> c) & 1 == 1


def everywhere_language(thetas: Sequence[MarkedChain], n_classes: int) -> Dfa:
    """DFA for the words ``s`` such that for every position ``i`` of ``s``
    some marked chain matches ``s`` with its mark at ``i``.  The empty word is
    always accepted."""
    # nondeterministic states: (chain index, chain position)
    starts = frozenset((t, 0) for t in range(len(thetas)))

    def step(states: frozenset, c: int, m: int) -> frozenset:
        out = set()
        for t, j in states:
            ch, mark = thetas[t].chain, thetas[t].mark
            if m == 0 and _bits(ch.stars[j], c):
                out.add((t, j))
            if j < len(ch.letters) and _bits(ch.letters[j], c) and m == (j == mark):
                out.add((t, j + 1))
        return frozenset(out)

    def matched(states: frozenset) -> bool:
        return any(j == len(thetas[t].chain.letters) for t, j in states)

    # projection of the "exactly one mark, no chain matches" language,
    # determinised on the fly; a macro state is a set of (states, marks used)
    start = frozenset({(starts, 0)})
    index = {start: 0}
    order = [start]
    delta: list[list[int]] = []
    queue = deque([start])
    while queue:
        macro = queue.popleft()
        row = []
        for c in range(n_classes):
            nxt = set()
            for states, used in macro:
                nxt.add((step(states, c, 0), used))
                if used == 0:
                    nxt.add((step(states, c, 1), 1))
            key = frozenset(nxt)
            if key not in index:
                index[key] = len(order)
                order.append(key)
                queue.append(key)
            row.append(index[key])
        delta.append(row)
    accepting = tuple(
        not any(used == 1 and not matched(states) for states, used in macro) for macro in order
    )
    return minimize(Dfa(0, tuple(tuple(r) for r in delta), accepting))


def minimize(d: Dfa) -> Dfa:
    """Minimal DFA, states renumbered in breadth-first order from the start
    state, so equal languages give equal objects."""
    reach = [d.start]
    seen = {d.start}
    for q in reach:
        for r in d.delta[q]:
            if r not in seen:
                seen.add(r)
                reach.append(r)
    block = {q: int(d.accepting[q]) for q in reach}
    while True:
        sig = {q: (block[q],) + tuple(block[r] for r in d.delta[q]) for q in reach}
        ids: dict[tuple, int] = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in reach}
        if len(ids) == len(set(block.values())):
            break
        block = new
    # canonical renumbering
    n_classes = len(d.delta[d.start])
    rep: dict[int, int] = {}
    order: list[int] = []
    todo = deque([block[d.start]])
    rep[block[d.start]] = 0
    order.append(d.start)
    any_member = {}
    for q in reach:
        any_member.setdefault(block[q], q)
    rows = []
    while todo:
        b = todo.popleft()
        q = any_member[b]
        row = []
        for c in range(n_classes):
            nb = block[d.delta[q][c]]
            if nb not in rep:
                rep[nb] = len(rep)
                todo.append(nb)
            row.append(rep[nb])
        rows.append(tuple(row))
    acc = [False] * len(rep)
    for b, k in rep.items():
        acc[k] = d.accepting[any_member[b]]
    return Dfa(0, tuple(rows), tuple(acc))


def chain_included(ch: Chain, d: Dfa) -> bool:
    """Is every word matching ``ch`` accepted by ``d``?"""
    n_classes = len(d.delta[0])
    k = len(ch.letters)
    start = (0, d.start)
    seen = {start}
    queue = deque([start])
    while queue:
        j, q = queue.popleft()
        if j == k and not d.accepting[q]:
            return False
        for c in range(n_classes):
            nxt = []
            if _bits(ch.stars[j], c):
                nxt.append((j, d.delta[q][c]))
            if j < k and _bits(ch.letters[j], c):
                nxt.append((j + 1, d.delta[q][c]))
            for pair in nxt:
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
    return True


def _chain_step(ch: Chain, states: frozenset, c: int) -> frozenset:
    out = set()
    for j in states:
        if _bits(ch.stars[j], c):
            out.add(j)
        if j < len(ch.letters) and _bits(ch.letters[j], c):
            out.add(j + 1)
    return frozenset(out)


def shortest_uncovered(d: Dfa, chains: Sequence[Chain]) -> list[int] | None:
    """Shortest (then least) word accepted by ``d`` and matched by no chain."""
    n_classes = len(d.delta[0])
    start = (d.start, tuple(frozenset({0}) for _ in chains))
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, states = node
        if d.accepting[q] and not any(
            len(ch.letters) in s for ch, s in zip(chains, states)
        ):
            word = []
            while parent[node] is not None:
                node, c = parent[node]
                word.append(c)
            return word[::-1]
        for c in range(n_classes):
            nxt = (d.delta[q][c], tuple(_chain_step(ch, s, c) for ch, s in zip(chains, states)))
            if nxt not in parent:
                parent[nxt] = (node, c)
                queue.append(nxt)
    return None


def generalize(word: Sequence[int], d: Dfa, n_classes: int) -> Chain:
    """Greedily widen the chain spelling ``word`` while it stays inside ``d``."""
    stars = [0] * (len(word) + 1)
    letters = [1 << c for c in word]
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(letters):
            cand_stars = stars[:i] + [stars[i] | stars[i + 1] | letters[i]] + stars[i + 2 :]
            cand_letters = letters[:i] + letters[i + 1 :]
            if chain_included(Chain(tuple(cand_stars), tuple(cand_letters)), d):
                stars, letters = cand_stars, cand_letters
                changed = True
            else:
                i += 1
        for j in range(len(stars)):
            for c in range(n_classes):
                if not _bits(stars[j], c):
                    cand = stars[:j] + [stars[j] | (1 << c)] + stars[j + 1 :]
                    if chain_included(Chain(tuple(cand), tuple(letters)), d):
                        stars = cand
                        changed = True
        for j in range(len(letters)):
            for c in range(n_classes):
                if not _bits(letters[j], c):
                    cand = letters[:j] + [letters[j] | (1 << c)] + letters[j + 1 :]
                    if chain_included(Chain(tuple(stars), tuple(cand)), d):
                        letters = cand
                        changed = True
    return Chain(tuple(stars), tuple(letters))


def _residual_inclusion(d: Dfa) -> list[list[bool]]:
    """``incl[p][r]``: every word accepted from ``p`` is accepted from ``r``."""
    n = len(d.delta)
    incl = [[not d.accepting[p] or d.accepting[r] for r in range(n)] for p in range(n)]
    changed = True
    while changed:
        changed = False
        for p in range(n):
            for r in range(n):
                if incl[p][r] and not all(incl[a][b] for a, b in zip(d.delta[p], d.delta[r])):
                    incl[p][r] = False
                    changed = True
    return incl


def _compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """Transformation of ``u v`` from those of ``u`` (``f``) and ``v`` (``g``)."""
    return tuple(g[q] for q in f)


def _idempotent_power(f: tuple[int, ...]) -> tuple[int, ...]:
    e = f
    while _compose(e, e) != e:
        e = _compose(e, f)
    return e


def chain_expressible(d: Dfa, limit: int = 200_000) -> bool:
    """Is the language of ``d`` a finite union of chains?

    Decided on the transition monoid: the language is such a union exactly
    when ``e y e`` is at least as permissive as ``e`` for every idempotent
    power ``e`` of a word ``x`` and every word ``y`` using only letters of
    ``x``.
    """
    states = range(len(d.delta))
    # classes acting identically are interchangeable letters
    gens = sorted({tuple(d.delta[q][c] for q in states) for c in range(len(d.delta[0]))})
    ident = tuple(states)
    seen = {(ident, 0)}
    queue = deque([(ident, 0)])
    while queue:
        f, content = queue.popleft()
        for c, g in enumerate(gens):
            nxt = (_compose(f, g), content | (1 << c))
            if nxt not in seen:
                if len(seen) >= limit:
                    raise NotExpressibleError(f"transition monoid exceeds {limit} elements")
                seen.add(nxt)
                queue.append(nxt)
    by_content: dict[int, set] = {}
    for f, content in seen:
        by_content.setdefault(content, set()).add(f)
    incl = _residual_inclusion(d)
    for content, xs in by_content.items():
        if content == 0:
            continue
        ys = set().union(*(fs for c2, fs in by_content.items() if c2 & ~content == 0))
        for e in {_idempotent_power(x) for x in xs}:
            for y in ys:
                eye = _compose(_compose(e, y), e)
                if not all(incl[e[q]][eye[q]] for q in states):
                    return False
    return True


def as_chains(d: Dfa, n_classes: int, cap: int = 64) -> list[Chain]:
    """Write the language of ``d`` as a finite union of chains.

    Raises :class:`NotExpressibleError` when no finite union exists, or when
    ``cap`` chains do not suffice.
    """
    if not chain_expressible(d):
        raise NotExpressibleError("the interval language is not a finite union of chains")
    out: list[Chain] = []
    while True:
        word = shortest_uncovered(d, out)
        if word is None:
            return out
        if len(out) >= cap:
            raise NotExpressibleError(
                f"language needs more than {cap} interval patterns "
                f"(uncovered word of length {len(word)})"
            )
        out.append(generalize(word, d, n_classes))


def everywhere_chains(thetas: Sequence[MarkedChain], n_classes: int, cap: int = 64) -> list[Chain]:
    """Chains covering exactly the words accepted by :func:`everywhere_language`."""
    if not thetas:
        return [Chain((0,), ())]
    if len(thetas) == 1 and len(thetas[0].chain.letters) == 1:
        # one pattern "s0* c s1*": first letter in c&s0, last in c&s1, middle in all three
        ch = thetas[0].chain
        c, s0, s1 = ch.letters[0], ch.stars[0], ch.stars[1]
        if c & s0 & s1 == c:
            return [Chain((c,), ())]
        out = [Chain((0,), ())]
        if c:
            out.append(Chain((0, 0), (c,)))
        if c & s0 and c & s1:
            out.append(Chain((0, c & s0 & s1, 0), (c & s0, c & s1)))
        return out
    return as_chains(everywhere_language(thetas, n_classes), n_classes, cap)


def chain_in_chain(small: Chain, big: Chain, n_classes: int) -> bool:
    """Is every word matching ``small`` also matched by ``big``?"""
    k, m = len(small.letters), len(big.letters)
    start = (0, frozenset({0}))
    seen = {start}
    queue = deque([start])
    while queue:
        j, states = queue.popleft()
        if j == k and m not in states:
            return False
        for c in range(n_classes):
            moves = []
            if _bits(small.stars[j], c):
                moves.append(j)
            if j < k and _bits(small.letters[j], c):
                moves.append(j + 1)
            if not moves:
                continue
            nxt_states = _chain_step(big, states, c)
            for nj in moves:
                pair = (nj, nxt_states)
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
    return True
