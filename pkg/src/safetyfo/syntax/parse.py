"""Recursive-descent parsers for the ASCII formula grammars.

LTL precedence, loosest first: ``->`` (right associative), ``|``, ``&``,
the temporal binaries ``U R S T`` (right associative), then the prefix
operators ``! X wX Y Z F G O H``.

FO uses the same Boolean layer.  ``exists v . body`` and ``forall v . body``
extend as far right as possible.  Atoms are ``v < w``, ``v <= w``, ``v = w``,
``v != w``, ``P(v)``, ``true`` and ``false``.  A predicate may be written with
its letter name or with the first character capitalised (``P(x)`` and
``p(x)`` both refer to letter ``p``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import fo
from . import ltl


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        line = text.count("\n", 0, offset) + 1
        col = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.column = col
        self.offset = offset


class UnknownAtomError(ValueError):
    def __init__(self, letter: str, alphabet):
        super().__init__(
            f"unknown atom {letter!r}; declared alphabet is {{{', '.join(sorted(alphabet))}}}"
        )
        self.letter = letter


LETTER_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op>->|<=|!=|[!&|().<=])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "ident", "eof"
    value: str
    offset: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, alphabet):
        self.text = text
        self.toks = tokenize(text)
        self.pos = 0
        self.alphabet = None if alphabet is None else frozenset(alphabet)

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.value)
        raise FormulaSyntaxError(f"{message}, found {found}", self.text, tok.offset)

    def expect(self, value: str) -> Token:
        if self.tok.value != value or self.tok.kind == "eof":
            self.error(f"expected {value!r}")
        return self.advance()

    def at(self, *values: str) -> bool:
        return self.tok.kind != "eof" and self.tok.value in values

    def finish(self):
        if self.tok.kind != "eof":
            self.error("expected end of input")

    def check_letter(self, letter: str, tok: Token) -> str:
        if not LETTER_RE.match(letter):
            raise FormulaSyntaxError(f"invalid letter name {letter!r}", self.text, tok.offset)
        if self.alphabet is not None and letter not in self.alphabet:
            raise UnknownAtomError(letter, self.alphabet)
        return letter


_LTL_UNARY = {
    "!": ltl.Not,
    "X": ltl.Next,
    "wX": ltl.WeakNext,
    "Y": ltl.Yesterday,
    "Z": ltl.WeakYesterday,
    "F": ltl.Eventually,
    "G": ltl.Globally,
    "O": ltl.Once,
    "H": ltl.Historically,
}
_LTL_TEMPORAL = {"U": ltl.Until, "R": ltl.Release, "S": ltl.Since, "T": ltl.Triggered}
LTL_KEYWORDS = frozenset(_LTL_UNARY) | frozenset(_LTL_TEMPORAL) | {"true", "false"}


class _LtlParser(_Parser):
    def formula(self) -> ltl.Formula:
        left = self.disjunction()
        if self.at("->"):
            self.advance()
            return ltl.Implies(left, self.formula())
        return left

    def disjunction(self) -> ltl.Formula:
        out = self.conjunction()
        while self.at("|"):
            self.advance()
            out = ltl.Or(out, self.conjunction())
        return out

    def conjunction(self) -> ltl.Formula:
        out = self.temporal()
        while self.at("&"):
            self.advance()
            out = ltl.And(out, self.temporal())
        return out

    def temporal(self) -> ltl.Formula:
        left = self.unary()
        if self.tok.kind == "ident" and self.tok.value in _LTL_TEMPORAL:
            cls = _LTL_TEMPORAL[self.advance().value]
            return cls(left, self.temporal())
        return left

    def unary(self) -> ltl.Formula:
        tok = self.tok
        if tok.value in _LTL_UNARY and tok.kind != "eof":
            self.advance()
            return _LTL_UNARY[tok.value](self.unary())
        return self.primary()

    def primary(self) -> ltl.Formula:
        tok = self.tok
        if tok.kind == "op" and tok.value == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            if tok.value == "true":
                self.advance()
                return ltl.TRUE
            if tok.value == "false":
                self.advance()
                return ltl.FALSE
            if tok.value in LTL_KEYWORDS:
                self.error("expected an operand")
            self.advance()
            return ltl.Atom(self.check_letter(tok.value, tok))
        self.error("expected an atom, constant or '('")


def parse_ltl(text: str, alphabet=None) -> ltl.Formula:
    """Parse an LTL formula; ``alphabet=None`` accepts any well-formed atom."""
    p = _LtlParser(text, alphabet)
    out = p.formula()
    p.finish()
    return out


FO_KEYWORDS = frozenset({"exists", "forall", "true", "false"})
_VAR_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class _FoParser(_Parser):
    def formula(self) -> fo.FoFormula:
        left = self.disjunction()
        if self.at("->"):
            self.advance()
            return fo.Implies(left, self.formula())
        return left

    def disjunction(self) -> fo.FoFormula:
        out = self.conjunction()
        while self.at("|"):
            self.advance()
            out = fo.Or(out, self.conjunction())
        return out

    def conjunction(self) -> fo.FoFormula:
        out = self.unary()
        while self.at("&"):
            self.advance()
            out = fo.And(out, self.unary())
        return out

    def unary(self) -> fo.FoFormula:
        tok = self.tok
        if tok.kind == "op" and tok.value == "!":
            self.advance()
            nxt, after = self.tok, self.peek()
            if (
                nxt.kind == "ident"
                and nxt.value not in FO_KEYWORDS
                and after.kind == "op"
                and after.value == "("
            ):
                pred = self.primary()
                return fo.NegPred(pred.letter, pred.var)
            return fo.Not(self.unary())
        if tok.kind == "ident" and tok.value in ("exists", "forall"):
            self.advance()
            var = self.variable()
            self.expect(".")
            body = self.formula()
            cls = fo.Exists if tok.value == "exists" else fo.Forall
            return cls(var, body)
        return self.primary()

    def variable(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.value in FO_KEYWORDS or not _VAR_RE.match(tok.value):
            self.error("expected a variable name")
        self.advance()
        return tok.value

    def primary(self) -> fo.FoFormula:
        tok = self.tok
        if tok.kind == "op" and tok.value == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind != "ident":
            self.error("expected an atom, quantifier or '('")
        if tok.value == "true":
            self.advance()
            return fo.TRUE
        if tok.value == "false":
            self.advance()
            return fo.FALSE
        if self.peek().kind == "op" and self.peek().value == "(":
            self.advance()
            self.advance()
            var = self.variable()
            self.expect(")")
            letter = tok.value[0].lower() + tok.value[1:]
            return fo.Pred(self.check_letter(letter, tok), var)
        left = self.variable()
        op = self.tok
        if not self.at("<", "<=", "=", "!="):
            self.error("expected a comparison operator")
        self.advance()
        right = self.variable()
        if op.value == "<":
            return fo.Less(left, right)
        if op.value == "<=":
            return fo.leq(left, right)
        if op.value == "=":
            return fo.Eq(left, right)
        return fo.Neq(left, right)


def parse_fo(text: str, alphabet=None, normalize: bool = True) -> fo.FoFormula:
    """Parse an FO formula.

    With ``normalize`` (the default) bound variables are renamed apart so that
    no binder shadows another binder or a free variable.
    """
    p = _FoParser(text, alphabet)
    out = p.formula()
    p.finish()
    return fo.normalize_bound(out) if normalize else out
