"""Text syntax for formulas.

Grammar, loosest binding first::

    iff     := implies [ "<->" implies ]        (non-associative)
    implies := xor [ "->" implies ]             (right-associative)
    xor     := or { "^" or }                    (left-associative, binary)
    or      := and { "|" and }                  (n-ary)
    and     := unary { "&" unary }              (n-ary)
    unary   := "~" unary | atom | "(" iff ")"

Unicode aliases ``¬ ∧ ∨ ⊻ → ↔`` are accepted on input; output is ASCII.
Spans are character offsets into the input string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import And, Atom, Formula, Iff, Implies, Not, Or, Xor

_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "⊻": "^", "→": "->", "↔": "<->"}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><->|->|[~&|^()]|[¬∧∨⊻→↔])"
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, expected=frozenset()):
        self.message = message
        self.span = span
        self.expected = frozenset(expected)
        super().__init__(f"{message} at {span.start}:{span.end}")

    def caret(self, text: str) -> str:
        """Two-line rendering pointing at the offending span."""
        width = max(1, self.span.end - self.span.start)
        return f"{text}\n{' ' * self.span.start}{'^' * width}"


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", an operator string, or "eof"
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1))
        if m.lastgroup == "ident":
            tokens.append(_Token("ident", m.group(), pos, m.end()))
        elif m.lastgroup == "op":
            op = _ALIASES.get(m.group(), m.group())
            tokens.append(_Token(op, m.group(), pos, m.end()))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text), len(text)))
    return tokens


_OPERAND_START = frozenset({"identifier", "~", "("})


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected, message=None):
        tok = self.tok
        if message is None:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            message = f"unexpected {found}"
        raise ParseError(message, SourceSpan(tok.start, tok.end), expected)

    def parse(self) -> Formula:
        f = self.iff()
        if self.tok.kind != "eof":
            self.fail({"<->", "->", "^", "|", "&", "end of input"})
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.tok.kind != "<->":
            return left
        self.advance()
        right = self.implies()
        if self.tok.kind == "<->":
            self.fail({"end of input", ")"}, "chained '<->' is ambiguous; add parentheses")
        return Iff(left, right)

    def implies(self) -> Formula:
        left = self.xor()
        if self.tok.kind != "->":
            return left
        self.advance()
        return Implies(left, self.implies())

    def xor(self) -> Formula:
        f = self.or_()
        while self.tok.kind == "^":
            self.advance()
            f = Xor(f, self.or_())
        return f

    def or_(self) -> Formula:
        parts = [self.and_()]
        while self.tok.kind == "|":
            self.advance()
            parts.append(self.and_())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def and_(self) -> Formula:
        parts = [self.unary()]
        while self.tok.kind == "&":
            self.advance()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "~":
            self.advance()
            return Not(self.unary())
        if tok.kind == "ident":
            self.advance()
            return Atom(tok.text)
        if tok.kind == "(":
            self.advance()
            inner = self.iff()
            if self.tok.kind != ")":
                self.fail({")"}, "unbalanced parenthesis: expected ')'")
            self.advance()
            return inner
        if tok.kind == ")":
            self.fail(_OPERAND_START, "unbalanced parenthesis: unexpected ')'")
        self.fail(_OPERAND_START)


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula; raises :class:`ParseError`."""
    return _Parser(text).parse()


# binding strength: larger binds tighter
_PREC = {Iff: 1, Implies: 2, Xor: 3, Or: 4, And: 5, Not: 6, Atom: 7}


def _wrap(f: Formula, parens: bool) -> str:
    s = to_text(f)
    return f"({s})" if parens else s


def to_text(f: Formula) -> str:
    """Render ``f`` with the fewest parentheses that parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    prec = _PREC[type(f)]
    if isinstance(f, Not):
        return "~" + _wrap(f.child, _PREC[type(f.child)] < prec)
    if isinstance(f, (And, Or)):
        op = " & " if isinstance(f, And) else " | "
        # same-kind children are parenthesized to keep the nesting explicit
        return op.join(_wrap(c, _PREC[type(c)] <= prec) for c in f.children)
    lp, rp = _PREC[type(f.left)], _PREC[type(f.right)]
    if isinstance(f, Xor):
        return f"{_wrap(f.left, lp < prec)} ^ {_wrap(f.right, rp <= prec)}"
    if isinstance(f, Implies):
        return f"{_wrap(f.left, lp <= prec)} -> {_wrap(f.right, rp < prec)}"
    return f"{_wrap(f.left, lp <= prec)} <-> {_wrap(f.right, rp <= prec)}"
