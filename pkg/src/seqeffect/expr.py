"""Parser and evaluator for small E0 expressions.

Grammar::

    expr    := term (op term)*          all ops in one chain must agree
    op      := "(+)" | "(.)"            orthosum, sequential product
    term    := primary ("'" | "^" INT)*
    primary := element | "0" | "1" | "(" expr ")"

There is no precedence between ``(+)`` and ``(.)``: mixing them without
parentheses is a parse error. Chains associate to the left. An undefined
orthosum makes the whole expression evaluate to ``None``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from seqeffect import algebra
from seqeffect.algebra import Element
from seqeffect.poly import AlgebraConfig, AlgebraError


class ExprError(AlgebraError):
    """Malformed expression."""


_TOKEN = re.compile(
    r"""
    \s*(?:
        (?P<element>[fg]\s*\([^()]*\))
      | (?P<oplus>\(\s*\+\s*\))
      | (?P<seq>\(\s*\.\s*\))
      | (?P<prime>')
      | (?P<caret>\^)
      | (?P<int>\d+)
      | (?P<lparen>\()
      | (?P<rparen>\))
    )""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, cfg: AlgebraConfig):
        self.cfg = cfg
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            where = "end of input" if tok is None else f"{tok.text!r} at offset {tok.pos}"
            raise ExprError(f"expected {kind}, found {where}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ExprError("empty expression")
        node = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            raise ExprError(f"unexpected {tok.text!r} at offset {tok.pos}")
        return node

    def expr(self):
        node = self.term()
        chain_op = None
        while (tok := self.peek()) is not None and tok.kind in ("oplus", "seq"):
            if chain_op is not None and tok.kind != chain_op:
                raise ExprError(
                    f"mixing (+) and (.) at offset {tok.pos} needs explicit parentheses"
                )
            chain_op = tok.kind
            self.i += 1
            node = (tok.kind, node, self.term())
        return node

    def term(self):
        node = self.primary()
        while (tok := self.peek()) is not None and tok.kind in ("prime", "caret"):
            self.i += 1
            if tok.kind == "prime":
                node = ("prime", node)
            else:
                exp = self.take("int")
                if int(exp.text) < 1:
                    raise ExprError(f"exponent must be >= 1 at offset {exp.pos}")
                node = ("power", node, int(exp.text))
        return node

    def primary(self):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if tok.kind == "element":
            self.i += 1
            return ("const", algebra.parse_element(tok.text, self.cfg))
        if tok.kind == "int" and tok.text in ("0", "1"):
            self.i += 1
            return ("const", algebra.zero(self.cfg) if tok.text == "0" else algebra.one(self.cfg))
        if tok.kind == "lparen":
            self.i += 1
            node = self.expr()
            self.take("rparen")
            return node
        raise ExprError(f"unexpected {tok.text!r} at offset {tok.pos}")


def parse(text: str, cfg: AlgebraConfig):
    """Parse ``text`` into a nested-tuple syntax tree."""
    return _Parser(text, cfg).parse()


def _eval(node) -> Element | None:
    kind = node[0]
    if kind == "const":
        return node[1]
    if kind == "prime":
        a = _eval(node[1])
        return None if a is None else algebra.orthosupplement(a)
    if kind == "power":
        a = _eval(node[1])
        return None if a is None else algebra.power(a, node[2])
    a, b = _eval(node[1]), _eval(node[2])
    if a is None or b is None:
        return None
    if kind == "oplus":
        return algebra.oplus(a, b)
    return algebra.seq(a, b)


def evaluate(text: str, cfg: AlgebraConfig) -> Element | None:
    """Value of the expression, or ``None`` if some orthosum is undefined."""
    return _eval(parse(text, cfg))
