"""Reading and printing polynomials in the ``ReadExpr`` text syntax.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?          right-associative
    atom   := INT | NAME index? | '(' expr ')'
    index  := '[' INT (',' INT)* ']'

Exponents must evaluate to non-negative integers and division is only allowed
by nonzero constants.  Implicit multiplication (``2x``) is rejected.
"""

from __future__ import annotations

import re
from collections import namedtuple
from fractions import Fraction

from .errors import DivisionByNonConstant, ParseError, UnknownIndeterminate

Token = namedtuple("Token", ["kind", "value", "pos"])

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<op>::=|:=|\.\.|<=|>=|<>|!=|[-+*/^()\[\],;|.=<>{}:])
    """,
    re.VERBOSE,
)


def tokenize(text, extended=False):
    """Split ``text`` into tokens; ``extended`` admits the command-language symbols too."""
    tokens = []
    pos = 0
    simple = set("+-*/^()[],")
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group()
        if kind == "num":
            if "." in value:
                if not extended:
                    raise ParseError("decimal literals are not polynomial syntax", pos, text)
                value = Fraction(value)
            else:
                value = int(value)
        elif kind == "str":
            if not extended:
                raise ParseError("unexpected string literal", pos, text)
            value = bytes(value[1:-1], "utf-8").decode("unicode_escape")
        elif kind == "op" and not extended and value not in simple:
            raise ParseError(f"unexpected symbol {value!r}", pos, text)
        if kind != "ws":
            tokens.append(Token(kind, value, pos))
        pos = m.end()
    tokens.append(Token("end", None, len(text)))
    return tokens


# AST nodes: ("num", value, pos) ("name", text, pos) ("neg", node, pos) ("bin", op, lhs, rhs, pos)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok.pos, self.text)

    def expect(self, value):
        tok = self.next()
        if tok.value != value or tok.kind != "op":
            raise self.error(f"expected {value!r}", tok)
        return tok

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind in ("num", "name") or tok.value == "(":
                raise self.error("implicit multiplication is not allowed; use '*'", tok)
            raise self.error(f"unexpected {tok.value!r}", tok)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            tok = self.next()
            node = ("bin", tok.value, node, self.term(), tok.pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            tok = self.next()
            node = ("bin", tok.value, node, self.unary(), tok.pos)
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.next()
            operand = self.unary()
            return ("neg", operand, tok.pos) if tok.value == "-" else operand
        return self.power()

    def power(self):
        node = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.next()
            node = ("bin", "^", node, self.unary(), tok.pos)
        return node

    def atom(self):
        tok = self.next()
        if tok.kind == "num":
            return ("num", tok.value, tok.pos)
        if tok.kind == "name":
            name = tok.value
            if self.peek().kind == "op" and self.peek().value == "[":
                self.next()
                idx = [self._index_int()]
                while self.peek().value == ",":
                    self.next()
                    idx.append(self._index_int())
                self.expect("]")
                name = f"{name}[{','.join(map(str, idx))}]"
            return ("name", name, tok.pos)
        if tok.kind == "op" and tok.value == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok.value!r}", tok)

    def _index_int(self):
        tok = self.next()
        if tok.kind != "num":
            raise self.error("index must be an integer literal", tok)
        return tok.value


def parse_ast(text):
    return _Parser(text).parse()


def _eval_rational(node, text):
    kind = node[0]
    if kind == "num":
        return Fraction(node[1])
    if kind == "name":
        raise ParseError("exponent must be a non-negative integer", node[2], text)
    if kind == "neg":
        return -_eval_rational(node[1], text)
    _, op, lhs, rhs, pos = node
    a = _eval_rational(lhs, text)
    if op == "^":
        return a ** _exponent(rhs, text)
    b = _eval_rational(rhs, text)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if b == 0:
        raise ParseError("division by zero", pos, text)
    return a / b


def _exponent(node, text):
    e = _eval_rational(node, text)
    if e.denominator != 1 or e < 0:
        pos = node[-1] if node[0] == "bin" else node[2]
        raise ParseError("exponent must be a non-negative integer", pos, text)
    return int(e)


def _eval_poly(node, ring, text):
    kind = node[0]
    if kind == "num":
        return ring.constant(node[1])
    if kind == "name":
        if not ring.has_indet(node[1]):
            raise UnknownIndeterminate(f"unknown indeterminate {node[1]!r}", node[2], text)
        return ring.indet(node[1])
    if kind == "neg":
        return -_eval_poly(node[1], ring, text)
    _, op, lhs, rhs, pos = node
    if op == "^":
        base = _eval_poly(lhs, ring, text)
        return base ** _exponent(rhs, text)
    a = _eval_poly(lhs, ring, text)
    b = _eval_poly(rhs, ring, text)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if not b.is_constant():
        raise DivisionByNonConstant("division by a non-constant polynomial", pos, text)
    if b.is_zero():
        raise ParseError("division by zero", pos, text)
    return a / b


def parse_polynomial(ring, text):
    """Parse ``text`` into a normalized polynomial of ``ring``."""
    return _eval_poly(parse_ast(text), ring, text)


read_expr = parse_polynomial


# -- printing -------------------------------------------------------------------


def format_pp(names, pp):
    parts = []
    for name, e in zip(names, pp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f):
    """Canonical text: terms descending, ``+(-1/4)*z`` style for non-integer rationals."""
    if f.is_zero():
        return "0"
    K = f.ring.field
    names = f.ring.names
    out = []
    for k, (c, pp) in enumerate(f.terms):
        neg, mag, is_int = K.coeff_text(c)
        mono = format_pp(names, pp)
        sep = "" if k == 0 else " "
        if not mono:
            out.append(f"{sep}{'-' if neg else ('+' if k else '')}{mag}")
        elif is_int:
            body = mono if mag == "1" else f"{mag}*{mono}"
            out.append(f"{sep}{'-' if neg else ('+' if k else '')}{body}")
        elif "/" in mag:
            out.append(f"{sep}{'+' if k else ''}({'-' if neg else ''}{mag})*{mono}")
        else:
            out.append(f"{sep}{'-' if neg else ('+' if k else '')}{mag}*{mono}")
    return "".join(out)


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_list(items):
    return "[" + ",  ".join(str(x) for x in items) + "]"


def format_ideal(gens):
    if not gens:
        return "ideal(0)"
    return "ideal(" + ",  ".join(str(g) for g in gens) + ")"


def indent_list(items):
    if not items:
        return "[\n]"
    return "[\n" + ",\n".join(f"  {x}" for x in items) + "\n]"


def indent_ideal(gens):
    if not gens:
        return "ideal(0)"
    return "ideal(\n" + ",\n".join(f"  {g}" for g in gens) + "  )"
