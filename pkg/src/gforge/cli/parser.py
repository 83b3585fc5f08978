"""Tokenizer and recursive-descent parser for the command language.

Statement grammar::

    script    := (stmt? ';')* stmt?
    stmt      := 'use' ringref | NAME '::=' ringspec | NAME ':=' expr | expr
    ringref   := NAME '::=' ringspec | ringspec | NAME
    ringspec  := field '[' indets ']' (',' NAME)?
    field     := 'QQ' | 'ZZ' '/' '(' expr ')' | NAME | '(' expr ')'
    indets    := indet (',' indet)*
    indet     := NAME ('[' range (',' range)* ']')?
    range     := expr '..' expr

    expr      := range ('=' | '<>' | '<' | '<=' | '>' | '>=') range | range
    range     := sum ('..' sum)?
    sum       := product (('+' | '-') product)*
    product   := unary (('*' | '/') unary)*
    unary     := ('-' | '+') unary | power
    power     := postfix ('^' unary)?
    postfix   := atom ('(' args ')' | '[' args ']' | '.' NAME)*
    atom      := INT | DECIMAL | STRING | NAME | '(' expr ')' | list
    list      := '[' ']' | '[' expr (',' expr)* ']' | '[' expr '|' NAME 'in' expr ']'

Comments run from ``//`` or ``--`` to the end of the line, or between ``/*`` and ``*/``.
"""

from __future__ import annotations

import re
from collections import namedtuple
from fractions import Fraction

Token = namedtuple("Token", ["kind", "value", "pos"])


class CommandSyntaxError(Exception):
    def __init__(self, message, pos):
        super().__init__(message)
        self.message = message
        self.pos = pos


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*|--[^\n]*|/\*.*?\*/)
  | (?P<open_comment>/\*)
  | (?P<num>\d+\.\d+|\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"(?:[^"\\\n]|\\.)*")
  | (?P<op>::=|:=|\.\.|<=|>=|<>|[-+*/^()\[\],;|.=<>])
    """,
    re.VERBOSE | re.DOTALL,
)

KEYWORDS = {"use", "in"}


def tokenize(text):
    """Tokens of ``text``; an unknown character becomes an ``error`` token."""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            tokens.append(Token("error", f"unexpected character {text[pos]!r}", pos))
            pos += 1
            continue
        kind = m.lastgroup
        value = m.group()
        if kind == "open_comment":
            tokens.append(Token("error", "unterminated comment", pos))
            break
        if kind == "num":
            value = Fraction(value) if "." in value else int(value)
        elif kind == "str":
            value = bytes(value[1:-1], "utf-8").decode("unicode_escape")
        elif kind == "name" and value in KEYWORDS:
            kind = "kw"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, pos))
        pos = m.end()
    return tokens


def split_statements(tokens, end_pos):
    """Group tokens into statements; every semicolon ends one, so a stray bracket
    cannot swallow the rest of the input.

    Returns ``(tokens, start, terminated)`` triples; ``start`` is the source offset.
    """
    out = []
    cur = []
    for tok in tokens:
        if tok.kind == "op" and tok.value == ";":
            if cur:
                out.append((cur, cur[0].pos, True))
            cur = []
            continue
        cur.append(tok)
    if cur:
        out.append((cur, cur[0].pos, False))
    return out


def is_complete(text):
    """True when ``text`` ends with a finished statement (used by the REPL)."""
    tokens = tokenize(text)
    if not tokens:
        return True
    if tokens[-1].kind == "error" and tokens[-1].value == "unterminated comment":
        return False
    stmts = split_statements(tokens, len(text))
    return not stmts or stmts[-1][2]


# -- AST -------------------------------------------------------------------------------
# Every node is a tuple whose first item is its kind and whose last item is its source offset.
#   ("num", value, pos)  ("str", text, pos)  ("name", name, pos)
#   ("neg", node, pos)   ("bin", op, lhs, rhs, pos)   ("cmp", op, lhs, rhs, pos)
#   ("range", lo, hi, pos)  ("list", items, pos)  ("comp", expr, var, source, pos)
#   ("call", fn, args, pos)  ("index", obj, args, pos)  ("field", obj, name, pos)
# Statements:
#   ("use", ringref, pos)  ("ringdef", name, spec, pos)  ("assign", name, expr, pos)
#   ("expr", expr, pos)
#   ringspec: ("ringspec", field, indets, order, pos); field is ("QQ",) ("ZZ", expr) or a node
#   indet:    (name, [(lo, hi), ...])


class Parser:
    def __init__(self, tokens, end_pos):
        self.toks = tokens
        self.i = 0
        self.end_pos = end_pos

    def peek(self, k=0):
        j = self.i + k
        if j < len(self.toks):
            return self.toks[j]
        return Token("end", None, self.end_pos)

    def next(self):
        tok = self.peek()
        if tok.kind == "error":
            raise CommandSyntaxError(tok.value, tok.pos)
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        if tok.kind == "error":
            raise CommandSyntaxError(tok.value, tok.pos)
        raise CommandSyntaxError(message, tok.pos)

    def at(self, value, k=0):
        tok = self.peek(k)
        return tok.kind in ("op", "kw") and tok.value == value

    def expect(self, value):
        tok = self.peek()
        if tok.kind in ("op", "kw") and tok.value == value:
            return self.next()
        found = "end of statement" if tok.kind == "end" else repr(tok.value)
        self.error(f"expected {value!r} but found {found}")

    def expect_name(self):
        tok = self.peek()
        if tok.kind != "name":
            found = "end of statement" if tok.kind == "end" else repr(tok.value)
            self.error(f"expected a name but found {found}")
        return self.next()

    # -- statements ---------------------------------------------------------------
    def statement(self):
        tok = self.peek()
        if tok.kind == "kw" and tok.value == "use":
            self.next()
            node = ("use", self.ringref(), tok.pos)
        elif tok.kind == "name" and self.at("::=", 1):
            self.next()
            self.next()
            node = ("ringdef", tok.value, self.ringspec(), tok.pos)
        elif tok.kind == "name" and self.at(":=", 1):
            self.next()
            self.next()
            node = ("assign", tok.value, self.expr(), tok.pos)
        else:
            node = ("expr", self.expr(), tok.pos)
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().value!r}")
        return node

    def ringref(self):
        tok = self.peek()
        if tok.kind == "name" and self.at("::=", 1):
            self.next()
            self.next()
            return ("ringdef", tok.value, self.ringspec(), tok.pos)
        if tok.kind == "name" and not self.at("[", 1) and tok.value not in ("QQ", "ZZ"):
            self.next()
            return ("name", tok.value, tok.pos)
        return self.ringspec()

    def ringspec(self):
        start = self.peek()
        if start.kind == "name" and start.value == "QQ":
            self.next()
            field = ("QQ",)
        elif start.kind == "name" and start.value == "ZZ":
            self.next()
            self.expect("/")
            self.expect("(")
            field = ("ZZ", self.expr())
            self.expect(")")
        elif start.kind == "name":
            self.next()
            field = ("name", start.value, start.pos)
        elif self.at("("):
            self.next()
            field = self.expr()
            self.expect(")")
        else:
            self.error("expected a coefficient field such as QQ or ZZ/(p)")
        self.expect("[")
        indets = [self.indet()]
        while self.at(","):
            self.next()
            indets.append(self.indet())
        self.expect("]")
        order = None
        if self.at(","):
            self.next()
            order = self.expect_name().value
        return ("ringspec", field, indets, order, start.pos)

    def indet(self):
        name = self.expect_name().value
        ranges = []
        if self.at("["):
            self.next()
            while True:
                lo = self.sum()
                self.expect("..")
                hi = self.sum()
                ranges.append((lo, hi))
                if not self.at(","):
                    break
                self.next()
            self.expect("]")
        return (name, ranges)

    # -- expressions ----------------------------------------------------------------
    def expr(self):
        lhs = self.range()
        tok = self.peek()
        if tok.kind == "op" and tok.value in ("=", "<>", "<", "<=", ">", ">="):
            self.next()
            rhs = self.range()
            return ("cmp", tok.value, lhs, rhs, tok.pos)
        return lhs

    def range(self):
        lo = self.sum()
        if self.at(".."):
            tok = self.next()
            return ("range", lo, self.sum(), tok.pos)
        return lo

    def sum(self):
        node = self.product()
        while self.at("+") or self.at("-"):
            tok = self.next()
            node = ("bin", tok.value, node, self.product(), tok.pos)
        return node

    def product(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            tok = self.next()
            node = ("bin", tok.value, node, self.unary(), tok.pos)
        return node

    def unary(self):
        if self.at("-"):
            tok = self.next()
            return ("neg", self.unary(), tok.pos)
        if self.at("+"):
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.postfix()
        if self.at("^"):
            tok = self.next()
            return ("bin", "^", base, self.unary(), tok.pos)
        return base

    def args(self, close):
        items = []
        if self.at(close):
            self.next()
            return items
        while True:
            items.append(self.expr())
            if self.at(close):
                self.next()
                return items
            self.expect(",")

    def postfix(self):
        node = self.atom()
        while True:
            if self.at("("):
                tok = self.next()
                node = ("call", node, self.args(")"), tok.pos)
            elif self.at("["):
                tok = self.next()
                node = ("index", node, self.args("]"), tok.pos)
            elif self.at("."):
                tok = self.next()
                node = ("field", node, self.expect_name().value, tok.pos)
            else:
                return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return ("num", tok.value, tok.pos)
        if tok.kind == "str":
            self.next()
            return ("str", tok.value, tok.pos)
        if tok.kind == "name":
            self.next()
            return ("name", tok.value, tok.pos)
        if self.at("("):
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if self.at("["):
            return self.list_literal()
        if tok.kind == "end":
            self.error("unexpected end of statement")
        self.error(f"unexpected {tok.value!r}")

    def list_literal(self):
        start = self.expect("[")
        if self.at("]"):
            self.next()
            return ("list", [], start.pos)
        first = self.expr()
        if self.at("|"):
            self.next()
            var = self.expect_name().value
            self.expect("in")
            source = self.expr()
            self.expect("]")
            return ("comp", first, var, source, start.pos)
        items = [first]
        while self.at(","):
            self.next()
            items.append(self.expr())
        self.expect("]")
        return ("list", items, start.pos)


def parse_statement(tokens, end_pos):
    return Parser(tokens, end_pos).statement()


def parse_script(text):
    """Parse every statement; returns ``(node_or_error, start_pos)`` pairs in order."""
    out = []
    for toks, start, _ in split_statements(tokenize(text), len(text)):
        end = toks[-1].pos + 1
        try:
            out.append((parse_statement(toks, end), start))
        except CommandSyntaxError as exc:
            out.append((exc, start))
    return out
