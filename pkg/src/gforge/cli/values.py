"""Interpreter-only value types and the canonical printer."""

from __future__ import annotations

from fractions import Fraction

from ..expr import format_rational, indent_ideal, indent_list
from ..gb import Ideal
from ..idealops import MonomialIdeal
from ..order import OrderMatrix
from ..poly import Polynomial


class Matrix:
    """A rectangular table of numbers or polynomials; immutable once built."""

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("a matrix needs at least one entry")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows must have equal length")
        self.rows = rows

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    def domain(self):
        entries = [x for r in self.rows for x in r]
        polys = [x for x in entries if isinstance(x, Polynomial)]
        if polys:
            return str(polys[0].ring)
        if all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for x in entries):
            return "ZZ"
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    __hash__ = object.__hash__

    def __str__(self):
        body = ",\n  ".join("[" + ", ".join(show(x) for x in r) + "]" for r in self.rows)
        return f"matrix({self.domain()},\n [{body}])"


class Record:
    def __init__(self, fields):
        self.fields = dict(fields)

    def __str__(self):
        inner = ", ".join(f"{k} := {show(v)}" for k, v in self.fields.items())
        return f"record[{inner}]"


class QuotientRing:
    def __init__(self, ring, ideal):
        self.ring = ring
        self.ideal = ideal

    def __str__(self):
        return f"{self.ring}/{self.ideal}"


class IndetFamily:
    """The indexed indeterminates ``x[...]`` of a ring, addressed by ``x[i]``."""

    def __init__(self, ring, stem):
        self.ring = ring
        self.stem = stem

    def get(self, indices):
        name = f"{self.stem}[{','.join(str(i) for i in indices)}]"
        if not self.ring.has_indet(name):
            raise IndexError(f"{name} is not an indeterminate of {self.ring}")
        return self.ring.indet(name)

    def __str__(self):
        return f"{self.stem}[...]"


class ZZMarker:
    """The bare name ``ZZ``; ``ZZ/(p)`` builds a prime field."""

    def __str__(self):
        return "ZZ"


class Text(str):
    """Preformatted output (the result of ``indent``)."""


class Seconds(float):
    def __str__(self):
        return f"{float(self):.3f}"


def normalize_number(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def show(value):
    """Canonical text of a value, or None when nothing is printed."""
    if value is None:
        return None
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Text):
        return str.__str__(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        sep = ",  " if value and all(isinstance(x, Polynomial) for x in value) else ", "
        return "[" + sep.join(show(x) for x in value) + "]"
    if isinstance(value, OrderMatrix):
        return str(Matrix(value.rows))
    return str(value)


def indent(value):
    if isinstance(value, (list, tuple)):
        return Text(indent_list([show(x) for x in value]))
    if isinstance(value, Ideal):
        return Text(indent_ideal([show(g) for g in value.gens]))
    if isinstance(value, MonomialIdeal):
        return Text(value.indent_text())
    return Text(show(value))


def type_name(value):
    if isinstance(value, bool):
        return "BOOL"
    if isinstance(value, int):
        return "INT"
    if isinstance(value, Fraction):
        return "RAT"
    if isinstance(value, str):
        return "STRING"
    if isinstance(value, (list, tuple)):
        return "LIST"
    return {
        "Polynomial": "RINGELEM",
        "Ideal": "IDEAL",
        "MonomialIdeal": "IDEAL",
        "PolyRing": "RING",
        "Matrix": "MAT",
        "Record": "RECORD",
        "ResidueModulus": "RECORD",
        "PolyAlgebraHom": "RINGHOM",
    }.get(type(value).__name__, type(value).__name__.upper())
