"""Coefficient fields: exact rationals, prime fields, and twin-float arithmetic.

Every field exposes the same element API (``add``, ``sub``, ``mul``, ``div``,
``neg``, ``inv``, ``is_zero``, ``convert``) so polynomial code never needs to
know which field it is working over.  Elements are plain values:

* ``QQ``: :class:`fractions.Fraction`
* ``PrimeField(p)``: ``int`` in ``[0, p)``
* ``TwinFloatField(b)``: :class:`TwinFloat`
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

import gmpy2

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InsufficientPrecision,
    InvalidModulus,
    PrecisionCapExceeded,
)

GUARD_BITS = 32
MILLER_RABIN_ROUNDS = 64


class Field:
    """Common interface; concrete fields override the element operations."""

    kind = "abstract"
    is_exact = True
    characteristic = 0

    def arith(self, op, a, b):
        if not (self.contains(a) and self.contains(b)):
            raise FieldMismatch(f"operands do not belong to {self}")
        try:
            fn = {"add": self.add, "sub": self.sub, "mul": self.mul, "div": self.div}[op]
        except KeyError:
            raise ValueError(f"unknown operation {op!r}") from None
        return fn(a, b)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_one(self, a):
        return not self.is_zero(self.sub(a, self.one))

    def __repr__(self):
        return str(self)


class RationalField(Field):
    kind = "QQ"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __str__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def contains(self, a):
        return isinstance(a, (Fraction, int)) and not isinstance(a, bool)

    def convert(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (Integral, Rational)) or type(x).__name__ in ("mpz", "mpq"):
            return Fraction(int(x.numerator), int(x.denominator))
        if isinstance(x, TwinFloat):
            return x.to_rational()
        raise FieldMismatch(f"cannot convert {x!r} to QQ")

    __call__ = convert

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("division by zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in QQ")
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def to_rational(self, a):
        return Fraction(a)

    def coeff_text(self, c):
        """Return ``(negative, magnitude_text, is_integer)`` for printing."""
        c = Fraction(c)
        neg = c < 0
        c = abs(c)
        if c.denominator == 1:
            return neg, str(c.numerator), True
        return neg, f"{c.numerator}/{c.denominator}", False


QQ = RationalField()


def is_probable_prime(n, rounds=MILLER_RABIN_ROUNDS):
    return n >= 2 and bool(gmpy2.is_prime(n, rounds))


class PrimeField(Field):
    """Z/(p) for an arbitrary-size prime ``p``; elements are ints in ``[0, p)``."""

    kind = "Fp"

    def __init__(self, p):
        p = int(p)
        if not is_probable_prime(p):
            raise InvalidModulus(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __str__(self):
        return f"ZZ/({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def convert(self, x):
        if isinstance(x, bool):
            raise FieldMismatch("booleans are not field elements")
        if isinstance(x, Integral) or type(x).__name__ == "mpz":
            return int(x) % self.p
        if isinstance(x, (Fraction, Rational)) or type(x).__name__ == "mpq":
            den = int(x.denominator) % self.p
            if den == 0:
                raise DivisionByZero(f"denominator vanishes modulo {self.p}")
            return int(x.numerator) * pow(den, -1, self.p) % self.p
        raise FieldMismatch(f"cannot convert {x!r} to {self}")

    __call__ = convert

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"division by zero in {self}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def symmetric(self, a):
        return a - self.p if a > self.p // 2 else a

    def to_rational(self, a):
        return Fraction(self.symmetric(a))

    def coeff_text(self, c):
        s = self.symmetric(c)
        return s < 0, str(abs(s)), True


class TwinFloat:
    """A value carried by two binary approximations at different working precisions.

    ``scale`` is the magnitude of the value (0 exactly for zero); a sum is declared
    zero when it falls below ``2^(-bits)`` times the larger magnitude of its operands.
    """

    __slots__ = ("field", "primary", "shadow", "scale")

    def __init__(self, field, primary, shadow, scale):
        self.field = field
        self.primary = primary
        self.shadow = shadow
        self.scale = scale

    def _coerce(self, other):
        if isinstance(other, TwinFloat):
            if other.field != self.field:
                raise FieldMismatch("twin-floats of different precisions")
            return other
        return self.field.convert(other)

    def __add__(self, other):
        return self.field.add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.sub(self, self._coerce(other))

    def __rsub__(self, other):
        return self.field.sub(self._coerce(other), self)

    def __mul__(self, other):
        return self.field.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.field.div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return self.field.div(self._coerce(other), self)

    def __neg__(self):
        return self.field.neg(self)

    def is_zero(self):
        return self.field.is_zero(self)

    def to_rational(self):
        return self.field.to_rational(self)

    def __repr__(self):
        return f"TwinFloat({self.field.format_value(self)}, bits={self.field.bits})"


def _convergent_within(x, rel_tol, height_bound):
    """First continued-fraction convergent of ``x`` within ``rel_tol`` of it."""
    if x == 0:
        return Fraction(0)
    tol = abs(x) * rel_tol
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    rest = x
    while True:
        a = rest.numerator // rest.denominator
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if abs(h1) * k1 >= height_bound:
            return None
        cand = Fraction(h1, k1)
        if abs(x - cand) <= tol:
            return cand
        frac = rest - a
        if frac == 0:
            return None
        rest = 1 / frac


class TwinFloatField(Field):
    """Heuristically verified floating-point field with ``bits`` of requested accuracy.

    Both approximations carry a buffer of ``bits`` extra bits so cancellation can eat
    into it: the primary works at ``2*bits + GUARD_BITS`` and the shadow at
    ``2*bits + 2*GUARD_BITS``.  A value is valid while the two agree to ``bits`` bits.
    """

    kind = "TwinFloat"
    is_exact = False

    def __init__(self, bits):
        bits = int(bits)
        if bits < 8:
            raise ValueError("twin-float precision must be at least 8 bits")
        self.bits = bits
        self._c1 = gmpy2.context(precision=2 * bits + GUARD_BITS)
        self._c2 = gmpy2.context(precision=2 * bits + 2 * GUARD_BITS)
        self._cs = gmpy2.context(precision=53)
        self._zero_thr = self._cs.exp2(gmpy2.mpfr(-bits))
        self._agree = self._cs.exp2(gmpy2.mpfr(-bits))
        self.accuracy = bits + GUARD_BITS // 2
        self._height = 1 << self.accuracy
        z = gmpy2.mpfr(0)
        self.zero = TwinFloat(self, z, z, z)
        self.one = self.convert(1)

    def __str__(self):
        return f"RingTwinFloat({self.bits})"

    def __eq__(self, other):
        return isinstance(other, TwinFloatField) and other.bits == self.bits

    def __hash__(self):
        return hash(("TwinFloat", self.bits))

    def contains(self, a):
        return isinstance(a, TwinFloat) and a.field == self

    def convert(self, x):
        if isinstance(x, TwinFloat):
            if x.field != self:
                raise FieldMismatch("twin-floats of different precisions")
            return x
        if isinstance(x, bool):
            raise FieldMismatch("booleans are not field elements")
        if not (isinstance(x, (Integral, Rational)) or type(x).__name__ in ("mpz", "mpq")):
            raise FieldMismatch(f"cannot convert {x!r} to {self}")
        n, d = gmpy2.mpz(int(x.numerator)), gmpy2.mpz(int(x.denominator))
        if n == 0:
            return self.zero
        p = self._c1.div(n, d)
        s = self._c2.div(n, d)
        return TwinFloat(self, p, s, self._cs.abs(s))

    __call__ = convert

    def _cancel(self, p, s, mag):
        """Result of an addition whose operands have magnitude at most ``mag``."""
        thr = self._cs.mul(mag, self._zero_thr)
        zp, zs = abs(p) <= thr, abs(s) <= thr
        if zp != zs:
            raise InsufficientPrecision("twin-float approximations disagree about zero")
        if zp:
            return self.zero
        return self._check(p, s)

    def _check(self, p, s):
        if self._c2.sub(p, s).__abs__() > abs(s) * self._agree:
            raise InsufficientPrecision("twin-float approximations disagree")
        return TwinFloat(self, p, s, self._cs.abs(s))

    def add(self, a, b):
        mag = max(a.scale, b.scale)
        return self._cancel(self._c1.add(a.primary, b.primary), self._c2.add(a.shadow, b.shadow), mag)

    def sub(self, a, b):
        mag = max(a.scale, b.scale)
        return self._cancel(self._c1.sub(a.primary, b.primary), self._c2.sub(a.shadow, b.shadow), mag)

    def mul(self, a, b):
        if not a.scale or not b.scale:
            return self.zero
        return self._check(self._c1.mul(a.primary, b.primary), self._c2.mul(a.shadow, b.shadow))

    def neg(self, a):
        return TwinFloat(self, self._c1.minus(a.primary), self._c2.minus(a.shadow), a.scale)

    def div(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero("twin-float division by a value indistinguishable from zero")
        if not a.scale:
            return self.zero
        return self._check(self._c1.div(a.primary, b.primary), self._c2.div(a.shadow, b.shadow))

    def inv(self, a):
        return self.div(self.one, a)

    def is_zero(self, a):
        # sums that cancel below the threshold are stored as exact zeros
        return not a.scale

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def to_rational(self, a):
        """Recover the exact rational behind ``a`` or raise InsufficientPrecision."""
        if self.is_zero(a):
            return Fraction(0)
        xp = Fraction(*map(int, a.primary.as_integer_ratio()))
        q = _convergent_within(xp, Fraction(1, 1 << self.accuracy), self._height)
        if q is None:
            raise InsufficientPrecision("no small rational matches the twin-float value")
        xs = Fraction(*map(int, a.shadow.as_integer_ratio()))
        if abs(xs - q) > abs(xs) / (1 << (self.accuracy + GUARD_BITS)):
            raise InsufficientPrecision("shadow approximation rejects the rational")
        return q

    def format_value(self, a):
        neg, body, _ = self.coeff_text(a)
        return ("-" if neg else "") + body

    def float_text(self, a):
        digits, exp, _ = a.primary.digits(10, 10)
        neg = digits.startswith("-")
        digits = digits.lstrip("-").rstrip("0") or "0"
        text = f"0.{digits}"
        if exp != 0 and digits != "0":
            text += f"*10^{exp}" if exp > 0 else f"*10^({exp})"
        return neg, text

    def coeff_text(self, c):
        try:
            q = self.to_rational(c)
        except InsufficientPrecision:
            neg, text = self.float_text(c)
            return neg, text, False
        return QQ.coeff_text(q)


def field_arith(K, op, a, b):
    """Uniform field arithmetic: ``op`` is one of add, sub, mul, div."""
    return K.arith(op, a, b)


def is_zero_heuristic(K, a):
    return K.is_zero(a)


def twin_float_to_rational(a):
    return a.field.to_rational(a)


def with_increasing_precision(start_bits, task, max_escalations=8, on_attempt=None):
    """Run ``task(bits)``, doubling ``bits`` after each InsufficientPrecision."""
    if start_bits < 8:
        raise ValueError("start precision must be at least 8 bits")
    bits = start_bits
    for _ in range(max_escalations + 1):
        if on_attempt is not None:
            on_attempt(bits)
        try:
            return task(bits)
        except InsufficientPrecision:
            bits *= 2
    raise PrecisionCapExceeded(f"insufficient precision up to {bits // 2} bits")
