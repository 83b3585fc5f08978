"""Sparse multivariate polynomials bound to a coefficient field and a term-ordering."""

from __future__ import annotations

from collections import namedtuple
from fractions import Fraction
from numbers import Integral, Rational

from .coeff import QQ, Field, PrimeField, TwinFloat, TwinFloatField
from .errors import ArityMismatch, FieldMismatch, RingMismatch, ZeroPolynomial
from .order import (
    OrderMatrix,
    make_deglex,
    make_lex,
    make_std_deg_rev_lex,
)

Term = namedtuple("Term", ["coeff", "pp"])

_NAMED_ORDERS = {
    "lex": make_lex,
    "stddegrevlex": make_std_deg_rev_lex,
    "degrevlex": make_std_deg_rev_lex,
    "deglex": make_deglex,
    "stddeglex": make_deglex,
}


def _split_names(names):
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",")]
    names = tuple(str(s) for s in names)
    if any(not s for s in names):
        raise ValueError("empty indeterminate name")
    return names


class PolyRing:
    """A polynomial ring ``K[x_1..x_n]`` whose term-ordering is part of its identity."""

    def __init__(self, field, names, order=None, weights=None):
        if not isinstance(field, Field):
            raise TypeError(f"{field!r} is not a coefficient field")
        self.field = field
        self.names = _split_names(names)
        self.n = len(self.names)
        if self.n == 0:
            raise ValueError("a polynomial ring needs at least one indeterminate")
        if len(set(self.names)) != self.n:
            raise ValueError("indeterminate names must be distinct")
        if order is None:
            order = make_std_deg_rev_lex(self.n)
        elif isinstance(order, str):
            try:
                order = _NAMED_ORDERS[order.lower()](self.n)
            except KeyError:
                raise ValueError(f"unknown ordering {order!r}") from None
        elif not isinstance(order, OrderMatrix):
            order = OrderMatrix(order)
        if order.n != self.n:
            raise ValueError("ordering size does not match the number of indeterminates")
        self.order = order
        if weights is None:
            weights = (1,) * self.n
        weights = tuple(int(w) for w in weights)
        if len(weights) != self.n or any(w <= 0 for w in weights):
            raise ValueError("weights must be positive, one per indeterminate")
        self.weights = weights
        self._index = {s: i for i, s in enumerate(self.names)}
        self._keys = {}
        self._nkeys = {}
        self._hash = hash((self.field, self.names, self.order, self.weights))

    # -- ordering -----------------------------------------------------------
    def key(self, pp):
        k = self._keys.get(pp)
        if k is None:
            k = self._keys[pp] = self.order.key(pp)
        return k

    def nkey(self, pp):
        """Negated key: ascending ``nkey`` is descending in the ring order."""
        k = self._nkeys.get(pp)
        if k is None:
            k = self._nkeys[pp] = tuple(-v for v in self.key(pp))
        return k

    def wdeg_pp(self, pp):
        return sum(w * e for w, e in zip(self.weights, pp))

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return self is other or (
            isinstance(other, PolyRing)
            and self._hash == other._hash
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
            and self.weights == other.weights
        )

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.field}[{','.join(self.names)}]"

    __repr__ = __str__

    # -- construction -------------------------------------------------------
    def index(self, name):
        if isinstance(name, Polynomial):
            return name.as_indeterminate()
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise IndexError(f"indeterminate index {name} out of range")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not an indeterminate of {self}") from None

    def has_indet(self, name):
        return name in self._index

    def unit_pp(self, i):
        return tuple(int(j == i) for j in range(self.n))

    def indet(self, name):
        i = self.index(name)
        return Polynomial(self, {self.unit_pp(i): self.field.one})

    @property
    def gens(self):
        return tuple(self.indet(i) for i in range(self.n))

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field.convert(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, pp, coeff=1):
        c = self.field.convert(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {tuple(pp): c})

    def from_dict(self, d):
        K = self.field
        out = {}
        for pp, c in d.items():
            pp = tuple(pp)
            if len(pp) != self.n:
                raise ValueError("exponent vector has the wrong length")
            c = K.convert(c)
            if not K.is_zero(c):
                out[pp] = c
        return Polynomial(self, out)

    def __call__(self, x):
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            raise RingMismatch(f"polynomial belongs to {x.ring}, not {self}")
        if isinstance(x, str):
            from .expr import parse_polynomial

            return parse_polynomial(self, x)
        return self.constant(x)

    def sibling(self, field=None, names=None, order=None, weights=None):
        names = self.names if names is None else names
        same_n = len(_split_names(names)) == self.n
        return PolyRing(
            self.field if field is None else field,
            names,
            order if order is not None else (self.order if same_n else None),
            weights if weights is not None else (self.weights if same_n else None),
        )


class Polynomial:
    """Immutable sparse polynomial; ``terms`` lists ``(coeff, pp)`` descending by the ring order."""

    __slots__ = ("ring", "_d", "_terms")

    def __init__(self, ring, d):
        self.ring = ring
        self._d = d
        self._terms = None

    # -- access -------------------------------------------------------------
    @property
    def terms(self):
        if self._terms is None:
            key = self.ring.key
            self._terms = tuple(
                Term(self._d[pp], pp) for pp in sorted(self._d, key=key, reverse=True)
            )
        return self._terms

    def as_dict(self):
        return dict(self._d)

    def coeff(self, pp):
        return self._d.get(tuple(pp), self.ring.field.zero)

    def __len__(self):
        return len(self._d)

    def is_zero(self):
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def LT(self):
        if not self._d:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        return self.terms[0]

    def LPP(self):
        return self.LT().pp

    def LC(self):
        return self.LT().coeff

    def is_constant(self):
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self._d.get((0,) * self.ring.n, self.ring.field.zero)

    def as_indeterminate(self):
        if len(self._d) == 1:
            (pp, c), = self._d.items()
            if sum(pp) == 1 and self.ring.field.eq(c, self.ring.field.one):
                return pp.index(1)
        raise ValueError(f"{self} is not an indeterminate")

    def degree(self):
        if not self._d:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(sum(pp) for pp in self._d)

    def wdeg(self):
        if not self._d:
            raise ZeroPolynomial("weighted degree of the zero polynomial")
        return max(self.ring.wdeg_pp(pp) for pp in self._d)

    def is_homogeneous(self):
        return len({self.ring.wdeg_pp(pp) for pp in self._d}) <= 1

    def support_vars(self):
        used = set()
        for pp in self._d:
            used.update(i for i, e in enumerate(pp) if e)
        return used

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine polynomials of {self.ring} and {other.ring}")
            return other
        if isinstance(other, (Integral, Rational, TwinFloat)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        K = self.ring.field
        d = dict(self._d)
        for pp, c in other._d.items():
            v = d.get(pp)
            if v is None:
                d[pp] = c
            else:
                v = K.add(v, c)
                if K.is_zero(v):
                    del d[pp]
                else:
                    d[pp] = v
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.field
        return Polynomial(self.ring, {pp: K.neg(c) for pp, c in self._d.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        K = self.ring.field
        c = K.convert(c)
        if K.is_zero(c):
            return self.ring.zero()
        d = {}
        for pp, v in self._d.items():
            w = K.mul(v, c)
            if not K.is_zero(w):
                d[pp] = w
        return Polynomial(self.ring, d)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (Integral, Rational, TwinFloat)) and not isinstance(other, bool):
                return self.scale(other)
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"cannot combine polynomials of {self.ring} and {other.ring}")
        K = self.ring.field
        acc = {}
        for p1, c1 in self._d.items():
            for p2, c2 in other._d.items():
                pp = tuple(a + b for a, b in zip(p1, p2))
                v = K.mul(c1, c2)
                w = acc.get(pp)
                acc[pp] = v if w is None else K.add(w, v)
        return Polynomial(self.ring, {pp: c for pp, c in acc.items() if not K.is_zero(c)})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other.constant_value()
        K = self.ring.field
        return self.scale(K.inv(K.convert(other)))

    def __pow__(self, e):
        if not isinstance(e, Integral) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        e = int(e)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_pp(self, pp, c=None):
        K = self.ring.field
        d = {}
        for p, v in self._d.items():
            w = v if c is None else K.mul(v, c)
            if not K.is_zero(w):
                d[tuple(a + b for a, b in zip(p, pp))] = w
        return Polynomial(self.ring, d)

    def monic(self):
        if not self._d:
            return self
        return self.scale(self.ring.field.inv(self.LC()))

    def primitive(self):
        """Over QQ: the integer-coefficient multiple with content 1 and positive LC; else monic."""
        if self.ring.field != QQ or not self._d:
            return self.monic()
        from math import gcd, lcm

        den = 1
        for c in self._d.values():
            den = lcm(den, c.denominator)
        ints = {pp: int(c * den) for pp, c in self._d.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if self.LC() < 0:
            g = -g
        return Polynomial(self.ring, {pp: Fraction(v // g) for pp, v in ints.items()})

    def evaluate(self, point):
        """Evaluate at a point given as a sequence of field elements (one per indeterminate)."""
        K = self.ring.field
        point = [K.convert(x) for x in point]
        if len(point) != self.ring.n:
            raise ArityMismatch("point has the wrong number of coordinates")
        total = K.zero
        for pp, c in self._d.items():
            v = c
            for x, e in zip(point, pp):
                if e:
                    v = K.mul(v, _field_pow(K, x, e))
            total = K.add(total, v)
        return total

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                return False
            if isinstance(self.ring.field, TwinFloatField):
                diff = self - other
                return diff.is_zero()
            return self._d == other._d
        if isinstance(other, (Integral, Rational)) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._d.items())))

    def __str__(self):
        from .expr import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self}, {self.ring})"


def _field_pow(K, x, e):
    result = K.one
    while e:
        if e & 1:
            result = K.mul(result, x)
        e >>= 1
        if e:
            x = K.mul(x, x)
    return result


def coerce_coefficient(src, dst, c):
    """Map a coefficient from field ``src`` into ``dst`` (same field, or from QQ)."""
    if src == dst:
        return c
    if src == QQ:
        return dst.convert(c)
    if isinstance(src, PrimeField) and isinstance(dst, PrimeField):
        raise FieldMismatch(f"no coefficient map from {src} to {dst}")
    raise FieldMismatch(f"no coefficient map from {src} to {dst}")


def map_polynomial(f, ring, index_map=None):
    """Move ``f`` into ``ring``; ``index_map[i]`` is the target index of source indeterminate ``i``."""
    src = f.ring
    if index_map is None:
        index_map = [ring.index(name) for name in src.names]
    d = {}
    K = ring.field
    for pp, c in f._d.items():
        new = [0] * ring.n
        for i, e in enumerate(pp):
            if e:
                j = index_map[i]
                if j is None:
                    raise RingMismatch(f"{src.names[i]} has no image in {ring}")
                new[j] += e
        c = coerce_coefficient(src.field, K, c)
        if not K.is_zero(c):
            d[tuple(new)] = c
    return Polynomial(ring, d)


class PolyAlgebraHom:
    """Coefficient-fixing ring homomorphism given by images of the source indeterminates."""

    def __init__(self, src, dst, images):
        images = list(images)
        if len(images) != src.n:
            raise ArityMismatch(f"need {src.n} images, got {len(images)}")
        self.src = src
        self.dst = dst
        self.images = [dst(g) if not isinstance(g, Polynomial) else g for g in images]
        for g in self.images:
            if g.ring != dst:
                raise RingMismatch("every image must lie in the destination ring")
        if not (src.field == dst.field or src.field == QQ):
            raise RingMismatch(f"incompatible coefficient fields {src.field} and {dst.field}")

    def __call__(self, f):
        return self.apply(f)

    def apply(self, f):
        if isinstance(f, Polynomial) and f.ring != self.src:
            raise RingMismatch(f"{f} is not in {self.src}")
        if not isinstance(f, Polynomial):
            f = self.src(f)
        powers = [{0: self.dst.one()} for _ in self.images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * self.images[i]
            return cache[e]

        Ks, Kd = self.src.field, self.dst.field
        result = {}
        for pp, c in f._d.items():
            term = self.dst.constant(coerce_coefficient(Ks, Kd, c))
            for i, e in enumerate(pp):
                if e:
                    term = term * power(i, e)
            for q, v in term._d.items():
                w = result.get(q)
                result[q] = v if w is None else Kd.add(w, v)
        return Polynomial(self.dst, {q: v for q, v in result.items() if not Kd.is_zero(v)})

    def __repr__(self):
        return f"PolyAlgebraHom({self.src} -> {self.dst}, {[str(g) for g in self.images]})"


def weighted_deg(f):
    return f.wdeg()


def homogenize(f, h, weights=None):
    """Multiply each term by ``h^(D - wdeg(term))`` where ``D`` is the top weighted degree."""
    ring = f.ring
    hi = ring.index(h) if not isinstance(h, Polynomial) else h.as_indeterminate()
    weights = tuple(weights) if weights is not None else ring.weights
    if weights[hi] != 1:
        raise ValueError("the homogenizing indeterminate must have weight 1")
    if not f._d:
        return f
    if any(pp[hi] for pp in f._d):
        raise ValueError("polynomial already involves the homogenizing indeterminate")
    wd = {pp: sum(w * e for w, e in zip(weights, pp)) for pp in f._d}
    top = max(wd.values())
    d = {}
    for pp, c in f._d.items():
        new = list(pp)
        new[hi] += top - wd[pp]
        d[tuple(new)] = c
    return Polynomial(ring, d)


def dehomogenize(f, h):
    ring = f.ring
    hi = ring.index(h) if not isinstance(h, Polynomial) else h.as_indeterminate()
    K = ring.field
    d = {}
    for pp, c in f._d.items():
        new = list(pp)
        new[hi] = 0
        new = tuple(new)
        v = d.get(new)
        d[new] = c if v is None else K.add(v, c)
    return Polynomial(ring, {pp: c for pp, c in d.items() if not K.is_zero(c)})
