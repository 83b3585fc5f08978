"""Buchberger's algorithm with the Gebauer-Moeller criteria.

Three reduction engines share one driver: residues modulo p, fraction-free
integers for QQ (primitive polynomials, content removed as we go), and a
generic field engine used for twin-floats.  Pairs are selected by sugar
degree and then by the ring order of their lcm, so homogeneous input is
processed degree by degree.
"""

from __future__ import annotations

import sys
import threading
import time
from contextvars import ContextVar
from fractions import Fraction
from heapq import heapify, heappop, heappush
from functools import partial
from itertools import count
from math import gcd
from operator import add, ge, sub

import numpy as np

from ._kernels import first_divisor
from .coeff import QQ, PrimeField
from .errors import Cancelled, NotHomogeneous, RingMismatch
from .expr import format_ideal
from .poly import Polynomial

# -- cancellation and progress ------------------------------------------------------


class CancelToken:
    """Cooperative cancellation flag, optionally with a wall-clock deadline."""

    def __init__(self, timeout=None):
        self._event = threading.Event()
        self.deadline = None if timeout is None else time.monotonic() + timeout

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self):
        if self.deadline is not None and time.monotonic() >= self.deadline:
            self._event.set()
        return self._event.is_set()

    def check(self):
        if self.cancelled:
            raise Cancelled("computation interrupted")


class ProgressSink:
    """Routes diagnostic lines to ``emit`` when the verbosity level allows it."""

    def __init__(self, verbosity=0, emit=None):
        self.verbosity = verbosity
        self._emit = emit
        self._lock = threading.Lock()

    def enabled(self, level):
        return self.verbosity >= level

    def emit(self, level, line):
        if self.verbosity < level:
            return
        with self._lock:
            if self._emit is None:
                print(line, file=sys.stderr, flush=True)
            else:
                self._emit(line)


_token: ContextVar = ContextVar("gforge_cancel_token", default=None)
_sink: ContextVar = ContextVar("gforge_progress_sink", default=None)
_quiet = ProgressSink(0)


def current_token():
    return _token.get()


def current_sink():
    return _sink.get() or _quiet


def set_token(token):
    return _token.set(token)


def set_sink(sink):
    return _sink.set(sink)


def reset_token(handle):
    _token.reset(handle)


def reset_sink(handle):
    _sink.reset(handle)


def checkpoint():
    token = _token.get()
    if token is not None:
        token.check()


# -- helpers ------------------------------------------------------------------------


# Divisibility mask: bit k of the field for variable i is set when the exponent reaches
# _THRESHOLDS[k].  If a divides b then mask(a) is a subset of mask(b); the mask of an lcm
# is the union of the masks; and two power-products are coprime iff their masks are disjoint.
_THRESHOLDS = (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256)
_FIELD = len(_THRESHOLDS)
_EXP_BITS = [sum(1 << k for k, t in enumerate(_THRESHOLDS) if e >= t) for e in range(_THRESHOLDS[-1] + 1)]


def _mask(pp):
    m = 0
    top = _THRESHOLDS[-1]
    for i, e in enumerate(pp):
        if e:
            m |= _EXP_BITS[e if e < top else top] << (_FIELD * i)
    return m


def _divides(a, b):
    return all(map(ge, b, a))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


class _Elem:
    __slots__ = ("lpp", "lc", "tail", "mask", "sugar", "alive", "nkey")

    def __init__(self, terms, sugar, nkey):
        self.lpp, self.lc = terms[0]
        self.tail = terms[1:]
        self.mask = _mask(self.lpp)
        self.sugar = sugar
        self.alive = True
        self.nkey = nkey


class _ActiveIndex:
    """First divisor in the driver's active basis; large bases are scanned with numpy."""

    SMALL = 48

    def __init__(self, bb):
        self.bb = bb

    def find(self, pp):
        bb = self.bb
        if len(bb.active) < self.SMALL:
            return _Engine._divisor(pp, bb.active)
        t = bb.active_idx[-1] + 1
        i = first_divisor(bb._lpps[:t], bb._alive[:t], np.array(pp, dtype=np.int64))
        return bb.basis[i] if i >= 0 else None


class _Engine:
    """Field-specific reduction and normalization on dict polynomials."""

    def __init__(self, ring):
        self.ring = ring
        K = ring.field
        self.K = K
        if K == QQ:
            self.mode = "int"
        elif isinstance(K, PrimeField):
            self.mode = "modp"
            self.p = K.p
        else:
            self.mode = "field"
        self.nkey = ring.nkey
        self.weights = ring.weights

    # conversion
    def to_internal(self, f):
        """Dict form of ``f``; over QQ the primitive integer multiple, plus the multiplier."""
        d = f.as_dict()
        if self.mode != "int" or not d:
            return d, Fraction(1)
        den = 1
        for c in d.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {pp: int(c * den) for pp, c in d.items()}
        return ints, Fraction(den)

    def to_poly(self, d):
        if self.mode == "int":
            return Polynomial(self.ring, {pp: Fraction(c) for pp, c in d.items()})
        return Polynomial(self.ring, dict(d))

    def sorted_terms(self, d):
        nkey = self.nkey
        return [(pp, d[pp]) for pp in sorted(d, key=nkey)]

    def wdeg(self, pp):
        return sum(w * e for w, e in zip(self.weights, pp))

    def normalize(self, d):
        """Primitive with positive leading coefficient (QQ) or monic; returns sorted terms."""
        terms = self.sorted_terms(d)
        lc = terms[0][1]
        if self.mode == "int":
            g = 0
            for _, c in terms:
                g = gcd(g, c)
                if g == 1:
                    break
            if lc < 0:
                g = -g
            if g != 1:
                terms = [(pp, c // g) for pp, c in terms]
        elif self.mode == "modp":
            if lc != 1:
                inv = pow(lc, -1, self.p)
                p = self.p
                terms = [(pp, c * inv % p) for pp, c in terms]
        else:
            K = self.K
            terms = [(terms[0][0], K.one)] + [(pp, K.div(c, lc)) for pp, c in terms[1:]]
        return terms

    def make_elem(self, d, sugar):
        terms = self.normalize(d)
        return _Elem(terms, sugar, self.nkey(terms[0][0]))

    # S-polynomials
    def spoly(self, a, b):
        L = _lcm(a.lpp, b.lpp)
        ma = tuple(map(sub, L, a.lpp))
        mb = tuple(map(sub, L, b.lpp))
        d = {}
        if self.mode == "int":
            g = gcd(a.lc, b.lc)
            ca, cb = b.lc // g, a.lc // g
            for pp, c in a.tail:
                d[tuple(map(add, pp, ma))] = ca * c
            for pp, c in b.tail:
                t = tuple(map(add, pp, mb))
                v = d.get(t, 0) - cb * c
                if v:
                    d[t] = v
                else:
                    d.pop(t, None)
        elif self.mode == "modp":
            p = self.p
            for pp, c in a.tail:
                d[tuple(map(add, pp, ma))] = c
            for pp, c in b.tail:
                t = tuple(map(add, pp, mb))
                v = (d.get(t, 0) - c) % p
                if v:
                    d[t] = v
                else:
                    d.pop(t, None)
        else:
            K = self.K
            for pp, c in a.tail:
                d[tuple(map(add, pp, ma))] = c
            for pp, c in b.tail:
                t = tuple(map(add, pp, mb))
                v = d.get(t)
                v = K.neg(c) if v is None else K.sub(v, c)
                if K.is_zero(v):
                    d.pop(t, None)
                else:
                    d[t] = v
        sugar = max(a.sugar + self.wdeg(ma), b.sugar + self.wdeg(mb))
        return d, sugar

    # reduction
    @staticmethod
    def _divisor(pp, basis):
        npm = ~_mask(pp)
        for g in basis:
            if not g.mask & npm and all(map(ge, pp, g.lpp)):
                return g
        return None

    def reduce(self, d, basis, full=True):
        """Reduce dict ``d`` by ``basis`` (largest reducible term first, first divisor in
        list order).  Returns ``(remainder, multiplier)`` where over QQ the exact remainder
        is ``remainder / multiplier``; the multiplier is 1 for the other fields."""
        if self.mode == "int":
            return self._reduce_int(d, basis, full)
        if self.mode == "modp":
            return self._reduce_modp(d, basis, full), Fraction(1)
        return self._reduce_field(d, basis, full), Fraction(1)

    def _reduce_modp(self, fd, basis, full):
        p = self.p
        nkey = self.nkey
        find = basis.find if isinstance(basis, _ActiveIndex) else partial(self._divisor, basis=basis)
        fd = dict(fd)
        heap = [(nkey(pp), pp) for pp in fd]
        heapify(heap)
        rem = {}
        while heap:
            pp = heappop(heap)[1]
            c = fd.pop(pp, None)
            if c is None:
                continue
            g = find(pp)
            if g is None:
                rem[pp] = c
                if not full:
                    rem.update(fd)
                    return rem
                continue
            m = tuple(map(sub, pp, g.lpp))
            if g.lc != 1:
                c = c * pow(g.lc, -1, p) % p
            for q, e in g.tail:
                t = tuple(map(add, q, m))
                v = fd.get(t)
                if v is None:
                    fd[t] = -c * e % p
                    heappush(heap, (nkey(t), t))
                else:
                    v = (v - c * e) % p
                    if v:
                        fd[t] = v
                    else:
                        del fd[t]
        return rem

    def _reduce_field(self, fd, basis, full):
        K = self.K
        nkey = self.nkey
        find = basis.find if isinstance(basis, _ActiveIndex) else partial(self._divisor, basis=basis)
        fd = dict(fd)
        heap = [(nkey(pp), pp) for pp in fd]
        heapify(heap)
        rem = {}
        while heap:
            pp = heappop(heap)[1]
            c = fd.pop(pp, None)
            if c is None:
                continue
            g = find(pp)
            if g is None:
                rem[pp] = c
                if not full:
                    rem.update(fd)
                    return rem
                continue
            m = tuple(map(sub, pp, g.lpp))
            if not K.eq(g.lc, K.one):
                c = K.div(c, g.lc)
            for q, e in g.tail:
                t = tuple(map(add, q, m))
                v = fd.get(t)
                if v is None:
                    fd[t] = K.neg(K.mul(c, e))
                    heappush(heap, (nkey(t), t))
                else:
                    v = K.sub(v, K.mul(c, e))
                    if K.is_zero(v):
                        del fd[t]
                    else:
                        fd[t] = v
        return rem

    def _reduce_int(self, fd, basis, full):
        nkey = self.nkey
        find = basis.find if isinstance(basis, _ActiveIndex) else partial(self._divisor, basis=basis)
        fd = dict(fd)
        heap = [(nkey(pp), pp) for pp in fd]
        heapify(heap)
        rem = {}
        mult = Fraction(1)
        scaled = 0
        while heap:
            pp = heappop(heap)[1]
            c = fd.pop(pp, None)
            if c is None:
                continue
            g = find(pp)
            if g is None:
                rem[pp] = c
                if not full:
                    rem.update(fd)
                    break
                continue
            m = tuple(map(sub, pp, g.lpp))
            h = gcd(c, g.lc)
            mf, mg = g.lc // h, c // h
            if mf < 0:
                mf, mg = -mf, -mg
            if mf != 1:
                for k in fd:
                    fd[k] *= mf
                for k in rem:
                    rem[k] *= mf
                mult *= mf
                scaled += 1
            for q, e in g.tail:
                t = tuple(map(add, q, m))
                v = fd.get(t)
                if v is None:
                    fd[t] = -mg * e
                    heappush(heap, (nkey(t), t))
                else:
                    v -= mg * e
                    if v:
                        fd[t] = v
                    else:
                        del fd[t]
            if scaled >= 8:
                scaled = 0
                cont = _content(fd, rem)
                if cont > 1:
                    for k in fd:
                        fd[k] //= cont
                    for k in rem:
                        rem[k] //= cont
                    mult /= cont
        cont = _content(fd, rem)
        if cont > 1:
            for k in rem:
                rem[k] //= cont
            mult /= cont
        return rem, mult


def _content(*dicts):
    g = 0
    for d in dicts:
        for v in d.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


# -- the driver -----------------------------------------------------------------------


CRITERIA_ALL = frozenset({"coprime", "chain"})


class _Buchberger:
    def __init__(self, ring, gens, criteria=CRITERIA_ALL, token=None, sink=None):
        self.ring = ring
        self.E = _Engine(ring)
        self.coprime = "coprime" in criteria
        self.chain = "chain" in criteria
        self.token = token if token is not None else current_token()
        self.sink = sink if sink is not None else current_sink()
        self.basis = []
        self.active = []
        self.active_idx = []
        self.divisors = _ActiveIndex(self)
        self._alive = np.zeros(0, dtype=bool)
        self._lpps = np.zeros((0, ring.n), dtype=np.int64)
        self.heap = []
        self.pending = {}
        self.seq = count()
        for f in gens:
            if f.ring != ring:
                raise RingMismatch("generator outside the ideal's ring")
            if f.is_zero():
                continue
            d, _ = self.E.to_internal(f)
            lpp = f.LPP()
            entry = [f.wdeg(), ring.key(lpp), next(self.seq), None, None, d, True, 0]
            heappush(self.heap, entry)

    def _push_pair(self, i, j, L, sugar, mask):
        entry = [sugar, self.ring.key(L), next(self.seq), i, j, L, True, mask]
        self.pending[(i, j)] = entry
        heappush(self.heap, entry)

    def _update(self, t):
        B = self.basis
        h = B[t]
        hl, hm = h.lpp, h.mask
        n = len(hl)
        if self._lpps.shape[0] <= t:
            grown = np.zeros((2 * t + 8, n), dtype=np.int64)
            grown[: self._lpps.shape[0]] = self._lpps
            self._lpps = grown
            alive = np.zeros(2 * t + 8, dtype=bool)
            alive[: self._alive.shape[0]] = self._alive
            self._alive = alive
        self._lpps[t] = hl
        hv = self._lpps[t]
        idx = np.array(self.active_idx, dtype=np.int64)
        P = self._lpps[idx]
        L = np.maximum(P, hv)
        cop = ~np.any((P != 0) & (hv != 0), axis=1)
        # elements whose leading power-product is a multiple of h's leave the basis
        dead = idx[np.all(P >= hv, axis=1)] if self.chain else idx[:0]
        if self.chain:
            for (i, j), entry in list(self.pending.items()):
                Lij = entry[5]
                if hm & ~entry[7] or not _divides(hl, Lij):
                    continue
                if _lcm(B[i].lpp, hl) != Lij and _lcm(B[j].lpp, hl) != Lij:
                    entry[6] = False
                    del self.pending[(i, j)]
            # one pair per lcm (a coprime one if any), and only lcms that are not proper
            # multiples of another new lcm; smallest degree first so survivors are minimal
            order = np.argsort(L.sum(axis=1), kind="stable")
            L, idx, cop = L[order], idx[order], cop[order]
            live = np.ones(len(idx), dtype=bool)
            chosen = []
            k = 0
            while True:
                rest = np.flatnonzero(live[k:])
                if not rest.size:
                    break
                k += int(rest[0])
                mult = live & np.all(L >= L[k], axis=1)
                same = np.flatnonzero(mult & np.all(L == L[k], axis=1))
                live &= ~mult
                c = same[cop[same]]
                chosen.append(int(c[0]) if c.size else k)
            chosen.sort(key=lambda a: idx[a])
        else:
            chosen = range(len(idx))
        for a in chosen:
            if self.coprime and cop[a]:
                continue
            i = int(idx[a])
            g = B[i]
            Lt = tuple(L[a].tolist())
            sugar = max(g.sugar + self.E.wdeg(tuple(map(sub, Lt, g.lpp))), h.sugar + self.E.wdeg(tuple(map(sub, Lt, hl))))
            self._push_pair(i, t, Lt, sugar, g.mask | hm)
        if dead.size:
            for i in dead.tolist():
                B[i].alive = False
            self._alive[dead] = False
            self.active_idx = [i for i in self.active_idx if B[i].alive]
            self.active = [B[i] for i in self.active_idx]
        self.active_idx.append(t)
        self.active.append(h)
        self._alive[t] = True

    def _active(self):
        return self.active

    def run(self, stop=None):
        E = self.E
        while self.heap:
            entry = heappop(self.heap)
            if not entry[6]:
                continue
            if self.token is not None:
                self.token.check()
            sugar, _, _, i, j = entry[:5]
            if i is None:
                d = entry[5]
            else:
                del self.pending[(i, j)]
                d, sugar = E.spoly(self.basis[i], self.basis[j])
            if not d:
                continue
            r, _ = E.reduce(d, self.divisors)
            if not r:
                continue
            elem = E.make_elem(r, sugar)
            self.basis.append(elem)
            self._update(len(self.basis) - 1)
            if self.sink.enabled(100):
                self.sink.emit(100, f"gb: new element: len(GB)={len(self.active)} len(pairs)={len(self.pending)}")
            if stop is not None:
                poly = self.elem_poly(elem)
                if stop(poly):
                    return poly
        return None

    def elem_poly(self, g):
        return self.E.to_poly(dict([(g.lpp, g.lc)] + g.tail))

    def interreduced(self):
        """Minimal basis with fully reduced tails, as normalized Polynomials."""
        E = self.E
        elems = sorted(self._active(), key=lambda g: self.ring.key(g.lpp))
        minimal = []
        if len(elems) < _ActiveIndex.SMALL:
            for g in elems:
                if not any(_divides(m.lpp, g.lpp) for m in minimal):
                    minimal.append(g)
        else:
            lpps = np.array([g.lpp for g in elems], dtype=np.int64)
            kept = np.zeros(len(elems), dtype=bool)
            for k, g in enumerate(elems):
                if first_divisor(lpps[:k], kept[:k], lpps[k]) < 0:
                    kept[k] = True
                    minimal.append(g)
        out = []
        for k, g in enumerate(minimal):
            others = minimal[:k] + minimal[k + 1:]
            tail, mult = E.reduce(dict(g.tail), others) if g.tail else ({}, Fraction(1))
            if E.mode == "int":
                # exact tail is tail / mult; clear the fraction across the whole element
                d = {pp: c * mult.denominator for pp, c in tail.items()}
                d[g.lpp] = g.lc * mult.numerator
            else:
                d = dict(tail)
                d[g.lpp] = g.lc
            out.append(E.to_poly(dict(E.normalize(d))))
        return canonical_sort(out)


def canonical_sort(polys):
    """Ascending weighted degree of the leading power-product, then descending ring order."""
    if not polys:
        return []
    ring = polys[0].ring
    return sorted(polys, key=lambda f: (ring.wdeg_pp(f.LPP()), ring.nkey(f.LPP())))


# -- public operations --------------------------------------------------------------------


def _as_list(G):
    return G.gens if isinstance(G, Ideal) else list(G)


def normal_form(f, G):
    """Remainder of ``f`` on division by ``G`` (largest reducible term first, first divisor
    in list order).  The result is exact: ``f - NF(f)`` lies in ideal(G)."""
    ring = f.ring
    G = [g for g in _as_list(G) if not g.is_zero()]
    for g in G:
        if g.ring != ring:
            raise RingMismatch("NormalForm operands belong to different rings")
    if f.is_zero():
        return f
    E = _Engine(ring)
    basis = []
    for g in G:
        d, _ = E.to_internal(g)
        basis.append(_Elem(E.normalize(d), 0, None))
    d, mult = E.to_internal(f)
    r, m = E.reduce(d, basis)
    if E.mode == "int":
        scale = mult * m
        return Polynomial(ring, {pp: Fraction(c) / scale for pp, c in r.items()})
    return E.to_poly(r)


def spoly(f, g):
    """S-polynomial of ``f`` and ``g`` (monic normalization over fields)."""
    ring = f.ring
    L = _lcm(f.LPP(), g.LPP())
    K = ring.field
    a = f.mul_pp(tuple(map(sub, L, f.LPP())), K.inv(f.LC()))
    b = g.mul_pp(tuple(map(sub, L, g.LPP())), K.inv(g.LC()))
    return a - b


class Ideal:
    """Generators in one ring, with lazily computed and cached Groebner bases."""

    def __init__(self, ring, gens=()):
        self.ring = ring
        gens = [ring(g) if not isinstance(g, Polynomial) else g for g in gens]
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator {g} is not in {ring}")
        self.gens = gens
        self._gb = None
        self._lock = threading.Lock()

    def __str__(self):
        return format_ideal(self.gens)

    __repr__ = __str__

    def __add__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch("ideals of different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch("ideals of different rings")
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def is_zero(self):
        return all(g.is_zero() for g in self.gens)

    def gbasis(self, criteria=CRITERIA_ALL):
        if criteria != CRITERIA_ALL:
            return _compute_gb(self.ring, self.gens, criteria)
        gb = self._gb
        if gb is None:
            gb = _compute_gb(self.ring, self.gens, criteria)
            with self._lock:
                self._gb = gb
        return list(gb)

    def reduced_gbasis(self, criteria=CRITERIA_ALL):
        return [g.monic() for g in self.gbasis(criteria)]

    @property
    def cached(self):
        return self._gb is not None

    def set_gbasis(self, gb):
        self._gb = canonical_sort(list(gb))

    def contains(self, f):
        return normal_form(self.ring(f) if not isinstance(f, Polynomial) else f, self.gbasis()).is_zero()

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.reduced_gbasis() == other.reduced_gbasis()

    __hash__ = object.__hash__


def _compute_gb(ring, gens, criteria):
    bb = _Buchberger(ring, gens, criteria)
    bb.run()
    return bb.interreduced()


def GBasis(I, criteria=CRITERIA_ALL):
    return I.gbasis(criteria)


def ReducedGBasis(I, criteria=CRITERIA_ALL):
    return I.reduced_gbasis(criteria)


def gbasis_truncated(I, stop, check_homogeneous=True):
    """Run Buchberger degree by degree and return ``(partial_basis, hit)`` as soon as
    ``stop`` accepts a new basis element; ``hit`` is None if the run completes."""
    ring = I.ring
    if check_homogeneous:
        if not ring.order.is_degree_compatible(ring.weights):
            raise NotHomogeneous("ordering is not compatible with the ring grading")
        for g in I.gens:
            if not g.is_homogeneous():
                raise NotHomogeneous(f"generator {g} is not homogeneous")
    bb = _Buchberger(ring, I.gens)
    hit = bb.run(stop)
    if hit is None:
        return bb.interreduced(), None
    return [bb.elem_poly(g) for g in bb.basis if g.alive], hit


def ideal_membership(f, I):
    return I.contains(f)


def is_groebner_basis(G):
    """Every S-polynomial of ``G`` reduces to zero (Buchberger's criterion)."""
    G = [g for g in G if not g.is_zero()]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not normal_form(spoly(G[a], G[b]), G).is_zero():
                return False
    return True
