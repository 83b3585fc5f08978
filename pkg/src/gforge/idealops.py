"""Leading-term ideals, elimination, saturation and Hilbert series."""

from __future__ import annotations

from .errors import InvalidIndex, NotHomogeneous
from .expr import format_ideal, format_pp, indent_ideal
from math import lcm
from random import Random

from .gb import Ideal, checkpoint
from .linalg import nullspace_qq
from .order import elim_mat, graded_elim_mat, make_std_deg_rev_lex
from .poly import PolyRing, Polynomial, map_polynomial


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(pps):
    """Antichain of minimal elements under divisibility (duplicates removed)."""
    out = []
    for pp in sorted(set(map(tuple, pps)), key=lambda p: (sum(p), p)):
        if not any(_divides(m, pp) for m in out):
            out.append(pp)
    return out


class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain of power-products)."""

    def __init__(self, ring, pps):
        self.ring = ring
        self.gens = minimalize(pps)

    def sorted_gens(self):
        ring = self.ring
        return sorted(self.gens, key=lambda pp: (ring.wdeg_pp(pp), ring.nkey(pp)))

    def polys(self):
        return [self.ring.monomial(pp) for pp in self.sorted_gens()]

    def contains(self, pp):
        return any(_divides(m, pp) for m in self.gens)

    __contains__ = contains

    def is_unit(self):
        return any(not any(m) for m in self.gens)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring.names == other.ring.names and set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.gens)))

    def is_strongly_stable(self):
        """Borel-fixed test: ``m*x_i/x_j`` stays inside for every generator ``m`` and ``i < j``."""
        for m in self.gens:
            for j, e in enumerate(m):
                if not e:
                    continue
                for i in range(j):
                    q = list(m)
                    q[j] -= 1
                    q[i] += 1
                    if not self.contains(tuple(q)):
                        return False
        return True

    def as_ideal(self):
        return Ideal(self.ring, self.polys())

    def __str__(self):
        return format_ideal([format_pp(self.ring.names, pp) or "1" for pp in self.sorted_gens()])

    def indent_text(self):
        return indent_ideal([format_pp(self.ring.names, pp) or "1" for pp in self.sorted_gens()])

    __repr__ = __str__


def leading_term_ideal(I):
    return MonomialIdeal(I.ring, [g.LPP() for g in I.gbasis()])


LT = leading_term_ideal


def _indices(ring, names):
    out = []
    for v in names:
        if isinstance(v, Polynomial):
            out.append(v.as_indeterminate())
        elif isinstance(v, int):
            if not 0 <= v < ring.n:
                raise InvalidIndex(f"indeterminate index {v} out of range")
            out.append(v)
        else:
            if not ring.has_indet(v):
                raise InvalidIndex(f"{v!r} is not an indeterminate of {ring}")
            out.append(ring.index(v))
    if not out:
        raise InvalidIndex("elimination set must be nonempty")
    return sorted(set(out))


def positive_grading(gens, n):
    """Positive integer weights making every generator homogeneous, or None if none is found.

    The admissible weights form the kernel of the exponent differences; free coordinates
    are set to 1 first and then to a few random positive values.
    """
    rows = []
    for g in gens:
        pps = list(g.as_dict())
        rows.extend([a - b for a, b in zip(p, pps[0])] for p in pps[1:])
    if not rows:
        return (1,) * n
    basis = nullspace_qq(rows, n)
    if not basis:
        return None
    rng = Random(0)
    for trial in range(20):
        coeffs = [1] * len(basis) if trial == 0 else [rng.randint(1, 9) for _ in basis]
        for sign in (1, -1):
            w = [sign * sum(c * v[j] for c, v in zip(coeffs, basis)) for j in range(n)]
            if all(x > 0 for x in w):
                den = lcm(*(x.denominator for x in w))
                return tuple(int(x * den) for x in w)
    return None


def elim(elim_vars, I):
    """Generators of ``I`` intersected with the subring of the remaining indeterminates.

    Input homogeneous for some positive grading is handled with a degree-compatible
    elimination ordering for that grading.
    The result lives in a StdDegRevLex ring on the remaining indeterminates; its
    generators are a Groebner basis for the restriction of the elimination ordering.
    """
    ring = I.ring
    idx = _indices(ring, elim_vars)
    keep = [i for i in range(ring.n) if i not in idx]
    if not keep:
        raise InvalidIndex("cannot eliminate every indeterminate")
    weights = ring.weights
    if not all(g.is_homogeneous() for g in I.gens):
        weights = positive_grading([g for g in I.gens if not g.is_zero()], ring.n)
    if weights is not None:
        ering = PolyRing(ring.field, ring.names, graded_elim_mat(weights, idx), weights)
    else:
        ering = PolyRing(ring.field, ring.names, elim_mat([i + 1 for i in idx], ring.n), ring.weights)
    EI = Ideal(ering, [map_polynomial(g, ering, list(range(ring.n))) for g in I.gens])
    if weights is None and ring.field.is_exact:
        _try_fglm(EI, ring)
    target = PolyRing(
        ring.field,
        [ring.names[i] for i in keep],
        make_std_deg_rev_lex(len(keep)),
        [ring.weights[i] for i in keep],
    )
    index_map = [None] * ring.n
    for k, i in enumerate(keep):
        index_map[i] = k
    out = []
    for g in EI.gbasis():
        if any(g.LPP()[i] for i in idx):
            continue
        out.append(map_polynomial(g, target, index_map).primitive())
    from .gb import canonical_sort

    return Ideal(target, canonical_sort(out))


def _try_fglm(EI, ring):
    """For zero-dimensional input, get the elimination basis by FGLM from a degrevlex basis."""
    from .zerodim import fglm

    S = PolyRing(ring.field, ring.names, make_std_deg_rev_lex(ring.n))
    IS = Ideal(S, [map_polynomial(g, S, list(range(ring.n))) for g in EI.gens])
    if not is_zero_dim(IS):
        return
    G = IS.reduced_gbasis()
    if not G:
        return
    if any(g.is_constant() for g in G):
        EI.set_gbasis([EI.ring.one()])
        return
    EI.set_gbasis(fglm(G, EI.ring))


def min_subset_of_gens(I):
    """Greedy left-to-right: drop a generator lying in the ideal of the others still present."""
    gens = [g for g in I.gens if not g.is_zero()]
    kept = []
    for k, g in enumerate(gens):
        checkpoint()
        rest = kept + gens[k + 1:]
        if rest and Ideal(I.ring, rest).contains(g):
            continue
        kept.append(g)
    return kept


def is_zero_dim(I):
    """Every indeterminate has a pure power among the leading power-products."""
    lt = leading_term_ideal(I)
    if lt.is_unit():
        return True
    n = I.ring.n
    found = [False] * n
    for m in lt.gens:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


def _fresh_name(ring, base="w"):
    name = base
    k = 0
    while ring.has_indet(name):
        k += 1
        name = f"{base}{k}"
    return name


def saturate(I, f):
    """``I : f^infinity`` as ``Elim({w}, I + (w*f - 1))``, returned in ``I``'s ring."""
    ring = I.ring
    if not isinstance(f, Polynomial):
        f = ring(f)
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.is_constant():
        return Ideal(ring, I.gbasis())
    w = _fresh_name(ring)
    ext = PolyRing(ring.field, (w,) + ring.names, None, (1,) + ring.weights)
    shift = list(range(1, ring.n + 1))
    J = Ideal(ext, [map_polynomial(g, ext, shift) for g in I.gens])
    J = J + Ideal(ext, [ext.indet(0) * map_polynomial(f, ext, shift) - 1])
    E = elim([0], J)
    back = [ring.index(name) for name in E.ring.names]
    return Ideal(ring, [map_polynomial(g, ring, back).primitive() for g in E.gens])


# -- Hilbert series -------------------------------------------------------------------


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _shift(a, d):
    return [0] * d + list(a)


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def hilbert_numerator(gens, n):
    """``N`` with ``HS(P/J) = N(t) / (1-t)^n`` for the monomial ideal ``J = (gens)``."""
    return _trim(_numer(minimalize(gens), n))


def _numer(gens, n):
    if not gens:
        return [1]
    if any(not any(m) for m in gens):
        return [0]
    mixed = [m for m in gens if sum(1 for e in m if e) > 1]
    if not mixed:
        out = [1]
        for m in gens:
            out = _pmul(out, [1] + [0] * (sum(m) - 1) + [-1])
        return out
    checkpoint()
    counts = [sum(1 for m in mixed if m[i]) for i in range(n)]
    i = max(range(n), key=lambda k: (counts[k], -k))
    e = max(m[i] for m in mixed if m[i])
    p = tuple(e if k == i else 0 for k in range(n))
    plus = minimalize(gens + [p])
    colon = minimalize([tuple(max(a - b, 0) for a, b in zip(m, p)) for m in gens])
    return _padd(_numer(plus, n), _shift(_numer(colon, n), e))


class HilbertSeriesRep:
    """``numerator(t) / (1-t)^k`` with the numerator divided by ``1-t`` while possible."""

    def __init__(self, numerator, k):
        num = _trim([int(c) for c in numerator])
        while k > 0 and sum(num) == 0 and any(num):
            # synthetic division by (1 - t)
            q, acc = [], 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = _trim(q) if q else [0]
            k -= 1
        self.numerator = num
        self.k = k

    def coefficient(self, d):
        """Coefficient of ``t^d`` in the numerator."""
        return self.numerator[d] if 0 <= d < len(self.numerator) else 0

    def series(self, upto):
        """Power-series coefficients of the Hilbert function up to degree ``upto``."""
        coeffs = list(self.numerator) + [0] * (upto + 1)
        coeffs = coeffs[: upto + 1]
        for _ in range(self.k):
            acc = 0
            for i in range(len(coeffs)):
                acc += coeffs[i]
                coeffs[i] = acc
        return coeffs

    def __eq__(self, other):
        return isinstance(other, HilbertSeriesRep) and (self.numerator, self.k) == (other.numerator, other.k)

    def numerator_text(self):
        parts = []
        for d, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts) if parts else "0"

    def __str__(self):
        num = self.numerator_text()
        if self.k == 0:
            return num
        den = "(1-t)" if self.k == 1 else f"(1-t)^{self.k}"
        return f"({num}) / {den}"

    __repr__ = __str__


def hilbert_series(I):
    """Hilbert series of ``P/I`` (standard grading) via the leading-term ideal."""
    if isinstance(I, MonomialIdeal):
        ring, gens = I.ring, I.gens
    else:
        ring = I.ring
        gens = leading_term_ideal(I).gens
    if any(w != 1 for w in ring.weights):
        raise NotHomogeneous("Hilbert series needs the standard grading")
    return HilbertSeriesRep(hilbert_numerator(gens, ring.n), ring.n)
