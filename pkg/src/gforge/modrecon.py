"""Chinese remaindering and (fault-tolerant) rational reconstruction."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, prod

from .coeff import QQ
from .errors import ModuliNotCoprime, NoReconstruction, NoReliableAnswer, ShapeMismatch
from .poly import Polynomial

SAFETY_BITS = 20


class ResidueModulus:
    """A residue (integer, or dict pp -> integer) together with its modulus.

    Polynomial residues keep the ring used for printing; coefficients are stored
    in ``[0, modulus)`` and zero coefficients are omitted.
    """

    __slots__ = ("residue", "modulus", "ring")

    def __init__(self, residue, modulus, ring=None):
        modulus = int(modulus)
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus
        if isinstance(residue, Polynomial):
            ring = residue.ring
            residue = {pp: _int_residue(c, residue.ring.field, modulus) for pp, c in residue.as_dict().items()}
        if isinstance(residue, dict):
            residue = {tuple(pp): int(c) % modulus for pp, c in residue.items()}
            residue = {pp: c for pp, c in residue.items() if c}
        else:
            residue = int(residue) % modulus
        self.residue = residue
        self.ring = ring

    @property
    def is_poly(self):
        return isinstance(self.residue, dict)

    def residue_poly(self):
        """The residue as a polynomial with integer coefficients in ``self.ring``."""
        if not self.is_poly:
            raise ShapeMismatch("scalar residue")
        return self.ring.from_dict(self.residue)

    def __eq__(self, other):
        return (
            isinstance(other, ResidueModulus)
            and self.modulus == other.modulus
            and self.residue == other.residue
        )

    def __str__(self):
        r = str(self.residue_poly()) if self.is_poly else str(self.residue)
        return f"record[modulus := {self.modulus}, residue := {r}]"

    __repr__ = __str__


def _int_residue(c, field, m):
    q = field.to_rational(c) if field != QQ else Fraction(c)
    if q.denominator != 1:
        return q.numerator * pow(q.denominator, -1, m) % m
    return q.numerator % m


def crt(r1, m1, r2, m2):
    """Combine ``r1 mod m1`` and ``r2 mod m2`` into a residue modulo ``m1*m2``."""
    if gcd(m1, m2) != 1:
        raise ModuliNotCoprime(f"moduli {m1} and {m2} are not coprime")
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t


def crt_combine(a, b):
    if a.is_poly != b.is_poly:
        raise ShapeMismatch("cannot combine a scalar residue with a polynomial residue")
    m = a.modulus * b.modulus
    if not a.is_poly:
        return ResidueModulus(crt(a.residue, a.modulus, b.residue, b.modulus), m)
    if gcd(a.modulus, b.modulus) != 1:
        raise ModuliNotCoprime(f"moduli {a.modulus} and {b.modulus} are not coprime")
    out = {}
    for pp in set(a.residue) | set(b.residue):
        out[pp] = crt(a.residue.get(pp, 0), a.modulus, b.residue.get(pp, 0), b.modulus)
    return ResidueModulus(out, m, a.ring or b.ring)


def crt_poly(f1, m1, f2, m2, ring=None):
    """Combine two polynomial images; coefficients are read as integers (symmetric for Fp)."""
    a = ResidueModulus(_poly_residues(f1, m1), m1, ring or f1.ring)
    b = ResidueModulus(_poly_residues(f2, m2), m2, ring or f2.ring)
    return crt_combine(a, b)


def _poly_residues(f, m):
    K = f.ring.field
    return {pp: _int_residue(c, K, m) for pp, c in f.as_dict().items()}


def rat_reconstruct(r, m, bound=None):
    """Unique ``n/d`` with ``n = r*d (mod m)``, ``|n|, d <= bound`` (default sqrt(m/2))."""
    r = int(r) % m
    if bound is None:
        bound = isqrt(m // 2)
    r0, r1 = m, r
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        raise NoReconstruction(f"no rational with numerator and denominator <= {bound}")
    n, d = (r1, t1) if t1 > 0 else (-r1, -t1)
    if gcd(n, d) != 1 or gcd(d, m) != 1:
        raise NoReconstruction("reconstructed fraction is not in lowest terms modulo m")
    return Fraction(n, d)


def rat_reconstruct_poly(residue, modulus=None, ring=None):
    """Coefficientwise rational reconstruction into a QQ polynomial ring."""
    if isinstance(residue, ResidueModulus):
        modulus = residue.modulus
        ring = ring or residue.ring
        residue = residue.residue
    elif isinstance(residue, Polynomial):
        ring = ring or residue.ring
        residue = _poly_residues(residue, modulus)
    if ring.field != QQ:
        ring = ring.sibling(field=QQ)
    d = {pp: rat_reconstruct(c, modulus) for pp, c in residue.items()}
    return ring.from_dict(d)


def fault_tolerant_rat_reconstruct(pairs, fault_budget):
    """Recover ``n/d`` from scalar residues despite up to ``fault_budget`` bad ones.

    Every remainder-cofactor pair of the extended Euclidean sequence on the full CRT
    product is a candidate; a candidate is kept when the residues consistent with it
    have modulus product exceeding ``2*|n|*d*prod(bad)*2^20``.  Among those the one
    with the largest consistent product wins.  Returns ``(value, good_indices)``.
    """
    pairs = list(pairs)
    if len(pairs) < 2:
        raise ValueError("need at least two residues")
    R, M = pairs[0].residue, pairs[0].modulus
    for p in pairs[1:]:
        R = crt(R, M, p.residue, p.modulus)
        M *= p.modulus
    best = None
    r0, r1 = M, R
    t0, t1 = 0, 1
    while True:
        if t1 != 0:
            n, d = (r1, t1) if t1 > 0 else (-r1, -t1)
            g = gcd(n, d)
            n, d = n // g, d // g
            cand = _judge(n, d, pairs, fault_budget)
            if cand is not None and (best is None or cand[2] > best[2]):
                best = cand
        if r1 == 0:
            break
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if best is None:
        raise NoReliableAnswer("no candidate meets the reconstruction safety margin")
    return Fraction(best[0], best[1]), best[3]


def _judge(n, d, pairs, fault_budget):
    good, bad = [], []
    for i, p in enumerate(pairs):
        m = p.modulus
        if d % m and (n - p.residue * d) % m == 0:
            good.append(i)
        else:
            bad.append(i)
    if len(bad) > fault_budget:
        return None
    pgood = prod(pairs[i].modulus for i in good)
    pbad = prod(pairs[i].modulus for i in bad)
    if pgood <= 2 * max(abs(n), 1) * d * pbad << SAFETY_BITS:
        return None
    return n, d, pgood, good
