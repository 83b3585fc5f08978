"""Quotient bases, ideals of points (Buchberger-Moeller) and minimal polynomials in P/I."""

from __future__ import annotations

import random
from heapq import heappop, heappush

from .coeff import QQ, PrimeField, is_probable_prime
from .errors import FieldNotSupported, NoReliableAnswer, NotZeroDimensional, VerificationFailed
from .gb import Ideal, _Elem, _Engine, checkpoint, current_sink, normal_form
from .idealops import is_zero_dim, leading_term_ideal
from .linalg import rref_modp
from .modrecon import ResidueModulus, fault_tolerant_rat_reconstruct
from .poly import PolyRing, Polynomial


def random_prime(rng, bits=31):
    while True:
        p = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(p):
            return p


def quotient_basis(I):
    """Standard monomials of ``I``, ascending in the ring order."""
    if not is_zero_dim(I):
        raise NotZeroDimensional("the quotient is not finite-dimensional")
    lt = leading_term_ideal(I)
    ring = I.ring
    if lt.is_unit():
        return []
    seen = set()
    todo = [(0,) * ring.n]
    while todo:
        pp = todo.pop()
        if pp in seen or lt.contains(pp):
            continue
        seen.add(pp)
        for i in range(ring.n):
            todo.append(tuple(e + (k == i) for k, e in enumerate(pp)))
    return sorted(seen, key=ring.key)


class _Echelon:
    """Incremental echelon form over a field, remembering how each row was formed."""

    def __init__(self, K):
        self.K = K
        self.rows = []  # (pivot, vector, combination dict)

    def reduce(self, vec, comb):
        K = self.K
        vec = list(vec)
        comb = dict(comb)
        for piv, rv, rc in self.rows:
            c = vec[piv]
            if K.is_zero(c):
                continue
            c = K.div(c, rv[piv])
            vec = [K.sub(a, K.mul(c, b)) for a, b in zip(vec, rv)]
            for key, v in rc.items():
                w = K.sub(comb.get(key, K.zero), K.mul(c, v))
                if K.is_zero(w):
                    comb.pop(key, None)
                else:
                    comb[key] = w
        return vec, comb

    def add(self, vec, comb):
        piv = next(i for i, c in enumerate(vec) if not self.K.is_zero(c))
        self.rows.append((piv, vec, comb))


# -- change of ordering ------------------------------------------------------------------


def fglm(G, target):
    """Reduced Groebner basis in ``target`` of the zero-dimensional ideal with reduced basis ``G``.

    ``target`` has the same indeterminates and field as the ring of ``G`` but another
    ordering.  Monomials are visited in increasing target order; each normal form is
    obtained from a previously visited one by a single multiplication.
    """
    source = G[0].ring
    K = source.field
    n = source.n
    std = quotient_basis(Ideal(source, G))
    col = {pp: k for k, pp in enumerate(std)}
    ech = _Echelon(K)
    nfs = {}
    lts, found = [], []
    frontier = [(target.key((0,) * n), (0,) * n, None, None)]
    seen = set()
    while frontier:
        checkpoint()
        _, pp, parent, var = heappop(frontier)
        if pp in seen or any(all(a <= b for a, b in zip(m, pp)) for m in lts):
            continue
        seen.add(pp)
        if parent is None:
            nf = normal_form(source.one(), G)
        else:
            nf = normal_form(nfs[parent] * source.indet(var), G)
        vec = [K.zero] * len(std)
        for q, c in nf.as_dict().items():
            vec[col[q]] = c
        vec, comb = ech.reduce(vec, {pp: K.one})
        if all(K.is_zero(c) for c in vec):
            lts.append(pp)
            found.append(Polynomial(target, comb).monic())
            continue
        ech.add(vec, comb)
        nfs[pp] = nf
        for i in range(n):
            q = tuple(e + (k == i) for k, e in enumerate(pp))
            heappush(frontier, (target.key(q), q, pp, i))
    return found


# -- ideals of points -------------------------------------------------------------------


def _check_points(ring, points):
    K = ring.field
    if not (K == QQ or isinstance(K, PrimeField)):
        raise FieldNotSupported("ideals of points need QQ or a prime field")
    pts = [tuple(K.convert(x) for x in row) for row in points]
    if not pts:
        raise ValueError("need at least one point")
    if any(len(p) != ring.n for p in pts):
        raise ValueError("every point needs one coordinate per indeterminate")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    return pts


def _bm(ring, pts):
    """Buchberger-Moeller over ``ring.field``; returns the GB in discovery order."""
    K = ring.field
    n = ring.n
    ech = _Echelon(K)
    lts, found = [], []
    qb = 0
    frontier = [(ring.key((0,) * n), (0,) * n)]
    seen = set()
    while frontier:
        checkpoint()
        _, pp = heappop(frontier)
        if pp in seen or any(all(a <= b for a, b in zip(m, pp)) for m in lts):
            continue
        seen.add(pp)
        vec = []
        for pt in pts:
            v = K.one
            for x, e in zip(pt, pp):
                for _ in range(e):
                    v = K.mul(v, x)
            vec.append(v)
        vec, comb = ech.reduce(vec, {pp: K.one})
        if all(K.is_zero(c) for c in vec):
            lts.append(pp)
            found.append(Polynomial(ring, comb))
            continue
        ech.add(vec, comb)
        qb += 1
        for i in range(n):
            q = tuple(e + (k == i) for k, e in enumerate(pp))
            heappush(frontier, (ring.key(q), q))
    return found


def ideal_of_points(ring, points, method="exact", seed=None):
    """Reduced Groebner basis of the vanishing ideal of ``points``, as an Ideal.

    ``method="modular"`` (QQ only) runs Buchberger-Moeller modulo random primes,
    keeps the majority leading-term shape, reconstructs and verifies exactly.
    """
    pts = _check_points(ring, points)
    if method == "modular" and ring.field == QQ:
        gens = _bm_modular(ring, pts, seed)
    else:
        gens = _bm(ring, pts)
    I = Ideal(ring, gens)
    I.set_gbasis(gens)
    return I


def _bm_modular(ring, pts, seed):
    rng = random.Random(seed)
    images = {}
    for _ in range(200):
        p = random_prime(rng)
        try:
            Fp = PrimeField(p)
            mp = [tuple(Fp.convert(x) for x in pt) for pt in pts]
        except ZeroDivisionError:
            continue
        if len(set(mp)) != len(mp):
            continue
        R = ring.sibling(field=Fp)
        G = _bm(R, mp)
        shape = tuple(g.LPP() for g in G)
        images.setdefault(shape, []).append((p, G))
        best = max(images.values(), key=len)
        if len(best) < 2:
            continue
        gens = _reconstruct_polys(ring, best)
        if gens is None:
            continue
        if all(g.evaluate(pt) == 0 for g in gens for pt in pts):
            return gens
    raise NoReliableAnswer("modular ideal of points did not stabilize")


def _reconstruct_polys(ring, images):
    """Coefficientwise fault-tolerant reconstruction of lists of polynomials."""
    primes = [p for p, _ in images]
    budget = (len(primes) - 1) // 4
    out = []
    for k in range(len(images[0][1])):
        supp = set()
        for _, G in images:
            supp |= set(G[k].as_dict())
        d = {}
        for pp in supp:
            pairs = [ResidueModulus(G[k].coeff(pp), p) for p, G in images]
            try:
                d[pp], _ = fault_tolerant_rat_reconstruct(pairs, budget)
            except NoReliableAnswer:
                return None
        out.append(ring.from_dict(d))
    return out


# -- minimal polynomials ------------------------------------------------------------------


def _target(z, ring):
    """Resolve the output indeterminate: an indeterminate polynomial or a name."""
    if isinstance(z, Polynomial):
        return z.ring, z.as_indeterminate()
    if isinstance(z, str) and ring.has_indet(z):
        return ring, ring.index(z)
    R = PolyRing(ring.field, [str(z)])
    return R, 0


def _build_univariate(R, i, coeffs):
    d = {}
    for k, c in enumerate(coeffs):
        if c:
            pp = tuple(k if j == i else 0 for j in range(R.n))
            d[pp] = c
    return R.from_dict(d)


def _krylov_exact(f, G, K):
    """Minimal polynomial coefficients (ascending, monic) by NF of successive powers."""
    ring = f.ring
    E = _Engine(ring)
    basis = [_Elem(E.normalize(E.to_internal(g)[0]), 0, None) for g in G]
    ech = _Echelon(K)
    cur = ring.one()
    k = 0
    index = {}
    while True:
        checkpoint()
        nf = normal_form(cur, G) if E.mode == "int" else E.to_poly(E.reduce(cur.as_dict(), basis)[0])
        for pp in nf.as_dict():
            index.setdefault(pp, len(index))
        vec = [K.zero] * len(index)
        for pp, c in nf.as_dict().items():
            vec[index[pp]] = c
        for piv, rv, rc in ech.rows:
            rv.extend([K.zero] * (len(index) - len(rv)))
        vec, comb = ech.reduce(vec, {k: K.one})
        if all(K.is_zero(c) for c in vec):
            coeffs = [K.zero] * (k + 1)
            for j, c in comb.items():
                coeffs[j] = c
            lead = coeffs[k]
            return [K.div(c, lead) for c in coeffs]
        ech.add(vec, comb)
        cur = nf * f
        k += 1


def _krylov_modp(fp, Gp, p):
    """Minimal polynomial mod p via RREF of the Krylov vectors (first non-pivot column)."""
    ring = fp.ring
    E = _Engine(ring)
    basis = [_Elem(E.normalize(g.as_dict()), 0, None) for g in Gp]
    vecs = []
    cur = ring.one()
    index = {}
    while True:
        checkpoint()
        nf = E.to_poly(E.reduce(cur.as_dict(), basis)[0])
        vecs.append(nf.as_dict())
        for pp in vecs[-1]:
            index.setdefault(pp, len(index))
        if len(vecs) > len(index):
            break
        cur = nf * fp
    cols = len(vecs)
    rows = [[vecs[j].get(pp, 0) for j in range(cols)] for pp in sorted(index, key=index.get)]
    R, piv = rref_modp(rows, p)
    k = next(c for c in range(cols) if c >= len(piv) or piv[c] != c)
    coeffs = [(-int(R[i][k])) % p for i in range(k)] + [1]
    return coeffs


def min_poly_quot(f, I, z=None, method=None, seed=None, max_primes=64):
    """Monic minimal polynomial of ``f`` in ``P/I`` written in the indeterminate ``z``.

    Over QQ the default is modular: per-prime minimal polynomials, keep those of maximal
    degree, fault-tolerant reconstruction, then exact verification ``m(f) in I``.
    """
    ring = I.ring
    if not isinstance(f, Polynomial):
        f = ring(f)
    if not is_zero_dim(I):
        raise NotZeroDimensional("MinPolyQuot needs a zero-dimensional ideal")
    R, zi = _target(z if z is not None else "z", ring)
    K = ring.field
    G = I.gbasis()
    if method is None:
        method = "modular" if K == QQ else "exact"
    if method == "exact" or K != QQ:
        coeffs = _krylov_exact(f, G, K)
        return _build_univariate(R, zi, coeffs)
    return _min_poly_modular(f, I, G, R, zi, seed, max_primes)


def _min_poly_modular(f, I, G, R, zi, seed, max_primes):
    ring = I.ring
    rng = random.Random(seed)
    sink = current_sink()
    images = []
    for _ in range(max_primes):
        p = random_prime(rng)
        Fp = PrimeField(p)
        Rp = ring.sibling(field=Fp)
        try:
            fp = Rp.from_dict(f.as_dict())
            gens_p = [Rp.from_dict(g.as_dict()) for g in I.gens]
        except ZeroDivisionError:
            continue
        Gp = Ideal(Rp, gens_p).gbasis()
        if any(not g.is_zero() and g.is_constant() for g in Gp):
            continue
        coeffs = _krylov_modp(fp, Gp, p)
        images.append((p, coeffs))
        top = max(len(c) for _, c in images)
        good = [(q, c) for q, c in images if len(c) == top]
        sink.emit(80, f"MinPolyQuot: prime {p} gives degree {len(coeffs) - 1}")
        if len(good) < 2:
            continue
        budget = (len(good) - 1) // 4
        out = []
        for k in range(top):
            pairs = [ResidueModulus(c[k], q) for q, c in good]
            try:
                out.append(fault_tolerant_rat_reconstruct(pairs, budget)[0])
            except NoReliableAnswer:
                out = None
                break
        if out is None:
            continue
        # exact verification: m(f) reduces to zero modulo I (Horner with NF)
        acc = ring.zero()
        for c in reversed(out):
            acc = normal_form(acc * f + c, G)
        if acc.is_zero():
            return _build_univariate(R, zi, out)
    raise VerificationFailed("modular minimal polynomial did not verify")
