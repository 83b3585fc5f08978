"""Toric ideals, hypersurface implicitization, and generic initial ideals."""

from __future__ import annotations

import random
from fractions import Fraction

from .coeff import QQ, PrimeField, TwinFloatField, with_increasing_precision
from .errors import (
    FieldNotSupported,
    InvalidMatrix,
    NoReliableAnswer,
    NotAHypersurface,
    VerificationFailed,
)
from .expr import indent_list
from .gb import Ideal, canonical_sort, checkpoint, current_sink, gbasis_truncated
from .idealops import MonomialIdeal
from .linalg import integer_kernel, nullspace_modp, nullspace_qq
from .modrecon import ResidueModulus, fault_tolerant_rat_reconstruct
from .order import OrderMatrix, make_std_deg_rev_lex, make_weighted_rev_lex, rational_rank
from .poly import PolyAlgebraHom, PolyRing, Polynomial, dehomogenize, homogenize, map_polynomial
from .zerodim import random_prime

# -- toric ideals ------------------------------------------------------------------------


def _check_exponents(A, n):
    A = [[int(x) for x in row] for row in A]
    if len(A) != n:
        raise InvalidMatrix(f"need one exponent row per indeterminate ({n}), got {len(A)}")
    s = len(A[0]) if A else 0
    if s == 0 or any(len(r) != s for r in A):
        raise InvalidMatrix("exponent rows must be nonempty and of equal length")
    if any(x < 0 for r in A for x in r):
        raise InvalidMatrix("exponents must be non-negative")
    if any(not any(r) for r in A):
        raise InvalidMatrix("an exponent row is zero")
    return A


def _binomial(ring, u):
    plus = tuple(max(e, 0) for e in u)
    minus = tuple(max(-e, 0) for e in u)
    K = ring.field
    return Polynomial(ring, {plus: K.one, minus: K.neg(K.one)})


def toric(ring, A):
    """Kernel of ``x_i -> t^(A_i)`` (row ``i`` of ``A`` is the exponent vector of ``x_i``).

    Lattice binomials of the integer kernel of ``A^T`` are saturated one indeterminate
    at a time.  The lattice ideal is homogeneous for the weights ``w_i = sum(A_i)``, so
    with a weighted reverse-lex order having ``x_i`` last, ``I : x_i^oo`` is obtained by
    dividing each Groebner basis element by its largest power of ``x_i``.
    """
    K = ring.field
    if not (K == QQ or isinstance(K, PrimeField)):
        raise FieldNotSupported("toric ideals need QQ or a prime field")
    A = _check_exponents(A, ring.n)
    n, s = ring.n, len(A[0])
    lattice = integer_kernel([[A[i][j] for i in range(n)] for j in range(s)])
    if not lattice:
        return Ideal(ring, [])
    w = [sum(r) for r in A]
    polys = None
    for i in range(n):
        checkpoint()
        W = PolyRing(K, ring.names, make_weighted_rev_lex(w, last=i), w)
        if polys is None:
            polys = [_binomial(W, u) for u in lattice]
        else:
            polys = [map_polynomial(g, W, list(range(n))) for g in polys]
        G = Ideal(W, polys).gbasis()
        polys = []
        for g in G:
            k = min(pp[i] for pp in g.as_dict())
            if k:
                g = Polynomial(W, {tuple(e - k if j == i else e for j, e in enumerate(pp)): c for pp, c in g.as_dict().items()})
            polys.append(g)
    gens = [map_polynomial(g, ring, list(range(n))).primitive() for g in polys]
    gens = canonical_sort(list(dict.fromkeys(gens)))
    return Ideal(ring, gens)


def toric_elim_oracle(ring, A):
    """The same ideal through plain elimination of fresh parameters (slow reference)."""
    from .idealops import elim

    A = _check_exponents(A, ring.n)
    s = len(A[0])
    pnames = _fresh_names(ring, "t", s)
    weights = [1] * s + [sum(row) for row in A]
    big = PolyRing(ring.field, tuple(pnames) + ring.names, None, weights)
    gens = []
    for i, row in enumerate(A):
        x = big.indet(s + i)
        gens.append(x - big.monomial(tuple(row) + (0,) * ring.n))
    E = elim(list(range(s)), Ideal(big, gens))
    back = [ring.index(v) for v in E.ring.names]
    return Ideal(ring, [map_polynomial(g, ring, back) for g in E.gens])


def _fresh_names(ring, base, count):
    out = []
    k = 1
    while len(out) < count:
        name = f"{base}{k}"
        if not ring.has_indet(name):
            out.append(name)
        k += 1
    return out


# -- implicitization -----------------------------------------------------------------------


def _param_ring(params):
    rings = {f.ring for f in params if isinstance(f, Polynomial)}
    if len(rings) != 1:
        raise NotAHypersurface("parametrization must lie in a single polynomial ring")
    return rings.pop()


def _elim_th(target, params):
    """Lowest-degree element of ``(x_i - F_i)`` free of parameters, dehomogenized."""
    R = params[0].ring
    K = R.field
    s, n = R.n, target.n
    degs = [f.degree() for f in params]
    names = R.names + ("h",) + target.names
    names = _dedupe(names)
    weights = [1] * (s + 1) + degs
    N = s + 1 + n
    rows = [weights, [1] * s + [0] * (n + 1)]
    for j in range(N - 1, -1, -1):
        if len(rows) == N:
            break
        row = [0] * N
        row[j] = -1
        if rational_rank(rows + [row]) > len(rows):
            rows.append(row)
    W = PolyRing(K, names, OrderMatrix(rows), weights)
    hidx = s
    gens = []
    for i, f in enumerate(params):
        F = homogenize(map_polynomial(f, W, list(range(s))), W.indet(hidx))
        if F.wdeg() != degs[i]:
            F = F * W.indet(hidx) ** (degs[i] - F.wdeg())
        gens.append(W.indet(s + 1 + i) - F)

    def free_of_params(g):
        return not any(any(pp[:s]) for pp in g.as_dict())

    _, hit = gbasis_truncated(Ideal(W, gens), free_of_params)
    if hit is None:
        raise VerificationFailed("no parameter-free element found")
    g = dehomogenize(hit, W.indet(hidx))
    index_map = [None] * N
    for i in range(n):
        index_map[s + 1 + i] = i
    return map_polynomial(g, target, index_map)


def _jacobian_rank_modp(params, point, q):
    """Rank mod ``q`` of the Jacobian of ``params`` at ``point``, or None if a coefficient has no image."""
    rows = []
    for f in params:
        row = [0] * len(point)
        for pp, c in f.as_dict().items():
            c = Fraction(c)
            if c.denominator % q == 0:
                return None
            c = c.numerator * pow(c.denominator, -1, q) % q
            for j, e in enumerate(pp):
                if e:
                    v = c * e
                    for k, (b, x) in enumerate(zip(pp, point)):
                        v = v * pow(x, b - (k == j), q) % q
                    row[j] = (row[j] + v) % q
        rows.append(row)
    return len(point) - len(nullspace_modp(rows, q, len(point)))


def _check_independent(target, params, rng):
    """Raise NotAHypersurface unless the parameters are algebraically independent.

    Full Jacobian rank at one point proves independence.  In positive characteristic a
    deficient Jacobian proves nothing (think of s^p), so the elimination ideal decides.
    """
    R = params[0].ring
    K = R.field
    s = R.n
    for _ in range(3):
        q = K.p if isinstance(K, PrimeField) else random_prime(rng)
        point = [rng.randrange(q) for _ in range(s)]
        r = _jacobian_rank_modp(params, point, q)
        if r == s:
            return
    if isinstance(K, PrimeField):
        from .idealops import elim

        names = _dedupe(R.names + target.names)
        big = PolyRing(K, names)
        gens = [big.indet(s + i) - map_polynomial(f, big, list(range(s))) for i, f in enumerate(params)]
        if len(elim(list(range(s)), Ideal(big, gens)).reduced_gbasis()) == 1:
            return
    raise NotAHypersurface("the parametrization does not describe a hypersurface (dependent parameters)")


def _dedupe(names):
    seen = set()
    out = []
    for nm in names:
        base, k = nm, 0
        while nm in seen:
            k += 1
            nm = f"{base}_{k}"
        seen.add(nm)
        out.append(nm)
    return tuple(out)


def _monomials_upto(weights, d):
    """All exponent vectors of weighted degree <= d."""
    out = []

    def rec(i, left, cur):
        if i == len(weights):
            out.append(tuple(cur))
            return
        e = 0
        while e * weights[i] <= left:
            cur.append(e)
            rec(i + 1, left - e * weights[i], cur)
            cur.pop()
            e += 1

    rec(0, d, [])
    return out


def _direct(target, params, max_degree=200):
    """Degree sweep: first kernel vector of the substitution map on monomials of wdeg <= d."""
    R = params[0].ring
    K = R.field
    degs = [f.degree() for f in params]
    cache = {}

    def image(pp):
        if pp not in cache:
            v = R.one()
            for f, e in zip(params, pp):
                if e:
                    v = v * f ** e
            cache[pp] = v
        return cache[pp]

    for d in range(1, max_degree + 1):
        checkpoint()
        monos = sorted(_monomials_upto(degs, d), key=target.key)
        imgs = [image(m) for m in monos]
        rowkeys = {}
        for f in imgs:
            for pp in f.as_dict():
                rowkeys.setdefault(pp, len(rowkeys))
        rows = [[K.zero] * len(monos) for _ in rowkeys]
        for j, f in enumerate(imgs):
            for pp, c in f.as_dict().items():
                rows[rowkeys[pp]][j] = c
        if isinstance(K, PrimeField):
            ker = nullspace_modp(rows, K.p, len(monos))
        else:
            ker = nullspace_qq(rows, len(monos))
        if ker:
            v = ker[0]
            return target.from_dict({m: c for m, c in zip(monos, v) if c})
    raise VerificationFailed("no implicit equation found up to the degree cap")


def _canonical_generator(g):
    return g.primitive() if g.ring.field == QQ else g.monic()


def implicit_hypersurface(target, params, algo="ElimTH", seed=None, max_primes=64):
    """Principal ideal of the implicit equation of the parametrization ``x_i = params[i]``."""
    params = [p for p in params]
    R = _param_ring(params)
    if target.n != R.n + 1 or len(params) != target.n:
        raise NotAHypersurface("need exactly one more target indeterminate than parameters")
    if any(f.is_constant() for f in params):
        raise NotAHypersurface("parametrizing polynomials must be nonconstant")
    if R.field != target.field:
        raise FieldNotSupported("parameter ring and target ring need the same coefficient field")
    K = R.field
    algo_fn = {"elimth": _elim_th, "direct": _direct}.get(str(algo).lower())
    if algo_fn is None:
        raise ValueError(f"unknown algorithm {algo!r}; use \"ElimTH\" or \"Direct\"")
    _check_independent(target, params, random.Random(seed))
    if isinstance(K, PrimeField):
        g = algo_fn(target, params)
        return Ideal(target, [_canonical_generator(g)])
    if K != QQ:
        raise FieldNotSupported("implicitization needs QQ or a prime field")
    g = _modular_implicit(target, params, algo_fn, seed, max_primes)
    return Ideal(target, [g])


def _modular_implicit(target, params, algo_fn, seed, max_primes):
    R = params[0].ring
    rng = random.Random(seed)
    hom = PolyAlgebraHom(target, R, params)
    shapes = {}
    for _ in range(max_primes):
        checkpoint()
        p = random_prime(rng)
        Fp = PrimeField(p)
        Rp, Tp = R.sibling(field=Fp), target.sibling(field=Fp)
        try:
            pp_params = [Rp.from_dict(f.as_dict()) for f in params]
        except ZeroDivisionError:
            continue
        if any(f.is_constant() for f in pp_params) or [f.degree() for f in pp_params] != [f.degree() for f in params]:
            continue
        g = algo_fn(Tp, pp_params).monic()
        key = (g.degree(), g.LPP())
        shapes.setdefault(key, []).append((p, g))
        # prefer lowest degree, then most votes
        best_key = min(shapes, key=lambda k: (k[0], -len(shapes[k])))
        good = shapes[best_key]
        if len(good) < 2:
            continue
        budget = (len(good) - 1) // 4
        supp = set()
        for _, gi in good:
            supp |= set(gi.as_dict())
        d = {}
        ok = True
        for pp in supp:
            pairs = [ResidueModulus(gi.coeff(pp), q) for q, gi in good]
            try:
                d[pp] = fault_tolerant_rat_reconstruct(pairs, budget)[0]
            except NoReliableAnswer:
                ok = False
                break
        if not ok:
            continue
        cand = target.from_dict(d).primitive()
        if hom(cand).is_zero():
            return cand
    raise VerificationFailed("modular implicitization did not verify")


# -- random changes of coordinates and gin ----------------------------------------------------


class LinearChange:
    """``gamma(x_j) = sum_i a[j][i] x_i``; ``matrix[j]`` is the coefficient row of the image of ``x_j``."""

    def __init__(self, ring, matrix):
        self.ring = ring
        self.matrix = [[Fraction(x) for x in row] for row in matrix]
        self.images = [
            ring.from_dict({tuple(int(k == i) for k in range(ring.n)): c for i, c in enumerate(row) if c})
            for row in self.matrix
        ]
        self.hom = PolyAlgebraHom(ring, ring, self.images)

    def apply(self, f):
        return self.hom(f)

    __call__ = apply

    def inverse(self):
        n = len(self.matrix)
        aug = [list(self.matrix[j]) + [Fraction(int(j == k)) for k in range(n)] for j in range(n)]
        from .linalg import rref_qq

        R, piv = rref_qq(aug)
        inv = [row[n:] for row in R]
        # images are rows: gamma = M acting on the variable vector; the inverse change is M^-1
        return LinearChange(self.ring, inv)

    def is_lower_triangular(self):
        return all(self.matrix[j][i] == 0 for j in range(len(self.matrix)) for i in range(j + 1, len(self.matrix)))

    def __str__(self):
        return indent_list(self.images)


def random_linear_change(ring, bound, triangular=True, seed=None, rng=None):
    """Random invertible change with integer entries in ``(-bound, bound)``."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    rng = rng if rng is not None else random.Random(seed)
    n = ring.n
    while True:
        M = []
        for j in range(n):
            row = []
            for i in range(n):
                if triangular and i > j:
                    row.append(0)
                    continue
                v = rng.randint(-bound + 1, bound - 1)
                while i == j and v == 0:
                    v = rng.randint(-bound + 1, bound - 1)
                row.append(v)
            M.append(row)
        if rational_rank(M) == n:
            return LinearChange(ring, M)


def _twin_lt_ideal(ring, gens, bits):
    T = ring.sibling(field=TwinFloatField(bits))
    tg = [T.from_dict(g.as_dict()) for g in gens]
    return MonomialIdeal(ring, [g.LPP() for g in Ideal(T, tg).gbasis()])


def gin(I, seed=None, start_bits=64, rng=None, sink=None, max_trials=10):
    """Generic initial ideal wrt the ring's ordering, computed over twin-floats.

    Random triangular changes with entries in (-10^6, 10^6) are tried until two successive
    trials give the same leading-term ideal.
    """
    ring = I.ring
    if ring.field != QQ:
        raise FieldNotSupported("gin needs rational coefficients")
    rng = rng if rng is not None else random.Random(seed)
    sink = sink if sink is not None else current_sink()
    gens = [g for g in I.gens if not g.is_zero()]
    if not gens:
        return MonomialIdeal(ring, [])
    prev = None
    bits = start_bits
    for _ in range(max_trials):
        change = random_linear_change(ring, 10**6, triangular=True, rng=rng)
        sink.emit(50, f"RandIdeal: change coord = {change}")
        moved = [change(g) for g in gens]
        used = {}

        def task(b):
            sink.emit(50, f"TryPrecisions: -- trying with FloatPrecision {b}")
            used["bits"] = b
            return _twin_lt_ideal(ring, moved, b)

        result = with_increasing_precision(bits, task)
        bits = used["bits"]
        if prev is not None and result == prev:
            return result
        prev = result
    raise NoReliableAnswer("gin did not stabilize")


def rgin(I, seed=None, start_bits=64, rng=None, sink=None):
    """gin with respect to StdDegRevLex, whatever the ring's own ordering."""
    ring = I.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("rgin is defined for the standard grading only")
    S = PolyRing(ring.field, ring.names, make_std_deg_rev_lex(ring.n))
    J = Ideal(S, [map_polynomial(g, S, list(range(ring.n))) for g in I.gens])
    res = gin(J, seed=seed, start_bits=start_bits, rng=rng, sink=sink)
    return res
