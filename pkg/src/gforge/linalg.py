"""Exact linear algebra over QQ, Fp and ZZ (lattice kernels)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from . import _kernels


def _int_row(row):
    den = 1
    for x in row:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    out = [int(Fraction(x) * den) for x in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    return [v // g for v in out] if g > 1 else out


def rref_qq(rows):
    """Reduced row echelon form over QQ with fraction-free forward elimination.

    Returns ``(R, pivots)`` where ``R`` holds Fractions and pivot entries are 1.
    Pivots are the first nonzero entry in each column, scanning rows in order.
    """
    M = [_int_row(r) for r in rows if any(r)]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(M)) if M[i][c]), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        P = M[r]
        a = P[c]
        for i in range(r + 1, len(M)):
            b = M[i][c]
            if b:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                row = [fa * x - fb * y for x, y in zip(M[i], P)]
                M[i] = _int_row(row) if any(row) else row
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    R = [[Fraction(x) for x in row] for row in M[:r]]
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        piv = R[k][c]
        R[k] = [x / piv for x in R[k]]
        for i in range(k):
            f = R[i][c]
            if f:
                R[i] = [x - f * y for x, y in zip(R[i], R[k])]
    return R, pivots


def nullspace_from_rref(R, pivots, ncols, one=Fraction(1), zero=Fraction(0), neg=lambda x: -x):
    basis = []
    pivset = set(pivots)
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for k, c in enumerate(pivots):
            v[c] = neg(R[k][free])
        basis.append(v)
    return basis


def nullspace_qq(rows, ncols=None):
    """Basis of ``{v : M v = 0}`` over QQ, one vector per free column (ascending)."""
    if ncols is None:
        ncols = len(rows[0])
    R, piv = rref_qq(rows)
    return nullspace_from_rref(R, piv, ncols)


def rref_modp(rows, p):
    A = np.asarray(rows, dtype=object)
    if A.size == 0:
        return np.zeros((0, 0), dtype=np.int64), []
    A = np.array([[int(x) % p for x in r] for r in rows], dtype=np.int64)
    return _kernels.rref_modp(A, p)


def nullspace_modp(rows, p, ncols=None):
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    R, piv = rref_modp(rows, p)
    R = R.tolist()
    return nullspace_from_rref(R, piv, ncols, 1, 0, lambda x: (-x) % p)


def integer_kernel(A):
    """Basis of the lattice ``{u in ZZ^n : A u = 0}`` for an integer matrix ``A`` (m x n).

    Column operations by extended gcd keep a unimodular transform ``U`` with
    ``A U`` in column echelon form; columns of ``U`` over zero columns span the kernel.
    """
    A = [list(map(int, r)) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    cols = [[A[i][j] for i in range(m)] for j in range(n)]
    U = [[int(i == j) for i in range(n)] for j in range(n)]
    r = 0
    for i in range(m):
        # make cols[r..] have a single nonzero in row i
        while True:
            nz = [j for j in range(r, n) if cols[j][i]]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j == j0:
                    continue
                q = cols[j][i] // cols[j0][i]
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[j0])]
                U[j] = [x - q * y for x, y in zip(U[j], U[j0])]
        nz = [j for j in range(r, n) if cols[j][i]]
        if nz:
            j = nz[0]
            cols[r], cols[j] = cols[j], cols[r]
            U[r], U[j] = U[j], U[r]
            r += 1
    kernel = [U[j] for j in range(r, n)]
    return lll_reduce(kernel)


def lll_reduce(basis, delta=Fraction(3, 4)):
    """Textbook LLL on integer row vectors (exact rational Gram-Schmidt)."""
    B = [list(v) for v in basis]
    k = len(B)
    if k <= 1:
        return B

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def gso():
        Bs, mu = [], [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            v = [Fraction(x) for x in B[i]]
            for j in range(i):
                mu[i][j] = dot(B[i], Bs[j]) / dot(Bs[j], Bs[j])
                v = [a - mu[i][j] * b for a, b in zip(v, Bs[j])]
            Bs.append(v)
        return Bs, mu

    Bs, mu = gso()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                B[i] = [a - q * b for a, b in zip(B[i], B[j])]
                Bs, mu = gso()
        if dot(Bs[i], Bs[i]) >= (delta - mu[i][i - 1] ** 2) * dot(Bs[i - 1], Bs[i - 1]):
            i += 1
        else:
            B[i], B[i - 1] = B[i - 1], B[i]
            Bs, mu = gso()
            i = max(i - 1, 1)
    return B
