"""Hot loops with a numba version and a numpy fallback.

The numba kernels are used when numba imports and ``GFORGE_NUMBA`` is not ``0``;
otherwise the vectorized numpy versions run.  Both give identical results.

``rref_modp`` is dense row reduction modulo a word-size prime; entries must lie in
``[0, p)`` with ``p < 2**31`` so products fit in int64.  ``first_divisor`` finds the
first live row of an exponent matrix that divides a given power-product.
"""

from __future__ import annotations

import os

import numpy as np

MAX_PRIME = 1 << 31


def _want_numba():
    return os.environ.get("GFORGE_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def rref_modp_numpy(A, p):
    """Reduced row echelon form of ``A`` mod ``p``; returns ``(R, pivot_columns)``."""
    R = np.array(A, dtype=np.int64) % p
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r]) % p) % p
        pivots.append(c)
        r += 1
    return R, pivots


def first_divisor_numpy(lpps, alive, pp):
    """Index of the first row ``i`` with ``alive[i]`` and ``lpps[i] <= pp``, or -1."""
    ok = alive.copy()
    for k in range(lpps.shape[1]):
        ok &= lpps[:, k] <= pp[k]
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else -1


try:  # pragma: no cover - exercised only when numba is importable
    import numba

    @numba.njit(cache=True)
    def _inv_mod(a, p):
        t, newt = 0, 1
        r, newr = p, a
        while newr != 0:
            q = r // newr
            t, newt = newt, t - q * newt
            r, newr = newr, r - q * newr
        if t < 0:
            t += p
        return t

    @numba.njit(cache=True)
    def _rref_kernel(R, p, piv_out):
        nrows, ncols = R.shape
        r = 0
        npiv = 0
        for c in range(ncols):
            if r == nrows:
                break
            k = -1
            for i in range(r, nrows):
                if R[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(ncols):
                    tmp = R[r, j]
                    R[r, j] = R[k, j]
                    R[k, j] = tmp
            inv = _inv_mod(R[r, c], p)
            for j in range(c, ncols):
                R[r, j] = R[r, j] * inv % p
            for i in range(nrows):
                if i != r:
                    f = R[i, c]
                    if f != 0:
                        for j in range(c, ncols):
                            R[i, j] = (R[i, j] - f * R[r, j]) % p
            piv_out[npiv] = c
            npiv += 1
            r += 1
        return npiv

    def rref_modp_numba(A, p):
        R = np.array(A, dtype=np.int64) % p
        piv = np.zeros(min(R.shape) if R.size else 0, dtype=np.int64)
        if R.size == 0:
            return R, []
        n = _rref_kernel(R, np.int64(p), piv)
        return R, [int(c) for c in piv[:n]]

    @numba.njit(cache=True)
    def _first_divisor_kernel(lpps, alive, pp):
        nrows, n = lpps.shape
        for i in range(nrows):
            if not alive[i]:
                continue
            ok = True
            for k in range(n):
                if lpps[i, k] > pp[k]:
                    ok = False
                    break
            if ok:
                return i
        return -1

    def first_divisor_numba(lpps, alive, pp):
        return int(_first_divisor_kernel(lpps, alive, pp))

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False
    rref_modp_numba = None
    first_divisor_numba = None


def backend():
    return "numba" if HAVE_NUMBA and _want_numba() else "numpy"


def rref_modp(A, p):
    if p >= MAX_PRIME:
        raise ValueError("dense kernels need p < 2^31")
    if backend() == "numba":
        return rref_modp_numba(A, p)
    return rref_modp_numpy(A, p)


def first_divisor(lpps, alive, pp):
    if backend() == "numba":
        return first_divisor_numba(lpps, alive, pp)
    return first_divisor_numpy(lpps, alive, pp)
