import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gforge import _kernels as K

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")

PRIMES = [2, 101, 32003, 2147483647]


def brute_rank(A, p):
    """Rank mod p by plain Python elimination."""
    rows = [[x % p for x in r] for r in A]
    rank = 0
    for c in range(len(rows[0]) if rows else 0):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


matrices = st.integers(1, 6).flatmap(
    lambda m: st.lists(st.lists(st.integers(-50, 50), min_size=m, max_size=m), min_size=1, max_size=6)
)


@settings(max_examples=40)
@given(matrices, st.sampled_from(PRIMES))
def test_rref_numpy_is_reduced_echelon(A, p):
    R, piv = K.rref_modp_numpy(np.array(A), p)
    assert len(piv) == brute_rank(A, p)
    for r, c in enumerate(piv):
        assert R[r, c] == 1
        assert all(R[i, c] == 0 for i in range(R.shape[0]) if i != r)
    assert not R[len(piv):].any()


@needs_numba
@settings(max_examples=40)
@given(matrices, st.sampled_from(PRIMES))
def test_rref_backends_agree(A, p):
    R1, p1 = K.rref_modp_numpy(np.array(A), p)
    R2, p2 = K.rref_modp_numba(np.array(A), p)
    assert list(p1) == list(p2)
    assert np.array_equal(R1, R2)


@settings(max_examples=60)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n), min_size=1, max_size=12),
            st.lists(st.integers(0, 4), min_size=n, max_size=n),
            st.randoms(use_true_random=False),
        )
    )
)
def test_first_divisor_backends_agree(args):
    rows, pp, rnd = args
    lpps = np.array(rows, dtype=np.int64)
    alive = np.array([rnd.random() < 0.7 for _ in rows])
    target = np.array(pp, dtype=np.int64)
    expect = next((i for i, r in enumerate(rows) if alive[i] and all(a <= b for a, b in zip(r, pp))), -1)
    assert K.first_divisor_numpy(lpps, alive, target) == expect
    if K.HAVE_NUMBA:
        assert K.first_divisor_numba(lpps, alive, target) == expect


def test_backend_flag(monkeypatch):
    monkeypatch.setenv("GFORGE_NUMBA", "0")
    assert K.backend() == "numpy"
    monkeypatch.setenv("GFORGE_NUMBA", "1")
    assert K.backend() == ("numba" if K.HAVE_NUMBA else "numpy")
