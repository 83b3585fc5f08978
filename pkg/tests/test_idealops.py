import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_poly
from gforge import (
    LT,
    QQ,
    Ideal,
    MonomialIdeal,
    PolyRing,
    PrimeField,
    ReducedGBasis,
    elim,
    hilbert_series,
    is_zero_dim,
    min_subset_of_gens,
)
from gforge.errors import InvalidIndex
from gforge.idealops import positive_grading, saturate
from gforge.poly import map_polynomial

R = PolyRing(QQ, ["x", "y", "z"])

HILBERT_NUMERATOR = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 15, 15, 15, 15, 15,
                     14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1]


def lt_example():
    x, y, z = R.gens
    return Ideal(R, [y**20 - x**4 * z**16, x**12 * z**3 - y**13 * z**2])


def test_leading_term_ideal():
    assert str(LT(lt_example())) == "ideal(y^13*z^2,  y^20,  x^12*y^7*z^3,  x^24*z^4)"


def test_hilbert_series_numerator():
    H = hilbert_series(lt_example())
    assert H.k == 1
    assert H.numerator == HILBERT_NUMERATOR
    assert H.coefficient(14) == 15 and H.coefficient(33) == 1


def test_hilbert_series_of_simple_quotients():
    x, y, z = R.gens
    assert hilbert_series(Ideal(R, [])).k == 3
    H = hilbert_series(Ideal(R, [x, y, z]))
    assert (H.numerator, H.k) == ([1], 0)
    # a plane cubic: (1 - t^3) / (1 - t)^3 = (1 + t + t^2) / (1 - t)^2
    H = hilbert_series(Ideal(R, [x**3 + y**3 + z**3]))
    assert (H.numerator, H.k) == ([1, 1, 1], 2)
    assert H.series(4) == [1, 3, 6, 9, 12]


def test_monomial_ideal_basics():
    M = MonomialIdeal(R, [(2, 0, 0), (1, 1, 0), (3, 0, 0), (0, 2, 0)])
    assert len(M.gens) == 3
    assert (2, 1, 5) in M and (0, 1, 1) not in M
    assert M.is_strongly_stable()
    assert not MonomialIdeal(R, [(0, 2, 0)]).is_strongly_stable()


def twisted_cubic():
    P = PolyRing(QQ, ["t", "x", "y", "z"])
    t, x, y, z = P.gens
    return P, Ideal(P, [x - t, y - t**2, z - t**3])


def test_elim_twisted_cubic():
    P, I = twisted_cubic()
    E = elim(["t"], I)
    assert str(E) == "ideal(x^2 -y,  x*y -z,  y^2 -x*z)"
    assert E.ring.names == ("x", "y", "z")
    assert [str(g) for g in min_subset_of_gens(E)] == ["x^2 -y", "x*y -z"]


def test_elim_rejects_bad_sets():
    P, I = twisted_cubic()
    with pytest.raises(InvalidIndex):
        elim(["w"], I)
    with pytest.raises(InvalidIndex):
        elim(["t", "x", "y", "z"], I)


def test_positive_grading():
    P, I = twisted_cubic()
    assert positive_grading(I.gens, 4) == (1, 1, 2, 3)
    x, y, z = R.gens
    assert positive_grading([x - 1], 3) is None


def check_elim(I, drop):
    """Compare with a lex basis whose leading indeterminates are the eliminated ones."""
    ring = I.ring
    keep = [v for v in ring.names if v not in drop]
    L = PolyRing(ring.field, list(drop) + keep, "lex")
    G = ReducedGBasis(Ideal(L, [map_polynomial(g, L) for g in I.gens]))
    oracle = [g for g in G if not any(g.LPP()[: len(drop)])]
    E = elim(drop, I)
    assert E == Ideal(E.ring, [map_polynomial(g, E.ring, [None] * len(drop) + list(range(len(keep)))) for g in oracle])


def test_elim_paths_agree_with_lex():
    P = PolyRing(QQ, ["a", "b", "c", "d"])
    a, b, c, d = P.gens
    # zero-dimensional and not homogeneous for any grading: FGLM path
    check_elim(Ideal(P, [a**2 - 2, b - a**2 - a, c**2 - b, d - c - 1]), ["a", "b"])
    # one-dimensional and not homogeneous: plain elimination ordering
    check_elim(Ideal(P, [a - c, b - c**2 + c, d - c**3]), ["c"])
    # homogeneous for a nonstandard grading
    check_elim(Ideal(P, [a - c**2, b - c**3]), ["c"])


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_elim_random_agrees_with_lex(seed):
    rng = random.Random(seed)
    P = PolyRing(PrimeField(32003), ["a", "b", "c"])
    gens = [random_poly(P, rng, nterms=3, maxdeg=2) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if not g.is_zero()] or [P.gens[0]]
    check_elim(Ideal(P, gens), [rng.choice(["a", "b", "c"])])


def test_is_zero_dim():
    x, y, z = R.gens
    assert is_zero_dim(Ideal(R, [x**2 - z**2, (y - 3) * (y + 2), z**3 - 1]))
    assert not is_zero_dim(Ideal(R, [x * y, z]))
    assert is_zero_dim(Ideal(R, [R.one()]))


def test_min_subset_keeps_a_generating_set():
    x, y, z = R.gens
    gens = [x**2 - y, x * y - z, y**2 - x * z, x**3 - z]
    kept = min_subset_of_gens(Ideal(R, gens))
    assert Ideal(R, kept) == Ideal(R, gens)
    assert len(kept) == 2


def test_saturation():
    x, y, z = R.gens
    I = Ideal(R, [x * y, x * z])
    assert saturate(I, x) == Ideal(R, [y, z])
