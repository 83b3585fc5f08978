import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gforge import QQ, Ideal, PolyRing, PrimeField, ReducedGBasis, ideal_of_points, min_poly_quot, quotient_basis
from gforge.errors import NotZeroDimensional
from gforge.poly import map_polynomial
from gforge.zerodim import fglm

R = PolyRing(QQ, ["x", "y", "z"])
P2 = PolyRing(QQ, ["x", "y"])

EIGHT_POINTS = [(10, 0), (-10, 0), (0, 10), (0, -10), (7, 7), (-7, -7), (7, -7), (-7, 7)]


def example_ideal(ring=R):
    x, y, z = ring.gens
    return Ideal(ring, [x**2 - z**2, (y - 3) * (y + 2) * (y**3 - 2), z**3 - 1])


def test_quotient_basis():
    x, y, z = R.gens
    std = quotient_basis(Ideal(R, [x**2, y**2, z]))
    assert std == [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)]
    assert len(quotient_basis(example_ideal())) == 30
    assert quotient_basis(Ideal(R, [R.one()])) == []
    with pytest.raises(NotZeroDimensional):
        quotient_basis(Ideal(R, [x, y]))


def test_min_poly_of_an_indeterminate():
    assert str(min_poly_quot(R.gens[0], example_ideal(), "x")) == "x^6 -1"


def test_min_poly_of_a_linear_form_modular_matches_exact():
    x, y, z = R.gens
    f = x - 2 * y + 3 * z
    m = min_poly_quot(f, example_ideal(), "x", seed=1)
    assert m.degree() == 30
    assert m.coeff((29, 0, 0)) == 12
    assert m.coeff((0, 0, 0)) == -16498446852685824
    assert m == min_poly_quot(f, example_ideal(), "x", method="exact")


def test_min_poly_mod_p():
    F = PolyRing(PrimeField(101), ["x", "y"])
    x, y = F.gens
    m = min_poly_quot(x + y, Ideal(F, [x**2 - 2, y**2 - 3]), "t")
    assert m.degree() == 4
    assert str(m.ring.names) == "('t',)"


def test_ideal_of_points_example():
    I = ideal_of_points(P2, EIGHT_POINTS)
    assert [str(g) for g in I.gens] == [
        "x^2*y +(49/51)*y^3 +(-4900/51)*y",
        "x^3 +(51/49)*x*y^2 -100*x",
        "y^4 +(-2499/2)*x^2 +(-2699/2)*y^2 +124950",
        "x*y^3 -49*x*y",
    ]
    assert len(quotient_basis(I)) == 8
    assert ideal_of_points(P2, EIGHT_POINTS, method="modular", seed=3) == I


def point_ideal(ring, pt):
    return Ideal(ring, [v - c for v, c in zip(ring.gens, pt)])


def intersection(ring, ideals):
    """Intersection by elimination of a tag indeterminate."""
    acc = ideals[0]
    for J in ideals[1:]:
        T = PolyRing(ring.field, ["tag"] + list(ring.names), "lex")
        t = T.gens[0]
        emb = [map_polynomial(g, T, list(range(1, ring.n + 1))) for g in acc.gens + J.gens]
        k = len(acc.gens)
        H = Ideal(T, [t * g for g in emb[:k]] + [(1 - t) * g for g in emb[k:]])
        kept = [g for g in ReducedGBasis(H) if g.LPP()[0] == 0]
        acc = Ideal(ring, [map_polynomial(g, ring, [None] + list(range(ring.n))) for g in kept])
    return acc


@settings(max_examples=15)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=4, unique=True))
def test_ideal_of_points_equals_intersection(points):
    I = ideal_of_points(R, points)
    assert I == intersection(R, [point_ideal(R, p) for p in points])
    assert len(quotient_basis(I)) == len(points)
    assert all(g.evaluate(p) == 0 for g in I.gens for p in points)


def test_ideal_of_points_mod_p():
    F = PolyRing(PrimeField(7), ["x", "y"])
    pts = [(a, b) for a, b in product(range(7), repeat=2) if (a * a + b) % 7 == 1]
    I = ideal_of_points(F, pts)
    assert len(quotient_basis(I)) == len(pts)


def test_fglm_gives_lex_basis():
    L = PolyRing(QQ, ["x", "y", "z"], "lex")
    G = ReducedGBasis(example_ideal())
    lex = fglm(G, L)
    assert sorted(map(str, lex)) == sorted(map(str, ReducedGBasis(example_ideal(L))))


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_fglm_random_mod_p(seed):
    rng = random.Random(seed)
    F = PolyRing(PrimeField(32003), ["a", "b"])
    L = PolyRing(PrimeField(32003), ["a", "b"], "lex")
    a, b = F.gens
    gens = [a**2 + rng.randrange(32003) * b + rng.randrange(32003), b**3 + rng.randrange(32003) * a * b + 1]
    lex = fglm(ReducedGBasis(Ideal(F, gens)), L)
    assert sorted(map(str, lex)) == sorted(map(str, ReducedGBasis(Ideal(L, [L.from_dict(h.as_dict()) for h in gens]))))
