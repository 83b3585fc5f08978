import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import polys, random_poly, regression_corpus
from gforge import QQ, CancelToken, GBasis, Ideal, PolyRing, PrimeField, ProgressSink, ReducedGBasis, normal_form
from gforge.errors import Cancelled, NotHomogeneous
from gforge.gb import gbasis_truncated, is_groebner_basis, reset_sink, reset_token, set_sink, set_token, spoly

R = PolyRing(QQ, ["x", "y", "z"])
RL = PolyRing(QQ, ["x", "y", "z"], "lex")


def first_example(ring):
    x, y, z = ring.gens
    return Ideal(ring, [x**3 + 3, y - x**2, z - x - y])


def test_degrevlex_basis_of_first_example():
    G = GBasis(first_example(R))
    assert [str(g) for g in G] == ["x +y -z", "y^2 -3*y +3*z", "y*z -3*y +3*z +3", "z^2 -4*y +3*z +6"]


def test_lex_reduced_basis_of_first_example():
    G = ReducedGBasis(first_example(RL))
    assert [str(g) for g in G] == [
        "x +(1/4)*z^2 +(-1/4)*z +3/2",
        "y +(-1/4)*z^2 +(-3/4)*z -3/2",
        "z^3 +9*z -6",
    ]


def test_large_prime_field():
    P = PolyRing(PrimeField(10**29 + 319), ["x"])
    (x,) = P.gens
    assert [str(g) for g in ReducedGBasis(Ideal(P, [3 * x - 1]))] == ["x -33333333333333333333333333440"]


def test_unit_and_zero_ideals():
    x, y, z = R.gens
    assert ReducedGBasis(Ideal(R, [x, x + 1])) == [R.one()]
    assert ReducedGBasis(Ideal(R, [])) == []
    assert ReducedGBasis(Ideal(R, [R.zero()])) == []


def test_normal_form_and_membership():
    I = first_example(R)
    x, y, z = R.gens
    assert normal_form(x**3 + 3, GBasis(I)).is_zero()
    assert I.contains(x * (y - x**2))
    assert not I.contains(x)


def test_criteria_do_not_change_the_answer():
    for I in regression_corpus(12, seed=5):
        full = ReducedGBasis(I)
        for crit in (frozenset(), frozenset({"coprime"}), frozenset({"chain"})):
            assert I.reduced_gbasis(crit) == full


def test_s_polynomials_reduce_to_zero():
    for I in regression_corpus(10, seed=11):
        G = GBasis(I)
        assert is_groebner_basis(G)
        for a in range(len(G)):
            for b in range(a + 1, len(G)):
                assert normal_form(spoly(G[a], G[b]), G).is_zero()


@settings(max_examples=25)
@given(st.lists(polys(PolyRing(PrimeField(101), ["a", "b", "c"]), maxterms=3, maxexp=2), min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_reduced_basis_invariant_under_permutation_and_scaling(gens, rnd):
    ring = PolyRing(PrimeField(101), ["a", "b", "c"])
    base = ReducedGBasis(Ideal(ring, gens))
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    scaled = [g * rnd.randint(1, 100) for g in shuffled]
    assert ReducedGBasis(Ideal(ring, scaled)) == base
    assert all(g.LC() == 1 for g in base)


class CountdownToken(CancelToken):
    """Cancels itself after ``n`` checks."""

    def __init__(self, n):
        super().__init__()
        self.left = n

    def check(self):
        self.left -= 1
        if self.left <= 0:
            self.cancel()
        super().check()


def test_cancel_then_rerun_gives_the_same_basis():
    golden = [str(g) for g in ReducedGBasis(first_example(RL))]
    I = first_example(RL)
    handle = set_token(CountdownToken(3))
    try:
        with pytest.raises(Cancelled):
            I.gbasis()
    finally:
        reset_token(handle)
    assert not I.cached
    assert [str(g) for g in ReducedGBasis(I)] == golden


def test_timeout_token():
    tok = CancelToken(timeout=0)
    assert tok.cancelled
    with pytest.raises(Cancelled):
        tok.check()


def test_progress_lines_go_to_the_sink():
    lines = []
    handle = set_sink(ProgressSink(100, emit=lines.append))
    try:
        GBasis(first_example(R))
    finally:
        reset_sink(handle)
    assert lines and all(line.startswith("gb: new element") for line in lines)
    quiet = []
    handle = set_sink(ProgressSink(10, emit=quiet.append))
    try:
        Ideal(R, first_example(R).gens).gbasis()
    finally:
        reset_sink(handle)
    assert quiet == []


def test_truncated_run_stops_early():
    x, y, z = R.gens
    I = Ideal(R, [x**2 - y * z, x * y - z**2, y**3 - x * z**2])
    part, hit = gbasis_truncated(I, lambda g: g.degree() >= 3)
    assert hit is not None and hit.degree() >= 3
    full, none = gbasis_truncated(I, lambda g: False)
    assert none is None and is_groebner_basis(full)
    with pytest.raises(NotHomogeneous):
        gbasis_truncated(first_example(R), lambda g: False)


def test_twin_float_basis_matches_exact():
    from gforge import TwinFloatField

    T = PolyRing(TwinFloatField(64), ["x", "y", "z"])
    x, y, z = T.gens
    G = ReducedGBasis(Ideal(T, [x**3 + 3, y - x**2, z - x - y]))
    assert [str(g) for g in G] == [str(g) for g in ReducedGBasis(first_example(R))]


def test_larger_random_ideal_mod_p():
    rng = random.Random(3)
    P = PolyRing(PrimeField(32003), ["a", "b", "c", "d"])
    gens = [random_poly(P, rng, nterms=4, maxdeg=3) for _ in range(4)]
    G = GBasis(Ideal(P, gens))
    assert is_groebner_basis(G)


@settings(max_examples=30)
@given(st.integers(0, 10**9), st.sampled_from(["lex", "degrevlex", "deglex"]))
def test_criteria_agree_on_random_ideals(seed, order):
    rng = random.Random(seed)
    P = PolyRing(PrimeField(32003), ["a", "b", "c"], order)
    gens = [random_poly(P, rng, nterms=3, maxdeg=2) for _ in range(rng.randint(1, 4))]
    I = Ideal(P, gens)
    full = I.reduced_gbasis()
    assert I.reduced_gbasis(frozenset()) == full
    assert is_groebner_basis(full)
