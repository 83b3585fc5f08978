import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gforge import QQ, PolyRing, PrimeField, ResidueModulus, crt_poly, fault_tolerant_rat_reconstruct
from gforge import parse_polynomial, rat_reconstruct, rat_reconstruct_poly
from gforge.errors import ModuliNotCoprime, NoReconstruction, NoReliableAnswer, ShapeMismatch
from gforge.modrecon import crt, crt_combine
from gforge.zerodim import random_prime

P = PolyRing(QQ, ["x"])


def test_paper_crt_and_reconstruction():
    f1 = parse_polynomial(P, "-5293*x-4939")
    f2 = parse_polynomial(P, "-1806*x-4692")
    combined = crt_poly(f1, 12347, f2, 23459)
    assert combined.modulus == 289648273
    assert str(combined.residue_poly()) == "79571122*x +115859309"
    assert str(combined) == "record[modulus := 289648273, residue := 79571122*x +115859309]"
    assert str(rat_reconstruct_poly(combined)) == "(1/1234)*x -1/5"


def test_crt_poly_from_modular_rings():
    P1 = PolyRing(PrimeField(12347), ["x"])
    P2 = PolyRing(PrimeField(23459), ["x"])
    c = crt_poly(parse_polynomial(P1, "x/1234-1/5"), 12347, parse_polynomial(P2, "x/1234-1/5"), 23459, ring=P)
    assert str(rat_reconstruct_poly(c)) == "(1/1234)*x -1/5"


def test_crt_rejects_common_factors():
    with pytest.raises(ModuliNotCoprime):
        crt(1, 6, 2, 9)
    with pytest.raises(ShapeMismatch):
        crt_combine(ResidueModulus(1, 7), ResidueModulus({(1,): 1}, 11, P))


def test_rat_reconstruct_limits():
    assert rat_reconstruct(3 * pow(7, -1, 10007) % 10007, 10007) == Fraction(3, 7)
    with pytest.raises(NoReconstruction):
        rat_reconstruct(3, 7)


@given(st.integers(-300, 300), st.integers(1, 300))
def test_rat_reconstruct_inverts_reduction(n, d):
    m = 1000003 * 999983
    q = Fraction(n, d)
    r = q.numerator * pow(q.denominator, -1, m) % m
    assert rat_reconstruct(r, m) == q


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=4))
def test_crt_is_consistent(values):
    primes = [1000003, 1000033, 1000037, 1000039][: len(values)]
    acc = ResidueModulus(values[0], primes[0])
    for v, p in zip(values[1:], primes[1:]):
        acc = crt_combine(acc, ResidueModulus(v, p))
    for v, p in zip(values, primes):
        assert acc.residue % p == v % p


def residues_of(q, primes):
    return [ResidueModulus(q.numerator * pow(q.denominator, -1, p) % p, p) for p in primes]


def ftrr_trial(rng, q=Fraction(7, 11), nprimes=10, bad=1):
    primes = set()
    while len(primes) < nprimes:
        primes.add(random_prime(rng, 31))
    pairs = residues_of(q, sorted(primes))
    for i in rng.sample(range(nprimes), bad):
        p = pairs[i].modulus
        wrong = (pairs[i].residue + rng.randrange(1, p)) % p
        pairs[i] = ResidueModulus(wrong, p)
    return fault_tolerant_rat_reconstruct(pairs, bad)


def test_ftrr_recovers_despite_one_bad_prime():
    rng = random.Random(99)
    for _ in range(25):
        value, good = ftrr_trial(rng)
        assert value == Fraction(7, 11)
        assert len(good) == 9


def test_ftrr_refuses_when_margin_is_missing():
    pairs = residues_of(Fraction(123456789, 987654321), [10007, 10009])
    with pytest.raises(NoReliableAnswer):
        fault_tolerant_rat_reconstruct(pairs, 0)
