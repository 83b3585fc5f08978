import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gforge import QQ, PrimeField, TwinFloatField, with_increasing_precision
from gforge.coeff import is_probable_prime
from gforge.errors import (
    DivisionByZero,
    FieldMismatch,
    InsufficientPrecision,
    InvalidModulus,
    PrecisionCapExceeded,
)

BIG_P = 10**29 + 319

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**9)


def test_qq_basics():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(-2, 7)) == Fraction(-7, 2)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))
    assert QQ.convert(3) == Fraction(3)


def test_prime_field_rejects_composites():
    with pytest.raises(InvalidModulus):
        PrimeField(100)
    assert is_probable_prime(BIG_P)
    assert not is_probable_prime(BIG_P + 2)


def test_large_prime_inverse():
    F = PrimeField(BIG_P)
    third = F.convert(Fraction(1, 3))
    assert F.mul(third, 3) == 1
    # the monic basis element is x - 1/3; its constant prints in symmetric form
    assert F.symmetric(F.neg(third)) == -33333333333333333333333333440


def test_prime_field_denominator_vanishes():
    F = PrimeField(7)
    with pytest.raises(DivisionByZero):
        F.convert(Fraction(1, 14))
    with pytest.raises(FieldMismatch):
        F.convert(True)


@given(st.integers(), st.integers(min_value=1, max_value=10**6))
def test_prime_field_is_a_ring_hom(a, b):
    F = PrimeField(1000003)
    q = Fraction(a, b)
    assert F.convert(q) == F.div(F.convert(a), F.convert(b)) or b % F.p == 0


def test_twin_float_exact_values_print_as_rationals():
    K = TwinFloatField(16)
    a = K.convert(Fraction(1, 456789))
    assert K.to_rational(a) == Fraction(1, 456789)
    big = K.mul(K.convert(12345678), K.convert(10**3))
    with pytest.raises(InsufficientPrecision):
        K.to_rational(big)
    assert K.float_text(big) == (False, "0.12345678*10^11")


def test_twin_float_cancellation_gives_exact_zero():
    K = TwinFloatField(32)
    third = K.div(K.one, K.convert(3))
    z = K.sub(K.mul(third, K.convert(3)), K.one)
    assert K.is_zero(z)
    with pytest.raises(DivisionByZero):
        K.div(K.one, z)


def test_twin_float_fields_do_not_mix():
    with pytest.raises(FieldMismatch):
        TwinFloatField(16).one + TwinFloatField(32).one
    with pytest.raises(ValueError):
        TwinFloatField(4)


def test_with_increasing_precision_doubles():
    seen = []

    def task(bits):
        if bits < 256:
            raise InsufficientPrecision("more")
        return bits

    assert with_increasing_precision(64, task, on_attempt=seen.append) == 256
    assert seen == [64, 128, 256]
    with pytest.raises(PrecisionCapExceeded):
        with_increasing_precision(64, lambda b: (_ for _ in ()).throw(InsufficientPrecision("x")), max_escalations=2)


def _random_expr(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
    sub = _random_expr(rng, depth - 1)
    r = rng.random()
    if r < 0.1:
        # exact cancellation exercises the zero test
        return ("-", sub, sub)
    if r < 0.2:
        c = _random_expr(rng, 0) or Fraction(1)
        return ("/", ("*", sub, c), c)
    return (rng.choice("+-*/"), sub, _random_expr(rng, depth - 1))


def _eval(e, conv, ops):
    if isinstance(e, Fraction):
        return conv(e)
    op, a, b = e
    return ops[op](_eval(a, conv, ops), _eval(b, conv, ops))


def _exact(e):
    def div(a, b):
        if b == 0:
            raise ZeroDivisionError
        return a / b

    return _eval(e, lambda q: q, {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b, "/": div})


def twin_float_fuzz(n, seed, bits=64):
    """Returns ``(exact_hits, refusals, wrong)`` over ``n`` random expressions."""
    rng = random.Random(seed)
    K = TwinFloatField(bits)
    ops = {"+": K.add, "-": K.sub, "*": K.mul, "/": K.div}
    hits = refusals = wrong = 0
    done = 0
    while done < n:
        e = _random_expr(rng, rng.randint(1, 6))
        try:
            exact = _exact(e)
        except ZeroDivisionError:
            continue
        done += 1
        try:
            q = K.to_rational(_eval(e, K.convert, ops))
        except (InsufficientPrecision, DivisionByZero):
            refusals += 1
            continue
        if q == exact:
            hits += 1
        else:
            wrong += 1
    return hits, refusals, wrong


def test_twin_float_never_returns_a_wrong_rational_small():
    hits, refusals, wrong = twin_float_fuzz(150, seed=7)
    assert wrong == 0
    assert hits > 0


@given(rationals, rationals)
def test_twin_float_roundtrip_of_sums(a, b):
    K = TwinFloatField(64)
    try:
        q = K.to_rational(K.add(K.convert(a), K.convert(b)))
    except InsufficientPrecision:
        return
    assert q == a + b
