"""Exact arithmetic: factorization, r2, the pi-Laurent ring, memberships."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kthodge.exactmath import (
    Factorization,
    GaussianRational,
    PiElement,
    factorize,
    is_prime,
    membership_in_pi_negative_integers,
    nonpositive_integer_value,
    pi_ring,
    r2,
    rational_sqrt,
)


# -- factorize ---------------------------------------------------------------

def test_factorize_one_is_empty_product():
    assert factorize(1) == Factorization(())


def test_factorize_examples():
    assert factorize(25).factors == ((5, 2),)
    assert factorize(360).factors == ((2, 3), (3, 2), (5, 1))


@pytest.mark.parametrize("n", [2, 97, 1024, 600851, 999983, 10**6])
def test_factorize_reconstructs_and_lists_primes(n):
    fac = factorize(n)
    assert fac.value() == n
    primes = [p for p, _ in fac.factors]
    assert primes == sorted(primes)
    assert all(is_prime(p) for p in primes)
    assert all(e >= 1 for _, e in fac.factors)


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)


# -- r2 ----------------------------------------------------------------------

def _r2_brute(n):
    bound = math.isqrt(n) + 1
    return sum(
        1
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if x * x + y * y == n
    )


def _r2_divisor_identity(n):
    if n == 0:
        return 1
    d1 = sum(1 for d in range(1, n + 1) if n % d == 0 and d % 4 == 1)
    d3 = sum(1 for d in range(1, n + 1) if n % d == 0 and d % 4 == 3)
    return 4 * (d1 - d3)


def test_r2_examples():
    assert r2(0) == 1
    assert r2(25) == 12
    assert r2(3) == 0


def test_r2_small_range_matches_both_oracles():
    for n in range(0, 500):
        expected = _r2_brute(n)
        assert r2(n) == expected
        assert r2(n) == _r2_divisor_identity(n)


def test_r2_rejects_negative():
    with pytest.raises(ValueError):
        r2(-1)


# -- Gaussian rationals --------------------------------------------------------

def test_gaussian_field_operations():
    z = GaussianRational(Fraction(3, 2), Fraction(-1, 4))
    w = GaussianRational(Fraction(1), Fraction(2))
    assert z * w == w * z
    assert (z * w) * z == z * (w * z)
    assert z * z.inverse() == GaussianRational(Fraction(1))
    assert (z / w) * w == z
    assert complex(GaussianRational(Fraction(1, 2), Fraction(1, 2))) == 0.5 + 0.5j


def test_gaussian_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        GaussianRational().inverse()


# -- the pi-Laurent ring -------------------------------------------------------

PI = PiElement.pi_power(1)


def test_pi_ring_examples():
    assert pi_ring(PI, PI, "mul") == PiElement.pi_power(2)
    two_plus_inv = PiElement.rational(2) + PiElement.pi_power(-1)
    assert pi_ring(two_plus_inv, PiElement.rational(-2), "add") == PiElement.pi_power(-1)
    k_minus = PiElement.gaussian(GaussianRational(Fraction(1), Fraction(-1)))
    k_plus = PiElement.gaussian(GaussianRational(Fraction(1), Fraction(1)))
    assert pi_ring(k_minus, k_plus, "mul") == PiElement.rational(2)


def test_pi_ring_rejects_unknown_op():
    with pytest.raises(ValueError):
        pi_ring(PI, PI, "sub")


def _random_gaussian(rng):
    return GaussianRational(
        Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
        Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
    )


def _random_element(rng):
    return PiElement.from_terms(
        {rng.randint(-3, 3): _random_gaussian(rng) for _ in range(rng.randint(0, 4))}
    )


def test_ring_axioms_on_random_triples():
    rng = random.Random(20240811)
    for _ in range(1000):
        a, b, c = (_random_element(rng) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_canonical_form_drops_zero_terms():
    cancel = PiElement.from_terms({2: 1}) - PiElement.from_terms({2: 1})
    assert cancel.is_zero()
    assert cancel.terms == ()
    assert PiElement.from_terms({0: 0, 1: 0}) == PiElement.zero()


def test_evaluate_renders_with_float_pi():
    x = PiElement.from_terms({1: 2, -1: GaussianRational(Fraction(0), Fraction(1))})
    assert x.evaluate() == pytest.approx(2 * math.pi + 1j / math.pi)


# -- membership in scale * pi * (Z^- U {0}) -------------------------------------

def test_membership_examples():
    minus_eight_pi = PiElement.pi_power(1, -8)
    assert membership_in_pi_negative_integers(minus_eight_pi, 4) == -2
    not_pure = PiElement.pi_power(1, 4) + PiElement.rational(1)
    assert membership_in_pi_negative_integers(not_pure, 4) is None
    assert membership_in_pi_negative_integers(PiElement.zero(), 4) == 0


def test_membership_on_sector_ratio_product():
    # The conjugated ratio at d = 1, k = 0, n = 1 is -pi + (1/64)/pi; its
    # pi-multiple has exponents {0, 2} and a surviving rational term 1/64, so
    # it is not a non-positive multiple of 4*pi.
    from kthodge.sectors import AcsParams, StokesRatio, sector_criterion_standard

    report = sector_criterion_standard(AcsParams(0, 1), 0, 0, 1)
    assert isinstance(report.certificate, StokesRatio)
    ratio = report.certificate.value
    assert ratio.coefficient(-1) == GaussianRational(Fraction(1, 64))
    product = ratio.shift(1)
    assert product.coefficient(0) == GaussianRational(Fraction(1, 64))
    assert membership_in_pi_negative_integers(product, 4) is None


def test_membership_rejects_nonpositive_scale():
    with pytest.raises(ValueError):
        membership_in_pi_negative_integers(PiElement.zero(), 0)


@settings(max_examples=300)
@given(
    num=st.integers(min_value=-400, max_value=400),
    den=st.integers(min_value=1, max_value=40),
)
def test_membership_property_over_random_rationals(num, den):
    x = Fraction(num, den)
    result = membership_in_pi_negative_integers(PiElement.pi_power(1, x), 4)
    quarter = x / 4
    if x <= 0 and quarter.denominator == 1:
        assert result == quarter
    else:
        assert result is None


def test_nonpositive_integer_value():
    assert nonpositive_integer_value(PiElement.rational(-3)) == -3
    assert nonpositive_integer_value(PiElement.zero()) == 0
    assert nonpositive_integer_value(PiElement.rational(Fraction(-1, 2))) is None
    assert nonpositive_integer_value(PiElement.rational(1)) is None
    assert nonpositive_integer_value(PiElement.pi_power(1, -1)) is None


# -- rational square roots -------------------------------------------------------

def test_rational_sqrt_examples():
    assert rational_sqrt(Fraction(0)) == 0
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None


def test_rational_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        rational_sqrt(Fraction(-1))


@settings(max_examples=300)
@given(
    num=st.integers(min_value=0, max_value=10**4),
    den=st.integers(min_value=1, max_value=10**4),
)
def test_rational_sqrt_round_trip(num, den):
    s = Fraction(num, den)
    assert rational_sqrt(s * s) == s
