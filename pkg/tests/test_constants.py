import random
from fractions import Fraction

import mpmath as mp
import pytest

from ringprimes.constants import (
    IntPolynomial,
    accelerated_landau_constant,
    bateman_horn_constant,
    empirical_ratio,
    gaussian_row_census,
    hardy_littlewood_constant,
    jacobi,
)
from ringprimes.rational import PrimeTable

import oracles


def test_jacobi_examples():
    assert jacobi(1, 9) == 1
    assert jacobi(3, 9) == 0
    assert jacobi(2, 15) == 1  # (2|3)(2|5) = (-1)(-1)
    assert jacobi(-1, 3) == -1
    assert jacobi(0, 1) == 1


def test_jacobi_rejects_even_or_nonpositive_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 10)
    with pytest.raises(ValueError):
        jacobi(3, 0)
    with pytest.raises(ValueError):
        jacobi(3, -9)


def test_jacobi_against_reference():
    rng = random.Random(29)
    for _ in range(500):
        a = rng.randint(-200, 200)
        n = rng.randrange(1, 400, 2)
        assert jacobi(a, n) == oracles.ref_jacobi(a, n), (a, n)
    # multiplicativity and periodicity on a sample
    for _ in range(200):
        a, b = rng.randint(-99, 99), rng.randint(-99, 99)
        n = rng.randrange(1, 200, 2)
        assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)
        assert jacobi(a + n, n) == jacobi(a, n)


def test_row_constant_rejects_zero_offset():
    with pytest.raises(ValueError):
        hardy_littlewood_constant(0, 1000)


def test_row_constant_matches_exact_rational_truncation():
    for a, bound in ((1, 200), (2, 150), (3, 100)):
        estimate = hardy_littlewood_constant(a, bound)
        exact = oracles.ref_hl_product(a, bound)
        assert abs(float(estimate.value) - float(exact)) < 1e-15, (a, bound)


def test_row_constant_truncation_stability():
    c3 = hardy_littlewood_constant(1, 10**3)
    c4 = hardy_littlewood_constant(1, 10**4)
    assert abs(float(c3.value) - float(c4.value)) < 5e-2


def test_row_constant_reaches_reference_value():
    c = hardy_littlewood_constant(1, 10**6)
    assert abs(float(c.value) - 1.37281346) < 1e-2


def test_row_constant_is_deterministic():
    a = hardy_littlewood_constant(1, 10**4)
    b = hardy_littlewood_constant(1, 10**4)
    assert mp.mpf(a.value) == mp.mpf(b.value)
    assert repr(a.value) == repr(b.value)


def test_polynomial_parsing():
    p = IntPolynomial.parse("x^2+1")
    assert p.coeffs == (1, 0, 1)
    assert p.degree == 2
    assert p(4) == 17
    q = IntPolynomial.parse("x^2+2x")
    assert q.coeffs == (1, 2, 0)
    assert q(5) == 35
    r = IntPolynomial.parse("2x^3-x+5")
    assert r.coeffs == (2, 0, -1, 5)
    assert r(2) == 19
    assert IntPolynomial.parse("x^5").coeffs == (1, 0, 0, 0, 0, 0)
    assert str(IntPolynomial.parse("2x^3-x+5")) == "2x^3-x+5"
    with pytest.raises(ValueError):
        IntPolynomial.parse("x^2 + banana")
    with pytest.raises(ValueError):
        IntPolynomial.parse("")
    # constant polynomials parse but are refused by the product
    with pytest.raises(ValueError):
        bateman_horn_constant("7", 100)


def test_roots_mod_small_primes():
    poly = IntPolynomial.parse("x^2+1")
    assert poly.roots_mod(2) == 1  # x = 1
    assert poly.roots_mod(5) == 2  # x = 2, 3
    assert poly.roots_mod(7) == 0
    twin = IntPolynomial.parse("x^2+2x")
    assert twin.roots_mod(2) == 1  # 0 and -2 coincide mod 2
    assert twin.roots_mod(7) == 2


def test_bateman_horn_equals_row_constant_exactly():
    for bound in (100, 1000, 10**4):
        bh = bateman_horn_constant("x^2+1", bound)
        hl = hardy_littlewood_constant(1, bound)
        assert mp.mpf(bh.value) == mp.mpf(hl.value), bound
        assert bh.factors_used == hl.factors_used + 1  # p = 2 contributes 1


def test_bateman_horn_power_polynomial_is_one():
    for text in ("x^2", "x^3", "x^7"):
        c = bateman_horn_constant(text, 1000)
        assert float(c.value) == 1.0


def test_bateman_horn_twin_constant():
    got = bateman_horn_constant("x^2+2x", 10**5, num_factors=2)
    want = oracles.ref_twin_product(10**5)
    assert abs(float(got.value) - float(want)) < 1e-12
    # truncation already sits within 1e-4 of the classical 2*C2
    assert abs(float(got.value) - 1.32032363) < 1e-4


def test_bateman_horn_degenerate_polynomial_gives_zero():
    # x^2+x vanishes identically mod 2, so the p = 2 factor kills the product
    c = bateman_horn_constant("x^2+x", 100)
    assert float(c.value) == 0.0


def test_accelerated_constant():
    empty = accelerated_landau_constant(())
    mp.mp.prec = 130
    head = mp.mpf(3) / 2 * mp.zeta(6) / (mp.catalan * mp.zeta(3))
    assert abs(float(empty.value) - float(head)) < 1e-30
    two = accelerated_landau_constant((5, 13))
    assert abs(float(two.value) - 1.37281346) < 1e-4
    three = accelerated_landau_constant((5, 13, 17))
    assert abs(float(three.value) - 1.37283) < 2e-5
    # order and duplicates do not matter
    assert mp.mpf(accelerated_landau_constant((13, 5, 13)).value) == mp.mpf(two.value)
    with pytest.raises(ValueError):
        accelerated_landau_constant((7,))  # 7 = 3 mod 4
    with pytest.raises(ValueError):
        accelerated_landau_constant((15,))  # not prime


def test_factor_shapes_for_row_one():
    """For a = 1 the factor at p is 1 -+ 1/(p-1) according to p mod 4."""
    bound = 200
    exact = Fraction(1)
    table = PrimeTable(bound)
    for p in table.primes:
        p = int(p)
        if p == 2:
            continue
        if p % 4 == 1:
            exact *= Fraction(p - 2, p - 1)
        else:
            exact *= Fraction(p, p - 1)
    assert abs(float(hardy_littlewood_constant(1, bound).value) - float(exact)) < 1e-15


def test_empirical_ratio_small():
    point = empirical_ratio(10)
    assert point.poly_prime_count == 5  # n in {1, 2, 4, 6, 10}
    assert point.class_prime_count == 2  # {3, 7}
    assert point.ratio == 2.5


def test_empirical_ratio_cross_module():
    table = PrimeTable(100_000)
    for x in (10, 1000, 100_000):
        point = empirical_ratio(x)
        assert point.class_prime_count == table.count_class(x, 4, 3), x


def test_empirical_ratio_matches_direct_count():
    point = empirical_ratio(2000)
    direct = oracles.count_poly_primes(lambda n: n * n + 1, 2000)
    assert point.poly_prime_count == direct


def test_row_census():
    assert gaussian_row_census(0, 10) == 2  # 3 and 7
    assert gaussian_row_census(1, 10) == 5
    assert gaussian_row_census(2, 10) == 4
    for b in (0, 1, 2, 5, 10):
        want = sum(1 for a in range(1, 201) if oracles.ref_gaussian_prime(a, b))
        assert gaussian_row_census(b, 200) == want, b
