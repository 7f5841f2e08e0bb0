import numpy as np
import pytest

from ringprimes.rational import (
    PrimeTable,
    is_prime_u64,
    primes_up_to,
    sqrt_minus_one_mod,
)

import oracles


def test_small_sieve_values():
    assert list(primes_up_to(10)) == [2, 3, 5, 7]
    assert len(primes_up_to(100)) == 25
    assert list(primes_up_to(1)) == []
    assert list(primes_up_to(2)) == [2]


def test_count_class_small():
    table = PrimeTable(100)
    assert table.count_class(10, 4, 3) == 2  # 3, 7
    assert table.count_class(10, 4, 1) == 1  # 5
    assert table.count_class(2, 4, 1) == 0


def test_count_classes_partition():
    table = PrimeTable(1_000_000)
    for x in (10, 97, 1000, 12345, 1_000_000):
        total = table.count(x)
        split = table.count_class(x, 4, 1) + table.count_class(x, 4, 3) + (1 if x >= 2 else 0)
        assert split == total


def test_is_prime_u64_edges():
    assert not is_prime_u64(0)
    assert not is_prime_u64(1)
    assert is_prime_u64(2)
    assert is_prime_u64(3)
    assert not is_prime_u64(4)
    # = 97 * 38622457, decided by the trial-division reference
    assert oracles.trial_prime(3746378329) is False
    assert not is_prime_u64(3746378329)


def test_is_prime_u64_matches_sieve_to_one_million():
    table = PrimeTable(1_000_000)
    values = np.arange(2, 1_000_001, dtype=np.int64)
    mask = table.is_prime_array(values)
    # spot the full agreement without a million python-level calls: count and
    # a random sample of individual checks
    assert int(mask.sum()) == table.count(1_000_000) == 78498
    rng = np.random.default_rng(7)
    for n in rng.integers(2, 1_000_001, size=4000):
        assert is_prime_u64(int(n)) == bool(mask[int(n) - 2])


def test_is_prime_u64_against_reference_on_wide_values():
    rng = np.random.default_rng(11)
    for n in rng.integers(2, 2**48, size=120):
        assert is_prime_u64(int(n)) == oracles.rational_prime(int(n))
    # a few near-boundary 64-bit primes and composites
    assert is_prime_u64(2**61 - 1)  # Mersenne
    assert not is_prime_u64(2**62 - 1)


def test_is_prime_array_rejects_values_beyond_bound():
    table = PrimeTable(1000)
    with pytest.raises(ValueError):
        table.is_prime_array(np.array([5, 2000], dtype=np.int64))


def test_prime_table_class_listing():
    table = PrimeTable(100)
    assert list(table.primes_in_class(4, 3))[:5] == [3, 7, 11, 19, 23]
    assert list(table.primes_in_class(4, 1))[:5] == [5, 13, 17, 29, 37]
    assert list(table.primes_in_class(3, 2))[:5] == [2, 5, 11, 17, 23]


def test_sqrt_minus_one_mod():
    for p in (5, 13, 17, 29, 10006721):
        r = sqrt_minus_one_mod(p)
        assert 0 < r < p
        assert (r * r + 1) % p == 0
