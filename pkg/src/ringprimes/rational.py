"""Rational prime infrastructure: sieve table, 64-bit primality, residue-class counts.

Everything here is exact and deterministic.  The sieve is a plain Eratosthenes
over odd numbers (2 is handled specially), and ``is_prime_u64`` is Miller-Rabin
with a fixed witness ladder proven correct for every input below 2**64 -- no
randomness, no probabilistic answers.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import CapacityError

__all__ = [
    "PrimeTable",
    "is_prime_u64",
    "primes_up_to",
    "sqrt_minus_one_mod",
]

# How much working memory a PrimeTable may allocate before refusing (bytes).
DEFAULT_MEMORY_BUDGET = 2 << 30


def _odd_prime_mask(bound: int) -> np.ndarray:
    """Boolean mask over odd numbers: index i represents n = 2i + 3."""
    size = max(0, (bound - 1) // 2)
    mask = np.ones(size, dtype=bool)
    limit = math.isqrt(bound)
    for i in range((limit - 1) // 2):
        if mask[i]:
            n = 2 * i + 3
            start = (n * n - 3) // 2
            mask[start::n] = False
    return mask


class PrimeTable:
    """Primes up to a fixed bound, with residue-class prefix counts.

    Keeps one byte per odd number plus sorted arrays of the primes in each
    residue class mod 4 and mod 3, so membership is O(1) and prefix counts
    are a binary search.  Bounds whose tables would exceed ``memory_budget``
    raise :class:`CapacityError` instead of thrashing.
    """

    def __init__(self, bound: int, memory_budget: int = DEFAULT_MEMORY_BUDGET):
        bound = int(bound)
        if bound < 2:
            raise ValueError("sieve bound must be at least 2")
        # mask bytes + prime array + four class arrays, int64 each
        approx_primes = int(1.3 * bound / max(math.log(bound), 2.0)) + 16
        estimate = bound // 2 + 8 * approx_primes * 3
        if estimate > memory_budget:
            raise CapacityError(
                f"prime table to {bound} needs ~{estimate >> 20} MiB, "
                f"budget is {memory_budget >> 20} MiB"
            )
        self.bound = bound
        self._odd = _odd_prime_mask(bound)
        odd_primes = 2 * np.nonzero(self._odd)[0].astype(np.int64) + 3
        self.primes = np.concatenate([np.array([2], dtype=np.int64), odd_primes])
        self._classes = {
            (4, 1): self.primes[self.primes % 4 == 1],
            (4, 3): self.primes[self.primes % 4 == 3],
            (3, 1): self.primes[self.primes % 3 == 1],
            (3, 2): self.primes[self.primes % 3 == 2],
        }

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"PrimeTable(bound={self.bound}, primes={len(self.primes)})"

    def is_prime(self, n: int) -> bool:
        """Exact primality for 0 <= n <= bound."""
        if n < 2:
            return False
        if n > self.bound:
            raise ValueError(f"{n} exceeds table bound {self.bound}")
        if n % 2 == 0:
            return n == 2
        return bool(self._odd[(n - 3) // 2])

    def is_prime_array(self, values: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`is_prime` over a numpy integer array."""
        v = np.asarray(values, dtype=np.int64)
        if v.size and int(v.max()) > self.bound:
            raise ValueError(f"value {int(v.max())} exceeds table bound {self.bound}")
        out = np.zeros(v.shape, dtype=bool)
        odd = (v & 1).astype(bool) & (v >= 3)
        idx = np.where(odd, (v - 3) >> 1, 0)
        out[odd] = self._odd[idx[odd]]
        out |= v == 2
        return out

    def count(self, x: int) -> int:
        """pi(x): number of primes <= x."""
        return int(np.searchsorted(self.primes, min(x, self.bound), side="right"))

    def count_class(self, x: int, modulus: int, residue: int) -> int:
        """Number of primes p <= x with p = residue (mod modulus), modulus in {3, 4}."""
        if modulus not in (3, 4):
            raise ValueError("only moduli 3 and 4 are tabulated")
        if x > self.bound:
            raise ValueError(f"{x} exceeds table bound {self.bound}")
        r = residue % modulus
        arr = self._classes.get((modulus, r))
        if arr is not None:
            return int(np.searchsorted(arr, x, side="right"))
        # residues hit only by the special primes 2 and 3
        if modulus == 4 and r == 2:
            return 1 if x >= 2 else 0
        if modulus == 3 and r == 0:
            return 1 if x >= 3 else 0
        return 0

    def primes_in_class(self, modulus: int, residue: int) -> np.ndarray:
        """Sorted array of the tabulated primes = residue (mod modulus)."""
        try:
            return self._classes[(modulus, residue % modulus)]
        except KeyError:
            raise ValueError(f"class {residue} mod {modulus} is not tabulated") from None


def primes_up_to(bound: int) -> np.ndarray:
    """Sorted int64 array of all primes <= bound."""
    if bound < 2:
        return np.empty(0, dtype=np.int64)
    return PrimeTable(bound).primes


# Deterministic Miller-Rabin.  Witness ladders and their validity bounds are
# the classical exhaustively-verified ones (Jaeschke; Sorenson & Webster), so
# the answer is exact for every n < 2**64.
_WITNESS_LADDER = (
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (1 << 64, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


def _witness_says_composite(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime_u64(n: int) -> bool:
    """Exact, deterministic primality for 0 <= n < 2**64."""
    if n < 0 or n >= 1 << 64:
        raise ValueError("is_prime_u64 accepts 64-bit unsigned integers only")
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n % p == 0:
            return n == p
    if n < 67 * 67:
        return True
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for cutoff, witnesses in _WITNESS_LADDER:
        if n < cutoff:
            break
    return not any(_witness_says_composite(n, a, d, s) for a in witnesses)


def sqrt_minus_one_mod(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 (mod 4).

    For p = 5 (mod 8) the second supplement makes 2 a non-residue, so one
    modular exponentiation suffices; otherwise the smallest odd non-residue is
    located by Euler's criterion.  The other root is p minus the returned one.
    """
    if p % 4 != 1:
        raise ValueError("p must be a prime congruent to 1 mod 4")
    e = (p - 1) // 4
    if p % 8 == 5:
        return pow(2, e, p)
    d = 3
    while pow(d, (p - 1) // 2, p) != p - 1:
        d += 2
    return pow(d, e, p)
