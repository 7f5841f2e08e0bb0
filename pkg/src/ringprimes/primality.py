"""Prime predicates for the four lattices, plus deterministic box enumeration.

The characterisations in use:

* Gaussian a+bi with a, b both nonzero is prime iff a^2 + b^2 is a rational
  prime; an axis point is prime iff |value| is a rational prime = 3 (mod 4).
* Eisenstein a+bw is prime iff its norm is a rational prime, or the point is
  q times a unit for a rational prime q = 2 (mod 3) (norm q^2).
* A quaternion or octonion lattice point is prime iff its norm is a rational
  prime (the norm form represents every rational prime, so there are no
  inert primes to special-case).
"""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import CapacityError
from .rational import PrimeTable, is_prime_u64
from .rings import (
    C8_CODE,
    EisensteinInt,
    GaussianInt,
    OctavianInt,
    QuaternionInt,
    element_type,
)

__all__ = [
    "is_gaussian_prime",
    "is_eisenstein_prime",
    "is_quaternion_prime",
    "is_octavian_prime",
    "is_ring_prime",
    "primes_in_box",
    "even_primes",
]

# Boxes are refused beyond this many candidate points (mostly a guard for the
# eight-dimensional ring, where volumes explode).
MAX_BOX_POINTS = 200_000_000


def _norm_prime(n: int, table: PrimeTable | None) -> bool:
    if table is not None and n <= table.bound:
        return table.is_prime(n)
    return is_prime_u64(n)


def is_gaussian_prime(a: int, b: int, table: PrimeTable | None = None) -> bool:
    if a and b:
        return _norm_prime(a * a + b * b, table)
    m = abs(a or b)
    return m % 4 == 3 and _norm_prime(m, table)


def is_eisenstein_prime(a: int, b: int, table: PrimeTable | None = None) -> bool:
    n = a * a + a * b + b * b
    if _norm_prime(n, table):
        return True
    q = math.isqrt(n)
    if q * q != n or q % 3 != 2 or not _norm_prime(q, table):
        return False
    # exactly the six associates q * unit
    return (a, b) in {(q, 0), (-q, 0), (0, q), (0, -q), (q, -q), (-q, q)}


def is_quaternion_prime(x: QuaternionInt, table: PrimeTable | None = None) -> bool:
    return _norm_prime(x.norm(), table)


def is_octavian_prime(x: OctavianInt, table: PrimeTable | None = None) -> bool:
    return _norm_prime(x.norm(), table)


def is_ring_prime(x, table: PrimeTable | None = None) -> bool:
    """Primality of any ring element (dispatch on its type)."""
    if isinstance(x, GaussianInt):
        return is_gaussian_prime(x.a, x.b, table)
    if isinstance(x, EisensteinInt):
        return is_eisenstein_prime(x.a, x.b, table)
    if isinstance(x, (QuaternionInt, OctavianInt)):
        return _norm_prime(x.norm(), table)
    raise TypeError(f"not a ring element: {x!r}")


def _doubled_ranges(ring: str, bound: int, scope: str):
    """Per-coordinate doubled ranges and parity words for the 4/8-dim rings."""
    width = 4 if ring == "quaternion" else 8
    if scope == "q":
        lo, hi = 1, bound  # doubled units: coordinates in (0, bound/2]
    else:
        lo, hi = -bound, bound
    if ring == "quaternion":
        words = ((0,) * 4, (1,) * 4)
    else:
        words = tuple(sorted(C8_CODE))
    return width, lo, hi, words


def _box_size_guard(ring: str, bound: int, scope: str) -> None:
    dims = {"gaussian": 2, "eisenstein": 2, "quaternion": 4, "octavian": 8}[ring]
    side = bound if scope == "q" else 2 * bound + 1
    if side**dims > MAX_BOX_POINTS:
        raise CapacityError(
            f"{ring} box with bound {bound} has ~{side**dims:.2g} points "
            f"(limit {MAX_BOX_POINTS})"
        )


def primes_in_box(ring: str, bound: int, scope: str = "q", table: PrimeTable | None = None):
    """All ring primes in a coordinate box, in lexicographic coordinate order.

    For the planar rings the box is over integer coordinates: (0, bound] each
    for scope "q", [-bound, bound] for scope "all".  For the quaternion and
    octonion lattices the bound is in *doubled* units, so bound 2 means
    coordinates up to 1.
    """
    if scope not in ("q", "all"):
        raise ValueError("scope must be 'q' or 'all'")
    if bound < 1:
        return []
    _box_size_guard(ring, bound, scope)
    out = []
    if ring in ("gaussian", "eisenstein"):
        pred = is_gaussian_prime if ring == "gaussian" else is_eisenstein_prime
        cls = element_type(ring)
        rng = range(1, bound + 1) if scope == "q" else range(-bound, bound + 1)
        for a in rng:
            for b in rng:
                if pred(a, b, table):
                    out.append(cls(a, b))
        return out
    width, lo, hi, words = _doubled_ranges(ring, bound, scope)
    cls = element_type(ring)
    seen = []
    for word in words:
        axes = []
        for i in range(width):
            start = lo + ((word[i] ^ lo) & 1)
            axes.append(range(start, hi + 1, 2))
        for halves in product(*axes):
            s = sum(v * v for v in halves)
            if s % 4 == 0 and _norm_prime(s // 4, table):
                seen.append(halves)
    return [cls(h) for h in sorted(seen)]


def planar_prime_mask(ring: str, A: np.ndarray, B: np.ndarray, table: PrimeTable) -> np.ndarray:
    """Vectorised primality over coordinate arrays (broadcast together).

    Mirrors :func:`is_gaussian_prime` / :func:`is_eisenstein_prime` exactly,
    including the axis and q-times-unit special cases.
    """
    if ring == "gaussian":
        n = A * A + B * B
        res = (A != 0) & (B != 0) & table.is_prime_array(n)
        axis = (A == 0) ^ (B == 0)
        if axis.any():
            m = np.abs(A + B)
            res = res | (axis & (m % 4 == 3) & table.is_prime_array(m))
        return res
    if ring != "eisenstein":
        raise ValueError("mask is defined for the planar rings")
    n = A * A + A * B + B * B
    res = table.is_prime_array(n)
    # associates of the inert prime 2: (+-q, 0), (0, +-q), (q, -q), (-q, q);
    # their norm q^2 is never prime, so this adds points rather than doubling
    lines = (A == 0) | (B == 0) | (A == -B)
    if lines.any():
        m = np.maximum(np.abs(A), np.abs(B))
        res = res | (lines & ((A != 0) | (B != 0)) & (m % 3 == 2) & table.is_prime_array(m))
    return res


@lru_cache(maxsize=None)
def even_primes(ring: str) -> tuple:
    """The finitely many ring primes of even norm.

    Gaussian: the 4 associates of 1+i (norm 2).  Eisenstein: the 6 associates
    of the inert prime 2 (norm 4).  Quaternion: the 24 points of norm 2.
    Octavian: the 2160 points of norm 2.
    """
    from .census import points_with_norm

    n = 4 if ring == "eisenstein" else 2
    return tuple(x for x in points_with_norm(ring, n) if is_ring_prime(x))
