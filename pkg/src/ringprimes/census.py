"""Lattice censuses: points of a given norm, prime spheres, angles, twin pairs.

The only floating-point values produced by the library come from
``angle_sequence``; every count here is an exact enumeration.
"""
from __future__ import annotations

import math

from .errors import CapacityError
from .rational import PrimeTable, is_prime_u64
from .rings import (
    C8_CODE,
    EisensteinInt,
    GaussianInt,
    OctavianInt,
    QuaternionInt,
)
from .primality import is_gaussian_prime

__all__ = [
    "points_with_norm",
    "count_by_norm",
    "primes_on_sphere",
    "angle_sequence",
    "count_gaussian_twins",
]

MAX_SPHERE_NORM = 2_000_000


def _gaussian_points(n: int):
    s = math.isqrt(n)
    for a in range(-s, s + 1):
        rest = n - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            yield (a, b)
            if b:
                yield (a, -b)


def _eisenstein_points(n: int):
    # a^2 + ab + b^2 = n  <=>  (2a+b)^2 + 3b^2 = 4n
    lim = math.isqrt(4 * n // 3)
    for b in range(-lim, lim + 1):
        rest = 4 * n - 3 * b * b
        if rest < 0:
            continue
        r = math.isqrt(rest)
        if r * r != rest:
            continue
        for t in {r, -r}:
            num = t - b
            if num % 2 == 0:
                yield (num // 2, b)


def _quaternion_points(n: int):
    # doubled coordinates with a consistent parity and square sum 4n
    target = 4 * n
    lim = math.isqrt(target)
    for parity in (0, 1):
        start = -lim + ((lim + parity) & 1)
        axis = range(start, lim + 1, 2)
        for d1 in axis:
            r1 = target - d1 * d1
            if r1 < 0:
                continue
            for d2 in axis:
                r2 = r1 - d2 * d2
                if r2 < 0:
                    continue
                for d3 in axis:
                    r3 = r2 - d3 * d3
                    if r3 < 0:
                        continue
                    d4 = math.isqrt(r3)
                    if d4 * d4 == r3 and (d4 & 1) == parity:
                        yield (d1, d2, d3, d4)
                        if d4:
                            yield (d1, d2, d3, -d4)


def _octavian_points(n: int):
    # depth-first over doubled coordinates, pruned by the remaining square sum;
    # parity vectors are checked against the Hamming code at the leaves.
    target = 4 * n
    lim = math.isqrt(target)
    prefix = [0] * 8
    out = []

    def descend(i: int, remaining: int) -> None:
        if i == 7:
            d = math.isqrt(remaining)
            if d * d == remaining:
                for v in {d, -d}:
                    prefix[7] = v
                    if tuple(x & 1 for x in prefix) in C8_CODE:
                        out.append(tuple(prefix))
            return
        for v in range(-lim, lim + 1):
            sq = v * v
            if sq <= remaining:
                prefix[i] = v
                descend(i + 1, remaining - sq)

    descend(0, target)
    return out


def points_with_norm(ring: str, n: int) -> list:
    """All lattice points of the ring with norm exactly n, sorted lexicographically."""
    if n < 0:
        raise ValueError("norms are non-negative")
    if n > MAX_SPHERE_NORM:
        raise CapacityError(f"norm sphere {n} exceeds enumeration budget {MAX_SPHERE_NORM}")
    if ring == "gaussian":
        return [GaussianInt(a, b) for a, b in sorted(_gaussian_points(n))]
    if ring == "eisenstein":
        return [EisensteinInt(a, b) for a, b in sorted(_eisenstein_points(n))]
    if ring == "quaternion":
        return [QuaternionInt(h) for h in sorted(_quaternion_points(n))]
    if ring == "octavian":
        return [OctavianInt(h) for h in sorted(_octavian_points(n))]
    raise ValueError(f"unknown ring {ring!r}")


def count_by_norm(ring: str, n: int) -> int:
    """Number of lattice points of norm exactly n."""
    return len(points_with_norm(ring, n))


def primes_on_sphere(ring: str, p: int, table: PrimeTable | None = None) -> int:
    """Number of ring primes of norm p, for a rational prime p.

    Since a prime norm forces primality in every one of these rings, this is
    just the sphere count; p is validated to be a rational prime.
    """
    if not is_prime_u64(p):
        raise ValueError(f"{p} is not a rational prime")
    return count_by_norm(ring, p)


def angle_sequence(k: int, table: PrimeTable | None = None) -> list[tuple[GaussianInt, float]]:
    """First k Gaussian primes strictly inside the half-open octant a > b > 0.

    Ordered by ascending norm, ties by ascending real part; paired with the
    angle atan(b/a), which always lies in (0, pi/4).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    found: list[tuple[int, int, int]] = []
    limit = 64
    while True:
        found.clear()
        amax = math.isqrt(limit)
        for a in range(2, amax + 1):
            for b in range(1, a):
                n = a * a + b * b
                if n <= limit and is_gaussian_prime(a, b, table):
                    found.append((n, a, b))
        if len(found) >= k:
            break
        limit *= 2
    found.sort()
    return [(GaussianInt(a, b), math.atan2(b, a)) for _, a, b in found[:k]]


def count_gaussian_twins(radius: int, table: PrimeTable | None = None) -> int:
    """Unordered pairs of Gaussian primes at squared distance 2, norms <= radius^2.

    Distance sqrt(2) is the minimum possible between Gaussian primes off the
    axes, so these are the tightest "twin" configurations: diagonal neighbours.
    """
    r2 = radius * radius
    prime_set = set()
    for a in range(-radius, radius + 1):
        bmax = math.isqrt(max(0, r2 - a * a))
        for b in range(-bmax, bmax + 1):
            if is_gaussian_prime(a, b, table):
                prime_set.add((a, b))
    count = 0
    for a, b in prime_set:
        for db in (1, -1):
            if (a + 1, b + db) in prime_set:
                count += 1
    return count
