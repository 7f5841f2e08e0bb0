"""Integer lattices of the four normed division algebras.

Coordinate conventions:

* Gaussian integers a+bi are plain int pairs with norm a^2 + b^2.
* Eisenstein integers are written a+bw in the basis w = (1 + sqrt(-3))/2,
  so norm(a+bw) = a^2 + ab + b^2 and the six units are +-1, +-w, +-(1-w).
  (This is the first-quadrant basis: w has argument 60 degrees.)
* Quaternion and octonion integers are stored as *doubled* coordinates: the
  int tuple d represents the lattice point d/2.  A quaternion point is valid
  when all four doubled coordinates share one parity -- all even gives integer
  entries ("lipschitz"), all odd gives half-odd entries ("hurwitz").  An
  octonion point is valid when its parity vector lies in the 16-word [8,4]
  extended Hamming code spanned by 11111111, 11110000, 11001100, 10101010;
  weight 0 is "gravesian" (all-integer), weight 8 "kleinian" (all half-odd),
  weight 4 "kirmse" (a mixed block of four).

Element syntax accepted by the parsers: "4+13i" / "3-w" for the planar rings,
comma-separated coordinates with halves written like "3/2" for the others,
e.g. "3/2,1/2,1/2,1/2".
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvariantError

__all__ = [
    "RINGS",
    "GaussianInt",
    "EisensteinInt",
    "QuaternionInt",
    "OctavianInt",
    "C8_CODE",
    "units",
    "parse_element",
    "element_type",
]

RINGS = ("gaussian", "eisenstein", "quaternion", "octavian")

# Coordinates are promised to fit a signed 64-bit word so norms and products
# stay exact in downstream numpy kernels; construction rejects anything wider.
_I64_MAX = (1 << 63) - 1


def _check_i64(kind: str, *values: int) -> None:
    for v in values:
        if not isinstance(v, int):
            raise ValueError(f"{kind} coordinates must be integers, got {v!r}")
        if v > _I64_MAX or v < -_I64_MAX:
            raise OverflowError(f"{kind} coordinate {v} does not fit in 64 bits")


@dataclass(frozen=True, order=True)
class GaussianInt:
    a: int = 0
    b: int = 0

    ring = "gaussian"

    def __post_init__(self):
        _check_i64("gaussian", self.a, self.b)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.a, -self.b)

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.a, -self.b)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)

    def in_q(self) -> bool:
        """Strictly inside the open first quadrant (both coordinates positive)."""
        return self.a > 0 and self.b > 0

    def is_even(self) -> bool:
        """Divisible by 1+i, i.e. even norm."""
        return (self.a + self.b) % 2 == 0

    def images(self) -> tuple["GaussianInt", ...]:
        """The eight images under the square-lattice symmetries (D4)."""
        a, b = self.a, self.b
        return tuple(
            GaussianInt(sx * x, sy * y)
            for x, y in ((a, b), (b, a))
            for sx in (1, -1)
            for sy in (1, -1)
        )

    def canonical(self) -> "GaussianInt":
        """The unique D4 image in the closed sector 0 <= arg <= pi/4 (a >= b >= 0)."""
        if self.a == 0 and self.b == 0:
            raise ValueError("zero has no canonical sector representative")
        hits = {g for g in self.images() if g.a >= g.b >= 0}
        if len(hits) != 1:
            raise InvariantError(f"sector representative not unique for {self!r}: {hits}")
        return hits.pop()

    def __str__(self) -> str:
        return _format_planar(self.a, self.b, "i")


@dataclass(frozen=True, order=True)
class EisensteinInt:
    a: int = 0
    b: int = 0

    ring = "eisenstein"

    def __post_init__(self):
        _check_i64("eisenstein", self.a, self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def conj(self) -> "EisensteinInt":
        # conj(w) = 1 - w
        return EisensteinInt(self.a + self.b, -self.b)

    def __add__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "EisensteinInt":
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other: "EisensteinInt") -> "EisensteinInt":
        # w^2 = w - 1
        return EisensteinInt(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a + self.b * other.b,
        )

    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)

    def in_q(self) -> bool:
        return self.a > 0 and self.b > 0

    def images(self) -> tuple["EisensteinInt", ...]:
        """The twelve images under the hexagonal-lattice symmetries (D6)."""
        out = []
        for z in (self, self.conj()):
            for _ in range(6):
                out.append(z)
                z = EisensteinInt(-z.b, z.a + z.b)  # multiply by w: 60-degree turn
        return tuple(out)

    def canonical(self) -> "EisensteinInt":
        """The unique D6 image in the closed sector 0 <= arg <= pi/6.

        In the a+bw basis that sector is exactly {a >= b >= 0}.
        """
        if self.a == 0 and self.b == 0:
            raise ValueError("zero has no canonical sector representative")
        hits = {z for z in self.images() if z.a >= z.b >= 0}
        if len(hits) != 1:
            raise InvariantError(f"sector representative not unique for {self!r}: {hits}")
        return hits.pop()

    def __str__(self) -> str:
        return _format_planar(self.a, self.b, "w")


def _normalize_halves(obj, width: int, kind: str) -> None:
    halves = tuple(obj.halves)
    if len(halves) != width or not all(isinstance(v, int) for v in halves):
        raise ValueError(f"{kind} point needs {width} integer doubled coordinates")
    _check_i64(kind, *halves)
    object.__setattr__(obj, "halves", halves)


@dataclass(frozen=True, order=True)
class QuaternionInt:
    """A Hurwitz-ring quaternion stored as doubled coordinates (the point halves/2)."""

    halves: tuple[int, int, int, int]

    ring = "quaternion"

    def __post_init__(self):
        _normalize_halves(self, 4, "quaternion")
        if len({v & 1 for v in self.halves}) != 1:
            raise ValueError(
                f"not a lattice point: {self.halves} mixes integer and half-odd coordinates"
            )

    @classmethod
    def from_coords(cls, values) -> "QuaternionInt":
        return cls(tuple(_doubled(v) for v in values))

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.halves)

    def norm(self) -> int:
        s = sum(v * v for v in self.halves)
        if s % 4:
            raise InvariantError(f"norm of {self.halves} is not an integer")
        return s // 4

    def conj(self) -> "QuaternionInt":
        h = self.halves
        return QuaternionInt((h[0], -h[1], -h[2], -h[3]))

    def __add__(self, other: "QuaternionInt") -> "QuaternionInt":
        return QuaternionInt(tuple(x + y for x, y in zip(self.halves, other.halves)))

    def __sub__(self, other: "QuaternionInt") -> "QuaternionInt":
        return QuaternionInt(tuple(x - y for x, y in zip(self.halves, other.halves)))

    def __neg__(self) -> "QuaternionInt":
        return QuaternionInt(tuple(-x for x in self.halves))

    def __mul__(self, other: "QuaternionInt") -> "QuaternionInt":
        a1, b1, c1, d1 = self.halves
        a2, b2, c2, d2 = other.halves
        # Hamilton product of the doubled vectors, halved again; every
        # component sum below is even because each factor has consistent parity.
        return QuaternionInt(
            (
                (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2) // 2,
                (a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2) // 2,
                (a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2) // 2,
                (a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2) // 2,
            )
        )

    def in_q(self) -> bool:
        return all(v > 0 for v in self.halves)

    def is_lipschitz(self) -> bool:
        return self.halves[0] % 2 == 0

    def parity_class(self) -> str:
        return "lipschitz" if self.is_lipschitz() else "hurwitz"

    def __str__(self) -> str:
        return ",".join(_format_half(v) for v in self.halves)


def _c8_span() -> frozenset:
    generators = (
        (1, 1, 1, 1, 1, 1, 1, 1),
        (1, 1, 1, 1, 0, 0, 0, 0),
        (1, 1, 0, 0, 1, 1, 0, 0),
        (1, 0, 1, 0, 1, 0, 1, 0),
    )
    words = {(0,) * 8}
    for g in generators:
        words |= {tuple(w[i] ^ g[i] for i in range(8)) for w in words}
    return frozenset(words)


#: The sixteen parity vectors of valid octonion lattice points.
C8_CODE = _c8_span()

_OCTAVIAN_CLASS = {0: "gravesian", 4: "kirmse", 8: "kleinian"}


@dataclass(frozen=True, order=True)
class OctavianInt:
    """An octonion lattice point stored as doubled coordinates (the point halves/2)."""

    halves: tuple[int, int, int, int, int, int, int, int]

    ring = "octavian"

    def __post_init__(self):
        _normalize_halves(self, 8, "octonion")
        if self.parity_vector() not in C8_CODE:
            raise ValueError(
                f"not a lattice point: parity vector of {self.halves} "
                "is outside the length-8 Hamming code"
            )

    @classmethod
    def from_coords(cls, values) -> "OctavianInt":
        return cls(tuple(_doubled(v) for v in values))

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.halves)

    def parity_vector(self) -> tuple[int, ...]:
        return tuple(v & 1 for v in self.halves)

    def parity_class(self) -> str:
        return _OCTAVIAN_CLASS[sum(self.parity_vector())]

    def norm(self) -> int:
        s = sum(v * v for v in self.halves)
        if s % 4:
            raise InvariantError(f"norm of {self.halves} is not an integer")
        return s // 4

    def __add__(self, other: "OctavianInt") -> "OctavianInt":
        return OctavianInt(tuple(x + y for x, y in zip(self.halves, other.halves)))

    def __sub__(self, other: "OctavianInt") -> "OctavianInt":
        return OctavianInt(tuple(x - y for x, y in zip(self.halves, other.halves)))

    def __neg__(self) -> "OctavianInt":
        return OctavianInt(tuple(-x for x in self.halves))

    def in_q(self) -> bool:
        return all(v > 0 for v in self.halves)

    def __str__(self) -> str:
        return ",".join(_format_half(v) for v in self.halves)


def _doubled(value) -> int:
    f = Fraction(value)
    if f.denominator not in (1, 2):
        raise ValueError(f"coordinate {value} is not an integer or half-integer")
    return int(f * 2)


def _format_half(doubled: int) -> str:
    return str(doubled // 2) if doubled % 2 == 0 else f"{doubled}/2"


def _format_planar(a: int, b: int, unit: str) -> str:
    if b == 0:
        return str(a)
    if b == 1:
        imag = unit
    elif b == -1:
        imag = f"-{unit}"
    else:
        imag = f"{b}{unit}"
    if a == 0:
        return imag
    sign = "+" if b > 0 else ""
    return f"{a}{sign}{imag}"


_PLANAR_BOTH = re.compile(r"^([+-]?\d+)([+-]\d*)([iw])$")
_PLANAR_IMAG = re.compile(r"^([+-]?\d*)([iw])$")
_PLANAR_REAL = re.compile(r"^([+-]?\d+)$")


def _parse_planar(text: str) -> tuple[int, int, str | None]:
    s = re.sub(r"\s+", "", text)
    m = _PLANAR_BOTH.match(s)
    if m:
        coeff = m.group(2)
        if coeff in ("+", "-"):
            coeff += "1"
        return int(m.group(1)), int(coeff), m.group(3)
    m = _PLANAR_IMAG.match(s)
    if m:
        coeff = m.group(1)
        if coeff in ("", "+"):
            coeff = "1"
        elif coeff == "-":
            coeff = "-1"
        return 0, int(coeff), m.group(2)
    m = _PLANAR_REAL.match(s)
    if m:
        return int(m.group(1)), 0, None
    raise ValueError(f"cannot parse element {text!r}")


_ELEMENT_TYPES = {
    "gaussian": GaussianInt,
    "eisenstein": EisensteinInt,
    "quaternion": QuaternionInt,
    "octavian": OctavianInt,
}


def element_type(ring: str):
    try:
        return _ELEMENT_TYPES[ring]
    except KeyError:
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}") from None


def parse_element(ring: str, text: str):
    """Parse the textual element syntax for the given ring (round-trips str())."""
    cls = element_type(ring)
    if ring in ("gaussian", "eisenstein"):
        a, b, unit = _parse_planar(text)
        expected = "i" if ring == "gaussian" else "w"
        if unit is not None and unit != expected:
            raise ValueError(f"element {text!r} uses {unit!r}; {ring} uses {expected!r}")
        return cls(a, b)
    parts = [p.strip() for p in text.split(",")]
    return cls.from_coords(parts)


@lru_cache(maxsize=None)
def units(ring: str) -> tuple:
    """All elements of norm 1, in lexicographic coordinate order.

    Gaussian: 4.  Eisenstein: 6.  Quaternion: 24 (the 24-cell).  Octavian: 240
    (the E8 root figure scaled to norm 1).
    """
    from .census import points_with_norm  # deferred: census builds on rings

    return tuple(points_with_norm(ring, 1))
