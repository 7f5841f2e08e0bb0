"""Two- and three-prime decomposition counting and exception scans.

Counting convention: representations are *ordered* tuples of primes, so a
target with one unordered decomposition {p, q}, p != q, has count 2.  Per-
position class filters follow the same convention: classes ("hurwitz",
"lipschitz") counts the pairs whose first member is half-odd and whose second
is integral.

Scopes: "q" restricts summands to strictly positive coordinates, which makes
the search box finite and every answer exact.  "full" admits the whole
lattice; a full-scope answer is exact when parity pins one summand into the
finite even-norm prime set (Gaussian targets of odd norm), and otherwise
enumerates a stated search box, reporting the limitation through
``RepReport.exhausted``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from fractions import Fraction
from itertools import product

import numpy as np

from .checkpoint import load_checkpoint, save_checkpoint
from .errors import CapacityError, CheckpointError
from .rational import PrimeTable, is_prime_u64
from .rings import (
    C8_CODE,
    EisensteinInt,
    GaussianInt,
    OctavianInt,
    QuaternionInt,
    element_type,
)
from .primality import (
    even_primes,
    is_eisenstein_prime,
    is_gaussian_prime,
    is_ring_prime,
    planar_prime_mask as _planar_prime_mask,
)

__all__ = [
    "RepQuery",
    "RepReport",
    "ScanTemplate",
    "ScanRecord",
    "count_reps",
    "scan_exceptions",
    "comet_row",
    "holben_jordan_scan",
    "signed_prime_exceptions",
    "landau_boundary_decompose",
    "landau_witnesses",
    "bunyakovsky_boundary_decompose",
    "bunyakovsky_witnesses",
]

MAX_GRID_CELLS = 300_000_000

_SUMMAND_CLASSES = {
    "gaussian": ("any",),
    "eisenstein": ("any",),
    "quaternion": ("any", "lipschitz", "hurwitz"),
    "octavian": ("any", "gravesian", "kleinian", "kirmse"),
}


@dataclass(frozen=True)
class RepQuery:
    """A single decomposition-counting question about one target element."""

    target: object
    summands: int = 2
    scope: str = "q"
    classes: tuple[str, ...] | None = None
    angle_cap: str | None = None  # None | "pi4" | "pi6" (Gaussian only)
    search_margin: int | None = None  # full-scope box override, in coordinate units

    @property
    def ring(self) -> str:
        return self.target.ring

    def normalized_classes(self) -> tuple[str, ...]:
        classes = self.classes or ("any",) * self.summands
        if len(classes) != self.summands:
            raise ValueError("need one class filter per summand")
        allowed = _SUMMAND_CLASSES[self.ring]
        for c in classes:
            if c not in allowed:
                raise ValueError(f"class {c!r} is not valid for {self.ring} (use {allowed})")
        return tuple(classes)

    def validate(self) -> None:
        if self.scope not in ("q", "full"):
            raise ValueError("scope must be 'q' or 'full'")
        if self.summands not in (2, 3):
            raise ValueError("only 2- and 3-summand queries are supported")
        if self.angle_cap is not None:
            if self.angle_cap not in ("pi4", "pi6"):
                raise ValueError("angle cap must be 'pi4' or 'pi6'")
            if self.ring != "gaussian" or self.summands != 2:
                raise ValueError("angle caps apply to Gaussian two-summand queries only")
        self.normalized_classes()


@dataclass(frozen=True)
class RepReport:
    """Result of one counting query: the ordered count plus a witness."""

    query: RepQuery
    count: int
    witness: tuple | None
    exhausted: bool


def _angle_ok(na: int, nb: int, nn: int, pa: int, pb: int, cap: str) -> bool:
    dot = na * pa + nb * pb
    if dot < 0:
        return False
    pn = pa * pa + pb * pb
    if cap == "pi4":
        return 2 * dot * dot >= nn * pn
    return 4 * dot * dot >= 3 * nn * pn


def _planar_prime(ring: str, a: int, b: int, table) -> bool:
    if ring == "gaussian":
        return is_gaussian_prime(a, b, table)
    return is_eisenstein_prime(a, b, table)


def _planar_pair_q(ring, A, B, table, want_count):
    count = 0
    witness = None
    cls = element_type(ring)
    for x in range(1, A):
        for y in range(1, B):
            if _planar_prime(ring, x, y, table) and _planar_prime(ring, A - x, B - y, table):
                count += 1
                if witness is None:
                    witness = (cls(x, y), cls(A - x, B - y))
                if not want_count:
                    return count, witness
    return count, witness


def _planar_pair_full(ring, A, B, table, box, want_count):
    # both summands are required to lie in the box, so the count equals the
    # pair count of the box-restricted prime set (same convention as the
    # region-scan kernel)
    count = 0
    witness = None
    cls = element_type(ring)
    for x in range(max(-box, A - box), min(box, A + box) + 1):
        for y in range(max(-box, B - box), min(box, B + box) + 1):
            if _planar_prime(ring, x, y, table) and _planar_prime(ring, A - x, B - y, table):
                count += 1
                if witness is None:
                    witness = (cls(x, y), cls(A - x, B - y))
                if not want_count:
                    return count, witness
    return count, witness


def _gaussian_odd_full(A, B, table):
    """Exact full-plane pair count for odd-norm Gaussian targets.

    Odd + odd is even in Z[i]/(1+i), so every decomposition of an odd-norm
    target uses exactly one of the four even primes; both orders are counted.
    """
    count = 0
    witness = None
    for e in even_primes("gaussian"):
        qa, qb = A - e.a, B - e.b
        if is_gaussian_prime(qa, qb, table):
            count += 2
            if witness is None:
                witness = (e, GaussianInt(qa, qb))
    return count, witness


def _angle_pair(A, B, scope, cap, table, want_count):
    nn = A * A + B * B
    if cap == "pi4":
        radius_sq = 2 * nn
    else:
        radius_sq = (4 * nn) // 3
    s = math.isqrt(radius_sq)
    count = 0
    witness = None
    for x in range(-s, s + 1):
        for y in range(-s, s + 1):
            if scope == "q" and (x <= 0 or y <= 0):
                continue
            if not _angle_ok(A, B, nn, x, y, cap):
                continue
            qa, qb = A - x, B - y
            if scope == "q" and (qa <= 0 or qb <= 0):
                continue
            if not _angle_ok(A, B, nn, qa, qb, cap):
                continue
            if is_gaussian_prime(x, y, table) and is_gaussian_prime(qa, qb, table):
                count += 1
                if witness is None:
                    witness = (GaussianInt(x, y), GaussianInt(qa, qb))
                if not want_count:
                    return count, witness
    return count, witness


def _parities_for(ring: str, cls_filter: str):
    if ring == "quaternion":
        if cls_filter == "any":
            return ((0,) * 4, (1,) * 4)
        return ((0,) * 4,) if cls_filter == "lipschitz" else ((1,) * 4,)
    if cls_filter == "any":
        return tuple(sorted(C8_CODE))
    if cls_filter == "gravesian":
        return ((0,) * 8,)
    if cls_filter == "kleinian":
        return ((1,) * 8,)
    return tuple(sorted(w for w in C8_CODE if sum(w) == 4))


def _word_matches(word: tuple, cls_filter: str) -> bool:
    if cls_filter == "any":
        return True
    w = sum(word)
    if cls_filter in ("lipschitz", "gravesian"):
        return w == 0
    if cls_filter in ("hurwitz", "kleinian"):
        return w == len(word)
    return w == 4  # kirmse


def _norm_prime_doubled(halves, table) -> bool:
    s = 0
    for v in halves:
        s += v * v
    if s % 4:
        return False
    n = s // 4
    if table is not None and n <= table.bound:
        return table.is_prime(n)
    return is_prime_u64(n)


def _doubled_pair(ring, Z, c1, c2, table, want_count, scope, box):
    """Ordered pair count for the 4- and 8-dimensional rings (doubled coords)."""
    width = len(Z)
    cls = element_type(ring)
    zword = tuple(v & 1 for v in Z)
    count = 0
    witness = None
    for word in _parities_for(ring, c1):
        qword = tuple(a ^ b for a, b in zip(zword, word))
        if not _word_matches(qword, c2):
            continue
        if ring == "octavian" and qword not in C8_CODE:
            continue
        axes = []
        for i in range(width):
            if scope == "q":
                lo_i, hi_i = 1, Z[i] - 1
            else:
                lo_i, hi_i = -box, box
            start = lo_i + ((word[i] ^ lo_i) & 1)
            axes.append(range(start, hi_i + 1, 2))
        if any(len(r) == 0 for r in axes):
            continue
        for halves in product(*axes):
            if not _norm_prime_doubled(halves, table):
                continue
            q = tuple(z - d for z, d in zip(Z, halves))
            if scope != "q" and any(abs(v) > box for v in q):
                continue  # keep both summands inside the search box
            if not _norm_prime_doubled(q, table):
                continue
            count += 1
            if witness is None:
                witness = (cls(halves), cls(q))
            if not want_count:
                return count, witness
    return count, witness


def _pair_report(query: RepQuery, table, want_count=True) -> tuple[int, tuple | None, bool]:
    ring = query.ring
    z = query.target
    c1, c2 = query.normalized_classes()
    if query.angle_cap is not None:
        count, wit = _angle_pair(z.a, z.b, query.scope, query.angle_cap, table, want_count)
        return count, wit, True
    if ring in ("gaussian", "eisenstein"):
        if query.scope == "q":
            count, wit = _planar_pair_q(ring, z.a, z.b, table, want_count)
            return count, wit, True
        if ring == "gaussian" and z.norm() % 2 == 1:
            count, wit = _gaussian_odd_full(z.a, z.b, table)
            return count, wit, True
        box = _full_box(max(abs(z.a), abs(z.b)), query.search_margin)
        count, wit = _planar_pair_full(ring, z.a, z.b, table, box, want_count)
        return count, wit, False
    Z = z.halves
    if query.scope == "q":
        count, wit = _doubled_pair(ring, Z, c1, c2, table, want_count, "q", 0)
        return count, wit, True
    box = 2 * max(abs(v) for v in Z) + 4 if query.search_margin is None else (
        max(abs(v) for v in Z) + 2 * query.search_margin
    )
    count, wit = _doubled_pair(ring, Z, c1, c2, table, want_count, "full", box)
    return count, wit, False


def _full_box(radius: int, margin: int | None) -> int:
    # Default covers twice the target radius: large enough that every angle
    # cone and every small-norm witness lives inside it.
    if margin is None:
        return 2 * max(radius, 1) + 2
    return max(radius, 1) + margin


def _triple_report(query: RepQuery, table, want_count=True):
    ring = query.ring
    z = query.target
    classes = query.normalized_classes()
    total = 0
    witness = None
    exhausted = True
    if ring in ("gaussian", "eisenstein"):
        cls = element_type(ring)
        if query.scope == "q":
            xr = range(1, z.a)
            yr = range(1, z.b)
        else:
            box = _full_box(max(abs(z.a), abs(z.b)), query.search_margin)
            xr = yr = range(-box, box + 1)
            exhausted = False
        for x in xr:
            for y in yr:
                if not _planar_prime(ring, x, y, table):
                    continue
                rest = cls(z.a - x, z.b - y)
                sub = replace(
                    query, target=rest, summands=2, classes=classes[1:], search_margin=None
                )
                cnt, wit, exh = _pair_report(sub, table, want_count)
                exhausted = exhausted and exh
                if cnt and witness is None and wit is not None:
                    witness = (cls(x, y), *wit)
                total += cnt
                if total and not want_count:
                    return total, witness, exhausted
        return total, witness, exhausted
    # doubled rings: first summand by parity word, then a two-summand query
    Z = z.halves
    cls = element_type(ring)
    if query.scope != "q":
        raise ValueError("three-summand queries on this ring support scope 'q' only")
    for word in _parities_for(ring, classes[0]):
        axes = []
        for i in range(len(Z)):
            start = 1 + ((word[i] ^ 1) & 1)
            axes.append(range(start, Z[i] - 1, 2))
        if any(len(r) == 0 for r in axes):
            continue
        for halves in product(*axes):
            if not _norm_prime_doubled(halves, table):
                continue
            rest = cls(tuple(zz - d for zz, d in zip(Z, halves)))
            sub = replace(query, target=rest, summands=2, classes=classes[1:])
            cnt, wit, _ = _pair_report(sub, table, want_count)
            if cnt and witness is None and wit is not None:
                witness = (cls(halves), *wit)
            total += cnt
            if total and not want_count:
                return total, witness, True
    return total, witness, True


def count_reps(query: RepQuery, table: PrimeTable | None = None) -> RepReport:
    """Count ordered prime decompositions of the query's target."""
    query.validate()
    if query.summands == 2:
        count, witness, exhausted = _pair_report(query, table)
    else:
        count, witness, exhausted = _triple_report(query, table)
    return RepReport(query=query, count=count, witness=witness, exhausted=exhausted)


# --------------------------------------------------------------------------
# Vectorised planar kernels used by the region scans.


class _PlanarQKernel:
    """First-quadrant prime grid with sliced pair counting."""

    def __init__(self, ring: str, hi: int, table: PrimeTable | None = None):
        w = max(hi - 1, 1)
        if w * w > MAX_GRID_CELLS:
            raise CapacityError(f"scan grid {w}x{w} exceeds cell budget")
        bound = 3 * hi * hi + 4
        self.table = table if table is not None and table.bound >= bound else PrimeTable(bound)
        axis = np.arange(1, w + 1, dtype=np.int64)
        self.grid = _planar_prime_mask(ring, axis[:, None], axis[None, :], self.table)

    def pair_count(self, a: int, b: int) -> int:
        if a < 2 or b < 2:
            return 0
        p = self.grid[: a - 1, : b - 1]
        q = self.grid[a - 2 :: -1, b - 2 :: -1]
        return int(np.count_nonzero(p & q))


class _PlanarFullKernel:
    """Whole-plane prime grid over [-box, box]^2 with sliced pair counting."""

    def __init__(self, ring: str, radius: int, table: PrimeTable | None = None):
        box = 2 * max(radius, 1) + 2
        side = 2 * box + 1
        if side * side > MAX_GRID_CELLS:
            raise CapacityError(f"scan grid {side}x{side} exceeds cell budget")
        bound = 3 * box * box + 4
        self.table = table if table is not None and table.bound >= bound else PrimeTable(bound)
        self.box = box
        axis = np.arange(-box, box + 1, dtype=np.int64)
        self.grid = _planar_prime_mask(ring, axis[:, None], axis[None, :], self.table)
        self.flipped = self.grid[::-1, ::-1]

    def pair_count(self, a: int, b: int) -> int:
        box = self.box
        x0, x1 = max(-box, a - box), min(box, a + box)
        y0, y1 = max(-box, b - box), min(box, b + box)
        if x0 > x1 or y0 > y1:
            return 0
        p = self.grid[x0 + box : x1 + box + 1, y0 + box : y1 + box + 1]
        q = self.flipped[box - a + x0 : box - a + x1 + 1, box - b + y0 : box - b + y1 + 1]
        return int(np.count_nonzero(p & q))


def comet_row(
    ring: str,
    row: int,
    amax: int,
    table: PrimeTable | None = None,
    target_filter: str = "auto",
) -> list[tuple[int, int]]:
    """Ordered pair counts for targets a + row*unit, a = 2..amax, scope Q.

    Targets with a coordinate below 2 are skipped: two strictly-positive
    summands need at least 2 in every coordinate, so their count is 0 by
    definition rather than by computation.  For Gaussian rows the default
    filter keeps only even targets (a + row even), since evenness is
    necessary for a two-prime decomposition apart from finitely many odd
    cases; Eisenstein rows have no such obstruction and keep every target.
    """
    if ring not in ("gaussian", "eisenstein"):
        raise ValueError("comet rows are defined for the planar rings")
    if target_filter not in ("auto", "all", "even"):
        raise ValueError("target filter must be 'auto', 'all', or 'even'")
    if target_filter == "auto":
        target_filter = "even" if ring == "gaussian" else "all"
    kernel = _PlanarQKernel(ring, max(amax, row), table)
    return [
        (a, kernel.pair_count(a, row))
        for a in range(2, amax + 1)
        if target_filter == "all" or (a + row) % 2 == 0
    ]


def holben_jordan_scan(
    cap: str, max_norm: int, table: PrimeTable | None = None
) -> list[GaussianInt]:
    """Even Gaussian targets with no angle-capped two-prime decomposition.

    Scans every even Gaussian integer with min_norm < N(z) <= max_norm, where
    min_norm is 2 for cap pi/4 and 10 for cap pi/6 (below those bounds the
    statement is false for trivial reasons).  The angle comparisons are exact
    integer arithmetic; the returned list is in lexicographic order.
    """
    if cap not in ("pi4", "pi6"):
        raise ValueError("cap must be 'pi4' or 'pi6'")
    min_norm = 2 if cap == "pi4" else 10
    w = math.isqrt(2 * max_norm) + 1
    side = 2 * w + 1
    if side * side > MAX_GRID_CELLS:
        raise CapacityError("angle scan grid exceeds cell budget")
    bound = 2 * w * w + 4
    if table is None or table.bound < bound:
        table = PrimeTable(bound)
    axis = np.arange(-w, w + 1, dtype=np.int64)
    grid = _planar_prime_mask("gaussian", axis[:, None], axis[None, :], table)
    flipped = grid[::-1, ::-1]
    exceptions = []
    smax = math.isqrt(max_norm)
    for a in range(-smax, smax + 1):
        for b in range(-smax, smax + 1):
            nn = a * a + b * b
            if nn <= min_norm or nn > max_norm or (a + b) % 2:
                continue
            x0, x1 = max(-w, a - w), min(w, a + w)
            y0, y1 = max(-w, b - w), min(w, b + w)
            ix = np.arange(x0, x1 + 1, dtype=np.int64)
            iy = np.arange(y0, y1 + 1, dtype=np.int64)
            dot = a * ix[:, None] + b * iy[None, :]
            pn = ix[:, None] ** 2 + iy[None, :] ** 2
            qx = a - ix
            qy = b - iy
            qdot = nn - dot
            qn = qx[:, None] ** 2 + qy[None, :] ** 2
            if cap == "pi4":
                ang = (2 * dot * dot >= nn * pn) & (2 * qdot * qdot >= nn * qn)
            else:
                ang = (4 * dot * dot >= 3 * nn * pn) & (4 * qdot * qdot >= 3 * nn * qn)
            ok = (
                ang
                & (dot >= 0)
                & (qdot >= 0)
                & grid[x0 + w : x1 + w + 1, y0 + w : y1 + w + 1]
                & flipped[w - a + x0 : w - a + x1 + 1, w - b + y0 : w - b + y1 + 1]
            )
            if not ok.any():
                exceptions.append(GaussianInt(a, b))
    return exceptions


# --------------------------------------------------------------------------
# Region scans with row partitioning, worker pools, and checkpointing.


@dataclass(frozen=True)
class ScanTemplate:
    """What question to ask of every target in a scan region."""

    scope: str = "q"
    summands: int = 2
    classes: tuple[str, ...] | None = None
    angle_cap: str | None = None
    target_filter: str = "all"  # "all" | "even" (Gaussian targets only)
    target_class: str = "all"  # target lattice class for the doubled rings


@dataclass
class ScanRecord:
    """Outcome of scanning a region: the region, the question, the exceptions."""

    ring: str
    lo: Fraction
    hi: Fraction
    template: ScanTemplate
    exceptions: list
    targets_scanned: int
    rows_total: int
    rows_done: int
    counts: dict | None = None

    @property
    def complete(self) -> bool:
        return self.rows_done == self.rows_total


def _template_key(ring, lo, hi, template: ScanTemplate) -> str:
    return (
        f"ring={ring} lo={lo} hi={hi} scope={template.scope} "
        f"summands={template.summands} classes={','.join(template.classes or ('any',) * template.summands)} "
        f"angle={template.angle_cap or 'none'} filter={template.target_filter} "
        f"targets={template.target_class}"
    )


def _scan_rows(ring: str, lo: Fraction, hi: Fraction, template: ScanTemplate) -> list[int]:
    """Row keys: integer coordinates for planar rings, doubled first coords otherwise."""
    if ring in ("gaussian", "eisenstein"):
        if lo.denominator != 1 or hi.denominator != 1:
            raise ValueError("planar scan bounds must be integers")
        return list(range(int(lo), int(hi) + 1))
    dlo, dhi = 2 * lo, 2 * hi
    if dlo.denominator != 1 or dhi.denominator != 1:
        raise ValueError("bounds must be integers or half-integers")
    dlo, dhi = int(dlo), int(dhi)
    cls = template.target_class
    if ring == "quaternion":
        if cls == "lipschitz":
            parities = (0,)
        elif cls == "hurwitz":
            parities = (1,)
        elif cls == "all":
            parities = (0, 1)
        else:
            raise ValueError(f"unknown quaternion target class {cls!r}")
    else:
        valid = ("gravesian", "kleinian", "kirmse", "all")
        if cls not in valid:
            raise ValueError(f"unknown octavian target class {cls!r}")
        parities = (0, 1)
    return [d for d in range(dlo, dhi + 1) if (d & 1) in parities]


def _target_words(ring: str, target_class: str, first_parity: int):
    """Parity words for scan targets compatible with the row's first coordinate."""
    words = _parities_for(ring, "any" if target_class == "all" else target_class)
    return [w for w in words if w[0] == first_parity]


def _scan_table_bound(ring: str, template: ScanTemplate, params: dict) -> int:
    """The sieve bound a scan needs; recorded in checkpoints for auditability."""
    if ring in ("gaussian", "eisenstein"):
        hi = params["hi_int"]
        radius = max(abs(params["lo_int"]), abs(hi))
        if template.summands == 2 and template.angle_cap is None:
            if template.scope == "q":
                return 3 * hi * hi + 4
            return 3 * (2 * max(radius, 1) + 2) ** 2 + 4
        return 3 * (2 * radius + 3) ** 2 + 4
    dhi = params["dhi"]
    return max(2 * dhi * dhi + 4, 64)


def _build_scan_state(params: dict) -> dict:
    ring = params["ring"]
    template: ScanTemplate = params["template"]
    state = {"params": params}
    table = PrimeTable(params["table_bound"])
    if ring in ("gaussian", "eisenstein"):
        hi = params["hi_int"]
        if template.summands == 2 and template.angle_cap is None:
            if template.scope == "q":
                state["kernel"] = _PlanarQKernel(ring, hi, table)
            else:
                state["kernel"] = _PlanarFullKernel(
                    ring, max(abs(params["lo_int"]), abs(hi)), table
                )
        else:
            # shared table for the per-target loop fallback and ternary scans
            state["table"] = table
            if template.summands == 3 and template.scope == "q":
                state["kernel3"] = _PlanarQKernel(ring, hi, table)
                state["q_primes"] = [
                    (x, y)
                    for x in range(1, hi)
                    for y in range(1, hi)
                    if _planar_prime(ring, x, y, table)
                ]
    else:
        state["table"] = table
    return state


_WORKER: dict | None = None


def _scan_worker_init(params: dict) -> None:
    global _WORKER
    _WORKER = _build_scan_state(params)


def _planar_row_scan(state: dict, row: int):
    params = state["params"]
    ring = params["ring"]
    template: ScanTemplate = params["template"]
    lo, hi = params["lo_int"], params["hi_int"]
    exceptions = []
    counts = [] if params["collect_counts"] else None
    scanned = 0
    kernel = state.get("kernel")
    cls = element_type(ring)
    for b in range(lo, hi + 1):
        if template.target_filter == "even" and (row + b) % 2:
            continue
        scanned += 1
        if kernel is not None:
            c = kernel.pair_count(row, b)
        elif "kernel3" in state:
            c = _ternary_exists(state, row, b)
        else:
            query = RepQuery(
                target=cls(row, b),
                summands=template.summands,
                scope=template.scope,
                classes=template.classes,
                angle_cap=template.angle_cap,
            )
            c, _, _ = (
                _pair_report(query, state["table"], want_count=False)
                if template.summands == 2
                else _triple_report(query, state["table"], want_count=False)
            )
        if counts is not None:
            counts.append((b, c))
        if c == 0:
            exceptions.append((row, b))
    return row, exceptions, scanned, counts


def _ternary_exists(state: dict, a: int, b: int) -> int:
    kernel = state["kernel3"]
    for x, y in state["q_primes"]:
        if x < a and y < b and kernel.pair_count(a - x, b - y):
            return 1
    return 0


def _doubled_row_scan(state: dict, row: int):
    params = state["params"]
    ring = params["ring"]
    template: ScanTemplate = params["template"]
    dlo, dhi = params["dlo"], params["dhi"]
    table = state["table"]
    cls = element_type(ring)
    width = 4 if ring == "quaternion" else 8
    c1, c2 = (template.classes or ("any", "any"))[:2]
    exceptions = []
    scanned = 0
    for word in _target_words(ring, template.target_class, row & 1):
        axes = []
        for i in range(1, width):
            start = dlo + ((word[i] ^ dlo) & 1)
            axes.append(range(start, dhi + 1, 2))
        for rest in product(*axes):
            Z = (row, *rest)
            if ring == "octavian" and tuple(v & 1 for v in Z) not in C8_CODE:
                continue
            scanned += 1
            if template.summands == 2:
                cnt, _ = _doubled_pair(ring, Z, c1, c2, table, False, template.scope, 0)
            else:
                query = RepQuery(
                    target=cls(Z),
                    summands=template.summands,
                    scope=template.scope,
                    classes=template.classes,
                )
                cnt, _, _ = _triple_report(query, table, want_count=False)
            if cnt == 0:
                exceptions.append(Z)
    exceptions.sort()  # words interleave coordinate parities; restore lexicographic order
    return row, exceptions, scanned, None


def _scan_worker_row(row: int):
    params = _WORKER["params"]
    if params["ring"] in ("gaussian", "eisenstein"):
        return _planar_row_scan(_WORKER, row)
    return _doubled_row_scan(_WORKER, row)


def _coords_to_element(ring: str, coords):
    cls = element_type(ring)
    if ring in ("gaussian", "eisenstein"):
        return cls(*coords)
    return cls(tuple(coords))


def scan_exceptions(
    ring: str,
    lo,
    hi,
    template: ScanTemplate = ScanTemplate(),
    *,
    workers: int = 1,
    checkpoint_path=None,
    rows_per_run: int | None = None,
    collect_counts: bool = False,
) -> ScanRecord:
    """Scan every target in the region and report those with no decomposition.

    The region is split into rows along the first coordinate; rows are always
    merged in ascending order, so the result is independent of the worker
    count.  With ``checkpoint_path`` the scan records each completed row and
    can resume after interruption; ``rows_per_run`` deliberately stops early
    after that many rows (the record then has ``complete == False``).
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty scan region")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    query_probe = template
    if query_probe.target_filter == "even" and ring != "gaussian":
        raise ValueError("the evenness target filter applies to Gaussian scans")
    if query_probe.target_filter not in ("all", "even"):
        raise ValueError("target filter must be 'all' or 'even'")
    if collect_counts and ring not in ("gaussian", "eisenstein"):
        raise ValueError("count collection is available for planar scans only")
    if collect_counts and checkpoint_path is not None:
        raise ValueError("count collection cannot be combined with checkpointing")
    # validate template consistency with a probe query on a tiny target
    probe_target = (
        element_type(ring)(2, 2)
        if ring in ("gaussian", "eisenstein")
        else element_type(ring)((2,) * (4 if ring == "quaternion" else 8))
    )
    RepQuery(
        target=probe_target,
        summands=query_probe.summands,
        scope=query_probe.scope,
        classes=query_probe.classes,
        angle_cap=query_probe.angle_cap,
    ).validate()

    rows = _scan_rows(ring, lo, hi, query_probe)
    params = {
        "ring": ring,
        "template": query_probe,
        "collect_counts": collect_counts,
    }
    if ring in ("gaussian", "eisenstein"):
        params["lo_int"], params["hi_int"] = int(lo), int(hi)
    else:
        params["dlo"], params["dhi"] = int(2 * lo), int(2 * hi)
    params["table_bound"] = _scan_table_bound(ring, query_probe, params)

    key = _template_key(ring, lo, hi, query_probe)
    exceptions_coords: list[tuple] = []
    scanned = 0
    start_index = 0
    created = None
    if checkpoint_path is not None:
        resumed = load_checkpoint(checkpoint_path, missing_ok=True)
        if resumed is not None:
            if resumed["key"] != key:
                raise CheckpointError(
                    f"checkpoint {checkpoint_path} belongs to a different scan:\n"
                    f"  have: {resumed['key']}\n  want: {key}"
                )
            start_index = int(resumed["rows_done"])
            scanned = int(resumed["targets_scanned"])
            exceptions_coords = [
                _element_coords(ring, e) for e in resumed["exceptions"]
            ]
            created = resumed.get("created")
        if created is None:
            created = datetime.now(timezone.utc).isoformat(timespec="seconds")

    todo = rows[start_index:]
    if rows_per_run is not None:
        if rows_per_run < 1:
            raise ValueError("rows_per_run must be >= 1")
        todo = todo[:rows_per_run]

    counts: dict | None = {} if collect_counts else None
    rows_done = start_index

    def _absorb(result) -> None:
        nonlocal scanned, rows_done
        row, exc, n, row_counts = result
        exceptions_coords.extend(exc)
        scanned += n
        rows_done += 1
        if counts is not None and row_counts is not None:
            for b, c in row_counts:
                counts[(row, b)] = c
        if checkpoint_path is not None:
            save_checkpoint(
                checkpoint_path,
                {
                    "key": key,
                    "ring": ring,
                    "created": created,
                    "table_bound": params["table_bound"],
                    "rows_total": len(rows),
                    "rows_done": rows_done,
                    "targets_scanned": scanned,
                    "exceptions": [
                        str(_coords_to_element(ring, c)) for c in exceptions_coords
                    ],
                },
            )

    if todo:
        if workers == 1:
            _scan_worker_init(params)
            for row in todo:
                _absorb(_scan_worker_row(row))
        else:
            with ProcessPoolExecutor(
                max_workers=workers, initializer=_scan_worker_init, initargs=(params,)
            ) as pool:
                for result in pool.map(_scan_worker_row, todo):
                    _absorb(result)

    record = ScanRecord(
        ring=ring,
        lo=lo,
        hi=hi,
        template=query_probe,
        exceptions=[_coords_to_element(ring, c) for c in exceptions_coords],
        targets_scanned=scanned,
        rows_total=len(rows),
        rows_done=rows_done,
        counts=counts,
    )
    return record


def _element_coords(ring: str, text: str) -> tuple:
    from .rings import parse_element

    e = parse_element(ring, text)
    if ring in ("gaussian", "eisenstein"):
        return (e.a, e.b)
    return e.halves


# --------------------------------------------------------------------------
# Named rational-integer boundary problems.


def signed_prime_exceptions(limit: int, margin: int = 10_000) -> list[int]:
    """Positive n <= limit that are not p + q for signed primes p, q in {+-prime}.

    For odd n parity pins one summand to +-2, so the test (n-2 or n+2 prime)
    is exact.  For even n a witness pair straddling n is searched among odd
    primes up to n + margin; at desk scales the first witness appears within
    a few steps, so the margin is never the binding constraint.
    """
    if limit < 1:
        return []
    out = []
    for n in range(1, limit + 1):
        if n % 2:
            # one summand is +-2, the other +-s: s = |n - 2| or n + 2
            if not is_prime_u64(abs(n - 2)) and not is_prime_u64(n + 2):
                out.append(n)
            continue
        # both summands odd: n = r + s, r - s, or s - r with r, s odd primes
        found = False
        r = 3
        while r <= n + margin:
            if is_prime_u64(r) and (is_prime_u64(abs(n - r)) or is_prime_u64(n + r)):
                found = True
                break
            r += 2
        if not found:
            out.append(n)
    return out


def landau_boundary_decompose(n: int, flags=None) -> tuple[int, int] | None:
    """Split 2n = a + b with a^2+1 and b^2+1 both prime; smallest a, or None."""
    if n < 1:
        raise ValueError("n must be positive")
    top = 2 * n - 1
    if flags is None:
        flags = [False, True] + [is_prime_u64(k * k + 1) for k in range(2, top + 1)]
    for a in range(1, n + 1):
        b = 2 * n - a
        if flags[a] and flags[b]:
            return (a, b)
    return None


def landau_witnesses(nmax: int) -> list[tuple[int, int, int]]:
    """(n, a, b) for 2 <= n <= nmax; a or b of -1 marks a failure."""
    flags = [False, True] + [is_prime_u64(k * k + 1) for k in range(2, 2 * nmax)]
    out = []
    for n in range(2, nmax + 1):
        hit = landau_boundary_decompose(n, flags)
        out.append((n, *(hit if hit else (-1, -1))))
    return out


def bunyakovsky_boundary_decompose(n: int, flags=None) -> tuple[int, int] | None:
    """Split n = a + b with a^2+a+1 and b^2+b+1 both prime; smallest a, or None."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if flags is None:
        flags = [False] + [is_prime_u64(k * k + k + 1) for k in range(1, n)]
    for a in range(1, n):
        b = n - a
        if flags[a] and flags[b]:
            return (a, b)
    return None


def bunyakovsky_witnesses(nmax: int) -> list[tuple[int, int, int]]:
    """(n, a, b) for 1 < n <= nmax; a or b of -1 marks a failure."""
    flags = [False] + [is_prime_u64(k * k + k + 1) for k in range(1, nmax)]
    out = []
    for n in range(2, nmax + 1):
        hit = bunyakovsky_boundary_decompose(n, flags)
        out.append((n, *(hit if hit else (-1, -1))))
    return out
