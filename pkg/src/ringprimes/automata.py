"""Cellular automata and connectivity walks on planar prime grids.

Grids are square boolean arrays over the window max(|a|, |b|) <= W, indexed
``grid[a + W, b + W]``.  The same array layout feeds the Life stepper, the
moat walk, the PGM renderer, and the run-length CSV codec, so round trips
are bit-exact by construction.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvariantError
from .primality import planar_prime_mask
from .rational import PrimeTable
from .rings import element_type

__all__ = [
    "prime_grid",
    "life_step",
    "life_run",
    "live_points",
    "write_pgm",
    "read_pgm",
    "write_rle_csv",
    "read_rle_csv",
    "MoatReport",
    "moat_offsets",
    "moat_component",
]


def prime_grid(ring: str, window: int, table: PrimeTable | None = None) -> np.ndarray:
    """Boolean grid of the ring's primes with max(|a|, |b|) <= window."""
    if window < 0:
        raise ValueError("window must be nonnegative")
    bound = 3 * window * window + 4
    if table is None or table.bound < bound:
        table = PrimeTable(bound)
    axis = np.arange(-window, window + 1, dtype=np.int64)
    return planar_prime_mask(ring, axis[:, None], axis[None, :], table)


def life_step(grid: np.ndarray) -> np.ndarray:
    """One generation of Conway's rules (birth on 3, survival on 2 or 3).

    Cells outside the window are permanently dead, so patterns that walk into
    the boundary die there; the window must be chosen with that in mind.
    """
    p = np.pad(grid.astype(np.uint8), 1)
    n = (
        p[:-2, :-2] + p[:-2, 1:-1] + p[:-2, 2:]
        + p[1:-1, :-2] + p[1:-1, 2:]
        + p[2:, :-2] + p[2:, 1:-1] + p[2:, 2:]
    )
    return (n == 3) | (grid & (n == 2))


def life_run(grid: np.ndarray, steps: int) -> np.ndarray:
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    for _ in range(steps):
        grid = life_step(grid)
    return grid


def live_points(grid: np.ndarray) -> list[tuple[int, int]]:
    """Lattice coordinates of the live cells, lexicographically sorted."""
    w = grid.shape[0] // 2
    xs, ys = np.nonzero(grid)
    return [(int(x) - w, int(y) - w) for x, y in sorted(zip(xs.tolist(), ys.tolist()))]


def _as_image(grid: np.ndarray) -> np.ndarray:
    # pixel rows run b = +W down to -W, columns a = -W up to +W
    return grid.T[::-1, :]


def write_pgm(path, grid: np.ndarray) -> None:
    """Binary PGM (P5), live cells white on black."""
    img = _as_image(grid).astype(np.uint8) * 255
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode())
        f.write(img.tobytes())


def read_pgm(path) -> np.ndarray:
    """Read a PGM written by :func:`write_pgm` back into a boolean grid."""
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if len(parts) < 4 or parts[0] != b"P5" or parts[2] != b"255":
        raise ValueError(f"{path} is not a PGM file in the expected dialect")
    w, h = (int(v) for v in parts[1].split())
    img = np.frombuffer(parts[3][: w * h], dtype=np.uint8).reshape(h, w)
    if img.shape[0] != img.shape[1]:
        raise ValueError("expected a square grid image")
    return (img > 0)[::-1, :].T  # undo the row-flip + transpose of _as_image


def write_rle_csv(dest, grid: np.ndarray, window: int) -> None:
    """Run-length CSV of the live cells: maximal runs along each row of b.

    Layout: a ``# window W`` comment, a ``b,a_start,length`` header, then one
    line per run, ordered by b then a.  Decoding reproduces the grid exactly.
    """
    if grid.shape != (2 * window + 1, 2 * window + 1):
        raise InvariantError("grid shape disagrees with the stated window")
    lines = [f"# window {window}", "b,a_start,length"]
    for b in range(-window, window + 1):
        col = grid[:, b + window]
        run_start = None
        for i, alive in enumerate(col.tolist() + [False]):
            if alive and run_start is None:
                run_start = i
            elif not alive and run_start is not None:
                lines.append(f"{b},{run_start - window},{i - run_start}")
                run_start = None
    text = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)


def read_rle_csv(src) -> tuple[np.ndarray, int]:
    if hasattr(src, "read"):
        text = src.read()
    else:
        text = Path(src).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# window "):
        raise ValueError("missing '# window W' comment line")
    window = int(lines[0].split()[2])
    if len(lines) < 2 or lines[1] != "b,a_start,length":
        raise ValueError("missing b,a_start,length header")
    grid = np.zeros((2 * window + 1, 2 * window + 1), dtype=bool)
    for ln in lines[2:]:
        if ln.startswith("#"):
            continue
        b, a_start, length = (int(v) for v in ln.split(","))
        grid[a_start + window : a_start + window + length, b + window] = True
    return grid, window


@dataclass
class MoatReport:
    """A connected component of primes under a bounded hop length."""

    ring: str
    step_sq: int
    window: int
    members: list
    touched_boundary: bool

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def confined(self) -> bool:
        """True when no hop from any member can leave the window.

        Only a confined component is provably the whole component; otherwise
        the walk may continue beyond the scanned window.
        """
        return not self.touched_boundary


def moat_offsets(step_sq: int) -> list[tuple[int, int]]:
    """All nonzero lattice offsets with squared length <= step_sq."""
    if step_sq < 1:
        raise ValueError("step_sq must be at least 1")
    s = math.isqrt(step_sq)
    return [
        (dx, dy)
        for dx in range(-s, s + 1)
        for dy in range(-s, s + 1)
        if 0 < dx * dx + dy * dy <= step_sq
    ]


def moat_component(
    ring: str,
    step_sq: int,
    window: int,
    start: tuple[int, int] = (1, 1),
    table: PrimeTable | None = None,
) -> MoatReport:
    """Flood-fill the prime component of ``start`` with hops of length^2 <= step_sq.

    The walk is restricted to the window; ``touched_boundary`` reports whether
    any member sits close enough to the edge that a hop could leave it, in
    which case the component may be larger than what was found.
    """
    grid = prime_grid(ring, window, table)
    w = window
    sa, sb = start
    if max(abs(sa), abs(sb)) > w or not grid[sa + w, sb + w]:
        raise ValueError(f"start point {start} is not a prime inside the window")
    offsets = moat_offsets(step_sq)
    reach = math.isqrt(step_sq)
    seen = {(sa, sb)}
    queue = deque([(sa, sb)])
    touched = False
    while queue:
        a, b = queue.popleft()
        if max(abs(a), abs(b)) + reach > w:
            touched = True
        for dx, dy in offsets:
            na, nb = a + dx, b + dy
            if max(abs(na), abs(nb)) <= w and (na, nb) not in seen and grid[na + w, nb + w]:
                seen.add((na, nb))
                queue.append((na, nb))
    cls = element_type(ring)
    members = [cls(a, b) for a, b in sorted(seen)]
    return MoatReport(
        ring=ring, step_sq=step_sq, window=window, members=members, touched_boundary=touched
    )
