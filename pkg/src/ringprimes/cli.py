"""Command-line front end.

Subcommands emit delimited text on stdout: CSV with a header row (comment
lines start with ``#``), or JSON for the scalar-valued commands.  Real numbers
are printed with 15 significant digits.  Exit codes: 0 success, 2 usage
errors, 3 capacity refusals, 4 internal invariant violations.

A ``--plot FILE.png`` flag on the scan-like commands renders a matplotlib
figure next to the delimited output; plotting a checkpointed scan is refused
because resumed runs do not retain per-target counts.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import automata, census, constants, goldbach
from .errors import CapacityError, CheckpointError, InvariantError
from .rational import PrimeTable
from .rings import RINGS

EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_INVARIANT = 4

_PLANAR = ("gaussian", "eisenstein")


def _real(x) -> str:
    return f"{float(x):.15g}"


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _classes(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


# ----------------------------------------------------------------- verify --


def _emit_scan_record(record) -> None:
    t = record.template
    classes = ",".join(t.classes or ("any",) * t.summands)
    print(
        f"# ring={record.ring} region=[{record.lo},{record.hi}] scope={t.scope}"
        f" summands={t.summands} classes={classes} angle={t.angle_cap or 'none'}"
        f" filter={t.target_filter} targets={t.target_class}"
    )
    print(f"# rows_done={record.rows_done}/{record.rows_total} targets_scanned={record.targets_scanned}")
    if record.ring in _PLANAR:
        print("a,b,element")
        for e in record.exceptions:
            print(f"{e.a},{e.b},{e}")
    else:
        width = 4 if record.ring == "quaternion" else 8
        print(",".join(f"c{i + 1}" for i in range(width)) + ",element")
        for e in record.exceptions:
            print(",".join(str(c) for c in e.coords()) + f",\"{e}\"")
    if not record.complete:
        print("# incomplete")


def _cmd_verify(ns) -> int:
    template = goldbach.ScanTemplate(
        scope=ns.scope,
        summands=ns.summands,
        classes=ns.classes,
        angle_cap=ns.angle,
        target_filter=ns.filter,
        target_class=ns.target_class,
    )
    collect = ns.plot is not None
    if collect and ns.checkpoint is not None:
        raise ValueError("--plot needs per-target counts, which checkpointed runs do not keep")
    record = goldbach.scan_exceptions(
        ns.ring,
        ns.min,
        ns.max,
        template,
        workers=ns.workers,
        checkpoint_path=ns.checkpoint,
        rows_per_run=ns.rows_per_run,
        collect_counts=collect,
    )
    _emit_scan_record(record)
    if collect:
        from . import plots

        plots.save_count_matrix_figure(
            ns.plot, record.counts, record.ring, int(record.lo), int(record.hi)
        )
    return 0


def _cmd_ghosts(ns) -> int:
    ns.ring = "eisenstein"
    ns.min = Fraction(2)
    ns.scope, ns.summands, ns.classes, ns.angle = "q", 2, None, None
    ns.filter, ns.target_class, ns.rows_per_run = "all", "all", None
    return _cmd_verify(ns)


# ------------------------------------------------------------------ comet --


def _cmd_comet(ns) -> int:
    pairs = goldbach.comet_row(ns.ring, ns.row, ns.max, target_filter=ns.filter)
    print(f"# ring={ns.ring} row={ns.row} max={ns.max} filter={ns.filter} scope=q summands=2")
    print("a,count")
    for a, c in pairs:
        print(f"{a},{c}")
    if ns.plot is not None:
        from . import plots

        plots.save_comet_figure(ns.plot, pairs, ns.ring, ns.row)
    return 0


# --------------------------------------------------------------- constant --


def _cmd_constant(ns) -> int:
    chosen = [ns.row is not None, ns.accelerated, ns.poly is not None]
    if sum(chosen) != 1:
        raise ValueError("choose exactly one of --row, --accelerated, --poly")
    if ns.row is not None:
        est = constants.hardy_littlewood_constant(ns.row, ns.bound)
        kind = f"row constant, offset {ns.row}"
    elif ns.accelerated:
        primes = tuple(int(p) for p in ns.primes.split(",")) if ns.primes else ()
        est = constants.accelerated_landau_constant(primes)
        kind = "accelerated n^2+1 constant"
    else:
        est = constants.bateman_horn_constant(ns.poly, ns.bound, num_factors=ns.num_factors)
        kind = f"polynomial constant, {ns.poly}"
    print(
        json.dumps(
            {
                "kind": kind,
                "value": float(_real(est.value)),
                "prime_bound": est.prime_bound,
                "factors_used": est.factors_used,
            }
        )
    )
    return 0


def _cmd_ratio(ns) -> int:
    point = constants.empirical_ratio(ns.max)
    print(
        json.dumps(
            {
                "x": point.x,
                "poly_prime_count": point.poly_prime_count,
                "class_prime_count": point.class_prime_count,
                "ratio": float(_real(point.ratio)),
            }
        )
    )
    return 0


# ----------------------------------------------------------------- census --


def _cmd_census(ns) -> int:
    chosen = [ns.norm is not None, ns.sphere is not None, ns.row is not None]
    if sum(chosen) != 1:
        raise ValueError("choose exactly one of --norm, --sphere, --row")
    if ns.norm is not None:
        count = census.count_by_norm(ns.ring, ns.norm)
        print("ring,norm,count")
        print(f"{ns.ring},{ns.norm},{count}")
    elif ns.sphere is not None:
        count = census.primes_on_sphere(ns.ring, ns.sphere)
        print("ring,p,count")
        print(f"{ns.ring},{ns.sphere},{count}")
    else:
        if ns.max is None:
            raise ValueError("--row needs --max")
        count = constants.gaussian_row_census(ns.row, ns.max)
        print("row,max,count")
        print(f"{ns.row},{ns.max},{count}")
    return 0


# ------------------------------------------------------------- life, moat --


def _cmd_life(ns) -> int:
    if not ns.out.endswith(".pgm"):
        raise ValueError("--out must name a .pgm file")
    grid = automata.prime_grid(ns.ring, ns.bound)
    grid = automata.life_run(grid, ns.steps)
    automata.write_pgm(ns.out, grid)
    automata.write_rle_csv(sys.stdout, grid, ns.bound)
    print(f"# ring={ns.ring} steps={ns.steps} live={int(grid.sum())} out={ns.out}")
    if ns.plot is not None:
        from . import plots

        plots.save_grid_figure(
            ns.plot, grid, ns.bound, f"{ns.ring} primes after {ns.steps} generations"
        )
    return 0


def _cmd_moat(ns) -> int:
    report = automata.moat_component(ns.ring, ns.stepsq, ns.bound)
    print(
        f"# ring={report.ring} stepsq={report.step_sq} window={report.window}"
        f" size={report.size} touched_boundary={str(report.touched_boundary).lower()}"
    )
    print("a,b,element")
    for m in report.members:
        print(f"{m.a},{m.b},{m}")
    if ns.plot is not None:
        from . import plots

        plots.save_moat_figure(ns.plot, report, automata.prime_grid(ns.ring, ns.bound))
    return 0


# ------------------------------------------- signed, landau, bunyakovsky --


def _cmd_signed(ns) -> int:
    exceptions = goldbach.signed_prime_exceptions(ns.max)
    print(f"# not a sum of two signed primes, n <= {ns.max}")
    print("n")
    for n in exceptions:
        print(n)
    return 0


def _cmd_landau(ns) -> int:
    print("# 2n = a + b with a^2+1 and b^2+1 prime; -1,-1 marks a failure")
    print("n,a,b")
    for n, a, b in goldbach.landau_witnesses(ns.max):
        print(f"{n},{a},{b}")
    return 0


def _cmd_bunyakovsky(ns) -> int:
    print("# n = a + b with a^2+a+1 and b^2+b+1 prime; -1,-1 marks a failure")
    print("n,a,b")
    for n, a, b in goldbach.bunyakovsky_witnesses(ns.max):
        print(f"{n},{a},{b}")
    return 0


# ----------------------------------------------------------------- parser --


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringprimes",
        description="Goldbach-style decomposition searches over four prime lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="scan a region and report decomposition exceptions")
    p.add_argument("ring", choices=RINGS)
    p.add_argument("--min", type=_fraction, required=True)
    p.add_argument("--max", type=_fraction, required=True)
    p.add_argument("--scope", choices=("q", "full"), default="q")
    p.add_argument("--filter", choices=("all", "even"), default="all")
    p.add_argument("--summands", type=int, choices=(2, 3), default=2)
    p.add_argument("--classes", type=_classes, default=None, metavar="C1,C2[,C3]")
    p.add_argument("--angle", choices=("pi4", "pi6"), default=None)
    p.add_argument("--target-class", default="all", help="lattice class of the scanned targets")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", default=None, metavar="FILE")
    p.add_argument("--rows-per-run", type=int, default=None, metavar="N")
    p.add_argument("--plot", default=None, metavar="FILE.png")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("ghosts", help="the Eisenstein sector scan that finds the ghost twins")
    p.add_argument("--max", type=_fraction, default=Fraction(130))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", default=None, metavar="FILE")
    p.add_argument("--plot", default=None, metavar="FILE.png")
    p.set_defaults(func=_cmd_ghosts)

    p = sub.add_parser("comet", help="decomposition counts along one row of targets")
    p.add_argument("ring", choices=_PLANAR)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--filter", choices=("auto", "all", "even"), default="auto")
    p.add_argument("--plot", default=None, metavar="FILE.png")
    p.set_defaults(func=_cmd_comet)

    p = sub.add_parser("constant", help="truncated Euler products for prime densities")
    p.add_argument("--row", type=int, default=None, help="offset a of the form n^2+a^2")
    p.add_argument("--accelerated", action="store_true")
    p.add_argument("--primes", default="", metavar="P1,P2,...")
    p.add_argument("--poly", default=None, metavar='"x^2+1"')
    p.add_argument("--num-factors", type=int, default=1)
    p.add_argument("--bound", type=int, default=100_000)
    p.set_defaults(func=_cmd_constant)

    p = sub.add_parser("ratio", help="count n^2+1 primes against 3-mod-4 primes")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("census", help="lattice point and prime counts")
    p.add_argument("--ring", choices=RINGS, default="quaternion")
    p.add_argument("--norm", type=int, default=None)
    p.add_argument("--sphere", type=int, default=None, metavar="P")
    p.add_argument("--row", type=int, default=None)
    p.add_argument("--max", type=int, default=None)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("life", help="run Conway generations on a prime grid")
    p.add_argument("--ring", choices=_PLANAR, default="gaussian")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--steps", type=int, default=0)
    p.add_argument("--out", required=True, metavar="FILE.pgm")
    p.add_argument("--plot", default=None, metavar="FILE.png")
    p.set_defaults(func=_cmd_life)

    p = sub.add_parser("moat", help="flood-fill a prime component under a bounded hop")
    p.add_argument("--ring", choices=_PLANAR, default="gaussian")
    p.add_argument("--stepsq", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--plot", default=None, metavar="FILE.png")
    p.set_defaults(func=_cmd_moat)

    p = sub.add_parser("signed", help="integers that are not sums of two signed primes")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=_cmd_signed)

    p = sub.add_parser("landau", help="2n = a+b with both a^2+1, b^2+1 prime")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=_cmd_landau)

    p = sub.add_parser("bunyakovsky", help="n = a+b with both a^2+a+1, b^2+b+1 prime")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=_cmd_bunyakovsky)

    return parser


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except CheckpointError as exc:
        print(f"checkpoint: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
