"""Command-line driver: ``python -m sparse_delaunay <command> ...``.

Exit status is 0 on success and 2 on validation failure (bad input, a
failed comparison bound).
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import math
import os
import random
import sys
import time
from typing import List, Optional, Sequence

from .filtration import FiltrationStore, FormatError
from .greedy import DuplicatePointError, greedy_permutation
from .kernel import Point, mpq
from .kinetic import TRACE, build
from .persistence import Diagram, bottleneck, bottleneck_log, reduce

EXIT_OK = 0
EXIT_INVALID = 2


class InputError(ValueError):
    pass


def read_points(path: str) -> List[Point]:
    """Parse a point file: ``#`` comments, one point per line as two rationals."""
    pts: List[Point] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"{path}:{lineno}: expected two coordinates")
            try:
                pts.append((mpq(parts[0]), mpq(parts[1])))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"{path}:{lineno}: bad rational in {line!r}") from None
    if not pts:
        raise InputError(f"{path}: no points")
    return pts


def parse_eps(text: str) -> mpq:
    try:
        eps = mpq(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"epsilon must be a rational, got {text!r}") from None
    if eps <= 0:
        raise InputError("epsilon must be positive")
    return eps


@contextlib.contextmanager
def _output(path: Optional[str] = None):
    if path and path != "-":
        with open(path, "w") as fh:
            yield fh
    else:
        yield sys.stdout
        sys.stdout.flush()


def cmd_greedy(args) -> int:
    g = greedy_permutation(read_points(args.input))
    with _output() as out:
        for rank, idx in enumerate(g.order):
            r = g.radii[rank]
            pred = "-" if g.pred[rank] is None else str(g.pred[rank])
            out.write(f"{rank} {idx} {'inf' if math.isinf(r) else format(r, '.17g')} {pred}\n")
    return EXIT_OK


def cmd_build(args) -> int:
    pts = read_points(args.input)
    res = build(pts, parse_eps(args.eps), orthoradius_rule=args.orthoradius_rule)
    with _output(args.out) as out:
        res.store.write(out)
    return EXIT_OK


def cmd_diagram(args) -> int:
    with open(args.input) as fh:
        store = FiltrationStore.read(fh)
    dgm = reduce(store)
    with _output() as out:
        dgm.write(out)
    return EXIT_OK


def cmd_compare(args) -> int:
    with open(args.a) as fa, open(args.b) as fb:
        da, db = Diagram.read(fa), Diagram.read(fb)
    d = bottleneck_log(da, db) if args.log else bottleneck(da, db)
    ok = args.bound is None or d <= args.bound + 1e-9
    print(f"{d:.17g} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_INVALID


def _sample_scales(res, rng: random.Random, count: int) -> List[mpq]:
    lams = [l for l in res.schedule.lambda_sq if l is not None]
    if not lams:
        return []
    e2 = (1 + res.schedule.epsilon) ** 2
    lo, hi = math.log(float(min(lams) / e2)), math.log(float(max(lams) * e2))
    return [mpq(math.exp(rng.uniform(lo, hi))) for _ in range(count)]


def cmd_stats(args) -> int:
    eps = parse_eps(args.eps)
    try:
        sizes = [int(x) for x in args.sizes.split(",")]
    except ValueError:
        raise InputError(f"bad --sizes {args.sizes!r}") from None
    base = read_points(args.input) if args.input else None
    with _output() as out:
        out.write("n,simplices,steiner,max_slice_degree,wall_time\n")
        for trial, n in enumerate(sizes):
            rng = random.Random(f"{args.seed}:{trial}:{n}")
            if base is not None:
                if n > len(base):
                    raise InputError(f"size {n} exceeds the {len(base)} points in {args.input}")
                pts = base[:n]
            else:
                pts = [(mpq(rng.randrange(10 ** 9), 10 ** 9), mpq(rng.randrange(10 ** 9), 10 ** 9))
                       for _ in range(n)]
            t0 = time.perf_counter()
            res = build(pts, eps)
            wall = time.perf_counter() - t0
            deg = max((res.max_slice_degree(s) for s in _sample_scales(res, rng, 10)), default=0)
            out.write(f"{n},{len(res.store)},{res.stats.steiner},{deg},{wall:.3f}\n")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparse_delaunay", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("greedy", help="greedy permutation: rank, index, radius, predecessor rank")
    g.add_argument("input")
    g.set_defaults(func=cmd_greedy)

    b = sub.add_parser("build", help="build the sparse Delaunay filtration")
    b.add_argument("input")
    b.add_argument("--eps", required=True, help="rational epsilon, e.g. 1/2")
    b.add_argument("--out")
    b.add_argument("--paper-radius-rule", dest="orthoradius_rule", action="store_true",
                   help="keep a flip simplex iff its orthoradius at the flip scale is within clipping")
    b.set_defaults(func=cmd_build)

    d = sub.add_parser("diagram", help="persistence diagram (dims 0 and 1) of a filtration file")
    d.add_argument("input")
    d.set_defaults(func=cmd_diagram)

    c = sub.add_parser("compare", help="bottleneck distance between two diagram files")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--log", action="store_true", help="log-scale bottleneck (multiplicative error)")
    c.add_argument("--bound", type=float)
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("stats", help="size and sparsity statistics as CSV")
    s.add_argument("input", nargs="?", help="point file; sizes take prefixes (default: seeded uniform points)")
    s.add_argument("--eps", required=True)
    s.add_argument("--sizes", required=True, help="comma-separated sizes")
    s.add_argument("--seed", required=True)
    s.set_defaults(func=cmd_stats)
    return p


def _configure_logging() -> None:
    level = os.environ.get("SDF_LOG", "").lower()
    if level == "trace":
        logging.addLevelName(TRACE, "TRACE")
        logging.basicConfig(level=TRACE, format="%(levelname)s %(message)s")
    elif level == "info":
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    _configure_logging()
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, DuplicatePointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
