"""Command-line front end: ``bcmotzkin <command> [flags]``."""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cache import DiskCache, default_cache_dir, dumps
from .combinatorics import CatalanTable, MotzkinTable
from .eo import EOStore, w_from_F
from .errors import BCMotzkinError, PreconditionError, Tripwire
from .laplace import FreeEnergyStore, is_stable
from .verify import BRIDGE_SAMPLES, SUITES, Context, run_suite

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def rational(text: str) -> Fraction:
    """Parse P or P/Q with Q > 0; decimals are rejected so no float ever sneaks in."""
    if not _RATIONAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected P/Q, got {text!r}")
    value = text.strip().split("/")
    if len(value) == 2 and int(value[1]) == 0:
        raise argparse.ArgumentTypeError("denominator must be positive")
    return Fraction(text.strip())


def nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return n


def positive(text: str) -> int:
    n = nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bcmotzkin", description="bc-Motzkin numbers, their Laplace transforms "
                                "and the topological recursion they satisfy.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None,
                        help="cache directory (default: $BCMOTZKIN_CACHE or ./.bcmotzkin_cache)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--jobs", type=positive, default=1, help="worker processes")
    common.add_argument("--output", "-o", default=None, help="write the artifact here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    for name, what in (("compute-catalan", "generalized Catalan numbers"),
                       ("compute-motzkin", "bc-Motzkin numbers")):
        s = sub.add_parser(name, parents=[common], help=f"table of {what}")
        s.add_argument("--genus", type=nonneg, required=True)
        s.add_argument("--vertices", type=positive, required=True)
        group = s.add_mutually_exclusive_group(required=True)
        group.add_argument("--max-total", type=nonneg)
        group.add_argument("--degrees", type=nonneg, nargs="+", help="a single degree vector")
        s.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "compute-motzkin":
            s.add_argument("--b", type=rational, default=None)
            s.add_argument("--c", type=rational, default=None)

    s = sub.add_parser("compute-F", parents=[common], help="Laplace transform F_{g,v} as a Laurent polynomial")
    s.add_argument("--genus", type=nonneg, required=True)
    s.add_argument("--vertices", type=positive, required=True)

    s = sub.add_parser("compute-W", parents=[common], help="Eynard-Orantin density w_{g,v}")
    s.add_argument("--genus", type=nonneg, required=True)
    s.add_argument("--vertices", type=positive, required=True)
    s.add_argument("--method", choices=("dF", "residue", "both"), default="both")

    s = sub.add_parser("verify", parents=[common], help="run invariant suites and emit a JSON report")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.add_argument("--max-level", type=positive, default=None,
                   help="largest 2g-2+v (default 4 for laplace, 3 for eo)")
    s.add_argument("--b", type=rational, default=None, help="bridge sample b (needs --c)")
    s.add_argument("--c", type=rational, default=None, help="bridge sample c (needs --b)")
    s.add_argument("--max-total", type=nonneg, default=10, help="bridge coefficient range")
    return p


def _cache(args) -> DiskCache | None:
    if args.no_cache:
        return None
    return DiskCache(args.cache_dir if args.cache_dir is not None else default_cache_dir())


def _emit(args, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)


def _vectors(v: int, budget: int):
    """All vectors of v non-negative entries with sum <= budget, lexicographically."""
    for n in itertools.product(range(budget + 1), repeat=v):
        if sum(n) <= budget:
            yield n


def _cached_table(args, kind: str, cls):
    """Memo table for (kind, g, v), reused from disk when it covers the request."""
    cache = _cache(args)
    table = None
    if cache is not None:
        data = cache.load(kind, args.genus, args.vertices)
        if data is not None:
            table = cls.from_records(data["rows"])
    if table is None:
        table = cls()

    def store():
        if cache is not None:
            rows = [r for r in table.records() if r["g"] == args.genus and r["v"] == args.vertices]
            cache.save(kind, args.genus, args.vertices, {"rows": rows})
    return table, store


def cmd_table(args) -> int:
    motz = args.command == "compute-motzkin"
    if motz and (args.b is None) != (args.c is None):
        raise PreconditionError("--b and --c go together")
    if args.degrees is not None:
        if len(args.degrees) != args.vertices:
            raise PreconditionError(f"--degrees has {len(args.degrees)} entries, --vertices is {args.vertices}")
        keys = [tuple(args.degrees)]
    else:
        keys = list(_vectors(args.vertices, args.max_total))
    table, store = _cached_table(args, "M" if motz else "C", MotzkinTable if motz else CatalanTable)
    rows = []
    for n in keys:
        val = table.value(args.genus, n)
        if motz and args.b is not None:
            val = val.specialize(args.b, args.c)
        rows.append((n, val))
    store()

    def cell(val):
        if isinstance(val, Fraction):
            return str(val)
        if isinstance(val, int):
            return str(val)
        return val.to_json() if args.format == "json" else repr(val)

    if args.format == "json":
        payload = {
            "kind": "motzkin" if motz else "catalan",
            "g": args.genus,
            "v": args.vertices,
            "rows": [{"n": list(n), "value": cell(val)} for n, val in rows],
        }
        if motz and args.b is not None:
            payload["b"], payload["c"] = str(args.b), str(args.c)
        _emit(args, dumps(payload))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g", "v", "n", "value"])
        for n, val in rows:
            w.writerow([args.genus, args.vertices, " ".join(map(str, n)), cell(val)])
        _emit(args, buf.getvalue())
    return 0


def _stable(args) -> None:
    if not is_stable(args.genus, args.vertices):
        raise PreconditionError(f"(g, v) = ({args.genus}, {args.vertices}) is unstable; need 2g - 2 + v > 0")


def cmd_compute_F(args) -> int:
    _stable(args)
    F = FreeEnergyStore(_cache(args)).get(args.genus, args.vertices)
    _emit(args, dumps({"g": args.genus, "v": args.vertices, "F": F.to_json()}))
    return 0


def cmd_compute_W(args) -> int:
    _stable(args)
    g, v = args.genus, args.vertices
    cache = _cache(args)
    payload = {"g": g, "v": v, "method": args.method}
    if args.method in ("dF", "both"):
        payload["dF"] = w_from_F(g, v, FreeEnergyStore(cache).get(g, v)).density.to_json()
    if args.method in ("residue", "both"):
        payload["residue"] = EOStore(cache).get(g, v).density.to_json()
    status = 0
    if args.method == "both":
        payload["match"] = payload["dF"] == payload["residue"]
        if not payload["match"]:
            print(f"error: identity failed: residue recursion != d1...dv F_{{{g},{v}}}", file=sys.stderr)
            status = 1
    _emit(args, dumps(payload))
    return status


def _suite_worker(job):
    name, cache_dir, max_level, samples, total = job
    ctx = _context(cache_dir, max_level, samples, total)
    return name, [c.to_json() for c in run_suite(name, ctx)]


def _context(cache_dir, max_level, samples, total) -> Context:
    ctx = Context(cache=DiskCache(cache_dir) if cache_dir is not None else None,
                  bridge_samples=samples, bridge_total=total)
    if max_level is not None:
        ctx.max_level = max_level
        ctx.eo_level = max_level
    return ctx


def cmd_verify(args) -> int:
    if (args.b is None) != (args.c is None):
        raise PreconditionError("--b and --c go together")
    samples = ((args.b, args.c),) if args.b is not None else BRIDGE_SAMPLES
    cache = _cache(args)
    cache_dir = str(cache.root) if cache is not None else None
    names = SUITES if args.suite == "all" else (args.suite,)
    jobs = [(n, cache_dir, args.max_level, samples, args.max_total) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = dict(pool.map(_suite_worker, jobs))
    else:
        results = dict(_suite_worker(j) for j in jobs)
    checks = []
    for n in names:
        for c in results[n]:
            checks.append(dict(c, name=f"{n}: {c['name']}"))
    report = {
        "suite": args.suite,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "checks": checks,
    }
    _emit(args, dumps(report))
    failed = [c["name"] for c in checks if c["status"] != "pass"]
    for name in failed:
        print(f"FAIL {name}", file=sys.stderr)
    return 1 if failed else 0


COMMANDS = {
    "compute-catalan": cmd_table,
    "compute-motzkin": cmd_table,
    "compute-F": cmd_compute_F,
    "compute-W": cmd_compute_W,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PreconditionError as exc:
        parser.error(str(exc))
    except Tripwire as exc:
        print(f"error: identity failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except BCMotzkinError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
