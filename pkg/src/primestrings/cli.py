"""Command line interface.

Subcommands: strings, maier, counts sq, counts psi, census, cache.
Output is JSON (or CSV where offered) on stdout; logs go to stderr.
Exit codes: 0 success, 2 usage error, 3 scan completed without a hit,
4 runtime/domain error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import shutil
import sys
import time

from . import __version__
from .errors import DomainError, PrimestringsError
from .fixedpoint import IrrationalConstant, named_constant
from .maier import census_json, run_construction
from .search import (NotFound, StringQuery, find_first_string, hit_record,
                     residue_census, scan_all_strings)
from .sieve import cache_dir, load_or_build, table_cache_path
from .special import GFamily, SpecialSetSpec
from .maier import count_S_q, count_psi

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3
EXIT_ERROR = 4


def parse_count(text):
    """Integer-valued numeric literal; scientific notation accepted."""
    try:
        v = int(text)
        return v
    except ValueError:
        pass
    try:
        f = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if f != int(f):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(f)


def _significant_digits(text):
    digits = [c for c in text if c.isdigit()]
    while digits and digits[0] == "0":
        digits.pop(0)
    return len(digits)


def parse_set(text):
    """Set descriptor: all | beatty:<name-or-decimal> | floorprod:<family>."""
    if text == "all":
        return SpecialSetSpec.all_primes()
    if text.startswith("beatty:"):
        arg = text.split(":", 1)[1]
        try:
            return SpecialSetSpec.beatty(named_constant(arg))
        except KeyError:
            pass
        if _significant_digits(arg) < 40:
            raise argparse.ArgumentTypeError(
                f"custom constants need >= 40 significant digits: {arg!r}")
        try:
            const = IrrationalConstant.from_decimal(arg, arg)
            return SpecialSetSpec.beatty(const)
        except (ValueError, DomainError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    if text.startswith("floorprod:"):
        arg = text.split(":", 1)[1]
        family, _, power = arg.partition("^")
        B = float(power) if power else 1.0
        if family == "loglog":
            return SpecialSetSpec.floor_product(GFamily.loglog(B))
        if family == "log":
            return SpecialSetSpec.floor_product(GFamily.log_pow(B))
        raise argparse.ArgumentTypeError(
            f"unknown floor-product family {family!r} (loglog, log)")
    raise argparse.ArgumentTypeError(f"unknown set descriptor {text!r}")


def _emit(args, text, argv, t0):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")
    if getattr(args, "manifest", None):
        params = {k: repr(v) for k, v in sorted(vars(args).items())
                  if k not in ("func", "manifest")}
        manifest = {
            "command_line": " ".join(argv),
            "config_hash": hashlib.sha256(
                json.dumps(params, sort_keys=True).encode()).hexdigest(),
            "tool_version": __version__,
            "wall_time_ms": int((time.monotonic() - t0) * 1000),
            "workers": getattr(args, "threads", 1),
            "result_digest": hashlib.sha256(text.encode()).hexdigest(),
        }
        with open(args.manifest, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_strings(args, argv, t0):
    query = StringQuery(spec=args.set, k=args.k, q=args.q, a=args.a,
                        limit=args.limit)
    start = time.monotonic()
    if args.all_runs:
        runs = scan_all_strings(query, workers=args.threads)
        doc = {"set": args.set.descriptor(), "q": args.q, "a": args.a,
               "limit": args.limit,
               "runs": [{"start": s, "length": n} for s, n in runs],
               "elapsed_ms": int((time.monotonic() - start) * 1000)}
        _emit(args, _dump(doc), argv, t0)
        return EXIT_OK
    result = find_first_string(query, workers=args.threads)
    elapsed = int((time.monotonic() - start) * 1000)
    record = hit_record(query, result, elapsed_ms=elapsed)
    if args.format == "csv":
        cols = ["set", "k", "q", "a", "limit", "found", "start_index",
                "primes", "elapsed_ms"]
        row = dict(record)
        row.setdefault("found", True)
        row["primes"] = ";".join(str(p) for p in row.get("primes", []))
        row.setdefault("start_index", "")
        text = ",".join(cols) + "\n" + \
            ",".join(str(row.get(c, "")) for c in cols) + "\n"
    else:
        text = _dump(record)
    _emit(args, text, argv, t0)
    return EXIT_OK if not isinstance(result, NotFound) else EXIT_NOT_FOUND


def cmd_census(args, argv, t0):
    census = residue_census(args.set, args.limit, args.q,
                            workers=args.threads)
    if args.format == "csv":
        text = census.to_csv()
    else:
        text = _dump({
            "set": census.set_descriptor, "X": census.X, "q": census.q,
            "counts": {str(r): c for r, c in census.counts.items()},
            "phi": census.phi, "coprime_mean": census.coprime_mean,
            "max_ratio": census.max_ratio, "min_ratio": census.min_ratio,
        })
    _emit(args, text, argv, t0)
    return EXIT_OK


def cmd_maier(args, argv, t0):
    config, interval, census, bounds = run_construction(
        q=args.q, a=args.a, y=args.y, p0=args.p0, yz=args.yz,
        rows=args.rows, spec=args.set, X=args.x)
    _emit(args, _dump(census_json(config, interval, census, bounds)),
          argv, t0)
    return EXIT_OK


def cmd_counts_sq(args, argv, t0):
    count = count_S_q(args.q, args.z)
    _emit(args, _dump({"q": args.q, "z": args.z, "count": count}), argv, t0)
    return EXIT_OK


def cmd_counts_psi(args, argv, t0):
    count = count_psi(args.x, args.t)
    _emit(args, _dump({"x": args.x, "t": args.t, "count": count}), argv, t0)
    return EXIT_OK


def cmd_cache(args, argv, t0):
    if args.action == "path":
        _emit(args, cache_dir() + "\n", argv, t0)
        return EXIT_OK
    if args.action == "clear":
        removed = 0
        if os.path.isdir(cache_dir()):
            shutil.rmtree(cache_dir())
            removed = 1
        _emit(args, _dump({"cleared": bool(removed), "dir": cache_dir()}),
              argv, t0)
        return EXIT_OK
    # build
    if args.limit is None:
        raise PrimestringsError("cache build needs --limit")
    load_or_build(args.limit, workers=args.threads, use_cache=True)
    _emit(args, _dump({"built": args.limit,
                       "path": table_cache_path(args.limit)}), argv, t0)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="primestrings",
        description="strings of congruent primes in special sequences")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="progress logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--threads", type=int,
                       default=os.cpu_count() or 1,
                       help="worker processes (default: machine cores)")
        p.add_argument("--manifest", help="write a run manifest JSON here")
        p.add_argument("--no-cache", action="store_true",
                       help="do not read or write the table cache")

    p = sub.add_parser("strings", help="find the first k-string")
    p.add_argument("--set", type=parse_set, default=SpecialSetSpec.all_primes())
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--limit", type=parse_count, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--all-runs", action="store_true",
                   help="emit every maximal run instead of the first hit")
    common(p)
    p.set_defaults(func=cmd_strings)

    p = sub.add_parser("census", help="residue census of set-primes")
    p.add_argument("--set", type=parse_set, default=SpecialSetSpec.all_primes())
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--limit", type=parse_count, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("maier", help="run a Maier-matrix construction")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--y", type=parse_count, default=None)
    p.add_argument("--p0", type=int, default=None)
    p.add_argument("--yz", type=parse_count, default=None)
    p.add_argument("--rows", type=parse_count, default=1000)
    p.add_argument("--x", type=parse_count, default=10 ** 8,
                   help="scale X used for default parameters and bounds")
    p.add_argument("--set", type=parse_set, default=SpecialSetSpec.all_primes())
    common(p)
    p.set_defaults(func=cmd_maier)

    p = sub.add_parser("counts", help="counting functions")
    csub = p.add_subparsers(dest="which", required=True)
    ps = csub.add_parser("sq", help="products of primes = 1 mod q")
    ps.add_argument("--q", type=int, required=True)
    ps.add_argument("--z", type=parse_count, required=True)
    common(ps)
    ps.set_defaults(func=cmd_counts_sq)
    pp = csub.add_parser("psi", help="t-smooth numbers up to x")
    pp.add_argument("--x", type=parse_count, required=True)
    pp.add_argument("--t", type=float, required=True)
    common(pp)
    pp.set_defaults(func=cmd_counts_psi)

    p = sub.add_parser("cache", help="prime table cache management")
    p.add_argument("action", choices=("build", "clear", "path"))
    p.add_argument("--limit", type=parse_count, default=None)
    common(p)
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s")
    t0 = time.monotonic()
    try:
        return args.func(args, argv, t0)
    except PrimestringsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
