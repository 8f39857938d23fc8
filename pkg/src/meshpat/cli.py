"""
Command-line entry point.

    meshpat count "132:(0,0)(1,1)(1,2)(3,1)" 24513
    meshpat check-pair X1_19 --nmax 7
    meshpat check-pair "123:" "132:" --nmax 6 --format csv
    meshpat verify-tables --tables 2 3 --nmax 6 --checks jd
    meshpat discover --nmax 7
    meshpat bijection-trace box-lemma 263518497

Exit codes: 0 verified, 1 counterexample or failed check, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .bij import LEMMA_P1, LEMMA_P2, MapSpec, PreconditionError, trace_map
from .dist import is_jointly_equidistributed, joint_distribution, to_csv
from .mesh import PatternParseError, parse_pattern
from .occur import count_occurrences
from .perm import PermutationError, parse_permutation
from .verify import CHECK_MODES, check_entries, default_jobs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# the length-2 pair of the chain lemma is not a catalog entry but has a map
BUILTIN_TRACES = {"box-lemma": (LEMMA_P1, LEMMA_P2, MapSpec("chain"))}


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _pattern(text: str):
    try:
        return parse_pattern(text)
    except PatternParseError as exc:
        raise UsageError(f"bad pattern {text!r}: {exc}") from None


def _perm(text: str):
    try:
        return parse_permutation(text)
    except (PermutationError, ValueError) as exc:
        raise UsageError(f"bad permutation {text!r}: {exc}") from None


def _entry(entry_id: str):
    try:
        return catalog.get_entry(entry_id)
    except KeyError:
        raise UsageError(f"unknown pair id {entry_id!r}") from None


def _jobs(args) -> int:
    if args.jobs is not None:
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        return args.jobs
    try:
        return default_jobs()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_tables(tokens: list[str]) -> list[int]:
    out: list[int] = []
    for tok in tokens:
        for part in tok.split(","):
            lo, _, hi = part.partition("..")
            try:
                rng = range(int(lo), int(hi or lo) + 1)
            except ValueError:
                raise UsageError(f"bad table token {part!r}") from None
            out += [t for t in rng if t not in out]
    bad = [t for t in out if t not in catalog.ALL_TABLES]
    if bad:
        raise UsageError(f"no table {bad[0]} (tables are 2..8)")
    return sorted(out)


# --------------------------------------------------------------------------
# subcommands


def cmd_count(args) -> int:
    q = _pattern(args.pattern)
    pi = _perm(args.permutation)
    print(count_occurrences(pi, q))
    return EXIT_OK


def cmd_check_pair(args) -> int:
    if len(args.pair) == 1:
        e = _entry(args.pair[0])
        q1, q2, label, status = e.q1, e.q2, e.id, e.status
    elif len(args.pair) == 2:
        q1, q2 = _pattern(args.pair[0]), _pattern(args.pair[1])
        if q1.k != q2.k:
            raise UsageError("patterns must have the same length")
        label, status = None, None
    else:
        raise UsageError("check-pair takes a pair id or two pattern literals")
    jobs = _jobs(args)
    dists = [joint_distribution(q1, q2, n, jobs=jobs) for n in range(1, args.nmax + 1)]
    rep = is_jointly_equidistributed(q1, q2, args.nmax, jobs=jobs)
    if rep:
        verdict = "supported-at-depth" if status == "conjectured" else "verified-at-depth"
    else:
        verdict = "refuted"
    if args.format == "csv":
        sys.stdout.write(to_csv(dists))
        witness = "" if rep else " witness n={} k={} l={}".format(*rep.witness)
        print(f"{verdict} n_max={args.nmax}{witness}", file=sys.stderr)
    else:
        _emit({"id": label, "q1": str(q1), "q2": str(q2), "status": status, "n_max": args.nmax,
               "verdict": verdict, "witness": None if rep else list(rep.witness),
               "distributions": [d.to_json() for d in dists]})
    return EXIT_OK if rep else EXIT_FAIL


def _matrix_text(results) -> str:
    lines = []
    width = max((len(r.id) for r in results), default=2)
    for r in results:
        cells = " ".join(f"{c.name}={'pass' if c.ok else 'FAIL'}" for c in r.checks)
        lines.append(f"{r.id:<{width}}  {r.status:<11} {r.verdict:<19} {cells}")
        for c in r.checks:
            if not c.ok:
                lines.append(f"{'':<{width}}    {c.name}: {json.dumps(c.detail)}")
    return "\n".join(lines)


def cmd_verify_tables(args) -> int:
    tables = _parse_tables(args.tables)
    entries = catalog.load_catalog(tables)
    results = check_entries(entries, args.nmax, args.checks, _jobs(args))
    failed = [r for r in results if not r.ok]
    summary = {"tables": tables, "n_max": args.nmax, "checks": args.checks,
               "entries": len(results), "passed": len(results) - len(failed),
               "failed": [r.id for r in failed]}
    if 8 in tables:
        summary["table8"] = catalog.table8_counts()
    if args.format == "json":
        _emit({"summary": summary, "results": [r.to_json() for r in results]})
    elif args.format == "csv":
        print("id,status,technique,verdict,check,ok")
        for r in results:
            for c in r.checks:
                print(f"{r.id},{r.status},{r.technique},{r.verdict},{c.name},{int(c.ok)}")
    else:
        print(_matrix_text(results))
        print(f"{summary['passed']}/{summary['entries']} entries pass at n_max={args.nmax}"
              f" (checks={args.checks})")
        if "table8" in summary:
            t8 = summary["table8"]
            print(f"table 8: {t8['pairs']} (template, p) pairs, {t8['distinct_shadings']} distinct shadings")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_discover(args) -> int:
    if args.nmax < 3:
        raise UsageError("--nmax must be at least 3")
    res = catalog.discover_candidates(args.nmax, _jobs(args))
    if args.format == "json":
        _emit(res.to_json())
    else:
        print(f"tested {res.tested} minus-antipodal shadings at n <= {res.n_max}")
        print(f"passing: {len(res.passing)} shadings in {len(res.orbits)} inverse orbits")
        print(f"catalog shadings missing: {len(res.catalog_missing)}"
              + (f" ({', '.join(res.catalog_missing)})" if res.catalog_missing else ""))
        print(f"unlisted empirical candidates: {len(res.unlisted)}")
        for s in res.unlisted:
            print("  " + "".join(f"({a},{b})" for a, b in sorted(s)))
    return EXIT_OK if not res.catalog_missing else EXIT_FAIL


def cmd_bijection_trace(args) -> int:
    if args.pair in BUILTIN_TRACES:
        q1, q2, spec = BUILTIN_TRACES[args.pair]
    else:
        e = _entry(args.pair)
        if e.map is None:
            raise UsageError(f"{e.id} has no registered map ({e.status}, technique {e.technique})")
        q1, q2, spec = e.q1, e.q2, e.map
    pi = _perm(args.permutation)
    try:
        steps = trace_map(spec, q1, q2, pi)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(json.dumps([s.to_json() for s in steps]))
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meshpat", description="Joint distributions of mesh patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count occurrences of a pattern in a permutation")
    p.add_argument("pattern", help='pattern literal, e.g. "132:(0,0)(1,1)"')
    p.add_argument("permutation", help="one-line permutation, e.g. 24513 or 10,2,1,...")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("check-pair", help="joint distribution of a pair up to --nmax")
    p.add_argument("pair", nargs="+", help="catalog id, or two pattern literals")
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_check_pair)

    p = sub.add_parser("verify-tables", help="check catalog entries and their constructions")
    p.add_argument("--tables", nargs="+", default=["2..8"], help="e.g. 2 3, 2,3 or 2..6")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--checks", choices=CHECK_MODES, default="all",
                   help="'jd' skips bijection, uniqueness and reduction checks")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("discover", help="search all minus-antipodal shadings of 123/132")
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("bijection-trace", help="swap sequence of a pair's registered map")
    p.add_argument("pair", help="catalog id, or 'box-lemma' for the length-2 chain pair")
    p.add_argument("permutation")
    p.set_defaults(func=cmd_bijection_trace)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "nmax", 1) < 1:
        parser.error("--nmax must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"meshpat {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
