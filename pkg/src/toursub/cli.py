"""Command-line entry point.

Exit codes: 0 success, 1 usage/precondition errors, 2 structured negative
(verification failed, finder returned a failure trace, oracle proved
non-containment), 3 oracle node budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .complete_finder import (
    find_complete_subdivision,
    find_digraph_subdivision,
)
from .core import format_tournament, generate, parse_tournament, tournament_hash
from .errors import FailureTrace, ToursubError
from .experiments import (
    COMPLETE_COLUMNS,
    SCAN_DK_COLUMNS,
    TT_COLUMNS,
    sweep_complete,
    sweep_onesub,
    sweep_tt3,
    write_csv,
)
from .oracle import DEFAULT_BUDGET, OracleQuery, oracle_subdivision, scan_d_lower
from .params import FinderParams
from .subdivision import (
    dump_witness,
    parse_pattern,
    verify,
    witness_from_json,
)
from .transitive_finder import find_one_subdivision, find_tt_len3

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2
EXIT_BUDGET = 3


def _read_tournament(path: str):
    with open(path) as fh:
        return parse_tournament(fh.read())


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _range(text: str):
    """Parse '6..10' or '7' into a list of ints."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _write_witness(path, host, sub) -> None:
    with open(path, "w") as fh:
        fh.write(dump_witness(host, sub))


def cmd_gen(args) -> int:
    t = generate(args.kind, args.n, args.seed)
    text = format_tournament(t)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    host = _read_tournament(args.input)
    with open(args.witness) as fh:
        doc = json.load(fh)
    sub, host_hash = witness_from_json(doc)
    if host_hash and host_hash != tournament_hash(host):
        print("witness host hash does not match the input tournament", file=sys.stderr)
        return EXIT_NEGATIVE
    report = verify(host, sub, max_len=args.max_len, exact_len=args.exact_len)
    out = {
        "valid": report.valid,
        "l1": report.l1,
        "l2": report.l2,
        "span": report.span,
        "violations": list(report.violations),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK if report.valid else EXIT_NEGATIVE


def cmd_find(args) -> int:
    host = _read_tournament(args.input)
    if args.finder == "complete":
        params = FinderParams(k=args.k, scale=args.scale)
        outcome = find_complete_subdivision(host, args.k, params)
        cap = {"max_len": 3}
    elif args.finder == "digraph":
        pattern = parse_pattern(args.pattern)
        params = FinderParams(k=pattern.k, scale=args.scale)
        outcome = find_digraph_subdivision(host, pattern, params)
        cap = {"max_len": 3}
    elif args.finder == "tt3":
        params = FinderParams(k=args.k, scale=args.scale)
        outcome = find_tt_len3(host, args.k, params)
        cap = {"max_len": 3}
    else:
        params = FinderParams(k=args.k, scale=args.scale)
        outcome = find_one_subdivision(host, args.k, params)
        cap = {"max_len": 2, "exact_len": 2}

    if isinstance(outcome, FailureTrace):
        print(json.dumps({"failure": outcome.to_json()}, indent=2))
        return EXIT_NEGATIVE
    report = verify(host, outcome, **cap)
    if not report.valid:
        print(f"internal error: finder produced an invalid witness: {report.violations[:5]}",
              file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        _write_witness(args.out, host, outcome)
    else:
        sys.stdout.write(dump_witness(host, outcome))
    return EXIT_OK


def cmd_oracle(args) -> int:
    host = _read_tournament(args.input)
    pattern = parse_pattern(args.pattern)
    query = OracleQuery(
        pattern=pattern,
        max_len=args.max_len,
        exact_len=args.exact_len,
        node_budget=args.budget,
    )
    outcome = oracle_subdivision(host, query)
    print(json.dumps({"status": outcome.status, "nodes": outcome.nodes}, indent=2))
    if outcome.status == "found":
        if args.out:
            _write_witness(args.out, host, outcome.subdivision)
        else:
            sys.stdout.write(dump_witness(host, outcome.subdivision))
        return EXIT_OK
    if outcome.status == "not_found":
        return EXIT_NEGATIVE
    return EXIT_BUDGET


def cmd_experiment(args) -> int:
    if args.experiment == "scan-dk":
        rows = scan_d_lower(args.k, _range(args.n), args.trials, args.seed,
                            max_len=args.max_len, budget=args.budget)
        config = {"k": args.k, "n": args.n, "trials": args.trials, "seed": args.seed,
                  "max_len": args.max_len}
        write_csv(args.out, "scan-dk-v1", config, rows, SCAN_DK_COLUMNS)
        noncontain = [r["delta_plus"] for r in rows if not r["contains"]]
        print(f"max delta+ among non-containing hosts: {max(noncontain) if noncontain else 'none'}")
        return EXIT_OK

    if args.experiment == "soundness-sweep":
        config = {"finder": args.finder, "k": args.k, "trials": args.trials, "n": args.n,
                  "scale": str(args.scale), "seed": args.seed}
        if args.finder == "complete":
            rows, chains, bad = sweep_complete(args.k, args.trials, args.n, args.scale,
                                               args.seed, workers=args.workers)
            write_csv(args.out, "soundness-complete-v1", config, rows, COMPLETE_COLUMNS)
        elif args.finder == "tt3":
            rows, bad = sweep_tt3(args.k, args.trials, args.n, args.scale, args.seed,
                                  workers=args.workers)
            write_csv(args.out, "soundness-tt3-v1", config, rows, TT_COLUMNS)
        else:
            rows, bad = sweep_onesub(args.k, args.trials, args.n, args.scale, args.seed,
                                     workers=args.workers)
            write_csv(args.out, "soundness-onesub-v1", config, rows, TT_COLUMNS)
        wit = sum(1 for r in rows if r["outcome"] == "witness")
        print(f"{wit}/{len(rows)} witnesses; soundness violations: {len(bad)}")
        if bad:
            for b in bad[:5]:
                print("  UNSOUND:", b, file=sys.stderr)
            return EXIT_ERROR
        return EXIT_OK

    # tt-span: success rate and spans of the length-3 transitive finder.
    rows, bad = sweep_tt3(args.k, args.trials, args.n, args.scale, args.seed,
                          workers=args.workers)
    config = {"k": args.k, "trials": args.trials, "n": args.n,
              "scale": str(args.scale), "seed": args.seed}
    write_csv(args.out, "tt-span-v1", config, rows, TT_COLUMNS)
    spans = [r["span"] for r in rows if r["outcome"] == "witness"]
    if spans:
        print(f"spans: min {min(spans)} max {max(spans)} over {len(spans)} witnesses")
    else:
        print("no witnesses")
    return EXIT_ERROR if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toursub")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a tournament file")
    p.add_argument("--kind", required=True,
                   choices=["random", "transitive", "rotational", "blowup_cyclic_triangle"])
    p.add_argument("--n", type=int, required=True,
                   help="vertex count (class size for the blow-up)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a witness file against a tournament")
    p.add_argument("--input", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--exact-len", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("find", help="run a constructive finder")
    p.add_argument("finder", choices=["complete", "digraph", "tt3", "onesub"])
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--pattern", default=None, help="pattern spec for the digraph finder")
    p.add_argument("--scale", type=_fraction, default=Fraction(1))
    p.add_argument("--seed", type=int, default=0,
                   help="recorded for reproducibility; the finders are deterministic")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("oracle", help="exact subdivision search")
    p.add_argument("--input", required=True)
    p.add_argument("--pattern", required=True, help="e.g. complete:3 or transitive:4")
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--exact-len", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("experiment", help="batch experiments with CSV output")
    p.add_argument("experiment", choices=["scan-dk", "soundness-sweep", "tt-span"])
    p.add_argument("--finder", choices=["complete", "tt3", "onesub"], default="complete")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", default="240",
                   help="host size; scan-dk accepts a range like 6..10")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--scale", type=_fraction, default=Fraction(1, 96))
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and args.experiment != "scan-dk":
        args.n = int(args.n)
    elif args.command == "find" and args.finder == "digraph" and not args.pattern:
        parser.error("find digraph requires --pattern")
    try:
        return args.func(args)
    except ToursubError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
