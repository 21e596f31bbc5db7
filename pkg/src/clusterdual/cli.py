"""Command-line interface.

JSON goes to stdout (or ``--output``); a one-line human summary goes to
stderr.  Exit codes: 0 when everything held / nothing was found, 1 when a
violation was found, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from datetime import datetime, timezone

from .matrices import ExchangeMatrix, is_source_sink, mutate_word
from .oracles import verify_rank2_against_bfs
from .presets import PRESET_NAMES, preset
from .properties import (
    check_drm_equivalence,
    run_check,
    search_counterexample,
)
from .seeds import DEFAULT_MAX_DEPTH, DEFAULT_MAX_SEEDS, explore, parse_path, paths_up_to, seed_at
from .vectors import d_matrix_direct, m_matrix_direct

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

CHECK_PROPERTIES = {
    "D": "D",
    "R": "R",
    "M": "M",
    "source-sink": "R-source-sink",
    "sigma": "sigma",
    "MDinit": "MDinit",
    "DRM": "DRM",
}


class UsageError(Exception):
    pass


def load_matrix(args) -> ExchangeMatrix:
    try:
        if getattr(args, "preset", None):
            return preset(args.preset)
        if getattr(args, "input", None):
            with open(args.input) as fh:
                return ExchangeMatrix.from_json(json.load(fh))
        if getattr(args, "b", None):
            text = args.b.strip()
            if text.lower() in PRESET_NAMES:
                return preset(text)
            data = json.loads(text)
            return ExchangeMatrix.from_json(data) if isinstance(data, dict) else ExchangeMatrix(data)
    except (ValueError, TypeError, KeyError, OSError, OverflowError) as exc:
        raise UsageError(f"bad exchange matrix: {exc}") from exc
    raise UsageError("give an exchange matrix with --b, --input or --preset")


def _path(args):
    try:
        path = parse_path(args.path or "")
    except ValueError as exc:
        raise UsageError(f"bad path {args.path!r}: {exc}") from exc
    return path


def _check_bounds(*pairs):
    for name, value in pairs:
        if value is not None and value < 0:
            raise UsageError(f"--{name} must be nonnegative")


def cmd_mutate(args):
    B = load_matrix(args)
    path = _path(args)
    B1 = mutate_word(B, path)
    out = {"B0": B.tolist(), "path": list(path), **B1.to_json()}
    return out, EXIT_OK, f"mutated along {list(path)}"


def cmd_expand(args):
    B = load_matrix(args)
    path = _path(args)
    seed = seed_at(B, path)
    out = {
        "B0": B.tolist(),
        "path": list(seed.path),
        "B": seed.B.tolist(),
        "cluster": [x.to_json() for x in seed.cluster],
        "cluster_text": [str(x) for x in seed.cluster],
        "D": d_matrix_direct(seed).tolist(),
        "M": m_matrix_direct(seed).tolist(),
    }
    return out, EXIT_OK, f"expanded seed at {list(seed.path)}"


def cmd_check(args):
    B = load_matrix(args)
    prop = CHECK_PROPERTIES[args.property]
    _check_bounds(("depth", args.depth))
    if prop == "DRM":
        s = check_drm_equivalence(B, args.depth, root_depth=args.root_depth)
        code = EXIT_OK if s.all_total else EXIT_VIOLATION
        verdict = "all three total" if s.all_total else "violations found"
        return s.to_json(), code, f"DRM to depth {args.depth}: {verdict}; laws hold: {s.laws_hold}"

    paths = [_path(args)] if args.path is not None else list(paths_up_to(B.n, args.depth))
    if prop in ("D", "M"):
        ks = [None]
    elif args.k is not None:
        if not 1 <= args.k <= B.n:
            raise UsageError(f"--k must be in 1..{B.n}")
        if prop in ("R-source-sink", "sigma") and not is_source_sink(B, args.k):
            raise UsageError(f"direction {args.k} is not a source or sink of B")
        ks = [args.k]
    elif prop in ("R-source-sink", "sigma"):
        ks = [k for k in range(1, B.n + 1) if is_source_sink(B, k)]
        if not ks:
            raise UsageError("B has no source or sink direction")
    else:
        ks = list(range(1, B.n + 1))

    checked = passed = 0
    first = None
    extra_counts = {"signed_columns": 0, "forms_agree_when_signed": 0}
    for path in paths:
        for k in ks:
            rep = run_check(prop, B, path, k)
            checked += 1
            passed += rep.holds
            if prop == "R-source-sink" and rep.extra["signed_columns"]:
                extra_counts["signed_columns"] += 1
                extra_counts["forms_agree_when_signed"] += rep.extra["forms_agree"]
            if not rep.holds and first is None:
                first = rep.to_json()
    holds = passed == checked
    out = {
        "property": prop,
        "B0": B.tolist(),
        "depth": args.depth if args.path is None else None,
        "path": list(paths[0]) if args.path is not None else None,
        "k": args.k,
        "checked": checked,
        "passed": passed,
        "holds": holds,
        "first_failure": first,
    }
    if prop == "R-source-sink":
        out.update(extra_counts)
    summary = f"{prop}: {passed}/{checked} instances hold"
    return out, EXIT_OK if holds else EXIT_VIOLATION, summary


def cmd_explore(args):
    B = load_matrix(args)
    _check_bounds(("depth", args.depth), ("max-seeds", args.max_seeds))
    res = explore(B, max_depth=args.depth, max_seeds=args.max_seeds, threads=args.threads)
    status = "closed" if res.closed else "bound reached"
    return res.to_json(), EXIT_OK, f"{status}: {res.num_seeds} seeds, {res.num_vars} cluster variables"


def cmd_rank2(args):
    if args.b_entry < 0 or args.c_entry < 0 or args.b_entry * args.c_entry < 4:
        raise UsageError("rank2 needs nonnegative b, c with bc >= 4")
    rep = verify_rank2_against_bfs(args.b_entry, args.c_entry, args.k_max)
    code = EXIT_OK if rep.all_match else EXIT_VIOLATION
    return rep.to_json(), code, f"rank 2 (b,c)=({args.b_entry},{args.c_entry}) to t_{args.k_max}: {rep.to_json()['status']}"


def cmd_search(args):
    B = load_matrix(args)
    prop = CHECK_PROPERTIES[args.property]
    if prop == "DRM":
        raise UsageError("search takes a single property: D, R, M, source-sink, sigma or MDinit")
    _check_bounds(("depth", args.depth))
    if args.budget < 1:
        raise UsageError("--budget must be positive")
    res = search_counterexample(B, prop, args.depth, args.budget, root_depth=args.root_depth)
    code = EXIT_VIOLATION if res.witness else EXIT_OK
    return res.to_json(), code, f"{prop}: {res.to_json()['status']} after {res.checked} checks"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterdual", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--b", help="exchange matrix as JSON, e.g. '[[0,1],[-1,0]]', or a preset name")
    src.add_argument("--input", help="JSON file with {\"n\": ..., \"B\": [[...]]}")
    src.add_argument("--preset", choices=PRESET_NAMES)
    common.add_argument("--output", help="write JSON here instead of stdout")
    common.add_argument("--deterministic", action="store_true", help="omit the timestamp field")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("-v", "--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", parents=[common], help="mutate B along a word")
    p.add_argument("--path", default="")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("expand", parents=[common], help="cluster, D- and M-matrix of one seed")
    p.add_argument("--path", default="")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check", parents=[common], help="check a property over all paths up to a depth")
    p.add_argument("--property", required=True, choices=list(CHECK_PROPERTIES))
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--path", default=None, help="check this single path instead of sweeping")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--root-depth", type=int, default=1, help="DRM only: also move the initial seed this far")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("explore", parents=[common], help="breadth-first search of the exchange graph")
    p.add_argument("--depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--max-seeds", type=int, default=DEFAULT_MAX_SEEDS)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("rank2", parents=[common], help="closed-form rank-2 D-matrices against expansion")
    p.add_argument("b_entry", type=int, metavar="B")
    p.add_argument("c_entry", type=int, metavar="C")
    p.add_argument("--k-max", type=int, default=8)
    p.set_defaults(func=cmd_rank2)

    p = sub.add_parser("search", parents=[common], help="first counterexample in a fixed sweep order")
    p.add_argument("--property", required=True, choices=list(CHECK_PROPERTIES))
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--root-depth", type=int, default=None)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    start = time.perf_counter()
    try:
        out, code, summary = args.func(args)
    except UsageError as exc:
        print(f"clusterdual: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = {"command": args.command, **out}
    if not args.deterministic:
        out["generated_at"] = datetime.now(timezone.utc).isoformat()
    text = json.dumps(out, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(f"{summary} ({time.perf_counter() - start:.2f}s)", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
