"""Command-line front end.

Two subcommands: `run` executes a scenario (built-in or from a JSON
config) and emits the per-iterate table as CSV or JSON; `degrees`
estimates dynamical degrees for a map given directly on the command
line, or exactly for a monomial map given by its exponent matrix.

Exit codes: 0 success, 1 bad input or configuration, 2 the computation
finished but raised at least one flag (truncated orbit, ambiguous mode,
failed cross-check, ...), 3 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import random
import sys
from typing import List, Optional, Sequence

from . import __version__, degrees, experiments, polyparse, projgeom


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitgcd",
        description="gcd-type heights along orbits of self-maps of "
                    "projective space, with degree estimators")
    parser.add_argument("--version", action="version",
                        version="orbitgcd %s" % __version__)
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run a scenario and emit its report")
    src = run.add_mutually_exclusive_group()
    src.add_argument("--scenario", choices=experiments.BUILTIN_NAMES,
                     help="one of the built-in scenarios")
    src.add_argument("--config", metavar="FILE",
                     help="JSON scenario configuration")
    run.add_argument("--n-max", type=int, default=None,
                     help="override the number of iterates")
    run.add_argument("--a", type=int, default=2,
                     help="first multiplier for the diag scenario")
    run.add_argument("--b", type=int, default=3,
                     help="second multiplier for the diag scenario")
    run.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="report format (default csv)")
    run.add_argument("--out", metavar="FILE", default=None,
                     help="write the report here instead of stdout")
    run.add_argument("--seed", type=int, default=None,
                     help="random seed (default: ORBITGCD_SEED or 0)")
    run.add_argument("--threads", type=int, default=1,
                     help="accepted for compatibility; single-threaded")

    deg = sub.add_parser("degrees", help="degree estimates for a map")
    deg.add_argument("--map", metavar="COMPS",
                     help="';'-separated homogeneous components in x0,x1,...")
    deg.add_argument("--matrix", metavar="ROWS",
                     help="monomial exponent matrix, rows ';'-separated, "
                          "entries ','-separated, e.g. '2,1;0,3'")
    deg.add_argument("--n-max", type=int, default=6,
                     help="iterates for the degree sequence (default 6)")
    deg.add_argument("--budget", type=int,
                     default=projgeom.DEFAULT_DEGREE_BUDGET,
                     help="composition degree budget")
    deg.add_argument("--primes", metavar="P1,P2,...", default=None,
                     help="primes for fiber counting")
    deg.add_argument("--targets", type=int, default=10,
                     help="fiber-count targets per prime (default 10)")
    deg.add_argument("--seed", type=int, default=None,
                     help="random seed (default: ORBITGCD_SEED or 0)")
    deg.add_argument("--threads", type=int, default=1,
                     help="accepted for compatibility; single-threaded")
    return parser


def resolve_seed(cli_seed: Optional[int]) -> int:
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get("ORBITGCD_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise experiments.ConfigError(
                "ORBITGCD_SEED: %r is not an integer" % env) from None
    return 0


def _flags_sidecar_path(out_path: str) -> str:
    stem, _ = os.path.splitext(out_path)
    return stem + ".flags.json"


def cmd_run(args: argparse.Namespace, seed: int) -> int:
    if args.config:
        config = experiments.load_config_file(args.config)
        name = os.path.splitext(os.path.basename(args.config))[0]
    elif args.scenario:
        config = experiments.builtin_scenario(args.scenario, a=args.a, b=args.b)
        name = args.scenario
    else:
        raise experiments.ConfigError("run: need --scenario or --config")
    if args.n_max is not None:
        config = dataclasses.replace(config, n_max=args.n_max)

    report = experiments.run_scenario(config, name=name, seed=seed)
    if args.format == "json":
        payload = experiments.render_json(report)
    else:
        payload = experiments.render_csv(report)
    summary = experiments.render_summary(report)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        if args.format == "csv" and report.flags:
            with open(_flags_sidecar_path(args.out), "w", encoding="utf-8") as fh:
                json.dump({"scenario": report.name, "seed": report.seed,
                           "flags": list(report.flags)}, fh, indent=2,
                          sort_keys=True)
                fh.write("\n")
        sys.stdout.write(summary)
    else:
        sys.stdout.write(payload)
        sys.stderr.write(summary)
    return 2 if report.flags else 0


def _parse_matrix(text: str) -> List[List[int]]:
    rows = []
    for chunk in text.split(";"):
        try:
            rows.append([int(v) for v in chunk.split(",")])
        except ValueError:
            raise experiments.ConfigError(
                "matrix: bad row %r (want comma-separated integers)"
                % chunk) from None
    return rows


def _fiber_payload(fiber: degrees.FiberCountReport) -> dict:
    return {"histogram": [[k, v] for k, v in sorted(fiber.histogram.items())],
            "by_prime": {str(p): [[k, v] for k, v in sorted(h.items())]
                         for p, h in fiber.by_prime.items()},
            "modes": fiber.modes, "mode": fiber.mode,
            "ambiguous": fiber.ambiguous, "degenerate": fiber.degenerate,
            "failed_samples": fiber.failed_samples, "samples": fiber.samples}


def cmd_degrees(args: argparse.Namespace, seed: int) -> int:
    flags: List[str] = []
    if args.matrix:
        matrix = _parse_matrix(args.matrix)
        try:
            degs = degrees.monomial_dyn_degrees(matrix)
        except ValueError as exc:
            raise experiments.ConfigError("matrix: %s" % exc) from None
        payload = {"kind": "monomial", "matrix": matrix,
                   "monomial_degrees": degs}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 0
    if not args.map:
        raise experiments.ConfigError("degrees: need --map or --matrix")

    parts = args.map.split(";")
    arity = len(parts)
    try:
        comps = [polyparse.parse(part, arity) for part in parts]
        f = projgeom.make_map(comps)
    except (polyparse.PolyParseError, ValueError) as exc:
        raise experiments.ConfigError("map: %s" % exc) from None

    seq = degrees.degree_sequence(f, args.n_max, budget=args.budget)
    if seq.truncated:
        flags.append("degree sequence truncated by the composition budget")
    payload = {"kind": "map", "map": args.map,
               "d1_sequence": [[n, d, d ** (1.0 / n)] for n, d in seq.entries],
               "d1_estimate": degrees.d1_estimate(seq),
               "truncated": seq.truncated}
    if args.primes:
        try:
            primes = [int(p) for p in args.primes.split(",")]
        except ValueError:
            raise experiments.ConfigError(
                "primes: want comma-separated integers") from None
        fiber = degrees.topological_degree_ff(f, primes, args.targets,
                                              rng=random.Random(seed))
        payload["dN_counts"] = _fiber_payload(fiber)
        if fiber.ambiguous:
            flags.append("fiber-count mode ambiguous")
        if fiber.degenerate:
            flags.append("fiber counting degenerate")
    payload["flags"] = flags
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 2 if flags else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses status 2 for usage errors; 2 is reserved here for
        # flagged-but-successful runs, so remap
        return 0 if exc.code == 0 else 1

    try:
        seed = resolve_seed(getattr(args, "seed", None))
        sys.stderr.write("orbitgcd %s seed=%d\n" % (__version__, seed))
        if args.command == "run":
            return cmd_run(args, seed)
        if args.command == "degrees":
            return cmd_degrees(args, seed)
        parser.print_help(sys.stderr)
        return 1
    except (experiments.ConfigError, polyparse.PolyParseError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except OSError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort internal guard
        sys.stderr.write("internal error: %s: %s\n"
                         % (type(exc).__name__, exc))
        return 3


if __name__ == "__main__":
    sys.exit(main())
