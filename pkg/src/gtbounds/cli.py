"""Command-line front end.

Subcommands: bound, sweep, verify, simulate, gap, probe.
Exit codes: 0 success, 1 verification failure, 2 argument error, 3 I/O error.
Every subcommand is deterministic given its full argument list; the
GTBOUNDS_SEED environment variable supplies the default seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .adaptive import SimConfig, simulate
from .bounds import (
    DELTA_STAR,
    CurveRow,
    adaptive_rate,
    adaptivity_gap,
    best_lower_bound,
    counting_bound,
    crossover_delta,
    individual_testing_bound,
    main_bound,
    quantization_bound,
    simplex_probe,
    sweep,
)
from .errors import CrossoverNotFoundError
from .suite import DEFAULT_SEED, run_suite

CSV_HEADER = (
    "delta,epsilon,counting,quantization,individual,main,"
    "main_argmin_k,adaptive_rate,best_lower,gap_flag"
)


def _default_seed() -> int:
    raw = os.environ.get("GTBOUNDS_SEED", "")
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1), got {text}")
    return value


def _error_probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1), got {text}")
    return value


def _nonneg_float(text: str) -> float:
    value = float(text)
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _fmt(value: float | int | bool | None) -> str:
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.9g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gtbounds",
        description="Group-testing converse bounds: evaluate, sweep, verify, simulate.",
    )
    parser.add_argument("--version", action="version", version=f"gtbounds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate every bound at one (delta, epsilon)")
    p.add_argument("--delta", type=_probability, required=True)
    p.add_argument("--epsilon", type=_error_probability, default=0.0)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="sweep a delta grid to CSV (and optionally SVG)")
    p.add_argument("--min", dest="grid_min", type=_probability, default=0.01)
    p.add_argument("--max", dest="grid_max", type=_probability, default=0.49)
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--epsilon", type=_error_probability, default=0.0)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--format", choices=("csv", "svg"), default="csv",
                   help="svg additionally renders the figure next to the CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the exact-oracle verification suite")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--max-n", type=_positive_int, default=12)
    p.add_argument("--tolerance", type=_nonneg_float, default=1e-12)
    p.add_argument("--cases", type=_positive_int, default=500)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo the adaptive pair screen")
    p.add_argument("--n", type=_positive_int, default=1000)
    p.add_argument("--delta", type=_probability, required=True)
    p.add_argument("--trials", type=_positive_int, default=400)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gap", help="locate the adaptivity-gap interval")
    p.add_argument("--epsilon", type=_error_probability, default=0.0)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("probe", help="probe mixtures of row weights vs the best vertex")
    p.add_argument("--delta", type=_probability, required=True)
    p.add_argument("--rate", type=_nonneg_float, default=1.0)
    p.add_argument("--kmax", type=_positive_int, default=6)
    p.add_argument("--resolution", type=int, default=200)
    p.set_defaults(func=cmd_probe)

    return parser


def cmd_bound(args: argparse.Namespace) -> int:
    d, e = args.delta, args.epsilon
    print(f"delta={_fmt(d)} epsilon={_fmt(e)}")
    print(f"counting       {_fmt(counting_bound(d, e).value)}")
    print(f"quantization   {_fmt(quantization_bound(d, e).value)}")
    ind = individual_testing_bound(d, e)
    if ind.applicable:
        print(f"individual     {_fmt(ind.value)}")
    else:
        print(f"individual     NA (applies only for delta >= {_fmt(DELTA_STAR)})")
    main = main_bound(d, e)
    suffix = f"  argmin_k={main.argmin_k} k_scan_limit={main.k_scan_limit}"
    if main.vacuous:
        suffix = "  (vacuous: epsilon >= H(delta))"
    print(f"main           {_fmt(main.value)}{suffix}")
    print(f"best_lower     {_fmt(best_lower_bound(d, e).value)}")
    print(f"adaptive_rate  {_fmt(adaptive_rate(d).value)}")
    return 0


def _grid(grid_min: float, grid_max: float, step: float) -> list[float]:
    count = int(round((grid_max - grid_min) / step))
    return [grid_min + i * step for i in range(count + 1)]


def _csv_line(row: CurveRow) -> str:
    if row.error is not None:
        tail = ",".join(["NA"] * 8)
        return f"{_fmt(row.delta)},{_fmt(row.epsilon)},{tail}"
    fields = (
        row.delta, row.epsilon, row.counting, row.quantization, row.individual,
        row.main, row.main_argmin_k, row.adaptive_rate, row.best_lower, row.gap_flag,
    )
    return ",".join(_fmt(f) for f in fields)


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.step <= 0:
        print("error: --step must be > 0", file=sys.stderr)
        return 2
    if args.grid_min > args.grid_max:
        print("error: --min must be <= --max", file=sys.stderr)
        return 2
    rows = sweep(_grid(args.grid_min, args.grid_max, args.step), args.epsilon)
    text = "\n".join([CSV_HEADER] + [_csv_line(r) for r in rows]) + "\n"
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(rows)} rows to {args.out}")
    if args.format == "svg":
        from .plotting import save_sweep_figure

        svg_path = str(Path(args.out).with_suffix(".svg"))
        try:
            save_sweep_figure(rows, svg_path)
        except OSError as exc:
            print(f"error: cannot write {svg_path}: {exc}", file=sys.stderr)
            return 3
        print(f"wrote figure to {svg_path}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_suite(
        seed=args.seed, max_n=args.max_n, tolerance=args.tolerance, cases=args.cases
    )
    for record in result.records:
        print(record.line())
    status = "PASS" if result.passed else "FAIL"
    print(f"suite {status}: {result.checks_run} checks, "
          f"{len(result.failures())} failures")
    return 0 if result.passed else 1


def cmd_simulate(args: argparse.Namespace) -> int:
    config = SimConfig(n=args.n, delta=args.delta, trials=args.trials, seed=args.seed)
    report = simulate(config)
    print(f"n={args.n} delta={_fmt(args.delta)} trials={args.trials} seed={args.seed}")
    print(f"tests_per_item_mean={_fmt(report.mean_tests_per_item)}")
    print(f"tests_per_item_stderr={_fmt(report.stderr)}")
    print(f"formula_tests_per_item={_fmt(report.formula_value)}")
    print(f"z_score={_fmt(report.z_score)}")
    print(f"decoding_errors={report.error_count}")
    for record in report.records():
        print(record.line())
    return 0


def cmd_gap(args: argparse.Namespace) -> int:
    interval = adaptivity_gap(args.epsilon)
    if interval is None:
        print(f"empty interval: the bound never forces t/n = 1 at epsilon={_fmt(args.epsilon)}")
        return 0
    lo, hi = interval
    print(f"crossover_delta={lo:.5f}")
    print(f"individual_cutoff={hi:.5f}")
    print(f"adaptivity_gap=({lo:.5f}, {hi:.5f})")
    return 0


def cmd_probe(args: argparse.Namespace) -> int:
    if args.resolution < 10:
        print("error: --resolution must be >= 10", file=sys.stderr)
        return 2
    result = simplex_probe(args.delta, args.rate, args.kmax, args.resolution)
    print(f"delta={_fmt(args.delta)} rate={_fmt(args.rate)} "
          f"kmax={args.kmax} resolution={args.resolution}")
    print(f"vertex_max={_fmt(result.vertex_max)}")
    print(f"simplex_max={_fmt(result.simplex_max)}")
    print(f"gap={_fmt(result.gap)}")
    print("weights=" + ",".join(_fmt(w) for w in result.weights))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CrossoverNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
