"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys

from .bwf import GRID_LADDER, QuadratureConvergenceError
from .config import ConfigError, load_config
from .experiments import EXPERIMENT_NAMES, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _next_ladder(n: int | None) -> int | None:
    if n is None:
        return None
    for size in GRID_LADDER:
        if size > n:
            return size
    return GRID_LADDER[-1]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scissor-sfwm",
        description=(
            "Photon-pair generation in ring-resonator sequences: compute "
            "enhancement spectra, pair efficiencies, joint spectral "
            "densities, and their scaling with ring count."
        ),
    )
    parser.add_argument("experiment", choices=EXPERIMENT_NAMES)
    parser.add_argument("--config", default=None, help="JSON config file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument(
        "--grid-points",
        type=int,
        default=None,
        help="override the frequency-grid node count (odd)",
    )
    parser.add_argument(
        "--refine",
        action="store_true",
        help="run one grid-refinement step finer than the automatic choice",
    )
    parser.add_argument(
        "--backend",
        default=None,
        choices=("auto", "compiled", "numpy"),
        help="quadrature kernel backend",
    )
    parser.add_argument(
        "--threads", type=int, default=None, help="worker threads for grid rows"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        numerics = config["numerics"]
        if args.grid_points is not None:
            numerics["grid_points"] = args.grid_points
        if args.backend is not None:
            numerics["backend"] = args.backend
        if args.threads is not None:
            numerics["threads"] = args.threads
        if args.refine:
            from .bwf import default_grids
            from .config import build_runtime

            params, model, triplet, pulse = build_runtime(config)
            if numerics["grid_points"] is None:
                grid, _ = default_grids(params, triplet, pulse)
                numerics["grid_points"] = grid.n_points
            numerics["grid_points"] = _next_ladder(numerics["grid_points"])
        paths = run_experiment(args.experiment, config, args.out)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureConvergenceError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
