"""
typlab - typicality lab for one-parameter families of interval maps

Command-line entry point:

    python -m src.main <subcommand> [flags]
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from src.cli import ConfigError, execute, parse_config
from src.cli.commands import EXIT_CONFIG_ERROR
from src.cli.config import FAMILIES, PATHS, SUBCOMMANDS
from src.config.settings import ENV_PREFIX, TOOL_NAME, TOOL_VERSION, Defaults

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

# flag dest -> RunConfig field
FLAG_FIELDS = {
    "family": "family",
    "out": "out",
    "seed": "seed",
    "n": "n",
    "bins": "bins",
    "depth": "depth",
    "jmax": "j_max",
    "threads": "threads",
    "a": "a",
    "a0": "a0",
    "a1": "a1",
    "a2": "a2",
    "path": "path",
    "g": "g",
    "curve": "curve",
    "params": "params",
    "threshold": "threshold",
    "burn_in": "burn_in",
    "grid_size": "grid_size",
    "grid_points": "grid_points",
    "interval": "interval",
    "test_interval": "test_intervals",
    "tol": "tol",
    "max_iter": "max_iter",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Typicality experiments for one-parameter families of piecewise expanding maps.",
        epilog=f"Every flag can also be set through {ENV_PREFIX}<FIELD> environment variables.",
    )
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--family", choices=FAMILIES, help="Family preset (default: markov)")
    p.add_argument("--path", choices=PATHS, help="Skew tent slope path (default: symmetric)")
    p.add_argument("--g", help="Markov homeomorphism: identity or quadratic:<c>")
    p.add_argument("--interval", help="Parameter interval lo,hi overriding the preset")
    p.add_argument("--curve", help="X map, e.g. constant:1, linear:0.7,-0.7, reciprocal:1, markov_period_two")
    p.add_argument("--params", help="Comma-separated parameters for sweeps and kneading paths")
    p.add_argument("--test-interval", dest="test_interval", action="append",
                   help="Test set B as lo,hi (repeatable)")
    p.add_argument("--a", type=float, help="Parameter for density and orbit")
    p.add_argument("--a0", type=float, help="Parameter for transversality")
    p.add_argument("--a1", type=float, help="Lower parameter for check-iii")
    p.add_argument("--a2", type=float, help="Upper parameter for check-iii")
    p.add_argument("--n", type=int, help=f"Orbit length (default: {Defaults.get_default('n')})")
    p.add_argument("--bins", type=int, help=f"Ulam bins (default: {Defaults.get_default('bins')})")
    p.add_argument("--depth", type=int, help=f"Partition or kneading depth (default: {Defaults.get_default('depth')})")
    p.add_argument("--jmax", type=int, help=f"Deepest iterate (default: {Defaults.get_default('j_max')})")
    p.add_argument("--grid-size", dest="grid_size", type=int,
                   help=f"Parameter grid size (default: {Defaults.get_default('grid_size')})")
    p.add_argument("--grid-points", dest="grid_points", type=int,
                   help=f"x samples when building a family (default: {Defaults.get_default('grid_points')})")
    p.add_argument("--seed", type=int, help=f"Seed for random parameters (default: {Defaults.get_default('seed')})")
    p.add_argument("--threshold", type=float,
                   help=f"Kolmogorov distance that passes (default: {Defaults.get_default('threshold')})")
    p.add_argument("--burn-in", dest="burn_in", type=int,
                   help=f"Discarded orbit points (default: {Defaults.get_default('burn_in')})")
    p.add_argument("--tol", type=float, help=f"Power iteration tolerance (default: {Defaults.get_default('tol')})")
    p.add_argument("--max-iter", dest="max_iter", type=int,
                   help=f"Power iteration cap (default: {Defaults.get_default('max_iter')})")
    p.add_argument("--out", help="Output directory (default: out)")
    p.add_argument("--threads", type=int, help="Worker processes (default: all logical CPUs)")
    p.add_argument("--serial", action="store_true", default=None, help="Run in-process")
    p.add_argument("--verbose", action="store_true", help="Debug logging")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)

    overrides = {field: getattr(args, dest) for dest, field in FLAG_FIELDS.items()}
    overrides["serial"] = args.serial
    try:
        config = parse_config(args.subcommand, args.config, overrides, os.environ)
    except ConfigError as e:
        logger.error("Invalid config: %s", e)
        return EXIT_CONFIG_ERROR

    logger.info("%s %s: %s (config %s)", TOOL_NAME, TOOL_VERSION, config.subcommand, config.config_hash[:12])
    return execute(config)


if __name__ == "__main__":
    sys.exit(main())
