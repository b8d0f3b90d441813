"""Command line entry point: ``tprf spectrum|g2|sweep|validate --config FILE``."""
from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, TprfError
from .scenario import load_scenario, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3

COMMAND_TASKS = {
    "spectrum": ("spectrum",),
    "g2": ("g2",),
    "sweep": ("sweep-omega", "sweep-delta"),
    "validate": ("validate",),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="tprf", description=__doc__)
    parser.add_argument("command", choices=sorted(COMMAND_TASKS))
    parser.add_argument("--config", required=True, help="scenario JSON file")
    parser.add_argument("--out", help="output path stem (overrides the config)")
    parser.add_argument("--jobs", type=int, default=1, help="parallel sweep points")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.config)
        if scenario.task not in COMMAND_TASKS[args.command]:
            raise ConfigError(f"task: config task {scenario.task!r} does not match command {args.command!r}")
    except ConfigError as exc:
        print(f"tprf: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        paths, _ = run_scenario(scenario, out=args.out, jobs=max(1, args.jobs))
    except (TprfError, ArithmeticError, ValueError) as exc:
        print(f"tprf: {scenario.task} failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    for p in paths:
        print(p)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
