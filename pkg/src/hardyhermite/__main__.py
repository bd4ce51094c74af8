# src/hardyhermite/__main__.py
from hardyhermite.utils.env import load_env

load_env()

import argparse
import logging
import sys

from pydantic import ValidationError

from hardyhermite import main
from hardyhermite.config import COMMANDS, build_run_config, load_config
from hardyhermite.exceptions import UsageError
from hardyhermite.utils.logging import setup_logging

logger = logging.getLogger("hardyhermite")


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; here that status means a failed check."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hardyhermite", description="Hermite coefficient decay in Hardy classes")
    parser.add_argument("command", choices=COMMANDS)
    width = parser.add_mutually_exclusive_group()
    width.add_argument("--t", type=float, help="decay parameter t, a = tanh 2t")
    width.add_argument("--a", type=float, help="Hardy class parameter in (0, 1)")
    parser.add_argument("--family", help="chirped | real-gaussian | basis:K")
    parser.add_argument("--n-min", dest="n_min", type=int)
    parser.add_argument("--n-max", dest="n_max", type=int)
    parser.add_argument("--method", choices=("recurrence", "quadrature", "contour", "all"))
    parser.add_argument("--rule-order", dest="rule_order", type=int, help="Gauss-Hermite nodes")
    parser.add_argument("--contour-samples", dest="contour_samples", type=int, help="minimum samples per contour")
    parser.add_argument("--grid", help="polar grid NrxNtheta for envelope checks")
    parser.add_argument("--r-max", dest="r_max", type=float)
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="report path (default <out_dir>/<command>.<format>)")
    parser.add_argument("--jobs", type=int, help="worker threads, 0 for all cores")
    parser.add_argument("--profile", help="configuration profile")
    parser.add_argument("--config-root", dest="config_root", help="directory holding config.example.yaml")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = vars(build_parser().parse_args(argv))
    except UsageError as e:
        print(f"hardyhermite: {e}", file=sys.stderr)
        return main.EXIT_USAGE

    cfg = load_config(profile=args.pop("profile"), root=args.pop("config_root"))
    setup_logging(cfg, debug=args.pop("debug"))
    try:
        config = build_run_config(args, cfg)
    except ValidationError as e:
        logger.error("Invalid arguments: %s", e)
        return main.EXIT_USAGE
    return main.run(config)


if __name__ == "__main__":
    sys.exit(run())
