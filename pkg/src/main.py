#!/usr/bin/env python3
"""
witnesskit - Main Entry Point

Entanglement criteria, finite-rank witnesses and separating-plane search
for bipartite states.

Usage:
    python src/main.py check STATE [--witness W] [--truncate N] [--json]
    python src/main.py witness construct STATE (--special | --corollary --k0 K | --hyperplane)
    python src/main.py witness evaluate W STATE [STATE ...]
    python src/main.py witness certify W [--output PATH]
    python src/main.py reproduce {shift-family,cyclic-bell,cyclic-ppt}

Exit codes: 0 completed, 1 a reproduction row failed, 2 input or config error.
"""

import argparse
import os
import sys
from typing import List, Optional

# Add src to path for imports
src_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, src_dir)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _numeric_flags(parser: argparse.ArgumentParser, truncate: bool = True) -> None:
    parser.add_argument("--tol", type=float, help="Reporting tolerance")
    parser.add_argument("--restarts", type=int, help="See-saw restarts")
    parser.add_argument("--seed", type=int, help="Random seed for all stochastic steps")
    if truncate:
        parser.add_argument("--truncate", type=int, metavar="N",
                            help="Truncate to the leading N x N block")
    parser.add_argument("--json", action="store_true", help="Emit JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="witnesskit",
                                     description="Bipartite entanglement witness toolkit")
    parser.add_argument("--config", help="Settings file (default ~/.witnesskit/config.yaml)")
    parser.add_argument("--log-level", default="WARNING", choices=LOG_LEVELS)
    parser.add_argument("--log-file", help="Also write log records here")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Run every criterion on a state file")
    check.add_argument("state")
    check.add_argument("--witness", help="Witness file to evaluate as well")
    _numeric_flags(check)

    witness = commands.add_parser("witness", help="Construct, evaluate or certify witnesses")
    actions = witness.add_subparsers(dest="action", required=True)

    construct = actions.add_parser("construct", help="Build a witness for a state")
    construct.add_argument("state")
    method = construct.add_mutually_exclusive_group(required=True)
    method.add_argument("--special", dest="method", action="store_const", const="special")
    method.add_argument("--corollary", dest="method", action="store_const", const="corollary")
    method.add_argument("--hyperplane", dest="method", action="store_const", const="hyperplane")
    construct.add_argument("--k0", type=int, help="1-based term index for --corollary")
    construct.add_argument("--output", help="Witness file to write")
    _numeric_flags(construct, truncate=False)

    evaluate = actions.add_parser("evaluate", help="Print Tr(W rho) for each state")
    evaluate.add_argument("witness")
    evaluate.add_argument("states", nargs="+")
    _numeric_flags(evaluate)

    certify = actions.add_parser("certify", help="Attach a certification block")
    certify.add_argument("witness")
    certify.add_argument("--output", help="Write here instead of rewriting the input")
    _numeric_flags(certify, truncate=False)

    reproduce = commands.add_parser("reproduce", help="Rerun a worked example")
    reproduce.add_argument("name", metavar="SCENARIO")
    _numeric_flags(reproduce, truncate=False)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, dispatch one command and print its output.

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)

    # Import here after path setup
    from core.errors import ConfigError
    from tools import COMMANDS
    from utils import set_color_enabled, setup_logging
    from utils.settings import load_settings

    setup_logging(args.log_level, args.log_file)
    if args.json or not sys.stdout.isatty():
        set_color_enabled(False)

    overrides = {
        "tolerances.report": args.tol,
        "optimizer.restarts": args.restarts,
        "optimizer.seed": args.seed,
    }
    try:
        settings = load_settings(args.config, overrides)
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2

    if args.command == "check":
        code, output = COMMANDS["check"](args.state, settings, args.truncate, args.witness,
                                         args.json)
    elif args.command == "reproduce":
        code, output = COMMANDS["reproduce"](args.name, settings, args.json)
    elif args.action == "construct":
        code, output = COMMANDS["witness construct"](args.state, args.method, settings,
                                                     args.k0, args.output, args.json)
    elif args.action == "evaluate":
        code, output = COMMANDS["witness evaluate"](args.witness, args.states, settings,
                                                    args.truncate, args.json)
    else:
        code, output = COMMANDS["witness certify"](args.witness, settings, args.output,
                                                   args.json)

    print(output, file=sys.stderr if code == 2 else sys.stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
