"""
Command-line front end.

Usage:
    python -m cvlab fn conj f.json
    python -m cvlab val decompose Z.json f.json
    python -m cvlab suite run all --seed 7

Results go to stdout as JSON; errors go to stderr as JSON. Exit codes: 0 ok,
1 unexpected failure, 2 malformed input, 3 precondition violation, 4 falsified
property.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from .commands import TOOLS
from .config import MODES, LabConfig, load_environment, set_config
from .errors import LabError, MalformedInputError
from .serialization import report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_MALFORMED = 2
EXIT_PRECONDITION = 3
EXIT_FALSIFIED = 4

OPTION_KEYS = ("point", "factor", "eps", "rho", "nodes", "centers", "delta", "trials", "kind", "probes", "radius")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("global options")
    group.add_argument("--mode", choices=MODES, help="Arithmetic mode (CVLAB_MODE takes precedence)")
    group.add_argument("--seed", type=int, help="Seed for generators and held-out nodes")
    group.add_argument("--workers", type=int, help="Worker threads for identity checks")
    group.add_argument("--max-dim", type=int, help="Largest ambient dimension for double description")
    group.add_argument("--log-level", help="Logging level on stderr")
    group.add_argument("--progress", action="store_true", default=None, help="Show progress bars on stderr")

    options = common.add_argument_group("operation options")
    options.add_argument("--point", help='Point or epi-translation as "x1,x2,..."')
    options.add_argument("--factor", help="Scale or epi-multiplication factor")
    options.add_argument("--eps", help="Margin for replace and extend")
    options.add_argument("--rho", help="Truncation radius for dist")
    options.add_argument("--nodes", help='Decomposition nodes as "t1,t2,..."')
    options.add_argument("--centers", help='Probe centers as "x1,x2;y1,y2;..."')
    options.add_argument("--delta", help="Bump radius for support probing")
    options.add_argument("--trials", type=int, help="Trial count for verify and suites")
    options.add_argument("--kind", choices=("top_degree", "dirichlet", "max_probe"), help="Valuation kind for make")
    options.add_argument("--probes", help='Probe points for max_probe as "x1;x2;..."')
    options.add_argument("--radius", help="Radius of the l1 cone for density reconstruction")
    return common


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="cvlab", description="Exact lab for valuations on convex functions")
    common = _common_options()
    families = parser.add_subparsers(dest="family", required=True)
    for name, tool in TOOLS.items():
        sub = families.add_parser(name, parents=[common], help=tool.description.splitlines()[0])
        sub.add_argument("action", choices=tool.actions)
        sub.add_argument("inputs", nargs="*", help='JSON files ("-" reads stdin); suite names for "suite run"')
    return parser.parse_args(argv)


def _read_input(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(Path(path), encoding="utf-8") as f:
        return json.load(f)


def _configure(args: argparse.Namespace) -> LabConfig:
    load_environment()
    config = LabConfig.from_env()
    changes: Dict[str, Any] = {}
    if args.mode and not os.getenv("CVLAB_MODE"):
        changes["mode"] = args.mode
    flags = (("seed", "seed"), ("workers", "workers"), ("max_dim", "max_ambient_dim"), ("progress", "show_progress"))
    for attr, key in flags:
        value = getattr(args, attr)
        if value is not None:
            changes[key] = value
    if args.log_level:
        changes["log_level"] = args.log_level.upper()
    return set_config(config, **changes)


def _emit_error(payload: Dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def build_query(args: argparse.Namespace) -> Dict[str, Any]:
    """Turn parsed arguments into the query dict a tool runs on."""
    options = {key: getattr(args, key) for key in OPTION_KEYS if getattr(args, key) is not None}
    options["seed"] = args.seed
    if args.family == "suite":
        if args.inputs:
            options["name"] = args.inputs[0]
        inputs: List[Any] = []
    else:
        inputs = [_read_input(path) for path in args.inputs]
    return {"action": args.action, "inputs": inputs, "options": options}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    try:
        config = _configure(args)
    except (LabError, ValueError) as e:
        _emit_error({"error": "invalid config", "message": str(e)})
        return EXIT_PRECONDITION
    logging.basicConfig(
        level=getattr(logging, config.log_level, logging.WARNING),
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logger.info(f"cvlab {args.family} {args.action} in {config.mode} mode")
    try:
        result = TOOLS[args.family].run(build_query(args))
    except MalformedInputError as e:
        logger.error(f"Malformed input: {str(e)}")
        _emit_error(e.to_dict())
        return EXIT_MALFORMED
    except (json.JSONDecodeError, ValidationError, OSError) as e:
        logger.error(f"Malformed input: {str(e)}")
        _emit_error({"error": "malformed input", "message": str(e)})
        return EXIT_MALFORMED
    except LabError as e:
        logger.error(f"Precondition violated: {str(e)}")
        _emit_error(e.to_dict())
        return EXIT_PRECONDITION
    except (ValueError, ZeroDivisionError) as e:
        logger.error(f"Invalid argument: {str(e)}")
        _emit_error({"error": "invalid argument", "message": str(e)})
        return EXIT_PRECONDITION
    except Exception as e:
        logger.error(f"Error in main: {str(e)}")
        _emit_error({"error": "unexpected", "message": str(e)})
        return EXIT_UNEXPECTED
    print(json.dumps(report(result), indent=2, sort_keys=True))
    return EXIT_FALSIFIED if result.get("falsified") else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
