import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from etaq.commands import cache, expand, scan, sturm, vanishing, verify
from etaq.config import APP_DESCRIPTION, APP_TITLE, APP_VERSION, LOG_FORMAT, LOG_LEVEL
from etaq.utils.errors import EtaqError

logger = logging.getLogger("etaq")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=APP_TITLE, description=APP_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"{APP_TITLE} {APP_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Include commands
    for command in (expand, verify, vanishing, scan, sturm, cache):
        command.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch to the command handler and map errors to exit codes."""
    logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT, stream=sys.stderr)
    # C(n) of large eta-quotients exceed the default 4300-digit int/str limit
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except EtaqError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except ValidationError as e:
        logger.error(f"Invalid options: {e.errors()[0]['msg']}")
        return 2
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(run())
