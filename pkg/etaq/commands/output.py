"""Report rendering shared by the subcommands."""
import json
from fractions import Fraction
from typing import List, Optional, Sequence

from pydantic import BaseModel

from etaq.config import CACHE_DIR, DEFAULT_JOBS, DEFAULT_LIMIT


def add_common_options(parser, limit_default=DEFAULT_LIMIT, jobs: bool = False):
    parser.add_argument("--limit", type=int, default=limit_default)
    parser.add_argument("--format", choices=["json", "table"], default="json")
    if jobs:
        parser.add_argument("--jobs", type=int, default=DEFAULT_JOBS)


def add_cache_options(parser):
    parser.add_argument("--cache-dir", default=CACHE_DIR, help="coefficient cache directory (ETAQ_CACHE_DIR)")
    parser.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")


def resolve_cache_dir(args) -> Optional[str]:
    return None if args.no_cache else args.cache_dir


def parse_rational(text: str) -> Fraction:
    """argparse type for "4/3" or "8"."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def emit_reports(reports: Sequence[BaseModel], fmt: str, columns: List[str], many: bool = False) -> None:
    """Print one report (or a list when many) as JSON, or one table row per report."""
    if fmt == "json":
        if many:
            print(json.dumps([r.model_dump(mode="json") for r in reports], indent=2))
        else:
            print(reports[0].model_dump_json(indent=2))
        return
    print("\t".join(columns))
    for r in reports:
        row = r.model_dump(mode="json")
        cells = []
        for col in columns:
            value = row.get(col)
            if col == "mismatches":
                value = value[0]["n"] if value else "-"
            cells.append("-" if value is None else str(value))
        print("\t".join(cells))
