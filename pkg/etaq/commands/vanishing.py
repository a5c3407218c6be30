import logging

from etaq.commands.output import add_common_options, emit_reports
from etaq.config import VANISHING_LIMIT
from etaq.models.cli import CliConfig
from etaq.services.registry import FAMILIES, find_family
from etaq.services.verify import crosscheck_vanishing

logger = logging.getLogger("vanishing_command")

COLUMNS = ["id", "status", "checked", "zero_count", "nonzero_count", "mismatches"]


def register(subparsers):
    parser = subparsers.add_parser("vanishing", help="cross-check a zero pattern against its predicate")
    parser.add_argument("--family", required=True, help='family id, alias, eta-spec, or "all"')
    add_common_options(parser, limit_default=VANISHING_LIMIT, jobs=True)
    parser.add_argument("--include-n0", action="store_true", help="also check the constant term")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    config = CliConfig(
        command="vanishing",
        spec=args.family,
        limit=args.limit,
        format=args.format,
        jobs=args.jobs,
        include_n0=args.include_n0,
    )
    families = FAMILIES if config.spec == "all" else [find_family(config.spec)]
    reports = [crosscheck_vanishing(f, config.limit, config.jobs, config.include_n0) for f in families]
    failed = [r.id for r in reports if r.status != "PASS"]
    if failed:
        logger.error(f"Zero pattern mismatch in {', '.join(failed)}")
    emit_reports(reports, config.format, COLUMNS, many=config.spec == "all")
    return 1 if failed else 0
