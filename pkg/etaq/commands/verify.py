import logging

from etaq.commands.output import emit_reports
from etaq.config import IDENTITY_CHECK_LIMIT
from etaq.models.cli import CliConfig
from etaq.services.registry import find_record, registry
from etaq.services.verify import verify_identity

logger = logging.getLogger("verify_command")

COLUMNS = ["id", "status", "bound", "checked", "mismatches", "elapsed_ms"]


def register(subparsers):
    parser = subparsers.add_parser("verify", help="certify registry identities up to the Sturm bound")
    parser.add_argument("id", help='registry id, or "all"')
    parser.add_argument("--limit", type=int, default=None, help="check through max(limit, Sturm bound)")
    parser.add_argument("--format", choices=["json", "table"], default="json")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    """Exit 0 iff every selected record passes."""
    limit = IDENTITY_CHECK_LIMIT if args.limit is None else args.limit
    config = CliConfig(command="verify", spec=args.id, limit=limit, format=args.format)
    records = registry() if config.spec == "all" else [find_record(config.spec)]
    reports = [verify_identity(rec, config.limit) for rec in records]
    failed = [r.id for r in reports if not r.passed]
    if failed:
        logger.error(f"Failed identities: {', '.join(failed)}")
    else:
        logger.info(f"All {len(reports)} identities passed")
    emit_reports(reports, config.format, COLUMNS, many=config.spec == "all")
    return 1 if failed else 0
