import logging

from etaq.commands.output import add_cache_options, add_common_options, emit_reports, parse_rational, resolve_cache_dir
from etaq.models.cli import CliConfig
from etaq.services.cache_service import cached_coefficients
from etaq.services.qseries import parse_eta_spec
from etaq.services.verify import SCAN_TARGETS, scan_growth_threshold, scan_nonvanishing
from etaq.utils.errors import UsageError

logger = logging.getLogger("scan_command")

COLUMNS = ["id", "status", "checked", "zeros", "non_positive", "min_g_squared", "min_g_at"]


def register(subparsers):
    parser = subparsers.add_parser("scan", help="forbidden-zero scans of f1/f2 and growth thresholds G1/G2")
    parser.add_argument("--target", required=True, choices=["f1", "f2", "G1", "G2"])
    add_common_options(parser, limit_default=50_000, jobs=True)
    parser.add_argument("--threshold", type=parse_rational, default=None, help="growth threshold, e.g. 4/3")
    parser.add_argument("--floor", type=int, default=None, help="growth scans start above this n")
    parser.add_argument("--residue", type=int, default=1, help="residue class of n mod --modulus (-1 for all n)")
    parser.add_argument("--modulus", type=int, default=3)
    parser.add_argument("--positive", action="store_true", help="also flag non-positive coefficients")
    add_cache_options(parser)
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    """Exit 1 if a forbidden zero (or a growth value at or below the threshold) is found."""
    config = CliConfig(
        command="scan",
        spec=args.target,
        limit=args.limit,
        format=args.format,
        jobs=args.jobs,
        cache_dir=resolve_cache_dir(args),
    )
    logger.info(f"Scanning {config.spec} through n = {config.limit}")
    if config.spec in SCAN_TARGETS and (args.threshold is not None or args.floor is not None):
        raise UsageError(f"--threshold and --floor apply to G1/G2, not {config.spec}")
    if config.spec in SCAN_TARGETS:
        spec, _ = SCAN_TARGETS[config.spec]
        coeffs = cached_coefficients(parse_eta_spec(spec), config.limit, config.cache_dir)
        report = scan_nonvanishing(
            config.spec,
            None if args.residue < 0 else args.residue,
            config.limit,
            modulus=args.modulus,
            jobs=config.jobs,
            coefficients=coeffs,
            require_positive=args.positive,
        )
    else:
        report = scan_growth_threshold(config.spec, config.limit, args.threshold, args.floor)
    if report.status != "PASS":
        logger.error(f"{report.id}: zeros {report.zeros[:10]}, minimum G^2 {report.min_g_squared} at {report.min_g_at}")
    emit_reports([report], config.format, COLUMNS)
    return 0 if report.status == "PASS" else 1
