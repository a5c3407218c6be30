import json
import logging

from etaq.commands.output import add_cache_options, add_common_options, resolve_cache_dir
from etaq.models.cli import CliConfig
from etaq.services.cache_service import cached_coefficients
from etaq.services.qseries import parse_eta_spec

logger = logging.getLogger("expand_command")


def register(subparsers):
    parser = subparsers.add_parser("expand", help="print C(n) of an eta-quotient for n <= limit")
    parser.add_argument("spec", help='eta-spec such as "1^-1 3^3 4^2"')
    add_common_options(parser)
    add_cache_options(parser)
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    """Print the C-series coefficients; exit 0."""
    config = CliConfig(command="expand", spec=args.spec, limit=args.limit, format=args.format, cache_dir=resolve_cache_dir(args))
    spec = parse_eta_spec(config.spec)
    logger.info(f"Expanding {spec} through n = {config.limit}")
    coeffs = cached_coefficients(spec, config.limit, config.cache_dir)
    records = [{"n": n, "value": str(c)} for n, c in enumerate(coeffs)]
    if config.format == "json":
        print(json.dumps({
            "spec": str(spec),
            "offset24": spec.offset24,
            "weight": str(spec.weight),
            "coefficients": records,
        }, indent=2))
    else:
        print("n\tC(n)")
        for r in records:
            print(f"{r['n']}\t{r['value']}")
    return 0
