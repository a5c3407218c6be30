import json
import logging

from etaq.config import CACHE_DIR, DEFAULT_LIMIT
from etaq.models.cli import CliConfig
from etaq.services.cache_service import clear_cache, list_cache, write_cache
from etaq.services.qseries import c_coefficients, parse_eta_spec
from etaq.utils.errors import UsageError

logger = logging.getLogger("cache_command")


def register(subparsers):
    parser = subparsers.add_parser("cache", help="list, build or clear coefficient caches")
    parser.add_argument("action", choices=["list", "build", "clear"])
    parser.add_argument("spec", nargs="?", default=None, help="eta-spec to build")
    parser.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    parser.add_argument("--cache-dir", default=CACHE_DIR)
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    config = CliConfig(command="cache", spec=args.spec, limit=args.limit, cache_dir=args.cache_dir)
    if args.action == "list":
        headers = list_cache(config.cache_dir)
        print(json.dumps([h.model_dump() for h in headers], indent=2))
    elif args.action == "build":
        if config.spec is None:
            raise UsageError("cache build needs an eta-spec")
        spec = parse_eta_spec(config.spec)
        path = write_cache(spec, c_coefficients(spec, config.limit), config.cache_dir)
        print(json.dumps({"spec": str(spec), "limit": config.limit, "path": path}))
    else:
        removed = clear_cache(config.cache_dir)
        print(json.dumps({"removed": removed}))
    return 0
