import json
import logging

from etaq.commands.output import parse_rational
from etaq.services.registry import find_record
from etaq.services.verify import sturm_bound
from etaq.utils.errors import UsageError

logger = logging.getLogger("sturm_command")


def register(subparsers):
    parser = subparsers.add_parser("sturm", help="Sturm bound for (weight, level) or a registry record")
    parser.add_argument("id", nargs="?", default=None, help="registry id")
    parser.add_argument("--weight", type=parse_rational, default=None)
    parser.add_argument("--level", type=int, default=None)
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    if args.id is not None:
        meta = find_record(args.id).meta
        weight, level = meta.weight, meta.level
    elif args.weight is not None and args.level is not None:
        weight, level = args.weight, args.level
    else:
        raise UsageError("give a registry id or both --weight and --level")
    try:
        bound = sturm_bound(weight, level)
    except ValueError as e:
        raise UsageError(str(e)) from e
    print(json.dumps({"weight": str(weight), "level": level, "bound": bound}))
    return 0
