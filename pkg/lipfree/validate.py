"""
Validate a space file
"""

from . import metric
from .config import RunConfig, write_report
from .error import error
from .parser import ParseError, dumps, read_input


def validate(path: str, config: RunConfig) -> int:
    try:
        p = read_input(path)
        space = p.space(p.root(), p.documents.root)
    except ParseError as err:
        err.describe()
        return 2
    violations = metric.validate(space)
    for v in violations:
        error(path, "metric", v.describe(space), "Violation")
    write_report(
        config,
        dumps(
            {
                "valid": not violations,
                "points": len(space),
                "violations": [v.describe(space) for v in violations],
            }
        ),
    )
    return 1 if violations else 0


def run(args) -> int:
    return validate(args.space, RunConfig.from_args("validate", args, args.space))


def setup(subparsers) -> None:
    cmd = subparsers.add_parser("validate", help="Check the metric axioms of a space")
    cmd.add_argument("space", help="space file, - for standard input")
    cmd.add_argument("-o", "--output", help="write the report here")
    cmd.set_defaults(func=run)
