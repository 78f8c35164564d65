"""
Doubling constant report of a space
"""

import csv
import io

from .config import RunConfig, add_numeric_argument, write_report
from .covering import CoverError, doubling_constant, uniform_discreteness
from .error import error
from .parser import ParseError, dumps, read_input
from .util import format_rational, parse_index_list, parse_rational


def write_csv(path: str, report, config: RunConfig) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scale", "count", "exact"])
    for e in report.entries:
        w.writerow([config.number(e.scale), e.count, "yes" if e.exact else "no"])
    if path == "-":
        print(buf.getvalue(), end="")
    else:
        with open(path, "w") as f:
            f.write(buf.getvalue())


def doubling(path: str, args, config: RunConfig) -> int:
    try:
        p = read_input(path)
        space = p.valid_space(p.root(), p.documents.root)
        scales = None
        if args.scales is not None:
            try:
                scales = [parse_rational(s) for s in parse_index_list(args.scales)]
            except (ValueError, ZeroDivisionError) as err:
                raise ParseError("--scales", str(err), "scales") from None
    except ParseError as err:
        err.describe()
        return 2
    try:
        report = doubling_constant(space, config.threshold, scales, not args.no_assouad)
    except CoverError as err:
        err.describe(path)
        return 2

    out = {
        "points": len(space),
        "threshold": config.threshold,
        "scales": [
            {
                "scale": config.number(e.scale),
                "count": e.count,
                "center": space.points[e.center],
                "exact": e.exact,
            }
            for e in report.entries
        ],
        "constant": report.constant,
        "exact": report.exact,
    }
    if len(space) >= 2:
        theta, diameter = uniform_discreteness(space)
        out["theta"] = config.number(theta)
        out["diameter"] = config.number(diameter)
        out["ratio"] = config.number(diameter / theta)
    if not args.no_assouad:
        a = report.assouad
        out["assouad_estimate"] = None
        if a is not None:
            out["assouad_estimate"] = {
                "value": round(a.value, 12),
                "count": a.count,
                "center": space.points[a.center],
                "R": format_rational(a.big),
                "r": format_rational(a.small),
                "note": "estimate over the scale grid, not the dimension",
            }
    if not report.exact:
        error(path, "doubling", "some counts are greedy upper bounds", "Warning")
    if args.csv:
        write_csv(args.csv, report, config)
    if args.csv != "-":
        write_report(config, dumps(out))
    return 0


def run(args) -> int:
    return doubling(args.space, args, RunConfig.from_args("doubling", args, args.space))


def setup(subparsers) -> None:
    cmd = subparsers.add_parser("doubling", help="Covering numbers and doubling constant")
    cmd.add_argument("space", help="space file")
    cmd.add_argument("--scales", help="comma separated radii instead of the distance grid")
    cmd.add_argument(
        "--exact-threshold",
        type=int,
        help="largest ball solved exactly (default $LIPFREE_EXACT_THRESHOLD or 20)",
    )
    cmd.add_argument("--csv", help="also write scale,count,exact rows here, - for stdout")
    cmd.add_argument("--no-assouad", action="store_true", help="skip the Assouad estimate")
    cmd.add_argument("-o", "--output", help="write the report here")
    add_numeric_argument(cmd)
    cmd.set_defaults(func=run)
