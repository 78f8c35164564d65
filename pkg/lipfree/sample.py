"""
Generate random instances
"""

import random

from . import metric
from .config import RunConfig, write_report
from .error import error
from .parser import dumps, encode_coeffs, encode_space
from .samples import random_projection, random_space


def run(args) -> int:
    config = RunConfig.from_args("sample", args)
    if args.points < 1:
        error("--points", "sample", "a space needs at least its base point")
        return 2
    rng = random.Random("%s:sample" % config.seed)
    if args.kind == "path":
        space = metric.path_space(args.points - 1)
    elif args.kind == "equilateral":
        space = metric.equilateral_space(args.points)
    else:
        space = random_space(rng, args.points)
    if args.projection:
        basis, pi = random_projection(rng, space)
        out = {
            "space": encode_space(space),
            "basis": [encode_coeffs(v) for v in basis],
            "pi": [encode_coeffs(v) for v in pi],
        }
    else:
        out = encode_space(space)
    write_report(config, dumps(out))
    return 0


def setup(subparsers) -> None:
    cmd = subparsers.add_parser("sample", help="Write a random or standard space")
    cmd.add_argument("kind", nargs="?", default="random", choices=["random", "path", "equilateral"])
    cmd.add_argument("-n", "--points", type=int, default=5, help="number of points")
    cmd.add_argument("--seed", default="0")
    cmd.add_argument("--projection", action="store_true", help="emit a basis file with a projection")
    cmd.add_argument("-o", "--output", help="write the space here")
    cmd.set_defaults(func=run)
