"""
Build spaces, bases and witnesses
"""

import logging
import os
import random
import typing as ty

from . import equivalence, metric
from .config import RunConfig, add_numeric_argument, write_report
from .error import LipfreeError, error
from .equivalence import LinearWitness, validate_witness
from .free import label_of
from .parser import (
    ParseError,
    Parser,
    dumps,
    encode_coeffs,
    encode_space,
    encode_witness,
    parse_pairs,
    read_input,
)
from .util import parse_index_list

log = logging.getLogger(__name__)

KINDS = ["sum", "quotient", "retract", "normalize", "project", "discrete"]


def load_space(path: str) -> metric.MetricSpace:
    p = read_input(path)
    return p.valid_space(p.root(), p.documents.root)


def checked(w: LinearWitness, what: str) -> dict[str, ty.Any]:
    """Serialise a witness after checking it is invertible"""
    report = validate_witness(w)
    if not report.valid:
        raise equivalence.WitnessError(
            "%s witness is not invertible: %s" % (what, report.reason), "construct"
        )
    log.debug("%s witness: norm %s, inverse norm %s", what, report.norm, report.inverse_norm)
    return encode_witness(w)


def build(kind: str, args, config: RunConfig) -> dict[str, ty.Any]:
    space = load_space(args.inputs[0])
    if kind == "sum":
        if len(args.inputs) != 2:
            raise ParseError(args.inputs[0], "sum needs two spaces", "construct")
        return {"space": encode_space(metric.metric_sum(space, load_space(args.inputs[1])))}
    if len(args.inputs) != 1:
        raise ParseError(args.inputs[1], "%s takes one space" % kind, "construct")

    if kind == "quotient":
        if not args.cls:
            raise ParseError("--class", "quotient needs --class", "construct")
        c = [space.index(label) for label in parse_index_list(args.cls)]
        q, qm = metric.quotient(space, c, args.label)
        return {
            "space": encode_space(q),
            "map": {space.points[x]: q.points[qm(x)] for x in range(len(space))},
        }

    if kind == "retract":
        if args.map is None:
            raise ParseError("--map", "retract needs --map", "construct")
        phi = metric.PointMap.from_labels(space, space, dict(parse_pairs(args.map)))
        qw = equivalence.quotient_witness(space, phi)
        return {
            "space": encode_space(qw.coproduct.space),
            "retract": encode_space(qw.retract),
            "quotient": encode_space(qw.quotient),
            "lipschitz": config.number(phi.lipschitz),
            "witness": checked(qw.witness, "quotient"),
        }

    if kind == "normalize":
        nb = equivalence.normalize_basis(space)
        return {
            "basis": [encode_coeffs(v) for v in nb.basis],
            "space": encode_space(nb.space),
            "diameter": config.number(nb.diameter),
            "witness": checked(nb.witness, "normalization"),
        }

    if kind == "discrete":
        dw = equivalence.discrete_witness(space)
        return {
            "space": encode_space(dw.path),
            "theta": config.number(dw.theta),
            "diameter": config.number(dw.diameter),
            "norm": config.number(dw.norm),
            "inverse_norm": config.number(dw.inverse_norm),
            "condition": config.number(dw.condition),
            "witness": checked(dw.witness, "discrete"),
        }

    raise AssertionError(kind)


def build_project(args, config: RunConfig) -> dict[str, ty.Any]:
    if len(args.inputs) != 1:
        raise ParseError(args.inputs[0], "project takes one basis file", "construct")
    p: Parser = read_input(args.inputs[0])
    space, basis, pi = p.basis(p.root(), p.documents.root)
    if pi is None:
        raise ParseError(args.inputs[0], "project needs a \"pi\" list", "construct")
    rng = random.Random("%s:project" % config.seed)
    split = equivalence.projection_split(space, basis, pi, rng, args.samples)
    return {
        "basis": [encode_coeffs(v) for v in split.basis],
        "labels": [label_of(v) for v in split.basis],
        "space": encode_space(split.new_space),
        "pi_norm": config.number(split.pi_norm),
        "sigma_norm": config.number(split.sigma_norm),
        "bound_checks": {
            "samples": len(split.bound_checks),
            "passed": sum(split.bound_checks),
        },
        "witness": checked(split.witness, "projection"),
    }


def write_parts(directory: str, result: dict[str, ty.Any]) -> None:
    os.makedirs(directory, exist_ok=True)
    for key in ("space", "witness"):
        if key in result:
            with open(os.path.join(directory, "%s.json" % key), "w") as f:
                f.write(dumps(result[key]))
    with open(os.path.join(directory, "report.json"), "w") as f:
        f.write(dumps(result))


def run(args) -> int:
    config = RunConfig.from_args("construct", args, *args.inputs)
    try:
        if args.kind == "project":
            result = build_project(args, config)
        else:
            result = build(args.kind, args, config)
    except ParseError as err:
        err.describe()
        return 2
    except ValueError as err:
        error(args.inputs[0], "construct", str(err), "Parse error")
        return 2
    except LipfreeError as err:
        err.describe(args.inputs[0])
        return 1
    if args.directory:
        write_parts(args.directory, result)
    else:
        write_report(config, dumps(result))
    return 0


def setup(subparsers) -> None:
    cmd = subparsers.add_parser("construct", help="Build a space or a witness")
    cmd.add_argument("kind", choices=KINDS)
    cmd.add_argument("inputs", nargs="+", help="space files, or a basis file for project")
    cmd.add_argument("--class", dest="cls", help="labels to collapse, comma separated")
    cmd.add_argument("--label", help="label of the collapsed class")
    cmd.add_argument("--map", help='retraction as "from:to,..."; unlisted points are fixed')
    cmd.add_argument("--samples", type=int, default=50, help="extension bound samples")
    cmd.add_argument("--seed", default="0")
    cmd.add_argument("-o", "--output", help="write the report here")
    cmd.add_argument("-d", "--directory", help="write space.json, witness.json and report.json here")
    add_numeric_argument(cmd)
    cmd.set_defaults(func=run)
