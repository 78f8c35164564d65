"""
Check witnesses and compute their norms
"""

from . import equivalence
from .config import RunConfig, add_numeric_argument, write_report
from .error import LipfreeError, error
from .lipschitz import LipFunction, lipschitz_number
from .parser import ParseError, dumps, encode_function, encode_table, read_input

ACTIONS = ["check", "opnorm", "condition", "basis-constant", "pullback"]


def pullback(w: equivalence.LinearWitness, f: LipFunction, config: RunConfig) -> int:
    """T*f on the source, with the bound L(T*f) <= ||T|| L(f)"""
    g = equivalence.adjoint(w, f)
    norm = equivalence.operator_norm(w)
    out = {
        "function": encode_function(g),
        "lipschitz": config.number(lipschitz_number(g)),
        "bound": config.number(norm * lipschitz_number(f)),
    }
    write_report(config, dumps(out))
    return 0


def witness(action: str, path: str, function: str | None, config: RunConfig) -> int:
    try:
        p = read_input(path)
        if action == "basis-constant":
            space, basis, _ = p.basis(p.root(), p.documents.root)
        else:
            w = p.witness(p.root(), p.documents.root)
        if action == "pullback":
            if function is None:
                raise ParseError("--function", "pullback needs --function", "witness")
            fp = read_input(function)
            f = fp.function(fp.root(), fp.documents.root)
            if f.space != w.target:
                raise ParseError(function, "function is not over the target space", "pullback")
    except ParseError as err:
        err.describe()
        return 2

    if action == "pullback":
        return pullback(w, f, config)

    if action == "basis-constant":
        try:
            k = equivalence.free_basis_constant(space, basis)
        except LipfreeError as err:
            err.describe(path)
            return 1
        write_report(config, dumps({"constant": config.number(k)}))
        return 0

    if action == "opnorm":
        write_report(config, dumps({"norm": config.number(equivalence.operator_norm(w))}))
        return 0

    report = equivalence.validate_witness(w)
    if not report.valid:
        error(path, "witness", report.reason)
    if action == "condition":
        out = {
            "valid": report.valid,
            "norm": config.number(report.norm),
            "inverse_norm": None,
            "condition": None,
        }
        if report.valid:
            assert report.inverse_norm is not None and report.condition is not None
            out["inverse_norm"] = config.number(report.inverse_norm)
            out["condition"] = config.number(report.condition)
        write_report(config, dumps(out))
        return 0 if report.valid else 1

    out = {
        "valid": report.valid,
        "reason": report.reason,
        "norm": config.number(report.norm),
        "inverse_norm": None,
        "condition": None,
        "support_matching": report.support_matching,
        "inverse": None,
    }
    if report.valid:
        assert report.inverse_norm is not None and report.condition is not None
        assert report.inverse_images is not None
        out["inverse_norm"] = config.number(report.inverse_norm)
        out["condition"] = config.number(report.condition)
        out["inverse"] = encode_table(w.target, report.inverse_images)
    write_report(config, dumps(out))
    return 0 if report.valid else 1


def run(args) -> int:
    config = RunConfig.from_args("witness", args, args.file)
    return witness(args.action, args.file, args.function, config)


def setup(subparsers) -> None:
    cmd = subparsers.add_parser("witness", help="Inspect a linear witness")
    cmd.add_argument("action", choices=ACTIONS)
    cmd.add_argument("file", help="witness file, or a basis file for basis-constant")
    cmd.add_argument("--function", help="function file over the target, for pullback")
    cmd.add_argument("-o", "--output", help="write the report here")
    add_numeric_argument(cmd)
    cmd.set_defaults(func=run)
