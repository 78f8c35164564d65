"""
Compute the free norm of a vector both ways
"""

from .config import RunConfig, add_numeric_argument, write_report
from .error import LipfreeError, error
from .free import check_flow, free_norm_dual, free_norm_flow, label_of
from .lipschitz import lipschitz_number, pairing
from .parser import (
    ParseError,
    dumps,
    encode_coeffs,
    encode_function,
    parse_coeffs,
    read_input,
)


def norm(
    path: str, coeffs: str | None, certificate: str | None, config: RunConfig
) -> int:
    try:
        p = read_input(path)
        root = p.root()
        doc = p.documents.root
        if isinstance(root, dict) and "coeffs" in root:
            if coeffs is not None:
                raise ParseError(path, "--coeffs given for a vector file", "norm")
            m = p.vector(root, doc)
        else:
            space = p.valid_space(root, doc)
            try:
                m = parse_coeffs(coeffs or "", space)
            except (ValueError, ZeroDivisionError) as err:
                raise ParseError("--coeffs", str(err), "coeffs") from None
            except LipfreeError as err:
                raise ParseError("--coeffs", err.message, "coeffs") from None
    except ParseError as err:
        err.describe()
        return 2

    space = m.space
    dual, f = free_norm_dual(m)
    flow, sol = free_norm_flow(m)
    ok = config.agree(dual, flow)
    if not ok:
        error(path, "norm", "dual norm %s differs from flow norm %s" % (dual, flow))
    if pairing(m, f) != dual or lipschitz_number(f) > 1:
        error(path, "norm", "optimal function does not certify the dual norm")
        ok = False
    if not check_flow(m, sol):
        error(path, "norm", "flow does not certify the primal norm")
        ok = False
    report = {
        "vector": label_of(m) if m else "0",
        "coeffs": encode_coeffs(m),
        "numeric": config.numeric,
        "dual": config.number(dual),
        "flow": config.number(flow),
        "agree": ok,
        "function": {space.points[x]: config.number(v) for x, v in enumerate(f.values)},
        "transport": [
            [space.points[u], space.points[v], config.number(w)] for u, v, w in sol.edges
        ],
    }
    write_report(config, dumps(report))
    if certificate:
        with open(certificate, "w") as f_out:
            f_out.write(dumps(encode_function(f)))
    return 0 if ok else 1


def run(args) -> int:
    config = RunConfig.from_args("norm", args, args.input)
    return norm(args.input, args.coeffs, args.certificate, config)


def setup(subparsers) -> None:
    cmd = subparsers.add_parser("norm", help="Free norm by LP and by transport")
    cmd.add_argument("input", help="space file (with --coeffs) or vector file")
    cmd.add_argument("--coeffs", help='coefficients as "label:rational,..."')
    cmd.add_argument("--certificate", help="write the optimal 1-Lipschitz function here")
    cmd.add_argument("-o", "--output", help="write the report here")
    add_numeric_argument(cmd)
    cmd.set_defaults(func=run)
