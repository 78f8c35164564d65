"""
Randomised property batteries over every module.

Each battery draws from its own generator seeded by "<seed>:<battery>", so a
battery's outcome does not depend on which other batteries run or on how they
are spread over worker processes.
"""

import logging
import random
import typing as ty
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product

from . import covering, equivalence, metric
from .config import RunConfig, write_report
from .free import (
    FreeVector,
    check_flow,
    delta,
    four_point_norm,
    free_norm,
    free_norm_dual,
    free_norm_flow,
    graev_distance,
    support,
)
from .lipschitz import (
    LipFunction,
    compose,
    lipschitz_number,
    mcshane_extend,
    pairing,
    restrict,
    separating_function,
)
from .metric import MetricSpace, distance_to_set, is_valid, metric_sum, quotient, subspace
from .parser import dumps, encode_coeffs, encode_space
from .samples import (
    random_lip_function,
    random_projection,
    random_rational_vector,
    random_retraction,
    random_space,
    random_subset,
    random_vector,
)
from .util import format_rational

log = logging.getLogger(__name__)

ORACLE_MAX_POINTS = 6
DIVERGENCE_SIZES = (4, 8, 16, 32)
FOUR_POINT_MAX_POINTS = 6
FOUR_POINT_SPACES = 50
ROUND_TRIP_VECTORS = 20
PULLBACK_FUNCTIONS = 20
EXTENSION_FUNCTIONS = 50
ORACLE_SAMPLES = 40


class Property:
    __slots__ = ["name", "checked", "failure"]
    name: str
    checked: int
    failure: dict[str, ty.Any] | None

    def __init__(self, name: str) -> None:
        self.name = name
        self.checked = 0
        self.failure = None

    def check(self, ok: bool, example: Callable[[], dict[str, ty.Any]]) -> None:
        """Count a check, keeping the first counterexample"""
        self.checked += 1
        if not ok and self.failure is None:
            self.failure = example()

    def report(self) -> dict[str, ty.Any]:
        return {
            "name": self.name,
            "passed": self.failure is None,
            "checked": self.checked,
            "counterexample": self.failure,
        }


class Battery:
    def __init__(self) -> None:
        self.properties: dict[str, Property] = {}

    def __getitem__(self, name: str) -> Property:
        if name not in self.properties:
            self.properties[name] = Property(name)
        return self.properties[name]

    def report(self) -> list[dict[str, ty.Any]]:
        return [p.report() for p in self.properties.values()]


class Params(ty.NamedTuple):
    seed: str
    sizes: int
    count: int
    perturb: bool


def spaces(rng: random.Random, params: Params, low: int = 1, high: int | None = None):
    top = params.sizes if high is None else min(params.sizes, high)
    if top < low:
        return
    for _ in range(params.count):
        yield random_space(rng, rng.randint(low, top))


def r(v: Fraction) -> int | str:
    return format_rational(v)


def metric_battery(rng: random.Random, params: Params) -> Battery:
    b = Battery()
    one = MetricSpace(["e"], 0, [[0]])
    for space in spaces(rng, params):
        c = [x for x in range(len(space)) if rng.random() < 0.5] or [rng.randrange(len(space))]
        q, qm = quotient(space, c)
        b["quotient_valid"].check(
            is_valid(q), lambda: {"space": encode_space(space), "class": c}
        )
        b["quotient_nonexpansive"].check(
            qm.lipschitz <= 1, lambda: {"space": encode_space(space), "class": c}
        )
        s = random_subset(rng, space, with_base=True)
        b["subspace_valid"].check(
            is_valid(subspace(space, s)), lambda: {"space": encode_space(space), "subset": s}
        )
        b["sum_neutral"].check(
            metric_sum(space, one).dist == space.dist, lambda: {"space": encode_space(space)}
        )
        other = random_space(rng, rng.randint(1, max(1, params.sizes // 2)))
        third = random_space(rng, rng.randint(1, max(1, params.sizes // 2)))
        left = metric_sum(metric_sum(space, other), third)
        right = metric_sum(space, metric_sum(other, third))
        b["sum_associative"].check(
            left.dist == right.dist and is_valid(left),
            lambda: {"spaces": [encode_space(x) for x in (space, other, third)]},
        )
    return b


def lipschitz_battery(rng: random.Random, params: Params) -> Battery:
    b = Battery()
    for space in spaces(rng, params):
        a = [x for x in random_subset(rng, space) if x != space.base]
        free = [y for y in space.non_base() if y not in a]
        if free:
            x = rng.choice(free)
            f = separating_function(space, a, x)
            zero_set = a + [space.base]
            ok = (
                f(x) == 1
                and all(f(y) == 0 for y in zero_set)
                and lipschitz_number(f) == 1 / distance_to_set(space, x, zero_set)
            )
            b["separation"].check(
                ok, lambda: {"space": encode_space(space), "A": a, "x": x}
            )
        s = random_subset(rng, space, with_base=True)
        g = random_lip_function(rng, subspace(space, s))
        ext = mcshane_extend(g, space)
        b["mcshane"].check(
            restrict(ext, s) == g and lipschitz_number(ext) == lipschitz_number(g),
            lambda: {"space": encode_space(space), "subset": s},
        )
        m = random_vector(rng, space)
        h = random_lip_function(rng, space)
        b["duality_inequality"].check(
            abs(pairing(m, h)) <= free_norm(m) * lipschitz_number(h),
            lambda: {"space": encode_space(space), "vector": encode_coeffs(m)},
        )
        phi = random_retraction(rng, space)
        b["compose_lipschitz"].check(
            lipschitz_number(compose(h, phi)) <= lipschitz_number(h) * phi.lipschitz,
            lambda: {"space": encode_space(space), "map": list(phi.image)},
        )
    return b


def _perturbed(space: MetricSpace) -> MetricSpace:
    """The same points with d(0, 1) raised by one; no longer the space's metric"""
    dist = [list(row) for row in space.dist]
    dist[0][1] += 1
    dist[1][0] += 1
    return MetricSpace(space.points, space.base, dist)


def four_point_tuples(rng: random.Random, n: int, index: int) -> ty.Iterable[tuple[int, ...]]:
    """Every 4-tuple with repetition on the first small spaces, a few random
    ones elsewhere"""
    if n <= FOUR_POINT_MAX_POINTS and index < FOUR_POINT_SPACES:
        return product(range(n), repeat=4)
    return [tuple(rng.randrange(n) for _ in range(4)) for _ in range(4)]


def free_battery(rng: random.Random, params: Params) -> Battery:
    b = Battery()
    for k, space in enumerate(spaces(rng, params)):
        n = len(space)
        for x in range(n):
            for y in range(x + 1, n):
                v = free_norm_dual(delta(space, x) - delta(space, y))[0]
                b["isometry"].check(
                    v == space.d(x, y),
                    lambda: {"space": encode_space(space), "pair": [x, y], "norm": r(v)},
                )
        x, y = rng.randrange(n), rng.randrange(n)
        b["graev"].check(
            graev_distance(delta(space, x), delta(space, y)) == space.d(x, y),
            lambda: {"space": encode_space(space), "pair": [x, y]},
        )

        flow_space = _perturbed(space) if params.perturb and n >= 2 else space
        for _ in range(3):
            m = random_vector(rng, space)
            dual, f = free_norm_dual(m)
            flow, sol = free_norm_flow(FreeVector(flow_space, m.coeffs))
            b["strong_duality"].check(
                dual == flow,
                lambda: {
                    "space": encode_space(space),
                    "vector": encode_coeffs(m),
                    "dual": r(dual),
                    "flow": r(flow),
                },
            )
            b["certificates"].check(
                pairing(m, f) == dual
                and lipschitz_number(f) <= 1
                and check_flow(FreeVector(flow_space, m.coeffs), sol),
                lambda: {"space": encode_space(space), "vector": encode_coeffs(m)},
            )

        lp_cache: dict[FreeVector, Fraction] = {}
        for a, bb, c, d in four_point_tuples(rng, n, k):
            m = delta(space, a) - delta(space, bb) + delta(space, c) - delta(space, d)
            closed = four_point_norm(space, a, bb, c, d)
            if m not in lp_cache:
                lp_cache[m] = free_norm_dual(m)[0]
            lp = lp_cache[m]
            b["four_point"].check(
                closed == lp,
                lambda: {
                    "space": encode_space(space),
                    "points": [a, bb, c, d],
                    "formula": r(closed),
                    "lp": r(lp),
                },
            )

        m1 = random_rational_vector(rng, space)
        m2 = random_rational_vector(rng, space)
        t = Fraction(rng.randint(-7, 7), rng.randint(1, 3))
        n1, n2 = free_norm(m1), free_norm(m2)
        ok = (
            free_norm(m1 * t) == abs(t) * n1
            and free_norm(m1 + m2) <= n1 + n2
            and (n1 == 0) == m1.is_zero()
        )
        b["norm_axioms"].check(
            ok,
            lambda: {
                "space": encode_space(space),
                "vectors": [encode_coeffs(m1), encode_coeffs(m2)],
                "scalar": r(t),
            },
        )

        raw = [(rng.randrange(n), rng.randint(-2, 2)) for _ in range(2 * n)]
        total: dict[int, int] = {}
        for i, c in raw:
            if i != space.base:
                total[i] = total.get(i, 0) + c
        expected = frozenset(i for i, c in total.items() if c)
        b["support"].check(
            support(FreeVector(space, raw)) == expected,
            lambda: {"space": encode_space(space), "terms": raw},
        )
    return b


def _oracle_check(b: Battery, rng: random.Random, w: equivalence.LinearWitness) -> None:
    if max(len(w.source), len(w.target)) > ORACLE_MAX_POINTS:
        return
    norm = equivalence.operator_norm(w)
    oracle = equivalence.operator_norm_oracle(w, rng, ORACLE_SAMPLES)
    b["operator_norm_oracle"].check(
        oracle.dual_value == norm and oracle.sampled <= norm,
        lambda: {
            "source": encode_space(w.source),
            "target": encode_space(w.target),
            "norm": r(norm),
            "oracle": r(oracle.value),
        },
    )


def _round_trip(
    b: Battery, rng: random.Random, name: str, w: equivalence.LinearWitness
) -> None:
    report = equivalence.validate_witness(w)
    b[name].check(report.valid, lambda: {"source": encode_space(w.source), "reason": report.reason})
    inv = equivalence.inverse(w)
    if inv is None:
        return
    for _ in range(ROUND_TRIP_VECTORS):
        m = random_vector(rng, w.source)
        back = equivalence.apply(inv, equivalence.apply(w, m))
        b[name + "_round_trip"].check(
            back == m,
            lambda: {"source": encode_space(w.source), "vector": encode_coeffs(m)},
        )
    _oracle_check(b, rng, w)


def equivalence_battery(rng: random.Random, params: Params) -> Battery:
    b = Battery()
    for space in spaces(rng, params):
        phi = random_retraction(rng, space)
        qw = equivalence.quotient_witness(space, phi)
        _round_trip(b, rng, "quotient_witness", qw.witness)
        for _ in range(PULLBACK_FUNCTIONS):
            f = random_lip_function(rng, qw.coproduct.space)
            pulled = equivalence.adjoint(qw.witness, f)
            b["quotient_pullback"].check(
                lipschitz_number(pulled) <= lipschitz_number(f) * (phi.lipschitz + 1),
                lambda: {"space": encode_space(space), "map": list(phi.image)},
            )
        g = random_lip_function(rng, space)
        h = equivalence.quotient_inverse_function(qw, g)
        b["quotient_inverse_function"].check(
            equivalence.adjoint(qw.witness, h) == g,
            lambda: {"space": encode_space(space), "map": list(phi.image)},
        )

        nb = equivalence.normalize_basis(space)
        ok = (
            all(free_norm(v) == 1 for v in nb.basis)
            and len(set(nb.basis)) == len(nb.basis)
            and nb.diameter <= 2
        )
        b["normalization"].check(ok, lambda: {"space": encode_space(space)})
        _round_trip(b, rng, "normalization_witness", nb.witness)

        if len(space) >= 2:
            dw = equivalence.discrete_witness(space)
            _round_trip(b, rng, "discrete_witness", dw.witness)

        basis, pi = random_projection(rng, space)
        split = equivalence.projection_split(space, basis, pi, rng, EXTENSION_FUNCTIONS)
        for ok in split.bound_checks:
            b["projection_bound"].check(
                ok,
                lambda: {
                    "space": encode_space(space),
                    "basis": [encode_coeffs(v) for v in basis],
                    "pi": [encode_coeffs(v) for v in pi],
                },
            )
        _round_trip(b, rng, "projection_witness", split.witness)
        if space.non_base():
            k = equivalence.free_basis_constant(space, [delta(space, x) for x in space.non_base()])
            b["delta_basis_constant"].check(
                k == 1, lambda: {"space": encode_space(space), "constant": r(k)}
            )
    return b


def doubling_battery(rng: random.Random, params: Params) -> Battery:
    b = Battery()
    if params.sizes > 0:
        for n in DIVERGENCE_SIZES:
            if n > 4 * params.sizes:
                continue
            path = covering.doubling_constant(metric.path_space(n), assouad=False)
            b["path_doubling_bounded"].check(
                path.constant <= 3 and path.exact,
                lambda: {"n": n, "constant": path.constant, "exact": path.exact},
            )
            eq = metric.equilateral_space(n)
            rep = covering.doubling_constant(eq, assouad=False)
            b["equilateral_doubling_grows"].check(
                rep.constant == n and rep.exact, lambda: {"n": n, "constant": rep.constant}
            )
            dw = equivalence.discrete_witness(eq)
            theta, diameter = covering.uniform_discreteness(eq)
            b["discrete_condition_bounded"].check(
                dw.condition <= 2 * diameter / theta,
                lambda: {"n": n, "condition": r(dw.condition)},
            )
    for space in spaces(rng, params, low=2):
        grid = covering.scale_grid(space)
        x = rng.randrange(len(space))
        i, j = sorted((rng.randrange(len(grid)), rng.randrange(len(grid))))
        small, big = grid[i], grid[j]
        big_n = covering.covering_number(space, x, big, small, len(space)).count
        if i < j:
            finer = covering.covering_number(space, x, big, grid[i], len(space)).count
            coarser = covering.covering_number(space, x, big, grid[j], len(space)).count
            wider = covering.covering_number(space, x, grid[-1], small, len(space)).count
            b["cover_monotone"].check(
                coarser <= finer and big_n <= wider,
                lambda: {"space": encode_space(space), "x": x, "R": r(big), "r": r(small)},
            )
        greedy = covering.covering_number(space, x, big, small, 0).count
        b["greedy_upper_bound"].check(
            greedy >= big_n,
            lambda: {"space": encode_space(space), "x": x, "R": r(big), "r": r(small)},
        )
    return b


BATTERIES: dict[str, Callable[[random.Random, Params], Battery]] = {
    "metric": metric_battery,
    "lipschitz": lipschitz_battery,
    "free": free_battery,
    "equivalence": equivalence_battery,
    "doubling": doubling_battery,
}


def run_battery(name: str, params: Params) -> list[dict[str, ty.Any]]:
    log.debug("battery %s", name)
    return BATTERIES[name](random.Random("%s:%s" % (params.seed, name)), params).report()


def suite(params: Params, names: list[str], jobs: int = 1) -> dict[str, ty.Any]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_battery, names, [params] * len(names)))
    else:
        results = [run_battery(name, params) for name in names]
    batteries = dict(zip(names, results))
    return {
        "seed": params.seed,
        "sizes": params.sizes,
        "count": params.count,
        "perturb": params.perturb,
        "batteries": batteries,
        "passed": all(p["passed"] for props in results for p in props),
    }


def run(args) -> int:
    config = RunConfig.from_args("suite", args)
    names = args.battery or list(BATTERIES)
    result = suite(Params(config.seed, args.sizes, args.count, args.perturb), names, args.jobs)
    write_report(config, dumps(result))
    return 0 if result["passed"] else 1


def setup(subparsers) -> None:
    cmd = subparsers.add_parser("suite", help="Run the randomised property batteries")
    cmd.add_argument("--seed", default="0")
    cmd.add_argument("--sizes", type=int, default=8, help="largest space size")
    cmd.add_argument("--count", type=int, default=200, help="spaces per battery")
    cmd.add_argument("--jobs", type=int, default=1, help="worker processes")
    cmd.add_argument(
        "--battery", action="append", choices=list(BATTERIES), help="run only these"
    )
    cmd.add_argument(
        "--perturb",
        action="store_true",
        help="raise one distance on the transport side; strong duality must fail",
    )
    cmd.add_argument("-o", "--output", help="write the report here")
    cmd.set_defaults(func=run)
