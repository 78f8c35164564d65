import random

from lipfree.suite import (
    EXTENSION_FUNCTIONS,
    FOUR_POINT_SPACES,
    PULLBACK_FUNCTIONS,
    ROUND_TRIP_VECTORS,
    Params,
    doubling_battery,
    equivalence_battery,
    four_point_tuples,
)

from .helpers import require


def test_four_point_tuples() -> bool:
    rng = random.Random(41)
    tuples = list(four_point_tuples(rng, 6, 0))
    if require((len(tuples), len(set(tuples))), (1296, 1296)):
        return False
    if require((tuples[0], tuples[-1]), ((0, 0, 0, 0), (5, 5, 5, 5))):
        return False
    if require(len(list(four_point_tuples(rng, 7, 0))), 4):
        return False
    return not require(len(list(four_point_tuples(rng, 3, FOUR_POINT_SPACES))), 4)


def test_equivalence_sample_counts() -> bool:
    params = Params("counts", 3, 2, False)
    props = {
        p["name"]: p for p in equivalence_battery(random.Random("counts"), params).report()
    }
    if require(all(p["passed"] for p in props.values()), True):
        return False
    counts = (
        props["quotient_witness_round_trip"]["checked"],
        props["quotient_pullback"]["checked"],
        props["projection_bound"]["checked"],
    )
    expected = (2 * ROUND_TRIP_VECTORS, 2 * PULLBACK_FUNCTIONS, 2 * EXTENSION_FUNCTIONS)
    return not require(counts, expected)


def test_path_doubling_exact() -> bool:
    params = Params("paths", 1, 0, False)
    props = {p["name"]: p for p in doubling_battery(random.Random("paths"), params).report()}
    path = props["path_doubling_bounded"]
    return not require((path["checked"], path["passed"]), (1, True))
