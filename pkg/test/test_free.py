import random
from fractions import Fraction
from itertools import product

from lipfree import linalg
from lipfree.flow import transship
from lipfree.free import (
    FreeError,
    FreeVector,
    check_flow,
    delta,
    four_point_norm,
    free_norm,
    free_norm_dual,
    free_norm_flow,
    graev_distance,
    label_of,
    molecule,
    support,
)
from lipfree.lipschitz import LipFunction, lipschitz_number, pairing
from lipfree.samples import random_rational_vector, random_space, random_vector
from lipfree.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, maximize

from .helpers import line, require, require_raises, require_true, two_point


def test_simplex() -> bool:
    res = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    if require((res.status, res.value, res.x), (OPTIMAL, 36, (2, 6))):
        return False
    res = maximize([-1], [[-1]], [-2])
    if require((res.status, res.value, res.x), (OPTIMAL, -2, (2,))):
        return False
    if require(maximize([1], [[1]], [-1]).status, INFEASIBLE):
        return False
    return not require(maximize([1], [[-1]], [0]).status, UNBOUNDED)


def test_transship() -> bool:
    cost = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    sol = transship(cost, [-2, 1, 1])
    if require((sol.edges, sol.cost), (((1, 0, 1), (2, 0, 1)), 3)):
        return False
    sol = transship(cost, [1, 0, -1])
    return not require((sol.edges, sol.cost), (((0, 2, 1),), 2))


def test_linalg() -> bool:
    one = Fraction(1)
    if require(linalg.inverse([[one, -one], [0 * one, one]]), [[1, 1], [0, 1]]):
        return False
    if require(linalg.inverse([[one, one], [one, one]]), None):
        return False
    if require(linalg.rank([[one, 2 * one], [2 * one, 4 * one]], 2), 1):
        return False
    return not require(linalg.inverse([]), [])


def test_delta() -> bool:
    m = two_point(2)
    if require(delta(m, 0), FreeVector(m)):
        return False
    if require((delta(m, 1).as_dict(), free_norm(delta(m, 1))), ({1: 1}, 2)):
        return False
    return not require(delta(m, 1) - delta(m, 1), FreeVector(m))


def test_canonical() -> bool:
    m = line(3)
    v = FreeVector(m, [(1, 3), (2, 1), (2, -1), (0, 5)])
    if require(v.items(), ((1, Fraction(3)),)):
        return False
    return not require(support(v), frozenset([1]))


def test_support() -> bool:
    m = line(3)
    if require(support(FreeVector(m)), frozenset()):
        return False
    return not require(support(delta(m, 1) - delta(m, 2)), frozenset([1, 2]))


def test_dual_norm() -> bool:
    m = line(3)
    if require(free_norm_dual(delta(m, 1) - delta(m, 2))[0], 1):
        return False
    value, f = free_norm_dual(delta(m, 1) + delta(m, 2))
    if require((value, f), (3, LipFunction(m, [0, 1, 2]))):
        return False
    n = line(4)
    return not require(free_norm_dual(delta(n, 1) - delta(n, 2) + delta(n, 3))[0], 2)


def test_flow_norm() -> bool:
    m = line(3)
    cost, sol = free_norm_flow(delta(m, 1) - delta(m, 2))
    if require((cost, sol.edges), (1, ((1, 2, 1),))):
        return False
    t = two_point(1, "1")
    cost, sol = free_norm_flow(delta(t, 1) * 2)
    if require((cost, sol.edges), (2, ((1, 0, 2),))):
        return False
    v = delta(m, 1) + delta(m, 2)
    cost, sol = free_norm_flow(v)
    if require((cost, sol.edges), (3, ((1, 0, 1), (2, 0, 1)))):
        return False
    return not require(check_flow(v, sol), True)


def test_molecule() -> bool:
    m = line(3)
    if require(molecule(m, 2, 1), FreeVector(m, {2: 1, 1: -1})):
        return False
    if require(molecule(m, 2, 0), FreeVector(m, {2: Fraction(1, 2)})):
        return False
    for x, y in product(range(3), repeat=2):
        if x != y and require(free_norm(molecule(m, x, y)), 1):
            return False
    return not require_raises(FreeError, molecule, m, 1, 1)


def test_four_point() -> bool:
    m = line(4)
    if require(four_point_norm(m, 1, 2, 3, 0), 2):
        return False
    if require(four_point_norm(m, 1, 1, 3, 3), 0):
        return False
    if require(four_point_norm(m, 1, 2, 2, 1), 0):
        return False
    rng = random.Random(4)
    s = random_space(rng, 4)
    for a, b, c, d in product(range(4), repeat=4):
        v = delta(s, a) - delta(s, b) + delta(s, c) - delta(s, d)
        if require(free_norm_dual(v)[0], four_point_norm(s, a, b, c, d)):
            return False
    return True


def test_graev() -> bool:
    m = line(3)
    if require(graev_distance(delta(m, 1), delta(m, 2)), 1):
        return False
    if require(graev_distance(delta(m, 2), delta(m, 2)), 0):
        return False
    if require(graev_distance(delta(m, 1) * 2, delta(m, 2)), 2):
        return False
    return not require_raises(FreeError, graev_distance, delta(m, 1) / 2, delta(m, 2))


def test_label_of() -> bool:
    m = line(3)
    if require(label_of(delta(m, 2) - delta(m, 1)), "2-1"):
        return False
    if require(label_of(delta(two_point(2, "x"), 1) / 2), "1/2*x"):
        return False
    return not require(label_of(FreeVector(m)), "0")


def test_isometry_random() -> bool:
    rng = random.Random(11)
    for _ in range(15):
        s = random_space(rng, rng.randint(2, 7))
        for x in range(len(s)):
            for y in range(x + 1, len(s)):
                if require(free_norm_dual(delta(s, x) - delta(s, y))[0], s.d(x, y)):
                    return False
    return True


def test_strong_duality_random() -> bool:
    rng = random.Random(12)
    for _ in range(40):
        s = random_space(rng, rng.randint(1, 8))
        v = random_vector(rng, s)
        dual, f = free_norm_dual(v)
        flow, sol = free_norm_flow(v)
        if require(dual, flow):
            return False
        if require((pairing(v, f), check_flow(v, sol)), (dual, True)):
            return False
        if require_true(lipschitz_number(f) <= 1, "a 1-Lipschitz certificate"):
            return False
    return True


def test_norm_axioms_random() -> bool:
    rng = random.Random(13)
    for _ in range(20):
        s = random_space(rng, rng.randint(2, 6))
        a = random_rational_vector(rng, s)
        b = random_rational_vector(rng, s)
        t = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if require(free_norm(a * t), abs(t) * free_norm(a)):
            return False
        if require_true(free_norm(a + b) <= free_norm(a) + free_norm(b), "triangle inequality"):
            return False
        if require(free_norm(a) == 0, a.is_zero()):
            return False
    return True
