import random
from fractions import Fraction

from lipfree.free import FreeVector, delta, free_norm
from lipfree.lipschitz import (
    LipFunction,
    LipschitzError,
    compose,
    lipschitz_number,
    lipschitz_vertices,
    mcshane_extend,
    pairing,
    restrict,
    separating_function,
)
from lipfree.metric import PointMap, equilateral_space, subspace
from lipfree.samples import random_space, random_vector

from .helpers import line, require, require_raises


def test_lipschitz_number() -> bool:
    m = line(3)
    if require(lipschitz_number(LipFunction(m, [0, 1, 2])), 1):
        return False
    if require(lipschitz_number(LipFunction.zero(m)), 0):
        return False
    return not require(lipschitz_number(LipFunction(m, [0, 1, 0])), 1)


def test_base_point() -> bool:
    return not require_raises(LipschitzError, LipFunction, line(3), [1, 0, 0])


def test_pairing() -> bool:
    m = line(3)
    f = LipFunction(m, [0, 1, 2])
    if require(pairing(delta(m, 1), f), 1):
        return False
    if require(pairing(delta(m, 1) - delta(m, 2), f), -1):
        return False
    g = LipFunction(m, [0, 1, 0])
    if require(pairing(delta(m, 1) * 2 - delta(m, 2), g), 2):
        return False
    return not require_raises(LipschitzError, pairing, delta(line(4), 1), f)


def test_mcshane() -> bool:
    m = line(3)
    f = LipFunction(subspace(m, [0, 2]), [0, 2])
    if require(mcshane_extend(f, m), LipFunction(m, [0, 1, 2])):
        return False
    g = LipFunction(m, [0, Fraction(1, 2), -1])
    if require(mcshane_extend(g, m), g):
        return False
    z = LipFunction.zero(subspace(m, [0, 1]))
    return not require(mcshane_extend(z, m), LipFunction.zero(m))


def test_restrict() -> bool:
    m = line(4)
    f = LipFunction(m, [0, 3, 1, 2])
    r = restrict(f, [0, 3])
    return not require((r.space.points, r.values), (("0", "3"), (0, 2)))


def test_separating_function() -> bool:
    m = line(4)
    f = separating_function(m, [3], 1)
    if require((f.values, lipschitz_number(f)), ((0, 1, 1, 0), 1)):
        return False
    f = separating_function(line(3), [], 2)
    if require((f(2), lipschitz_number(f)), (1, Fraction(1, 2))):
        return False
    eq = equilateral_space(3)
    f = separating_function(eq, [2], 1)
    if require((f.values, lipschitz_number(f)), ((0, 1, 0), 1)):
        return False
    if require_raises(LipschitzError, separating_function, m, [1], 1):
        return False
    return not require_raises(LipschitzError, separating_function, m, [], 0)


def test_arithmetic() -> bool:
    m = line(3)
    f = LipFunction(m, [0, 1, 2])
    g = LipFunction(m, [0, -1, 1])
    if require((f + g).values, (0, 0, 3)):
        return False
    if require((f - g).values, (0, 2, 1)):
        return False
    if require((-f).values, (0, -1, -2)):
        return False
    return not require((f * Fraction(1, 2)).values, (0, Fraction(1, 2), 1))


def test_compose() -> bool:
    m = line(3)
    clamp = PointMap(m, m, [0, 1, 1])
    f = LipFunction(m, [0, 2, 5])
    if require(compose(f, clamp).values, (0, 2, 2)):
        return False
    shift = PointMap(m, m, [1, 1, 2])
    return not require_raises(LipschitzError, compose, f, shift)


def test_duality_inequality() -> bool:
    m = line(4)
    f = LipFunction(m, [0, 2, -1, 1])
    v = FreeVector(m, {1: 3, 2: -2, 3: 1})
    return not require(abs(pairing(v, f)) <= free_norm(v) * lipschitz_number(f), True)


def test_lipschitz_vertices() -> bool:
    found = [f.values for f in lipschitz_vertices(line(3))]
    if require(found, [(0, -1, -2), (0, -1, 0), (0, 1, 0), (0, 1, 2)]):
        return False
    found = [f.values for f in lipschitz_vertices(equilateral_space(3))]
    expected = [(0, -1, -1), (0, -1, 0), (0, 0, -1), (0, 0, 1), (0, 1, 0), (0, 1, 1)]
    if require(found, expected):
        return False
    rng = random.Random(21)
    for _ in range(10):
        s = random_space(rng, rng.randint(1, 5))
        vertices = lipschitz_vertices(s)
        if require(all(lipschitz_number(f) <= 1 for f in vertices), True):
            return False
        m = random_vector(rng, s)
        best = max(pairing(m, f) for f in vertices)
        if require(best, free_norm(m)):
            return False
    return True
