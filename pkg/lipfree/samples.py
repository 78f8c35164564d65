"""
Deterministic random instances for the property suite and the sample command
"""

import random
from fractions import Fraction

from .free import FreeVector, delta
from .lipschitz import LipFunction
from .metric import MetricSpace, PointMap


def random_space(rng: random.Random, n: int, max_weight: int = 12) -> MetricSpace:
    """The shortest path metric of a complete graph with random rational weights"""
    if n < 1:
        raise ValueError("A space needs at least one point")
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = Fraction(rng.randint(1, max_weight), rng.randint(1, 4))
            d[i][j] = d[j][i] = w
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    labels = ["e"] + ["x%d" % i for i in range(1, n)]
    return MetricSpace(labels, 0, d)


def random_subset(
    rng: random.Random, space: MetricSpace, with_base: bool = False
) -> list[int]:
    out = [i for i in range(len(space)) if rng.random() < 0.5]
    if with_base and space.base not in out:
        out.append(space.base)
    return sorted(out)


def random_retraction(rng: random.Random, space: MetricSpace) -> PointMap:
    """Fixes a random set containing the base and sends every other point into it"""
    kept = random_subset(rng, space, with_base=True)
    image = [x if x in kept else rng.choice(kept) for x in range(len(space))]
    return PointMap(space, space, image)


def random_vector(
    rng: random.Random, space: MetricSpace, low: int = -5, high: int = 5
) -> FreeVector:
    return FreeVector(space, [(x, rng.randint(low, high)) for x in space.non_base()])


def random_rational_vector(rng: random.Random, space: MetricSpace) -> FreeVector:
    return FreeVector(
        space,
        [(x, Fraction(rng.randint(-9, 9), rng.randint(1, 5))) for x in space.non_base()],
    )


def random_lip_function(rng: random.Random, space: MetricSpace) -> LipFunction:
    values = [Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in space.points]
    values[space.base] = Fraction(0)
    return LipFunction(space, values)


def random_projection(
    rng: random.Random, space: MetricSpace
) -> tuple[list[FreeVector], list[FreeVector]]:
    """A scaled δ basis and a projection π with π(basis) in basis ∪ {0}.

    π fixes a random part F of the basis and sends every other vector to a
    member of F or to 0, so π∘π = π."""
    idx = space.non_base()
    basis = [delta(space, x) * Fraction(rng.randint(1, 3), rng.randint(1, 3)) for x in idx]
    fixed = [j for j in range(len(basis)) if rng.random() < 0.4]
    zero = FreeVector(space)
    pi = []
    for j in range(len(basis)):
        if j in fixed:
            pi.append(basis[j])
        elif fixed and rng.random() < 0.7:
            pi.append(basis[rng.choice(fixed)])
        else:
            pi.append(zero)
    return basis, pi
