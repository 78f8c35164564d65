"""
Covering numbers of balls and the doubling constant of a finite space.

N(x, R, r) is the least number of r-balls, centred anywhere in the space,
that cover the R-ball around x. Small instances are solved exactly by
branch and bound; larger ones fall back to a greedy cover, which is still
reported as exact when it meets a packing lower bound.
"""

import logging
import math
import typing as ty
from collections.abc import Iterable, Sequence
from fractions import Fraction

from .error import LipfreeError
from .metric import MetricSpace

log = logging.getLogger(__name__)

DEFAULT_EXACT_THRESHOLD = 20


class CoverError(LipfreeError):
    pass


class Cover(ty.NamedTuple):
    count: int
    centers: tuple[int, ...]
    exact: bool
    lower: int


class ScaleEntry(ty.NamedTuple):
    scale: Fraction
    count: int
    center: int
    exact: bool


class AssouadEstimate(ty.NamedTuple):
    """A float estimate of log N(x, R, r) / log(R / r) at the worst scale pair"""

    value: float
    count: int
    ratio: Fraction
    center: int
    big: Fraction
    small: Fraction


class DoublingReport(ty.NamedTuple):
    entries: tuple[ScaleEntry, ...]
    constant: int
    exact: bool
    assouad: AssouadEstimate | None


def ball(space: MetricSpace, x: int, r: Fraction) -> list[int]:
    """Closed ball"""
    return [y for y in range(len(space)) if space.d(x, y) <= r]


def _mask(items: Iterable[int]) -> int:
    out = 0
    for i in items:
        out |= 1 << i
    return out


def _candidates(space: MetricSpace, target: int, r: Fraction) -> list[tuple[int, int]]:
    """(mask, center) of every distinct r-ball restricted to target, dropping
    balls contained in another"""
    seen: dict[int, int] = {}
    for c in range(len(space)):
        m = _mask(ball(space, c, r)) & target
        if m and m not in seen:
            seen[m] = c
    masks = sorted(seen.items(), key=lambda t: (-bin(t[0]).count("1"), t[1]))
    out: list[tuple[int, int]] = []
    for m, c in masks:
        if not any(m & o == m for o, _ in out):
            out.append((m, c))
    return out


def _greedy(target: int, sets: Sequence[tuple[int, int]]) -> list[int]:
    left = target
    chosen = []
    while left:
        m, c = max(sets, key=lambda t: (bin(t[0] & left).count("1"), -t[1]))
        chosen.append(c)
        left &= ~m
    return chosen


def _packing(u: Sequence[int], sets: Sequence[tuple[int, int]]) -> int:
    """Points of u no two of which share a candidate ball; each needs its own"""
    blocked = 0
    picked = 0
    for y in u:
        bit = 1 << y
        if blocked & bit:
            continue
        picked += 1
        for m, _ in sets:
            if m & bit:
                blocked |= m
    return picked


def _branch(target: int, sets: Sequence[tuple[int, int]], best: list[int]) -> list[int]:
    """Exact set cover; branches on the sets covering the lowest uncovered point"""
    chosen: list[int] = []

    def go(left: int) -> None:
        if not left:
            if len(chosen) < len(best):
                best[:] = chosen
            return
        if len(chosen) + 1 >= len(best):
            return
        low = left & -left
        for m, c in sets:
            if m & low:
                chosen.append(c)
                go(left & ~m)
                chosen.pop()

    go(target)
    return best


def covering_number(
    space: MetricSpace,
    x: int,
    big: Fraction,
    small: Fraction,
    threshold: int = DEFAULT_EXACT_THRESHOLD,
) -> Cover:
    if small <= 0:
        raise CoverError("Radius %s is not positive" % small, "covering number")
    if big < small:
        raise CoverError(
            "Outer radius %s is below the inner radius %s" % (big, small),
            "covering number",
        )
    space.check_index(x)
    u = ball(space, x, big)
    target = _mask(u)
    sets = _candidates(space, target, small)
    greedy = _greedy(target, sets)
    lower = _packing(u, sets)
    if len(greedy) == lower:
        return Cover(len(greedy), tuple(sorted(greedy)), True, lower)
    if len(u) <= threshold:
        best = _branch(target, sets, list(greedy))
        return Cover(len(best), tuple(sorted(best)), True, len(best))
    log.debug(
        "greedy cover of %d points at %s: %d sets, lower bound %d",
        len(u),
        space.label(x),
        len(greedy),
        lower,
    )
    return Cover(len(greedy), tuple(sorted(greedy)), False, lower)


def scale_grid(space: MetricSpace) -> list[Fraction]:
    """Every positive distance and half of it"""
    ds = {
        space.d(i, j)
        for i in range(len(space))
        for j in range(i + 1, len(space))
        if space.d(i, j) > 0
    }
    return sorted(ds | {d / 2 for d in ds})


def doubling_constant(
    space: MetricSpace,
    threshold: int = DEFAULT_EXACT_THRESHOLD,
    scales: Sequence[Fraction] | None = None,
    assouad: bool = True,
) -> DoublingReport:
    """C(r) = max over x of N(x, 2r, r) at every scale, and the max over scales"""
    grid = scale_grid(space) if scales is None else sorted(set(scales))
    for s in grid:
        if s <= 0:
            raise CoverError("Scale %s is not positive" % s, "doubling")
    entries = []
    constant = 1
    exact = True
    for r in grid:
        worst: ScaleEntry | None = None
        for x in range(len(space)):
            cov = covering_number(space, x, 2 * r, r, threshold)
            if worst is None or cov.count > worst.count:
                worst = ScaleEntry(r, cov.count, x, cov.exact)
            elif cov.count == worst.count and not cov.exact:
                worst = worst._replace(exact=False)
            exact = exact and cov.exact
        assert worst is not None
        entries.append(worst)
        constant = max(constant, worst.count)
    return DoublingReport(
        tuple(entries),
        constant,
        exact,
        assouad_estimate(space, threshold, grid) if assouad else None,
    )


def assouad_estimate(
    space: MetricSpace,
    threshold: int = DEFAULT_EXACT_THRESHOLD,
    grid: Sequence[Fraction] | None = None,
) -> AssouadEstimate | None:
    """max of log N(x, R, r) / log(R/r) over grid pairs with R >= 2r; only an
    estimate of the Assouad dimension, which is a limit notion"""
    scales = scale_grid(space) if grid is None else list(grid)
    best: AssouadEstimate | None = None
    for i, small in enumerate(scales):
        for big in scales[i + 1 :]:
            ratio = big / small
            if ratio < 2:
                continue
            for x in range(len(space)):
                n = covering_number(space, x, big, small, threshold).count
                if n <= 1:
                    continue
                v = math.log(n) / math.log(ratio)
                if best is None or v > best.value:
                    best = AssouadEstimate(v, n, ratio, x, big, small)
    return best


def uniform_discreteness(space: MetricSpace) -> tuple[Fraction, Fraction]:
    """(θ, D): the least distance between distinct points and the diameter"""
    n = len(space)
    if n < 2:
        raise CoverError("Needs at least two points", "uniform discreteness")
    theta = min(space.d(i, j) for i in range(n) for j in range(i + 1, n))
    return theta, space.diameter()
