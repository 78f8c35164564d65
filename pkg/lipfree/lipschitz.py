"""
Lipschitz functions vanishing at the base point
"""

import typing as ty
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from .error import LipfreeError
from .metric import MetricSpace, PointMap, SpaceError, distance_to_set, subspace


class LipschitzError(LipfreeError):
    pass


class Pairable(ty.Protocol):
    space: MetricSpace

    def items(self) -> Iterable[tuple[int, Fraction]]: ...


class LipFunction:
    """A real function on a finite space with value 0 at the base point"""

    __slots__ = ["space", "values"]
    space: MetricSpace
    values: tuple[Fraction, ...]

    def __init__(self, space: MetricSpace, values: Sequence[Fraction | int]) -> None:
        if len(values) != len(space):
            raise LipschitzError(
                "Expected %d values got %d" % (len(space), len(values)), "Lip0"
            )
        self.space = space
        self.values = tuple(Fraction(v) for v in values)
        if self.values[space.base] != 0:
            raise LipschitzError(
                "Function must vanish at the base point %s"
                % space.label(space.base),
                "Lip0",
            )

    @classmethod
    def zero(cls, space: MetricSpace) -> "LipFunction":
        return cls(space, [0] * len(space))

    @classmethod
    def from_labels(
        cls, space: MetricSpace, values: Mapping[str, Fraction | int]
    ) -> "LipFunction":
        out = [Fraction(0)] * len(space)
        for label, v in values.items():
            out[space.index(label)] = Fraction(v)
        return cls(space, out)

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LipFunction):
            return NotImplemented
        return self.values == other.values and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return "LipFunction(%s)" % ", ".join(
            "%s: %s" % (self.space.label(i), v) for i, v in enumerate(self.values)
        )

    def _check(self, other: "LipFunction") -> None:
        if other.space != self.space:
            raise LipschitzError("Functions live on different spaces", "Lip0")

    def __add__(self, other: "LipFunction") -> "LipFunction":
        self._check(other)
        return LipFunction(self.space, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "LipFunction") -> "LipFunction":
        self._check(other)
        return LipFunction(self.space, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "LipFunction":
        return LipFunction(self.space, [-a for a in self.values])

    def __mul__(self, t: Fraction | int) -> "LipFunction":
        return LipFunction(self.space, [a * t for a in self.values])

    __rmul__ = __mul__


def lipschitz_number(f: LipFunction) -> Fraction:
    space = f.space
    n = len(space)
    best = Fraction(0)
    for x in range(n):
        for y in range(x + 1, n):
            r = abs(f(x) - f(y)) / space.d(x, y)
            if r > best:
                best = r
    return best


def lipschitz_vertices(space: MetricSpace) -> list[LipFunction]:
    """Extreme points of the unit ball of Lip0(space).

    f is extreme exactly when the pairs with |f(x) - f(y)| = d(x, y) connect
    every point to the base, so each one is reached by growing such a tree
    outwards from the base one tight pair at a time."""
    n = len(space)
    start: tuple[Fraction | None, ...] = tuple(
        Fraction(0) if x == space.base else None for x in range(n)
    )
    seen = {start}
    stack = [start]
    found: list[LipFunction] = []
    while stack:
        values = stack.pop()
        placed = [x for x in range(n) if values[x] is not None]
        if len(placed) == n:
            found.append(LipFunction(space, ty.cast(list[Fraction], list(values))))
            continue
        for z in range(n):
            if values[z] is not None:
                continue
            for y in placed:
                for sign in (1, -1):
                    v = ty.cast(Fraction, values[y]) + sign * space.d(y, z)
                    if any(
                        abs(v - ty.cast(Fraction, values[w])) > space.d(w, z) for w in placed
                    ):
                        continue
                    nxt = values[:z] + (v,) + values[z + 1 :]
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    found.sort(key=lambda f: f.values)
    return found


def pairing(m: Pairable, f: LipFunction) -> Fraction:
    """The duality <m, f> = sum of coeff(x) * f(x)"""
    if m.space != f.space:
        raise LipschitzError("Vector and function live on different spaces", "pairing")
    return sum((c * f(x) for x, c in m.items()), Fraction(0))


def restrict(f: LipFunction, s: Iterable[int]) -> LipFunction:
    sub = subspace(f.space, s)
    return LipFunction(sub, [f(f.space.index(p)) for p in sub.points])


def compose(f: LipFunction, phi: PointMap) -> LipFunction:
    """f∘φ as a function on the source of φ"""
    if phi.target != f.space:
        raise LipschitzError("Map does not land in the domain of f", "compose")
    values = [f(phi(x)) for x in range(len(phi.source))]
    if values[phi.source.base] != 0:
        raise LipschitzError("Map does not preserve the base point", "compose")
    return LipFunction(phi.source, values)


def mcshane_extend(f: LipFunction, space: MetricSpace) -> LipFunction:
    """Extend f from a subspace to space keeping the Lipschitz number"""
    sub = f.space
    embed = [space.index(p) for p in sub.points]
    for a, x in enumerate(embed):
        for b, y in enumerate(embed):
            if sub.d(a, b) != space.d(x, y):
                raise SpaceError(
                    "%s is not a subspace: d(%s,%s) differs"
                    % (sub.points, sub.label(a), sub.label(b)),
                    "extension",
                )
    if sub.points[sub.base] != space.points[space.base]:
        raise SpaceError("Subspace and space have different base points", "extension")
    lip = lipschitz_number(f)
    return LipFunction(
        space,
        [
            min(f(a) + lip * space.d(x, s) for a, s in enumerate(embed))
            for x in range(len(space))
        ],
    )


def separating_function(space: MetricSpace, a: Iterable[int], x: int) -> LipFunction:
    """The capped cone min(1, d(y, A ∪ {e}) / d(x, A ∪ {e})).

    It is 0 on A and at the base point, 1 at x, and has the least possible
    Lipschitz number among such functions."""
    zero_set = set(space.check_index(i) for i in a)
    zero_set.add(space.base)
    space.check_index(x)
    if x in zero_set:
        raise LipschitzError(
            "No function can vanish on a set containing %s and be 1 there"
            % space.label(x),
            "separating function",
        )
    r = distance_to_set(space, x, zero_set)
    return LipFunction(
        space,
        [min(Fraction(1), distance_to_set(space, y, zero_set) / r) for y in range(len(space))],
    )
