"""
Finite pointed metric spaces and the constructions on them
"""

import typing as ty
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from .error import LipfreeError


class SpaceError(LipfreeError):
    pass


class Violation(ty.NamedTuple):
    """A failed metric axiom. For triangle the indices are (i, k, via)"""

    axiom: str
    indices: tuple[int, ...]

    def describe(self, space: "MetricSpace") -> str:
        if self.axiom == "base":
            return "base(%d)" % self.indices[0]
        names = [space.label(i) for i in self.indices]
        if self.axiom == "triangle":
            return "triangle(%s,%s via %s)" % (names[0], names[1], names[2])
        return "%s(%s)" % (self.axiom, ",".join(names))


class MetricSpace:
    """A finite pointed metric space with exact rational distances.

    The constructor only checks the shape of the distance matrix, use
    validate() to check the metric axioms."""

    __slots__ = ["points", "base", "dist", "_index"]
    points: tuple[str, ...]
    base: int
    dist: tuple[tuple[Fraction, ...], ...]
    _index: dict[str, int]

    def __init__(
        self,
        points: Sequence[str],
        base: int,
        dist: Sequence[Sequence[Fraction | int]],
    ) -> None:
        n = len(points)
        if n == 0:
            raise SpaceError("A pointed space needs at least its base point", "space")
        if len(dist) != n or any(len(row) != n for row in dist):
            raise SpaceError("Distance matrix must be %d x %d" % (n, n), "space")
        self.points = tuple(points)
        self.base = base
        self.dist = tuple(tuple(Fraction(v) for v in row) for row in dist)
        self._index = {}
        for i, p in enumerate(self.points):
            self._index.setdefault(p, i)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, MetricSpace):
            return NotImplemented
        return (
            self.points == other.points
            and self.base == other.base
            and self.dist == other.dist
        )

    def __hash__(self) -> int:
        return hash((self.points, self.base, self.dist))

    def __repr__(self) -> str:
        return "MetricSpace(%r, base=%r)" % (self.points, self.label(self.base))

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def label(self, i: int) -> str:
        if 0 <= i < len(self.points):
            return self.points[i]
        return str(i)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise SpaceError("Unknown point %r" % label, "space") from None

    def check_index(self, i: int) -> int:
        if not 0 <= i < len(self.points):
            raise SpaceError("Point index %d out of range" % i, "space")
        return i

    def non_base(self) -> list[int]:
        return [i for i in range(len(self.points)) if i != self.base]

    def diameter(self) -> Fraction:
        return max((v for row in self.dist for v in row), default=Fraction(0))


def validate(space: MetricSpace) -> list[Violation]:
    n = len(space)
    dist = space.dist
    out: list[Violation] = []
    seen: dict[str, int] = {}
    for i, p in enumerate(space.points):
        if p in seen:
            out.append(Violation("distinct", (seen[p], i)))
        else:
            seen[p] = i
    if not 0 <= space.base < n:
        out.append(Violation("base", (space.base,)))
    for i in range(n):
        if dist[i][i] != 0:
            out.append(Violation("diagonal", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                out.append(Violation("symmetry", (i, j)))
            if dist[i][j] < 0 or dist[j][i] < 0:
                out.append(Violation("nonnegativity", (i, j)))
            elif dist[i][j] == 0 or dist[j][i] == 0:
                out.append(Violation("positivity", (i, j)))
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                if j == i or j == k:
                    continue
                if dist[i][k] > dist[i][j] + dist[j][k]:
                    out.append(Violation("triangle", (i, k, j)))
    return out


def is_valid(space: MetricSpace) -> bool:
    return not validate(space)


class PointMap:
    """A map between the points of two spaces, given by an index table"""

    __slots__ = ["source", "target", "image", "base_preserving", "lipschitz"]
    source: MetricSpace
    target: MetricSpace
    image: tuple[int, ...]
    base_preserving: bool
    lipschitz: Fraction

    def __init__(
        self, source: MetricSpace, target: MetricSpace, image: Sequence[int]
    ) -> None:
        if len(image) != len(source):
            raise SpaceError(
                "Map needs one image per point, got %d for %d points"
                % (len(image), len(source)),
                "point map",
            )
        for i in image:
            target.check_index(i)
        self.source = source
        self.target = target
        self.image = tuple(image)
        self.base_preserving = self.image[source.base] == target.base
        best = Fraction(0)
        n = len(source)
        for x in range(n):
            for y in range(x + 1, n):
                if source.d(x, y) == 0:
                    continue
                r = target.d(self.image[x], self.image[y]) / source.d(x, y)
                if r > best:
                    best = r
        self.lipschitz = best

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointMap):
            return NotImplemented
        return (
            self.image == other.image
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash(self.image)

    @classmethod
    def from_labels(
        cls, source: MetricSpace, target: MetricSpace, mapping: Mapping[str, str]
    ) -> "PointMap":
        """Points missing from mapping go to the point with the same label"""
        for label in mapping:
            source.index(label)
        return cls(
            source,
            target,
            [
                target.index(mapping.get(label, label))
                for label in source.points
            ],
        )


def image_set(phi: PointMap) -> list[int]:
    return sorted(set(phi.image))


def is_retraction(phi: PointMap) -> bool:
    if phi.source != phi.target:
        return False
    return all(phi(phi(x)) == phi(x) for x in range(len(phi.source)))


class Coproduct(ty.NamedTuple):
    """M ∐ N together with the two injections as index tables"""

    space: MetricSpace
    left: tuple[int, ...]
    right: tuple[int, ...]


def metric_sum_embedding(m: MetricSpace, n: MetricSpace) -> Coproduct:
    labels = list(m.points)
    taken = set(labels)
    right: list[int] = []
    origin: list[tuple[int, int]] = [(0, i) for i in range(len(m))]
    for j, label in enumerate(n.points):
        if j == n.base:
            right.append(m.base)
            continue
        while label in taken:
            label += "'"
        taken.add(label)
        right.append(len(labels))
        labels.append(label)
        origin.append((1, j))

    def dd(a: tuple[int, int], b: tuple[int, int]) -> Fraction:
        if a[0] == b[0]:
            return (m if a[0] == 0 else n).d(a[1], b[1])
        x, y = (a[1], b[1]) if a[0] == 0 else (b[1], a[1])
        return m.d(x, m.base) + n.d(n.base, y)

    dist = [[dd(a, b) for b in origin] for a in origin]
    return Coproduct(
        MetricSpace(labels, m.base, dist), tuple(range(len(m))), tuple(right)
    )


def metric_sum(m: MetricSpace, n: MetricSpace) -> MetricSpace:
    """Disjoint union with glued base points"""
    return metric_sum_embedding(m, n).space


def distance_to_set(space: MetricSpace, x: int, a: Iterable[int]) -> Fraction:
    items = list(a)
    if not items:
        raise SpaceError("Distance to the empty set", "distance to set")
    return min(space.d(x, space.check_index(i)) for i in items)


def quotient(
    space: MetricSpace, c: Iterable[int], label: str | None = None
) -> tuple[MetricSpace, PointMap]:
    """Collapse the set c to one point.

    Classes are ordered by their smallest member; singletons are labelled
    [x]."""
    members = sorted(set(space.check_index(i) for i in c))
    if not members:
        raise SpaceError("Cannot collapse an empty set", "quotient")
    collapsed = set(members)
    if label is None:
        label = "[%s]" % ",".join(space.points[i] for i in members)
    reps: list[int | None] = []
    labels: list[str] = []
    class_of = [0] * len(space)
    for i in range(len(space)):
        if i in collapsed:
            if i == members[0]:
                reps.append(None)
                labels.append(label)
            class_of[i] = reps.index(None)
        else:
            class_of[i] = len(reps)
            reps.append(i)
            labels.append("[%s]" % space.points[i])
    if len(set(labels)) != len(labels):
        raise SpaceError("Class label %r is already in use" % label, "quotient")
    to_c = [distance_to_set(space, i, members) for i in range(len(space))]

    def dd(a: int | None, b: int | None) -> Fraction:
        if a == b:
            return Fraction(0)
        if a is None:
            assert b is not None
            return to_c[b]
        if b is None:
            return to_c[a]
        return min(space.d(a, b), to_c[a] + to_c[b])

    q = MetricSpace(
        labels, class_of[space.base], [[dd(a, b) for b in reps] for a in reps]
    )
    return q, PointMap(space, q, class_of)


def subspace(space: MetricSpace, s: Iterable[int]) -> MetricSpace:
    keep = sorted(set(space.check_index(i) for i in s))
    if space.base not in keep:
        raise SpaceError(
            "Subspace must contain the base point %s" % space.label(space.base),
            "subspace",
        )
    return MetricSpace(
        [space.points[i] for i in keep],
        keep.index(space.base),
        [[space.d(i, j) for j in keep] for i in keep],
    )


def path_space(n: int) -> MetricSpace:
    """The points 0, 1, ..., n with unit steps and base 0"""
    return MetricSpace(
        [str(i) for i in range(n + 1)],
        0,
        [[abs(i - j) for j in range(n + 1)] for i in range(n + 1)],
    )


def equilateral_space(n: int, side: Fraction | int = 1) -> MetricSpace:
    """n points at mutual distance side, base 0"""
    return MetricSpace(
        [str(i) for i in range(n)],
        0,
        [[0 if i == j else side for j in range(n)] for i in range(n)],
    )
