"""
Finitely supported elements of the Lipschitz-free space and their norm.

The norm is computed twice: as the maximum of the pairing over 1-Lipschitz
functions (an exact LP) and as the cheapest transport of the coefficients to
the base point (a transshipment). The two must agree exactly.
"""

from collections.abc import Iterable, Mapping
from fractions import Fraction

from .error import ICE, LipfreeError
from .flow import FlowSolution, transship
from .lipschitz import LipFunction, mcshane_extend
from .metric import MetricSpace, subspace
from .simplex import OPTIMAL, maximize


class FreeError(LipfreeError):
    pass


class FreeVector:
    """sum of coeff(x) δ(x) with no base point term and no zero coefficients"""

    __slots__ = ["space", "coeffs"]
    space: MetricSpace
    coeffs: tuple[tuple[int, Fraction], ...]

    def __init__(
        self,
        space: MetricSpace,
        coeffs: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]] = (),
    ) -> None:
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Fraction] = {}
        for i, c in items:
            space.check_index(i)
            if i == space.base:
                continue
            acc[i] = acc.get(i, Fraction(0)) + Fraction(c)
        self.space = space
        self.coeffs = tuple(sorted((i, c) for i, c in acc.items() if c != 0))

    @classmethod
    def from_labels(
        cls, space: MetricSpace, coeffs: Mapping[str, Fraction | int]
    ) -> "FreeVector":
        return cls(space, [(space.index(label), c) for label, c in coeffs.items()])

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        for j, c in self.coeffs:
            if j == i:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def to_labels(self) -> dict[str, Fraction]:
        return {self.space.points[i]: c for i, c in self.coeffs}

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.coeffs)

    def total(self) -> Fraction:
        return sum((c for _, c in self.coeffs), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self.coeffs == other.coeffs and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "FreeVector(%s)" % (label_of(self) if self.coeffs else "0")

    def _check(self, other: "FreeVector") -> None:
        if other.space != self.space:
            raise FreeError("Vectors live on different spaces", "free vector")

    def __add__(self, other: "FreeVector") -> "FreeVector":
        self._check(other)
        return FreeVector(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "FreeVector") -> "FreeVector":
        self._check(other)
        return FreeVector(self.space, self.coeffs + tuple((i, -c) for i, c in other.coeffs))

    def __neg__(self) -> "FreeVector":
        return FreeVector(self.space, [(i, -c) for i, c in self.coeffs])

    def __mul__(self, t: Fraction | int) -> "FreeVector":
        return FreeVector(self.space, [(i, c * t) for i, c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, t: Fraction | int) -> "FreeVector":
        return FreeVector(self.space, [(i, c / t) for i, c in self.coeffs])


def label_of(v: FreeVector) -> str:
    """A readable name such as "2-1" or "1/2*x"; the base label for 0"""
    space = v.space
    if not v.coeffs:
        return space.points[space.base]
    terms = sorted(v.coeffs, key=lambda t: (t[1] < 0, t[0]))
    out = []
    for k, (i, c) in enumerate(terms):
        sign = "-" if c < 0 else ("+" if k else "")
        mag = abs(c)
        name = space.points[i]
        out.append(sign + (name if mag == 1 else "%s*%s" % (mag, name)))
    return "".join(out)


def delta(space: MetricSpace, x: int) -> FreeVector:
    return FreeVector(space, [(x, 1)])


def support(m: FreeVector) -> frozenset[int]:
    return frozenset(i for i, _ in m.coeffs)


def molecule(space: MetricSpace, x: int, y: int) -> FreeVector:
    """(δx - δy) / d(x, y), a vector of norm exactly 1"""
    if x == y:
        raise FreeError("Molecule needs two distinct points", "molecule")
    return (delta(space, x) - delta(space, y)) / space.d(x, y)


def free_norm_dual(m: FreeVector) -> tuple[Fraction, LipFunction]:
    """max <m, f> over 1-Lipschitz f vanishing at the base point.

    The LP runs on supp(m) and the base point; the optimal function is then
    extended to the whole space without raising its Lipschitz number. With
    g = f + d(., e) >= 0 every right hand side is nonnegative, so the origin
    is a feasible start."""
    space = m.space
    if not m.coeffs:
        return Fraction(0), LipFunction.zero(space)
    keep = [space.base] + [i for i, _ in m.coeffs]
    sub = subspace(space, keep)
    idx = sub.non_base()
    shift = [sub.d(x, sub.base) for x in idx]
    k = len(idx)
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    for p in range(k):
        for q in range(k):
            if p == q:
                continue
            row = [Fraction(0)] * k
            row[p] = Fraction(1)
            row[q] = Fraction(-1)
            a.append(row)
            b.append(sub.d(idx[p], idx[q]) + shift[p] - shift[q])
        row = [Fraction(0)] * k
        row[p] = Fraction(1)
        a.append(row)
        b.append(2 * shift[p])
    c = [m[space.index(sub.points[x])] for x in idx]
    res = maximize(c, a, b)
    if res.status != OPTIMAL:
        raise ICE("norm LP is %s" % res.status)
    values = [Fraction(0)] * len(sub)
    for p, x in enumerate(idx):
        values[x] = res.x[p] - shift[p]
    norm = res.value - sum((cp * s for cp, s in zip(c, shift)), Fraction(0))
    f = mcshane_extend(LipFunction(sub, values), space)
    return norm, f


def free_norm_flow(m: FreeVector) -> tuple[Fraction, FlowSolution]:
    """Cheapest flow on the complete graph whose divergence is m, the base
    point absorbing the imbalance"""
    space = m.space
    supply = [Fraction(0)] * len(space)
    for i, c in m.coeffs:
        supply[i] = c
    supply[space.base] = -m.total()
    sol = transship(space.dist, supply)
    return sol.cost, sol


def free_norm(m: FreeVector) -> Fraction:
    return free_norm_flow(m)[0]


def check_flow(m: FreeVector, sol: FlowSolution) -> bool:
    space = m.space
    for i in range(len(space)):
        want = -m.total() if i == space.base else m[i]
        if sol.divergence(i) != want:
            return False
    if any(w < 0 for _, _, w in sol.edges):
        return False
    return sol.cost == sum((w * space.d(u, v) for u, v, w in sol.edges), Fraction(0))


def four_point_norm(space: MetricSpace, a: int, b: int, c: int, d: int) -> Fraction:
    """||δa - δb + δc - δd|| in closed form"""
    return min(space.d(a, b) + space.d(c, d), space.d(a, d) + space.d(c, b))


def graev_distance(u: FreeVector, v: FreeVector) -> Fraction:
    """The Graev metric between integer combinations of points"""
    if not u.is_integral() or not v.is_integral():
        raise FreeError("Graev distance needs integer coefficients", "graev")
    return free_norm_dual(u - v)[0]
