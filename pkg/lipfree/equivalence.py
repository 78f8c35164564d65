"""
Linear maps between free spaces of finite spaces, given by image tables.

A witness T from M to N stores T(δx) for every non-base x of M as a finite
combination of points of N. The constructions below produce witnesses that
carry span δ(M) onto span δ(N) and are invertible, i.e. certify that M and N
are equivalent in the free-basis sense.
"""

import random
import typing as ty
from collections.abc import Mapping, Sequence
from fractions import Fraction
from itertools import product

from . import linalg
from .error import ICE, LipfreeError
from .free import (
    FreeVector,
    delta,
    free_norm,
    free_norm_dual,
    label_of,
    molecule,
    support,
)
from .lipschitz import LipFunction, lipschitz_number, lipschitz_vertices
from .metric import (
    Coproduct,
    MetricSpace,
    PointMap,
    image_set,
    is_retraction,
    metric_sum_embedding,
    path_space,
    quotient,
    subspace,
)
from .simplex import OPTIMAL, maximize


class WitnessError(LipfreeError):
    pass


class LinearWitness:
    __slots__ = ["source", "target", "images"]
    source: MetricSpace
    target: MetricSpace
    images: tuple[FreeVector, ...]

    def __init__(
        self,
        source: MetricSpace,
        target: MetricSpace,
        images: Mapping[int, FreeVector],
    ) -> None:
        table = [FreeVector(target)] * len(source)
        for x, v in images.items():
            source.check_index(x)
            if v.space != target:
                raise WitnessError(
                    "Image of %s is not a vector over the target" % source.label(x),
                    "witness",
                )
            if x == source.base:
                if v:
                    raise WitnessError("The base point must map to 0", "witness")
                continue
            table[x] = v
        self.source = source
        self.target = target
        self.images = tuple(table)

    def image(self, x: int) -> FreeVector:
        return self.images[x]

    def image_table(self) -> dict[int, FreeVector]:
        return {x: self.images[x] for x in self.source.non_base()}

    def matrix(self) -> linalg.Matrix:
        """Columns are the images in δ coordinates of the target"""
        return linalg.columns(
            [self.images[x].as_dict() for x in self.source.non_base()],
            self.target.non_base(),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearWitness):
            return NotImplemented
        return (
            self.images == other.images
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash(self.images)


def apply(t: LinearWitness, m: FreeVector) -> FreeVector:
    if m.space != t.source:
        raise WitnessError("Vector is not over the source of the witness", "apply")
    out = FreeVector(t.target)
    for x, c in m.items():
        out = out + t.images[x] * c
    return out


def from_matrix(
    source: MetricSpace, target: MetricSpace, rows: Sequence[Sequence[Fraction]]
) -> LinearWitness:
    cols = source.non_base()
    coords = target.non_base()
    return LinearWitness(
        source,
        target,
        {
            x: FreeVector(target, [(y, rows[r][c]) for r, y in enumerate(coords)])
            for c, x in enumerate(cols)
        },
    )


def identity_witness(space: MetricSpace) -> LinearWitness:
    return LinearWitness(space, space, {x: delta(space, x) for x in space.non_base()})


def scaling_witness(space: MetricSpace, t: Fraction | int) -> LinearWitness:
    return LinearWitness(
        space, space, {x: delta(space, x) * t for x in space.non_base()}
    )


def inverse(t: LinearWitness) -> LinearWitness | None:
    inv = linalg.inverse(t.matrix())
    if inv is None:
        return None
    return from_matrix(t.target, t.source, inv)


def adjoint(t: LinearWitness, f: LipFunction) -> LipFunction:
    """T*f, the function x -> <T δx, f> on the source"""
    if f.space != t.target:
        raise WitnessError("Function is not over the target of the witness", "adjoint")
    values = [Fraction(0)] * len(t.source)
    for x in t.source.non_base():
        values[x] = sum((c * f(y) for y, c in t.images[x].items()), Fraction(0))
    return LipFunction(t.source, values)


def operator_norm(t: LinearWitness) -> Fraction:
    """max over molecules of the norm of their image.

    The unit ball of the free space of a finite space is the convex hull of
    the molecules; operator_norm_oracle checks this independently."""
    space = t.source
    best = Fraction(0)
    n = len(space)
    for x in range(n):
        for y in range(x + 1, n):
            v = free_norm(apply(t, molecule(space, x, y)))
            if v > best:
                best = v
    return best


class OracleResult(ty.NamedTuple):
    value: Fraction
    dual_value: Fraction
    sampled: Fraction
    samples: int


def _sample_vectors(
    space: MetricSpace, rng: random.Random, samples: int
) -> list[FreeVector]:
    """Every ±1 sign pattern on the non-base points (up to 6 of them) and
    random rational vectors"""
    idx = space.non_base()
    if not idx:
        return []
    out = []
    if len(idx) <= 6:
        for signs in product((1, -1), repeat=len(idx)):
            out.append(FreeVector(space, list(zip(idx, signs))))
    for _ in range(samples):
        out.append(
            FreeVector(
                space,
                [(x, Fraction(rng.randint(-6, 6), rng.randint(1, 3))) for x in idx],
            )
        )
    return out


def operator_norm_oracle(
    t: LinearWitness, rng: random.Random, samples: int = 40
) -> OracleResult:
    """Brute force ||T|| = ||T*||: the largest L(T*f) over the extreme points
    f of the unit ball of Lip0 of the target, next to the best ratio over
    sign patterns and random vectors"""
    dual_value = max(
        (lipschitz_number(adjoint(t, f)) for f in lipschitz_vertices(t.target)),
        default=Fraction(0),
    )
    sampled = Fraction(0)
    for m in _sample_vectors(t.source, rng, samples):
        if not m:
            continue
        ratio = free_norm_dual(apply(t, m))[0] / free_norm_dual(m)[0]
        sampled = max(sampled, ratio)
    return OracleResult(max(dual_value, sampled), dual_value, sampled, samples)


def support_matching(t: LinearWitness, t_inv: LinearWitness) -> bool:
    """Every non-base y of the target has some x with x in supp(T⁻¹δy) and
    y in supp(Tδx), and symmetrically"""

    def one_side(a: LinearWitness, b: LinearWitness) -> bool:
        for y in a.target.non_base():
            if not any(y in support(a.images[x]) for x in support(b.images[y])):
                return False
        return True

    return one_side(t, t_inv) and one_side(t_inv, t)


class WitnessReport(ty.NamedTuple):
    valid: bool
    reason: str
    images: dict[int, FreeVector]
    inverse_images: dict[int, FreeVector] | None
    norm: Fraction
    inverse_norm: Fraction | None
    condition: Fraction | None
    support_matching: bool | None


def validate_witness(t: LinearWitness) -> WitnessReport:
    k = len(t.source.non_base())
    norm = operator_norm(t)
    if k != len(t.target.non_base()):
        return WitnessReport(
            False,
            "dimension mismatch: %d source points against %d target points"
            % (k, len(t.target.non_base())),
            t.image_table(),
            None,
            norm,
            None,
            None,
            None,
        )
    t_inv = inverse(t)
    if t_inv is None:
        return WitnessReport(
            False,
            "rank deficient: rank %d < %d" % (linalg.rank(t.matrix(), k), k),
            t.image_table(),
            None,
            norm,
            None,
            None,
            None,
        )
    inv_norm = operator_norm(t_inv)
    return WitnessReport(
        True,
        "",
        t.image_table(),
        t_inv.image_table(),
        norm,
        inv_norm,
        norm * inv_norm,
        support_matching(t, t_inv),
    )


def basis_space(
    space: MetricSpace,
    basis: Sequence[FreeVector],
    labels: Sequence[str] | None = None,
) -> MetricSpace:
    """The set {0} ∪ basis with the metric of the free norm of space"""
    names = list(labels) if labels is not None else [label_of(v) for v in basis]
    base_label = space.points[space.base]
    taken = {base_label}
    for i, name in enumerate(names):
        while name in taken:
            name += "'"
        taken.add(name)
        names[i] = name
    vectors = [FreeVector(space)] + list(basis)
    dist = [
        [Fraction(0) if a == b else free_norm(vectors[a] - vectors[b]) for b in range(len(vectors))]
        for a in range(len(vectors))
    ]
    return MetricSpace([base_label] + names, 0, dist)


def _coordinates(space: MetricSpace, basis: Sequence[FreeVector]) -> linalg.Matrix:
    """Inverse of the basis matrix: column x holds δx in basis coordinates"""
    coords = space.non_base()
    if len(basis) != len(coords):
        raise WitnessError(
            "%d vectors cannot span a free space of dimension %d"
            % (len(basis), len(coords)),
            "basis",
        )
    for v in basis:
        if v.space != space:
            raise WitnessError("Basis vector over another space", "basis")
    inv = linalg.inverse(linalg.columns([v.as_dict() for v in basis], coords))
    if inv is None:
        raise WitnessError("Basis vectors are linearly dependent", "basis")
    return inv


def _express(
    space: MetricSpace, inv: linalg.Matrix, m: FreeVector
) -> list[Fraction]:
    """Coordinates of m in the basis whose inverse matrix is inv"""
    coords = space.non_base()
    return linalg.mat_vec(inv, [m[c] for c in coords])


def _check_independent(space: MetricSpace, basis: Sequence[FreeVector], what: str) -> None:
    for v in basis:
        if v.space != space:
            raise WitnessError("Basis vector over another space", "basis")
    k = len(basis)
    if k and linalg.rank(linalg.columns([v.as_dict() for v in basis], space.non_base()), k) < k:
        raise WitnessError("%s vectors are linearly dependent" % what, "basis")


def _span_dual_norm(
    space: MetricSpace, pts: Sequence[int], basis: Sequence[FreeVector], a: Sequence[Fraction]
) -> Fraction:
    """max sum a_j c_j over ||sum c_j b_j|| <= 1.

    The ball is written as transport: sum c_j b_j = sum λ_xy (δx - δy) with
    λ >= 0 over ordered pairs of pts and sum λ_xy d(x, y) <= 1. c is split
    into c⁺ - c⁻."""
    k = len(basis)
    pairs = [(x, y) for x in pts for y in pts if x != y]
    cost = [Fraction(0)] * (2 * k) + [Fraction(0)] * len(pairs)
    cost[:k] = a
    cost[k : 2 * k] = [-v for v in a]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for z in pts:
        if z == space.base:
            continue
        row = [v[z] for v in basis] + [-v[z] for v in basis]
        row += [Fraction(-1 if z == x else 1 if z == y else 0) for x, y in pairs]
        rows += [row, [-c for c in row]]
        rhs += [Fraction(0), Fraction(0)]
    rows.append([Fraction(0)] * (2 * k) + [space.d(x, y) for x, y in pairs])
    rhs.append(Fraction(1))
    res = maximize(cost, rows, rhs)
    if res.status != OPTIMAL:
        raise ICE("span norm LP is %s" % res.status)
    return res.value


def span_operator_norm(
    space: MetricSpace, basis: Sequence[FreeVector], images: Sequence[FreeVector]
) -> Fraction:
    """||P|| on span(basis) for the linear P with P(b_j) = images[j] in that span.

    ||Pm|| is the largest <Pm, f> over the extreme 1-Lipschitz f, so ||P|| is
    the largest over those f of the dual norm of c -> <P(sum c_j b_j), f> on
    the span. Everything lives on the joint support and the base point, whose
    free space sits isometrically inside that of space."""
    pts = sorted({space.base}.union(*(support(v) for v in basis)))
    sub = subspace(space, pts)
    best = Fraction(0)
    for g in lipschitz_vertices(sub):
        f = {x: g(i) for i, x in enumerate(pts)}
        a = [sum((c * f[x] for x, c in v.items()), Fraction(0)) for v in images]
        if any(a):
            best = max(best, _span_dual_norm(space, pts, basis, a))
    return best


class QuotientWitness(ty.NamedTuple):
    witness: LinearWitness
    phi: PointMap
    retract: MetricSpace
    quotient: MetricSpace
    q: PointMap
    coproduct: Coproduct
    retract_index: tuple[int, ...]


def quotient_witness(space: MetricSpace, phi: PointMap) -> QuotientWitness:
    """M → φ(M) ∐ M/φ(M), δx ↦ δ(φ(x)) + δ([x])"""
    if phi.source != space or not is_retraction(phi):
        raise WitnessError("Map is not a retraction of the space", "quotient witness")
    r = image_set(phi)
    if space.base not in r:
        raise WitnessError(
            "The base point %s is not in the image of the retraction"
            % space.label(space.base),
            "quotient witness",
        )
    retract = subspace(space, r)
    quot, q = quotient(space, r)
    cp = metric_sum_embedding(retract, quot)
    s = cp.space
    images = {
        x: delta(s, cp.left[r.index(phi(x))]) + delta(s, cp.right[q(x)])
        for x in space.non_base()
    }
    return QuotientWitness(
        LinearWitness(space, s, images), phi, retract, quot, q, cp, tuple(r)
    )


def quotient_inverse_function(qw: QuotientWitness, g: LipFunction) -> LipFunction:
    """The inverse on functions: g on φ(M), and g(y) - g(φ(y)) on the class [y]"""
    space = qw.phi.source
    if g.space != space:
        raise WitnessError("Function is not over the retracted space", "quotient witness")
    s = qw.coproduct.space
    values = [Fraction(0)] * len(s)
    for p, x in enumerate(qw.retract_index):
        values[qw.coproduct.left[p]] = g(x)
    for y in range(len(space)):
        if y in qw.retract_index:
            continue
        values[qw.coproduct.right[qw.q(y)]] = g(y) - g(qw.phi(y))
    return LipFunction(s, values)


class ProjectionSplit(ty.NamedTuple):
    basis: tuple[FreeVector, ...]
    old_space: MetricSpace
    new_space: MetricSpace
    witness: LinearWitness
    pi_images: tuple[int | None, ...]
    sigma: tuple[FreeVector, ...]
    pi_norm: Fraction
    sigma_norm: Fraction
    bound_checks: tuple[bool, ...]


def projection_split(
    space: MetricSpace,
    basis: Sequence[FreeVector],
    pi: Sequence[FreeVector],
    rng: random.Random | None = None,
    samples: int = 0,
) -> ProjectionSplit:
    """Split a free basis M of its span by a projection π with π(M) ⊆ M into
    π(M) ∪ σ(M), σ = id - π.

    M needs to be linearly independent, not to span all of F(space)."""
    if len(pi) != len(basis):
        raise WitnessError("π needs one image per basis vector", "projection")
    _check_independent(space, basis, "Basis")
    position = {v: j for j, v in enumerate(basis)}
    pi_images: list[int | None] = []
    for j, v in enumerate(pi):
        if v.space != space:
            raise WitnessError("π image over another space", "projection")
        if not v:
            pi_images.append(None)
        elif v in position:
            pi_images.append(position[v])
        else:
            raise WitnessError(
                "π(%s) = %s is not in the basis" % (label_of(basis[j]), label_of(v)),
                "projection",
            )
    for j, t in enumerate(pi_images):
        if t is not None and pi_images[t] != t:
            raise WitnessError(
                "π is not idempotent at %s" % label_of(basis[j]), "projection"
            )

    zero = FreeVector(space)

    def pi_vec(j: int) -> FreeVector:
        t = pi_images[j]
        return zero if t is None else basis[t]

    sigma = tuple(basis[j] - pi_vec(j) for j in range(len(basis)))
    new: dict[FreeVector, int] = {}
    for v in [pi_vec(j) for j in range(len(basis))] + list(sigma):
        if v and v not in new:
            new[v] = len(new)
    new_basis = tuple(new)
    if len(new_basis) != len(basis):
        raise WitnessError(
            "π(M) ∪ σ(M) has %d vectors for a span of dimension %d"
            % (len(new_basis), len(basis)),
            "projection",
        )
    _check_independent(space, new_basis, "π(M) ∪ σ(M)")

    old_space = basis_space(space, basis)
    new_space = basis_space(space, new_basis)
    images = {}
    for j in range(len(basis)):
        v = FreeVector(new_space)
        for part in (pi_vec(j), sigma[j]):
            if part:
                v = v + delta(new_space, new[part] + 1)
        images[j + 1] = v
    witness = LinearWitness(old_space, new_space, images)

    if len(basis) == len(space.non_base()):
        inv = _coordinates(space, basis)

        def project(m: FreeVector) -> FreeVector:
            out = FreeVector(space)
            for j, c in enumerate(_express(space, inv, m)):
                if c:
                    out = out + pi_vec(j) * c
            return out

        # the span is all of F(space), whose unit ball is the hull of the molecules
        pi_norm = Fraction(0)
        sigma_norm = Fraction(0)
        n = len(space)
        for x in range(n):
            for y in range(x + 1, n):
                mol = molecule(space, x, y)
                p = project(mol)
                pi_norm = max(pi_norm, free_norm(p))
                sigma_norm = max(sigma_norm, free_norm(mol - p))
    else:
        pi_norm = span_operator_norm(space, basis, [pi_vec(j) for j in range(len(basis))])
        sigma_norm = span_operator_norm(space, basis, sigma)

    split = ProjectionSplit(
        new_basis,
        old_space,
        new_space,
        witness,
        tuple(pi_images),
        sigma,
        pi_norm,
        sigma_norm,
        (),
    )
    if rng is not None and samples:
        checks = []
        for _ in range(samples):
            f = LipFunction(
                new_space,
                [0] + [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in new_basis],
            )
            checks.append(check_extension_bound(split, f))
        split = split._replace(bound_checks=tuple(checks))
    return split


def check_extension_bound(split: ProjectionSplit, f: LipFunction) -> bool:
    """|h(x) - h(y)| <= L(f)(||π|| + ||σ||) ||x - y|| for h = f∘π + f∘σ"""
    h = adjoint(split.witness, f)
    bound = lipschitz_number(f) * (split.pi_norm + split.sigma_norm)
    old = split.old_space
    n = len(old)
    return all(
        abs(h(x) - h(y)) <= bound * old.d(x, y)
        for x in range(n)
        for y in range(x + 1, n)
    )


class NormalizedBasis(ty.NamedTuple):
    basis: tuple[FreeVector, ...]
    space: MetricSpace
    witness: LinearWitness
    diameter: Fraction


def normalize_basis(space: MetricSpace) -> NormalizedBasis:
    """μ(δx) = δx / ||δx||; the image space is bounded by 2"""
    idx = space.non_base()
    scale = [space.d(x, space.base) for x in idx]
    basis = tuple(delta(space, x) / s for x, s in zip(idx, scale))
    labels = [
        space.points[x] if s == 1 else "%s/%s" % (space.points[x], s)
        for x, s in zip(idx, scale)
    ]
    mu = basis_space(space, basis, labels)
    witness = LinearWitness(
        space, mu, {x: delta(mu, k + 1) * s for k, (x, s) in enumerate(zip(idx, scale))}
    )
    return NormalizedBasis(basis, mu, witness, mu.diameter())


class DiscreteWitness(ty.NamedTuple):
    witness: LinearWitness
    inverse: LinearWitness
    path: MetricSpace
    theta: Fraction
    diameter: Fraction
    norm: Fraction
    inverse_norm: Fraction
    condition: Fraction


def discrete_witness(space: MetricSpace) -> DiscreteWitness:
    """δ(x_k) ↦ δ(k) - δ(k-1) onto the path 0, 1, ..., n"""
    if len(space) < 2:
        raise WitnessError("Needs at least two points", "discrete witness")
    idx = space.non_base()
    n = len(idx)
    path = path_space(n)
    images = {x: delta(path, k + 1) - delta(path, k) for k, x in enumerate(idx)}
    witness = LinearWitness(space, path, images)
    back = {}
    acc = FreeVector(space)
    for k, x in enumerate(idx):
        acc = acc + delta(space, x)
        back[k + 1] = acc
    inv = LinearWitness(path, space, back)
    theta = min(space.d(a, b) for a in range(len(space)) for b in range(a + 1, len(space)))
    norm = operator_norm(witness)
    inverse_norm = operator_norm(inv)
    return DiscreteWitness(
        witness,
        inv,
        path,
        theta,
        space.diameter(),
        norm,
        inverse_norm,
        norm * inverse_norm,
    )


def extension_witness(space: MetricSpace, basis: Sequence[FreeVector]) -> LinearWitness:
    """δ̂: F(space) → F(basis space), the linear extension of δ on the basis"""
    inv = _coordinates(space, basis)
    bspace = basis_space(space, basis)
    coords = space.non_base()
    images = {}
    for c, x in enumerate(coords):
        images[x] = FreeVector(
            bspace, [(j + 1, inv[j][c]) for j in range(len(basis))]
        )
    return LinearWitness(space, bspace, images)


def free_basis_constant(space: MetricSpace, basis: Sequence[FreeVector]) -> Fraction:
    """The least K with ||f̂|| <= K L(f) for scalar f on the basis"""
    return operator_norm(extension_witness(space, basis))
