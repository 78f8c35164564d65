"""
Exact rank and inverse of rational matrices, computed over QQ
"""

from collections.abc import Sequence
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[Fraction]]


def to_domain(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    return DomainMatrix(
        [[QQ(v.numerator, v.denominator) for v in row] for row in rows],
        (len(rows), ncols),
        QQ,
    )


def from_domain(dm: DomainMatrix) -> Matrix:
    m = dm.to_Matrix()
    return [
        [Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(m.cols)]
        for i in range(m.rows)
    ]


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return int(to_domain(rows, ncols).rank())


def inverse(rows: Sequence[Sequence[Fraction]]) -> Matrix | None:
    """Inverse of a square matrix, None if it is singular or not square"""
    n = len(rows)
    if any(len(row) != n for row in rows):
        return None
    if n == 0:
        return []
    dm = to_domain(rows, n)
    if dm.rank() < n:
        return None
    return from_domain(dm.inv())


def columns(vectors: Sequence[dict[int, Fraction]], coords: Sequence[int]) -> Matrix:
    """The matrix whose j-th column holds vectors[j] in the given coordinates"""
    return [[v.get(c, Fraction(0)) for v in vectors] for c in coords]


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]
