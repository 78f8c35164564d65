"""
Exact rational simplex method.

Solves  max c.x  subject to  A x <= b, x >= 0  over Fractions with a dense
tableau, a phase one through a single artificial variable when some b is
negative, and Bland's rule against cycling.
"""

import logging
import typing as ty
from collections.abc import Sequence
from fractions import Fraction

from .error import ICE

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPResult(ty.NamedTuple):
    status: str
    value: Fraction
    x: tuple[Fraction, ...]


class Tableau:
    __slots__ = ["rows", "basis", "obj", "width", "pivots"]
    rows: list[list[Fraction]]
    basis: list[int]
    obj: list[Fraction]
    width: int
    pivots: int

    def __init__(
        self,
        a: Sequence[Sequence[Fraction]],
        b: Sequence[Fraction],
        artificial: bool,
    ) -> None:
        n = len(a[0]) if a else 0
        m = len(a)
        self.width = n + m + (1 if artificial else 0)
        self.rows = []
        for r in range(m):
            row = [Fraction(v) for v in a[r]] + [Fraction(0)] * m
            row[n + r] = Fraction(1)
            if artificial:
                row.append(Fraction(-1))
            row.append(Fraction(b[r]))
            self.rows.append(row)
        self.basis = [n + r for r in range(m)]
        self.obj = [Fraction(0)] * (self.width + 1)
        self.pivots = 0

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        p = row[j]
        if p != 1:
            row[:] = [v / p for v in row]
        nz = [k for k, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            t = other[j]
            if t:
                for k in nz:
                    other[k] -= t * row[k]
        t = self.obj[j]
        if t:
            for k in nz:
                self.obj[k] -= t * row[k]
        self.basis[r] = j
        self.pivots += 1

    def entering(self, allowed: int) -> int | None:
        for j in range(allowed):
            if self.obj[j] > 0:
                return j
        return None

    def leaving(self, j: int) -> int | None:
        best: int | None = None
        best_ratio = Fraction(0)
        for i, row in enumerate(self.rows):
            if row[j] > 0:
                ratio = row[-1] / row[j]
                if (
                    best is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[best])
                ):
                    best = i
                    best_ratio = ratio
        return best

    def run(self, allowed: int) -> bool:
        """Iterate to optimality, False if unbounded"""
        while True:
            j = self.entering(allowed)
            if j is None:
                return True
            r = self.leaving(j)
            if r is None:
                return False
            self.pivot(r, j)

    def value(self) -> Fraction:
        return -self.obj[-1]


def maximize(
    c: Sequence[Fraction | int],
    a: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
) -> LPResult:
    n = len(c)
    m = len(a)
    if any(len(row) != n for row in a) or len(b) != m:
        raise ICE("inconsistent LP dimensions")
    a = [[Fraction(v) for v in row] for row in a]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    need_phase1 = any(v < 0 for v in b)
    t = Tableau(a, b, need_phase1)
    if need_phase1:
        art = n + m
        t.obj[art] = Fraction(-1)
        worst = min(range(m), key=lambda r: (b[r], r))
        t.pivot(worst, art)
        t.run(t.width)
        if t.value() < 0:
            log.debug("infeasible after %d pivots", t.pivots)
            return LPResult(INFEASIBLE, Fraction(0), ())
        if art in t.basis:
            r = t.basis.index(art)
            j = next((k for k in range(n + m) if t.rows[r][k]), None)
            if j is None:
                del t.rows[r]
                del t.basis[r]
            else:
                t.pivot(r, j)
        for row in t.rows:
            del row[art]
        t.width -= 1
    t.obj = c + [Fraction(0)] * (m + 1)
    for r, v in enumerate(t.basis):
        if v < n and c[v]:
            cv = c[v]
            row = t.rows[r]
            t.obj = [o - cv * x for o, x in zip(t.obj, row)]
    if not t.run(t.width):
        log.debug("unbounded after %d pivots", t.pivots)
        return LPResult(UNBOUNDED, Fraction(0), ())
    x = [Fraction(0)] * n
    for r, v in enumerate(t.basis):
        if v < n:
            x[v] = t.rows[r][-1]
    log.debug("optimal after %d pivots", t.pivots)
    return LPResult(OPTIMAL, t.value(), tuple(x))
