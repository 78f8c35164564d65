"""
Min-cost transshipment on a complete graph by successive shortest paths.

The cost matrix is a metric, so an optimal flow only needs direct edges from
nodes with positive supply to nodes with negative supply.
"""

import logging
import typing as ty
from collections.abc import Sequence
from fractions import Fraction

from .error import ICE

log = logging.getLogger(__name__)


class FlowSolution(ty.NamedTuple):
    edges: tuple[tuple[int, int, Fraction], ...]
    cost: Fraction

    def divergence(self, node: int) -> Fraction:
        """Outflow minus inflow"""
        out = Fraction(0)
        for u, v, w in self.edges:
            if u == node:
                out += w
            if v == node:
                out -= w
        return out


def transship(
    cost: Sequence[Sequence[Fraction]], supply: Sequence[Fraction]
) -> FlowSolution:
    if sum(supply) != 0:
        raise ICE("supplies do not balance")
    sources = [i for i, s in enumerate(supply) if s > 0]
    sinks = [i for i, s in enumerate(supply) if s < 0]
    left = {u: Fraction(supply[u]) for u in sources}
    need = {v: -Fraction(supply[v]) for v in sinks}
    flow = {(u, v): Fraction(0) for u in sources for v in sinks}
    if len(sources) == 1 or len(sinks) == 1:
        # Every unit has one possible partner
        for u in sources:
            for v in sinks:
                flow[u, v] = min(left[u], need[v]) if len(sinks) == 1 else need[v]
        left = {u: Fraction(0) for u in sources}

    # Residual graph nodes: "s", ("u", i), ("v", j), "t"
    rounds = 0
    while any(left.values()):
        rounds += 1
        arcs: list[tuple[object, object, Fraction, Fraction | None]] = []
        for u in sources:
            if left[u]:
                arcs.append(("s", ("u", u), Fraction(0), left[u]))
            for v in sinks:
                arcs.append((("u", u), ("v", v), cost[u][v], None))
                if flow[u, v]:
                    arcs.append((("v", v), ("u", u), -cost[u][v], flow[u, v]))
        for v in sinks:
            if need[v]:
                arcs.append((("v", v), "t", Fraction(0), need[v]))

        dist: dict[object, Fraction] = {"s": Fraction(0)}
        prev: dict[object, tuple[object, object, Fraction, Fraction | None]] = {}
        for _ in range(len(sources) + len(sinks) + 2):
            changed = False
            for arc in arcs:
                a, b, c, _cap = arc
                if a in dist and (b not in dist or dist[a] + c < dist[b]):
                    dist[b] = dist[a] + c
                    prev[b] = arc
                    changed = True
            if not changed:
                break
        if "t" not in dist:
            raise ICE("no augmenting path with supply left")

        path = []
        node: object = "t"
        while node != "s":
            arc = prev[node]
            path.append(arc)
            node = arc[0]
        amount = min(arc[3] for arc in path if arc[3] is not None)
        for a, b, _c, _cap in path:
            if a == "s":
                left[ty.cast(tuple[str, int], b)[1]] -= amount
            elif b == "t":
                need[ty.cast(tuple[str, int], a)[1]] -= amount
            elif a[0] == "u":  # type: ignore[index]
                flow[a[1], b[1]] += amount  # type: ignore[index]
            else:
                flow[b[1], a[1]] -= amount  # type: ignore[index]

    edges = tuple(sorted((u, v, w) for (u, v), w in flow.items() if w))
    total = sum((w * cost[u][v] for u, v, w in edges), Fraction(0))
    log.debug("transshipment: %d augmentations, cost %s", rounds, total)
    return FlowSolution(edges, total)
