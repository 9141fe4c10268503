"""Sum-rate bounds from acyclic subsets of the side-information graph."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .channel import ChannelParams, SideInfoGraph
from .geometry import HalfSpaceRegion, LinearConstraint


@dataclass(frozen=True)
class AcyclicSubsetBound:
    subset: tuple[int, ...]
    bound: float

    def constraint(self, dim: int = 3) -> LinearConstraint:
        coeffs = tuple(1.0 if i in self.subset else 0.0 for i in range(1, dim + 1))
        label = "sum(" + ",".join(map(str, self.subset)) + ")"
        return LinearConstraint(coeffs, self.bound, label)


def induced_has_cycle(graph: SideInfoGraph, subset) -> bool:
    """Directed-cycle test on the subgraph induced by ``subset`` (iterative DFS)."""
    nodes = set(subset)
    if not nodes:
        raise ValueError("subset must be nonempty")
    if not nodes <= set(graph.nodes):
        raise ValueError(f"subset {sorted(nodes)} not within nodes {graph.nodes}")
    succ = {v: sorted(j for i, j in graph.edges if i == v and j in nodes) for v in nodes}
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(nodes, WHITE)
    for root in sorted(nodes):
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        stack = [(root, iter(succ[root]))]
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[v] = BLACK
                stack.pop()
            elif colour[nxt] == GREY:
                return True
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(succ[nxt])))
    return False


def acyclic_subsets(graph: SideInfoGraph) -> list[tuple[int, ...]]:
    """Nonempty node subsets with an acyclic induced subgraph, by size then lexicographic."""
    out = []
    for r in range(1, len(graph.nodes) + 1):
        for S in itertools.combinations(sorted(graph.nodes), r):
            if not induced_has_cycle(graph, S):
                out.append(S)
    return out


def subset_bound(params: ChannelParams, subset) -> float:
    """``1/2 log2(1 + |K| P / min_{j in K} N_j)``."""
    nmin = min(params.noise(j) for j in subset)
    return 0.5 * math.log2(1.0 + len(subset) * params.P / nmin)


def acyclic_subset_bounds(graph: SideInfoGraph, params: ChannelParams) -> list[AcyclicSubsetBound]:
    return [AcyclicSubsetBound(S, subset_bound(params, S)) for S in acyclic_subsets(graph)]


def theorem1_region(graph: SideInfoGraph, params: ChannelParams) -> HalfSpaceRegion:
    return HalfSpaceRegion(tuple(b.constraint(len(graph.nodes)) for b in acyclic_subset_bounds(graph, params)))
