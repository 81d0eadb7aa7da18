"""Independent maximum matching of cancelling pairs for cross-checks."""

from typing import List, Sequence, Tuple

import networkx as nx

from nonsmooth_cert.fixed_points import FixedPointMultiset, is_cancelling_pair

Edge = Tuple[int, int]


def cancelling_edges(fps: FixedPointMultiset) -> List[Edge]:
    """All index pairs (i, j), i < j, whose points cancel."""
    return [
        (i, j)
        for i in range(len(fps))
        for j in range(i + 1, len(fps))
        if is_cancelling_pair(fps[i], fps[j]) is not None
    ]


def brute_force_max_matching(vertex_count: int, edges: Sequence[Edge]) -> int:
    """Maximum matching size by exhaustive recursion (small graphs only)."""
    neighbours = {v: set() for v in range(vertex_count)}
    for i, j in edges:
        neighbours[i].add(j)
        neighbours[j].add(i)

    def best(free: frozenset) -> int:
        if not free:
            return 0
        v = min(free)
        rest = free - {v}
        result = best(rest)
        for u in neighbours[v] & rest:
            result = max(result, 1 + best(rest - {u}))
        return result

    return best(frozenset(range(vertex_count)))


def networkx_max_matching(vertex_count: int, edges: Sequence[Edge]) -> int:
    """Maximum cardinality matching size via networkx."""
    graph = nx.Graph()
    graph.add_nodes_from(range(vertex_count))
    graph.add_edges_from(edges)
    return len(nx.max_weight_matching(graph, maxcardinality=True))
