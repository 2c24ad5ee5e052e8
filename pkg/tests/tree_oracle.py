"""Independent breadth-first oracle for Bass-Serre tree metrics.

Builds the ball of a given radius around the ``G_0`` base vertex explicitly
(finite factors only) and answers distance/path queries with networkx
shortest paths, with no reference to the closed-form distance.
"""

from __future__ import annotations

import networkx as nx

from noneq.bass_serre import TreeVertex, canonicalize
from noneq.free_product import FreeProductGroup


def build_ball(group: FreeProductGroup, radius: int) -> tuple[nx.Graph, dict[TreeVertex, int]]:
    base = canonicalize(group.identity(), 0)
    graph = nx.Graph()
    graph.add_node(base)
    dist = {base: 0}
    frontier = [base]
    while frontier:
        nxt = []
        for v in frontier:
            if dist[v] >= radius:
                continue
            factor = group.factors[v.side]
            for x in factor.elements():
                rep = (
                    v.rep
                    if factor.is_identity(x)
                    else group.multiply(v.rep, group.syllable(v.side, x))
                )
                w = canonicalize(rep, 1 - v.side)
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
                graph.add_edge(v, w)
        frontier = nxt
    return graph, dist
