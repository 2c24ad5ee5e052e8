"""Folded subgroup graphs for finitely generated subgroups of free groups.

``fold`` wedges loops for the generator words at a basepoint and folds until
no vertex has two equally-labeled edges in the same direction.  The folded
core graph answers membership by path reading and has rank
``|edges| - |vertices| + 1``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .free_group import FreeWord

__all__ = ["CoreGraph", "fold", "contains", "rank", "verify_basis_pair"]


class CoreGraph:
    """Immutable folded graph with basepoint 0."""

    __slots__ = ("num_vertices", "edges", "_out", "_in")

    def __init__(self, num_vertices: int, edges: Iterable[tuple[int, int, int]]):
        self.num_vertices = num_vertices
        self.edges = frozenset(edges)
        out: list[dict[int, int]] = [{} for _ in range(num_vertices)]
        inc: list[dict[int, int]] = [{} for _ in range(num_vertices)]
        for u, label, v in self.edges:
            if label in out[u] or label in inc[v]:
                raise ValueError("graph is not folded")
            out[u][label] = v
            inc[v][label] = u
        self._out = out
        self._in = inc

    @property
    def folded(self) -> bool:
        return True

    def rank(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def contains(self, w: FreeWord) -> bool:
        cur = 0
        for letter in w.letters():
            step = self._out[cur].get(letter) if letter > 0 else self._in[cur].get(-letter)
            if step is None:
                return False
            cur = step
        return cur == 0

    def canonical_key(self):
        """Isomorphism invariant: basepointed BFS relabeling, edges sorted."""
        order = {0: 0}
        queue = [0]
        while queue:
            v = queue.pop(0)
            for label in sorted(self._out[v]):
                w = self._out[v][label]
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
            for label in sorted(self._in[v]):
                w = self._in[v][label]
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
        return (
            self.num_vertices,
            tuple(sorted((order[u], label, order[v]) for u, label, v in self.edges)),
        )

    def __repr__(self) -> str:
        return f"CoreGraph(vertices={self.num_vertices}, edges={len(self.edges)}, rank={self.rank()})"


def _fold_edges(n: int, raw_edges: list[tuple[int, int, int]]):
    parent = list(range(n))
    size = [1] * n
    out: list[dict[int, int]] = [{} for _ in range(n)]
    inc: list[dict[int, int]] = [{} for _ in range(n)]

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending: list[tuple[int, int]] = []

    def drain():
        while pending:
            a, b = pending.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            for label, w in out[b].items():
                if label in out[a]:
                    pending.append((out[a][label], w))
                else:
                    out[a][label] = w
            out[b] = {}
            for label, w in inc[b].items():
                if label in inc[a]:
                    pending.append((inc[a][label], w))
                else:
                    inc[a][label] = w
            inc[b] = {}

    for u, label, v in raw_edges:
        u, v = find(u), find(v)
        if label in out[u]:
            w = find(out[u][label])
            if w != v:
                pending.append((w, v))
                drain()
            continue
        if label in inc[v]:
            u2 = find(inc[v][label])
            if u2 != u:
                pending.append((u2, u))
                drain()
            continue
        out[u][label] = v
        inc[v][label] = u
    return find, out


def fold(generators: Sequence[FreeWord]) -> CoreGraph:
    """Folded core graph of the subgroup generated by the given words."""
    words = [w.letters() for w in generators if not w.is_identity()]
    n = 1 + sum(len(ls) - 1 for ls in words)
    raw: list[tuple[int, int, int]] = []
    nxt = 1
    for ls in words:
        cur = 0
        for i, letter in enumerate(ls):
            dst = 0 if i == len(ls) - 1 else nxt
            if dst:
                nxt += 1
            if letter > 0:
                raw.append((cur, letter, dst))
            else:
                raw.append((dst, -letter, cur))
            cur = dst
    find, out = _fold_edges(n, raw)

    edge_set = set()
    for u in range(n):
        if find(u) != u:
            continue
        for label, v in out[u].items():
            edge_set.add((u, label, find(v)))
    # Trim stray degree-1 vertices away from the basepoint (reduced inputs
    # rarely produce any, but identified duplicate edges can).
    base = find(0)
    while True:
        deg: dict[int, int] = {}
        for u, _, v in edge_set:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        hairs = {v for v, d in deg.items() if d <= 1 and v != base}
        if not hairs:
            break
        edge_set = {(u, l, v) for u, l, v in edge_set if u not in hairs and v not in hairs}
    verts = {base} | {u for u, _, _ in edge_set} | {v for _, _, v in edge_set}
    index = {base: 0}
    for v in sorted(verts - {base}):
        index[v] = len(index)
    return CoreGraph(len(index), ((index[u], l, index[v]) for u, l, v in edge_set))


def contains(graph: CoreGraph, w: FreeWord) -> bool:
    """Membership of ``w`` in the subgroup the graph represents."""
    if not graph.folded:
        raise ValueError("membership requires a folded graph")
    return graph.contains(w)


def rank(graph: CoreGraph) -> int:
    return graph.rank()


def verify_basis_pair(a: FreeWord, b: FreeWord, i: int, j: int, k: int, l: int) -> bool:
    """Sufficient certificate that matrix entries ``(a, b)`` extend to a basis.

    For positions in distinct rows (``i != k``) the pair is folded together
    with helper generators ``e_s`` for a maximal ``S`` drawn from
    ``{i+j, k+l}`` disjoint from ``{i, k}`` (``i+j`` preferred); the subgroup
    must have rank ``2 + |S|`` and contain ``e_i``, ``e_k`` and every
    ``e_s``.  On the diagonal (``(i,j) == (k,l)``) the pair alone must
    generate a rank-2 subgroup containing ``e_i`` and ``e_{i+j}``.  A true
    result certifies basis extension; false never claims the opposite.
    """
    if min(i, j, k, l) < 1:
        raise ValueError("matrix positions are 1-based positive integers")
    e = FreeWord.generator
    if (i, j) == (k, l):
        graph = fold([a, b])
        return graph.rank() == 2 and graph.contains(e(i)) and graph.contains(e(i + j))
    helpers: list[int] = []
    for s in (i + j, k + l):
        if s not in (i, k) and s not in helpers:
            helpers.append(s)
    graph = fold([a, b] + [e(s) for s in helpers])
    if graph.rank() != 2 + len(helpers):
        return False
    return all(graph.contains(e(s)) for s in {i, k, *helpers})
