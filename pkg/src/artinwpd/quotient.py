"""Quotient graph of the join factors, its rooted spanning tree, and cross edges.

Factor indices are 1-based throughout; after :func:`spanning_tree` the factors
are reindexed so that the root is 1 and indices never decrease with depth.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .defgraph import DefiningGraph, JoinDecomposition


class NotDecomposableError(ValueError):
    pass


class ReducibleError(ValueError):
    """The quotient graph is disconnected, i.e. the t-graph is disconnected."""


@dataclass(frozen=True)
class QuotientGraph:
    factors: tuple[tuple[str, ...], ...]
    edges: frozenset[tuple[int, int]]

    @property
    def k(self) -> int:
        return len(self.factors)

    def neighbors(self, i: int) -> list[int]:
        return sorted(j for e in self.edges if i in e for j in e if j != i)

    def is_connected(self) -> bool:
        return len(_bfs(self, 1)[0]) == self.k


def _bfs(q: QuotientGraph, root: int) -> tuple[dict[int, int], dict[int, int]]:
    depth = {root: 0}
    parent: dict[int, int] = {}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in q.neighbors(i):
            if j not in depth:
                depth[j] = depth[i] + 1
                parent[j] = i
                queue.append(j)
    return depth, parent


def build_quotient(dec: JoinDecomposition, g: DefiningGraph) -> QuotientGraph:
    if dec.k < 2:
        raise NotDecomposableError("graph is indecomposable (k = 1); no quotient graph")
    edges = set()
    for i in range(dec.k):
        for j in range(i + 1, dec.k):
            if any(
                (g.label(u, w) or 0) >= 3 for u in dec.factors[i] for w in dec.factors[j]
            ):
                edges.add((i + 1, j + 1))
    return QuotientGraph(dec.factors, frozenset(edges))


@dataclass(frozen=True)
class RootedTree:
    """Spanning tree of the quotient graph after depth-monotone reindexing.

    ``order[i - 1]`` is the original quotient index of new factor ``i``.
    """

    factors: tuple[tuple[str, ...], ...]
    parent: dict[int, int]
    depth: dict[int, int]
    order: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.factors)

    def children(self, i: int) -> list[int]:
        return sorted(c for c, p in self.parent.items() if p == i)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((p, c) for c, p in self.parent.items())

    def is_tree_edge(self, i: int, j: int) -> bool:
        return self.parent.get(j) == i or self.parent.get(i) == j


def spanning_tree(q: QuotientGraph) -> RootedTree:
    depth, parent = _bfs(q, 1)
    if len(depth) != q.k:
        missing = sorted(set(range(1, q.k + 1)) - set(depth))
        raise ReducibleError(
            f"quotient graph is disconnected (factors {missing} unreachable); "
            "the t-graph is not connected"
        )
    order = tuple(sorted(depth, key=lambda i: (depth[i], i)))
    new = {old: pos for pos, old in enumerate(order, start=1)}
    return RootedTree(
        factors=tuple(q.factors[old - 1] for old in order),
        parent={new[c]: new[p] for c, p in parent.items()},
        depth={new[i]: d for i, d in depth.items()},
        order=order,
    )


def alternating_word(s: str, t: str, m: int) -> tuple[str, ...]:
    """``s t s ...`` of length ``m`` (odd ``m``) or ``m + 1`` (even ``m``)."""
    length = m if m % 2 else m + 1
    return tuple(s if p % 2 == 0 else t for p in range(length))


@dataclass(frozen=True)
class CrossEdge:
    i: int
    j: int
    s: str
    t: str
    m: int
    tau: tuple[str, ...]


@dataclass(frozen=True)
class CrossEdgeSelection:
    edges: dict[tuple[int, int], CrossEdge]

    def get(self, i: int, j: int) -> CrossEdge:
        """Cross edge of the tree edge ``{i, j}``, in its ``i < j`` orientation."""
        return self.edges[(min(i, j), max(i, j))]

    def __iter__(self):
        return iter(self.edges[key] for key in sorted(self.edges))


def select_cross_edges(t: RootedTree, g: DefiningGraph) -> CrossEdgeSelection:
    chosen = {}
    for i, j in t.edges():
        candidates = [
            (m, g.index(s), g.index(w), s, w)
            for s in t.factors[i - 1]
            for w in t.factors[j - 1]
            if (m := g.label(s, w) or 0) >= 3
        ]
        if not candidates:
            raise ReducibleError(f"tree edge ({i}, {j}) has no cross edge with label > 2")
        m, _, _, s, w = min(candidates)
        chosen[(i, j)] = CrossEdge(i, j, s, w, m, alternating_word(s, w, m))
    return CrossEdgeSelection(chosen)


def tree_closed_path(t: RootedTree) -> tuple[int, ...]:
    """Depth-first closed traversal from the root; length ``2(k - 1) + 1``."""
    path = [1]

    def visit(i: int) -> None:
        for c in t.children(i):
            path.append(c)
            visit(c)
            path.append(i)

    visit(1)
    return tuple(path)
