"""Covering closed walks on factor complements and their synchronized schedule."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .defgraph import DefiningGraph, SimpleGraph
from .quotient import CrossEdgeSelection, RootedTree

DEFAULT_EXACT_LIMIT = 15


class WalkError(ValueError):
    pass


@dataclass(frozen=True)
class CoveringWalk:
    vertices: tuple[str, ...]
    exact: bool = True
    factor: int | None = None

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def _shortest_path(adj: list[list[int]], src: int, dst: int) -> list[int]:
    prev = {src: src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                queue.append(w)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def _distances(adj: list[list[int]], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def min_covering_closed_walk(
    h: SimpleGraph, exact_limit: int = DEFAULT_EXACT_LIMIT
) -> CoveringWalk:
    """Shortest closed walk through every vertex of ``h``, starting at its first vertex.

    Breadth-first search over ``(vertex, visited-mask)`` states; neighbours
    are expanded in document order so ties go to the smaller next vertex.
    Above ``exact_limit`` vertices a nearest-unvisited greedy walk is
    returned instead, flagged ``exact=False``.
    """
    size = len(h.vertices)
    if size < 2:
        raise WalkError("covering walk needs at least two vertices")
    if not h.is_connected():
        raise WalkError("factor complement is disconnected")
    pos = {v: i for i, v in enumerate(h.vertices)}
    adj_names = h.adjacency()
    adj = [[pos[w] for w in adj_names[v]] for v in h.vertices]
    if size > exact_limit:
        return CoveringWalk(tuple(h.vertices[i] for i in _greedy_walk(adj)), exact=False)

    full = (1 << size) - 1
    start = (0, 1)
    goal = (0, full)
    prev: dict[tuple[int, int], tuple[int, int]] = {start: start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        v, mask = state
        for w in adj[v]:
            nxt = (w, mask | (1 << w))
            if nxt not in prev:
                prev[nxt] = state
                if nxt == goal:
                    queue.clear()
                    break
                queue.append(nxt)
    walk = [goal]
    while walk[-1] != start:
        walk.append(prev[walk[-1]])
    return CoveringWalk(tuple(h.vertices[v] for v, _ in reversed(walk)), exact=True)


def _greedy_walk(adj: list[list[int]]) -> list[int]:
    walk = [0]
    visited = {0}
    while len(visited) < len(adj):
        dist = _distances(adj, walk[-1])
        target = min(
            (v for v in range(len(adj)) if v not in visited), key=lambda v: (dist[v], v)
        )
        leg = _shortest_path(adj, walk[-1], target)
        walk.extend(leg[1:])
        visited.update(leg)
    walk.extend(_shortest_path(adj, walk[-1], 0)[1:])
    return walk


@dataclass(frozen=True)
class WalkSchedule:
    """Rows ``v_{i,1..n+1}`` for each factor ``i`` and alignment indices.

    ``rows[i - 1][l - 1]`` is ``v_{i,l}``; ``alignment[(i, j)]`` is ``l(i, j)``
    stored for both orientations of each tree edge.
    """

    n: int
    rows: tuple[tuple[str, ...], ...]
    alignment: dict[tuple[int, int], int]
    walk_lengths: tuple[int, ...] = field(default=())
    exact: bool = True

    @property
    def k(self) -> int:
        return len(self.rows)

    def v(self, i: int, l: int) -> str:
        """``v_{i,l}`` with ``l`` taken cyclically in ``1..n``."""
        return self.rows[i - 1][(l - 1) % self.n]

    def l(self, i: int, j: int) -> int:
        return self.alignment[(i, j)]

    def clique(self, l: int) -> tuple[str, ...]:
        return tuple(self.v(i, l) for i in range(1, self.k + 1))


def factor_walks(
    g: DefiningGraph, tree: RootedTree, exact_limit: int = DEFAULT_EXACT_LIMIT
) -> list[CoveringWalk]:
    walks = []
    for i, factor in enumerate(tree.factors, start=1):
        sub = g.induced(factor)
        comp = SimpleGraph(
            sub.vertices, frozenset(p for p in sub.pairs() if p not in sub.labels)
        )
        w = min_covering_closed_walk(comp, exact_limit)
        walks.append(CoveringWalk(w.vertices, w.exact, factor=i))
    return walks


def build_schedule(
    walks: list[CoveringWalk],
    tree: RootedTree,
    sel: CrossEdgeSelection,
    use_lcm: bool = False,
) -> WalkSchedule:
    if len(walks) != tree.k:
        raise WalkError("one walk per factor required")
    lengths = [w.length for w in walks]
    n = math.lcm(*lengths) if use_lcm else math.prod(lengths)
    base = [list(w.vertices[:-1]) * (n // w.length) for w in walks]
    rows: list[list[str] | None] = [None] * tree.k
    rows[0] = base[0]
    alignment: dict[tuple[int, int], int] = {}
    for j in range(2, tree.k + 1):
        i = tree.parent[j]
        edge = sel.get(i, j)
        parent_row = rows[i - 1]
        l = parent_row.index(edge.s) + 1
        shift = base[j - 1].index(edge.t) - (l - 1)
        rows[j - 1] = base[j - 1][shift:] + base[j - 1][:shift]
        alignment[(i, j)] = alignment[(j, i)] = l
    return WalkSchedule(
        n=n,
        rows=tuple(tuple(r + r[:1]) for r in rows),
        alignment=alignment,
        walk_lengths=tuple(lengths),
        exact=all(w.exact for w in walks),
    )


@dataclass(frozen=True)
class ScheduleReport:
    ok: bool
    failure: str | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failure": self.failure}


def validate_schedule(
    ws: WalkSchedule, g: DefiningGraph, factors: tuple[tuple[str, ...], ...], sel: CrossEdgeSelection
) -> ScheduleReport:
    """Check closedness, coverage, complement adjacency and edge alignment."""
    if len(ws.rows) != len(factors):
        return ScheduleReport(False, f"{len(ws.rows)} rows for {len(factors)} factors")
    for i, (row, factor) in enumerate(zip(ws.rows, factors), start=1):
        if len(row) != ws.n + 1:
            return ScheduleReport(False, f"row {i} has length {len(row)}, expected {ws.n + 1}")
        if row[0] != row[-1]:
            return ScheduleReport(False, f"row {i} is not closed")
        stray = [v for v in row if v not in factor]
        if stray:
            return ScheduleReport(False, f"row {i} leaves its factor at {stray[0]!r}")
        missing = [v for v in factor if v not in row]
        if missing:
            return ScheduleReport(False, f"row {i} does not cover {missing[0]!r}")
        for l in range(ws.n):
            u, w = row[l], row[l + 1]
            if u == w or g.has_edge(u, w):
                return ScheduleReport(
                    False, f"row {i} step {l + 1}: ({u}, {w}) is not a non-edge"
                )
    for edge in sel:
        key = (edge.i, edge.j)
        if key not in ws.alignment or (edge.j, edge.i) not in ws.alignment:
            return ScheduleReport(False, f"missing alignment for tree edge {key}")
        l = ws.alignment[key]
        if ws.alignment[(edge.j, edge.i)] != l:
            return ScheduleReport(False, f"l{key} differs between orientations")
        if not 1 <= l <= ws.n:
            return ScheduleReport(False, f"l{key} = {l} out of range")
        if (ws.v(edge.i, l), ws.v(edge.j, l)) != (edge.s, edge.t):
            return ScheduleReport(False, f"alignment {key} at l={l} does not hit ({edge.s}, {edge.t})")
    return ScheduleReport(True)
