"""Labeled defining graphs, their derived graphs, and join decompositions.

A defining graph carries an integer label ``>= 2`` on each edge; a missing
edge stands for the label infinity.  Document order of the vertices is the
global total order used for every tie-break in the package.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field

Pair = tuple[str, str]

DEFAULT_CLIQUE_CAP = 24


class GraphFormatError(ValueError):
    """Raised for malformed graph documents or invalid graph data."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: frozenset[Pair]

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.vertices)}
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at {u!r}")
            if index[u] > index[v]:
                raise ValueError(f"edge {(u, v)!r} not stored in vertex order")

    @classmethod
    def from_pairs(cls, vertices: Iterable[str], pairs: Iterable[Pair]) -> SimpleGraph:
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        edges = frozenset(
            (u, v) if index[u] < index[v] else (v, u) for u, v in pairs
        )
        return cls(vertices, edges)

    def has_edge(self, u: str, v: str) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def neighbors(self, v: str) -> list[str]:
        return [w for w in self.vertices if w != v and self.has_edge(v, w)]

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        order = {v: i for i, v in enumerate(self.vertices)}
        for nbrs in adj.values():
            nbrs.sort(key=order.__getitem__)
        return adj

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each in document order, ordered by first vertex."""
        adj = self.adjacency()
        seen: set[str] = set()
        comps = []
        order = {v: i for i, v in enumerate(self.vertices)}
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            stack = [root]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(tuple(sorted(comp, key=order.__getitem__)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced(self, subset: Iterable[str]) -> SimpleGraph:
        keep = set(subset)
        verts = tuple(v for v in self.vertices if v in keep)
        return SimpleGraph(
            verts, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)
        )


@dataclass(frozen=True)
class DefiningGraph:
    """Finite simple graph with edge labels in ``{2, 3, ...}``.

    ``labels`` is keyed by pairs ``(u, v)`` with ``u`` before ``v`` in
    document order.  Pairs absent from the mapping are non-edges.
    """

    vertices: tuple[str, ...]
    labels: Mapping[Pair, int] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphFormatError("duplicate vertex")
        index = {v: i for i, v in enumerate(self.vertices)}
        for (u, v), m in self.labels.items():
            if u not in index or v not in index:
                raise GraphFormatError(f"unknown vertex in edge {(u, v)!r}")
            if u == v:
                raise GraphFormatError(f"self-loop at {u!r}")
            if index[u] > index[v]:
                raise GraphFormatError(f"edge {(u, v)!r} not stored in vertex order")
            if not isinstance(m, int) or m < 2:
                raise GraphFormatError(f"label {m!r} on {(u, v)!r} is not an integer >= 2")
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(
        cls, vertices: Iterable[str], edges: Mapping[Pair, int] | Iterable[tuple[str, str, int]]
    ) -> DefiningGraph:
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        items = edges.items() if isinstance(edges, Mapping) else (((u, v), m) for u, v, m in edges)
        labels: dict[Pair, int] = {}
        for (u, v), m in items:
            if u not in index or v not in index:
                raise GraphFormatError(f"unknown vertex in edge {(u, v)!r}")
            key = (u, v) if index[u] <= index[v] else (v, u)
            if key in labels:
                raise GraphFormatError(f"duplicate edge {key!r}")
            labels[key] = m
        return cls(vertices, labels)

    def __hash__(self):
        return hash((self.vertices, frozenset(self.labels.items())))

    def __eq__(self, other):
        if not isinstance(other, DefiningGraph):
            return NotImplemented
        return self.vertices == other.vertices and dict(self.labels) == dict(other.labels)

    def index(self, v: str) -> int:
        return self._index[v]

    def key(self, u: str, v: str) -> Pair:
        return (u, v) if self._index[u] < self._index[v] else (v, u)

    def label(self, u: str, v: str) -> int | None:
        """Edge label, or ``None`` for a non-edge (label infinity)."""
        if u == v:
            raise ValueError("label of a diagonal pair")
        return self.labels.get(self.key(u, v))

    def has_edge(self, u: str, v: str) -> bool:
        return u != v and self.key(u, v) in self.labels

    def edge_list(self) -> list[tuple[str, str, int]]:
        return sorted(
            ((u, v, m) for (u, v), m in self.labels.items()),
            key=lambda e: (self._index[e[0]], self._index[e[1]]),
        )

    def pairs(self) -> Iterable[Pair]:
        return itertools.combinations(self.vertices, 2)

    def underlying(self) -> SimpleGraph:
        return SimpleGraph(self.vertices, frozenset(self.labels))

    def induced(self, subset: Iterable[str]) -> DefiningGraph:
        keep = set(subset)
        verts = tuple(v for v in self.vertices if v in keep)
        return DefiningGraph(
            verts,
            {e: m for e, m in self.labels.items() if e[0] in keep and e[1] in keep},
        )

    def relabel(self, u: str, v: str, m: int | None) -> DefiningGraph:
        """Copy with the label of ``{u, v}`` replaced (``None`` removes the edge)."""
        labels = dict(self.labels)
        key = self.key(u, v)
        if m is None:
            labels.pop(key, None)
        else:
            labels[key] = m
        return DefiningGraph(self.vertices, labels)

    def __repr__(self):
        edges = " ".join(f"{u}{v}:{m}" for u, v, m in self.edge_list())
        return f"DefiningGraph({' '.join(self.vertices)} | {edges})"


def parse_graph(text: str) -> DefiningGraph:
    """Parse the line-oriented graph format.

    ``# comment`` lines and blank lines are ignored; ``vertices:`` lines
    declare vertices (possibly over several lines) and ``edge: u v m`` lines
    declare an edge with label ``m``.
    """
    vertices: list[str] = []
    seen: set[str] = set()
    labels: dict[frozenset, tuple[str, str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, sep, rest = line.partition(":")
        if not sep:
            raise GraphFormatError(f"expected 'vertices:' or 'edge:', got {line!r}", lineno)
        keyword = keyword.strip()
        tokens = rest.split()
        if keyword == "vertices":
            for v in tokens:
                if v in seen:
                    raise GraphFormatError(f"duplicate vertex {v!r}", lineno)
                seen.add(v)
                vertices.append(v)
        elif keyword == "edge":
            if len(tokens) != 3:
                raise GraphFormatError("edge line needs 'edge: u v label'", lineno)
            u, v, raw_label = tokens
            for w in (u, v):
                if w not in seen:
                    raise GraphFormatError(f"unknown vertex {w!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at {u!r}", lineno)
            try:
                m = int(raw_label)
            except ValueError:
                raise GraphFormatError(f"label {raw_label!r} is not an integer", lineno) from None
            if m < 2:
                raise GraphFormatError(f"label {m} < 2", lineno)
            pair = frozenset((u, v))
            if pair in labels:
                raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
            labels[pair] = (u, v, m)
        else:
            raise GraphFormatError(f"unknown keyword {keyword!r}", lineno)
    return DefiningGraph.from_edges(vertices, list(labels.values()))


def format_graph(g: DefiningGraph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    lines += [f"edge: {u} {v} {m}" for u, v, m in g.edge_list()]
    return "\n".join(lines) + "\n"


def complement_graph(g: DefiningGraph) -> SimpleGraph:
    """Graph whose edges are the non-edges (label infinity) of ``g``."""
    return SimpleGraph(
        g.vertices, frozenset(p for p in g.pairs() if p not in g.labels)
    )


def t_graph(g: DefiningGraph) -> SimpleGraph:
    """Pairs with label >= 3 or infinity."""
    return SimpleGraph(
        g.vertices,
        frozenset(p for p in g.pairs() if g.labels.get(p, 3) >= 3),
    )


@dataclass(frozen=True)
class JoinDecomposition:
    factors: tuple[tuple[str, ...], ...]
    factor_subgraphs: tuple[DefiningGraph, ...]

    @property
    def k(self) -> int:
        return len(self.factors)

    def factor_of(self, v: str) -> int:
        """1-based index of the factor containing ``v``."""
        for i, f in enumerate(self.factors, start=1):
            if v in f:
                return i
        raise KeyError(v)


def join_decompose(g: DefiningGraph) -> JoinDecomposition:
    factors = tuple(complement_graph(g).components())
    return JoinDecomposition(factors, tuple(g.induced(f) for f in factors))


def is_cone(g: DefiningGraph) -> bool:
    dec = join_decompose(g)
    return dec.k >= 2 and any(len(f) == 1 for f in dec.factors)


def is_irreducible(g: DefiningGraph) -> bool:
    return t_graph(g).is_connected()


def maximal_cliques(adj: Mapping[Hashable, set], key=None) -> list[frozenset]:
    """Bron-Kerbosch with pivoting over an adjacency mapping of sets."""
    found: list[frozenset] = []

    def expand(r: set, p: set, x: set) -> None:
        if not p and not x:
            found.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot], key=key):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    return found


def enumerate_cliques(g: DefiningGraph, cap: int = DEFAULT_CLIQUE_CAP) -> list[frozenset[str]]:
    """All vertex subsets spanning a clique, including the empty set.

    Ordered by size, then lexicographically in document order.
    """
    if len(g.vertices) > cap:
        raise ValueError(f"clique enumeration capped at {cap} vertices, graph has {len(g.vertices)}")
    under = g.underlying()
    adj = {v: set(under.neighbors(v)) for v in g.vertices}
    cliques: set[frozenset[str]] = {frozenset()}
    for m in maximal_cliques(adj, key=g.index):
        members = sorted(m, key=g.index)
        for size in range(1, len(members) + 1):
            cliques.update(frozenset(c) for c in itertools.combinations(members, size))
    return sorted(cliques, key=lambda c: (len(c), sorted(g.index(v) for v in c)))


@dataclass(frozen=True)
class HypothesisReport:
    vertex_count: int
    k: int
    has_three_vertices: bool
    not_cone: bool
    irreducible: bool
    decomposable: bool
    construction_eligible: bool
    status: str
    message: str
    factors: tuple[tuple[str, ...], ...]

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "k": self.k,
            "factors": [list(f) for f in self.factors],
            "has_three_vertices": self.has_three_vertices,
            "not_cone": self.not_cone,
            "irreducible": self.irreducible,
            "decomposable": self.decomposable,
            "construction_eligible": self.construction_eligible,
            "status": self.status,
            "message": self.message,
        }


def check_hypotheses(g: DefiningGraph) -> HypothesisReport:
    dec = join_decompose(g)
    three = len(g.vertices) >= 3
    not_cone = not is_cone(g)
    irreducible = is_irreducible(g)
    decomposable = dec.k >= 2
    base = three and not_cone and irreducible
    eligible = base and decomposable
    if eligible:
        status, message = "eligible", "all hypotheses hold; construction applies"
    elif base:
        status, message = "deferred", "indecomposable: construction deferred to prior work"
    else:
        failed = [
            name
            for name, ok in (
                ("fewer than three vertices", three),
                ("cone", not_cone),
                ("reducible", irreducible),
            )
            if not ok
        ]
        status, message = "ineligible", "; ".join(failed)
    return HypothesisReport(
        vertex_count=len(g.vertices),
        k=dec.k,
        has_three_vertices=three,
        not_cone=not_cone,
        irreducible=irreducible,
        decomposable=decomposable,
        construction_eligible=eligible,
        status=status,
        message=message,
        factors=dec.factors,
    )
