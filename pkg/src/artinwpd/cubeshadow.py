"""Bounded balls of the clique-cube complex built over the Coxeter quotient.

Vertices are cosets ``w W_U`` for cliques ``U`` (including the empty one),
stored as ``(minimal coset representative, U)``; only representatives of
length at most the radius are kept.  A cube is determined by its bottom
vertex ``w W_U`` and a larger clique ``U'``; all its vertices have
representatives no longer than the bottom one, so every cube whose bottom
lies in the ball lies in the ball entirely.

Everything here is a statement about the quotient, never about the Artin
group itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .coxeter import BallOverflowError, CoxeterGroup, CoxeterMatrix, Word
from .defgraph import DefiningGraph, enumerate_cliques, maximal_cliques
from .word import SeparationCertificate

Clique = frozenset[str]
Vertex = tuple[Word, Clique]


class ShadowError(ValueError):
    pass


class UnionFind:
    """Disjoint sets over hashable items, union by size with path halving."""

    def __init__(self):
        self._parent: dict = {}
        self._size: dict = {}

    def find(self, a):
        parent = self._parent
        if a not in parent:
            parent[a] = a
            self._size[a] = 1
            return a
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return True

    def groups(self) -> dict:
        out: dict = {}
        for a in self._parent:
            out.setdefault(self.find(a), []).append(a)
        return out


@dataclass(frozen=True)
class Edge:
    lower: Vertex
    upper: Vertex
    label: str


@dataclass(frozen=True)
class Cube:
    bottom: Vertex
    top: Clique

    @property
    def dim(self) -> int:
        return len(self.top) - len(self.bottom[1])


@dataclass
class ShadowComplex:
    graph: DefiningGraph
    group: CoxeterGroup
    radius: int
    cliques: list[Clique]
    vertices: dict[Vertex, int]
    edges: list[Edge]
    cubes: list[Cube]
    truncated: bool = False
    _edge_index: dict[tuple[Vertex, Vertex], int] = field(default_factory=dict, repr=False)
    _cube_index: dict[Vertex, list[Cube]] | None = field(default=None, repr=False)

    @property
    def squares(self) -> list[Cube]:
        return [c for c in self.cubes if c.dim == 2]

    def is_boundary(self, v: Vertex) -> bool:
        return len(v[0]) >= self.radius

    def canon(self, w, clique) -> Vertex:
        clique = frozenset(clique)
        return (self.group.min_coset_rep(w, clique), clique)

    def cube_vertices(self, cube: Cube) -> dict[Clique, Vertex]:
        w, low = cube.bottom
        extra = sorted(cube.top - low, key=self.graph.index)
        out = {}
        for size in range(len(extra) + 1):
            for add in itertools.combinations(extra, size):
                clique = low | frozenset(add)
                out[clique] = self.canon(w, clique)
        return out

    def cubes_by_vertex(self) -> dict[Vertex, list[Cube]]:
        """Cubes containing each vertex, built once on first use."""
        if self._cube_index is None:
            index: dict[Vertex, list[Cube]] = {}
            for cube in self.cubes:
                for corner in self.cube_vertices(cube).values():
                    index.setdefault(corner, []).append(cube)
            self._cube_index = index
        return self._cube_index

    def edge_id(self, a: Vertex, b: Vertex) -> int:
        key = (a, b) if len(a[1]) < len(b[1]) else (b, a)
        return self._edge_index[key]

    def stats(self) -> dict:
        counts: dict[int, int] = {}
        for c in self.cubes:
            counts[c.dim] = counts.get(c.dim, 0) + 1
        return {
            "radius": self.radius,
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "squares": counts.get(2, 0),
            "cubes_by_dimension": {str(d): counts[d] for d in sorted(counts)},
            "boundary_vertices": sum(1 for v in self.vertices if self.is_boundary(v)),
            "truncated": self.truncated,
        }


def build_shadow(
    g: DefiningGraph,
    radius: int,
    cap: int = 200_000,
    group: CoxeterGroup | None = None,
) -> ShadowComplex:
    if radius < 0:
        raise ShadowError("radius must be non-negative")
    group = group or CoxeterGroup(CoxeterMatrix.from_graph(g))
    cliques = [frozenset(c) for c in enumerate_cliques(g)]
    clique_set = set(cliques)
    truncated = False
    try:
        ball = group.ball(radius, cap)
    except BallOverflowError as exc:
        raise ShadowError(str(exc)) from exc

    vertices: dict[Vertex, int] = {}
    for clique in cliques:
        for w in ball:
            v = (group.min_coset_rep(w, clique), clique)
            if v not in vertices:
                vertices[v] = len(vertices)
                if len(vertices) > cap:
                    truncated = True
                    break
        if truncated:
            break

    sc = ShadowComplex(g, group, radius, cliques, vertices, [], [], truncated)
    for v in list(vertices):
        w, low = v
        for u in g.vertices:
            if u in low or low | {u} not in clique_set:
                continue
            up = sc.canon(w, low | {u})
            if up not in vertices:
                continue
            sc._edge_index[(v, up)] = len(sc.edges)
            sc.edges.append(Edge(v, up, u))
        for top in cliques:
            if len(top) > len(low) + 1 and low < top:
                sc.cubes.append(Cube(v, top))
    return sc


@dataclass
class ShadowHyperplane:
    id: int
    type: str
    edges: list[int]


def extract_hyperplanes(sc: ShadowComplex) -> list[ShadowHyperplane]:
    """Classes of edges under the opposite-sides-of-a-square relation."""
    uf = UnionFind()
    for e in range(len(sc.edges)):
        uf.find(e)
    for sq in sc.squares:
        corners = sc.cube_vertices(sq)
        w, low = sq.bottom
        x, y = sorted(sq.top - low, key=sc.graph.index)
        lx, ly, lxy = low | {x}, low | {y}, low | {x, y}
        for a, b, c, d in (
            (low, lx, ly, lxy),  # x-edges
            (low, ly, lx, lxy),  # y-edges
        ):
            e1 = sc.edge_id(corners[a], corners[b])
            e2 = sc.edge_id(corners[c], corners[d])
            if sc.edges[e1].label != sc.edges[e2].label:
                raise AssertionError(f"square {sq} pairs edges of different labels")
            uf.union(e1, e2)
    planes = []
    for root, members in sorted(uf.groups().items(), key=lambda kv: min(kv[1])):
        members.sort()
        planes.append(ShadowHyperplane(len(planes), sc.edges[members[0]].label, members))
    return planes


def hyperplane_sides(sc: ShadowComplex, plane: ShadowHyperplane) -> dict[Vertex, int] | None:
    """Side (0 or 1) of each ball vertex reachable without crossing ``plane``.

    ``None`` when the ball is too small to separate the plane's first edge.
    """
    cut = set(plane.edges)
    uf = UnionFind()
    for v in sc.vertices:
        uf.find(v)
    for p, e in enumerate(sc.edges):
        if p not in cut:
            uf.union(e.lower, e.upper)
    first = sc.edges[plane.edges[0]]
    lo, hi = uf.find(first.lower), uf.find(first.upper)
    if lo == hi:
        return None
    return {v: 0 if uf.find(v) == lo else 1 for v in sc.vertices if uf.find(v) in (lo, hi)}


@dataclass
class CheckReport:
    checks: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.get("passed", True) for c in self.checks.values())

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks}


def _parabolic_profile(sc: ShadowComplex, clique: Clique) -> int | None:
    """Length of the longest element of ``W_clique`` if it is at most the radius.

    ``None`` means the subgroup does not close inside the ball (it may be
    infinite, or just too long to matter).
    """
    probe = sc.radius + 1
    sub = CoxeterGroup(sc.group.matrix.restrict(clique))
    try:
        ball = sub.ball(probe, cap=50_000)
    except BallOverflowError:
        return None
    top = max(ball.values())
    return top if top < probe else None


def link_graph(sc: ShadowComplex, v: Vertex) -> tuple[dict[Vertex, set], list[frozenset]]:
    """Link of ``v`` from the cubes present in the ball.

    Returns the 1-skeleton (neighbour -> adjacent neighbours) and the
    simplices, each the set of cube neighbours of ``v`` in one cube.
    """
    simplices: list[frozenset] = []
    for cube in _cubes_at(sc, v):
        corners = sc.cube_vertices(cube)
        nbrs = frozenset(corners[c] for c in corners if len(c ^ v[1]) == 1)
        simplices.append(nbrs)
    adj: dict[Vertex, set] = {}
    for e in sc.edges:
        if e.lower == v:
            adj.setdefault(e.upper, set())
        elif e.upper == v:
            adj.setdefault(e.lower, set())
    for s in simplices:
        for a, b in itertools.combinations(s, 2):
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    return adj, simplices


def _cubes_at(sc: ShadowComplex, v: Vertex):
    return sc.cubes_by_vertex().get(v, ())


def structural_checks(sc: ShadowComplex, g: DefiningGraph) -> CheckReport:
    report = CheckReport()

    base = ((), frozenset())
    if sc.radius < 2:
        report.checks["link_of_base_vertex"] = {
            "passed": True,
            "skipped": True,
            "notice": "radius below 2; link check skipped",
        }
    else:
        adj, _ = link_graph(sc, base)
        labels = {nb: nb[1] for nb in adj}
        names = {nb: next(iter(c)) for nb, c in labels.items() if len(c) == 1 and nb[0] == ()}
        link_edges = {
            frozenset((names[a], names[b])) for a in adj for b in adj[a] if a in names and b in names
        }
        graph_edges = {frozenset(p) for p in g.labels}
        ok = set(names.values()) == set(g.vertices) and link_edges == graph_edges and len(names) == len(adj)
        report.checks["link_of_base_vertex"] = {
            "passed": ok,
            "link_vertices": len(adj),
            "link_edges": len(link_edges),
            "graph_edges": len(graph_edges),
        }

    planes = extract_hyperplanes(sc)
    owner = {e: h.id for h in planes for e in h.edges}
    clashes = []
    for sq in sc.squares:
        corners = sc.cube_vertices(sq)
        low = sq.bottom[1]
        x, y = sorted(sq.top - low, key=g.index)
        hx = owner[sc.edge_id(corners[low], corners[low | {x}])]
        hy = owner[sc.edge_id(corners[low], corners[low | {y}])]
        if hx != hy and planes[hx].type == planes[hy].type:
            clashes.append((hx, hy))
    by_type: dict[str, int] = {}
    for h in planes:
        by_type[h.type] = by_type.get(h.type, 0) + 1
    report.checks["same_type_hyperplanes_disjoint"] = {
        "passed": not clashes,
        "hyperplanes": len(planes),
        "by_type": by_type,
        "clashes": clashes[:10],
    }

    longest: dict[Clique, int | None] = {}
    checked = failures = 0
    first_failure = None
    for v in sc.vertices:
        w, clique = v
        if clique not in longest:
            longest[clique] = _parabolic_profile(sc, clique)
        top = longest[clique]
        if top is None or len(w) + top > sc.radius:
            continue
        checked += 1
        adj, simplices = link_graph(sc, v)
        for m in maximal_cliques(adj, key=lambda u: (len(u[1]), u)):
            if len(m) >= 2 and not any(m <= s for s in simplices):
                failures += 1
                first_failure = first_failure or {"vertex": _vertex_name(v), "clique": len(m)}
                break
    report.checks["flag_links"] = {
        "passed": failures == 0,
        "interior_vertices_checked": checked,
        "failures": failures,
        "first_failure": first_failure,
    }
    return report


def _vertex_name(v: Vertex) -> str:
    w, clique = v
    return f"{''.join(w) or '1'}W{{{','.join(sorted(clique))}}}"


def product_compare(
    g: DefiningGraph, split: tuple[list[str], list[str]], radius: int
) -> CheckReport:
    """Compare the ball of a commuting join with the product of its factor balls."""
    left, right = (tuple(v for v in g.vertices if v in set(part)) for part in split)
    if set(left) & set(right) or set(left) | set(right) != set(g.vertices):
        raise ShadowError("split must partition the vertex set")
    for u in left:
        for w in right:
            if g.label(u, w) != 2:
                raise ShadowError(
                    f"cross pair ({u}, {w}) has label {g.label(u, w) or 'infinity'}, not 2"
                )
    whole = build_shadow(g, radius)
    a = build_shadow(g.induced(left), radius)
    b = build_shadow(g.induced(right), radius)

    def phi(x: Vertex, y: Vertex) -> Vertex:
        return whole.canon(x[0] + y[0], x[1] | y[1])

    domain = [(x, y) for x in a.vertices for y in b.vertices if len(x[0]) + len(y[0]) <= radius]
    image: dict[Vertex, tuple] = {}
    collisions = 0
    for x, y in domain:
        z = phi(x, y)
        if z in image:
            collisions += 1
        image[z] = (x, y)
    missing = [z for z in whole.vertices if z not in image]
    stray = [z for z in image if z not in whole.vertices]

    in_domain = {(x, y) for x, y in domain}
    mapped_edges = set()
    unmapped = 0
    for e in a.edges:
        for y in b.vertices:
            if (e.lower, y) in in_domain and (e.upper, y) in in_domain:
                pair = (phi(e.lower, y), phi(e.upper, y))
                mapped_edges.add(pair)
                unmapped += pair not in whole._edge_index
    for e in b.edges:
        for x in a.vertices:
            if (x, e.lower) in in_domain and (x, e.upper) in in_domain:
                pair = (phi(x, e.lower), phi(x, e.upper))
                mapped_edges.add(pair)
                unmapped += pair not in whole._edge_index
    reflected = sum(1 for key in whole._edge_index if key not in mapped_edges)
    report = CheckReport()
    report.checks["vertex_bijection"] = {
        "passed": collisions == 0 and not missing and not stray,
        "domain": len(domain),
        "target": len(whole.vertices),
        "collisions": collisions,
        "missing": len(missing),
        "stray": len(stray),
    }
    report.checks["edges_preserved"] = {
        "passed": unmapped == 0 and reflected == 0,
        "product_edges": len(mapped_edges),
        "target_edges": len(whole.edges),
        "not_edges_in_target": unmapped,
        "target_edges_not_from_product": reflected,
        "boundary_vertices": sum(1 for v in whole.vertices if whole.is_boundary(v)),
    }
    return report


def shadow_coset_checks(
    cert: SeparationCertificate, g: DefiningGraph, radius: int = 6
) -> CheckReport:
    """Enumerative confirmation of the non-memberships behind translated steps.

    Parabolic subgroups are enumerated to closure when finite (``exact``) or
    up to ``radius`` otherwise (``bounded``).
    """
    group = CoxeterGroup(CoxeterMatrix.from_graph(g))
    report = CheckReport()
    balls: dict[Clique, tuple[set[Word], bool]] = {}

    def elements(subset) -> tuple[set[Word], bool]:
        key = frozenset(subset)
        if key not in balls:
            sub = CoxeterGroup(group.matrix.restrict(key))
            ball = sub.ball(radius + 1)
            closed = max(ball.values()) <= radius
            if not closed:
                ball = {w: n for w, n in ball.items() if n <= radius}
            balls[key] = ({group.reduce(w) for w in ball}, closed)
        return balls[key]

    for e in cert.selection:
        label = g.label(e.s, e.t)
        want = tuple(e.s if p % 2 == 0 else e.t for p in range(e.m if e.m % 2 else e.m + 1))
        report.checks[f"tau[{e.i},{e.j}]"] = {
            "passed": label == e.m and e.m >= 3 and tuple(e.tau) == want,
            "tau": "".join(e.tau),
            "label": label,
        }

    seen = set()
    steps = list(cert.steps) + [s for seq in cert.per_factor for s in seq]
    for s in steps:
        if s.tag == "KEY0-1":
            continue
        clique = frozenset(s.clique)
        if s.tag in ("KEY0-2", "KEY0-3"):
            v = s.types[1]
            key = (s.tag, tuple(s.translation), clique, v)
            if key in seen:
                continue
            seen.add(key)
            elems, closed = elements(clique - {v})
            target = group.reduce(s.translation)
            passed = target not in elems
            if not closed and len(target) > radius:
                # outside the enumerated ball; fall back to the support argument
                passed = not group.is_parabolic_member(target, clique - {v})
            report.checks[f"{s.tag}/{''.join(s.translation)}/{v}"] = {
                "passed": passed,
                "status": "exact" if closed else f"bounded (radius {radius})",
            }
        else:
            edge = cert.selection.get(*s.edge)
            x, y = s.types
            key = ("KEY", tuple(edge.tau), clique, x, y)
            if key in seen:
                continue
            seen.add(key)
            left, lc = elements(clique - {x})
            right, rc = elements(clique - {y})
            target = group.reduce(edge.tau)
            hit = any(group.multiply(p, q) == target for p in left for q in right)
            report.checks[f"KEY/{''.join(edge.tau)}/{x}{y}"] = {
                "passed": not hit,
                "status": "exact" if lc and rc else f"bounded (radius {radius})",
            }
    return report


def to_dot(sc: ShadowComplex, planes: list[ShadowHyperplane] | None = None) -> str:
    """DOT rendering of the 1-skeleton; edge labels carry type and hyperplane id."""
    owner = {e: h.id for h in planes for e in h.edges} if planes else {}
    names = {v: f"v{i}" for v, i in sc.vertices.items()}
    lines = ["graph shadow {", "  node [shape=circle, fontsize=9];"]
    for v, i in sorted(sc.vertices.items(), key=lambda kv: kv[1]):
        attrs = f'label="{_vertex_name(v)}"'
        if sc.is_boundary(v):
            attrs += ", style=dashed"
        lines.append(f"  {names[v]} [{attrs}];")
    for p, e in enumerate(sc.edges):
        label = e.label if p not in owner else f"{e.label}/H{owner[p]}"
        lines.append(f'  {names[e.lower]} -- {names[e.upper]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
