"""Static figures for the report paths of the command line tool."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .cubeshadow import ShadowComplex, ShadowHyperplane  # noqa: E402

SWEEP_FIELDS = ("m", "passed", "cases", "order")


def write_sweep_csv(rows: list[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in SWEEP_FIELDS})


def plot_sweep(rows: list[dict], path: str | Path) -> None:
    ms = [r["m"] for r in rows]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7, 4.5), sharex=True)
    top.bar(ms, [r["cases"] for r in rows], color=["tab:green" if r["passed"] else "tab:red" for r in rows])
    top.set_ylabel("checks")
    top.set_title("Dihedral base cases per label m")
    checked = [r for r in rows if r.get("order") is not None]
    bottom.plot([r["m"] for r in checked], [r["order"] for r in checked], "o", label="enumerated")
    bottom.plot(ms, [2 * m for m in ms], "-", lw=0.8, label="2m")
    bottom.set_xlabel("m")
    bottom.set_ylabel("group order")
    bottom.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _layout(sc: ShadowComplex) -> dict:
    """Concentric rings by skeleton distance from the base vertex.

    Each ring is ordered by the mean angle of its neighbours on the previous
    ring, which keeps most edges short.
    """
    adj: dict = {v: [] for v in sc.vertices}
    for e in sc.edges:
        adj[e.lower].append(e.upper)
        adj[e.upper].append(e.lower)
    base = ((), frozenset())
    dist = {base: 0}
    frontier = [base]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    rings: dict[int, list] = {}
    for v in sc.vertices:
        rings.setdefault(dist.get(v, max(dist.values()) + 1), []).append(v)
    angle = {base: 0.0}
    pos = {base: (0.0, 0.0)}
    for r in sorted(rings):
        if r == 0:
            continue

        def mean_angle(v):
            prev = [angle[u] for u in adj[v] if u in angle and dist.get(u, -1) == r - 1]
            if not prev:
                return 0.0
            return math.atan2(sum(map(math.sin, prev)), sum(map(math.cos, prev)))

        members = sorted(rings[r], key=lambda v: (mean_angle(v), sorted(v[1]), v[0]))
        offset = mean_angle(members[0])
        for idx, v in enumerate(members):
            theta = offset + 2 * math.pi * idx / len(members)
            angle[v] = theta
            pos[v] = (r * math.cos(theta), r * math.sin(theta))
    return pos


def plot_shadow(sc: ShadowComplex, planes: list[ShadowHyperplane], path: str | Path) -> None:
    pos = _layout(sc)
    types = sorted({h.type for h in planes}, key=sc.graph.index)
    cmap = plt.get_cmap("tab10")
    colour = {t: cmap(i % 10) for i, t in enumerate(types)}
    fig, ax = plt.subplots(figsize=(6, 6))
    for sq in sc.squares:
        corners = sc.cube_vertices(sq)
        low = sq.bottom[1]
        x, y = sorted(sq.top - low, key=sc.graph.index)
        ring = [corners[low], corners[low | {x}], corners[low | {x, y}], corners[low | {y}]]
        ax.fill([pos[c][0] for c in ring], [pos[c][1] for c in ring], color="0.85", zorder=0)
    for e in sc.edges:
        (x0, y0), (x1, y1) = pos[e.lower], pos[e.upper]
        ax.plot([x0, x1], [y0, y1], color=colour.get(e.label, "k"), lw=1.2, zorder=1)
    interior = [pos[v] for v in sc.vertices if not sc.is_boundary(v)]
    boundary = [pos[v] for v in sc.vertices if sc.is_boundary(v)]
    if interior:
        ax.scatter(*zip(*interior), s=14, color="k", zorder=2, label="interior")
    if boundary:
        ax.scatter(*zip(*boundary), s=14, facecolors="white", edgecolors="k", zorder=2, label="boundary")
    for t in types:
        ax.plot([], [], color=colour[t], label=f"type {t}")
    ax.set_title(f"Shadow ball, radius {sc.radius}: {len(sc.vertices)} vertices, {len(planes)} hyperplanes")
    ax.set_aspect("equal")
    ax.axis("off")
    ax.legend(loc="upper right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
