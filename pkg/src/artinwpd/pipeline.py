"""End-to-end construction and the versioned certificate document."""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass
from typing import Any

from .defgraph import DefiningGraph, HypothesisReport, check_hypotheses, join_decompose
from .quotient import (
    CrossEdge,
    CrossEdgeSelection,
    QuotientGraph,
    RootedTree,
    alternating_word,
    build_quotient,
    select_cross_edges,
    spanning_tree,
    tree_closed_path,
)
from .walks import (
    DEFAULT_EXACT_LIMIT,
    CoveringWalk,
    WalkSchedule,
    build_schedule,
    factor_walks,
    validate_schedule,
)
from .word import (
    Block,
    GammaWord,
    HyperplaneDescriptor,
    HyperplaneSchedule,
    SeparationCertificate,
    ShadowOracle,
    Step,
    VerificationReport,
    assemble_gamma,
    hyperplane_schedule,
    key4_sequence,
    verify_certificate,
)

SCHEMA = 1


class NotEligibleError(ValueError):
    def __init__(self, report: HypothesisReport):
        super().__init__(f"{report.status}: {report.message}")
        self.report = report


@dataclass(frozen=True)
class Construction:
    graph: DefiningGraph
    hypotheses: HypothesisReport
    quotient: QuotientGraph
    tree: RootedTree
    selection: CrossEdgeSelection
    path: tuple[int, ...]
    walks: tuple[CoveringWalk, ...]
    schedule: WalkSchedule
    gamma: GammaWord
    hyperplanes: HyperplaneSchedule
    certificate: SeparationCertificate
    use_lcm: bool
    exact_limit: int

    @property
    def counts(self) -> dict[str, int]:
        r, n, k = self.gamma.r, self.schedule.n, self.schedule.k
        return {
            "k": k,
            "n": n,
            "r": r,
            "gamma_length": len(self.gamma.letters),
            "separating_family": k * 2 * r * n,
            "key4_length": 2 * r * n,
        }


def construct(
    g: DefiningGraph, exact_limit: int = DEFAULT_EXACT_LIMIT, use_lcm: bool = False
) -> Construction:
    report = check_hypotheses(g)
    if not report.construction_eligible:
        raise NotEligibleError(report)
    dec = join_decompose(g)
    q = build_quotient(dec, g)
    tree = spanning_tree(q)
    sel = select_cross_edges(tree, g)
    path = tree_closed_path(tree)
    walks = factor_walks(g, tree, exact_limit)
    ws = build_schedule(walks, tree, sel, use_lcm=use_lcm)
    gamma = assemble_gamma(ws, sel, path)
    sched = hyperplane_schedule(gamma, ws)
    cert = key4_sequence(sched, sel, ShadowOracle(g, sel))
    return Construction(
        graph=g,
        hypotheses=report,
        quotient=q,
        tree=tree,
        selection=sel,
        path=path,
        walks=tuple(walks),
        schedule=ws,
        gamma=gamma,
        hyperplanes=sched,
        certificate=cert,
        use_lcm=use_lcm,
        exact_limit=exact_limit,
    )


def _step_dict(s: Step) -> dict:
    return {
        "index": s.index,
        "source": list(s.source),
        "target": list(s.target),
        "tag": s.tag,
        "a": s.a,
        "l": s.l,
        "types": list(s.types),
        "prefix": s.prefix,
        "translation": list(s.translation),
        "clique": list(s.clique),
        "edge": list(s.edge) if s.edge is not None else None,
        "oracle": copy.deepcopy(s.oracle),
    }


def _desc_dict(h: HyperplaneDescriptor) -> dict:
    return {
        "factor": h.factor,
        "step": h.step,
        "a": h.a,
        "l": h.l,
        "type": h.type,
        "prefix": h.prefix,
        "power": h.power,
    }


def input_digest(graph: Any, options: Any) -> str:
    """SHA-256 over the canonical JSON of the graph and options sections.

    Several inputs can yield the same construction (labels off the cross
    edges never enter it), so the digest is what ties a certificate to the
    graph it was issued for.
    """
    blob = json.dumps({"graph": graph, "options": options}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def to_document(c: Construction) -> dict[str, Any]:
    """JSON-ready certificate document (schema 1)."""
    g, ws, gamma, cert = c.graph, c.schedule, c.gamma, c.certificate
    sched = c.hyperplanes
    graph = {"vertices": list(g.vertices), "edges": [list(e) for e in g.edge_list()]}
    options = {"lcm": c.use_lcm, "exact_limit": c.exact_limit}
    return {
        "schema": SCHEMA,
        "graph": graph,
        "options": options,
        "input_digest": input_digest(graph, options),
        "hypotheses": c.hypotheses.to_dict(),
        "counts": c.counts,
        "factors": [list(f) for f in c.tree.factors],
        "quotient_edges": sorted(
            sorted([c.tree.order.index(i) + 1, c.tree.order.index(j) + 1]) for i, j in c.quotient.edges
        ),
        "tree": {"parent": [[ch, p] for ch, p in sorted(c.tree.parent.items())], "order": list(c.tree.order)},
        "cross_edges": [
            {"i": e.i, "j": e.j, "s": e.s, "t": e.t, "m": e.m, "tau": list(e.tau)} for e in c.selection
        ],
        "path": list(c.path),
        "walks": [
            {"factor": w.factor, "vertices": list(w.vertices), "length": w.length, "exact": w.exact}
            for w in c.walks
        ],
        "schedule": {
            "n": ws.n,
            "rows": [list(r) for r in ws.rows],
            "alignment": [[i, j, l] for (i, j), l in sorted(ws.alignment.items())],
        },
        "gamma": {
            "letters": list(gamma.letters),
            "length": len(gamma.letters),
            "factor_boundaries": list(gamma.factor_boundaries),
            "block_boundaries": list(gamma.block_boundaries),
            "prefix_index": list(gamma.prefix_index),
            "twisted_blocks": [[b.a, b.l] for b in gamma.blocks if b.twisted],
        },
        "hyperplanes": [_desc_dict(h) for h in cert.descriptors],
        "cubes": [
            {"step": k.step, "prefix": k.prefix, "clique": list(k.clique)} for k in sched.cubes()
        ],
        "vertices": [
            {"step": w.step, "prefix": w.prefix, "power": w.power, "clique": list(w.clique)}
            for w in sched.vertices()
        ],
        "key4": {
            "entries": [[i, d] for i, d in cert.entries],
            "start_flank": _desc_dict(cert.start_flank),
            "end_flank": _desc_dict(cert.end_flank),
            "steps": [_step_dict(s) for s in cert.steps],
        },
        "per_factor": [[_step_dict(s) for s in seq] for seq in cert.per_factor],
        "coverage": {v: cert.coverage[v] for v in g.vertices if v in cert.coverage},
        "proof_level": list(cert.proof_level),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=False, ensure_ascii=False) + "\n"


def graph_from_document(doc: dict) -> DefiningGraph:
    graph = doc["graph"]
    return DefiningGraph.from_edges(graph["vertices"], [tuple(e) for e in graph["edges"]])


def _step_from(d: dict) -> Step:
    return Step(
        index=d["index"],
        source=tuple(d["source"]),
        target=tuple(d["target"]),
        tag=d["tag"],
        a=d["a"],
        l=d["l"],
        types=tuple(d["types"]),
        prefix=d["prefix"],
        translation=tuple(d["translation"]),
        clique=tuple(d["clique"]),
        edge=tuple(d["edge"]) if d["edge"] is not None else None,
        oracle=d["oracle"],
    )


def _desc_from(d: dict) -> HyperplaneDescriptor:
    return HyperplaneDescriptor(d["factor"], d["step"], d["a"], d["l"], d["type"], d["prefix"], d["power"])


def objects_from_document(doc: dict) -> tuple[DefiningGraph, WalkSchedule, CrossEdgeSelection, SeparationCertificate]:
    """Rebuild the verifier's inputs from a document, trusting nothing but its shape."""
    g = graph_from_document(doc)
    sel = CrossEdgeSelection(
        {
            (e["i"], e["j"]): CrossEdge(e["i"], e["j"], e["s"], e["t"], e["m"], tuple(e["tau"]))
            for e in doc["cross_edges"]
        }
    )
    sd = doc["schedule"]
    ws = WalkSchedule(
        n=sd["n"],
        rows=tuple(tuple(r) for r in sd["rows"]),
        alignment={(i, j): l for i, j, l in sd["alignment"]},
    )
    gd = doc["gamma"]
    letters = tuple(gd["letters"])
    starts = gd["block_boundaries"]
    ends = list(starts[1:]) + [len(letters)]
    twisted = {tuple(x) for x in gd["twisted_blocks"]}
    n = ws.n
    blocks = tuple(
        Block(p // n + 1, p % n + 1, st, letters[st:en], (p // n + 1, p % n + 1) in twisted)
        for p, (st, en) in enumerate(zip(starts, ends))
    )
    gamma = GammaWord(letters, tuple(doc["path"]), n, len(ws.rows), blocks)
    k4 = doc["key4"]
    cert = SeparationCertificate(
        gamma=gamma,
        descriptors=tuple(_desc_from(h) for h in doc["hyperplanes"]),
        entries=tuple(tuple(e) for e in k4["entries"]),
        steps=tuple(_step_from(s) for s in k4["steps"]),
        per_factor=tuple(tuple(_step_from(s) for s in seq) for seq in doc["per_factor"]),
        coverage=dict(doc["coverage"]),
        start_flank=_desc_from(k4["start_flank"]),
        end_flank=_desc_from(k4["end_flank"]),
        selection=sel,
        proof_level=tuple(doc["proof_level"]),
    )
    return g, ws, sel, cert


def first_difference(a: Any, b: Any, path: str = "$") -> str | None:
    """JSON path of the first place two documents differ."""
    if type(a) is not type(b):
        return path
    if isinstance(a, dict):
        for key in list(a) + [k for k in b if k not in a]:
            if key not in a or key not in b:
                return f"{path}.{key}"
            hit = first_difference(a[key], b[key], f"{path}.{key}")
            if hit:
                return hit
        return None
    if isinstance(a, list):
        for p, (x, y) in enumerate(zip(a, b)):
            hit = first_difference(x, y, f"{path}[{p}]")
            if hit:
                return hit
        return None if len(a) == len(b) else f"{path}[{min(len(a), len(b))}]"
    return None if a == b else path


def verify_document(doc: dict) -> VerificationReport:
    """Re-check a certificate document against its own graph.

    Two independent passes: the lemma preconditions and Coxeter-oracle
    confirmations of every step, and byte-level reproduction of the document
    from the graph and options.
    """
    report = VerificationReport()
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        report.fail("$.schema", f"unsupported schema {doc.get('schema') if isinstance(doc, dict) else doc!r}")
        return report
    if doc.get("input_digest") != input_digest(doc.get("graph"), doc.get("options")):
        report.fail("$.input_digest", "graph or options do not match the recorded input digest")
    try:
        g, ws, sel, cert = objects_from_document(doc)
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        report.fail("$", f"malformed certificate: {exc!r}")
        # the graph alone may still be readable; if so, name the offending field
        try:
            g = graph_from_document(doc)
            options = doc["options"]
            rebuilt = to_document(construct(g, exact_limit=options["exact_limit"], use_lcm=options["lcm"]))
        except (KeyError, TypeError, ValueError, IndexError, AttributeError):
            return report
        where = first_difference(rebuilt, doc)
        if where is not None:
            report.fail(where, "differs from the deterministic reconstruction")
        return report

    try:
        options = doc["options"]
        rebuilt = to_document(
            construct(g, exact_limit=options["exact_limit"], use_lcm=options["lcm"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        report.fail("$.graph", f"graph does not admit the construction: {exc}")
        rebuilt = None

    try:
        schedule_report = validate_schedule(ws, g, tuple(tuple(f) for f in doc["factors"]), sel)
        if not schedule_report.ok:
            report.fail("$.schedule", schedule_report.failure)
        dec = join_decompose(g)
        if sorted(map(sorted, dec.factors)) != sorted(map(sorted, doc["factors"])):
            report.fail("$.factors", "factors are not the join decomposition of the graph")
        for e in sel:
            if tuple(e.tau) != alternating_word(e.s, e.t, e.m):
                report.fail(f"$.cross_edges[{e.i},{e.j}]", "tau violates the alternating parity rule")
            if g.label(e.s, e.t) != e.m or e.m < 3:
                report.fail(f"$.cross_edges[{e.i},{e.j}]", f"({e.s}, {e.t}) is not an edge with label {e.m} > 2")
        if schedule_report.ok:
            semantic = verify_certificate(cert, g, ws, sel)
            report.failures.extend(semantic.failures)
            report.steps_checked = semantic.steps_checked
            report.steps_passed = semantic.steps_passed
            report.oracle_checks = semantic.oracle_checks
            report.coverage = semantic.coverage
            report.family_count = semantic.family_count
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        report.fail("$", f"certificate content is inconsistent: {exc!r}")

    if rebuilt is not None:
        where = first_difference(rebuilt, doc)
        if where is not None:
            report.fail(where, "differs from the deterministic reconstruction")
    return report
