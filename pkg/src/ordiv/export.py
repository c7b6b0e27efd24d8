"""Deterministic graph serialization: canonical JSON documents and DOT."""

from __future__ import annotations

import json
import math

from . import graphs as gr
from .graphs import Annotation, Graph

FORMAT_VERSION = "1"


def classification(g: Graph, chromatic_cap: int = gr.CHROMATIC_CAP) -> dict:
    rep = gr.classify(g)
    d = gr.diameter(g) if g.vertex_count else None
    try:
        chi = gr.chromatic_number(g, cap=chromatic_cap)
    except gr.CapExceeded:
        chi = None
    return {
        "kind": rep.kind,
        "part_sizes": rep.part_sizes if rep.kind != "other" else None,
        "chromatic_number": chi,
        "diameter": None if d is None or d == math.inf else int(d),
    }


def graph_document(g: Graph, group_spec: str | None = None, classify: bool = False) -> dict:
    ann = g.annotations or tuple(Annotation(str(v), 0) for v in range(g.vertex_count))
    doc = {
        "format_version": FORMAT_VERSION,
        "group_spec": group_spec,
        "vertices": [{"id": v, "label": a.label, "order": a.order_tag} for v, a in enumerate(ann)],
        "edges": [list(e) for e in g.edges()],
    }
    if classify:
        doc["classification"] = classification(g)
    return doc


def to_json(g: Graph, group_spec: str | None = None, classify: bool = False) -> str:
    """One vertex / edge per line so fixtures diff cleanly."""
    doc = graph_document(g, group_spec, classify)
    lines = ["{",
             f'  "format_version": {json.dumps(doc["format_version"])},',
             f'  "group_spec": {json.dumps(doc["group_spec"])},']
    lines.append('  "vertices": [' + ("" if doc["vertices"] else "],"))
    for i, v in enumerate(doc["vertices"]):
        sep = "," if i + 1 < len(doc["vertices"]) else ""
        lines.append("    " + json.dumps(v, ensure_ascii=False) + sep)
    if doc["vertices"]:
        lines.append("  ],")
    tail = "," if classify else ""
    if doc["edges"]:
        lines.append('  "edges": [')
        for i, e in enumerate(doc["edges"]):
            sep = "," if i + 1 < len(doc["edges"]) else ""
            lines.append(f"    [{e[0]}, {e[1]}]{sep}")
        lines.append("  ]" + tail)
    else:
        lines.append('  "edges": []' + tail)
    if classify:
        lines.append(f'  "classification": {json.dumps(doc["classification"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_json(text: str) -> tuple[Graph, dict]:
    """Parse a graph document back into a Graph (annotations included)."""
    doc = json.loads(text)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {doc.get('format_version')!r}")
    verts = sorted(doc["vertices"], key=lambda v: v["id"])
    if [v["id"] for v in verts] != list(range(len(verts))):
        raise ValueError("vertex ids must be 0..n-1")
    edges = [tuple(e) for e in doc["edges"]]
    if any(len(e) != 2 or e[0] >= e[1] for e in edges) or edges != sorted(set(edges)):
        raise ValueError("edges must be sorted, deduplicated pairs [i, j] with i < j")
    ann = [Annotation(v["label"], v["order"]) for v in verts]
    return gr.from_edges(len(verts), edges, ann), doc


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(g: Graph, name: str = "G") -> str:
    """Undirected DOT; same-order vertices share a ranked cluster."""
    ann = g.annotations or tuple(Annotation(str(v), 0) for v in range(g.vertex_count))
    clusters: dict[int, list[int]] = {}
    for v, a in enumerate(ann):
        clusters.setdefault(a.order_tag, []).append(v)
    out = [f'graph "{_dot_escape(name)}" {{', "  node [shape=circle];"]
    for tag in sorted(clusters):
        out.append(f"  subgraph cluster_o{tag} {{")
        out.append(f'    label="o={tag}";')
        out.append("    rank=same;")
        for v in clusters[tag]:
            out.append(f'    {v} [label="{_dot_escape(ann[v].label)} (o={ann[v].order_tag})"];')
        out.append("  }")
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


def dot_content_lines(text: str) -> list[str]:
    """Vertex and edge lines only; cluster layout lines are cosmetic."""
    keep = []
    for line in text.splitlines():
        s = line.strip()
        if "--" in s or "[label=" in s:
            keep.append(s)
    return keep
