"""Digraph view of an ANF term, with DOT/JSON export and a reachability oracle."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import AnfTerm, AssociativePair, NotFoundError

Arc = tuple[int, int]


@dataclass(frozen=True)
class ImageGraph:
    nodes: Mapping[int, str]
    edges: frozenset[Arc]
    marked: Mapping[Arc, str] = field(default_factory=dict)

    def successors(self, node: int) -> list[int]:
        return sorted(d for h, d in self.edges if h == node)

    def term(self) -> AnfTerm:
        """Edge set back as a term, arcs in ascending order."""
        return AnfTerm(tuple(AssociativePair(h, d) for h, d in sorted(self.edges)))


def to_graph(
    source: AnfTerm,
    marks: Iterable[tuple[AssociativePair, str]] = (),
    lexemes: Mapping[int, str] | None = None,
) -> ImageGraph:
    lexemes = lexemes or {}
    nodes = {i: lexemes.get(i, f"x{i}") for i in source.indices()}
    edges = frozenset((p.head, p.dependent) for p in source.canonical)
    marked = {}
    for pair, label in marks:
        if pair not in source:
            raise NotFoundError(f"marked pair {pair} is not part of the term")
        marked[(pair.head, pair.dependent)] = label
    return ImageGraph(nodes, edges, marked)


def reachable_edges(g: ImageGraph, start: int, blocked: Iterable[Arc] = ()) -> set[Arc]:
    """All arcs on directed walks from ``start`` that avoid ``blocked`` arcs."""
    if start not in g.nodes:
        raise NotFoundError(f"node {start} is not in the graph")
    blocked = set(blocked)
    out: dict[int, list[int]] = {}
    for h, d in g.edges:
        if (h, d) not in blocked:
            out.setdefault(h, []).append(d)
    seen = {start}
    queue = deque([start])
    arcs = set()
    while queue:
        node = queue.popleft()
        for d in out.get(node, ()):
            arcs.add((node, d))
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return arcs


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: ImageGraph) -> str:
    lines = ["digraph ic {"]
    for i in sorted(g.nodes):
        lines.append(f"  {i} [label={_dot_quote(g.nodes[i])}];")
    for h, d in sorted(g.edges):
        if (h, d) in g.marked:
            label = g.marked[(h, d)]
            if not label.endswith("?"):
                label += "?"
            lines.append(f"  {h} -> {d} [label={_dot_quote(label)}];")
        else:
            lines.append(f"  {h} -> {d};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: ImageGraph) -> str:
    doc = {
        "nodes": [{"id": i, "lexeme": g.nodes[i]} for i in sorted(g.nodes)],
        "edges": [{"head": h, "dependent": d} for h, d in sorted(g.edges)],
        "marked": [
            {"head": h, "dependent": d, "label": g.marked[(h, d)]} for h, d in sorted(g.marked)
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def export(g: ImageGraph, format: str = "dot") -> str:
    if format == "dot":
        return to_dot(g)
    if format == "json":
        return to_json(g)
    raise ValueError(f"unknown export format {format!r}")


def from_json(text: str) -> ImageGraph:
    doc = json.loads(text)
    nodes = {int(n["id"]): n["lexeme"] for n in doc["nodes"]}
    edges = frozenset((int(e["head"]), int(e["dependent"])) for e in doc["edges"])
    marked = {(int(m["head"]), int(m["dependent"])): m["label"] for m in doc.get("marked", [])}
    for arc in edges:
        AssociativePair(*arc)
        if arc[0] not in nodes or arc[1] not in nodes:
            raise NotFoundError(f"edge {arc} refers to an unknown node")
    if not set(marked) <= edges:
        raise NotFoundError("marked arc missing from edges")
    return ImageGraph(nodes, edges, marked)
