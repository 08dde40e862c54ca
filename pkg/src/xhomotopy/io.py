"""JSON interchange for graphs, maps, squares and check reports.

A graph is ``{"vertices": [...], "edges": [[u, w], ...]}`` with a loop written
``[v, v]``.  A map is ``{"domain": G, "codomain": H, "assignment": {...}}``
where ``G`` and ``H`` are inline graphs or paths to graph files (resolved
against the directory of the referencing document).
"""

from __future__ import annotations

import json
import os
from typing import Any, Optional

from .errors import GraphError
from .graph import FoldSequence, Graph, GraphMap


class DocumentError(GraphError):
    """A document is malformed; the message names the offending field."""


def load_document(source: str) -> tuple[Any, Optional[str]]:
    """Parse inline JSON (starting with ``{`` or ``[``) or read a file.

    Returns the document and the directory used to resolve references.
    """
    text = source.lstrip()
    if text.startswith("{") or text.startswith("["):
        try:
            return json.loads(text), None
        except json.JSONDecodeError as exc:
            raise DocumentError(f"inline document: {exc}") from None
    try:
        with open(source, encoding="utf-8") as fh:
            return json.load(fh), os.path.dirname(os.path.abspath(source))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: {exc}") from None
    except OSError as exc:
        raise DocumentError(f"{source}: {exc.strerror}") from None


def _field(doc: Any, name: str, where: str) -> Any:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected an object")
    if name not in doc:
        raise DocumentError(f"{where}: missing field '{name}'")
    return doc[name]


def parse_graph(doc: Any, where: str = "graph") -> Graph:
    vertices = _field(doc, "vertices", where)
    edges = doc.get("edges", [])
    if not isinstance(vertices, list):
        raise DocumentError(f"{where}.vertices: expected a list")
    for k, v in enumerate(vertices):
        if not isinstance(v, str):
            raise DocumentError(f"{where}.vertices[{k}]: expected a string, got {v!r}")
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise DocumentError(f"{where}.vertices: duplicate vertex {dup!r}")
    if not isinstance(edges, list):
        raise DocumentError(f"{where}.edges: expected a list")
    known = set(vertices)
    for k, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise DocumentError(f"{where}.edges[{k}]: expected a pair of strings, got {e!r}")
        for end in e:
            if end not in known:
                raise DocumentError(f"{where}.edges[{k}]: unknown vertex {end!r}")
    return Graph(vertices, edges)


def _graph_ref(doc: Any, where: str, base: Optional[str]) -> Graph:
    if isinstance(doc, str):
        path = doc if base is None or os.path.isabs(doc) else os.path.join(base, doc)
        inner, _ = load_document(path)
        return parse_graph(inner, f"{where} ({doc})")
    return parse_graph(doc, where)


def parse_map(doc: Any, base: Optional[str] = None, where: str = "map") -> GraphMap:
    dom = _graph_ref(_field(doc, "domain", where), f"{where}.domain", base)
    cod = _graph_ref(_field(doc, "codomain", where), f"{where}.codomain", base)
    assignment = _field(doc, "assignment", where)
    if not isinstance(assignment, dict):
        raise DocumentError(f"{where}.assignment: expected an object")
    for k, v in assignment.items():
        if not isinstance(v, str):
            raise DocumentError(f"{where}.assignment[{k!r}]: expected a string, got {v!r}")
    try:
        return GraphMap(dom, cod, assignment)
    except GraphError as exc:
        raise DocumentError(f"{where}.assignment: {exc}") from None


def parse_square(doc: Any, base: Optional[str] = None):
    from .lifting import LiftingSquare

    parts = [parse_map(_field(doc, k, "square"), base, f"square.{k}") for k in ("left", "top", "bottom", "right")]
    try:
        return LiftingSquare(*parts)
    except GraphError as exc:
        raise DocumentError(f"square: {exc}") from None


def serialize_graph(G: Graph) -> dict:
    return {"vertices": list(G.vertices), "edges": [list(e) for e in G.edges]}


def serialize_map(f: GraphMap) -> dict:
    return {
        "domain": serialize_graph(f.domain),
        "codomain": serialize_graph(f.codomain),
        "assignment": dict(f.assignment),
    }


def serialize_fold_sequence(seq: FoldSequence) -> dict:
    return {
        "start": serialize_graph(seq.start),
        "end": serialize_graph(seq.end),
        "steps": [list(s) for s in seq.steps],
    }


def serialize_homotopy(h) -> dict:
    return {"length": h.length, "stages": [dict(s.assignment) for s in h.stages]}


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, default=_fallback)


def _fallback(obj: Any):
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    return repr(obj)


def write_output(doc: Any, out: Optional[str]) -> None:
    text = dumps(doc)
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
