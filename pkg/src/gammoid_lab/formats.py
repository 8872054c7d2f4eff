"""JSON documents for dimazes, bimazes, linkages and reports.

Documents are emitted with sorted keys, two-space indentation and a
trailing newline, so parsing an emitted document and emitting it again
reproduces it byte for byte.
"""
from __future__ import annotations

import json
from typing import Any, Optional

import jsonschema

from .bimaze import Bimaze, BipartiteGraph
from .dimaze import Dimaze, PathSystem
from .lazy import Truncation

_NAMES = {"type": "array", "items": {"type": "string"}}
_PAIRS = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
}
_PATHS = {"type": "array", "items": {"type": "array", "items": {"type": "string"}, "minItems": 1}}

DIMAZE_SCHEMA = {
    "type": "object",
    "required": ["vertices", "edges", "exits"],
    "properties": {
        "vertices": _NAMES,
        "edges": _PAIRS,
        "exits": _NAMES,
        "frontier": _NAMES,
    },
}

BIPARTITE_SCHEMA = {
    "type": "object",
    "required": ["left", "right", "edges"],
    "properties": {
        "left": _NAMES,
        "right": _NAMES,
        "edges": _PAIRS,
        "m0": _PAIRS,
        "frontier": _NAMES,
    },
}

LINKAGE_SCHEMA = {"type": "object", "required": ["paths"], "properties": {"paths": _PATHS}}

PYM_SCHEMA = {"type": "object", "required": ["p", "q"], "properties": {"p": _PATHS, "q": _PATHS}}


class DocumentError(ValueError):
    """A document that cannot be read; the message names the offending place."""


def parse(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def validate(doc: Any, schema: dict, what: str, source: str = "<input>") -> None:
    errors = sorted(jsonschema.Draft7Validator(schema).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "(top level)"
        raise DocumentError(f"{source}: not a {what} document: at {where}: {err.message}")


def emit(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def kind_of(doc: Any) -> str:
    if isinstance(doc, dict) and "left" in doc:
        return "bimaze" if "m0" in doc else "bipartite"
    return "dimaze"


# ---------------------------------------------------------------------------
# dimazes


def dimaze_doc(D: Dimaze, frontier: Optional[frozenset] = None) -> dict:
    doc = {
        "vertices": list(D.vertices),
        "edges": [list(e) for e in D.sorted_edges()],
        "exits": D.ordered(D.exits),
    }
    if frontier:
        doc["frontier"] = D.ordered(frontier)
    return doc


def truncation_doc(T: Truncation) -> dict:
    return dimaze_doc(T.dimaze, T.frontier)


def read_dimaze(doc: Any, source: str = "<input>") -> Truncation:
    """A dimaze document, with its optional frontier, as a :class:`Truncation`."""
    validate(doc, DIMAZE_SCHEMA, "dimaze", source)
    try:
        D = Dimaze(doc["vertices"], [tuple(e) for e in doc["edges"]], doc["exits"])
        return Truncation(D, frozenset(doc.get("frontier", ())))
    except ValueError as exc:
        raise DocumentError(f"{source}: {exc}") from None


# ---------------------------------------------------------------------------
# bipartite graphs and bimazes


def bipartite_doc(G: BipartiteGraph) -> dict:
    return {"left": list(G.left), "right": list(G.right), "edges": [list(e) for e in G.sorted_edges()]}


def bimaze_doc(B: Bimaze) -> dict:
    doc = bipartite_doc(B.graph)
    doc["m0"] = [[v, B.m0[v]] for v in B.graph.left if v in B.m0]
    if B.frontier:
        doc["frontier"] = [z for z in B.graph.left + B.graph.right if z in B.frontier]
    return doc


def read_bipartite(doc: Any, source: str = "<input>") -> BipartiteGraph:
    validate(doc, BIPARTITE_SCHEMA, "bipartite graph", source)
    try:
        return BipartiteGraph(doc["left"], doc["right"], frozenset(tuple(e) for e in doc["edges"]))
    except ValueError as exc:
        raise DocumentError(f"{source}: {exc}") from None


def read_bimaze(doc: Any, source: str = "<input>") -> Bimaze:
    G = read_bipartite(doc, source)
    if "m0" not in doc:
        raise DocumentError(f"{source}: not a bimaze document: at (top level): 'm0' is a required property")
    m0 = {}
    for v, w in doc["m0"]:
        if v in m0:
            raise DocumentError(f"{source}: m0 uses left vertex {v!r} twice")
        m0[v] = w
    try:
        return Bimaze(G, m0, frozenset(doc.get("frontier", ())))
    except ValueError as exc:
        raise DocumentError(f"{source}: {exc}") from None


# ---------------------------------------------------------------------------
# linkages and matchings


def paths_doc(P: PathSystem) -> list:
    return [list(p) for p in P.paths]


def read_paths(paths: list, source: str = "<input>") -> PathSystem:
    try:
        return PathSystem(tuple(tuple(p) for p in paths))
    except ValueError as exc:
        raise DocumentError(f"{source}: {exc}") from None


def read_linkage(doc: Any, source: str = "<input>") -> PathSystem:
    validate(doc, LINKAGE_SCHEMA, "linkage", source)
    return read_paths(doc["paths"], source)


def read_pym_input(doc: Any, source: str = "<input>") -> tuple:
    validate(doc, PYM_SCHEMA, "linkage pair", source)
    return read_paths(doc["p"], source), read_paths(doc["q"], source)


def matching_doc(m: dict, order) -> list:
    return [[v, m[v]] for v in order if v in m]
