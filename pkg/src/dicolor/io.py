"""Text and JSON formats.

Digraph text format::

    n m
    u v        (m lines, 0-indexed arc u -> v)

List assignments are ``{"k": <int>, "lists": [[c, ...], ...]}`` and colorings
``{"colors": [c_or_null, ...]}``, both indexed by vertex.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from dicolor.digraph import Coloring, Digraph, ListAssignment
from dicolor.errors import ParseError


def read_digraph(text: str) -> Digraph:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, tok) for no, tok in lines if tok]
    if not lines:
        raise ParseError("missing header line 'n m'", 1)
    no, header = lines[0]
    n, m = _ints(header, no, 2)
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", no)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} arcs but {len(body)} arc lines follow", no)
    adj = np.zeros((n, n), dtype=bool)
    for no, tok in body:
        u, v = _ints(tok, no, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range 0..{n - 1}", no)
        if u == v:
            raise ParseError(f"loop at vertex {u}", no)
        if adj[u, v]:
            raise ParseError(f"duplicate arc {u} {v}", no)
        adj[u, v] = True
    return Digraph.from_adjacency(adj)


def _ints(tokens, line, count):
    if len(tokens) != count:
        raise ParseError(f"expected {count} integers, got {len(tokens)} fields", line)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer field in {' '.join(tokens)!r}", line) from None


def write_digraph(D: Digraph) -> str:
    arcs = D.sorted_arcs()
    out = [f"{D.n} {len(arcs)}"]
    out.extend(f"{u} {v}" for u, v in arcs)
    return "\n".join(out) + "\n"


def load_digraph(path) -> Digraph:
    return read_digraph(Path(path).read_text())


def lists_to_json(L: ListAssignment) -> dict:
    return {"k": L.k, "lists": [sorted(lst) for lst in L.lists]}


def lists_from_json(data) -> ListAssignment:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        L = ListAssignment(tuple(data["lists"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed list assignment: {exc}") from None
    if "k" in data and data["k"] != L.k:
        raise ParseError(f"declared k={data['k']} but the smallest list has {L.k} colors")
    return L


def coloring_to_json(c: Coloring) -> dict:
    return {"colors": list(c.colors)}


def coloring_from_json(data) -> Coloring:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        return Coloring(tuple(data["colors"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed coloring: {exc}") from None


def dumps(obj) -> str:
    """Canonical JSON used for every machine-readable output."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
