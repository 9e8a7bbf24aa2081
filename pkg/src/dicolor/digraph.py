"""Digraphs, list assignments, colorings and the validity predicates.

A :class:`Digraph` is stored as a dense boolean adjacency matrix, which keeps
tournaments on a few thousand vertices cheap to build and slice.  Bitmask and
neighbour-list views are derived lazily for the exponential solvers, which
work on small vertex counts.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from dicolor.errors import (
    InvalidDigraph,
    InvalidPartition,
    InvalidVertex,
    PartialColoring,
)


class Digraph:
    """Loopless digraph on vertices ``0..n-1``; digons are allowed.

    Instances are immutable: the adjacency matrix is flagged read-only and
    every derived view is cached.
    """

    __slots__ = ("n", "_adj", "_arcs", "_out", "_in", "_out_masks", "_in_masks")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidDigraph("vertex count must be nonnegative")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidDigraph(f"loop at vertex {u}")
            if adj[u, v]:
                raise InvalidDigraph(f"duplicate arc ({u}, {v})")
            adj[u, v] = True
        self._init(n, adj)

    def _init(self, n, adj):
        adj.setflags(write=False)
        self.n = n
        self._adj = adj
        self._arcs = None
        self._out = None
        self._in = None
        self._out_masks = None
        self._in_masks = None

    @classmethod
    def from_adjacency(cls, adj) -> "Digraph":
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InvalidDigraph("adjacency matrix must be square")
        if adj.diagonal().any():
            raise InvalidDigraph("adjacency matrix has a loop")
        d = cls.__new__(cls)
        d._init(adj.shape[0], adj)
        return d

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def arcs(self) -> frozenset:
        if self._arcs is None:
            us, vs = np.nonzero(self._adj)
            self._arcs = frozenset(zip(us.tolist(), vs.tolist()))
        return self._arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(self._adj)  # row-major, hence lexicographic
        return list(zip(us.tolist(), vs.tolist()))

    @property
    def num_arcs(self) -> int:
        return int(self._adj.sum())

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        if self._out is None:
            self._out = tuple(tuple(np.flatnonzero(row).tolist()) for row in self._adj)
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        if self._in is None:
            self._in = tuple(tuple(np.flatnonzero(col).tolist()) for col in self._adj.T)
        return self._in[v]

    @property
    def out_masks(self) -> tuple[int, ...]:
        """Out-neighbourhoods as Python int bitmasks (bit ``u`` set for arc v->u)."""
        if self._out_masks is None:
            self._out_masks = _row_masks(self._adj)
        return self._out_masks

    @property
    def in_masks(self) -> tuple[int, ...]:
        if self._in_masks is None:
            self._in_masks = _row_masks(transposed(self._adj))
        return self._in_masks

    def out_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def in_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=0)

    def is_digon_free(self) -> bool:
        return not (self._adj & transposed(self._adj)).any()

    def is_tournament(self, vertices: Sequence[int] | None = None) -> bool:
        sub = self._adj if vertices is None else self._adj[np.ix_(vertices, vertices)]
        m = sub.shape[0]
        # with no loops, m(m-1)/2 arcs and no digon cover every pair exactly once
        if np.count_nonzero(sub) != m * (m - 1) // 2:
            return False
        return not (sub & transposed(sub)).any()

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        """Induced subdigraph, relabelled ``0..len(vertices)-1`` in the given order."""
        idx = list(vertices)
        return Digraph.from_adjacency(self._adj[np.ix_(idx, idx)])

    def underlying_edges(self) -> set[tuple[int, int]]:
        sym = np.triu(self._adj | transposed(self._adj), 1)
        us, vs = np.nonzero(sym)
        return set(zip(us.tolist(), vs.tolist()))

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.num_arcs})"


def transposed(mat: np.ndarray, block: int = 256) -> np.ndarray:
    """Contiguous transpose, copied in cache-sized blocks (much faster than
    ``mat.T.copy()`` for large boolean matrices)."""
    rows, cols = mat.shape
    out = np.empty((cols, rows), dtype=mat.dtype)
    for i in range(0, rows, block):
        for j in range(0, cols, block):
            out[j:j + block, i:i + block] = mat[i:i + block, j:j + block].T
    return out


def _row_masks(mat: np.ndarray) -> tuple[int, ...]:
    n = mat.shape[1]
    if n == 0:
        return tuple(0 for _ in range(mat.shape[0]))
    packed = np.packbits(mat, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are stored as ``(min, max)`` pairs."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidDigraph(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidVertex(f"edge ({u}, {v}) out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class DegreeStats:
    d_out: tuple[int, ...]
    d_in: tuple[int, ...]
    delta_tilde: float
    delta_out_max: int
    delta_in_max: int


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists over nonnegative integer color ids."""

    lists: tuple[frozenset, ...]

    def __post_init__(self):
        lists = tuple(frozenset(int(c) for c in lst) for lst in self.lists)
        for v, lst in enumerate(lists):
            if not lst:
                raise ValueError(f"vertex {v} has an empty list")
            if min(lst) < 0:
                raise ValueError(f"vertex {v} has a negative color id")
        object.__setattr__(self, "lists", lists)

    @classmethod
    def uniform(cls, n: int, colors: Iterable[int]) -> "ListAssignment":
        colors = frozenset(colors)
        return cls(tuple(colors for _ in range(n)))

    @property
    def k(self) -> int:
        return min((len(lst) for lst in self.lists), default=0)

    @property
    def n(self) -> int:
        return len(self.lists)

    def universe(self) -> list[int]:
        return sorted(set().union(*self.lists)) if self.lists else []

    def __getitem__(self, v: int) -> frozenset:
        return self.lists[v]


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map; ``None`` marks an uncolored vertex.

    ``stats`` carries procedure diagnostics (retries, rounds, ...) and is
    ignored by equality.
    """

    colors: tuple
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(
            self, "colors", tuple(None if c is None else int(c) for c in self.colors)
        )

    @classmethod
    def empty(cls, n: int) -> "Coloring":
        return cls((None,) * n)

    @property
    def n(self) -> int:
        return len(self.colors)

    def is_total(self) -> bool:
        return all(c is not None for c in self.colors)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            if c is not None:
                out.setdefault(c, []).append(v)
        return out

    def __getitem__(self, v):
        return self.colors[v]


@dataclass(frozen=True)
class AcyclicPartition:
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "classes", tuple(tuple(sorted(int(v) for v in c)) for c in self.classes)
        )

    def __len__(self):
        return len(self.classes)

    def class_of(self) -> dict[int, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}

    def validate(self, D: Digraph) -> None:
        seen = [v for cls in self.classes for v in cls]
        if sorted(seen) != list(range(D.n)):
            raise InvalidPartition("classes must be disjoint and cover every vertex")
        for i, cls in enumerate(self.classes):
            if not is_acyclic(D, cls):
                raise InvalidPartition(f"class {i} contains a directed cycle")

    def as_coloring(self) -> Coloring:
        colors = [None] * sum(len(c) for c in self.classes)
        for i, cls in enumerate(self.classes):
            for v in cls:
                colors[v] = i
        return Coloring(tuple(colors))


@dataclass(frozen=True)
class Bipartition:
    side1: frozenset
    side2: frozenset

    def validate(self, D: Digraph) -> None:
        if self.side1 & self.side2 or (self.side1 | self.side2) != set(range(D.n)):
            raise InvalidPartition("sides must be disjoint and cover every vertex")
        for u, v in D.arcs:
            if (u in self.side1) == (v in self.side1):
                raise InvalidPartition(f"arc ({u}, {v}) does not cross the bipartition")

    def side_of(self, v: int) -> int:
        return 0 if v in self.side1 else 1

    @classmethod
    def from_digraph(cls, D: Digraph) -> "Bipartition":
        """Two-color the underlying graph by BFS; raises if it is not bipartite."""
        side = [-1] * D.n
        nbrs = [set(D.out_neighbors(v)) | set(D.in_neighbors(v)) for v in range(D.n)]
        for s in range(D.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            queue = [s]
            while queue:
                u = queue.pop()
                for w in nbrs[u]:
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        queue.append(w)
                    elif side[w] == side[u]:
                        raise InvalidPartition("underlying graph is not bipartite")
        return cls(
            frozenset(v for v in range(D.n) if side[v] == 0),
            frozenset(v for v in range(D.n) if side[v] == 1),
        )


def _check_vertices(D: Digraph, S: Iterable[int]) -> list[int]:
    verts = sorted({int(v) for v in S})
    if verts and (verts[0] < 0 or verts[-1] >= D.n):
        raise InvalidVertex(f"vertex set not contained in 0..{D.n - 1}")
    return verts


def topological_order(D: Digraph, S: Iterable[int] | None = None) -> list[int] | None:
    """Topological order of ``D[S]`` (smallest available id first), or None if cyclic."""
    verts = list(range(D.n)) if S is None else _check_vertices(D, S)
    if not verts:
        return []
    sub = D.adjacency[np.ix_(verts, verts)]
    indeg = sub.sum(axis=0).tolist()
    heap = [i for i, d in enumerate(indeg) if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        i = heapq.heappop(heap)
        order.append(verts[i])
        for j in np.flatnonzero(sub[i]).tolist():
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    return order if len(order) == len(verts) else None


def is_acyclic(D: Digraph, S: Iterable[int] | None = None) -> bool:
    """True iff the subdigraph induced by ``S`` (default: all of D) has no directed cycle."""
    return topological_order(D, S) is not None


def is_valid_coloring(D: Digraph, c: Coloring, L: ListAssignment | None = None) -> bool:
    """No monochromatic directed cycle and, when ``L`` is given, every color from its list."""
    if c.n != D.n:
        raise ValueError(f"coloring has {c.n} entries for a digraph on {D.n} vertices")
    if not c.is_total():
        raise PartialColoring("coloring leaves vertices uncolored")
    if L is not None:
        if L.n != D.n:
            raise ValueError("list assignment size does not match the digraph")
        if any(col not in L.lists[v] for v, col in enumerate(c.colors)):
            return False
    return all(is_acyclic(D, cls) for cls in c.classes().values())


def is_proper_partial(D: Digraph, c: Coloring, L: ListAssignment | None = None) -> bool:
    """Validity restricted to the colored vertices of a partial coloring."""
    if L is not None and any(
        col is not None and col not in L.lists[v] for v, col in enumerate(c.colors)
    ):
        return False
    return all(is_acyclic(D, cls) for cls in c.classes().values())


def bidirect(G: Graph) -> Digraph:
    arcs = []
    for u, v in G.sorted_edges():
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(G.n, arcs)


def degree_stats(D: Digraph) -> DegreeStats:
    d_out = D.out_degrees().astype(int).tolist()
    d_in = D.in_degrees().astype(int).tolist()
    delta_tilde = max((math.sqrt(a * b) for a, b in zip(d_out, d_in)), default=0.0)
    return DegreeStats(
        d_out=tuple(d_out),
        d_in=tuple(d_in),
        delta_tilde=delta_tilde,
        delta_out_max=max(d_out, default=0),
        delta_in_max=max(d_in, default=0),
    )


def coloring_from_mapping(n: int, mapping: Mapping[int, int]) -> Coloring:
    return Coloring(tuple(mapping.get(v) for v in range(n)))
