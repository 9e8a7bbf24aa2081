"""Acyclic vertex sets: the Erdos-Moser finder, exact and greedy maxima,
and acyclic-orientation counting with the Manber-Tompa bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from dicolor._bits import closes_cycle, iter_bits
from dicolor.digraph import Digraph, Graph, topological_order
from dicolor.errors import NotATournament, TooLarge
from dicolor.rng import as_rng

BRUTE_FORCE_MAX_EDGES = 24
DELETION_CONTRACTION_MAX_VERTICES = 12


@dataclass(frozen=True)
class AcyclicSetResult:
    vertices: tuple[int, ...]
    witness_order: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)

    def certifies(self, D: Digraph) -> bool:
        """Every arc inside the set goes forward in ``witness_order``."""
        if sorted(self.witness_order) != sorted(self.vertices):
            return False
        pos = {v: i for i, v in enumerate(self.witness_order)}
        sub = D.adjacency[np.ix_(self.witness_order, self.witness_order)]
        us, vs = np.nonzero(sub)
        return all(u < v for u, v in zip(us.tolist(), vs.tolist())) and len(pos) == len(self)


def _result(D: Digraph, vertices) -> AcyclicSetResult:
    verts = tuple(sorted(vertices))
    order = topological_order(D, verts)
    assert order is not None
    return AcyclicSetResult(verts, tuple(order))


def find_transitive_subtournament(T: Digraph, S=None) -> AcyclicSetResult:
    """Constructive Erdos-Moser: an acyclic subset of ``S`` of size >= floor(log2 |S|) + 1.

    Repeatedly take the vertex with the most out-neighbours in the current
    set (smallest id on ties) and continue inside its out-neighbourhood.  A
    set of m vertices leaves at least (m - 1) / 2 of them behind, and every
    later pick is an out-neighbour of every earlier one.
    """
    current = np.array(sorted(range(T.n) if S is None else set(S)), dtype=np.int64)
    if current.size and (current[0] < 0 or current[-1] >= T.n):
        raise NotATournament("vertex set not contained in the digraph")
    full = current.size == T.n
    if not T.is_tournament(None if full else current.tolist()):
        raise NotATournament("S does not induce a tournament")
    adj = T.adjacency
    picks = []
    while current.size:
        sub = adj if full else adj[np.ix_(current, current)]
        full = False
        i = int(np.argmax(sub.sum(axis=1)))  # argmax returns the first, i.e. smallest id
        picks.append(int(current[i]))
        current = current[sub[i]]
    return AcyclicSetResult(tuple(sorted(picks)), tuple(picks))


def erdos_moser_bound(m: int) -> int:
    return int(math.floor(math.log2(m))) + 1 if m >= 1 else 0


def max_acyclic_set_exact(D: Digraph) -> AcyclicSetResult:
    """Maximum acyclic vertex set by branch and bound; lexicographically least on ties.

    Candidates are kept filtered to vertices that can still join the current
    set, so ``|current| + |candidates|`` is the pruning bound.  Branching
    includes candidates in ascending order, which visits sets of equal size
    in lexicographic order; only strictly larger sets replace the incumbent.
    """
    out, inn = D.out_masks, D.in_masks
    best_size = 0
    best_mask = 0

    def search(cur: int, size: int, cand: list[int]):
        nonlocal best_size, best_mask
        if size > best_size:
            best_size, best_mask = size, cur
        for i, v in enumerate(cand):
            if size + len(cand) - i <= best_size:
                return
            nxt = cur | (1 << v)
            rest = [u for u in cand[i + 1:] if not closes_cycle(out, inn, nxt, u)]
            search(nxt, size + 1, rest)

    search(0, 0, list(range(D.n)))
    return _result(D, iter_bits(best_mask))


def max_acyclic_size(D: Digraph) -> int:
    return len(max_acyclic_set_exact(D))


def greedy_acyclic_set(D: Digraph, seed) -> AcyclicSetResult:
    """Scan vertices in a seeded random order, keeping each one that closes no cycle."""
    order = as_rng(seed).shuffle(list(range(D.n)))
    out, inn = D.out_masks, D.in_masks
    cur = 0
    for v in order:
        if not closes_cycle(out, inn, cur, v):
            cur |= 1 << v
    return _result(D, iter_bits(cur))


# --- acyclic orientations -------------------------------------------------


def manber_tompa_bound(G: Graph) -> int:
    return math.prod(d + 1 for d in G.degrees())


def count_acyclic_orientations(G: Graph, method: str = "auto") -> tuple[int, int]:
    """Return ``(count, bound)``: the number of acyclic orientations and prod(d(v) + 1).

    ``method`` is ``"brute"`` (enumerate orientations edge by edge, abandoning
    a branch as soon as it closes a cycle), ``"chromatic"`` (|P(G, -1)| by
    deletion-contraction) or ``"auto"`` (brute force up to 24 edges).
    """
    m = len(G.edges)
    if method == "auto":
        method = "brute" if m <= BRUTE_FORCE_MAX_EDGES else "chromatic"
    if method == "brute":
        if m > BRUTE_FORCE_MAX_EDGES:
            raise TooLarge(f"brute force limited to {BRUTE_FORCE_MAX_EDGES} edges, got {m}")
        count = _count_orientations_brute(G)
    elif method == "chromatic":
        if G.n > DELETION_CONTRACTION_MAX_VERTICES:
            raise TooLarge(
                f"deletion-contraction limited to {DELETION_CONTRACTION_MAX_VERTICES} vertices"
            )
        count = abs(evaluate_polynomial(chromatic_polynomial(G), -1))
    else:
        raise ValueError(f"unknown method {method!r}")
    return count, manber_tompa_bound(G)


def _count_orientations_brute(G: Graph) -> int:
    # components orient independently, so the count factorises
    total = 1
    for comp_edges in _components(G):
        total *= _count_component(comp_edges)
    return total


def _components(G: Graph):
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        parent[find(u)] = find(v)
    groups: dict[int, list] = {}
    for e in G.sorted_edges():
        groups.setdefault(find(e[0]), []).append(e)
    return list(groups.values())


def _count_component(edges) -> int:
    n = max(max(e) for e in edges) + 1
    out = [0] * n

    def reaches(src, dst):
        seen = 1 << src
        frontier = seen
        while frontier:
            if frontier >> dst & 1:
                return True
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= out[u]
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        return False

    def rec(i):
        if i == len(edges):
            return 1
        u, v = edges[i]
        total = 0
        for a, b in ((u, v), (v, u)):
            if not reaches(b, a):
                out[a] |= 1 << b
                total += rec(i + 1)
                out[a] ^= 1 << b
        return total

    return rec(0)


def chromatic_polynomial(G: Graph) -> tuple[int, ...]:
    """Coefficients (constant term first) of the chromatic polynomial, by deletion-contraction."""
    return _chrom(G.n, tuple(sorted(G.edges)))


@lru_cache(maxsize=200_000)
def _chrom(n: int, edges: tuple) -> tuple[int, ...]:
    if not edges:
        return (0,) * n + (1,)
    (u, v), rest = edges[0], edges[1:]
    deleted = _chrom(n, rest)
    contracted = _chrom(n - 1, _contract(rest, u, v))
    out = list(deleted)
    for i, c in enumerate(contracted):
        out[i] -= c
    return tuple(out)


def _contract(edges, u, v):
    """Merge v into u, then relabel vertices above v down by one."""

    def lab(x):
        x = u if x == v else x
        return x - 1 if x > v else x

    merged = set()
    for a, b in edges:
        a, b = lab(a), lab(b)
        if a != b:
            merged.add((min(a, b), max(a, b)))
    return tuple(sorted(merged))


def evaluate_polynomial(coeffs, x) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
