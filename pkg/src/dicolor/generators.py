"""Seeded random models: tournaments, D(n, p) and oriented complete bipartite graphs.

Each unordered pair ``i < j`` consumes exactly one uniform draw, in
lexicographic pair order, so the same seed produces the same digraph
everywhere.  For D(n, p) a draw ``u`` gives ``i -> j`` when ``u < p`` and
``j -> i`` when ``p <= u < 2p``; at p = 1/2 this is exactly the tournament
generator.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from dicolor.digraph import Bipartition, Digraph, transposed
from dicolor.errors import InvalidProbability
from dicolor.rng import as_rng


@lru_cache(maxsize=8)
def _upper(n: int) -> np.ndarray:
    # boolean-mask assignment fills in row-major order, i.e. lexicographic pairs
    return np.triu(np.ones((n, n), dtype=bool), 1)


def _orient_pairs(n, forward, backward):
    mask = _upper(n)
    fwd = np.zeros((n, n), dtype=bool)
    bwd = np.zeros((n, n), dtype=bool)
    fwd[mask] = forward
    bwd[mask] = backward
    return Digraph.from_adjacency(fwd | transposed(bwd))


def gen_random_tournament(n: int, seed) -> Digraph:
    if n < 1:
        raise ValueError("n must be at least 1")
    # u < 1/2 exactly when the top bit of the raw word is clear
    fwd = as_rng(seed).raw(n * (n - 1) // 2) < np.uint64(1 << 63)
    return _orient_pairs(n, fwd, ~fwd)


def gen_random_digraph(n: int, p: float, seed) -> Digraph:
    """Sample D(n, p): each pair joined with probability 2p, direction uniform."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not (0.0 <= p <= 0.5):
        raise InvalidProbability(f"p must lie in [0, 1/2], got {p}")
    u = as_rng(seed).random(n * (n - 1) // 2)
    return _orient_pairs(n, u < p, (u >= p) & (u < 2 * p))


def gen_random_complete_bipartite(n: int, seed) -> tuple[Digraph, Bipartition]:
    """Randomly orient K_{n,n}; sides are ``0..n-1`` and ``n..2n-1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    fwd = (as_rng(seed).random(n * n) < 0.5).reshape(n, n)
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    adj[:n, n:] = fwd
    adj[n:, :n] = ~fwd.T
    side = Bipartition(frozenset(range(n)), frozenset(range(n, 2 * n)))
    return Digraph.from_adjacency(adj), side
