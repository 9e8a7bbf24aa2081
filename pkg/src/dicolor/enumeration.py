"""All digraphs on n vertices up to isomorphism, by canonical adjacency codes.

A digraph on n vertices is encoded as an integer with bit ``i*n + j`` set for
the arc i -> j.  Its canonical code is the minimum code over all n!
relabellings.  Classes on n vertices are generated from those on n - 1 by
attaching a new vertex in every possible way (none, in, out or digon to each
old vertex) and keeping the distinct canonical codes; every digraph on n
vertices arises this way because deleting its last vertex gives some class
on n - 1.  Codes are processed as numpy uint64 arrays, so n <= 8.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from dicolor.digraph import Digraph

MAX_N = 8


def encode(D: Digraph) -> int:
    code = 0
    for u, v in D.arcs:
        code |= 1 << (u * D.n + v)
    return code


def decode(code: int, n: int) -> Digraph:
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j and code >> (i * n + j) & 1]
    return Digraph(n, arcs)


def canonical_codes(codes: np.ndarray, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.uint64)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    bits = {(i, j): (codes >> np.uint64(i * n + j)) & np.uint64(1) for i, j in pairs}
    best = None
    for p in permutations(range(n)):
        out = np.zeros_like(codes)
        for i, j in pairs:
            out |= bits[(i, j)] << np.uint64(p[i] * n + p[j])
        best = out if best is None else np.minimum(best, out)
    return best if best is not None else codes


@lru_cache(maxsize=None)
def _canonical_tuple(n: int) -> tuple[int, ...]:
    if n > MAX_N:
        raise ValueError(f"enumeration supports n <= {MAX_N}")
    if n <= 1:
        return (0,)
    prev = np.array(_canonical_tuple(n - 1), dtype=np.uint64)
    m = n - 1
    # move old bits from the (n-1)-layout to the n-layout
    base = np.zeros_like(prev)
    for i in range(m):
        for j in range(m):
            if i != j:
                base |= ((prev >> np.uint64(i * m + j)) & np.uint64(1)) << np.uint64(i * n + j)
    # each old vertex u gets one of 4 links to the new vertex: 0 none, 1 u->new, 2 new->u, 3 both
    links = np.arange(4 ** m, dtype=np.uint64)
    extra = np.zeros_like(links)
    for u in range(m):
        sel = (links >> np.uint64(2 * u)) & np.uint64(3)
        extra |= (sel & np.uint64(1)) << np.uint64(u * n + m)
        extra |= ((sel >> np.uint64(1)) & np.uint64(1)) << np.uint64(m * n + u)
    candidates = (base[:, None] | extra[None, :]).ravel()
    return tuple(int(c) for c in np.unique(canonical_codes(candidates, n)))


def canonical_digraphs(n: int) -> list[int]:
    """Sorted canonical codes of all digraphs (digons allowed) on n vertices."""
    return list(_canonical_tuple(n))


def iter_digraphs(n: int):
    for code in canonical_digraphs(n):
        yield decode(code, n)
