"""Exact dichromatic and list-dichromatic numbers for small digraphs, plus the
min(in, out)-degeneracy greedy colorer."""
from __future__ import annotations

import math
from dataclasses import dataclass

from dicolor._bits import closes_cycle, iter_bits, popcount
from dicolor.acyclic import max_acyclic_size
from dicolor.digraph import AcyclicPartition, Coloring, Digraph, ListAssignment
from dicolor.errors import InsufficientLists


@dataclass(frozen=True)
class SolveResult:
    """``certificate`` is an AcyclicPartition for chi, or for chi_l the failing
    (value - 1)-list-assignment (None when value == 1)."""

    value: int
    certificate: AcyclicPartition | ListAssignment | None


# --- dichromatic number ---------------------------------------------------


def dichromatic_number(D: Digraph) -> SolveResult:
    n = D.n
    if n == 0:
        return SolveResult(0, AcyclicPartition(()))
    alpha = max_acyclic_size(D)
    k = max(1, math.ceil(n / alpha))
    while True:
        classes = _partition_into(D, k)
        if classes is not None:
            return SolveResult(k, AcyclicPartition(tuple(tuple(iter_bits(c)) for c in classes)))
        k += 1


def _partition_into(D: Digraph, k: int) -> list[int] | None:
    """Backtracking over vertices in id order; a vertex may only open the next
    unused class, so each partition is visited under one labelling."""
    out, inn = D.out_masks, D.in_masks
    n = D.n
    classes = [0] * k

    def place(v: int, used: int) -> bool:
        if v == n:
            return True
        for j in range(min(used + 1, k)):
            if closes_cycle(out, inn, classes[j], v):
                continue
            classes[j] |= 1 << v
            if place(v + 1, max(used, j + 1)):
                return True
            classes[j] ^= 1 << v
        return False

    return [c for c in classes if c] if place(0, 0) else None


def acyclic_k_colorable(D: Digraph, k: int) -> bool:
    return D.n == 0 or _partition_into(D, k) is not None


# --- list coloring --------------------------------------------------------


def is_L_colorable(D: Digraph, L: ListAssignment) -> Coloring | None:
    """Complete backtracking search for an L-coloring without monochromatic cycles."""
    if L.n != D.n:
        raise ValueError("list assignment size does not match the digraph")
    found = _solve_lists(D.out_masks, D.in_masks, list(range(D.n)), [sorted(x) for x in L.lists])
    if found is None:
        return None
    return Coloring(tuple(found[v] for v in range(D.n)))


def _solve_lists(out, inn, verts, domains) -> dict | None:
    """Assign ``domains[i]`` colors to ``verts[i]``.

    Dynamic most-constrained-vertex ordering with forward checking: a color
    is only offered to a vertex if adding it to that color class keeps the
    class acyclic.
    """
    classes: dict[int, int] = {}
    assignment: dict[int, int] = {}
    todo = list(range(len(verts)))

    def search() -> bool:
        if not todo:
            return True
        best_i = -1
        best_opts = None
        for i in todo:
            v = verts[i]
            opts = [c for c in domains[i] if not closes_cycle(out, inn, classes.get(c, 0), v)]
            if not opts:
                return False
            if best_opts is None or len(opts) < len(best_opts):
                best_i, best_opts = i, opts
                if len(opts) == 1:
                    break
        v = verts[best_i]
        todo.remove(best_i)
        for c in best_opts:
            classes[c] = classes.get(c, 0) | (1 << v)
            assignment[v] = c
            if search():
                return True
            classes[c] ^= 1 << v
        del assignment[v]
        todo.append(best_i)
        return False

    return dict(assignment) if search() else None


def canonical_assignments(s: int, k: int, allowed=None):
    """Yield k-list-assignments on ``s`` vertices up to renaming colors, as
    tuples of color columns.

    An assignment is determined up to color renaming by the multiset of its
    columns (the set of vertices whose list holds a given color), so we
    enumerate multisets of columns covering every vertex exactly k times.
    Columns are ordered by (lowest vertex, mask); the next column must contain
    the lowest vertex still short of k colors.  Only columns with at least two
    vertices are produced, and when ``allowed`` is given only columns in it.
    """
    rem = [k] * s
    cols: list[int] = []

    def rec(prev_low: int, prev_mask: int):
        v = next((i for i in range(s) if rem[i]), None)
        if v is None:
            yield tuple(cols)
            return
        others = [u for u in range(v + 1, s) if rem[u]]
        for sub in range(1, 1 << len(others)):
            mask = 1 << v
            for j, u in enumerate(others):
                if sub >> j & 1:
                    mask |= 1 << u
            if v == prev_low and mask < prev_mask:
                continue
            if allowed is not None and mask not in allowed:
                continue
            members = list(iter_bits(mask))
            for u in members:
                rem[u] -= 1
            cols.append(mask)
            yield from rec(v, mask)
            cols.pop()
            for u in members:
                rem[u] += 1

    yield from rec(-1, 0)


def columns_to_lists(cols, verts) -> list[list[int]]:
    """Colors are numbered 1, 2, ... in column order; lists are keyed by position in ``verts``."""
    lists: list[list[int]] = [[] for _ in verts]
    for color, mask in enumerate(cols, start=1):
        for i in iter_bits(mask):
            lists[i].append(color)
    return lists


class _Choosability:
    """Is D[mask] L-colorable for every k-list-assignment L?

    If the vertices holding some color c induce an acyclic subdigraph, they
    can all take c, so L is colorable iff its restriction to the remaining
    vertices is.  Hence D[mask] is k-choosable iff every D[mask - v] is and
    every assignment whose color columns all induce a directed cycle is
    colorable.  Sets of at most k vertices are trivially choosable.
    """

    def __init__(self, D: Digraph, k: int):
        self.D, self.k = D, k
        self.out, self.inn = D.out_masks, D.in_masks
        self.memo: dict[int, tuple | None] = {}

    def failing(self, mask: int):
        """A failing assignment as ``(verts, lists)`` or None if choosable."""
        if mask in self.memo:
            return self.memo[mask]
        result = None
        if popcount(mask) > self.k:
            for v in iter_bits(mask):
                result = self.failing(mask ^ (1 << v))
                if result is not None:
                    break
            if result is None:
                result = self._check_cyclic_columns(mask)
        self.memo[mask] = result
        return result

    def _check_cyclic_columns(self, mask: int):
        verts = list(iter_bits(mask))
        cyclic = set()
        for local in range(3, 1 << len(verts)):
            glob = 0
            for i in iter_bits(local):
                glob |= 1 << verts[i]
            if _has_cycle(self.out, glob):
                cyclic.add(local)
        for cols in canonical_assignments(len(verts), self.k, cyclic):
            lists = columns_to_lists(cols, verts)
            if _solve_lists(self.out, self.inn, verts, lists) is None:
                return verts, lists
        return None


def _has_cycle(out, mask: int) -> bool:
    """Peel vertices with no out-neighbour left inside ``mask``; a cycle survives."""
    while mask:
        sinks = 0
        for v in iter_bits(mask):
            if not out[v] & mask:
                sinks |= 1 << v
        if not sinks:
            return True
        mask &= ~sinks
    return False


def _extend_witness(n: int, verts, lists, k: int) -> ListAssignment:
    """Pad a failing assignment on a vertex subset with private colors for the rest."""
    full: list = [None] * n
    for v, lst in zip(verts, lists):
        full[v] = lst
    fresh = max((c for lst in lists for c in lst), default=0) + 1
    for v in range(n):
        if full[v] is None:
            full[v] = list(range(fresh, fresh + k))
            fresh += k
    return ListAssignment(tuple(full))


def is_k_choosable(D: Digraph, k: int) -> bool:
    if k < 1:
        return D.n == 0
    return _Choosability(D, k).failing((1 << D.n) - 1) is None


def failing_assignment(D: Digraph, k: int) -> ListAssignment | None:
    """A k-list-assignment admitting no L-coloring, or None if D is k-choosable."""
    if k < 1:
        raise ValueError("k must be positive")
    found = _Choosability(D, k).failing((1 << D.n) - 1)
    if found is None:
        return None
    return _extend_witness(D.n, *found, k)


def list_dichromatic_number(D: Digraph, chi: int | None = None) -> SolveResult:
    """Exact list dichromatic number (practical for n <= 7).

    Starts at k = chi(D) and raises k until no failing k-assignment exists.
    The certificate is a failing (k - 1)-assignment: identical lists
    {1..k-1} when k = chi, otherwise the one found at k - 1.
    """
    if D.n == 0:
        return SolveResult(0, None)
    if chi is None:
        chi = dichromatic_number(D).value
    k = chi
    witness = ListAssignment.uniform(D.n, range(1, k)) if k >= 2 else None
    while True:
        fail = failing_assignment(D, k)
        if fail is None:
            return SolveResult(k, witness)
        witness = fail
        k += 1


# --- degeneracy -----------------------------------------------------------


@dataclass(frozen=True)
class Degeneracy:
    value: int
    order: tuple[int, ...]
    # True when the vertex was removed on its out-side (d+ <= d-)
    out_side: tuple[bool, ...]


def min_inout_degeneracy(D: Digraph) -> Degeneracy:
    """Repeatedly delete a vertex minimising min(d+, d-) in what remains (smallest id on ties)."""
    n = D.n
    dout = D.out_degrees().astype(int).tolist()
    din = D.in_degrees().astype(int).tolist()
    alive = [True] * n
    order, sides = [], [False] * n
    value = 0
    for _ in range(n):
        v = min((u for u in range(n) if alive[u]), key=lambda u: (min(dout[u], din[u]), u))
        value = max(value, min(dout[v], din[v]))
        sides[v] = dout[v] <= din[v]
        order.append(v)
        alive[v] = False
        for w in D.out_neighbors(v):
            din[w] -= 1
        for w in D.in_neighbors(v):
            dout[w] -= 1
    return Degeneracy(value, tuple(order), tuple(sides))


def greedy_min_inout_list_color(D: Digraph, L: ListAssignment) -> Coloring:
    """Color in reverse elimination order, avoiding the colors on the smaller side.

    When v is colored, the neighbours already colored are exactly those still
    present when v was eliminated, so at most d of them sit on the chosen
    side and a list of d + 1 colors always has a free one.  On any cycle,
    the first-eliminated vertex sees both cycle neighbours, and its color
    differs from the one on its chosen side.
    """
    deg = min_inout_degeneracy(D)
    if L.k < deg.value + 1:
        raise InsufficientLists(f"lists of size {L.k} below degeneracy + 1 = {deg.value + 1}")
    colors: list = [None] * D.n
    for v in reversed(deg.order):
        side = D.out_neighbors(v) if deg.out_side[v] else D.in_neighbors(v)
        blocked = {colors[w] for w in side if colors[w] is not None}
        colors[v] = min(c for c in L.lists[v] if c not in blocked)
    return Coloring(tuple(colors), stats={"degeneracy": deg.value})
