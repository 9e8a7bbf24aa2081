"""Constructive colorers extracted from the list-coloring arguments.

Every function here returns a total :class:`Coloring` that has been checked
with :func:`is_valid_coloring` before it is handed back; the ``stats`` dict
records retries, rounds and phase counts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from dicolor.acyclic import erdos_moser_bound, find_transitive_subtournament
from dicolor.digraph import (
    AcyclicPartition,
    Bipartition,
    Coloring,
    Digraph,
    ListAssignment,
    degree_stats,
    is_acyclic,
    is_proper_partial,
    is_valid_coloring,
)
from dicolor.errors import (
    ExtensionFailed,
    HallViolation,
    InsufficientLists,
    InvalidColoring,
    NotATournament,
    RetriesExhausted,
    RoundsExhausted,
    TransferFailed,
)
from dicolor.generators import gen_random_complete_bipartite
from dicolor.rng import as_rng


def _certified(D, colors, L, stats):
    c = Coloring(tuple(colors), stats=stats)
    if not is_valid_coloring(D, c, L):  # would mean a bug, not bad luck
        raise AssertionError("procedure produced an invalid coloring")
    return c


# --- small digraphs: complete multipartite transfer -------------------------


def ohba_transfer(D: Digraph, P: AcyclicPartition, L: ListAssignment) -> Coloring:
    """List-color the complete multipartite graph on P's classes and reuse the coloring.

    Vertices in different classes get different colors, so a monochromatic
    cycle would have to stay inside one class, and the classes are acyclic.
    With |V| <= 2|P| + 1 the multipartite graph is |P|-choosable, so failure
    means the precondition was violated.
    """
    P.validate(D)
    k = len(P)
    if L.k < k:
        raise InsufficientLists(f"lists of size {L.k} below the {k} classes of the partition")
    part = P.class_of()
    order = sorted(range(D.n), key=lambda v: (len(L.lists[v]), v))
    colors: list = [None] * D.n
    # color -> the class currently using it (a color may repeat inside one class)
    owner: dict[int, int] = {}
    users: dict[int, int] = {}

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(L.lists[v]):
            if owner.get(c, part[v]) != part[v]:
                continue
            colors[v] = c
            owner[c] = part[v]
            users[c] = users.get(c, 0) + 1
            if rec(i + 1):
                return True
            users[c] -= 1
            if not users[c]:
                del owner[c], users[c]
        colors[v] = None
        return False

    if not rec(0):
        raise TransferFailed("the multipartite graph has no proper list coloring")
    return _certified(D, colors, L, {"classes": k})


# --- random color splits ------------------------------------------------------


def _split_color(D, L, part_of, parts, seed, max_retries, what):
    """Split the color universe into ``parts`` uniform random groups until every
    vertex finds a list color in the group of its part."""
    rng = as_rng(seed)
    universe = L.universe()
    for attempt in range(1, max_retries + 1):
        group = dict(zip(universe, rng.below(parts, len(universe)).tolist()))
        colors = []
        for v in range(D.n):
            mine = [c for c in L.lists[v] if group[c] == part_of[v]]
            if not mine:
                break
            colors.append(min(mine))
        else:
            return _certified(D, colors, L, {"retries": attempt - 1, "trials": attempt})
    raise RetriesExhausted(f"{what}: no good split in {max_retries} trials")


def bipartite_random_split_color(
    D: Digraph, B: Bipartition, L: ListAssignment, seed, max_retries: int = 64
) -> Coloring:
    """Colors go to side 1 or side 2 by fair coin; each vertex takes its smallest
    color on its own side.  No color is used on both sides and no arc stays
    within a side, so every color class is independent."""
    B.validate(D)
    part_of = [B.side_of(v) for v in range(D.n)]
    return _split_color(D, L, part_of, 2, seed, max_retries, "bipartite split")


def chi_lnn_split_color(
    D: Digraph, P: AcyclicPartition, L: ListAssignment, seed, max_retries: int = 64
) -> Coloring:
    """As the bipartite split, with one color group per acyclic class of P."""
    P.validate(D)
    part = P.class_of()
    part_of = [part[v] for v in range(D.n)]
    return _split_color(D, L, part_of, len(P), seed, max_retries, "chi ln n split")


def bipartite_split_list_size(n: int) -> int:
    return int(math.floor(math.log2(n))) + 2


def chi_lnn_list_size(chi: int, n: int) -> int:
    return max(1, math.ceil(chi * math.log(n))) if n > 1 else 1


# --- bipartite lower-bound instance ------------------------------------------


@dataclass(frozen=True)
class LowerBoundInstance:
    digraph: Digraph
    bipartition: Bipartition
    lists: ListAssignment
    k: int
    side_size: int


def lower_bound_side_size(k: int, max_iter: int = 100) -> int:
    """Smallest fixed point of n = 3k C(2k-1, k) log2 n, rounded up to a multiple of C(2k-1, k)."""
    b = math.comb(2 * k - 1, k)
    n = b
    for _ in range(max_iter):
        target = 3 * k * b * math.log2(n)
        nxt = max(b, math.ceil(target / b) * b)
        if nxt == n:
            return n
        n = nxt
    raise RuntimeError("side size iteration did not stabilise")


def build_lower_bound_instance(k: int, seed, side_size: int | None = None) -> LowerBoundInstance:
    """Random orientation of K_{n,n} with every k-subset of {1..2k-1} on n / C(2k-1, k)
    vertices of each side (consecutive blocks, in lexicographic subset order)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    b = math.comb(2 * k - 1, k)
    n = lower_bound_side_size(k) if side_size is None else int(side_size)
    if n < b or n % b:
        raise ValueError(f"side size must be a positive multiple of C(2k-1, k) = {b}")
    D, B = gen_random_complete_bipartite(n, seed)
    subsets = [frozenset(s) for s in combinations(range(1, 2 * k), k)]
    per = n // b
    side_lists = [subsets[i // per] for i in range(n)]
    return LowerBoundInstance(D, B, ListAssignment(tuple(side_lists + side_lists)), k, n)


@dataclass
class MajorColorReport:
    threshold: float
    paper_threshold: float
    pigeonhole_threshold: int
    major: tuple[tuple[int, ...], tuple[int, ...]]
    common: tuple[int, ...]
    enough_majors: bool
    common_exists: bool
    # common major color -> (side-1 class, side-2 class, induces a directed cycle?)
    classes: dict = field(default_factory=dict)

    @property
    def any_cycle(self) -> bool:
        return any(cyc for _, _, cyc in self.classes.values())


def major_color_analysis(inst: LowerBoundInstance, c: Coloring) -> MajorColorReport:
    """Check the major-color pigeonhole argument on a list-respecting coloring.

    A color is major on a side when it covers at least
    min(3 log2 n, ceil(n / (C(2k-1, k) k))) vertices there (clamped to >= 1).
    The second term is what the pigeonhole step actually needs; the two
    agree at the side size the construction prescribes, and the second keeps
    the argument sound on reduced instances.
    """
    D, L, k, n = inst.digraph, inst.lists, inst.k, inst.side_size
    if c.n != D.n or not c.is_total():
        raise InvalidColoring("coloring must be total on the instance")
    if any(col not in L.lists[v] for v, col in enumerate(c.colors)):
        raise InvalidColoring("coloring does not respect the lists")
    b = math.comb(2 * k - 1, k)
    paper = 3 * math.log2(n)
    pigeon = math.ceil(n / (b * k))
    threshold = max(1.0, min(paper, pigeon))
    sides = (sorted(inst.bipartition.side1), sorted(inst.bipartition.side2))
    counts = []
    for side in sides:
        cnt: dict[int, int] = {}
        for v in side:
            cnt[c.colors[v]] = cnt.get(c.colors[v], 0) + 1
        counts.append(cnt)
    major = tuple(tuple(sorted(col for col, m in cnt.items() if m >= threshold)) for cnt in counts)
    common = tuple(sorted(set(major[0]) & set(major[1])))
    classes = {}
    for col in common:
        v1 = tuple(v for v in sides[0] if c.colors[v] == col)
        v2 = tuple(v for v in sides[1] if c.colors[v] == col)
        classes[col] = (v1, v2, not is_acyclic(D, v1 + v2))
    return MajorColorReport(
        threshold=threshold,
        paper_threshold=paper,
        pigeonhole_threshold=pigeon,
        major=major,
        common=common,
        enough_majors=all(len(m) >= k for m in major),
        common_exists=bool(common),
        classes=classes,
    )


def random_list_coloring(L: ListAssignment, seed) -> Coloring:
    """Uniform random list-respecting coloring (ignores cycles)."""
    rng = as_rng(seed)
    return Coloring(tuple(rng.choice(sorted(lst)) for lst in L.lists))


# --- tournaments ---------------------------------------------------------------


def tournament_list_size(n: int, eps: float = 0.3) -> int:
    if n < 2:
        return 1
    return math.ceil(n / math.log2(n) * (1 + eps))


def phase_one_threshold(n: int) -> int:
    """floor(n / (log2 n)^2), clamped to >= 2: phase 1 exists to share a color
    across several vertices, a single candidate is left to the matching."""
    if n <= 4:
        return 2
    return max(2, math.floor(n / math.log2(n) ** 2))


def tournament_list_color(T: Digraph, L: ListAssignment, seed, eps: float = 0.3) -> Coloring:
    """Phase 1 peels acyclic sets sharing a popular color; phase 2 matches the rest.

    Phase 1: while some color sits on the lists of at least
    m = floor(n / (log2 n)^2) uncolored vertices, run the Erdos-Moser finder
    on those vertices, give the whole acyclic set that color and delete the
    color everywhere.  The most popular color is taken, ties broken by the
    seed.  Phase 2: a maximum matching between the uncolored vertices and
    the surviving colors; each of those colors is used once.

    ``eps`` only documents the list size the guarantee needs
    (``tournament_list_size``); lists are taken as given.
    """
    if not T.is_tournament():
        raise NotATournament("input is not a tournament")
    rng = as_rng(seed)
    n = T.n
    m = phase_one_threshold(n)
    lists = [set(lst) for lst in L.lists]
    colors: list = [None] * n
    uncolored = set(range(n))
    steps = []
    while uncolored:
        holders: dict[int, list[int]] = {}
        for v in sorted(uncolored):
            for col in lists[v]:
                holders.setdefault(col, []).append(v)
        if not holders:
            break
        top = max(len(h) for h in holders.values())
        if top < m:
            break
        x = rng.choice(sorted(col for col, h in holders.items() if len(h) == top))
        S = holders[x]
        A = find_transitive_subtournament(T, S)
        for v in A.vertices:
            colors[v] = x
            uncolored.discard(v)
        for lst in lists:
            lst.discard(x)
        steps.append({"color": x, "candidates": len(S), "size": len(A), "guarantee": erdos_moser_bound(len(S))})
    R = sorted(uncolored)
    if R:
        remaining = sorted(set().union(*(lists[v] for v in R)))
        col_index = {col: j for j, col in enumerate(remaining)}
        rows, cols = [], []
        for i, v in enumerate(R):
            for col in lists[v]:
                rows.append(i)
                cols.append(col_index[col])
        graph = csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(R), max(1, len(remaining)))
        )
        match = maximum_bipartite_matching(graph, perm_type="column")
        if (match < 0).any():
            raise HallViolation(f"{int((match < 0).sum())} of {len(R)} leftover vertices unmatched")
        for i, v in enumerate(R):
            colors[v] = remaining[int(match[i])]
    stats = {"phase1_steps": len(steps), "phase1": steps, "phase2_vertices": len(R), "m": m}
    return _certified(T, colors, L, stats)


# --- digon-free digraphs: random partial coloring + greedy extension ---------


C1 = 1 - math.exp(-16) / 3


@dataclass(frozen=True)
class ExtensionWitness:
    """Per-vertex counts behind the extension argument (diagnostics only)."""

    y: tuple[int, ...]
    x: tuple[int, ...]
    vertex_type: tuple[int, ...]  # 1, 2, or 3 for both, 0 for neither


def uncolor_monochromatic_paths(D: Digraph, colors) -> list:
    """Drop the color of every vertex on a monochromatic directed path with two arcs."""
    n = D.n
    same_out = [[w for w in D.out_neighbors(v) if colors[v] is not None and colors[w] == colors[v]] for v in range(n)]
    same_in = [[w for w in D.in_neighbors(v) if colors[v] is not None and colors[w] == colors[v]] for v in range(n)]
    middle = [bool(same_out[v]) and bool(same_in[v]) for v in range(n)]
    out = list(colors)
    for v in range(n):
        if middle[v] or any(middle[w] for w in same_out[v]) or any(middle[w] for w in same_in[v]):
            out[v] = None
    return out


def extension_witness(D: Digraph, L: ListAssignment, initial, final) -> ExtensionWitness:
    """Y_v: colors outside L(v) assigned to some out-neighbour and kept by all of them;
    X_v: colors of L(v) assigned to two or more out-neighbours and kept by all of them."""
    n = D.n
    k = L.k
    dt = degree_stats(D).delta_tilde
    need_nb = math.floor(C1 * dt / 2)
    need_cols = math.floor(k / 2)
    ys, xs, types = [], [], []
    for v in range(n):
        Lv = L.lists[v]
        assigned: dict[int, int] = {}
        kept: dict[int, bool] = {}
        t1 = t2 = 0
        for w in D.out_neighbors(v):
            col = initial[w]
            assigned[col] = assigned.get(col, 0) + 1
            kept[col] = kept.get(col, True) and final[w] == col
            inside = len(L.lists[w] & Lv)
            t1 += len(L.lists[w]) - inside >= need_cols
            t2 += inside >= need_cols
        ys.append(sum(1 for col, a in assigned.items() if col not in Lv and kept[col]))
        xs.append(sum(1 for col, a in assigned.items() if col in Lv and a >= 2 and kept[col]))
        types.append((1 if t1 >= need_nb else 0) | (2 if t2 >= need_nb else 0))
    return ExtensionWitness(tuple(ys), tuple(xs), tuple(types))


def extension_deficits(D: Digraph, L: ListAssignment, partial) -> list[int]:
    """Uncolored vertices whose free list colors do not exceed their uncolored out-neighbours."""
    bad = []
    for v in range(D.n):
        if partial[v] is not None:
            continue
        used = {partial[w] for w in D.out_neighbors(v) if partial[w] is not None}
        free = len(L.lists[v] - used)
        waiting = sum(1 for w in D.out_neighbors(v) if partial[w] is None)
        if free <= waiting:
            bad.append(v)
    return bad


def greedy_extend(D: Digraph, L: ListAssignment, partial: Coloring) -> Coloring:
    """Color the uncolored vertices in id order, each avoiding every color already
    present on its out-neighbourhood.

    On a monochromatic cycle through newly colored vertices, the last one
    colored would have seen its cycle successor's color, so none exists.
    """
    if partial.n != D.n:
        raise ValueError("partial coloring size does not match the digraph")
    if not is_proper_partial(D, partial, L):
        raise InvalidColoring("partial coloring already has a monochromatic cycle or off-list color")
    colors = list(partial.colors)
    extended = 0
    for v in range(D.n):
        if colors[v] is not None:
            continue
        used = {colors[w] for w in D.out_neighbors(v) if colors[w] is not None}
        free = sorted(L.lists[v] - used)
        if not free:
            raise ExtensionFailed(f"vertex {v} has no color left")
        colors[v] = free[0]
        extended += 1
    return _certified(D, colors, L, {"extended": extended})


def _neighbourhood(D: Digraph, sources, radius: int) -> set[int]:
    seen = set(sources)
    frontier = set(sources)
    for _ in range(radius):
        nxt = set()
        for v in frontier:
            nxt.update(D.out_neighbors(v))
            nxt.update(D.in_neighbors(v))
        frontier = nxt - seen
        seen |= frontier
    return seen


def lll_digonfree_color(
    D: Digraph,
    L: ListAssignment,
    seed,
    max_rounds: int = 100,
    radius: int = 3,
    on_round=None,
) -> Coloring:
    """Random partial coloring repaired by local resampling, then greedy extension.

    Per vertex the random state is an initial list color and a fair coin.
    The partial coloring keeps a vertex's color unless it lies on a
    monochromatic two-arc path or its coin says drop.  Digon-free means every
    cycle has a two-arc path, so the partial coloring is already proper.
    A vertex is bad when extension could get stuck there; the state within
    ``radius`` of bad vertices is redrawn until none are left.

    ``on_round(round, initial, after_paths, partial)`` is called after every
    round, mainly for tests.
    """
    if not D.is_digon_free():
        raise ValueError("digraph has a digon")
    rng = as_rng(seed)
    n = D.n
    sorted_lists = [sorted(lst) for lst in L.lists]
    initial: list = [None] * n
    keep = [False] * n

    def draw(vertices):
        for v in sorted(vertices):
            initial[v] = sorted_lists[v][rng.below(len(sorted_lists[v]))]
            keep[v] = rng.coin()

    draw(range(n))
    resampled = 0
    for rnd in range(1, max_rounds + 1):
        after_paths = uncolor_monochromatic_paths(D, initial)
        partial = [c if keep[v] else None for v, c in enumerate(after_paths)]
        if on_round is not None:
            on_round(rnd, tuple(initial), tuple(after_paths), tuple(partial))
        bad = extension_deficits(D, L, partial)
        if not bad:
            witness = extension_witness(D, L, initial, partial)
            result = greedy_extend(D, L, Coloring(tuple(partial)))
            result.stats.update(
                rounds=rnd,
                resampled_vertices=resampled,
                kept=sum(c is not None for c in partial),
                type1=sum(1 for t in witness.vertex_type if t & 1),
                type2=sum(1 for t in witness.vertex_type if t & 2),
                mean_y=sum(witness.y) / n if n else 0.0,
                mean_x=sum(witness.x) / n if n else 0.0,
            )
            return result
        region = _neighbourhood(D, bad, radius)
        resampled += len(region)
        draw(region)
    raise RoundsExhausted(f"extension still blocked after {max_rounds} rounds")
