import math
from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dicolor.digraph import (
    AcyclicPartition,
    Bipartition,
    Coloring,
    Digraph,
    Graph,
    ListAssignment,
    bidirect,
    is_acyclic,
    is_valid_coloring,
)
from dicolor.errors import (
    ExtensionFailed,
    HallViolation,
    InsufficientLists,
    InvalidColoring,
    InvalidPartition,
    NotATournament,
    RetriesExhausted,
    RoundsExhausted,
    TransferFailed,
)
from dicolor.exact import dichromatic_number, is_L_colorable
from dicolor.generators import gen_random_complete_bipartite, gen_random_digraph, gen_random_tournament
from dicolor.procedures import (
    C1,
    bipartite_random_split_color,
    bipartite_split_list_size,
    build_lower_bound_instance,
    chi_lnn_list_size,
    chi_lnn_split_color,
    extension_deficits,
    extension_witness,
    greedy_extend,
    lll_digonfree_color,
    lower_bound_side_size,
    major_color_analysis,
    ohba_transfer,
    phase_one_threshold,
    random_list_coloring,
    tournament_list_color,
    tournament_list_size,
    uncolor_monochromatic_paths,
)
from dicolor.rng import Rng

from test_digraph import digraphs

C3 = Digraph(3, [(0, 1), (1, 2), (2, 0)])
K3 = bidirect(Graph(3, [(0, 1), (1, 2), (0, 2)]))
C5 = bidirect(Graph(5, [(i, (i + 1) % 5) for i in range(5)]))


def random_lists(rng, n, k, pool):
    return ListAssignment(tuple(frozenset(rng.sample(range(1, pool + 1), k)) for _ in range(n)))


# --- multipartite transfer ---------------------------------------------------------


def test_ohba_examples():
    path = Digraph(3, [(0, 1), (1, 2)])
    L = ListAssignment(({4}, {5}, {6}))
    assert ohba_transfer(path, AcyclicPartition(((0, 1, 2),)), L) == Coloring((4, 5, 6))
    P = AcyclicPartition(((0,), (1,), (2,)))
    c = ohba_transfer(K3, P, ListAssignment.uniform(3, {1, 2, 3}))
    assert sorted(c.colors) == [1, 2, 3]


def test_ohba_bidirected_c5():
    P = dichromatic_number(C5).certificate
    assert len(P) == 3
    for seed in range(200):
        L = random_lists(Rng(seed), 5, 3, 6)
        assert is_valid_coloring(C5, ohba_transfer(C5, P, L), L)


def test_ohba_errors():
    P = AcyclicPartition(((0,), (1,), (2,)))
    with pytest.raises(InsufficientLists):
        ohba_transfer(K3, P, ListAssignment.uniform(3, {1, 2}))
    with pytest.raises(InvalidPartition):
        ohba_transfer(K3, AcyclicPartition(((0, 1), (2,))), ListAssignment.uniform(3, {1, 2}))
    # outside the regime the multipartite graph can fail: K_{3,3}-style lists on 2 classes of 3
    D = Digraph(6, [])
    P = AcyclicPartition(((0, 1, 2), (3, 4, 5)))
    bad = ListAssignment(({1, 2}, {1, 3}, {2, 3}, {1, 2}, {1, 3}, {2, 3}))
    with pytest.raises(TransferFailed):
        ohba_transfer(D, P, bad)


# --- random splits ------------------------------------------------------------------


def test_bipartite_split_trivial():
    D = Digraph(2, [(0, 1)])
    B = Bipartition(frozenset({0}), frozenset({1}))
    c = bipartite_random_split_color(D, B, ListAssignment.uniform(2, {1, 2}), 0)
    assert c.colors[0] != c.colors[1]


def test_bipartite_split_sixty_four_per_side():
    n = 64
    k = bipartite_split_list_size(n)
    assert k == 8
    for seed in range(500):
        D, B = gen_random_complete_bipartite(n, (seed, 0))
        L = random_lists(Rng(seed, 1), 2 * n, k, 40)
        c = bipartite_random_split_color(D, B, L, (seed, 2), max_retries=64)
        assert is_valid_coloring(D, c, L)
        assert c.stats["retries"] == c.stats["trials"] - 1 < 64
        used = [{c.colors[v] for v in side} for side in (B.side1, B.side2)]
        assert not used[0] & used[1]


def test_bipartite_split_identical_lists_success_rate():
    # with one shared list of size k a trial succeeds iff both halves of the list are nonempty
    k, runs = 4, 4000
    D, B = gen_random_complete_bipartite(3, 0)
    L = ListAssignment.uniform(6, range(1, k + 1))
    trials = sum(bipartite_random_split_color(D, B, L, s).stats["trials"] for s in range(runs))
    rate = runs / trials
    expected = 1 - 2 * 2.0 ** -k
    assert abs(rate - expected) < 3 * math.sqrt(expected * (1 - expected) / trials) + 0.01


def test_bipartite_split_errors():
    D, B = gen_random_complete_bipartite(3, 0)
    L = ListAssignment.uniform(6, {1})
    with pytest.raises(RetriesExhausted):
        bipartite_random_split_color(D, B, L, 0, max_retries=5)
    with pytest.raises(InvalidPartition):
        bipartite_random_split_color(C3, Bipartition(frozenset({0}), frozenset({1, 2})), L, 0)


def test_chi_split_examples():
    D = Digraph(4, [(0, 1), (1, 2)])
    c = chi_lnn_split_color(D, AcyclicPartition(((0, 1, 2, 3),)), ListAssignment.uniform(4, {3, 9}), 0)
    assert c.stats["trials"] == 1
    k = chi_lnn_list_size(3, 3)
    assert k == 4
    P = AcyclicPartition(((0,), (1,), (2,)))
    for seed in range(500):
        L = random_lists(Rng(seed), 3, k, 12)
        c = chi_lnn_split_color(K3, P, L, seed, max_retries=64)
        assert is_valid_coloring(K3, c, L)


def test_chi_split_with_two_classes_matches_bipartite_split():
    D, B = gen_random_complete_bipartite(5, 3)
    P = AcyclicPartition((tuple(sorted(B.side1)), tuple(sorted(B.side2))))
    for seed in range(30):
        L = random_lists(Rng(seed), 10, 5, 12)
        assert chi_lnn_split_color(D, P, L, seed) == bipartite_random_split_color(D, B, L, seed)


# --- lower-bound instance --------------------------------------------------------------


def test_lower_bound_side_size_is_a_fixed_point():
    n = lower_bound_side_size(2)
    assert n == 126 and n % 3 == 0
    assert math.ceil(3 * 2 * 3 * math.log2(n) / 3) * 3 == n
    assert lower_bound_side_size(3) % 10 == 0


@pytest.mark.parametrize("k,side", [(2, 12), (2, 3), (3, 10)])
def test_lower_bound_lists_are_uniform(k, side):
    inst = build_lower_bound_instance(k, 5, side)
    b = math.comb(2 * k - 1, k)
    subsets = {frozenset(s) for s in combinations(range(1, 2 * k), k)}
    assert len(subsets) == b
    for side_set in (inst.bipartition.side1, inst.bipartition.side2):
        counts = Counter(inst.lists[v] for v in side_set)
        assert set(counts) == subsets and set(counts.values()) == {side // b}
    assert inst.lists.k == k and all(len(l) == k for l in inst.lists.lists)
    inst.bipartition.validate(inst.digraph)
    assert inst.digraph.num_arcs == side * side


def test_lower_bound_full_size_default():
    inst = build_lower_bound_instance(2, 0)
    assert inst.side_size == 126 and inst.digraph.n == 252


def test_lower_bound_errors():
    with pytest.raises(ValueError):
        build_lower_bound_instance(1, 0, 3)
    with pytest.raises(ValueError):
        build_lower_bound_instance(2, 0, 10)


def test_lower_bound_gap_appears_at_larger_sides():
    # at side 24 the reduced instances are already non-colorable: chi <= 2 < 3 <= chi_l
    inst = build_lower_bound_instance(2, 0, 24)
    assert is_L_colorable(inst.digraph, inst.lists) is None


def test_major_colors_pigeonhole():
    for seed in range(50):
        inst = build_lower_bound_instance(2, seed, 12)
        rep = major_color_analysis(inst, random_list_coloring(inst.lists, seed))
        assert rep.enough_majors and rep.common_exists
        assert rep.threshold == max(1.0, min(3 * math.log2(12), math.ceil(12 / 6)))
        for col, (v1, v2, cyc) in rep.classes.items():
            assert cyc == (not is_acyclic(inst.digraph, v1 + v2))


def test_major_colors_all_major_when_threshold_is_small():
    inst = build_lower_bound_instance(2, 1, 3)
    c = random_list_coloring(inst.lists, 2)
    rep = major_color_analysis(inst, c)
    assert rep.threshold == 1.0
    for side, majors in zip((inst.bipartition.side1, inst.bipartition.side2), rep.major):
        assert set(majors) == {c.colors[v] for v in side}


def test_major_colors_reject_bad_colorings():
    inst = build_lower_bound_instance(2, 0, 3)
    with pytest.raises(InvalidColoring):
        major_color_analysis(inst, Coloring.empty(6))
    with pytest.raises(InvalidColoring):
        major_color_analysis(inst, Coloring((9,) * 6))


# --- tournaments ------------------------------------------------------------------------


def test_tournament_transitive_single_phase():
    n = 20
    T = Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    L = ListAssignment(tuple(frozenset({1, v + 2}) for v in range(n)))
    c = tournament_list_color(T, L, 0)
    assert c.stats["phase1_steps"] == 1 and set(c.colors) == {1}


def test_tournament_three_cycle_phase_two():
    c = tournament_list_color(C3, ListAssignment(({1}, {2}, {3})), 0)
    assert c.colors == (1, 2, 3) and c.stats["phase2_vertices"] == 3


def test_tournament_256_identical_lists():
    n = 256
    k = tournament_list_size(n, 0.3)
    assert k == math.ceil(32 * 1.3)
    L = ListAssignment.uniform(n, range(1, k + 1))
    m = phase_one_threshold(n)
    for seed in range(50):
        T = gen_random_tournament(n, seed)
        c = tournament_list_color(T, L, seed)
        assert is_valid_coloring(T, c, L)
        for step in c.stats["phase1"]:
            assert step["candidates"] >= m
            assert step["size"] >= step["guarantee"] >= math.floor(math.log2(m)) + 1


def test_tournament_random_lists():
    n = 128
    k = tournament_list_size(n)
    for seed in range(20):
        T = gen_random_tournament(n, seed)
        L = random_lists(Rng(seed), n, k, 2 * k)
        assert is_valid_coloring(T, tournament_list_color(T, L, seed), L)


def test_tournament_errors():
    with pytest.raises(NotATournament):
        tournament_list_color(Digraph(3, [(0, 1)]), ListAssignment.uniform(3, {1}), 0)
    with pytest.raises(HallViolation):
        tournament_list_color(C3, ListAssignment(({1}, {1}, {1})), 0)


def test_phase_one_threshold_clamps():
    assert [phase_one_threshold(n) for n in (1, 2, 4, 8, 64)] == [2, 2, 2, 2, 2]
    assert phase_one_threshold(1024) == 10


# --- digon-free: random partial coloring and extension ---------------------------------------


def test_uncolor_monochromatic_paths():
    path = Digraph(4, [(0, 1), (1, 2), (2, 3)])
    assert uncolor_monochromatic_paths(path, [1, 1, 2, 2]) == [1, 1, 2, 2]
    assert uncolor_monochromatic_paths(path, [1, 1, 1, 2]) == [None, None, None, 2]
    assert uncolor_monochromatic_paths(C3, [5, 5, 5]) == [None, None, None]


def monochromatic_two_paths(D, colors):
    return [
        (u, v, w)
        for v in range(D.n)
        for u in D.in_neighbors(v)
        for w in D.out_neighbors(v)
        if colors[v] is not None and colors[u] == colors[v] == colors[w]
    ]


@given(digraphs(max_n=9), st.integers(0, 2**16))
def test_uncoloring_removes_every_two_path(D, seed):
    rng = Rng(seed)
    colors = [rng.below(2) for _ in range(D.n)]
    after = uncolor_monochromatic_paths(D, colors)
    assert not monochromatic_two_paths(D, after)
    on_paths = {x for path in monochromatic_two_paths(D, colors) for x in path}
    assert {v for v in range(D.n) if after[v] is None} == on_paths


def test_greedy_extend_examples():
    c = Coloring((1, 2, 1))
    assert greedy_extend(C3, ListAssignment.uniform(3, {1, 2}), c) == c
    empty = Digraph(3, [])
    assert greedy_extend(empty, ListAssignment(({4}, {5}, {6})), Coloring.empty(3)).colors == (4, 5, 6)
    path = Digraph(3, [(0, 1), (1, 2)])
    L = ListAssignment.uniform(3, {1, 2})
    out = greedy_extend(path, L, Coloring.empty(3))
    assert is_valid_coloring(path, out, L)


def test_greedy_extend_errors():
    with pytest.raises(ExtensionFailed):
        greedy_extend(C3, ListAssignment(({1}, {1}, {1})), Coloring((None, 1, None)))
    with pytest.raises(InvalidColoring):
        greedy_extend(C3, ListAssignment.uniform(3, {1}), Coloring((1, 1, 1)))


@given(digraphs(max_n=9), st.integers(0, 2**16))
def test_greedy_extend_succeeds_when_no_deficit(D, seed):
    rng = Rng(seed)
    L = random_lists(rng, D.n, 3, 5)
    partial = [None] * D.n
    if not extension_deficits(D, L, partial):
        assert is_valid_coloring(D, greedy_extend(D, L, Coloring(tuple(partial))), L)


def test_lll_acyclic_digraph():
    D = Digraph(5, [(0, 1), (1, 2), (0, 3), (3, 4)])
    for seed in range(20):
        L = random_lists(Rng(seed), 5, 2, 4)
        assert is_valid_coloring(D, lll_digonfree_color(D, L, seed), L)


def test_lll_three_cycle():
    for seed in range(200):
        L = random_lists(Rng(seed), 3, 2, 4)
        c = lll_digonfree_color(C3, L, seed, max_rounds=100)
        assert is_valid_coloring(C3, c, L)
        assert is_L_colorable(C3, L) is not None


def test_lll_random_sparse_digraph():
    completed = 0
    for seed in range(20):
        D = gen_random_digraph(200, 0.05, seed)
        from dicolor.digraph import degree_stats

        k = math.ceil(degree_stats(D).delta_tilde)
        L = random_lists(Rng(seed, 1), 200, k, 3 * k)
        try:
            c = lll_digonfree_color(D, L, seed)
        except RoundsExhausted:
            continue
        completed += 1
        assert is_valid_coloring(D, c, L)
        assert c.stats["rounds"] >= 1
    assert completed > 0


def test_lll_round_callback_sees_path_free_partial_colorings():
    D = gen_random_digraph(60, 0.08, 3)
    L = random_lists(Rng(1), 60, 6, 8)
    seen = []

    def on_round(rnd, initial, after_paths, partial):
        seen.append(rnd)
        assert not monochromatic_two_paths(D, after_paths)
        assert all(p is None or p == a for p, a in zip(partial, after_paths))

    try:
        lll_digonfree_color(D, L, 0, on_round=on_round)
    except RoundsExhausted:
        pass
    assert seen and seen == list(range(1, len(seen) + 1))


def test_lll_errors():
    with pytest.raises(ValueError):
        lll_digonfree_color(Digraph(2, [(0, 1), (1, 0)]), ListAssignment.uniform(2, {1, 2}), 0)
    with pytest.raises(RoundsExhausted):
        lll_digonfree_color(C3, ListAssignment.uniform(3, {1}), 0, max_rounds=3)


def test_extension_witness_counts():
    # star 0 -> 1, 2, 3 with out-neighbours initially colored 7, 7, 8 and all kept
    D = Digraph(4, [(0, 1), (0, 2), (0, 3)])
    L = ListAssignment(({7, 9}, {7, 1}, {7, 2}, {8, 3}))
    initial = [9, 7, 7, 8]
    w = extension_witness(D, L, initial, initial)
    assert w.x[0] == 1  # color 7 is in L(0) and on two out-neighbours
    assert w.y[0] == 1  # color 8 is outside L(0)
    assert w.x[1] == w.y[1] == 0
    dropped = [9, 7, None, 8]
    assert extension_witness(D, L, initial, dropped).x[0] == 0
    assert 0 < C1 < 1
    assert all(t in (0, 1, 2, 3) for t in w.vertex_type)
