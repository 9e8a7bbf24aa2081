import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import Delaunay

from dicolor.digraph import Coloring, Digraph, Graph, ListAssignment, bidirect, is_valid_coloring
from dicolor.enumeration import iter_digraphs
from dicolor.errors import InsufficientLists
from dicolor.exact import (
    acyclic_k_colorable,
    canonical_assignments,
    dichromatic_number,
    failing_assignment,
    greedy_min_inout_list_color,
    is_k_choosable,
    is_L_colorable,
    list_dichromatic_number,
    min_inout_degeneracy,
)
from dicolor.generators import gen_random_digraph
from dicolor.rng import Rng

from oracles import brute_chi, brute_choosable, brute_graph_chi, brute_list_colorable, small_graphs
from test_digraph import digraphs

DIGON = Digraph(2, [(0, 1), (1, 0)])
C3 = Digraph(3, [(0, 1), (1, 2), (2, 0)])
QR7 = Digraph(7, [(i, (i + d) % 7) for i in range(7) for d in (1, 2, 4)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def test_chi_examples():
    assert dichromatic_number(Digraph(4, [(0, 1), (1, 2), (0, 3)])).value == 1
    assert dichromatic_number(bidirect(complete(4))).value == 4
    assert dichromatic_number(QR7).value == 3
    assert dichromatic_number(Digraph(0, [])).value == 0


def test_qr7_has_no_acyclic_bipartition():
    # the derived check behind chi(QR7) = 3: every 2-coloring leaves a cyclic class
    from dicolor.digraph import is_acyclic

    for bits in range(2 ** 7):
        side = [v for v in range(7) if bits >> v & 1]
        rest = [v for v in range(7) if not bits >> v & 1]
        assert not (is_acyclic(QR7, side) and is_acyclic(QR7, rest))
    assert not acyclic_k_colorable(QR7, 2) and acyclic_k_colorable(QR7, 3)


@given(digraphs(max_n=6))
def test_chi_certificate_and_oracle(D):
    res = dichromatic_number(D)
    assert len(res.certificate) == res.value
    res.certificate.validate(D)
    assert res.value == brute_chi(D.n, D.sorted_arcs())


def test_bidirected_graphs_up_to_seven_vertices():
    for n, edges in small_graphs(7):
        assert dichromatic_number(bidirect(Graph(n, edges))).value == brute_graph_chi(n, edges)


def test_L_colorable_examples():
    c = is_L_colorable(C3, ListAssignment.uniform(3, {1, 2}))
    assert c is not None and is_valid_coloring(C3, c, ListAssignment.uniform(3, {1, 2}))
    assert is_L_colorable(DIGON, ListAssignment(({1}, {1}))) is None
    assert is_L_colorable(bidirect(complete(3)), ListAssignment.uniform(3, {1, 2})) is None


@given(digraphs(max_n=6), st.data())
def test_L_colorable_matches_brute_force(D, data):
    lists = [
        data.draw(st.sets(st.integers(1, 4), min_size=1, max_size=3)) for _ in range(D.n)
    ]
    L = ListAssignment(tuple(lists))
    c = is_L_colorable(D, L)
    assert (c is not None) == brute_list_colorable(D.n, D.sorted_arcs(), lists)
    if c is not None:
        assert is_valid_coloring(D, c, L)


@given(digraphs(max_n=6), st.integers(1, 4))
def test_identical_lists_reduce_to_chi(D, k):
    colorable = is_L_colorable(D, ListAssignment.uniform(D.n, range(1, k + 1))) is not None
    assert colorable == (dichromatic_number(D).value <= k)


def test_choosability_matches_brute_force_on_small_digraphs():
    for n in (1, 2, 3):
        for D in iter_digraphs(n):
            for k in (1, 2):
                assert is_k_choosable(D, k) == brute_choosable(D.n, D.sorted_arcs(), k), (D.arcs, k)
    for D in iter_digraphs(4):
        assert is_k_choosable(D, 1) == brute_choosable(D.n, D.sorted_arcs(), 1)


def test_canonical_assignments_counts():
    # columns shared by >= 2 vertices only: {12,13,23} and {123,123}
    assert len(list(canonical_assignments(3, 2))) == 2
    assert len(list(canonical_assignments(2, 1))) == 1
    assert list(canonical_assignments(1, 1)) == []


def test_list_chi_examples():
    res = list_dichromatic_number(DIGON)
    assert res.value == 2 and res.certificate == ListAssignment(({1}, {1}))
    assert list_dichromatic_number(Digraph(3, [(0, 1), (1, 2)])).value == 1
    assert list_dichromatic_number(C3).value == 2


def test_list_chi_exceeds_chi():
    # bidirected K_{3,3}: chi = 2 but the classic lists {12,13,23} on each side fail
    K33 = bidirect(Graph(6, [(i, j) for i in range(3) for j in range(3, 6)]))
    res = list_dichromatic_number(K33)
    assert dichromatic_number(K33).value == 2 and res.value == 3
    assert res.certificate.k == 2 and is_L_colorable(K33, res.certificate) is None
    C5 = bidirect(Graph(5, [(i, (i + 1) % 5) for i in range(5)]))
    assert list_dichromatic_number(C5).value == 3


@settings(max_examples=25)
@given(digraphs(max_n=5))
def test_chi_le_chi_l_le_degeneracy_plus_one(D):
    chi = dichromatic_number(D).value
    res = list_dichromatic_number(D, chi)
    assert chi <= res.value <= min_inout_degeneracy(D).value + 1
    if res.value >= 2:
        assert res.certificate.k == res.value - 1
        assert is_L_colorable(D, res.certificate) is None


def test_failing_assignment_round_trip():
    fail = failing_assignment(C3, 1)
    assert fail is not None and is_L_colorable(C3, fail) is None
    assert failing_assignment(C3, 2) is None
    with pytest.raises(ValueError):
        failing_assignment(C3, 0)


def test_degeneracy_examples():
    assert min_inout_degeneracy(cycle(7)).value == 1
    assert min_inout_degeneracy(Digraph(4, [(0, 1), (1, 2), (0, 3), (3, 2)])).value == 0
    assert min_inout_degeneracy(Digraph(3, [(0, 1), (1, 2), (2, 0)])).order == (0, 1, 2)


def planar_orientation(points, seed):
    tri = Delaunay(points)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((min(u, v), max(u, v)))
    rng = Rng(seed)
    arcs = [(u, v) if rng.coin() else (v, u) for u, v in sorted(edges)]
    return Digraph(len(points), arcs)


def test_planar_oriented_graphs_have_small_degeneracy():
    for seed in range(20):
        pts = Rng(seed, 1).random(60).reshape(30, 2)
        D = planar_orientation(pts, seed)
        assert min_inout_degeneracy(D).value <= 2
        L = ListAssignment(tuple(frozenset(Rng(seed, 2, v).sample(range(1, 7), 3)) for v in range(D.n)))
        assert is_valid_coloring(D, greedy_min_inout_list_color(D, L), L)


def test_greedy_examples():
    assert greedy_min_inout_list_color(Digraph(1, []), ListAssignment(({7},))) == Coloring((7,))
    for seed in range(20):
        rng = Rng(seed)
        L = ListAssignment(tuple(frozenset(rng.sample(range(1, 5), 2)) for _ in range(10)))
        c = greedy_min_inout_list_color(cycle(10), L)
        assert is_valid_coloring(cycle(10), c, L)
        assert is_L_colorable(cycle(10), L) is not None
    with pytest.raises(InsufficientLists):
        greedy_min_inout_list_color(cycle(4), ListAssignment.uniform(4, {1}))


@given(digraphs(max_n=8), st.integers(0, 2**16))
def test_greedy_is_always_valid(D, seed):
    d = min_inout_degeneracy(D).value
    rng = Rng(seed)
    L = ListAssignment(tuple(frozenset(rng.sample(range(1, 2 * d + 3), d + 1)) for _ in range(D.n)))
    c = greedy_min_inout_list_color(D, L)
    assert is_valid_coloring(D, c, L)
    assert c.stats["degeneracy"] == d


def test_random_digraph_chi_against_certificate():
    for seed in range(20):
        D = gen_random_digraph(12, 0.3, seed)
        res = dichromatic_number(D)
        res.certificate.validate(D)
        assert not acyclic_k_colorable(D, res.value - 1)
