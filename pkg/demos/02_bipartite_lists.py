"""Bipartite digraphs: cheap random splits, and instances where 2 lists are not enough.

Run:  python demos/02_bipartite_lists.py
"""
import math

from dicolor import (
    ListAssignment,
    bipartite_random_split_color,
    build_lower_bound_instance,
    gen_random_complete_bipartite,
    is_L_colorable,
    is_valid_coloring,
    major_color_analysis,
)
from dicolor.procedures import bipartite_split_list_size, lower_bound_side_size, random_list_coloring
from dicolor.rng import Rng

# Upper side: floor(log2 n) + 2 colors per vertex always suffice.  Each color
# goes to one side by a fair coin; a trial works when every vertex keeps a
# color on its own side.
n = 64
k = bipartite_split_list_size(n)
D, B = gen_random_complete_bipartite(n, 1)
rng = Rng(1, 1)
L = ListAssignment(tuple(frozenset(rng.sample(range(1, 41), k)) for _ in range(2 * n)))
c = bipartite_random_split_color(D, B, L, seed=2)
print(f"K_{{{n},{n}}} random orientation, {k}-lists from 40 colors:",
      "valid" if is_valid_coloring(D, c, L) else "INVALID", c.stats)

# Lower side: every 2-subset of {1,2,3} spread evenly over both sides of a
# random orientation of K_{n,n}.  The full construction asks for n = 126.
print("side size of the full construction for k=2:", lower_bound_side_size(2))

# On reduced instances the exact solver decides colorability.  Small sides
# are always colorable; past roughly 18 vertices per side almost none are.
for side in (12, 15, 18, 21, 24):
    trials = 30
    stuck = sum(
        is_L_colorable(inst.digraph, inst.lists) is None
        for inst in (build_lower_bound_instance(2, (side, t), side) for t in range(trials))
    )
    print(f"side {side:2d}: {stuck:2d}/{trials} instances have chi <= 2 but are not 2-list-colorable")

# The pigeonhole step: any list-respecting coloring has a color that is
# "major" on both sides, and its two classes usually span a directed cycle.
inst = build_lower_bound_instance(2, 0, 12)
rep = major_color_analysis(inst, random_list_coloring(inst.lists, 0))
print("threshold", rep.threshold, "(3 log2 n =", round(3 * math.log2(12), 2), ")",
      "majors", rep.major, "common", rep.common, "cycle", rep.any_cycle)
