"""Digon-free digraphs: random partial coloring, local resampling, greedy extension.

Run:  python demos/04_digon_free.py
"""
import math

from dicolor import Digraph, ListAssignment, degree_stats, gen_random_digraph, is_valid_coloring, lll_digonfree_color
from dicolor.procedures import uncolor_monochromatic_paths
from dicolor.rng import Rng

D = gen_random_digraph(200, 0.05, 11)
stats = degree_stats(D)
k = math.ceil(stats.delta_tilde)
print(f"n=200, {D.num_arcs} arcs, max sqrt(d+ d-) = {stats.delta_tilde:.2f}, lists of size {k}")

rng = Rng(11, 1)
L = ListAssignment(tuple(frozenset(rng.sample(range(1, 3 * k + 1), k)) for _ in range(D.n)))

# Watch each round: after dropping vertices on monochromatic 2-arc paths,
# no monochromatic cycle can survive (the digraph has no digons).
def show(rnd, initial, after_paths, partial):
    dropped = sum(a is None for a in after_paths)
    kept = sum(p is not None for p in partial)
    print(f"  round {rnd}: {dropped} vertices on monochromatic paths, {kept} keep their color")

c = lll_digonfree_color(D, L, seed=3, on_round=show)
print("valid:", is_valid_coloring(D, c, L), {key: c.stats[key] for key in ("rounds", "extended", "kept")})

# The path-dropping step on its own
path = [1, 1, 1, 2]
print("0->1->2->3 colored", path, "->", uncolor_monochromatic_paths(Digraph(4, [(0, 1), (1, 2), (2, 3)]), path))
