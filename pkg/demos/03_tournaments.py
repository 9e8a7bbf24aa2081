"""Tournaments: transitive subtournaments and list coloring with about n / log2 n colors.

Run:  python demos/03_tournaments.py
"""
import math

from dicolor import (
    ListAssignment,
    exp_tournament_alpha,
    find_transitive_subtournament,
    gen_random_tournament,
    is_valid_coloring,
    tournament_list_color,
)
from dicolor.procedures import tournament_list_size

# Every tournament on n vertices holds a transitive one on floor(log2 n) + 1:
# keep walking into the out-neighbourhood of the vertex with most out-arcs.
for n in (8, 64, 512, 2048):
    T = gen_random_tournament(n, n)
    A = find_transitive_subtournament(T)
    print(f"n={n:5d}  found {len(A):2d}  guaranteed {int(math.log2(n)) + 1:2d}  certified {A.certifies(T)}")

# Random tournaments have no acyclic set much larger than 2 log2 n + 2,
# so they need at least n / (2 log2 n + 2) colors.
rep = exp_tournament_alpha([16], trials=100, seed=0)
row = rep.summary["per_n"]["16"]
print("n=16: mean exact alpha", row["mean_alpha"], " max", row["max_alpha"],
      " bound", row["alpha_upper_formula"], " mean chi lower bound", row["mean_chi_lower"])

# List coloring: peel acyclic sets sharing a popular color, then match the rest.
n = 256
k = tournament_list_size(n, eps=0.3)
T = gen_random_tournament(n, 7)
L = ListAssignment.uniform(n, range(1, k + 1))
c = tournament_list_color(T, L, seed=7)
print(f"n={n}, {k} colors per list: valid={is_valid_coloring(T, c, L)}",
      f"phase-1 steps={c.stats['phase1_steps']} matched={c.stats['phase2_vertices']}")
