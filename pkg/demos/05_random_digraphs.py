"""Acyclic sets in D(n, p) and a report written to disk.

Run:  python demos/05_random_digraphs.py [out.csv]
"""
import sys

from dicolor import exp_random_digraph

for p in (0.1, 0.25, 0.4):
    rep = exp_random_digraph(n=20, p=p, trials=50, seed=1)
    s = rep.summary
    print(f"p={p:.2f}: mean alpha {s['mean_alpha']:.2f} vs 2 ln(np)/ln(1/(1-p)) = {s['alpha_reference']:.2f}"
          f"  ratio {s['alpha_ratio']:.2f}  chi >= {s['mean_chi_lower']:.2f}  greedy uses {s['mean_greedy_colors']:.2f}")

if len(sys.argv) > 1:
    rep.write(sys.argv[1])
    print("wrote", sys.argv[1])
