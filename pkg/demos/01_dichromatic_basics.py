"""Dichromatic number and its list version on a few small digraphs.

Run:  python demos/01_dichromatic_basics.py
"""
from dicolor import Digraph, Graph, bidirect, dichromatic_number, is_L_colorable, list_dichromatic_number

# A directed triangle needs two colors: one class of two vertices spans a single arc.
c3 = Digraph(3, [(0, 1), (1, 2), (2, 0)])
print("directed 3-cycle      chi =", dichromatic_number(c3).value)

# Bidirecting an undirected graph turns every edge into a digon, so acyclic
# sets become independent sets and chi equals the ordinary chromatic number.
k4 = bidirect(Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]))
print("bidirected K4         chi =", dichromatic_number(k4).value)

# The quadratic-residue tournament on 7 vertices: i -> j when j - i is a nonzero square mod 7.
qr7 = Digraph(7, [(i, (i + d) % 7) for i in range(7) for d in (1, 2, 4)])
res = dichromatic_number(qr7)
print("QR7                   chi =", res.value, " partition:", res.certificate.classes)

# Lists can cost more than colors.  Bidirected K_{3,3} is 2-colorable, but
# some assignment of 2-lists (the classic one is {1,2}, {1,3}, {2,3} on each
# side) admits no coloring at all.
k33 = bidirect(Graph(6, [(i, j) for i in range(3) for j in range(3, 6)]))
chil = list_dichromatic_number(k33)
print("bidirected K_{3,3}    chi =", dichromatic_number(k33).value, " chi_l =", chil.value)
print("  a failing 2-list assignment:", [sorted(l) for l in chil.certificate.lists])
print("  colorable with it?", is_L_colorable(k33, chil.certificate))

# With few vertices relative to chi the two numbers coincide.
for D, name in [(c3, "3-cycle"), (qr7, "QR7")]:
    print(f"{name:8s} n={D.n} chi={dichromatic_number(D).value} chi_l={list_dichromatic_number(D).value}")
