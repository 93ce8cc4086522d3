"""
Triangulated surfaces: face matrix, vertex matrix, duality
==========================================================

A triangulated marked surface carries two antisymmetric matrices: the
face matrix Q accumulates +1 for each counterclockwise-consecutive edge
pair of a triangle, and the vertex matrix P counts the angular order of
half-edges at the marked points.  Writing H for the inner-edge rows of
Q, they satisfy the exact duality

    P H^T = -4 id,     H P H^T = -4 Q_inner,     rank H = #inner edges.
"""

import numpy as np

from qskein import annulus, polygon

P5 = polygon(5)
print("pentagon:", P5)
Q, Qring, H = P5.face_submatrices()
print("edges:", P5.edges)
print("Q =\n", Q)
print("P =\n", P5.vertex_matrix())
print("H =\n", H)
print("duality report:", P5.duality_check())

print("\nP H^T =\n", P5.vertex_matrix() @ H.T)

# flips replace an inner edge by the opposite diagonal of its square
T2, fd = P5.flip("e0_2")
print("\nflip %s -> %s, square (%s, %s, %s, %s)"
      % (fd.a, fd.a_star, fd.b, fd.c, fd.d, fd.e))
print("still dual after the flip:", T2.duality_check()["ok"])

# two flips undo each other
T3, _ = T2.flip(fd.a_star, new_label=fd.a)
print("flip twice returns the triangulation:", T3.same_as(P5))

# the annulus has a self-glued flip square: flipping one of its two
# crossing arcs identifies opposite sides of the square
A = annulus()
_, f1 = A.flip("d1")
_, f2 = A.flip("d2")
print("\nannulus flip coincidences:", f1.coincidence, "and", f2.coincidence)

# the five-flip cycle on the pentagon
cur, edge = P5, "e0_2"
for step in range(5):
    cur, fd = cur.flip(edge)
    others = [e for e in cur.inner_edges if e != fd.a_star]
    edge = others[0]
print("pentagon flip cycle closes after 5 steps:", cur.same_as(P5))
