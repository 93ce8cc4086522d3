"""
The quantum trace as a state sum
================================

A simple closed curve on a triangulated marked surface determines a
state sum: every admissible +-1 coloring C of its crossed edges
contributes one normalized monomial x^(CH) on the skein side and y^C on
the shear side.  All coefficients are exactly 1, the skein exponents are
even, and the shear-to-skein map psi carries one side to the other.

An independent oracle recomputes the skein side by resolving the curve
against the union of crossed edges, one arc per triangle, and dividing
by the edge monomial; it must agree term for term.
"""

from qskein import ShearSkein, enumerate_colorings, oracle_resolution, trace_simple
from qskein.library import annulus_core

A, core = annulus_core()
bundle = ShearSkein(A)

print("curve:", core)
print("colorings:")
for C in enumerate_colorings(core):
    print("   ", C)

res = trace_simple(core, A, bundle)
print("\nskein side:", res.skein_side)
print("shear side:", res.shear_side)
print("unit coefficients:", res.skein_side.has_unit_coefficients())
print("psi(shear) == skein:", bundle.psi(res.shear_side) == res.skein_side)

orc = oracle_resolution(core, A, bundle)
print("resolution oracle agrees:", orc == res.skein_side)

# at q = 1 the skein side becomes the classical trace of the annulus
# core in Penner-type coordinates: (d1^2 + d2^2 + b1 b2) / (d1 d2)
print("\nterm exponents (halved):")
for k in sorted(res.skein_side.terms):
    print("   ", {lab: v // 2 for lab, v in zip(bundle.x.labels, k) if v})
