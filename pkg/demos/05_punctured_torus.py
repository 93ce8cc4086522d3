"""
Punctured surfaces through the associated marked surface
========================================================

A surface with interior marked points has no vertex matrix.  Opening
each interior point into a small boundary circle produces a marked
surface with one fake triangle per puncture; the contraction matrix
Omega transports the duality down to the punctured surface, and the
quantum trace can be computed in two ways: directly from states on the
punctured triangulation, or upstairs followed by the projection that
kills the boundary loops.  Both must agree, independently of how the
extra diagonals were chosen.
"""

from qskein import BarBundle, bar_trace, curve_lift, lift
from qskein.library import torus_curve
from qskein.surface import torus_one_marked

lam = torus_one_marked()
print("punctured torus:", lam)
print("face matrix:\n", lam.face_matrix())

lam, c10 = torus_curve("1,0")
for variant in ("after", "before"):
    ld = lift(lam, variant=variant)
    print("\nlift (%s): %s" % (variant, ld.delta))
    print("  boundary loop:", ld.cp_edge, " contraction:", ld.omega)
    bb = BarBundle(ld)
    print("  Hbar =\n", bb.Hbar)
    print("  checks (Qbar = Om Q Om^T, Hbar P Hbar^T = -4 Qbar, rank):",
          bb.checks)
    lifted = curve_lift(ld, c10)
    print("  (1,0) lifts to:", lifted)
    res = bar_trace(ld, c10)
    print("  punctured trace (%d states): %s" % (res.state_count, res.shear_side))
    print("  projected pipeline agrees:", res.cross_checked)

print("\nthe shear-side answer is the same for both lifts, as it must be")
