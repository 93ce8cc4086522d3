"""
Naturality of the quantum trace under flips
===========================================

The trace of a curve can be computed in any triangulation.  The flip
coordinate change on the shear side must carry one answer to the other:
decomposing each state monomial over the curve monomial y^(k_alpha) and
pushing both factors through the change reproduces the trace computed
before the flip.  When the curve crosses the new diagonal twice, the
once-crossing formula picks up genuine powers of q, and the same
comparison run on the skein side validates those phases.
"""

from qskein import (
    Expr,
    ShearSkein,
    knot_monomial_transfer,
    theta_flip,
    theta_on_balanced,
    trace_simple,
    transport_curve,
    verify_identity,
)
from qskein.library import annulus_core

A, core = annulus_core()
b1 = ShearSkein(A)
before = trace_simple(core, A, b1)
print("trace in the original triangulation:")
print("   ", before.shear_side)

T2, fd, theta = theta_flip(A, "d1")
core2 = transport_curve(core, A, fd, T2)
after = trace_simple(core2, T2, ShearSkein(T2))
print("\nafter flipping %s to %s the same curve gives:" % (fd.a, fd.a_star))
print("   ", after.shear_side)

rec = knot_monomial_transfer(core2, A, "d1", T2=T2, fd=fd)
print("\nthe curve crosses %s in the %s pattern;" % (fd.a_star, rec.case))
print("exact transfer of the curve monomial:", rec.exact_ok)

lhs = theta_on_balanced(theta, rec, after.shear_side)
verdict = verify_identity(lhs, [Expr.from_element(before.shear_side)],
                          b1.y, trials=10)
print("coordinate change carries one trace to the other:", verdict)

# the almost-simple situation, with honest q-phases, is exercised by the
# 'phased' verification suite: python -m qskein.cli or qskein verify phased
from qskein.suites import suite_phased_naturality

print()
for name, status, detail in suite_phased_naturality(trials=6):
    print("%-58s %s  %s" % (name, status, detail))
