"""Build a Gaussian rule for continuity-0 splines of degree 4 and inspect it.

Four uniform subintervals on [0, 4]; the third one carries the extra node.
The rule integrates every C0 spline of degree <= 4 on this partition
exactly, using 9 nodes where naive per-subinterval Gauss-Legendre of the
same accuracy would need 12.
"""

import numpy as np

from splinequad import Partition, SplineSpace, generate, verify_exactness

partition = Partition((0.0, 1.0, 2.0, 3.0, 4.0))
rule = generate(partition, c=0, d=4, middle_index=3)

print(f"degree {rule.degree}, continuity {rule.continuity}, omega = {rule.omega:.6f}")
for seg in rule.segments:
    p = seg.plan
    dirac = p.dirac_left if p.dirac_left is not None else p.dirac_right
    print(f"subinterval {p.index} {p.span}  kind={p.kind:12s} dirac={tuple(dirac.entries)}")
    for x, w in zip(seg.nodes, seg.weights):
        print(f"    x = {x:.15f}   w = {w:.15f}")

print(f"\nweight sum = {rule.weight_sum!r}  (interval length 4)")

# every B-spline of the matching space integrates exactly
space = SplineSpace(partition, degree=4, continuity=0)
report = verify_exactness(rule, space)
print(f"basis functions: {space.dimension}, max defect = {report.max_defect:.3e}, "
      f"passed = {report.passed}")

# a rule is also just arrays: integrate a hand-made spline
f = lambda x: 0.5 * np.minimum(x, 4.0 - x) ** 2  # piecewise quadratic, C0 kink at x = 2
approx = float(rule.all_weights @ f(rule.all_nodes))
print(f"integral of a kinked quadratic: rule = {approx:.15f}, exact = {8 / 3:.15f}")
