"""Non-uniform partitions: the marching step absorbs length ratios.

A geometric partition [0,1], [1,3], [3,7], [7,15] doubles each subinterval
length.  The Dirac coefficients marching from the left boundary are damped
by the stretching map at every step, and the subinterval with the extra
node can sit at the boundary: here the extra node lands exactly on the
knot x = 7 with a rational weight.
"""

from splinequad import Partition, SplineSpace, generate, verify_exactness

partition = Partition((0.0, 1.0, 3.0, 7.0, 15.0))
rule = generate(partition, c=0, d=4, middle_index=4)

print("Dirac coefficient chain (left to right):")
for seg in rule.segments:
    p = seg.plan
    left = None if p.dirac_left is None else tuple(p.dirac_left.entries)
    right = None if p.dirac_right is None else tuple(p.dirac_right.entries)
    print(f"  subinterval {p.index} {str(p.span):14s} l = {left}  r = {right}")
print(f"omega = {rule.omega:.12g} (places a node on the knot x = 7)")
print(f"node at boundary: {rule.segments[3].nodes[0]:.15g} "
      f"with weight {rule.segments[3].weights[0]:.15g} (77/57 = {77 / 57:.15g})")

report = verify_exactness(rule, SplineSpace(partition, 4, 0))
print(f"max basis defect: {report.max_defect:.3e} (passed = {report.passed})")

# continuity class 1 works the same way; degree 7 needs 3 + 3 + 4 + 3 nodes
partition = Partition((0.0, 1.0, 3.0, 7.0, 9.0))
rule = generate(partition, c=1, d=7, middle_index=3)
print(f"\nC1 degree-7 rule on {partition.knots}: {rule.all_nodes.size} nodes, "
      f"weight sum {rule.weight_sum:.12f}")
report = verify_exactness(rule, SplineSpace(partition, 7, 1))
print(f"max basis defect: {report.max_defect:.3e} (passed = {report.passed})")

# feasibility is not guaranteed everywhere for class 1: an extra node pinned
# into a boundary subinterval may force roots off the real line or out of
# the span, which the generator reports as warnings instead of failing
bad = generate(Partition((0.0, 1.0, 2.0, 3.0, 4.0)), c=1, d=5, middle_index=1)
print(f"\ninfeasible middle position produces warnings: {list(bad.warnings)}")
