"""Stationary Dirac vectors: rules that repeat on an infinite knot line.

Iterating the marching step from the boundary value converges to a fixed
point; a rule built from it is the same on every subinterval of a uniform
infinite partition and still integrates all splines exactly.  For
continuity class 1 the convergence is quadratic (the error roughly
squares every step), which is why a handful of subintervals already
reproduce the periodic interior rule to machine precision.
"""

import numpy as np

from splinequad import DiracVector, fixed_point, q_poly, q_weights, real_roots, recursion

# class 0: the stationary value solves 36 l^2 = 2 at n = 2
fp0 = fixed_point(0, 2)
print(f"class 0, n=2 fixed point: {fp0.entries[0]:.15f}  (sqrt(2)/6 = {np.sqrt(2) / 6:.15f})")

# with a stretch factor of 2 it becomes the positive root of 72 l^2 + 9 l - 2
fp0s = fixed_point(0, 2, stretch_factor=2.0)
print(f"with stretching 2    : {fp0s.entries[0]:.15f}  "
      f"(quadratic root {(-9 + np.sqrt(657)) / 144:.15f})")

# class 1: the attracting fixed point has the rational second component
print("\nclass 1 fixed points, l1 = 1/(3 n (n+1) (n+2) (n+3)):")
for n in (2, 3, 4, 5):
    fp = fixed_point(1, n)
    l1 = 1.0 / (3 * n * (n + 1) * (n + 2) * (n + 3))
    print(f"  n={n}:  l = ({fp.entries[0]:.15f}, {fp.entries[1]:.15g})   "
          f"l1 exact = {l1:.15g}")

# quadratic convergence: the error squares once it is small
n = 3
target = fixed_point(1, n).as_array
x = np.zeros(2)
print(f"\nmarching errors toward the n={n} fixed point (note the squaring):")
for k in range(8):
    err = np.linalg.norm(x - target)
    print(f"  step {k}: |l_k - l*| = {err:.3e}")
    if err < 1e-15:
        break
    x = recursion(1, n, DiracVector(1, tuple(x))).as_array

# the periodic interior rule of the infinite uniform knot line
fp = fixed_point(1, 2)
nodes = real_roots(q_poly(1, 2, fp))
weights = q_weights(1, 2, fp, nodes)
print(f"\nperiodic unit-interval rule (class 1, degree 5):")
for x, w in zip((nodes + 1) / 2, weights / 2):
    print(f"  x = {x:.15f}   w = {w:.15f}")
