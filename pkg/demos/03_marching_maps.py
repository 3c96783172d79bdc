"""The Dirac-vector maps behind the construction, taken apart.

One marching step is connection(reflection(l)) followed by a stretch.
The reflection map mirrors the roots of the one-sided polynomial, the
connection map flips signs so that the defects of neighbouring
subintervals cancel, and everything has an equivalent picture acting on
projective coefficient vectors in a symmetric basis.
"""

import numpy as np

from splinequad import (
    DiracVector,
    connection,
    connection_j,
    f_map,
    q_poly,
    real_roots,
    recursion,
    recursion_stretch,
    reflect_j,
    reflection,
    stretch,
)

c, n = 0, 2
l = DiracVector(c, (0.1,))

# reflection mirrors the root set
r_orig = real_roots(q_poly(c, n, l))
r_refl = real_roots(q_poly(c, n, reflection(c, n, l)))
print("roots           :", r_orig)
print("reflected roots :", r_refl, " (negated, reversed)")

# the recursion step is connection after reflection
step = recursion(c, n, l)
also = connection(reflection(c, n, l))
print(f"recursion(l) = {step.entries}  == connection(reflection(l)) = {also.entries}")

# marching the uniform chain from the boundary: 0 -> 2/9 -> 4/17 -> ...
vec = DiracVector.zero(c)
chain = [vec.entries[0]]
for _ in range(6):
    vec = recursion(c, n, vec)
    chain.append(vec.entries[0])
print("uniform chain   :", [f"{v:.9f}" for v in chain])

# non-uniform marching divides entry i by lambda^(i+1)
lam = 2.0
print("stretched step  :", recursion_stretch(c, n, DiracVector.zero(c), lam).entries,
      "= stretch(recursion(0), 2) =", stretch(recursion(c, n, DiracVector.zero(c)), lam).entries)

# the same step upstairs: map to coefficient space, reflect, connect
for cc, ll in ((0, (0.12,)), (1, (0.05, 0.001))):
    nn = 3
    lhs = f_map(cc, nn, recursion(cc, nn, DiracVector(cc, ll)))
    rhs = connection_j(cc, nn, reflect_j(f_map(cc, nn, DiracVector(cc, ll))))
    gap = np.max(np.abs(lhs.as_array - rhs.as_array))
    print(f"class {cc}: coefficient-space square commutes to {gap:.2e}")
