"""
Functional witnesses and smooth points
======================================

x is orthogonal to y along mu exactly when a functional u of dual norm 1
has u(x) = mu*||x|| and Re u(y) = 0. Smooth points have one norming
functional, so at most two such mu exist.
"""

import numpy as np

from bjortho import NormSpec, is_smooth_point, norming_set, orthogonality_pairs_sample, witness
from bjortho.functionals import pair_residuals

l1 = NormSpec.lp(1, 2)
x, y = np.array([1, 0]), np.array([1, 0.5])

# the norming face of (1, 0) in l_1 is {(1, f2) : |f2| <= 1}
face = norming_set(l1, x)
print(f"l_1 face: base {face.base.coeffs}, free coordinates {face.free}")

pair = witness(l1, x, y, 1j)
print(f"mu = i : u = {np.round(pair.functional.coeffs, 12)}, "
      f"residuals {pair_residuals(l1, x, y, pair)}")
print(f"mu = 1 : {witness(l1, x, y, 1.0)}")

# in the Hilbert plane the sample is exactly {(i, (i, 0)), (-i, (-i, 0))}
for p in orthogonality_pairs_sample(NormSpec.hilbert(2), x, np.array([1, 1j])):
    print(f"  mu = {p.mu.gamma:.3f}  u = {np.round(p.functional.coeffs, 12)}")

linf = NormSpec.lp("inf", 2)
for v in ([1, 0.5], [1, 1]):
    print(f"l_inf {v}: smooth {is_smooth_point(linf, np.array(v))}")
