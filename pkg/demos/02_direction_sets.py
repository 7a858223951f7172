"""
The set of orthogonality directions
===================================

For non-zero x, y the directions gamma with ||x + t*gamma*y|| >= ||x||
for all real t form either the whole circle or an arc E with its
antipode -E. At a smooth point the arc shrinks to a single point.
"""

import math

import numpy as np

from bjortho import NormSpec, direction_set, is_dir_orthogonal, scalar_multiple_directions

x = np.array([1, 0])

# l_1: x = (1, 0) is not smooth, and the arc has length pi/3
s = direction_set(NormSpec.lp(1, 2), x, np.array([1, 0.5]))
print(f"l_1   : [{s.theta_start:.10f}, {s.theta_end:.10f}]  "
      f"(pi/3 = {math.pi / 3:.10f}, 2pi/3 = {2 * math.pi / 3:.10f})")

# Hilbert: only gamma = +-i
s = direction_set(NormSpec.hilbert(2), x, np.array([1, 1j]))
print(f"l_2   : point pair at {s.theta_start:.10f} (pi/2 = {math.pi / 2:.10f})")

# l_inf: x = (1, 1) is Birkhoff-James orthogonal to (1, 0); every direction works
s = direction_set(NormSpec.lp("inf", 2), np.array([1, 1]), x)
print(f"l_inf : {s.to_dict()}")

# y = lam*x: exactly the gamma with lam*gamma purely imaginary
sp = NormSpec.lp(3, 3)
v = np.array([1 + 2j, -0.5, 1j])
lam = 1 + 1j
print(f"y = (1+i)x: scan {direction_set(sp, v, lam * v).theta_start:.10f}, "
      f"closed form {scalar_multiple_directions(lam).theta_start:.10f}")

# the arc agrees with the point predicate
s = direction_set(NormSpec.lp(1, 2), x, np.array([1, 0.5]))
for th in np.linspace(0, 2 * math.pi, 9)[:-1]:
    g = np.exp(1j * th)
    print(f"  theta {th:5.3f}: in set {s.contains(g)!s:5}  predicate "
          f"{is_dir_orthogonal(NormSpec.lp(1, 2), x, np.array([1, 0.5]), g)}")
