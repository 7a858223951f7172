"""
Orthogonal along one direction, not in the Birkhoff-James sense
===============================================================

In the Hilbert plane take x = (1, 0) and y = (1, i). Moving from x along
i*y never shortens it, yet some complex multiple of y does.
"""

import math

import numpy as np

from bjortho import NormSpec, check_bj_orthogonal, min_norm_over_line

H = NormSpec.hilbert(2)
x = np.array([1, 0])
y = np.array([1, 1j])

# ||x + t*i*y|| = sqrt(1 + 2t^2), smallest at t = 0
line = min_norm_over_line(H, x, y, 1j)
print(f"along i: min {line.min_value:.12f} at t = {line.t_star}")

# along gamma = 1 the norm dips below ||x|| = 1
line = min_norm_over_line(H, x, y, 1.0)
print(f"along 1: min {line.min_value:.12f} at t = {line.t_star:.6f}")

# over all complex multiples the best is lam = -1/2, value 1/sqrt(2)
bj = check_bj_orthogonal(H, x, y)
print(f"BJ orthogonal: {bj.orthogonal}, min {bj.min_value:.12f} "
      f"(1/sqrt2 = {1 / math.sqrt(2):.12f}) at lam = {bj.minimizer:.6f}")
