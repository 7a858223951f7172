"""
Two routes to operator orthogonality
====================================

||T + lam*A|| >= ||T|| for every complex lam holds exactly when some unit
x with ||Tx|| = ||T|| has <Ax, Tx> = 0. bhatia_semrl_check decides each
side independently and insists that they agree.
"""

import numpy as np

from bjortho import bhatia_semrl_check, contains_zero

I2 = np.eye(2)

res = bhatia_semrl_check(I2, np.diag([1.0, -1.0]))
print(f"T = I, A = diag(1,-1): {res.via_operator_norm}/{res.via_numerical_range}, "
      f"witness {np.round(res.witness, 6)}, <Tx,Ax> = {res.witness_inner_product:.1e}")

res = bhatia_semrl_check(I2, I2)
print(f"T = I, A = I: {res.via_operator_norm}/{res.via_numerical_range}, "
      f"separating direction {res.separating_direction.gamma:.6f}")

# the range of the Jordan block is the disc of radius 1/2 about 1, so 0 is outside
ok, kappa = contains_zero(I2, np.array([[1, 1], [0, 1]]), I2)
print(f"0 in W([[1,1],[0,1]]): {ok}, separated along {kappa.gamma:.6f}")

# random pairs are generically not orthogonal: M_T is a single circle of
# vectors and <Ax, Tx> is one nonzero value on it
rng = np.random.default_rng(3)
crandn = lambda *s: rng.standard_normal(s) + 1j * rng.standard_normal(s)
for _ in range(3):
    r = bhatia_semrl_check(crandn(3, 3), crandn(3, 3))
    print(f"  random: dim M_T {r.attainment_dim}, {r.via_operator_norm}/{r.via_numerical_range}")

# repeat the top singular value and shift A by a multiple of T so that some
# x in M_T has <Ax, Tx> = 0; both routes then report orthogonality
U, _ = np.linalg.qr(crandn(3, 3))
V, _ = np.linalg.qr(crandn(3, 3))
T = U @ np.diag([2.0, 2.0, 0.5]) @ V.conj().T
A = crandn(3, 3)
z = V[:, 0]
A = A - np.vdot(T @ z, A @ z) / 4.0 * T
r = bhatia_semrl_check(T, A)
print(f"  shifted: dim M_T {r.attainment_dim}, {r.via_operator_norm}/{r.via_numerical_range}, "
      f"|<Tx,Ax>| = {abs(r.witness_inner_product):.1e}")
