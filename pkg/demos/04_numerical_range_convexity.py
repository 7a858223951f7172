"""
Filling segments of a numerical range
=====================================

W_A(T) collects <Ax, Tx> over unit vectors where T attains its norm.
Given two points of it, convexity_witness builds a unit vector hitting
any point of the segment between them.
"""

import numpy as np

from bjortho import classical_numerical_range, convexity_witness, restricted_numerical_range

I2 = np.eye(2)
A = np.diag([1.0, -1.0])
e1, e2 = np.array([1, 0]), np.array([0, 1])

w = convexity_witness(I2, A, e1, e2, 0.5)
print(f"gamma0 {w.gamma0:.3f}, sigma0 {w.sigma0:.3f}, a = b = {w.a:.12f}")
print(f"x0 = {np.round(w.x0, 12)}, <Ax0, x0> = {w.value:.2e}")

# Toeplitz-Hausdorff: midpoints of a random non-normal matrix's range
rng = np.random.default_rng(0)
A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
for _ in range(3):
    z = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
    x1, x2 = z[0] / np.linalg.norm(z[0]), z[1] / np.linalg.norm(z[1])
    mid = 0.5 * (np.vdot(x1, A @ x1) + np.vdot(x2, A @ x2))
    w = convexity_witness(np.eye(4), A, x1, x2, 0.5)
    print(f"midpoint {mid:.6f}  reached {w.value:.6f}  error {abs(w.value - mid):.1e}")

# sampled ranges: Hermitian gives an interval, normal gives the hull of the spectrum
pts = classical_numerical_range(np.diag([-2, 3]), 1000, seed=1).points
print(f"W(diag(-2, 3)) in [{pts.real.min():.4f}, {pts.real.max():.4f}]")
pts = restricted_numerical_range(I2, np.diag([1, 1j]), None, 1000, seed=2).points
print(f"W(diag(1, i)) on re + im = 1: max deviation {np.abs(pts.real + pts.imag - 1).max():.1e}")
