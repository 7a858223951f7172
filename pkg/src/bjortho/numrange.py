"""Restricted numerical ranges and the Bhatia-Šemrl check.

For operators ``T, A`` on C^n and a subspace ``H0`` on which ``T`` is a
scalar multiple ``c`` of an isometry, ``W_A(T) = {<Ax, Tx> : x in S_H0}`` is
convex. :func:`convexity_witness` constructs, for any point on the segment
between two values of ``W_A(T)``, a unit vector of ``H0`` realising it.

Inner products follow ``<u, v> = sum u_j conj(v_j)``, so
``<Ax, Tx> = vdot(Tx, Ax)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTranslation, IsometryError, StructuralViolation
from .ortho import TWO_PI, Direction, golden_section, is_bj_orthogonal
from .spaces import LinearOperator, NormSpec, norm_attainment_set

__all__ = [
    "NumericalRangeSample", "WitnessSolution", "BhatiaSemrlResult",
    "isometry_constant", "restricted_numerical_range", "classical_numerical_range",
    "convexity_witness", "compress", "contains_zero", "zero_witness",
    "bhatia_semrl_check", "directional_operator_check",
]

ISOMETRY_RTOL = 1e-8


def _mat(M):
    if isinstance(M, LinearOperator):
        return M.matrix
    return np.asarray(M, dtype=complex)


def _form(A, T, x):
    return complex(np.vdot(T @ x, A @ x))


def _orthonormal_basis(basis, n):
    if basis is None:
        return np.eye(n, dtype=complex)
    if hasattr(basis, "basis"):
        basis = basis.basis
    V = np.asarray(basis, dtype=complex)
    if V.ndim == 1:
        V = V[:, None]
    gram = V.conj().T @ V
    if not np.allclose(gram, np.eye(V.shape[1]), atol=1e-10):
        raise ValueError("subspace basis columns are not orthonormal")
    return V


def isometry_constant(T, basis, seed=0, n_random=8):
    """The constant ``c`` with ``||Tv|| = c||v||`` on ``span(basis)``.

    Estimated from the first basis vector, then verified on every basis
    vector and on random combinations; raises :class:`IsometryError`
    naming the first vector that breaks it.
    """
    T = _mat(T)
    V = _orthonormal_basis(basis, T.shape[1])
    c = float(np.linalg.norm(T @ V[:, 0]))
    rng = np.random.default_rng(seed)
    probes = [V[:, k] for k in range(V.shape[1])]
    for _ in range(n_random):
        z = rng.standard_normal(V.shape[1]) + 1j * rng.standard_normal(V.shape[1])
        probes.append(V @ (z / np.linalg.norm(z)))
    for v in probes:
        if abs(np.linalg.norm(T @ v) - c) > ISOMETRY_RTOL * max(c, 1.0):
            raise IsometryError(
                f"||Tv|| = {np.linalg.norm(T @ v):.17g} differs from c = {c:.17g}", v)
    return c


@dataclass
class NumericalRangeSample:
    points: np.ndarray
    witnesses: np.ndarray

    def to_csv(self):
        lines = ["re,im"] + [f"{z.real:.17g},{z.imag:.17g}" for z in self.points]
        return "\n".join(lines) + "\n"


def restricted_numerical_range(T, A, basis=None, n_samples=2000, seed=0):
    """Sample ``W_A(T)`` over unit vectors of ``span(basis)``.

    ``n_samples`` points in all: every basis vector and the normalised
    pairwise sums, topped up with uniformly random unit vectors.
    """
    T, A = _mat(T), _mat(A)
    V = _orthonormal_basis(basis, T.shape[1])
    isometry_constant(T, V, seed=seed)
    k = V.shape[1]
    coords = [np.eye(k, dtype=complex)[j] for j in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            coords.append((coords[i] + coords[j]) / math.sqrt(2.0))
    coords = coords[:n_samples]
    m = n_samples - len(coords)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((m, k)) + 1j * rng.standard_normal((m, k))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    C = np.vstack([np.array(coords), z]) if coords else z
    X = C @ V.T
    TX, AX = X @ T.T, X @ A.T
    points = np.sum(np.conj(TX) * AX, axis=1)
    return NumericalRangeSample(points, X)


def classical_numerical_range(A, n_samples=2000, seed=0):
    """Samples of ``W(A) = {<Ax, x> : ||x|| = 1}``."""
    A = _mat(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("numerical range needs a square matrix")
    return restricted_numerical_range(np.eye(A.shape[0]), A, None, n_samples, seed)


@dataclass
class WitnessSolution:
    """Data of one convexity witness ``x0 = b*kappa*x1 + a*x2``.

    ``N`` is the cross term ``<P x1', T x2> + <P x2, T x1'>`` after the
    rotation ``x1' = kappa*x1``; ``target`` is ``lam*mu1 + (1-lam)*mu2``.
    """

    kappa: complex
    a: float
    b: float
    x0: np.ndarray
    P: np.ndarray
    gamma0: complex
    sigma0: complex
    N: complex
    r: float
    target_lambda: float
    target: complex
    value: complex
    c: float
    discriminant: float = math.nan

    @property
    def ellipse_residual(self):
        return abs(self.a ** 2 + self.b ** 2 + 2 * self.a * self.b * self.r - 1.0)

    @property
    def hyperbola_residual(self):
        return abs(self.b ** 2 + self.a * self.b * self.N - self.target_lambda)


def convexity_witness(T, A, x1, x2, lam):
    """Unit ``x0`` in ``span(x1, x2)`` with ``<Ax0, Tx0> = lam*mu1 + (1-lam)*mu2``.

    ``mu_i = <A x_i, T x_i>`` must differ. The pair is mapped to ``0`` and
    ``1`` by the affine change ``P = gamma0*A + (sigma0/c^2)*T``, ``x1`` is
    rotated so the cross term ``N`` is real, and the remaining
    ellipse/hyperbola system in ``(a, b)`` reduces to a quadratic in
    ``t = a/b``.
    """
    T, A = _mat(T), _mat(A)
    x1 = np.asarray(x1, dtype=complex)
    x2 = np.asarray(x2, dtype=complex)
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    for v in (x1, x2):
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise ValueError("x1 and x2 must be unit vectors")
    V, _ = np.linalg.qr(np.column_stack([x1, x2]))
    c = isometry_constant(T, V if abs(abs(np.vdot(x1, x2)) - 1) > 1e-14 else x1)
    if c == 0:
        raise DegenerateTranslation("T vanishes on span(x1, x2): W_A(T) = {0}")
    mu1, mu2 = _form(A, T, x1), _form(A, T, x2)
    if mu1 == mu2:
        raise DegenerateTranslation("x1 and x2 give the same value; no segment to fill")
    gamma0 = 1.0 / (mu1 - mu2)
    sigma0 = -mu2 / (mu1 - mu2)
    P = gamma0 * A + (sigma0 / c ** 2) * T
    target = lam * mu1 + (1.0 - lam) * mu2

    p12 = complex(np.vdot(T @ x2, P @ x1))
    p21 = complex(np.vdot(T @ x1, P @ x2))
    N0, D = p12 + p21, p12 - p21
    m, n = D.real, -N0.imag
    rho = math.hypot(m, n)
    kappa = complex(m / rho, n / rho) if rho > 0 else 1.0 + 0j
    x1r = kappa * x1
    N = kappa * p12 + kappa.conjugate() * p21
    Nr = N.real
    r = complex(np.vdot(x2, x1r)).real
    if abs(r) >= 1.0:
        raise ValueError("|Re<x1', x2>| >= 1: x1 and x2 are parallel")

    disc = math.nan
    if lam == 1.0:
        a, b = 0.0, 1.0
    elif lam == 0.0:
        a, b = 1.0, 0.0
    else:
        qa, qb, qc = lam, 2.0 * lam * r - Nr, lam - 1.0
        disc = qb * qb - 4.0 * qa * qc
        if disc <= 0:
            raise StructuralViolation("reduced quadratic has no real root",
                                      samples={"lam": lam, "r": r, "N": N})
        sq = math.sqrt(disc)
        # stable pair of roots
        q = -0.5 * (qb + math.copysign(sq, qb)) if qb != 0 else -0.5 * sq
        roots = [q / qa, qc / q] if q != 0 else [sq / (2 * qa), -sq / (2 * qa)]
        t = max(roots, key=lambda t: (abs(1.0 + t * Nr), t))
        b = 1.0 / math.sqrt(t * t + 2.0 * r * t + 1.0)
        a = t * b
    x0 = b * x1r + a * x2
    x0 = x0 / np.linalg.norm(x0)
    return WitnessSolution(kappa, a, b, x0, P, gamma0, sigma0, N, r, lam, target,
                           _form(A, T, x0), c, disc)


def compress(T, A, basis):
    """Matrix ``B`` with ``<A V z, T V z> = z^H B z``: ``B[j, k] = <A v_k, T v_j>``."""
    T, A = _mat(T), _mat(A)
    V = _orthonormal_basis(basis, T.shape[1])
    return (T @ V).conj().T @ (A @ V)


def _hermitian_part(B, theta):
    R = np.exp(-1j * theta) * B
    return 0.5 * (R + R.conj().T)


def _min_eig(B, theta):
    return float(np.linalg.eigvalsh(_hermitian_part(B, theta))[0])


def _pd(H, margin):
    try:
        np.linalg.cholesky(H - margin * np.eye(H.shape[0]))
    except np.linalg.LinAlgError:
        return False
    return True


def contains_zero(T, A, basis, resolution=720, margin=1e-12):
    """Decide ``0 in W_A(T)`` over ``span(basis)``.

    ``0`` is outside exactly when some rotation ``e^{-i theta} B`` of the
    compressed matrix has positive definite Hermitian part; then
    ``kappa = e^{i theta}`` separates, ``Re(conj(kappa) z) > 0`` on the range.
    Returns ``(contains, kappa)`` with ``kappa`` a :class:`Direction` or ``None``.
    """
    B = compress(T, A, basis)
    # relative to the operators, not to B: a B of pure rounding noise is W = {0}
    scale = np.linalg.norm(_mat(T), 2) * np.linalg.norm(_mat(A), 2)
    thetas = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
    vals = np.array([_min_eig(B, t) for t in thetas])
    k = int(np.argmax(vals))
    h = TWO_PI / resolution
    t_best, v_best = golden_section(lambda t: -_min_eig(B, t), thetas[k] - h,
                                    thetas[k] + h, 1e-12)
    if -v_best < vals[k]:
        t_best = thetas[k]
    for t in (t_best, thetas[k]):
        if _pd(_hermitian_part(B, t), margin * scale):
            return False, Direction(t)
    return True, None


def _boundary_points(B, resolution):
    zs, cs = [], []
    for t in np.linspace(0.0, TWO_PI, resolution, endpoint=False):
        w, U = np.linalg.eigh(_hermitian_part(B, t))
        for col in (U[:, 0], U[:, -1]):
            cs.append(col)
            zs.append(complex(np.vdot(col, B @ col)))
    return np.array(zs), cs


def _combination_weights(z):
    """Weights ``w >= 0, sum w = 1`` with ``sum w z = 0`` via a small LP, or None."""
    from scipy.optimize import linprog

    A_eq = np.vstack([z.real, z.imag, np.ones(len(z))])
    res = linprog(np.zeros(len(z)), A_eq=A_eq, b_eq=[0.0, 0.0, 1.0],
                  bounds=(0, None), method="highs")
    if res.status != 0:
        return None
    return res.x


def zero_witness(T, A, basis, resolution=180):
    """Unit ``x`` in ``span(basis)`` with ``<Ax, Tx>`` (numerically) zero.

    Boundary points of the range come from extreme eigenvectors of rotated
    Hermitian parts; at most three of them carry ``0`` in their convex hull,
    and two convexity witnesses then walk to ``0``. Returns ``None`` when
    ``0`` is not in the sampled hull.
    """
    T, A = _mat(T), _mat(A)
    V = _orthonormal_basis(basis, T.shape[1])
    B = compress(T, A, V)
    zs, cs = _boundary_points(B, resolution)
    k0 = int(np.argmin(np.abs(zs)))
    if abs(zs[k0]) <= 1e-14 * max(np.linalg.norm(B, 2), 1.0):
        return V @ cs[k0]
    w = _combination_weights(zs)
    if w is None:
        return None
    idx = [int(i) for i in np.argsort(-w)[:3] if w[i] > 1e-12]
    pts = zs[idx]
    vecs = [V @ cs[i] for i in idx]
    # re-solve the weights on the chosen support for full precision
    if len(idx) == 3:
        M = np.vstack([pts.real, pts.imag, np.ones(3)])
        try:
            wts = np.linalg.solve(M, [0.0, 0.0, 1.0])
        except np.linalg.LinAlgError:
            wts = w[idx] / w[idx].sum()
        if np.any(wts < -1e-9):
            wts = w[idx] / w[idx].sum()
        wts = np.clip(wts, 0.0, None)
        wts = wts / wts.sum()
    else:
        wts = w[idx] / w[idx].sum()
    if len(idx) == 1:
        return vecs[0]
    w12 = wts[0] + wts[1]
    if len(idx) == 2:
        return _walk(T, A, vecs[0], vecs[1], wts[0] / w12)
    q = _walk(T, A, vecs[0], vecs[1], wts[0] / w12 if w12 > 0 else 1.0)
    return _walk(T, A, q, vecs[2], w12)


def _walk(T, A, x1, x2, lam):
    lam = float(min(max(lam, 0.0), 1.0))
    try:
        return convexity_witness(T, A, x1, x2, lam).x0
    except DegenerateTranslation:
        return x1


@dataclass(frozen=True)
class BhatiaSemrlResult:
    via_operator_norm: bool
    via_numerical_range: bool
    witness: np.ndarray = None
    witness_inner_product: complex = None
    separating_direction: Direction = None
    attainment_dim: int = 0

    @property
    def orthogonal(self):
        return self.via_operator_norm


def bhatia_semrl_check(T, A, tol=1e-7, resolution=720):
    """Decide ``T`` orthogonal to ``A`` in operator norm by two independent routes.

    One route minimises ``||T + lam*A||`` over complex ``lam``; the other
    asks whether ``0`` lies in ``{<Ax, Tx> : x in M_T}``. The theorem says
    they agree; disagreement raises :class:`StructuralViolation`.
    """
    T, A = _mat(T), _mat(A)
    if T.shape != A.shape or T.shape[0] != T.shape[1]:
        raise ValueError("T and A must be square matrices of the same size")
    space = NormSpec.operator(NormSpec.hilbert(T.shape[1]))
    via_op = is_bj_orthogonal(space, T, A, tol)
    M_T = norm_attainment_set(T)
    contains, kappa = contains_zero(T, A, M_T.basis, resolution)
    x = ip = None
    if contains:
        x = zero_witness(T, A, M_T.basis)
        if x is not None:
            ip = complex(np.vdot(A @ x, T @ x))
    if via_op != contains:
        raise StructuralViolation(
            f"operator-norm route says {via_op}, numerical-range route says {contains}",
            samples={"T": T, "A": A, "attainment_dim": M_T.dim})
    return BhatiaSemrlResult(via_op, contains, x, ip, kappa, M_T.dim)


def directional_operator_check(T, A, n_directions=360, tol=1e-6):
    """For each sampled ``gamma``, find ``x in M_T`` with ``Re(conj(gamma) <Ax,Tx>) = 0``.

    The extreme vectors of the rotated Hermitian part bound
    ``Re(conj(gamma) z)`` over the range; when they straddle zero a
    convexity witness between them lands on the line. Returns ``True`` when
    every direction succeeds.
    """
    T, A = _mat(T), _mat(A)
    V = norm_attainment_set(T).basis
    B = compress(T, A, V)
    for t in np.linspace(0.0, TWO_PI, n_directions, endpoint=False):
        w, U = np.linalg.eigh(_hermitian_part(B, t))
        lo, hi = V @ U[:, 0], V @ U[:, -1]
        g = np.exp(-1j * t)
        f = lambda x: (g * _form(A, T, x)).real
        if abs(f(lo)) <= tol:
            continue
        if abs(f(hi)) <= tol:
            continue
        if not (f(lo) < 0 < f(hi)):
            return False
        flo, fhi = f(lo), f(hi)
        x = _walk(T, A, hi, lo, -flo / (fhi - flo))
        if abs(f(x)) > tol:
            return False
    return True
