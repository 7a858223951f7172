"""Finite-dimensional complex normed spaces.

Vectors are 1-D complex numpy arrays. Functionals are coefficient arrays
acting *bilinearly*, ``f(z) = sum_j f_j z_j`` (no conjugation), while inner
products conjugate the second slot, ``<x, y> = sum_j x_j conj(y_j)``.

Norm families:

* ``lp``        ``(sum |x_j|^p)^(1/p)``, ``p`` in ``[1, inf]``
* ``weighted``  ``|| w * x ||_p`` for strictly positive weights ``w``
* ``hilbert``   the Euclidean norm together with the inner product
* ``operator``  induced norm on matrices between two vector spaces

Batched evaluation is supported: every function that takes a vector also
accepts a stack of vectors along the leading axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import UnsupportedSpace

__all__ = [
    "NormSpec", "Functional", "LinearOperator", "NormAttainmentSet",
    "OperatorNormEstimate", "as_cvector", "norm", "dual_norm", "inner",
    "dual_exponent", "norming_functional", "norming_vector",
    "operator_norm", "norm_attainment_set",
]

MULTIPLICITY_RTOL = 1e-9


@dataclass(frozen=True)
class NormSpec:
    """A norm on C^n (or on n x m matrices for ``kind="operator"``).

    Use the constructors :meth:`lp`, :meth:`weighted`, :meth:`hilbert` and
    :meth:`operator` instead of calling the class directly.
    """

    kind: str
    dim: int
    p: float = 2.0
    weights: Optional[tuple] = None
    domain: Optional["NormSpec"] = None
    codomain: Optional["NormSpec"] = None

    def __post_init__(self):
        if self.kind not in ("lp", "weighted", "hilbert", "operator"):
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if self.kind == "operator":
            if self.domain is None or self.codomain is None:
                raise ValueError("operator norm needs domain and codomain")
            if self.domain.kind == "operator" or self.codomain.kind == "operator":
                raise UnsupportedSpace("nested operator norms are not supported")
            return
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if not (self.p >= 1):
            raise ValueError(f"p must be >= 1 or inf, got {self.p}")
        if self.kind == "weighted":
            if self.weights is None or len(self.weights) != self.dim:
                raise ValueError("weights must have one entry per coordinate")
            if not all(math.isfinite(w) and w > 0 for w in self.weights):
                raise ValueError("weights must be finite and strictly positive")

    @classmethod
    def lp(cls, p, dim):
        return cls("lp", int(dim), p=_parse_p(p))

    @classmethod
    def weighted(cls, p, weights):
        weights = tuple(float(w) for w in weights)
        return cls("weighted", len(weights), p=_parse_p(p), weights=weights)

    @classmethod
    def hilbert(cls, dim):
        return cls("hilbert", int(dim), p=2.0)

    @classmethod
    def operator(cls, domain, codomain=None):
        codomain = domain if codomain is None else codomain
        return cls("operator", domain.dim, domain=domain, codomain=codomain)

    @property
    def shape(self):
        """Shape of an element of the space."""
        if self.kind == "operator":
            return (self.codomain.dim, self.domain.dim)
        return (self.dim,)

    @property
    def is_euclidean(self):
        """True when the norm is the plain Euclidean norm."""
        return self.kind == "hilbert" or (self.kind == "lp" and self.p == 2.0)

    @property
    def is_hilbert_operator(self):
        return (self.kind == "operator" and self.domain.is_euclidean
                and self.codomain.is_euclidean)

    @property
    def is_smooth_space(self):
        """Every non-zero point is smooth (strictly 1 < p < inf)."""
        if self.kind == "operator":
            return False
        return 1.0 < self.p < math.inf

    def _scale(self):
        if self.kind == "weighted":
            return np.asarray(self.weights, dtype=float)
        return None


def _parse_p(p):
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return math.inf
        p = float(p)
    p = float(p)
    if not (p >= 1):
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    return p


def dual_exponent(p):
    """Hölder conjugate q with 1/p + 1/q = 1."""
    if p == 1:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


def as_cvector(x, dim=None):
    """Convert ``x`` to a finite complex array, checking the last axis length."""
    arr = np.asarray(x, dtype=complex)
    if arr.ndim == 0:
        raise ValueError("expected a vector, got a scalar")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite entries")
    if dim is not None and arr.shape[-1] != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {arr.shape[-1]}")
    return arr


def _lp(u, p):
    a = np.abs(u)
    if p == 2.0:
        return np.linalg.norm(u, axis=-1)
    if p == 1.0:
        return a.sum(axis=-1)
    if p == math.inf:
        return a.max(axis=-1)
    m = a.max(axis=-1, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    return (m * ((a / safe) ** p).sum(axis=-1, keepdims=True) ** (1.0 / p))[..., 0]


def _check_elem(space, x):
    arr = np.asarray(x, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("input has non-finite entries")
    shape = space.shape
    if arr.ndim < len(shape) or arr.shape[arr.ndim - len(shape):] != shape:
        raise ValueError(f"dimension mismatch: expected trailing shape {shape}, "
                         f"got {arr.shape}")
    return arr


def norm(space, x):
    """Norm of ``x`` (or of each element of a stack of them)."""
    arr = _check_elem(space, x)
    if space.kind == "operator":
        if space.is_hilbert_operator:
            out = np.linalg.svd(arr, compute_uv=False)[..., 0]
        else:
            flat = arr.reshape((-1,) + space.shape)
            out = np.array([operator_norm(LinearOperator(m, space.domain,
                                                         space.codomain))
                            for m in flat]).reshape(arr.shape[:-2])
        return float(out) if np.ndim(out) == 0 else out
    w = space._scale()
    out = _lp(arr * w if w is not None else arr, space.p)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class Functional:
    """A linear functional ``f(z) = sum_j coeffs_j z_j`` (bilinear pairing)."""

    coeffs: np.ndarray

    def __call__(self, z):
        return complex(np.dot(self.coeffs, np.asarray(z, dtype=complex)))

    def __neg__(self):
        return Functional(-self.coeffs)

    def __mul__(self, scalar):
        return Functional(complex(scalar) * self.coeffs)

    __rmul__ = __mul__


def _coeffs(f):
    return f.coeffs if isinstance(f, Functional) else np.asarray(f, dtype=complex)


def dual_norm(space, f):
    """Dual norm ``sup{|f(z)| : ||z|| = 1}`` in closed form."""
    if space.kind == "operator":
        raise UnsupportedSpace("dual norms of operator-norm spaces are not supported")
    c = as_cvector(_coeffs(f), space.dim)
    q = dual_exponent(space.p)
    w = space._scale()
    out = _lp(c / w if w is not None else c, q)
    return float(out) if np.ndim(out) == 0 else out


def inner(x, y):
    """``<x, y> = sum_j x_j conj(y_j)``: linear in ``x``, conjugate-linear in ``y``."""
    x = as_cvector(x)
    y = as_cvector(y, x.shape[-1])
    return complex(np.vdot(y, x))


def _unit_phase(v):
    a = np.abs(v)
    return np.where(a > 0, np.conj(v) / np.where(a > 0, a, 1.0), 0.0)


def _lp_norming(u, p):
    """Base norming functional of ``u`` in plain l_p (u != 0)."""
    nu = _lp(u, p)
    if p == 1.0:
        return _unit_phase(u)
    if p == math.inf:
        g = np.zeros_like(u)
        k = int(np.argmax(np.abs(u)))
        g[k] = np.conj(u[k]) / abs(u[k])
        return g
    a = np.abs(u)
    return np.conj(u) * np.where(a > 0, (a / nu) ** (p - 2.0), 0.0) / nu


def norming_functional(space, x):
    """One functional ``f`` with ``f(x) = ||x||`` and dual norm 1."""
    if space.kind == "operator":
        raise UnsupportedSpace("norming functionals of operator spaces are not supported")
    x = as_cvector(x, space.dim)
    if not np.any(x):
        raise ValueError("zero vector has no norming functional")
    w = space._scale()
    if w is None:
        return _lp_norming(x, space.p)
    return w * _lp_norming(w * x, space.p)


def norming_vector(space, f):
    """Unit vector ``z`` maximising ``Re f(z)``, so ``f(z) = ||f||_*``."""
    c = as_cvector(_coeffs(f), space.dim)
    if not np.any(c):
        z = np.zeros(space.dim, dtype=complex)
        z[0] = 1.0
        return z / norm(space, z)
    w = space._scale()
    v = c / w if w is not None else c
    q = dual_exponent(space.p)
    if space.p == math.inf:
        u = _unit_phase(v)
        u = np.where(np.abs(v) > 0, u, 1.0)
    else:
        u = _lp_norming(v, q)
    return u / w if w is not None else u


@dataclass
class LinearOperator:
    """Matrix acting between two normed spaces (Euclidean by default)."""

    matrix: np.ndarray
    domain: Optional[NormSpec] = None
    codomain: Optional[NormSpec] = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2:
            raise ValueError("operator matrix must be 2-D")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator matrix has non-finite entries")
        self.matrix = m
        if self.domain is None:
            self.domain = NormSpec.hilbert(m.shape[1])
        if self.codomain is None:
            self.codomain = NormSpec.hilbert(m.shape[0])
        if self.domain.dim != m.shape[1] or self.codomain.dim != m.shape[0]:
            raise ValueError("operator shape does not match its spaces")

    @property
    def is_hilbert(self):
        return self.domain.is_euclidean and self.codomain.is_euclidean

    def __call__(self, x):
        return self.matrix @ np.asarray(x, dtype=complex)


@dataclass(frozen=True)
class OperatorNormEstimate:
    value: float
    exact: bool
    maximizer: np.ndarray
    residual: float
    restarts: int


def _as_operator(T):
    return T if isinstance(T, LinearOperator) else LinearOperator(T)


def _ascent(op, x, maxiter=200):
    """Power-type ascent for ||T||_{p->q}; each iterate is a lower bound."""
    M = op.matrix
    val = norm(op.codomain, M @ x)
    change = math.inf
    for _ in range(maxiter):
        y = M @ x
        if not np.any(y):
            break
        g = norming_functional(op.codomain, y)
        z = g @ M
        x_new = norming_vector(op.domain, z)
        x_new = x_new / norm(op.domain, x_new)
        new = norm(op.codomain, M @ x_new)
        change = new - val
        if new <= val:
            break
        x, val = x_new, new
        if change <= 1e-15 * max(val, 1.0):
            break
    return val, x, abs(change) if math.isfinite(change) else 0.0


def operator_norm(T, *, starts=32, seed=0, full_output=False):
    """Induced norm ``sup ||Tx||`` over the domain unit sphere.

    Exact for Euclidean spaces (largest singular value), for an l_1 domain
    (largest column norm) and for an l_inf codomain (largest dual row norm).
    Other pairs use multistart ascent, which returns a certified lower
    bound; ``full_output=True`` exposes the bound flag and residual.
    """
    op = _as_operator(T)
    M = op.matrix
    dom, cod = op.domain, op.codomain
    if op.is_hilbert:
        u, s, vh = np.linalg.svd(M)
        est = OperatorNormEstimate(float(s[0]), True, vh[0].conj(), 0.0, 0)
    elif dom.p == 1.0:
        w = dom._scale()
        cols = M / w[None, :] if w is not None else M
        vals = norm(cod, cols.T)
        k = int(np.argmax(vals))
        x = np.zeros(M.shape[1], dtype=complex)
        x[k] = 1.0 / (w[k] if w is not None else 1.0)
        est = OperatorNormEstimate(float(vals[k]), True, x, 0.0, 0)
    elif cod.p == math.inf:
        w = cod._scale()
        rows = M * w[:, None] if w is not None else M
        vals = np.array([dual_norm(dom, r) for r in rows])
        k = int(np.argmax(vals))
        x = norming_vector(dom, rows[k])
        est = OperatorNormEstimate(float(vals[k]), True, x, 0.0, 0)
    else:
        rng = np.random.default_rng(seed)
        best = (-1.0, None, 0.0)
        for _ in range(starts):
            x0 = rng.standard_normal(M.shape[1]) + 1j * rng.standard_normal(M.shape[1])
            x0 /= norm(dom, x0)
            cand = _ascent(op, x0)
            if cand[0] > best[0]:
                best = cand
        est = OperatorNormEstimate(float(best[0]), False, best[1], best[2], starts)
    return est if full_output else est.value


@dataclass
class NormAttainmentSet:
    """Unit vectors at which an operator attains its norm.

    ``kind="subspace"``: every unit vector of ``span(basis)`` attains the norm
    (Euclidean case, ``basis`` has orthonormal columns).
    ``kind="samples"``: a finite list of maximisers (rows of ``basis``'s
    transpose) with their relative shortfalls in ``residuals``.
    """

    kind: str
    basis: np.ndarray
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def dim(self):
        return self.basis.shape[1]


def norm_attainment_set(T, *, rtol=MULTIPLICITY_RTOL, starts=32, seed=0, tol=1e-8):
    """The set M_T of norm-attaining unit vectors.

    For Euclidean operators this is the unit sphere of the top right-singular
    subspace; singular values within ``rtol`` of the largest count as maximal.
    """
    op = _as_operator(T)
    if op.is_hilbert:
        u, s, vh = np.linalg.svd(op.matrix)
        k = int(np.sum(s >= s[0] * (1.0 - rtol))) if s[0] > 0 else op.matrix.shape[1]
        if s[0] == 0:
            return NormAttainmentSet("subspace", np.eye(op.matrix.shape[1], dtype=complex))
        return NormAttainmentSet("subspace", vh[:k].conj().T)
    top = operator_norm(op, starts=starts, seed=seed)
    rng = np.random.default_rng(seed)
    cols, res = [], []
    n = op.matrix.shape[1]
    for _ in range(starts):
        x0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        val, x, _ = _ascent(op, x0 / norm(op.domain, x0))
        if val >= (1.0 - tol) * top:
            x = x / norm(op.domain, x)
            if not any(np.allclose(x, c, atol=1e-7) for c in cols):
                cols.append(x)
                res.append(1.0 - val / top if top > 0 else 0.0)
    if not cols:
        est = operator_norm(op, starts=starts, seed=seed, full_output=True)
        cols, res = [est.maximizer / norm(op.domain, est.maximizer)], [0.0]
    return NormAttainmentSet("samples", np.array(cols).T, np.array(res))
