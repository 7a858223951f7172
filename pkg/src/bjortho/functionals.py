"""Norming functionals, orthogonality pairs and smoothness.

A direction ``mu`` admits orthogonality of ``x`` to ``y`` exactly when some
functional ``u`` of dual norm one satisfies ``u(x) = mu*||x||`` and
``Re u(y) = 0``. Such a ``u`` is ``mu*g`` for ``g`` in the norming face of
``x``; for l_1 and l_inf that face is a product of discs or a simplex, and
the best ``g`` is found in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UnsupportedSpace
from .ortho import DEFAULT_TOL, Direction, as_gamma
from .spaces import Functional, dual_norm, norm, norming_functional

__all__ = ["NormingSet", "OrthogonalityPair", "norming_set", "witness",
           "orthogonality_pairs_sample", "is_smooth_point", "pair_residuals",
           "face_slopes"]

SUPPORT_RTOL = 1e-12
WITNESS_TOL = 1e-9


@dataclass
class NormingSet:
    """The norming face ``{f : f(x) = ||x||, ||f||_* = 1}`` of ``x``.

    ``base`` is one member. For l_1 the coordinates in ``free`` may take any
    value with ``|f_j| <= w_j`` (the weight, 1 if unweighted). For l_inf the
    face is the convex hull of the vertices ``vertices[k]``, each supported
    on one maximal coordinate listed in ``active``.
    """

    base: Functional
    is_singleton: bool
    free: list = field(default_factory=list)
    active: list = field(default_factory=list)
    vertices: list = field(default_factory=list)
    bounds: list = field(default_factory=list)


@dataclass(frozen=True)
class OrthogonalityPair:
    mu: Direction
    functional: Functional

    def __neg__(self):
        return OrthogonalityPair(-self.mu, -self.functional)

    def to_dict(self):
        mu = self.mu.gamma
        return {"mu": [mu.real, mu.imag], "theta": self.mu.theta,
                "functional": [[c.real, c.imag] for c in self.functional.coeffs]}


def _weights(space):
    w = space._scale()
    return np.ones(space.dim) if w is None else w


def _check_space(space):
    if space.kind == "operator":
        raise UnsupportedSpace("norming sets of operator-norm spaces are not supported")


def norming_set(space, x):
    """Describe the norming face of a non-zero ``x``."""
    _check_space(space)
    x = np.asarray(x, dtype=complex)
    nx = norm(space, x)
    if nx == 0:
        raise ValueError("zero vector has no norming functional")
    w = _weights(space)
    u = w * x
    a = np.abs(u)
    base = Functional(norming_functional(space, x))
    if space.p == 1.0:
        free = [int(j) for j in np.flatnonzero(a <= SUPPORT_RTOL * nx)]
        base = Functional(np.where(a <= SUPPORT_RTOL * nx, 0.0, base.coeffs))
        return NormingSet(base, not free, free=free,
                          bounds=[float(w[j]) for j in free])
    if space.p == math.inf:
        active = [int(j) for j in np.flatnonzero(a >= (1.0 - SUPPORT_RTOL) * nx)]
        vertices = []
        for j in active:
            v = np.zeros(space.dim, dtype=complex)
            v[j] = w[j] * np.conj(u[j]) / a[j]
            vertices.append(v)
        return NormingSet(Functional(vertices[0]), len(active) == 1,
                          active=active, vertices=vertices)
    return NormingSet(base, True)


def is_smooth_point(space, x):
    """Whether ``x`` has a unique norming functional (decided per norm family)."""
    _check_space(space)
    return norming_set(space, x).is_singleton


def _face_minimizer(face, y, mu):
    """Member ``g`` of the face minimising ``|Re mu*g(y)|``."""
    y = np.asarray(y, dtype=complex)
    if face.free:
        g = face.base.coeffs.copy()
        c0 = (mu * (g @ y)).real
        terms = np.array([face.bounds[k] * abs(y[j]) for k, j in enumerate(face.free)])
        radius = terms.sum()
        if radius > 0:
            s = -np.clip(c0 / radius, -1.0, 1.0)
            for k, j in enumerate(face.free):
                if y[j] != 0:
                    # Re(mu * g_j * y_j) = s * bound_j * |y_j|
                    g[j] = s * face.bounds[k] * np.conj(mu * y[j]) / abs(mu * y[j])
        return g
    if face.vertices and len(face.vertices) > 1:
        vals = np.array([(mu * (v @ y)).real for v in face.vertices])
        i, k = int(np.argmin(vals)), int(np.argmax(vals))
        if vals[i] >= 0:
            return face.vertices[i].copy()
        if vals[k] <= 0:
            return face.vertices[k].copy()
        theta = vals[k] / (vals[k] - vals[i])
        return theta * face.vertices[i] + (1.0 - theta) * face.vertices[k]
    return face.base.coeffs.copy()


def face_slopes(space, x, y, thetas):
    """Exact one-sided slopes of ``t -> ||x + t*gamma*y||`` at ``t = 0``.

    The right derivative is ``max Re gamma*g(y)`` over the norming face and
    the left one (in ``-t``) is ``-min``. Returns ``(lo, hi)`` arrays of that
    min and max, one entry per angle in ``thetas``.
    """
    _check_space(space)
    y = np.asarray(y, dtype=complex)
    gam = np.exp(1j * np.atleast_1d(np.asarray(thetas, dtype=float)))
    face = norming_set(space, x)
    if face.free:
        c0 = face.base(y)
        radius = sum(b * abs(y[j]) for b, j in zip(face.bounds, face.free))
        mid = (gam * c0).real
        return mid - radius, mid + radius
    if len(face.vertices) > 1:
        vals = (gam[:, None] * (np.array(face.vertices) @ y)[None, :]).real
        return vals.min(axis=1), vals.max(axis=1)
    mid = (gam * face.base(y)).real
    return mid, mid


def pair_residuals(space, x, y, pair):
    """``(|u(x) - mu||x|||, |Re u(y)|, |dual_norm(u) - 1|)`` for a pair."""
    u = pair.functional
    mu = pair.mu.gamma
    return (abs(u(x) - mu * norm(space, x)), abs(u(y).real),
            abs(dual_norm(space, u) - 1.0))


def witness(space, x, y, mu, tol=WITNESS_TOL):
    """An orthogonality pair ``(mu, u)`` for ``(x, y)``, or ``None``.

    ``u = mu*g`` with ``g`` in the norming face of ``x`` chosen to make
    ``|Re u(y)|`` as small as possible; the pair is returned when that
    residual is at most ``tol * ||y||``.
    """
    _check_space(space)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    m = as_gamma(mu)
    face = norming_set(space, x)
    g = _face_minimizer(face, y, m)
    u = Functional(m * g)
    if abs(u(y).real) > tol * max(norm(space, y), 1e-300):
        return None
    return OrthogonalityPair(Direction.from_complex(m), u)


def orthogonality_pairs_sample(space, x, y, n_directions=8, tol=DEFAULT_TOL,
                               resolution=720):
    """Pairs for directions sampled from the orthogonality set, closed under negation."""
    from .arcs import direction_set

    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    arcs = direction_set(space, x, y, resolution=resolution, tol=tol)
    pairs = []
    for d in arcs.sample(n_directions):
        p = witness(space, x, y, d)
        if p is not None:
            pairs.extend([p, -p])
    if not pairs:
        raise RuntimeError("no orthogonality pair found on the computed direction set")
    return pairs
