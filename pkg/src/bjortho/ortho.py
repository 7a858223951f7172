"""Birkhoff-James and directional orthogonality predicates.

``x`` is orthogonal to ``y`` in the direction ``gamma`` when the convex map
``t -> ||x + t*gamma*y||`` over real ``t`` never drops below ``||x||``;
Birkhoff-James orthogonality asks the same over every complex multiple.
Both questions are decided by derivative-free minimisation, so they work
for non-differentiable norms such as l_1 and l_inf.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .spaces import inner, norm

__all__ = [
    "Direction", "Part", "LineMinResult", "PlaneMinResult", "Verdict",
    "golden_section", "min_norm_over_line", "min_norm_over_plane",
    "is_dir_orthogonal", "is_bj_orthogonal", "check_dir_orthogonal",
    "check_bj_orthogonal", "part_sign", "local_part_sign",
    "dir_orthogonal_hilbert", "as_gamma", "min_norm_over_lines", "is_dir_orthogonal_many",
]

TWO_PI = 2.0 * math.pi
INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_TOL = 1e-8
# deficits below this (relative) are rounding noise in the norm evaluation
ROUNDING = 8 * np.finfo(float).eps


@dataclass(frozen=True)
class Direction:
    """A unimodular complex number stored by its argument in ``[0, 2*pi)``."""

    theta: float

    def __post_init__(self):
        t = float(self.theta) % TWO_PI
        # a tiny negative angle rounds up to exactly 2*pi
        object.__setattr__(self, "theta", 0.0 if t >= TWO_PI else t)

    @classmethod
    def from_complex(cls, z):
        if abs(z) == 0:
            raise ValueError("direction of zero is undefined")
        return cls(math.atan2(z.imag, z.real))

    @property
    def gamma(self):
        return complex(math.cos(self.theta), math.sin(self.theta))

    def __neg__(self):
        return Direction(self.theta + math.pi)

    def conjugate(self):
        return Direction(-self.theta)

    def __complex__(self):
        return self.gamma


def as_gamma(gamma):
    """Unit complex number from a :class:`Direction` or a unimodular scalar."""
    if isinstance(gamma, Direction):
        return gamma.gamma
    g = complex(gamma)
    if not math.isfinite(abs(g)) or abs(abs(g) - 1.0) > 1e-9:
        raise ValueError(f"direction must have modulus 1, got |{g}| = {abs(g)}")
    return g / abs(g)


class Part(enum.Enum):
    """Which one-sided inequalities hold along a direction."""

    BOTH = "both"
    PLUS_ONLY = "plus_only"
    MINUS_ONLY = "minus_only"


def golden_section(f, lo, hi, xtol, maxiter=200):
    """Minimise a convex function on ``[lo, hi]``.

    Returns ``(t, f(t))`` for the best point evaluated. Ties are broken in
    favour of the point closest to zero so exact minimisers at ``t = 0``
    are reported as such.
    """
    best_t, best_v = None, math.inf

    def consider(t, v):
        nonlocal best_t, best_v
        if v < best_v or (v == best_v and abs(t) < abs(best_t)):
            best_t, best_v = t, v

    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    consider(c, fc)
    consider(d, fd)
    for _ in range(maxiter):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
            consider(c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
            consider(d, fd)
    for t in (a, b, 0.5 * (a + b)):
        consider(t, f(t))
    return best_t, best_v


@dataclass(frozen=True)
class LineMinResult:
    t_star: float
    min_value: float
    bracket: tuple
    degenerate: bool = False


@dataclass(frozen=True)
class PlaneMinResult:
    lambda_star: complex
    min_value: float
    degenerate: bool = False


@dataclass(frozen=True)
class Verdict:
    """Outcome of an orthogonality test with the minimiser that decided it."""

    orthogonal: bool
    min_value: float
    norm_x: float
    minimizer: complex
    degenerate: bool = False


def _prepare(space, x, y):
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    nx, ny = norm(space, x), norm(space, y)
    return x, y, nx, ny


def min_norm_over_line(space, x, y, gamma):
    """Global minimum of ``t -> ||x + t*gamma*y||`` over real ``t``.

    Every minimiser lies in ``|t| <= 2||x||/||y||``: beyond it the reverse
    triangle inequality already gives a value above ``||x||``.
    """
    x, y, nx, ny = _prepare(space, x, y)
    g = as_gamma(gamma)
    if ny == 0:
        return LineMinResult(0.0, nx, (0.0, 0.0), degenerate=True)
    gy = g * y
    r = 2.0 * nx / ny
    f0 = nx

    def f(t):
        return f0 if t == 0 else norm(space, x + t * gy)

    t, v = golden_section(f, -r, r, 1e-12 * (1.0 + nx))
    if f0 <= v + ROUNDING * f0:
        t, v = 0.0, f0
    return LineMinResult(float(t), float(v), (-r, r), degenerate=(nx == 0))


def _golden_batch(f, lo, hi, xtol, maxiter=200):
    """:func:`golden_section` run on many brackets at once.

    ``f(t, idx)`` evaluates bracket ``idx[k]`` at ``t[k]``; ``idx=None`` means all.
    """
    a, b = np.array(lo, dtype=float), np.array(hi, dtype=float)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    best_t, best_v = c.copy(), fc.copy()

    def consider(t, v):
        better = (v < best_v) | ((v == best_v) & (np.abs(t) < np.abs(best_t)))
        best_t[better] = t[better]
        best_v[better] = v[better]

    consider(d, fd)
    for _ in range(maxiter):
        # converged brackets freeze, so each stops where the scalar search would
        live = b - a > xtol
        if not np.any(live):
            break
        left = live & (fc <= fd)
        right = live & ~(fc <= fd)
        # left: b, d, fd = d, c, fc ; right: a, c, fc = c, d, fd
        b = np.where(left, d, b)
        a = np.where(right, c, a)
        fd, fc = np.where(left, fc, fd), np.where(right, fd, fc)
        c, d = (np.where(left, b - INVPHI * (b - a), np.where(right, d, c)),
                np.where(left, c, np.where(right, a + INVPHI * (b - a), d)))
        idx = np.flatnonzero(live)
        fresh = np.where(left, c, d)[idx]
        fv = f(fresh, idx)
        fc[idx] = np.where(left[idx], fv, fc[idx])
        fd[idx] = np.where(right[idx], fv, fd[idx])
        t_new, v_new = best_t.copy(), best_v.copy()
        t_new[idx], v_new[idx] = fresh, fv
        consider(t_new, v_new)
    for t in (a, b, 0.5 * (a + b)):
        consider(t, f(t))
    return best_t, best_v


def min_norm_over_lines(space, x, y, thetas):
    """Vectorised :func:`min_norm_over_line` for the directions ``exp(i*thetas)``.

    Returns ``(t_star, min_value)`` arrays.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    nx, ny = norm(space, x), norm(space, y)
    m = len(thetas)
    if ny == 0:
        return np.zeros(m), np.full(m, nx)
    gy = np.exp(1j * thetas).reshape((-1,) + (1,) * x.ndim) * y[None]
    r = 2.0 * nx / ny

    def f(t, idx=None):
        rows = gy if idx is None else gy[idx]
        return norm(space, x[None] + t.reshape((-1,) + (1,) * x.ndim) * rows)

    t, v = _golden_batch(f, np.full(m, -r), np.full(m, r), 1e-12 * (1.0 + nx))
    snap = nx <= v + ROUNDING * nx
    t[snap], v[snap] = 0.0, nx
    return t, v


def is_dir_orthogonal_many(space, x, y, thetas, tol=DEFAULT_TOL):
    """Boolean array: :func:`is_dir_orthogonal` for each angle in ``thetas``."""
    nx = norm(space, x)
    _, v = min_norm_over_lines(space, x, y, thetas)
    if nx == 0 or norm(space, y) == 0:
        return np.ones(len(v), dtype=bool)
    return v >= nx * (1.0 - tol)


def min_norm_over_plane(space, x, y):
    """Global minimum of ``lam -> ||x + lam*y||`` over complex ``lam``.

    Nested golden-section search: the inner minimum over ``Im lam`` is again
    convex in ``Re lam`` because partial minimisation preserves convexity.
    A coarse grid guards the result.
    """
    x, y, nx, ny = _prepare(space, x, y)
    if ny == 0:
        return PlaneMinResult(0j, nx, degenerate=True)
    r = 2.0 * nx / ny
    xtol = 1e-12 * (1.0 + nx)

    def inner_min(a):
        base = x + a * y
        iy = 1j * y
        return golden_section(lambda b: norm(space, base + b * iy), -r, r, xtol)

    cache = {}

    def outer(a):
        if a not in cache:
            cache[a] = inner_min(a)
        return cache[a][1]

    a, v = golden_section(outer, -r, r, xtol)
    b = cache[a][0] if a in cache else inner_min(a)[0]
    lam, val = complex(a, b), float(v)

    grid = np.linspace(-r, r, 9)
    lams = (grid[:, None] + 1j * grid[None, :]).ravel()
    vals = norm(space, x[None] + lams.reshape((-1,) + (1,) * x.ndim) * y[None])
    k = int(np.argmin(vals))
    if vals[k] < val:
        lam, val = complex(lams[k]), float(vals[k])
    if nx <= val + ROUNDING * nx:
        lam, val = 0j, nx
    return PlaneMinResult(lam, val, degenerate=(nx == 0))


def check_dir_orthogonal(space, x, y, gamma, tol=DEFAULT_TOL):
    """Decide ``x`` orthogonal to ``y`` along ``gamma``; see :class:`Verdict`.

    Orthogonal when the line minimum is at least ``||x||*(1 - tol)``. A zero
    ``x`` or ``y`` is orthogonal in every direction and flagged degenerate.
    """
    res = min_norm_over_line(space, x, y, gamma)
    nx = norm(space, x)
    if nx == 0 or res.degenerate:
        return Verdict(True, res.min_value, nx, complex(res.t_star), degenerate=True)
    ok = res.min_value >= nx * (1.0 - tol)
    return Verdict(bool(ok), res.min_value, nx, complex(res.t_star))


def check_bj_orthogonal(space, x, y, tol=DEFAULT_TOL):
    res = min_norm_over_plane(space, x, y)
    nx = norm(space, x)
    if nx == 0 or res.degenerate:
        return Verdict(True, res.min_value, nx, res.lambda_star, degenerate=True)
    ok = res.min_value >= nx * (1.0 - tol)
    return Verdict(bool(ok), res.min_value, nx, res.lambda_star)


def is_dir_orthogonal(space, x, y, gamma, tol=DEFAULT_TOL):
    return check_dir_orthogonal(space, x, y, gamma, tol).orthogonal


def is_bj_orthogonal(space, x, y, tol=DEFAULT_TOL):
    return check_bj_orthogonal(space, x, y, tol).orthogonal


def part_sign(space, x, y, gamma, tol=DEFAULT_TOL):
    """Classify ``y`` into the positive/negative parts of ``x`` along ``gamma``.

    ``PLUS_ONLY`` means the norm stays above ``||x||`` for ``t >= 0`` but
    dips below it for some ``t < 0``; ``MINUS_ONLY`` is the mirror case.
    """
    x, y, nx, ny = _prepare(space, x, y)
    if nx == 0 or ny == 0:
        return Part.BOTH
    gy = as_gamma(gamma) * y
    r = 2.0 * nx / ny
    xtol = 1e-12 * (1.0 + nx)
    f = lambda t: norm(space, x + t * gy)
    floor = nx * (1.0 - tol)
    _, v_neg = golden_section(f, -r, 0.0, xtol)
    _, v_pos = golden_section(f, 0.0, r, xtol)
    dips_neg, dips_pos = v_neg < floor, v_pos < floor
    if dips_neg and dips_pos:
        # impossible for a convex map; keep the deeper side
        return Part.PLUS_ONLY if v_neg < v_pos else Part.MINUS_ONLY
    if dips_neg:
        return Part.PLUS_ONLY
    if dips_pos:
        return Part.MINUS_ONLY
    return Part.BOTH


def local_part_sign(space, x, y, thetas, rel_step=1e-4, slope_tol=3e-10):
    """Vectorised part classification from one-sided slopes at ``t = 0``.

    For a convex map, the norm decreases somewhere on ``t > 0`` exactly when
    its right derivative at 0 is negative, so the one-sided slopes decide
    membership without thresholding small value deficits. Slopes are
    Richardson-extrapolated forward differences (error ``O(step^2)``).

    Returns an int array: ``+1`` plus-only, ``-1`` minus-only, ``0`` both.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    nx, ny = norm(space, x), norm(space, y)
    h = rel_step * nx / ny
    gam = np.exp(1j * thetas).reshape((-1,) + (1,) * x.ndim)
    gy = gam * y[None]

    def g(t):
        return norm(space, x[None] + t * gy)

    right = (4.0 * (g(h) - nx) - (g(2.0 * h) - nx)) / (2.0 * h)
    left = (4.0 * (g(-h) - nx) - (g(-2.0 * h) - nx)) / (2.0 * h)
    eps = slope_tol * ny
    out = np.zeros(thetas.shape, dtype=int)
    out[left < -eps] = 1
    out[right < -eps] = -1
    both_bad = (left < -eps) & (right < -eps)
    out[both_bad] = np.where(left[both_bad] < right[both_bad], 1, -1)
    return out


def dir_orthogonal_hilbert(x, y, gamma, tol=1e-10):
    """Closed-form Hilbert-space test: ``Re(gamma * <y, x>) == 0``."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    g = as_gamma(gamma)
    scale = np.linalg.norm(x) * np.linalg.norm(y)
    return bool(abs((g * inner(y, x)).real) <= tol * scale)
