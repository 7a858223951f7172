import math

import numpy as np
import pytest

from bjortho import NormSpec

P_VALUES = (1.0, 1.5, 2.0, 3.0, math.inf)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_space(rng, dim=None, allow_weighted=True):
    """An l_p, weighted l_p or Hilbert space of dimension 2..6."""
    n = int(dim or rng.integers(2, 7))
    r = rng.random()
    if r < 0.2:
        return NormSpec.hilbert(n)
    p = P_VALUES[int(rng.integers(len(P_VALUES)))]
    if allow_weighted and r > 0.8:
        return NormSpec.weighted(p, rng.uniform(0.5, 2.0, n))
    return NormSpec.lp(p, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


def random_instance(rng, nonsmooth_rate=0.4):
    """Random ``(space, x, y)``; in l_1 / l_inf spaces ``x`` is often made non-smooth."""
    sp = random_space(rng)
    x, y = crandn(rng, sp.dim), crandn(rng, sp.dim)
    if sp.kind in ("lp", "weighted") and sp.p in (1.0, math.inf) and rng.random() < nonsmooth_rate:
        k = int(rng.integers(1, sp.dim))
        idx = rng.choice(sp.dim, size=k, replace=False)
        w = np.ones(sp.dim) if sp.weights is None else np.asarray(sp.weights)
        if sp.p == 1.0:
            x[idx] = 0
        else:
            # tie |w_j x_j| at the maximum on idx plus one more coordinate
            top = np.max(np.abs(w * x))
            j = [i for i in range(sp.dim) if i not in idx][0]
            for i in list(idx) + [j]:
                x[i] = top / w[i] * np.exp(1j * rng.uniform(0, 2 * math.pi))
    return sp, x, y


def isometry_multiple(rng, n, k, c):
    """``T`` with ``||Tv|| = c||v||`` on the span of the first ``k`` columns of ``V``."""
    U, _ = np.linalg.qr(crandn(rng, n, n))
    V, _ = np.linalg.qr(crandn(rng, n, n))
    s = np.concatenate([np.full(k, c), rng.uniform(0.1, 0.9 * c, n - k)])
    return U @ np.diag(s) @ V.conj().T, V[:, :k]


def mp_line_min(space, x, y, theta, dps=40, iters=240):
    """High-precision ``min_t ||x + t e^{i theta} y||`` and ``||x||`` (l_p family only).

    Golden-section search in mpmath arithmetic; used to arbitrate cases whose
    value deficit is below double-precision resolution.
    """
    import mpmath as mp

    with mp.workdps(dps):
        w = [mp.mpf(1)] * space.dim if space.weights is None else [mp.mpf(v) for v in space.weights]
        p = space.p
        xs = [w[j] * mp.mpc(complex(x[j])) for j in range(space.dim)]
        gy = mp.expj(mp.mpf(theta))
        ys = [w[j] * gy * mp.mpc(complex(y[j])) for j in range(space.dim)]

        def lp(vals):
            mods = [abs(v) for v in vals]
            if p == math.inf:
                return max(mods)
            return mp.fsum(m ** p for m in mods) ** (1 / mp.mpf(p))

        def nrm(t):
            return lp([a + t * b for a, b in zip(xs, ys)])

        nx = nrm(mp.mpf(0))
        r = 2 * nx / lp(ys)
        a, b = -r, r
        g = (mp.sqrt(5) - 1) / 2
        c, d = b - g * (b - a), a + g * (b - a)
        fc, fd = nrm(c), nrm(d)
        for _ in range(iters):
            if fc <= fd:
                b, d, fd = d, c, fc
                c = b - g * (b - a)
                fc = nrm(c)
            else:
                a, c, fc = c, d, fd
                d = a + g * (b - a)
                fd = nrm(d)
        return min(fc, fd, nx), nx
