"""The set of directions along which ``x`` is orthogonal to ``y``.

Unless ``x`` is Birkhoff-James orthogonal to ``y`` (then every direction
works), the set is a closed arc ``E`` together with its antipode ``-E``.
:func:`direction_set` recovers ``E`` by scanning the circle for the two
sign changes of the part classification and bisecting each boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StructuralViolation
from .functionals import face_slopes
from .ortho import (DEFAULT_TOL, TWO_PI, Direction, as_gamma, is_bj_orthogonal,
                    local_part_sign)
from .spaces import norm

__all__ = ["ArcSet", "HalfCircle", "direction_set", "scalar_multiple_directions",
           "arc_membership", "DEGENERATE_ARC"]

DEGENERATE_ARC = 2e-7
ANGLE_TOL = 1e-11
SLOPE_RTOL = 1e-13


@dataclass(frozen=True)
class ArcSet:
    """Either the full circle or ``E u (-E)`` with ``E = [theta_start, theta_end]``.

    ``theta_start`` lies in ``[0, pi)`` and ``0 <= theta_end - theta_start < pi``.
    Equal endpoints encode a pair of antipodal points.
    """

    kind: str
    theta_start: float = 0.0
    theta_end: float = 0.0
    degenerate_input: bool = False

    @classmethod
    def full(cls, degenerate_input=False):
        return cls("full", degenerate_input=degenerate_input)

    @classmethod
    def arcs(cls, start, end):
        length = end - start
        if not 0 <= length < math.pi:
            raise ValueError(f"arc length {length} outside [0, pi)")
        s = start % TWO_PI
        if s >= math.pi:
            s -= math.pi
        return cls("arcs", float(s), float(s + length))

    @property
    def is_full(self):
        return self.kind == "full"

    @property
    def length(self):
        """Angular length of ``E`` (``2*pi`` for the full circle)."""
        return TWO_PI if self.is_full else self.theta_end - self.theta_start

    @property
    def is_point_pair(self):
        return not self.is_full and self.length == 0.0

    def contains(self, gamma, atol=0.0):
        return arc_membership(self, gamma, atol)

    def sample(self, n):
        """``n`` directions spread over ``E`` (the full circle for ``full``)."""
        if self.is_full:
            return [Direction(t) for t in np.linspace(0.0, TWO_PI, n, endpoint=False)]
        if self.is_point_pair or n == 1:
            return [Direction(0.5 * (self.theta_start + self.theta_end))]
        return [Direction(t) for t in np.linspace(self.theta_start, self.theta_end, n)]

    def to_dict(self):
        if self.is_full:
            return {"kind": "full"}
        return {"kind": "arcs", "theta_start": self.theta_start,
                "theta_end": self.theta_end}

    @classmethod
    def from_dict(cls, d):
        if d["kind"] == "full":
            return cls.full()
        return cls.arcs(float(d["theta_start"]), float(d["theta_end"]))


@dataclass(frozen=True)
class HalfCircle:
    """Directions with argument in ``[arg beta, arg beta + pi]``."""

    beta: Direction

    def contains(self, gamma):
        d = (_theta(gamma) - self.beta.theta) % TWO_PI
        return d <= math.pi

    def __neg__(self):
        return HalfCircle(-self.beta)


def _theta(gamma):
    if isinstance(gamma, Direction):
        return gamma.theta
    return Direction.from_complex(as_gamma(gamma)).theta


def arc_membership(arcs, gamma, atol=0.0):
    """Closed membership of ``gamma`` in ``E u (-E)``."""
    if arcs.is_full:
        return True
    phi = _theta(gamma) % math.pi
    for t in (phi, phi + math.pi, phi - math.pi):
        if arcs.theta_start - atol <= t <= arcs.theta_end + atol:
            return True
    return False


def scalar_multiple_directions(lam):
    """Directions for ``y = lam * x``: those with ``lam * gamma`` purely imaginary."""
    lam = complex(lam)
    if lam == 0:
        return ArcSet.full(degenerate_input=True)
    theta = math.pi / 2.0 - math.atan2(lam.imag, lam.real)
    return ArcSet.arcs(theta, theta)


def _bisect(cls_fn, lo, hi, lo_target, tol):
    """Shrink ``[lo, hi]`` keeping ``cls_fn(lo) == lo_target != cls_fn(hi)``."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if cls_fn(mid) == lo_target:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _sign_changes(classes):
    """Cyclic indices ``(i, j)`` where the non-zero class flips from ``classes[i]``."""
    nz = np.flatnonzero(classes)
    changes = []
    for k, i in enumerate(nz):
        j = nz[(k + 1) % len(nz)]
        if classes[i] != classes[j]:
            changes.append((int(i), int(j)))
    return changes


def _locate_arc(cls_fn, thetas, i, j, angle_tol):
    """Zero arc between the last sample ``i`` of one sign and first sample ``j`` of the other."""
    a = thetas[i]
    b = thetas[j]
    if b <= a:
        b += TWO_PI
    first = cls_fn(a)
    s_lo, s_hi = _bisect(lambda t: cls_fn(t) == first, a, b, True, angle_tol)
    e_lo, e_hi = _bisect(lambda t: cls_fn(t) == -first, a, b, False, angle_tol)
    start, end = 0.5 * (s_lo + s_hi), 0.5 * (e_lo + e_hi)
    return start, max(end, start), first


def _classifier(space, x, y):
    """Part classification per angle: +1 plus-only, -1 minus-only, 0 both.

    Uses the exact face slopes where the norming face is known in closed
    form and falls back to extrapolated finite differences otherwise.
    """
    if space.kind == "operator":
        return lambda thetas: local_part_sign(space, x, y, thetas)
    eps = SLOPE_RTOL * norm(space, y)

    def classify(thetas):
        lo, hi = face_slopes(space, x, y, thetas)
        out = np.zeros(len(lo), dtype=int)
        out[lo > eps] = 1
        out[hi < -eps] = -1
        return out

    return classify


def direction_set(space, x, y, resolution=720, tol=DEFAULT_TOL, angle_tol=ANGLE_TOL):
    """Compute ``S = {gamma : x orthogonal to y along gamma}``.

    Full circle when ``x`` is Birkhoff-James orthogonal to ``y`` (at
    predicate tolerance ``tol``); otherwise the canonical arc ``E`` of
    ``S = E u (-E)``. Raises :class:`StructuralViolation` when the scan does
    not show exactly two sign changes even after refining the scan.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if norm(space, x) == 0 or norm(space, y) == 0:
        return ArcSet.full(degenerate_input=True)
    if is_bj_orthogonal(space, x, y, tol):
        return ArcSet.full()

    classify = _classifier(space, x, y)

    def cls_fn(t):
        return int(classify([t])[0])

    n = int(resolution)
    changes, thetas, classes = [], None, None
    for _ in range(3):
        thetas = np.linspace(0.0, TWO_PI, n, endpoint=False)
        classes = classify(thetas)
        changes = _sign_changes(classes)
        if len(changes) == 2:
            break
        n *= 4
    if len(changes) != 2:
        if not np.any(classes):
            return ArcSet.full()
        raise StructuralViolation(
            f"expected 2 sign changes around the circle, found {len(changes)}",
            samples=list(zip(thetas.tolist(), classes.tolist())))

    arcs = [_locate_arc(cls_fn, thetas, i, j, angle_tol) for i, j in changes]
    (s1, e1, f1), (s2, e2, f2) = arcs
    if f1 != -f2 or _circ_dist(s2, s1 + math.pi) > 1e-7 or _circ_dist(e2, e1 + math.pi) > 1e-7:
        raise StructuralViolation(
            "boundary arcs are not antipodal",
            samples={"arcs": [(s1, e1), (s2, e2)]})
    start, end = s1, e1
    if end - start < DEGENERATE_ARC:
        mid = 0.5 * (start + end)
        start = end = mid
    if end - start >= math.pi:
        raise StructuralViolation("arc longer than a half circle",
                                  samples={"arcs": [(s1, e1), (s2, e2)]})
    return ArcSet.arcs(start, end)


def _circ_dist(a, b):
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)
