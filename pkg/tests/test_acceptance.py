"""Acceptance suite: one test per criterion, one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly with
``python tests/test_acceptance.py``.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

import bjortho.arcs as arcs_mod
from bjortho import (Direction, NormSpec, bhatia_semrl_check, check_bj_orthogonal,
                     convexity_witness, dir_orthogonal_hilbert, direction_set,
                     is_dir_orthogonal, is_dir_orthogonal_many, is_smooth_point,
                     scalar_multiple_directions, witness)
from bjortho.functionals import pair_residuals

from conftest import crandn, isometry_multiple, mp_line_min, random_instance, random_space

SMOOTH_P = (1.5, 2.0, 3.0)


@pytest.fixture
def report(capsys):
    """Print one summary line through pytest's capture."""
    def emit(n, title, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
        assert ok, detail
    return emit


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def _circ(a, b, period):
    d = (a - b) % period
    return min(d, period - d)


# 1 -----------------------------------------------------------------------

def test_reference_pair(report):
    H = NormSpec.hilbert(2)
    x, y = np.array([1, 0]), np.array([1, 1j])
    along_i = is_dir_orthogonal(H, x, y, 1j)
    bj = check_bj_orthogonal(H, x, y)
    arcs = direction_set(H, x, y)
    checks = {
        "orthogonal along i": along_i,
        "not BJ orthogonal": not bj.orthogonal,
        "plane min 1/sqrt2 +- 1e-9": abs(bj.min_value - 1 / math.sqrt(2)) <= 1e-9,
        "antipodal pair at pi/2 +- 1e-7": arcs.is_point_pair
        and abs(arcs.theta_start - math.pi / 2) <= 1e-7,
    }
    bad = [k for k, v in checks.items() if not v]
    report(1, "reference Hilbert pair", not bad,
           f"plane min {bj.min_value:.12f}, arc at {arcs.theta_start:.12f}"
           + (f"; failed: {bad}" if bad else ""))


# 2 -----------------------------------------------------------------------

def test_direction_set_nonempty(report):
    rng = np.random.default_rng(2)

    def run():
        empty, scalar_err = 0, 0.0
        for _ in range(500):
            sp, x, y = random_instance(rng)
            s = direction_set(sp, x, y)
            member = s.sample(1)[0]
            if not is_dir_orthogonal(sp, x, y, member):
                empty += 1
        for _ in range(200):
            sp = random_space(rng)
            x = crandn(rng, sp.dim)
            lam = complex(*rng.standard_normal(2))
            got = direction_set(sp, x, lam * x)
            want = scalar_multiple_directions(lam)
            if not got.is_point_pair:
                scalar_err = math.inf
                continue
            scalar_err = max(scalar_err, _circ(got.theta_start, want.theta_start, math.pi))
        return empty, scalar_err

    (empty, scalar_err), dt = _timed(run)
    report(2, "direction set nonempty", empty == 0 and scalar_err <= 1e-9,
           f"500 instances, {empty} without a verified member; 200 scalar multiples, "
           f"max angle error {scalar_err:.2e} rad ({dt:.1f}s)")


# 3 -----------------------------------------------------------------------

def test_arc_structure(report):
    rng = np.random.default_rng(3)

    def run():
        disagree, raw, asym, total = 0, 0, 0, 0
        kinds = {"full": 0, "point": 0, "arc": 0}
        for _ in range(200):
            sp, x, y = random_instance(rng)
            s = direction_set(sp, x, y)
            kinds["full" if s.is_full else "point" if s.is_point_pair else "arc"] += 1
            th = rng.uniform(0, 2 * math.pi, 1000)
            member = np.array([s.contains(Direction(t)) for t in th])
            asym += int(np.sum(member != np.array([s.contains(Direction(t + math.pi))
                                                   for t in th])))
            # members must pass the predicate; non-members must fail it even at tol 0
            ok_default = is_dir_orthogonal_many(sp, x, y, th)
            ok_strict = is_dir_orthogonal_many(sp, x, y, th, tol=0.0)
            for j in np.flatnonzero((member & ~ok_default) | (~member & ok_strict)):
                # float64 cannot resolve relative deficits near 1e-16; decide in 40 digits
                raw += 1
                m, nx = mp_line_min(sp, x, y, th[j])
                if member[j] != (m >= nx * (1 - 1e-8 if member[j] else 1)):
                    disagree += 1
            total += len(th)
        return disagree, raw, asym, total, kinds

    (disagree, raw, asym, total, kinds), dt = _timed(run)
    report(3, "arc structure", disagree == 0 and asym == 0,
           f"{total} angles over 200 instances {kinds}: {disagree} disagreements "
           f"({raw} below double-precision resolution re-decided at 40 digits), "
           f"{asym} antipodal asymmetries ({dt:.1f}s)")


# 4 -----------------------------------------------------------------------

def test_functional_characterisation(report):
    rng = np.random.default_rng(4)

    def run():
        mismatch, worst, n_witness = 0, 0.0, 0
        for k in range(500):
            sp, x, y = random_instance(rng)
            if k % 2 == 0:
                s = direction_set(sp, x, y)
                if s.is_full:
                    mu = Direction(rng.uniform(0, 2 * math.pi))
                elif s.is_point_pair:
                    mu = Direction(s.theta_start + math.pi * int(rng.integers(2)))
                else:
                    mu = Direction(rng.uniform(s.theta_start, s.theta_end))
            else:
                mu = Direction(rng.uniform(0, 2 * math.pi))
            pair = witness(sp, x, y, mu)
            orth = is_dir_orthogonal(sp, x, y, mu, tol=1e-14)
            mismatch += int((pair is not None) != orth)
            if pair is not None:
                n_witness += 1
                worst = max(worst, *pair_residuals(sp, x, y, pair))
        return mismatch, worst, n_witness

    (mismatch, worst, n_witness), dt = _timed(run)
    report(4, "witness <=> directional orthogonality", mismatch == 0 and worst <= 1e-8,
           f"500 triples, {n_witness} witnesses, {mismatch} mismatches, "
           f"worst residual {worst:.2e} ({dt:.1f}s)")


# 5 -----------------------------------------------------------------------

def test_hilbert_closed_form(report):
    rng = np.random.default_rng(5)
    tol = 1e-6
    # the value deficit is quadratic in Re(gamma<y,x>)/(|x||y|), hence tol^2/2
    value_tol = tol * tol / 2

    def run():
        disagree, asym, n_orth, total = 0, 0, 0, 0
        for _ in range(1000):
            n = int(rng.integers(2, 7))
            H = NormSpec.hilbert(n)
            x, y = crandn(rng, n), crandn(rng, n)
            c = np.vdot(x, y)  # <y, x>
            exact = [1j * np.conj(c) / abs(c) * s for s in (1, -1)]
            exact += [1j * np.conj(c) / abs(c) * np.exp(1j * rng.uniform(-1e-7, 1e-7))
                      for _ in range(3)]
            gammas = exact + list(np.exp(1j * rng.uniform(0, 2 * math.pi, 5)))
            th = np.angle(gammas)
            opt = is_dir_orthogonal_many(H, x, y, th, tol=value_tol)
            opt_sym = is_dir_orthogonal_many(H, y, x, -th, tol=value_tol)
            for k, g in enumerate(gammas):
                g = np.exp(1j * th[k])
                closed = dir_orthogonal_hilbert(x, y, g, tol=tol)
                closed_sym = dir_orthogonal_hilbert(y, x, np.conj(g), tol=tol)
                disagree += int(closed != opt[k])
                asym += int(closed != closed_sym) + int(opt[k] != opt_sym[k])
                n_orth += int(closed)
                total += 1
        return disagree, asym, n_orth, total

    (disagree, asym, n_orth, total), dt = _timed(run)
    report(5, "Hilbert closed form", disagree == 0 and asym == 0,
           f"{total} triples ({n_orth} orthogonal): {disagree} disagreements, "
           f"{asym} symmetry failures ({dt:.1f}s)")


# 6 -----------------------------------------------------------------------

def test_smooth_points_give_point_pairs(report, monkeypatch):
    rng = np.random.default_rng(6)
    # measure raw arc lengths: no collapse of short arcs to their midpoint
    monkeypatch.setattr(arcs_mod, "DEGENERATE_ARC", 0.0)

    def run():
        lengths = []
        for k in range(200):
            n = int(rng.integers(2, 7))
            if k % 4 == 3:
                # smooth points of non-smooth spaces
                sp = NormSpec.lp(1.0 if k % 8 == 3 else math.inf, n)
            elif k % 4 == 2:
                sp = NormSpec.hilbert(n)
            else:
                sp = NormSpec.lp(SMOOTH_P[k % 3], n)
            x, y = crandn(rng, n), crandn(rng, n)
            assert is_smooth_point(sp, x)
            s = arcs_mod.direction_set(sp, x, y)
            if not s.is_full:
                lengths.append(s.length)
        return lengths

    lengths, dt = _timed(run)
    l1 = direction_set(NormSpec.lp(1, 2), np.array([1, 0]), np.array([1, 0.5]))
    err = max(abs(l1.theta_start - math.pi / 3), abs(l1.theta_end - 2 * math.pi / 3))
    ok = all(L < 2e-7 for L in lengths) and err <= 1e-6
    report(6, "smooth points and the l1 arc", ok,
           f"{len(lengths)} non-full sets, longest {max(lengths):.2e} rad; l1 arc endpoint "
           f"error {err:.2e} rad ({dt:.1f}s)")


# 7 -----------------------------------------------------------------------

def _grid_solve(r, N, lam):
    """Brute-force real solutions of the ellipse/hyperbola pair via grid + polish."""
    from scipy.optimize import least_squares

    def res(v):
        a, b = v
        return [a * a + b * b + 2 * a * b * r - 1.0, b * b + a * b * N - lam]
    g = np.linspace(-3, 3, 301)
    A, B = np.meshgrid(g, g, indexing="ij")
    R = np.abs(A * A + B * B + 2 * A * B * r - 1) + np.abs(B * B + A * B * N - lam)
    seeds = np.argwhere(R < 0.2)
    sols = []
    for i, j in seeds[np.argsort(R[tuple(seeds.T)])][:200]:
        out = least_squares(res, [g[i], g[j]], xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if max(abs(np.array(out.fun))) < 1e-12 and not any(
                np.hypot(*(out.x - s)) < 1e-7 for s in sols):
            sols.append(out.x)
    return sols


def test_constructive_convexity(report):
    rng = np.random.default_rng(7)

    def run():
        worst_unit, worst_val, spot, spot_err = 0.0, 0.0, 0, 0.0
        for k in range(200):
            n = int(rng.integers(2, 6))
            T, V = isometry_multiple(rng, n, int(rng.integers(2, n + 1)), rng.uniform(0.3, 3))
            A = crandn(rng, n, n)
            x1, x2 = V @ crandn(rng, V.shape[1]), V @ crandn(rng, V.shape[1])
            x1, x2 = x1 / np.linalg.norm(x1), x2 / np.linalg.norm(x2)
            for lam in np.linspace(0, 1, 11):
                w = convexity_witness(T, A, x1, x2, lam)
                raw = w.b * w.kappa * x1 + w.a * x2
                worst_unit = max(worst_unit, abs(np.linalg.norm(raw) - 1))
                worst_val = max(worst_val, abs(np.vdot(T @ w.x0, A @ w.x0) - w.target))
                if k % 4 == 0 and lam == 0.5 and spot < 50:
                    sols = _grid_solve(w.r, w.N.real, lam)
                    d = min((np.hypot(w.a - s[0], w.b - s[1]) for s in sols), default=math.inf)
                    spot_err = max(spot_err, d)
                    spot += 1
            if k % 4 == 0 and spot < 50:
                # a second spot-check per instance at a random interior lambda
                lam = float(rng.uniform(0.02, 0.98))
                w = convexity_witness(T, A, x1, x2, lam)
                sols = _grid_solve(w.r, w.N.real, lam)
                spot_err = max(spot_err, min((np.hypot(w.a - s[0], w.b - s[1]) for s in sols),
                                             default=math.inf))
                spot += 1
        return worst_unit, worst_val, spot, spot_err

    (wu, wv, spot, se), dt = _timed(run)
    report(7, "constructive convexity", wu <= 1e-10 and wv <= 1e-8 and se <= 1e-6 and spot >= 50,
           f"2200 witnesses: unit error {wu:.2e}, value error {wv:.2e}; {spot} grid "
           f"spot-checks, max (a,b) distance {se:.2e} ({dt:.1f}s)")


# 8 -----------------------------------------------------------------------

def _bhatia_pair(rng, k):
    n = int(rng.integers(2, 6))
    mode = k % 4
    if mode == 0:
        return crandn(rng, n, n), crandn(rng, n, n), "generic"
    kdim = int(rng.integers(1, n + 1)) if mode != 3 else int(rng.integers(2, n + 1))
    T, V = isometry_multiple(rng, n, kdim, rng.uniform(0.5, 2))
    A = crandn(rng, n, n)
    if mode in (1, 2):
        # shift A so that some x in M_T has <Ax, Tx> = 0
        z = V @ crandn(rng, kdim)
        z /= np.linalg.norm(z)
        A = A - np.vdot(T @ z, A @ z) / np.vdot(T @ z, T @ z) * T
        return T, A, "shifted"
    return T, A, "repeated"


def test_bhatia_semrl(report):
    rng = np.random.default_rng(8)

    def run():
        disagree, worst, n_true, errors = 0, 0.0, 0, []
        for k in range(200):
            T, A, _ = _bhatia_pair(rng, k)
            try:
                res = bhatia_semrl_check(T, A)
            except Exception as exc:  # a StructuralViolation is a disagreement
                disagree += 1
                errors.append(repr(exc)[:120])
                continue
            disagree += int(res.via_operator_norm != res.via_numerical_range)
            if res.orthogonal:
                n_true += 1
                x = res.witness
                in_mt = (abs(np.linalg.norm(x) - 1) < 1e-10 and
                         abs(np.linalg.norm(T @ x) - np.linalg.norm(T, 2)) <= 1e-8
                         * np.linalg.norm(T, 2))
                ip = abs(np.vdot(A @ x, T @ x))
                worst = max(worst, ip if in_mt else math.inf)
        return disagree, worst, n_true, errors

    (disagree, worst, n_true, errors), dt = _timed(run)
    report(8, "Bhatia-Semrl cross-validation", disagree == 0 and worst <= 1e-7,
           f"200 pairs ({n_true} orthogonal): {disagree} disagreements, worst "
           f"|<Tx,Ax>| {worst:.2e} ({dt:.1f}s)" + (f"; {errors[:2]}" if errors else ""))


# 9 -----------------------------------------------------------------------

def test_toeplitz_hausdorff(report):
    rng = np.random.default_rng(9)

    def run():
        worst, count = 0.0, 0
        for _ in range(100):
            n = int(rng.integers(2, 7))
            A = crandn(rng, n, n)
            I = np.eye(n)
            for _ in range(3):
                x1, x2 = crandn(rng, n), crandn(rng, n)
                x1, x2 = x1 / np.linalg.norm(x1), x2 / np.linalg.norm(x2)
                mid = 0.5 * (np.vdot(x1, A @ x1) + np.vdot(x2, A @ x2))
                w = convexity_witness(I, A, x1, x2, 0.5)
                worst = max(worst, abs(np.vdot(w.x0, A @ w.x0) - mid))
                count += 1
        return worst, count

    (worst, count), dt = _timed(run)
    report(9, "Toeplitz-Hausdorff midpoints", worst <= 1e-8,
           f"{count} midpoints over 100 matrices, worst error {worst:.2e} ({dt:.1f}s)")


# 10 ----------------------------------------------------------------------

C = lambda re, im=0: [re, im]
CLI_MATRIX = {
    "check": [{"space": {"kind": "hilbert", "dim": 2}, "x": [C(1), C(0)], "y": [C(1), C(0, 1)],
               "gamma": C(0, 1)},
              {"space": {"kind": "hilbert", "dim": 2}, "x": [C(1), C(0)], "y": [C(1), C(0, 1)]}],
    "arcs": [{"space": {"kind": "lp", "p": 1, "dim": 2}, "x": [C(1), C(0)], "y": [C(1), C(0.5)]},
             {"space": {"kind": "weighted", "p": 3, "weights": [1, 2, 0.5]},
              "x": [C(1, 2), C(0, -1), C(3)], "y": [C(0.5), C(1, 1), C(-2, 0.25)]}],
    "smooth": [{"space": {"kind": "lp", "p": "inf", "dim": 2}, "x": [C(1), C(1)]}],
    "witness": [{"space": {"kind": "lp", "p": 1, "dim": 2}, "x": [C(1), C(0)],
                 "y": [C(1), C(0.5)]},
                {"space": {"kind": "lp", "p": 1, "dim": 2}, "x": [C(1), C(0)],
                 "y": [C(1), C(0.5)], "mu": C(0, 1)}],
    "numrange": [{"T": [[C(1), C(0)], [C(0), C(1)]], "A": [[C(1), C(0)], [C(0), C(0, 1)]]}],
    "bhatia-semrl": [{"T": [[C(1), C(0)], [C(0), C(1)]], "A": [[C(1), C(0)], [C(0), C(-1)]]},
                     {"T": [[C(2), C(1, 1)], [C(0), C(1)]], "A": [[C(0, 1), C(1)],
                                                                 [C(1), C(-1)]]}],
}


def test_cli_determinism(report, tmp_path):
    def invoke(cmd, path, csv):
        argv = [sys.executable, "-m", "bjortho.cli", cmd, str(path), "--seed", "11"]
        if csv is not None:
            argv += ["--csv", str(csv)]
        out = subprocess.run(argv, capture_output=True)
        return out.returncode, out.stdout, csv.read_bytes() if csv is not None else b""

    def run():
        runs, diffs = 0, []
        for cmd, problems in CLI_MATRIX.items():
            for i, prob in enumerate(problems):
                path = tmp_path / f"{cmd}{i}.json"
                path.write_text(json.dumps(prob))
                wants_csv = cmd in ("arcs", "numrange")
                first = invoke(cmd, path, tmp_path / f"{cmd}{i}a.csv" if wants_csv else None)
                second = invoke(cmd, path, tmp_path / f"{cmd}{i}b.csv" if wants_csv else None)
                runs += 1
                if first[0] != 0 or first != second:
                    diffs.append(f"{cmd}#{i} (exit {first[0]}/{second[0]})")
        return runs, diffs

    (runs, diffs), dt = _timed(run)
    report(10, "CLI determinism", not diffs,
           f"{runs} invocations run twice, {len(diffs)} differing {diffs} ({dt:.1f}s)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
