"""``bjortho`` command-line front end.

Usage::

    bjortho check|arcs|smooth|witness|numrange|bhatia-semrl problem.json
            [--csv out.csv] [--tol T] [--resolution N] [--seed S] [--timing]

A problem file names a space and the vectors or matrices of the question.
Complex numbers are ``[re, im]`` pairs and matrices are row-major nested
lists of them, e.g.::

    {"space": {"kind": "lp", "p": 2, "dim": 2},
     "x": [[1, 0], [0, 0]], "y": [[1, 0], [0, 1]], "gamma": [0, 1]}

The result is a JSON envelope on stdout. Exit codes: 0 success, 2 input
error, 3 structural violation (a computed result contradicts a theorem
it relies on).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time

import jsonschema
import numpy as np

from . import __version__
from .arcs import direction_set
from .errors import StructuralViolation
from .functionals import is_smooth_point, norming_set, orthogonality_pairs_sample, witness
from .numrange import bhatia_semrl_check, contains_zero, restricted_numerical_range
from .ortho import DEFAULT_TOL, check_bj_orthogonal, check_dir_orthogonal, is_dir_orthogonal
from .spaces import NormSpec, norm_attainment_set

COMMANDS = ("check", "arcs", "smooth", "witness", "numrange", "bhatia-semrl")

_complex = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_vector = {"type": "array", "items": _complex, "minItems": 1}
_matrix = {"type": "array", "items": _vector, "minItems": 1}

PROBLEM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "space": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["lp", "weighted", "hilbert"]},
                "p": {"oneOf": [{"type": "number", "minimum": 1},
                                {"enum": ["inf", "infinity"]}]},
                "dim": {"type": "integer", "minimum": 1},
                "weights": {"type": "array", "items": {"type": "number",
                                                       "exclusiveMinimum": 0}},
            },
        },
        "x": _vector, "y": _vector, "gamma": _complex, "mu": _complex,
        "T": _matrix, "A": _matrix, "H0": _matrix,
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "resolution": {"type": "integer", "minimum": 8},
        "seed": {"type": "integer", "minimum": 0},
        "n_samples": {"type": "integer", "minimum": 1},
        "n_directions": {"type": "integer", "minimum": 1},
    },
}

REQUIRED = {
    "check": ["space", "x", "y"],
    "arcs": ["space", "x", "y"],
    "smooth": ["space", "x"],
    "witness": ["space", "x", "y"],
    "numrange": ["A"],
    "bhatia-semrl": ["T", "A"],
}


class InputError(ValueError):
    pass


def _fmt_float(v):
    if not math.isfinite(v):
        raise ValueError(f"non-finite value {v} in result")
    if v == int(v) and abs(v) < 1e16:
        return str(int(v)) if v != 0 or math.copysign(1, v) > 0 else "0"
    return "%.17g" % v


def dumps(obj):
    """Canonical JSON: sorted keys, floats with 17 significant digits."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ",".join(json.dumps(str(k)) + ":" + dumps(v) for k, v in items) + "}"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _cvec(pairs):
    return np.array([complex(re, im) for re, im in pairs])


def _cmat(rows):
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise InputError("matrix rows have different lengths")
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def _cpair(z):
    return [float(z.real), float(z.imag)]


def parse_space(d, dim=None):
    kind = d["kind"]
    n = d.get("dim", dim)
    if kind == "weighted":
        if "weights" not in d:
            raise InputError("weighted space needs weights")
        return NormSpec.weighted(d.get("p", 2), d["weights"])
    if n is None:
        raise InputError("space needs dim")
    if kind == "hilbert":
        return NormSpec.hilbert(n)
    return NormSpec.lp(d.get("p", 2), n)


def load_problem(path):
    try:
        with open(path, encoding="utf-8") as fh:
            problem = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read problem file: {exc}") from exc
    return problem


def validate(command, problem):
    try:
        jsonschema.validate(problem, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"schema error: {exc.message}") from exc
    missing = [k for k in REQUIRED[command] if k not in problem]
    if missing:
        raise InputError(f"{command} needs {', '.join(missing)}")


DEFAULT_TOLS = {"bhatia-semrl": 1e-7}


def _params(command, problem, args):
    default = DEFAULT_TOLS.get(command, DEFAULT_TOL)
    tol = args.tol if args.tol is not None else problem.get("tol", default)
    res = args.resolution if args.resolution is not None else problem.get("resolution", 720)
    seed = args.seed if args.seed is not None else problem.get("seed")
    return float(tol), int(res), seed


def _vectors(problem):
    x = _cvec(problem["x"])
    space = parse_space(problem["space"], len(x))
    if space.dim != len(x):
        raise InputError("x does not match the space dimension")
    y = _cvec(problem["y"]) if "y" in problem else None
    if y is not None and len(y) != space.dim:
        raise InputError("y does not match the space dimension")
    return space, x, y


def _functional_payload(f):
    return [_cpair(c) for c in f.coeffs]


def run_check(problem, tol, resolution, seed, csv_rows):
    space, x, y = _vectors(problem)
    if "gamma" in problem:
        v = check_dir_orthogonal(space, x, y, complex(*problem["gamma"]), tol)
        return {"mode": "directional", "orthogonal": v.orthogonal,
                "t_star": v.minimizer.real, "min_value": v.min_value,
                "norm_x": v.norm_x, "degenerate": v.degenerate}
    v = check_bj_orthogonal(space, x, y, tol)
    return {"mode": "birkhoff_james", "orthogonal": v.orthogonal,
            "lambda_star": _cpair(v.minimizer), "min_value": v.min_value,
            "norm_x": v.norm_x, "degenerate": v.degenerate}


def run_arcs(problem, tol, resolution, seed, csv_rows):
    space, x, y = _vectors(problem)
    if not np.any(x) or not np.any(y):
        raise InputError("arcs needs non-zero x and y")
    arcs = direction_set(space, x, y, resolution=resolution, tol=tol)
    if csv_rows is not None:
        csv_rows.append("theta,is_orthogonal")
        for t in np.linspace(0.0, 2 * math.pi, resolution, endpoint=False):
            ok = is_dir_orthogonal(space, x, y, complex(math.cos(t), math.sin(t)), tol)
            csv_rows.append(f"{_fmt_float(float(t))},{int(ok)}")
    out = arcs.to_dict()
    out["arc_length"] = 0.0 if arcs.is_full else arcs.length
    return out


def run_smooth(problem, tol, resolution, seed, csv_rows):
    space, x, _ = _vectors(problem)
    if not np.any(x):
        raise InputError("smoothness is undefined at the zero vector")
    face = norming_set(space, x)
    return {"smooth": is_smooth_point(space, x),
            "norming_functional": _functional_payload(face.base),
            "free_coordinates": face.free, "active_coordinates": face.active}


def run_witness(problem, tol, resolution, seed, csv_rows):
    space, x, y = _vectors(problem)
    if not np.any(x) or not np.any(y):
        raise InputError("witness needs non-zero x and y")
    if "mu" in problem:
        pair = witness(space, x, y, complex(*problem["mu"]))
        return {"pair": None if pair is None else pair.to_dict(),
                "orthogonal": pair is not None}
    pairs = orthogonality_pairs_sample(space, x, y, problem.get("n_directions", 8),
                                       tol=tol, resolution=resolution)
    pairs = sorted((p.to_dict() for p in pairs), key=lambda d: d["theta"])
    return {"pairs": pairs, "count": len(pairs)}


def _operators(problem):
    A = _cmat(problem["A"])
    T = _cmat(problem["T"]) if "T" in problem else np.eye(A.shape[0], dtype=complex)
    if A.shape != T.shape or A.shape[0] != A.shape[1]:
        raise InputError("T and A must be square matrices of equal size")
    return T, A


def run_numrange(problem, tol, resolution, seed, csv_rows):
    if seed is None:
        raise InputError("numrange samples random vectors: --seed is required")
    T, A = _operators(problem)
    if "H0" in problem:
        basis = _cmat(problem["H0"])
        if basis.shape[0] != T.shape[0]:
            raise InputError("H0 rows must match the operator dimension")
    else:
        basis = norm_attainment_set(T).basis
    sample = restricted_numerical_range(T, A, basis, problem.get("n_samples", 2000), seed)
    if csv_rows is not None:
        csv_rows.extend(sample.to_csv().rstrip("\n").split("\n"))
    has_zero, kappa = contains_zero(T, A, basis, resolution)
    pts = sample.points
    return {"n_points": len(pts), "subspace_dim": basis.shape[1],
            "contains_zero": has_zero,
            "separating_direction": None if kappa is None else kappa.theta,
            "re_range": [float(pts.real.min()), float(pts.real.max())],
            "im_range": [float(pts.imag.min()), float(pts.imag.max())]}


def run_bhatia_semrl(problem, tol, resolution, seed, csv_rows):
    T, A = _operators(problem)
    res = bhatia_semrl_check(T, A, tol=tol, resolution=resolution)
    return {"orthogonal": res.orthogonal,
            "via_operator_norm": res.via_operator_norm,
            "via_numerical_range": res.via_numerical_range,
            "attainment_dim": res.attainment_dim,
            "witness": None if res.witness is None else [_cpair(c) for c in res.witness],
            "witness_inner_product": None if res.witness_inner_product is None
            else _cpair(res.witness_inner_product),
            "separating_direction": None if res.separating_direction is None
            else res.separating_direction.theta}


RUNNERS = {
    "check": run_check, "arcs": run_arcs, "smooth": run_smooth,
    "witness": run_witness, "numrange": run_numrange, "bhatia-semrl": run_bhatia_semrl,
}


def dispatch(command, problem, tol=None, resolution=None, seed=None, csv_rows=None):
    """Validate ``problem`` and run ``command``; returns the result envelope dict."""
    args = argparse.Namespace(tol=tol, resolution=resolution, seed=seed)
    validate(command, problem)
    tol, resolution, seed = _params(command, problem, args)
    try:
        result = RUNNERS[command](problem, tol, resolution, seed, csv_rows)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed problem: {exc}") from exc
    # the echoed problem carries every parameter used, so re-dispatching it
    # reproduces the envelope exactly
    echoed = dict(problem, tol=tol, resolution=resolution)
    if seed is not None:
        echoed["seed"] = seed
    digest = hashlib.sha256(dumps(echoed).encode()).hexdigest()
    return {"command": command, "library_version": __version__,
            "inputs_digest": digest, "problem": echoed, "result": result,
            "tolerances": {"tol": tol, "resolution": resolution}}


def build_parser():
    parser = argparse.ArgumentParser(prog="bjortho", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("problem", help="problem JSON file")
        p.add_argument("--csv", help="write plot data to this CSV file")
        p.add_argument("--tol", type=float, help="predicate tolerance")
        p.add_argument("--resolution", type=int, help="angular scan resolution")
        p.add_argument("--seed", type=int, help="random seed (required for numrange)")
        p.add_argument("--timing", action="store_true",
                       help="add wall time to the envelope (output is then not reproducible)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    csv_rows = [] if args.csv else None
    try:
        problem = load_problem(args.problem)
        env = dispatch(args.command, problem, args.tol, args.resolution, args.seed, csv_rows)
    except StructuralViolation as exc:
        print(f"bjortho: structural violation: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"bjortho: input error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        env["wall_time"] = time.perf_counter() - start
    if csv_rows is not None:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(csv_rows) + "\n")
    sys.stdout.write(dumps(env) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
