"""Command-line front door.

Subcommands::

    tpslab profile    --input traj.json [--tps tps.json] [--samples N] [--format json|csv]
    tpslab certify    --input traj.json [--samples N] [--rank-tol X]
    tpslab construct  --input traj.json [--seed S] [--restarts R] [--tol X]
    tpslab hamiltonian --input op.json [--tps tps.json] [--dims n1 n2]
    tpslab optimize   --input traj.json [--seed S] [--restarts R] [--samples N]
    tpslab reproduce  [--list]

Every command emits a self-describing JSON report (inputs digest, parameter
block, results payload, versions, wall time) unless a different format is
selected.  Exit codes: 0 success, 1 reproduction-check failure, 2 input or
configuration error, 3 dimension or validity error, 4 unsupported form.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np
import scipy

from . import __version__, reproduce
from .construct import ConstructConfig, construct_disentangler
from .core import HilbertDims, TPSpec
from .entanglement import entanglement_profile
from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotNormalizable,
    NotUnitary,
    TooFewSamples,
    UnsupportedForm,
)
from .fileio import (
    ParseError,
    _matrix_out,
    _vector_out,
    load_matrix_document,
    load_tps,
    load_trajectory,
    profile_to_csv,
)
from .hamiltonian import (
    rebase_operator,
    separable_projection,
    stationarity_gradient,
)
from .obstruction import DEFAULT_RANK_TOL, certify_no_disentangling
from .optimizer import OptimizerConfig, optimize_tps
from .trajectory import (
    HamiltonianTrajectory,
    SampledTrajectory,
    TrigTrajectory,
    evolve_under_hamiltonian,
    sample_trig,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_VALIDITY_ERROR = 3
EXIT_UNSUPPORTED = 4


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _report(command: str, inputs: dict, parameters: dict, results: dict, t0: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "parameters": parameters,
        "results": results,
        "versions": {
            "tpslab": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": sys.version.split()[0],
        },
        "wall_time_s": round(time.monotonic() - t0, 6),
    }


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        print(text)


def _emit_json(doc: dict, output) -> None:
    _emit(json.dumps(doc, indent=1), output)


def _input_digest(args, *names) -> dict:
    digest = {}
    for name in names:
        value = getattr(args, name, None)
        if value and value != "identity":
            digest[name] = {"path": str(value), "sha256": _sha256(value)}
    return digest


def _as_sampled(traj, num_samples: int) -> SampledTrajectory:
    if isinstance(traj, SampledTrajectory):
        return traj
    if isinstance(traj, TrigTrajectory):
        return sample_trig(traj, num_samples)
    if isinstance(traj, HamiltonianTrajectory):
        return evolve_under_hamiltonian(traj, num_samples)
    raise TypeError(f"not a trajectory: {type(traj)!r}")


def _load_tps_arg(arg: str, dims: HilbertDims) -> TPSpec:
    if arg == "identity":
        return TPSpec.identity(dims)
    tps = load_tps(arg)
    if tps.dims != dims:
        raise DimensionMismatch(
            f"TPS dims ({tps.dims.n1},{tps.dims.n2}) differ from trajectory dims "
            f"({dims.n1},{dims.n2})"
        )
    return tps


def cmd_profile(args) -> int:
    t0 = time.monotonic()
    sampled = _as_sampled(load_trajectory(args.input), args.samples)
    tps = _load_tps_arg(args.tps, sampled.dims)
    profile = entanglement_profile(sampled, tps)
    if args.format == "csv":
        _emit(profile_to_csv(profile), args.output)
        return EXIT_OK
    results = {
        "times": [float(t) for t in profile.times],
        "entropy": [float(x) for x in profile.entropy],
        "product_distance": [float(x) for x in profile.product_distance],
        "max_entropy": profile.max_entropy,
        "max_distance": profile.max_distance,
        "distance_measure": "chordal sqrt(2 - 2 sigma_1) to the product manifold",
    }
    params = {"tps": args.tps, "samples": args.samples, "format": args.format}
    _emit_json(
        _report("profile", _input_digest(args, "input", "tps"), params, results, t0),
        args.output,
    )
    return EXIT_OK


def cmd_certify(args) -> int:
    t0 = time.monotonic()
    sampled = _as_sampled(load_trajectory(args.input), args.samples)
    certificate = certify_no_disentangling(sampled, rank_tol=args.rank_tol)
    params = {"samples": args.samples, "rank_tol": args.rank_tol}
    _emit_json(
        _report(
            "certify",
            _input_digest(args, "input"),
            params,
            certificate.to_dict(),
            t0,
        ),
        args.output,
    )
    return EXIT_OK


def cmd_construct(args) -> int:
    t0 = time.monotonic()
    traj = load_trajectory(args.input)
    if not isinstance(traj, TrigTrajectory):
        raise UnsupportedForm("the constructive solver takes a trigonometric trajectory")
    config = ConstructConfig(restarts=args.restarts, seed=args.seed, verify_tol=args.tol)
    result = construct_disentangler(traj, config)
    results = {
        "status": "found" if result.found else "not_found",
        "message": result.message,
        "orthonormality_residual": result.orthonormality_residual,
        "disentangling_residual": result.disentangling_residual,
        "attempts": result.attempts,
    }
    if result.found:
        results["basis_change"] = _matrix_out(result.tps.basis_change)
        if result.pairing is not None:
            results["kappas"] = _vector_out(result.pairing.kappas)
            results["roots"] = {k: _vector_out([v])[0] for k, v in result.pairing.roots.items()}
            results["assignment"] = list(result.pairing.assignment)
            results["pairing"] = [list(p) for p in result.pairing.pairing]
    params = {"seed": args.seed, "restarts": args.restarts, "tol": args.tol}
    _emit_json(
        _report("construct", _input_digest(args, "input"), params, results, t0),
        args.output,
    )
    return EXIT_OK


def cmd_hamiltonian(args) -> int:
    t0 = time.monotonic()
    matrix, dims = load_matrix_document(args.input)
    if args.dims is not None and tuple(args.dims) != (dims.n1, dims.n2):
        raise DimensionMismatch(
            f"--dims {tuple(args.dims)} contradicts the file's dims ({dims.n1},{dims.n2})"
        )
    tps = _load_tps_arg(args.tps, dims)
    rebased = rebase_operator(tps, matrix)
    decomposition = separable_projection(rebased, dims)
    gradient = stationarity_gradient(rebased, dims)
    results = {
        "h1": _matrix_out(decomposition.h1),
        "h2": _matrix_out(decomposition.h2),
        "trace_part": decomposition.trace_part,
        "interaction_norm": decomposition.interaction_norm,
        "stationarity_gradient": gradient,
    }
    params = {"tps": args.tps, "dims": [dims.n1, dims.n2]}
    _emit_json(
        _report("hamiltonian", _input_digest(args, "input", "tps"), params, results, t0),
        args.output,
    )
    return EXIT_OK


def cmd_optimize(args) -> int:
    t0 = time.monotonic()
    if args.restarts < 1:
        raise _CliError(EXIT_INPUT_ERROR, "--restarts must be a positive integer")
    sampled = _as_sampled(load_trajectory(args.input), args.samples)
    config = OptimizerConfig(restarts=args.restarts, seed=args.seed, time_samples=args.samples)
    result = optimize_tps(sampled, config)
    results = {
        "objective": result.objective,
        "restart_index": result.restart_index,
        "basis_change": _matrix_out(result.best_tps.basis_change),
        "restarts": [
            {
                "index": s.index,
                "objective": s.objective,
                "surrogate_final": s.surrogate_final,
                "iterations": s.iterations,
            }
            for s in result.restarts
        ],
    }
    params = {"seed": args.seed, "restarts": args.restarts, "samples": args.samples}
    _emit_json(
        _report("optimize", _input_digest(args, "input"), params, results, t0),
        args.output,
    )
    return EXIT_OK


def cmd_reproduce(args) -> int:
    if args.list:
        for name, _ in reproduce.ALL_CHECKS:
            print(name)
        return EXIT_OK
    ok = reproduce.run_all()
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tpslab",
        description="Analyze how the choice of tensor product structure changes "
        "the entanglement of a time-evolving state.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="entanglement profile of a trajectory under a TPS")
    p.add_argument("--input", required=True, help="trajectory file (JSON)")
    p.add_argument("--tps", default="identity", help="TPS file, or 'identity' (default)")
    p.add_argument("--samples", type=int, default=200, help="time samples (default 200)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None, help="write to file instead of stdout")
    p.set_defaults(handler=cmd_profile)

    p = sub.add_parser("certify", help="obstruction certificate for a trajectory")
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
    p.add_argument("--output", default=None)
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("construct", help="solve for a disentangling TPS (2x2, frequency 1)")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8, help="verification tolerance")
    p.add_argument("--output", default=None)
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("hamiltonian", help="separable decomposition of an operator under a TPS")
    p.add_argument("--input", required=True, help="operator file (JSON)")
    p.add_argument("--tps", default="identity")
    p.add_argument("--dims", type=int, nargs=2, default=None, metavar=("N1", "N2"))
    p.add_argument("--output", default=None)
    p.set_defaults(handler=cmd_hamiltonian)

    p = sub.add_parser("optimize", help="search for the most-disentangling TPS")
    p.add_argument("--input", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--output", default=None)
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("reproduce", help="run the bundled reference checks")
    p.add_argument("--list", action="store_true", help="list checks without running")
    p.set_defaults(handler=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (DimensionMismatch, NotUnitary, NotHermitian, NotNormalizable, TooFewSamples) as exc:
        print(f"validity error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY_ERROR
    except UnsupportedForm as exc:
        print(f"unsupported form: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
