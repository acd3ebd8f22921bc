"""Wire formats: trajectory/operator/TPS files and profile exports.

All files are JSON documents.  Complex numbers are two-element arrays
[re, im]; matrices are row-major lists of rows.  This is the single
convention across the repo.  Parse errors carry the JSON path of the
offending element (e.g. ``trig.harmonics[0].cos[2]``).

Trajectory files::

    {"dims": [n1, n2], "form": "trig",
     "trig": {"constant": [[re, im], ...],
              "harmonics": [{"freq": 1, "cos": [...], "sin": [...]}],
              "t_max": 1.5707}}

    {"dims": [n1, n2], "form": "hamiltonian",
     "hamiltonian": {"matrix": [[[re, im], ...], ...],
                     "initial": [[re, im], ...], "t_max": 6.2831}}

    {"dims": [n1, n2], "form": "samples",
     "samples": {"times": [...], "states": [[[re, im], ...], ...]}}

Operator and TPS files::

    {"dims": [n1, n2], "matrix": [[[re, im], ...], ...]}

Entanglement profiles export as CSV with columns ``t,entropy,product_distance``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import HilbertDims, StateVector, TPSpec
from .entanglement import EntanglementProfile
from .errors import NotNormalizable, TpslabError
from .trajectory import (
    HamiltonianTrajectory,
    Harmonic,
    SampledTrajectory,
    TrigTrajectory,
)

PROFILE_COLUMNS = ("t", "entropy", "product_distance")


class ParseError(TpslabError):
    """Malformed input file; `path` names the offending JSON element."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ParseError(path, message)


def _get(mapping, key, path: str):
    _expect(isinstance(mapping, dict), path, "expected an object")
    if key not in mapping:
        raise ParseError(f"{path}.{key}" if path else key, "missing required field")
    return mapping[key]


def _complex_in(value, path: str) -> complex:
    _expect(
        isinstance(value, (list, tuple)) and len(value) == 2,
        path,
        "complex numbers are [re, im] pairs",
    )
    re, im = value
    _expect(
        isinstance(re, (int, float)) and isinstance(im, (int, float)),
        path,
        "complex parts must be numbers",
    )
    return complex(re, im)


def _vector_in(value, n: int, path: str) -> np.ndarray:
    _expect(isinstance(value, list), path, "expected a list")
    _expect(len(value) == n, path, f"expected {n} entries, got {len(value)}")
    return np.array([_complex_in(v, f"{path}[{k}]") for k, v in enumerate(value)])


def _matrix_in(value, shape: tuple[int, int], path: str) -> np.ndarray:
    _expect(isinstance(value, list), path, "expected a list of rows")
    _expect(len(value) == shape[0], path, f"expected {shape[0]} rows, got {len(value)}")
    return np.stack(
        [_vector_in(row, shape[1], f"{path}[{i}]") for i, row in enumerate(value)]
    )


def _complex_out(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _vector_out(v) -> list:
    return [_complex_out(z) for z in np.asarray(v).ravel()]


def _matrix_out(m) -> list:
    return [_vector_out(row) for row in np.asarray(m)]


def _dims_in(doc: dict) -> HilbertDims:
    raw = _get(doc, "dims", "")
    _expect(
        isinstance(raw, list) and len(raw) == 2,
        "dims",
        "expected [n1, n2]",
    )
    _expect(
        all(isinstance(x, int) and x >= 2 for x in raw),
        "dims",
        "factor dimensions must be integers >= 2",
    )
    return HilbertDims(*raw)


def load_trajectory(path):
    """Read a trajectory document from `path` (or a pre-parsed dict)."""
    doc = _read_json(path)
    dims = _dims_in(doc)
    form = _get(doc, "form", "")
    if form == "trig":
        return _trig_in(_get(doc, "trig", ""), dims)
    if form == "hamiltonian":
        return _hamiltonian_in(_get(doc, "hamiltonian", ""), dims)
    if form == "samples":
        return _samples_in(_get(doc, "samples", ""), dims)
    raise ParseError("form", f"unknown form {form!r}; expected trig|hamiltonian|samples")


def _trig_in(node, dims: HilbertDims) -> TrigTrajectory:
    constant = _vector_in(_get(node, "constant", "trig"), dims.n, "trig.constant")
    raw_harm = _get(node, "harmonics", "trig")
    _expect(isinstance(raw_harm, list), "trig.harmonics", "expected a list")
    harmonics = []
    for k, h in enumerate(raw_harm):
        base = f"trig.harmonics[{k}]"
        freq = _get(h, "freq", base)
        _expect(isinstance(freq, int) and freq >= 1, f"{base}.freq", "expected a positive integer")
        harmonics.append(
            Harmonic(
                frequency=freq,
                cos_coeffs=_vector_in(_get(h, "cos", base), dims.n, f"{base}.cos"),
                sin_coeffs=_vector_in(_get(h, "sin", base), dims.n, f"{base}.sin"),
            )
        )
    t_max = _get(node, "t_max", "trig")
    _expect(isinstance(t_max, (int, float)) and t_max > 0, "trig.t_max", "expected a positive number")
    traj = TrigTrajectory(dims, constant, tuple(harmonics), float(t_max))
    # catch off-sphere component functions at load time
    probe = np.linalg.norm(traj.evaluate(np.linspace(0.0, traj.t_max, 17)), axis=1)
    if np.abs(probe - 1.0).max() > 1e-9:
        raise NotNormalizable(
            f"trig components leave the unit sphere by {np.abs(probe - 1.0).max():.3e}"
        )
    return traj


def _hamiltonian_in(node, dims: HilbertDims) -> HamiltonianTrajectory:
    matrix = _matrix_in(_get(node, "matrix", "hamiltonian"), (dims.n, dims.n), "hamiltonian.matrix")
    initial = _vector_in(_get(node, "initial", "hamiltonian"), dims.n, "hamiltonian.initial")
    t_max = _get(node, "t_max", "hamiltonian")
    _expect(
        isinstance(t_max, (int, float)) and t_max > 0,
        "hamiltonian.t_max",
        "expected a positive number",
    )
    return HamiltonianTrajectory(dims, matrix, StateVector.normalized(initial, dims), float(t_max))


def _samples_in(node, dims: HilbertDims) -> SampledTrajectory:
    times = _get(node, "times", "samples")
    _expect(isinstance(times, list) and len(times) >= 2, "samples.times", "expected >= 2 times")
    _expect(
        all(isinstance(t, (int, float)) for t in times),
        "samples.times",
        "times must be numbers",
    )
    states_raw = _get(node, "states", "samples")
    _expect(
        isinstance(states_raw, list) and len(states_raw) == len(times),
        "samples.states",
        "one state per time required",
    )
    states = np.stack(
        [_vector_in(s, dims.n, f"samples.states[{k}]") for k, s in enumerate(states_raw)]
    )
    return SampledTrajectory(dims, np.asarray(times, dtype=float), states)


def dump_trajectory(traj) -> dict:
    if isinstance(traj, TrigTrajectory):
        return {
            "dims": [traj.dims.n1, traj.dims.n2],
            "form": "trig",
            "trig": {
                "constant": _vector_out(traj.constant),
                "harmonics": [
                    {
                        "freq": h.frequency,
                        "cos": _vector_out(h.cos_coeffs),
                        "sin": _vector_out(h.sin_coeffs),
                    }
                    for h in traj.harmonics
                ],
                "t_max": traj.t_max,
            },
        }
    if isinstance(traj, HamiltonianTrajectory):
        return {
            "dims": [traj.dims.n1, traj.dims.n2],
            "form": "hamiltonian",
            "hamiltonian": {
                "matrix": _matrix_out(traj.hamiltonian),
                "initial": _vector_out(traj.initial.amplitudes),
                "t_max": traj.t_max,
            },
        }
    if isinstance(traj, SampledTrajectory):
        return {
            "dims": [traj.dims.n1, traj.dims.n2],
            "form": "samples",
            "samples": {
                "times": [float(t) for t in traj.times],
                "states": _matrix_out(traj.states),
            },
        }
    raise TypeError(f"not a trajectory: {type(traj)!r}")


def save_trajectory(traj, path) -> None:
    Path(path).write_text(json.dumps(dump_trajectory(traj), indent=1))


def load_matrix_document(path) -> tuple[np.ndarray, HilbertDims]:
    """Read an operator or TPS document: {"dims": [n1, n2], "matrix": rows}."""
    doc = _read_json(path)
    dims = _dims_in(doc)
    matrix = _matrix_in(_get(doc, "matrix", ""), (dims.n, dims.n), "matrix")
    return matrix, dims


def save_matrix_document(matrix, dims: HilbertDims, path) -> None:
    doc = {"dims": [dims.n1, dims.n2], "matrix": _matrix_out(matrix)}
    Path(path).write_text(json.dumps(doc, indent=1))


def load_tps(path) -> TPSpec:
    matrix, dims = load_matrix_document(path)
    return TPSpec(matrix, dims)


def profile_to_csv(profile: EntanglementProfile) -> str:
    lines = [",".join(PROFILE_COLUMNS)]
    for t, s, d in zip(profile.times, profile.entropy, profile.product_distance):
        lines.append(f"{float(t)!r},{float(s)!r},{float(d)!r}")
    return "\n".join(lines) + "\n"


def _read_json(path):
    if isinstance(path, dict):
        return path
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("<document>", f"invalid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "<document>", "top level must be an object")
    return doc
