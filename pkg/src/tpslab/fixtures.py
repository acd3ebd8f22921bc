"""Bundled reference objects: the C-NOT gate evolution with its known
closed-form disentangler, and the standard test trajectories used by the
reproduction suite and the CLI."""

from __future__ import annotations

import numpy as np

from .core import HilbertDims, StateVector, TPSpec
from .trajectory import Harmonic, HamiltonianTrajectory, TrigTrajectory

QBIT_PAIR = HilbertDims(2, 2)


def cnot_trajectory() -> TrigTrajectory:
    """(1, 0, cos t, sin t)/sqrt(2) on [0, pi/2]: a C-NOT gate turning
    (|0> + |1>)/sqrt(2) (x) |0> into the Bell state (|00> + |11>)/sqrt(2)."""
    s2 = np.sqrt(2)
    return TrigTrajectory(
        dims=QBIT_PAIR,
        constant=np.array([1, 0, 0, 0]) / s2,
        harmonics=(
            Harmonic(
                frequency=1,
                cos_coeffs=np.array([0, 0, 1, 0]) / s2,
                sin_coeffs=np.array([0, 0, 0, 1]) / s2,
            ),
        ),
        t_max=np.pi / 2,
    )


def cnot_disentangler() -> TPSpec:
    """The closed-form basis change in which the C-NOT evolution stays a
    product state for all t; the rebased trajectory factorizes as
    (e^{-it}/4) [(e^{it}-1), (e^{it}+1)] (x) [(e^{it}-1), (e^{it}+1)]."""
    u = np.array(
        [
            [-1, 0, 1, 0],
            [0, 1j, 0, 1j],
            [0, -1j, 0, 1j],
            [1, 0, 1, 0],
        ],
        dtype=complex,
    ) / np.sqrt(2)
    return TPSpec(u, QBIT_PAIR)


def cnot_hamiltonian() -> np.ndarray:
    """Generator of the C-NOT trajectory under exp(+iHt)."""
    h = np.zeros((4, 4), dtype=complex)
    h[2, 3] = 1j
    h[3, 2] = -1j
    return h


def cnot_evolution() -> HamiltonianTrajectory:
    s2 = np.sqrt(2)
    return HamiltonianTrajectory(
        dims=QBIT_PAIR,
        hamiltonian=cnot_hamiltonian(),
        initial=StateVector(np.array([1, 0, 1, 0]) / s2, QBIT_PAIR),
        t_max=np.pi / 2,
    )


def cnot_eigenbasis() -> TPSpec:
    """Basis change to the eigenbasis of the C-NOT generator, ordered so the
    rebased operator reads diag(0, 0, 1, -1)."""
    s2 = np.sqrt(2)
    v = np.eye(4, dtype=complex)
    v[2] = np.array([0, 0, -1j, 1]) / s2  # bra of the +1 eigenvector (i, 1)/sqrt(2)
    v[3] = np.array([0, 0, 1j, 1]) / s2  # bra of the -1 eigenvector (-i, 1)/sqrt(2)
    return TPSpec(v, QBIT_PAIR)


def separable_target() -> np.ndarray:
    """(sigma_x (x) 1 + 1 (x) sigma_x) / 2: the C-NOT generator seen through
    the disentangling basis change."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    return (np.kron(sx, np.eye(2)) + np.kron(np.eye(2), sx)) / 2


def sidon_trajectory() -> TrigTrajectory:
    """(1, e^{it}, e^{3it}, e^{7it})/2 on [0, 2pi].

    The frequencies {0, 1, 3, 7} form a Sidon set: all pairwise sums are
    distinct, so the ten pairwise component products are ten distinct complex
    exponentials and the independence obstruction applies in full force.
    """
    half = 0.5
    constant = np.array([half, 0, 0, 0], dtype=complex)
    harmonics = []
    for slot, freq in ((1, 1), (2, 3), (3, 7)):
        cos = np.zeros(4, dtype=complex)
        sin = np.zeros(4, dtype=complex)
        cos[slot] = half
        sin[slot] = half * 1j  # e^{ift} = cos(ft) + i sin(ft)
        harmonics.append(Harmonic(frequency=freq, cos_coeffs=cos, sin_coeffs=sin))
    return TrigTrajectory(
        dims=QBIT_PAIR, constant=constant, harmonics=tuple(harmonics), t_max=2 * np.pi
    )


def lowdim_trajectory() -> TrigTrajectory:
    """(cos t, sin t, 0, 0): confined to a two-dimensional subspace, hence
    disentangled by inspection (it is |psi_1(t)> (x) |first basis vector>)."""
    cos = np.zeros(4, dtype=complex)
    sin = np.zeros(4, dtype=complex)
    cos[0] = 1
    sin[1] = 1
    return TrigTrajectory(
        dims=QBIT_PAIR,
        constant=np.zeros(4, dtype=complex),
        harmonics=(Harmonic(frequency=1, cos_coeffs=cos, sin_coeffs=sin),),
        t_max=2 * np.pi,
    )
