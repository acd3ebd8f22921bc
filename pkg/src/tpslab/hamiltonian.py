"""Separable structure of Hamiltonians under changes of TPS.

An operator is "separable" for a bipartition when it has the interaction-free
form H1 (x) 1 + 1 (x) H2 (plus a multiple of the identity).  This module
projects a Hermitian operator orthogonally (Frobenius sense) onto that
subspace, measures the interaction remainder, and probes whether a given
basis is a stationary point of the interaction norm under unitary changes of
basis.  Stationarity is necessary but not sufficient for minimality: the
eigenbasis of a Hamiltonian can be stationary while a different basis removes
the interaction entirely, which is exactly what the C-NOT example exhibits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import HilbertDims, TPSpec
from .errors import DimensionMismatch, NotHermitian
from .linalg import anti_hermitian_basis, expm_antihermitian

HERMITICITY_TOL = 1e-10
FD_STEP = 1e-5


def _check_hermitian(h: np.ndarray, dims: HilbertDims) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.shape != (dims.n, dims.n):
        raise DimensionMismatch(f"operator is {h.shape}, dims require ({dims.n}, {dims.n})")
    dev = np.abs(h - h.conj().T).max()
    if dev > HERMITICITY_TOL:
        raise NotHermitian(f"Hermiticity deviation {dev:.3e} exceeds {HERMITICITY_TOL}")
    return h


def rebase_operator(tps: TPSpec, h) -> np.ndarray:
    """Operator in the basis defining the TPS: U H U^dag."""
    h = _check_hermitian(h, tps.dims)
    u = tps.basis_change
    out = u @ h @ u.conj().T
    return (out + out.conj().T) / 2


def partial_trace_second(h: np.ndarray, dims: HilbertDims) -> np.ndarray:
    """Trace out the second factor; result is n1 x n1."""
    return h.reshape(dims.n1, dims.n2, dims.n1, dims.n2).trace(axis1=1, axis2=3)


def partial_trace_first(h: np.ndarray, dims: HilbertDims) -> np.ndarray:
    """Trace out the first factor; result is n2 x n2."""
    return h.reshape(dims.n1, dims.n2, dims.n1, dims.n2).trace(axis1=0, axis2=2)


@dataclass(frozen=True)
class SeparableDecomposition:
    """H = h1 (x) 1 + 1 (x) h2 + trace_part * 1 + interaction.

    The split h1 (x) 1 + 1 (x) h2 is unique only up to shifting a multiple of
    the identity between the factors; the gauge is fixed by making h1 and h2
    traceless and collecting the scalar in `trace_part`.  The interaction
    remainder is Frobenius-orthogonal to the separable subspace.
    """

    h1: np.ndarray
    h2: np.ndarray
    trace_part: float
    interaction: np.ndarray
    interaction_norm: float
    dims: HilbertDims

    def separable_part(self) -> np.ndarray:
        n1, n2 = self.dims.n1, self.dims.n2
        return (
            np.kron(self.h1, np.eye(n2))
            + np.kron(np.eye(n1), self.h2)
            + self.trace_part * np.eye(self.dims.n)
        )


def separable_projection(h, dims: HilbertDims) -> SeparableDecomposition:
    """Orthogonal projection onto span{A (x) 1, 1 (x) B, 1}.

    Closed form: Pi(H) = ptr_2(H) (x) 1 / n2 + 1 (x) ptr_1(H) / n1
    - (tr H / n) * 1, from which the traceless gauge parts are extracted.
    """
    h = _check_hermitian(h, dims)
    tr = np.trace(h).real
    h1 = partial_trace_second(h, dims) / dims.n2 - (tr / dims.n) * np.eye(dims.n1)
    h1 = (h1 + h1.conj().T) / 2
    h2 = partial_trace_first(h, dims) / dims.n1 - (tr / dims.n) * np.eye(dims.n2)
    h2 = (h2 + h2.conj().T) / 2
    trace_part = tr / dims.n
    separable = (
        np.kron(h1, np.eye(dims.n2))
        + np.kron(np.eye(dims.n1), h2)
        + trace_part * np.eye(dims.n)
    )
    interaction = h - separable
    return SeparableDecomposition(
        h1=h1,
        h2=h2,
        trace_part=float(trace_part),
        interaction=interaction,
        interaction_norm=float(np.linalg.norm(interaction)),
        dims=dims,
    )


def interaction_norm(h, dims: HilbertDims) -> float:
    """Frobenius distance from H to the separable subspace."""
    return separable_projection(h, dims).interaction_norm


def stationarity_gradient(h, dims: HilbertDims, step: float = FD_STEP) -> float:
    """Norm of the first-order variation of the squared interaction norm.

    Evaluates f(V) = interaction_norm(V H V^dag)^2 along every direction of
    an orthonormal basis of the unitary group's tangent space at the
    identity, by central finite differences with the given step.  A
    near-zero return value means the current basis is a stationary point of
    the interaction norm -- possibly, but not necessarily, a minimum.
    """
    h = _check_hermitian(h, dims)

    def f(v: np.ndarray) -> float:
        return interaction_norm(v @ h @ v.conj().T, dims) ** 2

    grad_sq = 0.0
    for direction in anti_hermitian_basis(dims.n):
        plus = f(expm_antihermitian(step * direction))
        minus = f(expm_antihermitian(-step * direction))
        grad_sq += ((plus - minus) / (2 * step)) ** 2
    return float(np.sqrt(grad_sq))
