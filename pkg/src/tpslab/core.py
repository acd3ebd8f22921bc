"""Core Hilbert-space objects: bipartite dimensions, states, and tensor
product structures (TPS).

A TPS is stored as a single representative: the unitary basis change U that
maps the reference basis to the basis defining the factorization.  Two
representatives describe the same TPS exactly when they differ by a local
unitary V1 (x) V2, which is what `tps_equivalent` tests.

Index convention: the basis label |i j> (i on the first factor, j on the
second) sits at flat index i * n2 + j, i.e. row-major reshaping throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotUnitary
from .linalg import frozen_complex, reshuffle

UNITARITY_TOL = 1e-10
STATE_NORM_TOL = 1e-12
LOCAL_PRODUCT_TOL = 1e-8


@dataclass(frozen=True)
class HilbertDims:
    """Bipartition of an n = n1 * n2 dimensional Hilbert space."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 2 or self.n2 < 2:
            raise ValueError("both factor dimensions must be at least 2")

    @property
    def n(self) -> int:
        return self.n1 * self.n2

    def flat_index(self, i: int, j: int) -> int:
        return i * self.n2 + j

    def pair_index(self, k: int) -> tuple[int, int]:
        return divmod(k, self.n2)


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state on the bipartitioned space."""

    amplitudes: np.ndarray
    dims: HilbertDims

    def __post_init__(self):
        amps = frozen_complex(self.amplitudes)
        if amps.shape != (self.dims.n,):
            raise DimensionMismatch(
                f"state has {amps.shape} amplitudes, dims require ({self.dims.n},)"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > STATE_NORM_TOL:
            raise ValueError(f"state norm {norm!r} is not 1 within {STATE_NORM_TOL}")
        object.__setattr__(self, "amplitudes", amps)

    @staticmethod
    def normalized(amplitudes, dims: HilbertDims) -> "StateVector":
        """Build a state, rescaling the given amplitudes to unit norm."""
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(amps / norm, dims)


@dataclass(frozen=True)
class TPSpec:
    """Representative of a tensor product structure: a unitary change of
    basis from the reference basis to the basis defining the TPS."""

    basis_change: np.ndarray
    dims: HilbertDims

    def __post_init__(self):
        u = frozen_complex(self.basis_change)
        n = self.dims.n
        if u.shape != (n, n):
            raise DimensionMismatch(f"basis change is {u.shape}, expected ({n}, {n})")
        dev = np.abs(u.conj().T @ u - np.eye(n)).max()
        if dev > UNITARITY_TOL:
            raise NotUnitary(f"unitarity deviation {dev:.3e} exceeds {UNITARITY_TOL}")
        object.__setattr__(self, "basis_change", u)

    @staticmethod
    def identity(dims: HilbertDims) -> "TPSpec":
        return TPSpec(np.eye(dims.n, dtype=complex), dims)


@dataclass(frozen=True)
class CoefficientMatrix:
    """n1 x n2 matrix of state amplitudes; M[i, j] is the weight of |i j>."""

    entries: np.ndarray
    dims: HilbertDims

    def __post_init__(self):
        m = frozen_complex(self.entries, (self.dims.n1, self.dims.n2))
        object.__setattr__(self, "entries", m)

    def flatten(self) -> np.ndarray:
        return np.asarray(self.entries).ravel()


def make_tps(basis_change, dims: HilbertDims) -> TPSpec:
    """Validate and wrap a unitary basis change as a TPS representative."""
    u = np.asarray(basis_change, dtype=complex)
    if u.shape != (dims.n, dims.n):
        raise DimensionMismatch(f"matrix is {u.shape}, dims require ({dims.n}, {dims.n})")
    return TPSpec(u, dims)


def reshape_coefficients(psi: StateVector) -> CoefficientMatrix:
    """Row-major reshape of the amplitudes into the n1 x n2 coefficient matrix."""
    m = psi.amplitudes.reshape(psi.dims.n1, psi.dims.n2)
    return CoefficientMatrix(m, psi.dims)


def rebase_state(tps: TPSpec, psi: StateVector) -> StateVector:
    """Coordinates of `psi` in the basis defining `tps` (i.e. U @ psi)."""
    if tps.dims != psi.dims:
        raise DimensionMismatch("TPS and state dimensions differ")
    out = tps.basis_change @ psi.amplitudes
    # U is unitary to 1e-10 only, so renormalize away the residual drift
    return StateVector.normalized(out, psi.dims)


def operator_schmidt_values(v: np.ndarray, dims: HilbertDims) -> np.ndarray:
    """Singular values of the reshuffled operator, non-increasing."""
    return np.linalg.svd(reshuffle(v, dims.n1, dims.n2), compute_uv=False)


def is_local_product_unitary(
    v, dims: HilbertDims, tol: float = LOCAL_PRODUCT_TOL
) -> bool:
    """Test whether the unitary `v` factorizes as V1 (x) V2.

    Decided through the operator-Schmidt rank: `v` is reshuffled into an
    n1^2 x n2^2 matrix and declared a product when its second singular value
    is below `tol` times the first (a relative threshold, so the test
    survives overall scaling).
    """
    v = np.asarray(v, dtype=complex)
    n = dims.n
    if v.shape != (n, n):
        raise DimensionMismatch(f"matrix is {v.shape}, dims require ({n}, {n})")
    dev = np.abs(v.conj().T @ v - np.eye(n)).max()
    if dev > UNITARITY_TOL:
        raise NotUnitary(f"unitarity deviation {dev:.3e} exceeds {UNITARITY_TOL}")
    sv = operator_schmidt_values(v, dims)
    return bool(sv[1] < tol * sv[0])


def tps_equivalent(t1: TPSpec, t2: TPSpec, tol: float = LOCAL_PRODUCT_TOL) -> bool:
    """Whether two representatives define the same TPS (differ by V1 (x) V2)."""
    if t1.dims != t2.dims:
        raise DimensionMismatch("cannot compare TPSs on different bipartitions")
    return is_local_product_unitary(
        t2.basis_change @ t1.basis_change.conj().T, t1.dims, tol
    )
