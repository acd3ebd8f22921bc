"""Small dense linear-algebra helpers used across the package.

Everything here assumes desk-scale matrices (n <= 256) and double precision;
no attempt is made at sparse or structured representations.
"""

from __future__ import annotations

import numpy as np


def frozen_complex(a, shape=None) -> np.ndarray:
    """Copy `a` into an immutable complex ndarray, optionally checking shape."""
    arr = np.array(a, dtype=complex)
    if shape is not None and arr.shape != tuple(shape):
        raise ValueError(f"expected shape {tuple(shape)}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary via QR of a Ginibre matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    # fix the phase convention so the distribution is exactly Haar
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def nearest_unitary(a: np.ndarray) -> np.ndarray:
    """Polar projection onto the unitary group (drops the Hermitian factor)."""
    w, _, vh = np.linalg.svd(a)
    return w @ vh


def reshuffle(v: np.ndarray, n1: int, n2: int) -> np.ndarray:
    """Rearrange an (n1*n2) x (n1*n2) operator into the n1^2 x n2^2 form
    whose singular values are the operator-Schmidt coefficients."""
    return v.reshape(n1, n2, n1, n2).transpose(0, 2, 1, 3).reshape(n1 * n1, n2 * n2)


def anti_hermitian_basis(n: int) -> list[np.ndarray]:
    """Orthonormal basis of the anti-Hermitian n x n matrices.

    Orthonormal with respect to the real inner product Re tr(A^dag B); this is
    the tangent space of the unitary group at the identity, of real dimension
    n^2.  Ordering: diagonal i*E_kk first, then for each k < l the real
    rotation (E_kl - E_lk)/sqrt(2) and the imaginary one i(E_kl + E_lk)/sqrt(2).
    """
    basis = []
    for k in range(n):
        b = np.zeros((n, n), dtype=complex)
        b[k, k] = 1j
        basis.append(b)
    for k in range(n):
        for l in range(k + 1, n):
            b = np.zeros((n, n), dtype=complex)
            b[k, l] = 1.0 / np.sqrt(2)
            b[l, k] = -1.0 / np.sqrt(2)
            basis.append(b)
            b = np.zeros((n, n), dtype=complex)
            b[k, l] = 1j / np.sqrt(2)
            b[l, k] = 1j / np.sqrt(2)
            basis.append(b)
    return basis


def expm_antihermitian(a: np.ndarray) -> np.ndarray:
    """exp(A) for anti-Hermitian A via the spectral theorem (exactly unitary)."""
    mu, w = np.linalg.eigh(-1j * a)
    return (w * np.exp(1j * mu)) @ w.conj().T


def expm_frechet_factors(a: np.ndarray):
    """Spectral data for directional derivatives of exp at anti-Hermitian A.

    Returns (w, phi) such that the Frechet derivative of exp at A in direction
    E is  w @ (phi * (w^dag E w)) @ w^dag  (Daleckii-Krein formula).
    """
    mu, w = np.linalg.eigh(-1j * a)
    ea = np.exp(1j * mu)
    diff = 1j * (mu[:, None] - mu[None, :])
    num = ea[:, None] - ea[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = np.where(np.abs(diff) > 1e-14, num / diff, ea[:, None])
    return w, phi


def trapezoid_weights(times: np.ndarray) -> np.ndarray:
    """Trapezoid-rule quadrature weights for an increasing sample grid."""
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise ValueError("need at least two sample times")
    w = np.empty_like(t)
    w[0] = (t[1] - t[0]) / 2
    w[-1] = (t[-1] - t[-2]) / 2
    w[1:-1] = (t[2:] - t[:-2]) / 2
    return w
