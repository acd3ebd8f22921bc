"""Certificates that no fixed TPS can disentangle a trajectory.

The test rests on a linear-independence criterion: if the pairwise products
a_p(t) a_q(t) of the trajectory's component functions are linearly
independent as continuous functions on [0, T], then no unitary basis change
can make the trajectory a product state at all times.  Independence is
decided through the L2 Gram matrix of the products on the sample grid: L2
independence implies C^0 independence for continuous functions, so a
full-rank Gram matrix is a sound certificate.

Rank deficiency proves nothing in either direction (the C-NOT evolution is
rank-deficient *and* admits a disentangling TPS), so the verdict in that case
is `INCONCLUSIVE` -- never upgraded.  One cheap sufficient condition for
existence is checked first: when the states span a subspace of dimension at
most max(n1, n2), a disentangling TPS always exists (send a basis of the
span to |1 1>, |2 1>, ...), and the verdict is `EXISTS_BY_LOW_DIMENSION`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .trajectory import SampledTrajectory
from .errors import TooFewSamples
from .linalg import trapezoid_weights

DEFAULT_RANK_TOL = 1e-8
OVERSAMPLING_FACTOR = 4


class Verdict(enum.Enum):
    CERTIFIED_NO = "CertifiedNoDisentanglingTPS"
    INCONCLUSIVE = "Inconclusive"
    EXISTS_LOW_DIM = "ExistsByLowDimension"


@dataclass(frozen=True)
class ProductGram:
    """L2 Gram matrix of the pairwise component products.

    `pair_index[p]` names the unordered component pair ((i, j), (k, l)) whose
    product function f_p = a_{i,j} a_{k,l} sits at row/column p; products are
    symmetric, so only p <= q pairs appear, nm(nm+1)/2 of them in total.
    """

    pair_index: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    gram: np.ndarray
    quadrature_nodes: int

    @property
    def size(self) -> int:
        return self.gram.shape[0]


def component_pairs(dims) -> tuple:
    pairs = []
    for p in range(dims.n):
        for q in range(p, dims.n):
            pairs.append((dims.pair_index(p), dims.pair_index(q)))
    return tuple(pairs)


def build_product_gram(traj: SampledTrajectory) -> ProductGram:
    """Assemble G[p, q] = integral of f_p conj(f_q) dt by trapezoid quadrature."""
    n = traj.dims.n
    n_pairs = n * (n + 1) // 2
    if len(traj) < OVERSAMPLING_FACTOR * n_pairs:
        raise TooFewSamples(
            f"need at least {OVERSAMPLING_FACTOR * n_pairs} samples for a "
            f"{n_pairs}-pair Gram matrix, got {len(traj)}"
        )
    a = traj.states.T  # (n, K) component samples
    rows = np.empty((n_pairs, len(traj)), dtype=complex)
    r = 0
    for p in range(n):
        for q in range(p, n):
            rows[r] = a[p] * a[q]
            r += 1
    w = trapezoid_weights(traj.times)
    gram = (rows * w) @ rows.conj().T
    gram = (gram + gram.conj().T) / 2  # enforce exact Hermiticity
    return ProductGram(component_pairs(traj.dims), gram, len(traj))


@dataclass(frozen=True)
class Certificate:
    """Outcome of the obstruction test, with diagnostics for auditing."""

    verdict: Verdict
    numerical_rank: int
    full_rank: int
    min_max_eig_ratio: float
    trajectory_span_dim: int
    rank_tol: float
    gram_eigenvalues: np.ndarray

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "numerical_rank": self.numerical_rank,
            "full_rank": self.full_rank,
            "min_max_eig_ratio": self.min_max_eig_ratio,
            "trajectory_span_dim": self.trajectory_span_dim,
            "rank_tol": self.rank_tol,
            "gram_eigenvalues": list(map(float, self.gram_eigenvalues)),
        }


def _numerical_rank(eigs: np.ndarray, rank_tol: float) -> int:
    top = eigs.max()
    if top <= 0:
        return 0
    return int((eigs > rank_tol * top).sum())


def trajectory_span_dimension(traj: SampledTrajectory, rank_tol: float) -> int:
    """Numerical dimension of span{psi(t)} via the component Gram matrix."""
    w = trapezoid_weights(traj.times)
    a = traj.states.T
    gram = (a * w) @ a.conj().T
    gram = (gram + gram.conj().T) / 2
    eigs = np.linalg.eigvalsh(gram)
    return _numerical_rank(eigs, rank_tol)


def certify_no_disentangling(
    traj: SampledTrajectory, rank_tol: float = DEFAULT_RANK_TOL
) -> Certificate:
    """Run the obstruction test on a sampled trajectory.

    The eigenvalues of the product Gram matrix are thresholded at
    `rank_tol` times the largest one.  Full rank certifies that no
    disentangling TPS exists; a trajectory span of dimension at most
    max(n1, n2) certifies that one does (and takes precedence -- the two
    can never fire together, since a low-dimensional span forces product
    dependencies); anything else is inconclusive.
    """
    gram = build_product_gram(traj)
    eigs = np.linalg.eigvalsh(gram.gram)
    rank = _numerical_rank(eigs, rank_tol)
    full = gram.size
    span_dim = trajectory_span_dimension(traj, rank_tol)

    if span_dim <= max(traj.dims.n1, traj.dims.n2):
        verdict = Verdict.EXISTS_LOW_DIM
    elif rank == full:
        verdict = Verdict.CERTIFIED_NO
    else:
        verdict = Verdict.INCONCLUSIVE

    return Certificate(
        verdict=verdict,
        numerical_rank=rank,
        full_rank=full,
        min_max_eig_ratio=float(eigs.min() / eigs.max()),
        trajectory_span_dim=span_dim,
        rank_tol=rank_tol,
        gram_eigenvalues=np.sort(eigs)[::-1],
    )
