import numpy as np
import pytest

from tpslab import fixtures
from tpslab.errors import TooFewSamples
from tpslab.obstruction import (
    Verdict,
    build_product_gram,
    certify_no_disentangling,
    component_pairs,
    trajectory_span_dimension,
)
from tpslab.trajectory import SampledTrajectory, sample_trig

from helpers import QBITS


def test_pair_index_enumeration():
    pairs = component_pairs(QBITS)
    assert len(pairs) == 10
    assert pairs[0] == ((0, 0), (0, 0))
    assert pairs[-1] == ((1, 1), (1, 1))


def test_gram_cnot_zero_rows():
    gram = build_product_gram(sample_trig(fixtures.cnot_trajectory(), 400))
    assert gram.gram.shape == (10, 10)
    # every pair touching the identically-zero second component vanishes
    zero_rows = [r for r, pair in enumerate(gram.pair_index) if (0, 1) in pair]
    assert len(zero_rows) == 4
    for r in zero_rows:
        assert np.abs(gram.gram[r]).max() == 0.0
        assert np.abs(gram.gram[:, r]).max() == 0.0


def test_gram_constant_state_single_entry():
    states = np.tile(np.array([1, 0, 0, 0], dtype=complex), (50, 1))
    sampled = SampledTrajectory(QBITS, np.linspace(0, 1, 50), states)
    gram = build_product_gram(sampled).gram
    assert np.count_nonzero(np.abs(gram) > 1e-15) == 1
    assert gram[0, 0] == pytest.approx(1.0)  # integral of |1|^2 over [0, 1]


def test_gram_sidon_is_scaled_identity():
    sampled = sample_trig(fixtures.sidon_trajectory(), 400)
    gram = build_product_gram(sampled).gram
    assert np.abs(gram - (2 * np.pi / 16) * np.eye(10)).max() < 1e-12


def test_gram_too_few_samples():
    with pytest.raises(TooFewSamples):
        build_product_gram(sample_trig(fixtures.cnot_trajectory(), 20))


def test_certify_sidon():
    cert = certify_no_disentangling(sample_trig(fixtures.sidon_trajectory(), 400))
    assert cert.verdict is Verdict.CERTIFIED_NO
    assert cert.numerical_rank == cert.full_rank == 10
    assert cert.trajectory_span_dim == 4


def test_certify_cnot_inconclusive():
    cert = certify_no_disentangling(sample_trig(fixtures.cnot_trajectory(), 400))
    assert cert.verdict is Verdict.INCONCLUSIVE
    assert cert.numerical_rank == 5
    assert cert.full_rank == 10
    assert cert.trajectory_span_dim == 3


def test_certify_lowdim():
    cert = certify_no_disentangling(sample_trig(fixtures.lowdim_trajectory(), 400))
    assert cert.verdict is Verdict.EXISTS_LOW_DIM
    assert cert.trajectory_span_dim == 2


@pytest.mark.parametrize(
    "factory",
    [fixtures.sidon_trajectory, fixtures.cnot_trajectory, fixtures.lowdim_trajectory],
)
def test_verdict_stable_under_doubling(factory):
    a = certify_no_disentangling(sample_trig(factory(), 400))
    b = certify_no_disentangling(sample_trig(factory(), 800))
    assert a.verdict is b.verdict
    assert a.numerical_rank == b.numerical_rank


def test_rank_invariant_under_global_phase():
    base = sample_trig(fixtures.cnot_trajectory(), 400)
    twisted = SampledTrajectory(QBITS, base.times, base.states * np.exp(1j * 0.813))
    a = certify_no_disentangling(base)
    b = certify_no_disentangling(twisted)
    assert a.verdict is b.verdict
    assert a.numerical_rank == b.numerical_rank


@pytest.mark.parametrize(
    "factory", [fixtures.sidon_trajectory, fixtures.cnot_trajectory]
)
def test_rank_invariant_under_time_reparametrization(factory):
    traj = factory()
    times = np.linspace(0.0, traj.t_max, 400)
    warped = traj.t_max * np.sin(np.pi * times / (2 * traj.t_max))  # smooth bijection
    states = traj.evaluate(warped)
    reparam = SampledTrajectory(QBITS, times, states)
    a = certify_no_disentangling(sample_trig(traj, 400))
    b = certify_no_disentangling(reparam)
    assert a.verdict is b.verdict
    assert a.numerical_rank == b.numerical_rank


def test_certificate_diagnostics():
    cert = certify_no_disentangling(sample_trig(fixtures.sidon_trajectory(), 400))
    doc = cert.to_dict()
    assert doc["verdict"] == "CertifiedNoDisentanglingTPS"
    assert len(doc["gram_eigenvalues"]) == 10
    assert doc["min_max_eig_ratio"] > 1e-8
    assert cert.gram_eigenvalues.min() > -1e-10


def test_span_dimension_of_constant_state():
    states = np.tile(np.array([1, 0, 0, 0], dtype=complex), (80, 1))
    sampled = SampledTrajectory(QBITS, np.linspace(0, 1, 80), states)
    assert trajectory_span_dimension(sampled, 1e-8) == 1
    cert = certify_no_disentangling(sampled)
    assert cert.verdict is Verdict.EXISTS_LOW_DIM
