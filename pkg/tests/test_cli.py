import json

import numpy as np
import pytest

from tpslab import fixtures
from tpslab.cli import main
from tpslab.fileio import save_matrix_document, save_trajectory

from helpers import QBITS


@pytest.fixture
def files(tmp_path):
    paths = {
        "cnot": tmp_path / "cnot.json",
        "sidon": tmp_path / "sidon.json",
        "lowdim": tmp_path / "lowdim.json",
        "disentangler": tmp_path / "disentangler.json",
        "eigenbasis": tmp_path / "eigenbasis.json",
        "h_cnot": tmp_path / "h_cnot.json",
    }
    save_trajectory(fixtures.cnot_trajectory(), paths["cnot"])
    save_trajectory(fixtures.sidon_trajectory(), paths["sidon"])
    save_trajectory(fixtures.lowdim_trajectory(), paths["lowdim"])
    save_matrix_document(
        fixtures.cnot_disentangler().basis_change, QBITS, paths["disentangler"]
    )
    save_matrix_document(
        fixtures.cnot_eigenbasis().basis_change, QBITS, paths["eigenbasis"]
    )
    save_matrix_document(fixtures.cnot_hamiltonian(), QBITS, paths["h_cnot"])
    return {k: str(v) for k, v in paths.items()}


def run(args):
    return main(args)


def read(path):
    return json.loads(open(path).read())


def test_profile_identity_reaches_ln2(files, tmp_path):
    out = tmp_path / "report.json"
    assert run(["profile", "--input", files["cnot"], "--output", str(out)]) == 0
    report = read(out)
    assert report["command"] == "profile"
    assert report["results"]["max_entropy"] == pytest.approx(np.log(2), abs=1e-12)
    assert "sha256" in report["inputs"]["input"]


def test_profile_with_disentangler_is_flat(files, tmp_path):
    out = tmp_path / "report.json"
    code = run(
        ["profile", "--input", files["cnot"], "--tps", files["disentangler"], "--output", str(out)]
    )
    assert code == 0
    assert read(out)["results"]["max_entropy"] < 1e-10


def test_profile_csv_output(files, tmp_path):
    out = tmp_path / "profile.csv"
    code = run(
        ["profile", "--input", files["cnot"], "--format", "csv", "--samples", "7", "--output", str(out)]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "t,entropy,product_distance"
    assert len(lines) == 8


def test_certify_verdicts(files, tmp_path):
    out = tmp_path / "cert.json"
    assert run(["certify", "--input", files["sidon"], "--output", str(out)]) == 0
    results = read(out)["results"]
    assert results["verdict"] == "CertifiedNoDisentanglingTPS"
    assert results["numerical_rank"] == 10

    assert run(["certify", "--input", files["cnot"], "--output", str(out)]) == 0
    results = read(out)["results"]
    assert results["verdict"] == "Inconclusive"
    assert results["numerical_rank"] == 5

    assert run(["certify", "--input", files["lowdim"], "--output", str(out)]) == 0
    assert read(out)["results"]["verdict"] == "ExistsByLowDimension"


def test_certify_report_is_rerunnable(files, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["certify", "--input", files["cnot"], "--output", str(first)]) == 0
    params = read(first)["parameters"]
    code = run(
        [
            "certify",
            "--input",
            files["cnot"],
            "--samples",
            str(params["samples"]),
            "--rank-tol",
            str(params["rank_tol"]),
            "--output",
            str(second),
        ]
    )
    assert code == 0
    assert read(first)["results"] == read(second)["results"]


def test_construct_finds_and_reports_parameters(files, tmp_path):
    out = tmp_path / "construct.json"
    assert run(["construct", "--input", files["cnot"], "--output", str(out)]) == 0
    results = read(out)["results"]
    assert results["status"] == "found"
    assert results["disentangling_residual"] < 1e-8
    kappas = np.array([complex(re, im) for re, im in results["kappas"]])
    assert np.allclose(kappas, 0.25, atol=1e-8)
    assert len(results["basis_change"]) == 4


def test_construct_not_found_is_exit_zero(files, tmp_path):
    # entangled span-2 trajectory: solver declines without erroring
    doc = {
        "dims": [2, 2],
        "form": "trig",
        "trig": {
            "constant": [[0, 0]] * 4,
            "harmonics": [
                {
                    "freq": 1,
                    "cos": [[2**-0.5, 0], [0, 0], [0, 0], [2**-0.5, 0]],
                    "sin": [[0, 0], [2**-0.5, 0], [2**-0.5, 0], [0, 0]],
                }
            ],
            "t_max": 3.14159,
        },
    }
    path = tmp_path / "hard.json"
    path.write_text(json.dumps(doc))
    out = tmp_path / "construct.json"
    assert run(["construct", "--input", str(path), "--restarts", "2", "--output", str(out)]) == 0
    assert read(out)["results"]["status"] == "not_found"


def test_construct_multifrequency_is_unsupported(files):
    assert run(["construct", "--input", files["sidon"]]) == 4


def test_hamiltonian_report(files, tmp_path):
    out = tmp_path / "ham.json"
    code = run(
        [
            "hamiltonian",
            "--input",
            files["h_cnot"],
            "--tps",
            files["disentangler"],
            "--output",
            str(out),
        ]
    )
    assert code == 0
    results = read(out)["results"]
    assert results["interaction_norm"] < 1e-10
    assert results["stationarity_gradient"] < 1e-6


def test_hamiltonian_eigenbasis_is_stationary_but_not_separable(files, tmp_path):
    out = tmp_path / "ham.json"
    code = run(
        [
            "hamiltonian",
            "--input",
            files["h_cnot"],
            "--tps",
            files["eigenbasis"],
            "--output",
            str(out),
        ]
    )
    assert code == 0
    results = read(out)["results"]
    assert results["interaction_norm"] == pytest.approx(1.0, abs=1e-9)
    assert results["stationarity_gradient"] < 1e-6


def test_hamiltonian_rejects_non_hermitian(files, tmp_path):
    doc = {"dims": [2, 2], "matrix": [[[0, 0]] * 4 for _ in range(4)]}
    doc["matrix"][0][1] = [1.0, 0.0]  # upper entry with no mirror
    path = tmp_path / "bad_op.json"
    path.write_text(json.dumps(doc))
    assert run(["hamiltonian", "--input", str(path)]) == 3


def test_hamiltonian_dims_flag_must_match(files):
    assert run(["hamiltonian", "--input", files["h_cnot"], "--dims", "4", "2"]) == 3


def test_optimize_rejects_zero_restarts(files):
    assert run(["optimize", "--input", files["cnot"], "--restarts", "0"]) == 2


def test_optimize_report(files, tmp_path):
    out = tmp_path / "opt.json"
    code = run(
        [
            "optimize",
            "--input",
            files["lowdim"],
            "--restarts",
            "2",
            "--samples",
            "60",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    results = read(out)["results"]
    # sqrt(2 - 2 sigma_1) floors near sqrt(eps) even for exact product states
    assert results["objective"] < 1e-6
    assert len(results["restarts"]) == 2


def test_malformed_file_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dims": [2, 2], "form": "trig", "trig": {"constant": [[0, 0]] * 3, "harmonics": [], "t_max": 1}}))
    assert main(["profile", "--input", str(path)]) == 2
    assert "trig.constant" in capsys.readouterr().err


def test_missing_file_is_input_error(tmp_path):
    assert main(["profile", "--input", str(tmp_path / "nope.json")]) == 2


def test_dimension_mismatch_is_validity_error(files, tmp_path):
    doc = {"dims": [2, 3], "matrix": [[[1 if i == j else 0, 0] for j in range(6)] for i in range(6)]}
    path = tmp_path / "tps6.json"
    path.write_text(json.dumps(doc))
    assert main(["profile", "--input", files["cnot"], "--tps", str(path)]) == 3


def test_reproduce_list(capsys):
    assert main(["reproduce", "--list"]) == 0
    out = capsys.readouterr().out
    assert "cnot-disentangling" in out
    assert "optimizer-sidon-floor" in out
