#!/usr/bin/env python3
"""Write the bundled reference objects as JSON input files for the CLI.

Usage: python scripts/make_inputs.py [outdir]   (default: ./inputs)
"""

import sys
from pathlib import Path

from tpslab import fixtures
from tpslab.fileio import save_matrix_document, save_trajectory


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("inputs")
    outdir.mkdir(parents=True, exist_ok=True)
    save_trajectory(fixtures.cnot_trajectory(), outdir / "cnot.json")
    save_trajectory(fixtures.cnot_evolution(), outdir / "cnot_evolution.json")
    save_trajectory(fixtures.sidon_trajectory(), outdir / "sidon.json")
    save_trajectory(fixtures.lowdim_trajectory(), outdir / "lowdim.json")
    dims = fixtures.QBIT_PAIR
    save_matrix_document(
        fixtures.cnot_disentangler().basis_change, dims, outdir / "disentangler.json"
    )
    save_matrix_document(
        fixtures.cnot_eigenbasis().basis_change, dims, outdir / "eigenbasis.json"
    )
    save_matrix_document(fixtures.cnot_hamiltonian(), dims, outdir / "h_cnot.json")
    for p in sorted(outdir.iterdir()):
        print(p)


if __name__ == "__main__":
    main()
