"""Shared fixtures: the six-qubit figure circuit and benchmark files."""

from pathlib import Path

import pytest

from cacore.qasm import parse_qasm_file

DATA_DIR = Path(__file__).parent / "data"

# Benchmark files bundled for the fidelity-ordering acceptance check.
ORDERING_BENCHMARKS = ("bv_n14", "qec_xz_n17", "multiplier_n15", "multiply_n13")
# Additional corpus circuits (known not to satisfy the ordering claim
# against every baseline under this router; see the routing tests).
EXTRA_BENCHMARKS = ("bv_n19", "bigadder_n18")


@pytest.fixture(scope="session")
def figure_circuit():
    """The transcribed six-qubit, eight-CNOT walkthrough circuit."""
    return parse_qasm_file(DATA_DIR / "figure6.qasm")


def benchmark_path(name: str) -> Path:
    return DATA_DIR / f"{name}.qasm"


@pytest.fixture(scope="session")
def benchmark_circuits():
    return {
        name: parse_qasm_file(benchmark_path(name))
        for name in ORDERING_BENCHMARKS + EXTRA_BENCHMARKS
    }
