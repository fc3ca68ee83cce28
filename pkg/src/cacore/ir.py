"""Gate and circuit types shared across the toolchain."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, unique


@unique
class GateKind(Enum):
    """Supported gate vocabulary, valued by its OpenQASM mnemonic."""

    H = "h"
    X = "x"
    Y = "y"
    Z = "z"
    S = "s"
    T = "t"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cx"
    SWAP = "swap"
    MEASURE = "measure"
    BARRIER = "barrier"


TWO_QUBIT_KINDS = frozenset({GateKind.CNOT, GateKind.SWAP})
PARAMETRIC_KINDS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ})
# Barrier and measure are bookkeeping only: they never count toward gate
# totals, depth, or correlation weight.
METRIC_EXEMPT_KINDS = frozenset({GateKind.MEASURE, GateKind.BARRIER})


@dataclass(frozen=True)
class Gate:
    """A single operation on one or more qubits.

    Two-qubit kinds (CNOT, SWAP) take exactly two operands, barrier takes
    any non-empty subset, everything else takes one. Rotation kinds carry
    an angle in radians; all other kinds carry none.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    param: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if self.kind in TWO_QUBIT_KINDS:
            if len(self.qubits) != 2:
                raise ValueError(f"{self.kind.value} takes exactly 2 qubits, got {len(self.qubits)}")
        elif self.kind is GateKind.BARRIER:
            if not self.qubits:
                raise ValueError("barrier requires at least one qubit")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind.value} takes exactly 1 qubit, got {len(self.qubits)}")
        if (self.param is not None) != (self.kind in PARAMETRIC_KINDS):
            raise ValueError(f"{self.kind.value}: angle parameter mismatch")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in TWO_QUBIT_KINDS

    @property
    def counts_toward_metrics(self) -> bool:
        return self.kind not in METRIC_EXEMPT_KINDS


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed number of logical qubits."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = "circuit"

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))


def validate_circuit(circuit: Circuit) -> list[str]:
    """Check circuit invariants, returning one diagnostic per violation.

    An empty list means every gate references in-range qubits and every
    two-qubit gate has distinct endpoints.
    """
    diagnostics: list[str] = []
    if circuit.num_qubits < 0:
        diagnostics.append(f"negative qubit count {circuit.num_qubits}")
    for idx, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            if not 0 <= q < circuit.num_qubits:
                diagnostics.append(
                    f"gate {idx} ({gate.kind.value}): qubit {q} out of range for "
                    f"{circuit.num_qubits}-qubit circuit"
                )
        if gate.is_two_qubit and gate.qubits[0] == gate.qubits[1]:
            diagnostics.append(
                f"gate {idx} ({gate.kind.value}): identical endpoints {gate.qubits[0]}"
            )
    return diagnostics
