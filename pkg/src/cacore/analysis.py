"""Qubit-pair correlation and circuit statistics.

The correlation matrix counts two-qubit gates per unordered qubit pair;
one-qubit gates, measures, and barriers contribute nothing. A SWAP in the
source circuit counts as a single interaction, the same as a CNOT.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .ir import Circuit, GateKind


def _ordered(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric qubit-pair interaction counts, stored once per pair (i < j)."""

    num_qubits: int
    weights: dict[tuple[int, int], int]

    def weight(self, a: int, b: int) -> int:
        return self.weights.get(_ordered(a, b), 0)

    def has_edge(self, a: int, b: int) -> bool:
        return self.weight(a, b) > 0

    @property
    def total_weight(self) -> int:
        return sum(self.weights.values())


@dataclass(frozen=True)
class InteractionGraph:
    """One node per qubit (isolated ones included), weighted interaction edges."""

    num_qubits: int
    edges: dict[tuple[int, int], int]

    @property
    def nodes(self) -> range:
        return range(self.num_qubits)


def build_correlation(circuit: Circuit) -> CorrelationMatrix:
    """Count two-qubit gates per qubit pair."""
    counts: Counter[tuple[int, int]] = Counter()
    for gate in circuit.gates:
        if gate.is_two_qubit:
            counts[_ordered(*gate.qubits)] += 1
    return CorrelationMatrix(circuit.num_qubits, dict(sorted(counts.items())))


def build_interaction_graph(matrix: CorrelationMatrix) -> InteractionGraph:
    return InteractionGraph(matrix.num_qubits, dict(matrix.weights))


@dataclass(frozen=True)
class CircuitStats:
    """Gate and depth totals under the unit-time ASAP convention.

    ``swap_count`` is the number of SWAP gates present in the circuit.
    Depth charges every computational gate (SWAP included) one time step;
    barriers synchronize their qubits without consuming a step, and
    measures are ignored entirely.
    """

    depth: int
    total_gates: int
    one_qubit_gates: int
    two_qubit_gates: int
    swap_count: int

    @property
    def total_swap_gates(self) -> int:
        return self.swap_count

    def as_dict(self) -> dict[str, int]:
        return {
            "depth": self.depth,
            "total_gates": self.total_gates,
            "one_qubit_gates": self.one_qubit_gates,
            "two_qubit_gates": self.two_qubit_gates,
            "swap_count": self.swap_count,
        }


def circuit_stats(circuit: Circuit) -> CircuitStats:
    busy_until: dict[int, int] = {}
    total = one_qubit = two_qubit = swaps = 0
    for gate in circuit.gates:
        if gate.kind is GateKind.BARRIER:
            fence = max((busy_until.get(q, 0) for q in gate.qubits), default=0)
            for q in gate.qubits:
                busy_until[q] = fence
            continue
        if gate.kind is GateKind.MEASURE:
            continue
        finish = 1 + max(busy_until.get(q, 0) for q in gate.qubits)
        for q in gate.qubits:
            busy_until[q] = finish
        total += 1
        if gate.is_two_qubit:
            two_qubit += 1
            if gate.kind is GateKind.SWAP:
                swaps += 1
        else:
            one_qubit += 1
    depth = max(busy_until.values(), default=0)
    return CircuitStats(depth, total, one_qubit, two_qubit, swaps)
