"""Context-aware coupler layout synthesis for tunable-coupler hardware.

Parses OpenQASM 2.0 circuits, analyzes qubit-pair correlation, synthesizes
an application-specific grid coupling map, and evaluates it against fixed
baselines with a deterministic SWAP-insertion router, gate/depth metrics,
and a depolarizing fidelity proxy.
"""

from .analysis import (
    CircuitStats,
    CorrelationMatrix,
    InteractionGraph,
    build_correlation,
    build_interaction_graph,
    circuit_stats,
)
from .bench import (
    BenchmarkReport,
    NoiseParams,
    emit_report,
    estimate_fidelity,
    gen_random_circuit,
    run_comparison,
)
from .errors import (
    CacoreError,
    DegenerateInputError,
    QasmSyntaxError,
    QubitIndexError,
    TopologyFormatError,
    UnknownTopologyError,
    UnroutableGateError,
    UnsupportedGateError,
)
from .ir import Circuit, Gate, GateKind, validate_circuit
from .qasm import parse_qasm, parse_qasm_file, to_qasm
from .routing import (
    Layout,
    RouteMetrics,
    RoutingResult,
    route_circuit,
    routed_metrics,
    trivial_layout,
    verify_routing,
)
from .synthesis import (
    DiagonalPartition,
    GridGraph,
    GridLayout,
    PathGraph,
    choose_grid_dims,
    connect_adjacent,
    connect_diagonals,
    generate_mwpg,
    join_components,
    partition_diagonals,
    place_on_grid,
    prune_diagonals,
    synthesize_topology,
)
from .topology import (
    Diagnostic,
    Topology,
    builtin_topology,
    grid_topology,
    line_topology,
    load_topology,
    save_topology,
    validate_topology,
)

__version__ = "0.1.0"
