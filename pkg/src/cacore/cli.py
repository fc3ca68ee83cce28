"""Command-line entry point.

Commands: synth, route, bench, gen, validate. Exit codes: 0 success,
1 usage error, 2 input error (missing or malformed files), 3 pipeline
error, and 4 when a bench run completes with some failed cells.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .bench import (
    NoiseParams,
    emit_report,
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
from .ir import validate_circuit
from .qasm import parse_qasm_file, to_qasm
from .routing import route_circuit, verify_routing
from .synthesis import synthesize_topology
from .topology import (
    builtin_topology,
    load_topology,
    save_topology,
    topology_errors,
    validate_topology,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_PIPELINE = 3
EXIT_PARTIAL = 4

_INPUT_ERRORS = (
    OSError,
    QasmSyntaxError,
    UnsupportedGateError,
    QubitIndexError,
    TopologyFormatError,
    UnknownTopologyError,
)
_PIPELINE_ERRORS = (DegenerateInputError, UnroutableGateError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors instead of argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _resolve_topology(spec: str):
    """Builtin names take priority; anything else is read as a JSON file."""
    try:
        return builtin_topology(spec)
    except UnknownTopologyError:
        if Path(spec).exists():
            return load_topology(spec)
        raise


def _parse_qubit_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part]


def _split_names(text: str) -> list[str]:
    """Split a comma list, keeping commas inside parentheses (grid(2,3))."""
    names = re.split(r",(?![^(]*\))", text)
    return [name.strip() for name in names if name.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cacore", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="synthesize a coupling map for a circuit")
    p_synth.add_argument("circuit", help="OpenQASM 2.0 input file")
    p_synth.add_argument("-o", "--output", required=True, help="topology JSON output path")
    p_synth.add_argument(
        "--drop-synthetic",
        action="store_true",
        help="omit zero-correlation joining couplers from the topology",
    )

    p_route = sub.add_parser("route", help="route a circuit on a topology")
    p_route.add_argument("circuit", help="OpenQASM 2.0 input file")
    p_route.add_argument(
        "-t", "--topology", required=True, help="builtin topology name or JSON file path"
    )
    p_route.add_argument("--metrics", help="write metrics JSON to this path")
    p_route.add_argument("--routed-qasm", help="write the routed circuit as OpenQASM")

    p_gen = sub.add_parser("gen", help="generate a seeded random circuit")
    p_gen.add_argument("-n", "--qubits", type=int, required=True)
    p_gen.add_argument("--gates", type=int, default=2000, help="target gate count")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--output", required=True, help="QASM output path")

    p_bench = sub.add_parser("bench", help="compare synthesized topologies against baselines")
    p_bench.add_argument("--qubits", default="10..20", help="range a..b or comma list")
    p_bench.add_argument("--seeds", type=int, default=10, help="random seeds per qubit count")
    p_bench.add_argument("--gates", type=int, default=2000, help="target gates per circuit")
    p_bench.add_argument(
        "--baselines",
        default="almaden20,cairo27,prague33,sycamore53",
        help="comma-separated builtin names or topology file paths",
    )
    p_bench.add_argument(
        "--eps",
        default="0.0005,0.001,0.002,0.005",
        help="comma-separated depolarizing error rates",
    )
    p_bench.add_argument("-o", "--output", required=True, help="output directory")
    p_bench.add_argument(
        "--format", default="csv,json", help="report formats to emit (csv, json)"
    )

    p_val = sub.add_parser("validate", help="validate a circuit (.qasm) or topology (.json)")
    p_val.add_argument("path")

    return parser


def _cmd_synth(args) -> int:
    circuit = parse_qasm_file(args.circuit)
    problems = validate_circuit(circuit)
    if problems:
        for message in problems:
            print(f"error: {message}", file=sys.stderr)
        return EXIT_PIPELINE
    topology = synthesize_topology(circuit, keep_synthetic=not args.drop_synthetic)
    errors = topology_errors(topology)
    if errors:
        for diag in errors:
            print(f"error: {diag.message}", file=sys.stderr)
        return EXIT_PIPELINE
    save_topology(topology, args.output)
    print(f"wrote {topology.num_qubits}-qubit topology ({len(topology.edges)} couplers) to {args.output}")
    return EXIT_OK


def _cmd_route(args) -> int:
    circuit = parse_qasm_file(args.circuit)
    topology = _resolve_topology(args.topology)
    result = route_circuit(circuit, topology)
    verified = verify_routing(circuit, result, topology)
    payload = {
        "circuit": circuit.name,
        "topology": topology.name,
        "verified": verified,
        **result.metrics.as_dict(),
    }
    if args.metrics:
        Path(args.metrics).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.routed_qasm:
        Path(args.routed_qasm).write_text(to_qasm(result.routed), encoding="utf-8")
    print(json.dumps(payload))
    return EXIT_OK if verified else EXIT_PIPELINE


def _cmd_gen(args) -> int:
    circuit = gen_random_circuit(args.qubits, args.gates, args.seed)
    Path(args.output).write_text(to_qasm(circuit), encoding="utf-8")
    print(f"wrote {circuit.name} ({len(circuit.gates)} gates) to {args.output}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    qubit_counts = _parse_qubit_range(args.qubits)
    seeds = list(range(args.seeds))
    baselines = [_resolve_topology(name) for name in _split_names(args.baselines)]
    noise = [NoiseParams(float(eps)) for eps in args.eps.split(",") if eps.strip()]

    circuits = []
    circuit_seeds = []
    for n in qubit_counts:
        for seed in seeds:
            circuits.append(gen_random_circuit(n, args.gates, seed))
            circuit_seeds.append(seed)

    config = {
        "qubits": qubit_counts,
        "seeds": seeds,
        "target_gates": args.gates,
        "baselines": [t.name for t in baselines],
        "epsilons": [n.epsilon for n in noise],
    }
    report = run_comparison(circuits, baselines, noise, seeds=circuit_seeds, config=config)

    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    formats = [f.strip() for f in args.format.split(",") if f.strip()]
    for fmt in formats:
        if fmt not in ("csv", "json"):
            print(f"error: unknown report format {fmt!r}", file=sys.stderr)
            return EXIT_USAGE
        emit_report(report, fmt, out_dir / f"report.{fmt}")
    print(
        f"wrote {len(report.rows)} rows ({len(report.skips)} skipped, "
        f"{len(report.failures)} failed) to {out_dir}"
    )
    if report.failures:
        return EXIT_PIPELINE if not report.rows else EXIT_PARTIAL
    return EXIT_OK


def _cmd_validate(args) -> int:
    path = Path(args.path)
    if path.suffix == ".qasm":
        circuit = parse_qasm_file(path)
        problems = validate_circuit(circuit)
        for message in problems:
            print(message)
        if problems:
            return EXIT_PIPELINE
        print(f"{circuit.name}: {circuit.num_qubits} qubits, {len(circuit.gates)} gates, ok")
        return EXIT_OK
    topology = load_topology(path)
    diagnostics = validate_topology(topology)
    for diag in diagnostics:
        print(f"{diag.level}: {diag.message}")
    if any(d.level == "error" for d in diagnostics):
        return EXIT_PIPELINE
    print(f"{topology.name}: {topology.num_qubits} qubits, {len(topology.edges)} couplers, ok")
    return EXIT_OK


_COMMANDS = {
    "synth": _cmd_synth,
    "route": _cmd_route,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _PIPELINE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except CacoreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


def app() -> None:
    sys.exit(main())
