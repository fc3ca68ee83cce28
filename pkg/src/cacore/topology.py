"""Coupling-map topologies: representation, validation, JSON I/O, builtins.

Baseline device maps ship as bundled JSON data files; ``line(n)``,
``grid(r,c)``, and ``half_sycamore24`` are generated analytically. The
JSON schema is the contract between the synth and route commands: ``name``
(string), ``num_qubits`` (int), ``edges`` (sorted ``[i, j]`` pairs with
``i < j``), optional ``synthetic`` (booleans parallel to edges), optional
``positions`` (``[row, col]`` per qubit).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import TopologyFormatError, UnknownTopologyError

_DEVICE_FILES = {
    "almaden20": "almaden20.json",
    "cairo27": "cairo27.json",
    "prague33": "prague33.json",
    "sycamore53": "sycamore53.json",
}
_LINE_RE = re.compile(r"^line\((\d+)\)$")
_GRID_RE = re.compile(r"^grid\((\d+),\s*(\d+)\)$")

BUILTIN_NAMES = (*_DEVICE_FILES, "half_sycamore24", "line(n)", "grid(nrow,ncol)")


@dataclass(frozen=True)
class Topology:
    """Physical coupling map: qubits, coupler edges, optional grid positions."""

    name: str
    num_qubits: int
    edges: tuple[tuple[int, int], ...]
    synthetic: frozenset[tuple[int, int]] = frozenset()
    positions: dict[int, tuple[int, int]] | None = None

    def has_edge(self, a: int, b: int) -> bool:
        pair = (a, b) if a < b else (b, a)
        return pair in set(self.edges)

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        """Neighbor lists in ascending order, one entry per qubit."""
        neighbors: dict[int, list[int]] = {q: [] for q in range(self.num_qubits)}
        for a, b in self.edges:
            neighbors[a].append(b)
            neighbors[b].append(a)
        return {q: tuple(sorted(ns)) for q, ns in neighbors.items()}


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning"
    message: str


def validate_topology(topology: Topology) -> list[Diagnostic]:
    """Check structural invariants plus the diagonal-collision rule.

    Errors flag invariant violations (self-edges, duplicates, out-of-range
    indices, non-injective positions). When positions are present, a
    non-fatal warning is emitted for every pair of diagonal couplers whose
    unit cells share a side, the configuration the frequency-collision
    constraint forbids.
    """
    out: list[Diagnostic] = []
    seen: set[tuple[int, int]] = set()
    for a, b in topology.edges:
        if a == b:
            out.append(Diagnostic("error", f"self-edge ({a},{b})"))
            continue
        pair = (a, b) if a < b else (b, a)
        if pair in seen:
            out.append(Diagnostic("error", f"duplicate edge ({pair[0]},{pair[1]})"))
        seen.add(pair)
        if a > b:
            out.append(Diagnostic("error", f"edge ({a},{b}) not stored with i < j"))
        for q in (a, b):
            if not 0 <= q < topology.num_qubits:
                out.append(Diagnostic("error", f"edge ({a},{b}): qubit {q} out of range"))
    for pair in topology.synthetic:
        if pair not in seen:
            out.append(Diagnostic("error", f"synthetic flag on missing edge {pair}"))

    if topology.positions is not None:
        placed = list(topology.positions.items())
        cells = [rc for _, rc in placed]
        if len(set(cells)) != len(cells):
            out.append(Diagnostic("error", "positions are not injective"))
        for q, _ in placed:
            if not 0 <= q < topology.num_qubits:
                out.append(Diagnostic("error", f"position given for unknown qubit {q}"))
        out.extend(_collision_warnings(topology))
    return out


def _collision_warnings(topology: Topology) -> list[Diagnostic]:
    positions = topology.positions or {}
    diagonal_cells: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for a, b in topology.edges:
        if a not in positions or b not in positions:
            continue
        (r1, c1), (r2, c2) = positions[a], positions[b]
        if abs(r1 - r2) == 1 and abs(c1 - c2) == 1:
            diagonal_cells.append(((min(r1, r2), min(c1, c2)), (a, b)))
    warnings = []
    for i, (cell_a, edge_a) in enumerate(diagonal_cells):
        for cell_b, edge_b in diagonal_cells[i + 1 :]:
            dr = abs(cell_a[0] - cell_b[0])
            dc = abs(cell_a[1] - cell_b[1])
            if dr + dc == 1:
                warnings.append(
                    Diagnostic(
                        "warning",
                        f"diagonal couplers {edge_a} and {edge_b} occupy side-sharing "
                        "cells (frequency-collision risk)",
                    )
                )
    return warnings


def topology_errors(topology: Topology) -> list[Diagnostic]:
    return [d for d in validate_topology(topology) if d.level == "error"]


# -- JSON serialization ------------------------------------------------------


def _as_dict(topology: Topology) -> dict:
    data: dict = {
        "name": topology.name,
        "num_qubits": topology.num_qubits,
        "edges": [list(pair) for pair in topology.edges],
    }
    if topology.synthetic:
        data["synthetic"] = [pair in topology.synthetic for pair in topology.edges]
    if topology.positions is not None:
        data["positions"] = [list(topology.positions[q]) for q in range(topology.num_qubits)]
    return data


def save_topology(topology: Topology, path: str | Path) -> None:
    path = Path(path)
    path.write_text(json.dumps(_as_dict(topology), indent=2) + "\n", encoding="utf-8")


def _require(condition: bool, message: str, location: str) -> None:
    if not condition:
        raise TopologyFormatError(message, location)


def topology_from_dict(data: dict, *, source: str = "topology") -> Topology:
    _require(isinstance(data, dict), "expected a JSON object", source)
    _require(isinstance(data.get("name"), str), "missing or non-string 'name'", "name")
    num_qubits = data.get("num_qubits")
    _require(isinstance(num_qubits, int) and num_qubits >= 0, "missing or bad 'num_qubits'", "num_qubits")
    raw_edges = data.get("edges")
    _require(isinstance(raw_edges, list), "missing or non-array 'edges'", "edges")

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for idx, item in enumerate(raw_edges):
        where = f"edges[{idx}]"
        _require(
            isinstance(item, list) and len(item) == 2 and all(isinstance(v, int) for v in item),
            "edge must be a pair of integers",
            where,
        )
        a, b = item
        _require(a != b, f"self-edge ({a},{b})", where)
        _require(a < b, f"edge ({a},{b}) must satisfy i < j", where)
        _require(0 <= a and b < num_qubits, f"edge ({a},{b}) out of range", where)
        pair = (a, b)
        _require(pair not in seen, f"duplicate edge ({a},{b})", where)
        seen.add(pair)
        edges.append(pair)

    synthetic: frozenset[tuple[int, int]] = frozenset()
    if "synthetic" in data:
        flags = data["synthetic"]
        _require(
            isinstance(flags, list) and len(flags) == len(edges)
            and all(isinstance(v, bool) for v in flags),
            "'synthetic' must be booleans parallel to 'edges'",
            "synthetic",
        )
        synthetic = frozenset(pair for pair, flag in zip(edges, flags) if flag)

    positions: dict[int, tuple[int, int]] | None = None
    if "positions" in data:
        raw_pos = data["positions"]
        _require(
            isinstance(raw_pos, list) and len(raw_pos) == num_qubits,
            "'positions' must list one [row, col] per qubit",
            "positions",
        )
        positions = {}
        for q, item in enumerate(raw_pos):
            _require(
                isinstance(item, list) and len(item) == 2 and all(isinstance(v, int) for v in item),
                "position must be an [row, col] integer pair",
                f"positions[{q}]",
            )
            positions[q] = (item[0], item[1])

    return Topology(data["name"], num_qubits, tuple(edges), synthetic, positions)


def load_topology(path: str | Path) -> Topology:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TopologyFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from exc
    return topology_from_dict(data, source=str(path))


# -- builtins ----------------------------------------------------------------


def line_topology(n: int) -> Topology:
    edges = tuple((i, i + 1) for i in range(n - 1))
    positions = {i: (0, i) for i in range(n)}
    return Topology(f"line({n})", n, edges, positions=positions)


def grid_topology(nrow: int, ncol: int) -> Topology:
    edges = []
    for r in range(nrow):
        for c in range(ncol):
            q = r * ncol + c
            if c + 1 < ncol:
                edges.append((q, q + 1))
            if r + 1 < nrow:
                edges.append((q, q + ncol))
    positions = {r * ncol + c: (r, c) for r in range(nrow) for c in range(ncol)}
    return Topology(f"grid({nrow},{ncol})", nrow * ncol, tuple(sorted(edges)), positions=positions)


def sycamore_pattern(nrow: int, ncol: int) -> list[tuple[int, int]]:
    """Diagonal-grid coupler pattern: odd rows link up/down and up-right/down-right."""
    edges: set[tuple[int, int]] = set()
    for r in range(1, nrow, 2):
        for c in range(ncol):
            q = r * ncol + c
            partners = [(r - 1, c), (r + 1, c)]
            if c + 1 < ncol:
                partners += [(r - 1, c + 1), (r + 1, c + 1)]
            for pr, pc in partners:
                if 0 <= pr < nrow:
                    p = pr * ncol + pc
                    edges.add((min(q, p), max(q, p)))
    return sorted(edges)


def half_sycamore_topology() -> Topology:
    """Six rows by four columns of the diagonal-grid pattern, all couplers enabled."""
    return Topology("half_sycamore24", 24, tuple(sycamore_pattern(6, 4)))


def _load_bundled(fname: str) -> Topology:
    text = resources.files("cacore").joinpath("data", fname).read_text(encoding="utf-8")
    return topology_from_dict(json.loads(text), source=fname)


def builtin_topology(name: str) -> Topology:
    """Resolve a builtin topology by name.

    Device maps (``almaden20``, ``cairo27``, ``prague33``, ``sycamore53``)
    come from bundled data files; ``half_sycamore24``, ``line(n)``, and
    ``grid(nrow,ncol)`` are generated.
    """
    if name in _DEVICE_FILES:
        return _load_bundled(_DEVICE_FILES[name])
    if name == "half_sycamore24":
        return half_sycamore_topology()
    if m := _LINE_RE.match(name):
        return line_topology(int(m.group(1)))
    if m := _GRID_RE.match(name):
        return grid_topology(int(m.group(1)), int(m.group(2)))
    raise UnknownTopologyError(
        f"unknown topology {name!r}; builtins are {', '.join(BUILTIN_NAMES)}"
    )
