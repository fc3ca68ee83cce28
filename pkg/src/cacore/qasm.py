"""OpenQASM 2.0 frontend for the supported gate subset.

Supported statements: the ``OPENQASM 2.0;`` header, ``include``, ``qreg``,
gate applications from the internal gate vocabulary plus ``ccx`` (expanded
at parse time), ``barrier``, and ``measure``. Classical registers and
conditionals are rejected. Angle expressions cover ``pi``, numeric
literals, ``+ - * /``, unary minus, and parentheses.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import QasmSyntaxError, QubitIndexError, UnsupportedGateError
from .ir import Circuit, Gate, GateKind

_TOKEN_RE = re.compile(
    r"""
      (?P<comment>//[^\n]*)
    | (?P<newline>\n)
    | (?P<ws>[\ \t\r]+)
    | (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<string>"[^"\n]*")
    | (?P<arrow>->)
    | (?P<cmp>==|!=|<=|>=|[<>=])
    | (?P<sym>[;,\[\]()*/+\-{}])
    """,
    re.VERBOSE,
)

# name -> (kind, operand count, parameter count)
_GATE_TABLE = {
    "h": (GateKind.H, 1, 0),
    "x": (GateKind.X, 1, 0),
    "y": (GateKind.Y, 1, 0),
    "z": (GateKind.Z, 1, 0),
    "s": (GateKind.S, 1, 0),
    "t": (GateKind.T, 1, 0),
    "rx": (GateKind.RX, 1, 1),
    "ry": (GateKind.RY, 1, 1),
    "rz": (GateKind.RZ, 1, 1),
    "cx": (GateKind.CNOT, 2, 0),
    "swap": (GateKind.SWAP, 2, 0),
}

_REJECTED_STATEMENTS = {
    "creg": "classical registers (creg) are not supported",
    "if": "classical conditionals are not supported",
    "gate": "gate definitions are not supported",
    "opaque": "opaque declarations are not supported",
    "reset": "reset is not supported",
}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise QasmSyntaxError(f"unexpected character {source[pos]!r}", line)
        kind = match.lastgroup or ""
        if kind == "newline":
            line += 1
        elif kind not in ("ws", "comment"):
            tokens.append(_Token(kind, match.group(), line))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        # register name -> (offset, size); declaration order fixes offsets
        self.registers: dict[str, tuple[int, int]] = {}
        self.num_qubits = 0
        self.gates: list[Gate] = []

    # -- token stream helpers ------------------------------------------------

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, expected: str) -> _Token:
        tok = self._peek()
        if tok is None:
            last_line = self.tokens[-1].line if self.tokens else 1
            raise QasmSyntaxError(f"unexpected end of input, expected {expected}", last_line)
        self.pos += 1
        return tok

    def _expect_sym(self, symbol: str) -> _Token:
        tok = self._next(repr(symbol))
        if tok.text != symbol:
            raise QasmSyntaxError(f"expected {symbol!r}, got {tok.text!r}", tok.line)
        return tok

    def _expect_ident(self) -> _Token:
        tok = self._next("identifier")
        if tok.kind != "ident":
            raise QasmSyntaxError(f"expected identifier, got {tok.text!r}", tok.line)
        return tok

    def _expect_int(self) -> int:
        tok = self._next("integer")
        if tok.kind != "number" or not tok.text.isdigit():
            raise QasmSyntaxError(f"expected integer, got {tok.text!r}", tok.line)
        return int(tok.text)

    # -- statements ----------------------------------------------------------

    def parse(self) -> Circuit:
        while self._peek() is not None:
            self._statement()
        return Circuit(self.num_qubits, tuple(self.gates))

    def _statement(self) -> None:
        tok = self._next("statement")
        if tok.kind != "ident":
            raise QasmSyntaxError(f"expected statement, got {tok.text!r}", tok.line)
        name = tok.text
        if name == "OPENQASM":
            version = self._next("version number")
            if version.kind != "number" or not version.text.startswith("2"):
                raise QasmSyntaxError(
                    f"only OpenQASM 2.0 is supported, got version {version.text!r}", version.line
                )
            self._expect_sym(";")
        elif name == "include":
            target = self._next("include path")
            if target.kind != "string":
                raise QasmSyntaxError(f"expected quoted path, got {target.text!r}", target.line)
            self._expect_sym(";")
        elif name == "qreg":
            self._qreg(tok.line)
        elif name in _REJECTED_STATEMENTS:
            raise UnsupportedGateError(_REJECTED_STATEMENTS[name], tok.line)
        elif name == "measure":
            self._measure(tok.line)
        elif name == "barrier":
            self._barrier(tok.line)
        else:
            self._gate_application(name, tok.line)

    def _qreg(self, line: int) -> None:
        reg = self._expect_ident()
        if reg.text in self.registers:
            raise QasmSyntaxError(f"register {reg.text!r} already declared", reg.line)
        self._expect_sym("[")
        size = self._expect_int()
        self._expect_sym("]")
        self._expect_sym(";")
        self.registers[reg.text] = (self.num_qubits, size)
        self.num_qubits += size

    def _operand(self, *, allow_broadcast: bool) -> list[int]:
        """Resolve ``reg[i]`` to one qubit or a bare register to all of its qubits."""
        reg = self._expect_ident()
        if reg.text not in self.registers:
            raise QasmSyntaxError(f"unknown register {reg.text!r}", reg.line)
        offset, size = self.registers[reg.text]
        nxt = self._peek()
        if nxt is not None and nxt.text == "[":
            self._expect_sym("[")
            index = self._expect_int()
            self._expect_sym("]")
            if index >= size:
                raise QubitIndexError(
                    f"index {index} out of range for register {reg.text!r} of size {size}",
                    reg.line,
                )
            return [offset + index]
        if not allow_broadcast:
            raise QasmSyntaxError(
                f"expected indexed operand {reg.text}[...], register broadcast is only "
                "supported for one-qubit gates, measure, and barrier",
                reg.line,
            )
        return [offset + i for i in range(size)]

    def _classical_target(self) -> None:
        """Consume ``c`` or ``c[i]`` after ``->``; classical state is not modeled."""
        self._expect_ident()
        nxt = self._peek()
        if nxt is not None and nxt.text == "[":
            self._expect_sym("[")
            self._expect_int()
            self._expect_sym("]")

    def _measure(self, line: int) -> None:
        qubits = self._operand(allow_broadcast=True)
        nxt = self._peek()
        if nxt is not None and nxt.kind == "arrow":
            self._next("->")
            self._classical_target()
        self._expect_sym(";")
        for q in qubits:
            self.gates.append(Gate(GateKind.MEASURE, (q,)))

    def _barrier(self, line: int) -> None:
        qubits: list[int] = []
        while True:
            qubits.extend(self._operand(allow_broadcast=True))
            tok = self._next("',' or ';'")
            if tok.text == ";":
                break
            if tok.text != ",":
                raise QasmSyntaxError(f"expected ',' or ';', got {tok.text!r}", tok.line)
        deduped = tuple(dict.fromkeys(qubits))
        self.gates.append(Gate(GateKind.BARRIER, deduped))

    def _gate_application(self, name: str, line: int) -> None:
        if name == "ccx":
            kind, n_operands, n_params = None, 3, 0
        elif name in _GATE_TABLE:
            kind, n_operands, n_params = _GATE_TABLE[name]
        else:
            raise UnsupportedGateError(f"unsupported gate {name!r}", line)

        params: list[float] = []
        nxt = self._peek()
        if nxt is not None and nxt.text == "(":
            self._expect_sym("(")
            while True:
                params.append(self._expression(line))
                tok = self._next("',' or ')'")
                if tok.text == ")":
                    break
                if tok.text != ",":
                    raise QasmSyntaxError(f"expected ',' or ')', got {tok.text!r}", tok.line)
        if len(params) != n_params:
            raise QasmSyntaxError(
                f"{name} takes {n_params} parameter(s), got {len(params)}", line
            )

        broadcast_ok = n_operands == 1
        operands: list[int] = []
        for i in range(n_operands):
            operands.extend(self._operand(allow_broadcast=broadcast_ok))
            if i + 1 < n_operands:
                self._expect_sym(",")
        self._expect_sym(";")

        if n_operands > 1 and len(set(operands)) != len(operands):
            raise QasmSyntaxError(f"{name}: duplicate qubit operand", line)

        if kind is None:
            self.gates.extend(_decompose_ccx(*operands))
        else:
            param = params[0] if params else None
            for chunk in ([operands] if n_operands > 1 else [[q] for q in operands]):
                self.gates.append(Gate(kind, tuple(chunk), param))

    # -- angle expressions ---------------------------------------------------

    def _expression(self, line: int) -> float:
        value = self._term(line)
        while True:
            tok = self._peek()
            if tok is None or tok.text not in ("+", "-"):
                return value
            self.pos += 1
            rhs = self._term(line)
            value = value + rhs if tok.text == "+" else value - rhs

    def _term(self, line: int) -> float:
        value = self._unary(line)
        while True:
            tok = self._peek()
            if tok is None or tok.text not in ("*", "/"):
                return value
            self.pos += 1
            rhs = self._unary(line)
            if tok.text == "/":
                if rhs == 0:
                    raise QasmSyntaxError("division by zero in angle expression", tok.line)
                value = value / rhs
            else:
                value = value * rhs

    def _unary(self, line: int) -> float:
        tok = self._next("angle expression")
        if tok.text == "-":
            return -self._unary(line)
        if tok.text == "+":
            return self._unary(line)
        if tok.text == "(":
            value = self._expression(line)
            self._expect_sym(")")
            return value
        if tok.kind == "number":
            return float(tok.text)
        if tok.kind == "ident" and tok.text == "pi":
            return math.pi
        raise QasmSyntaxError(f"invalid angle expression near {tok.text!r}", tok.line)


def _decompose_ccx(a: int, b: int, c: int) -> list[Gate]:
    """Standard Toffoli expansion: 6 CNOTs plus 9 one-qubit gates.

    The dagger phases come out as rz(-pi/4), which keeps the gate
    vocabulary closed under this expansion.
    """
    t = GateKind.T
    tdg = -math.pi / 4
    return [
        Gate(GateKind.H, (c,)),
        Gate(GateKind.CNOT, (b, c)),
        Gate(GateKind.RZ, (c,), tdg),
        Gate(GateKind.CNOT, (a, c)),
        Gate(t, (c,)),
        Gate(GateKind.CNOT, (b, c)),
        Gate(GateKind.RZ, (c,), tdg),
        Gate(GateKind.CNOT, (a, c)),
        Gate(t, (b,)),
        Gate(t, (c,)),
        Gate(GateKind.H, (c,)),
        Gate(GateKind.CNOT, (a, b)),
        Gate(t, (a,)),
        Gate(GateKind.RZ, (b,), tdg),
        Gate(GateKind.CNOT, (a, b)),
    ]


def parse_qasm(source: str, name: str = "circuit") -> Circuit:
    """Parse OpenQASM 2.0 text into a :class:`Circuit`.

    Multiple ``qreg`` declarations flatten into one index space in
    declaration order. ``ccx`` is expanded at parse time so downstream
    stages only ever see one- and two-qubit gates.
    """
    circuit = _Parser(_tokenize(source)).parse()
    return Circuit(circuit.num_qubits, circuit.gates, name)


def parse_qasm_file(path: str | Path) -> Circuit:
    path = Path(path)
    return parse_qasm(path.read_text(encoding="utf-8"), name=path.stem)


def to_qasm(circuit: Circuit) -> str:
    """Render a circuit back to OpenQASM 2.0.

    Float parameters are printed via ``repr`` so parse -> print -> parse
    reproduces the exact gate list. Measures are printed with a matching
    classical index but no ``creg`` declaration, since classical registers
    are outside the supported subset.
    """
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.num_qubits}];",
    ]
    for gate in circuit.gates:
        if gate.kind is GateKind.BARRIER:
            operands = ",".join(f"q[{q}]" for q in gate.qubits)
            lines.append(f"barrier {operands};")
        elif gate.kind is GateKind.MEASURE:
            q = gate.qubits[0]
            lines.append(f"measure q[{q}] -> c[{q}];")
        elif gate.param is not None:
            lines.append(f"{gate.kind.value}({gate.param!r}) q[{gate.qubits[0]}];")
        elif gate.is_two_qubit:
            lines.append(f"{gate.kind.value} q[{gate.qubits[0]}],q[{gate.qubits[1]}];")
        else:
            lines.append(f"{gate.kind.value} q[{gate.qubits[0]}];")
    return "\n".join(lines) + "\n"
