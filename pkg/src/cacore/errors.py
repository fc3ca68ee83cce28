"""Exception types shared across the toolchain."""

from __future__ import annotations


class CacoreError(Exception):
    """Base class for all toolchain errors."""


class QasmSyntaxError(CacoreError):
    """Malformed token or statement in an OpenQASM source."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnsupportedGateError(CacoreError):
    """Statement or gate outside the supported OpenQASM subset."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class QubitIndexError(CacoreError):
    """Qubit index outside the declared register range."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DegenerateInputError(CacoreError):
    """Input too small or too large for the requested operation."""


class UnknownTopologyError(CacoreError):
    """Requested builtin topology name does not exist."""


class TopologyFormatError(CacoreError):
    """Topology file violates the JSON schema."""

    def __init__(self, message: str, location: str = ""):
        suffix = f" (at {location})" if location else ""
        super().__init__(f"{message}{suffix}")
        self.location = location


class UnroutableGateError(CacoreError):
    """Two-qubit gate whose endpoints lie in different topology components."""
