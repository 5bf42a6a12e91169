"""Pure-state simulation of small qubit registers.

Gates act by direct amplitude updates (bit masking), never by building
full matrices, so unitarity properties like the CNOT involution hold
structurally.  Qubit 0 occupies the most significant bit of the basis
index; states are immutable values and every operation returns a fresh
state.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin
from typing import Iterable, Iterator, Union

import numpy as np

__all__ = [
    "MAX_QUBITS",
    "PureState",
    "Rotation",
    "CNOT",
    "Gate",
    "GateNetwork",
    "apply_rotation",
    "apply_cnot",
    "run_network",
    "density_of",
    "parse_network",
    "format_network",
    "NetworkParseError",
]

MAX_QUBITS = 3
NORM_TOL = 1e-12


@dataclass(frozen=True)
class Rotation:
    """Real plane rotation on one qubit.

    |0> -> cos(theta)|0> + sin(theta)|1>
    |1> -> -sin(theta)|0> + cos(theta)|1>
    """

    target: int
    theta: float


@dataclass(frozen=True)
class CNOT:
    """Flip the target qubit on basis components where the control bit is 1."""

    control: int
    target: int

    def __post_init__(self) -> None:
        if self.control == self.target:
            raise ValueError("control and target qubits must differ")


Gate = Union[Rotation, CNOT]


@dataclass(frozen=True)
class PureState:
    """Normalized amplitudes over the computational basis, qubit 0 as MSB."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex)
        n = (amps.size - 1).bit_length()
        if amps.ndim != 1 or amps.size < 2 or 2**n != amps.size or n > MAX_QUBITS:
            raise ValueError(f"amplitude count {amps.size} does not describe 1..{MAX_QUBITS} qubits")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (sum of |amp|^2 = {norm!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return (self.amplitudes.size - 1).bit_length()

    @classmethod
    def computational(cls, num_qubits: int, index: int = 0) -> "PureState":
        """Basis state |index> on the given number of qubits."""
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be 1..{MAX_QUBITS}")
        dim = 1 << num_qubits
        if not 0 <= index < dim:
            raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls(amps)


class NetworkParseError(ValueError):
    """Raised for malformed network text; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class GateNetwork:
    """An ordered list of gates, applied first to last."""

    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "GateNetwork | Iterable[Gate]") -> "GateNetwork":
        tail = other.gates if isinstance(other, GateNetwork) else tuple(other)
        return GateNetwork(self.gates + tuple(tail))

    def max_qubit(self) -> int:
        """Largest qubit index used, or -1 for the empty network."""
        top = -1
        for gate in self.gates:
            if isinstance(gate, Rotation):
                top = max(top, gate.target)
            else:
                top = max(top, gate.control, gate.target)
        return top


def _mask(num_qubits: int, qubit: int) -> int:
    return 1 << (num_qubits - 1 - qubit)


def _check_index(num_qubits: int, qubit: int, role: str) -> None:
    if not 0 <= qubit < num_qubits:
        raise ValueError(f"{role} qubit {qubit} out of range for a {num_qubits}-qubit state")


def apply_rotation(state: PureState, target: int, theta: float) -> PureState:
    """Rotate one qubit; identity on the rest."""
    n = state.num_qubits
    _check_index(n, target, "target")
    mask = _mask(n, target)
    idx = np.arange(state.amplitudes.size)
    lo = idx[(idx & mask) == 0]
    hi = lo | mask
    c, s = cos(theta), sin(theta)
    amps = state.amplitudes
    out = np.empty_like(amps)
    out[lo] = c * amps[lo] - s * amps[hi]
    out[hi] = s * amps[lo] + c * amps[hi]
    return PureState(out)


def apply_cnot(state: PureState, control: int, target: int) -> PureState:
    """Flip the target bit exactly on components where the control bit is 1."""
    n = state.num_qubits
    _check_index(n, control, "control")
    _check_index(n, target, "target")
    if control == target:
        raise ValueError("control and target qubits must differ")
    cm = _mask(n, control)
    tm = _mask(n, target)
    idx = np.arange(state.amplitudes.size)
    src = idx[(idx & cm) != 0]
    out = state.amplitudes.copy()
    out[src ^ tm] = state.amplitudes[src]
    return PureState(out)


def _apply_gate(state: PureState, gate: Gate) -> PureState:
    if isinstance(gate, Rotation):
        return apply_rotation(state, gate.target, gate.theta)
    if isinstance(gate, CNOT):
        return apply_cnot(state, gate.control, gate.target)
    raise TypeError(f"unknown gate type {type(gate).__name__}")


def run_network(state: PureState, net: GateNetwork | Iterable[Gate]) -> PureState:
    """Left-fold the gates over the state, in listed order."""
    for pos, gate in enumerate(net):
        try:
            state = _apply_gate(state, gate)
        except ValueError as exc:
            raise ValueError(f"gate {pos + 1} ({gate!r}): {exc}") from None
    return state


def density_of(state: PureState) -> np.ndarray:
    """Rank-1 projector |psi><psi| of a pure state."""
    amps = state.amplitudes
    return np.outer(amps, amps.conj())


def parse_network(text: str) -> GateNetwork:
    """Parse the plain-text network format, one gate per line.

    Lines are ``R <qubit> <theta>`` (theta in radians) or
    ``CNOT <control> <target>``.  Blank lines and ``#`` comments are
    ignored.  Raises NetworkParseError with the line number on bad input.
    """
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "R" and len(parts) == 3:
                gates.append(Rotation(int(parts[1]), float(parts[2])))
            elif parts[0] == "CNOT" and len(parts) == 3:
                gates.append(CNOT(int(parts[1]), int(parts[2])))
            else:
                raise ValueError(f"expected 'R <qubit> <theta>' or 'CNOT <control> <target>', got {line!r}")
        except ValueError as exc:
            raise NetworkParseError(lineno, str(exc)) from None
    return GateNetwork(tuple(gates))


def format_network(net: GateNetwork | Iterable[Gate]) -> str:
    """Render a network in the plain-text format accepted by parse_network."""
    lines = []
    for gate in net:
        if isinstance(gate, Rotation):
            lines.append(f"R {gate.target} {gate.theta!r}")
        elif isinstance(gate, CNOT):
            lines.append(f"CNOT {gate.control} {gate.target}")
        else:
            raise TypeError(f"unknown gate type {type(gate).__name__}")
    return "\n".join(lines) + ("\n" if lines else "")
