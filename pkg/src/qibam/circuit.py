"""Immutable gate-list circuits and their execution on a :class:`StateVector`."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidQubitIndex, QubitCountMismatch
from .statevector import (
    H,
    X,
    ControlledPhase,
    ControlledX,
    DenseUnitary,
    Ry,
    Rz,
    apply,
)


def canonical(op):
    """Normal form used for structural equality (``ControlledX`` with no controls is ``X``)."""
    if isinstance(op, ControlledX) and not op.controls:
        return X(op.target)
    return op


def inverse_op(op):
    if isinstance(op, (H, X, ControlledX)):
        return op
    if isinstance(op, Ry):
        return Ry(op.target, -op.angle)
    if isinstance(op, Rz):
        return Rz(op.target, -op.angle)
    if isinstance(op, ControlledPhase):
        return ControlledPhase(op.qubits, -op.angle)
    if isinstance(op, DenseUnitary):
        return DenseUnitary(op.qubits, op.matrix.conj().T, label=op.label + "^dag")
    raise TypeError(f"unsupported gate op {op!r}")


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple = ()
    name: str = field(default="circuit", compare=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise InvalidQubitIndex(f"circuit needs at least one qubit, got {self.num_qubits}")
        ops = tuple(canonical(op) for op in self.ops)
        for op in ops:
            for q in op.qubits:
                if q >= self.num_qubits:
                    raise InvalidQubitIndex(
                        f"{type(op).__name__} touches qubit {q} in a {self.num_qubits}-qubit circuit"
                    )
        object.__setattr__(self, "ops", ops)

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __add__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        if other.num_qubits != self.num_qubits:
            raise QubitCountMismatch(f"cannot join {self.num_qubits}- and {other.num_qubits}-qubit circuits")
        return Circuit(self.num_qubits, self.ops + other.ops, name=f"{self.name}+{other.name}")

    def inverse(self):
        return Circuit(
            self.num_qubits,
            tuple(inverse_op(op) for op in reversed(self.ops)),
            name=f"{self.name}^dag",
        )


class CircuitBuilder:
    """Mutable accumulator; :meth:`build` freezes it into a :class:`Circuit`."""

    def __init__(self, num_qubits, name="circuit"):
        self.num_qubits = num_qubits
        self.name = name
        self._ops = []

    def h(self, q):
        self._ops.append(H(q))
        return self

    def x(self, q):
        self._ops.append(X(q))
        return self

    def ry(self, q, angle):
        self._ops.append(Ry(q, angle))
        return self

    def rz(self, q, angle):
        self._ops.append(Rz(q, angle))
        return self

    def mcx(self, controls, target):
        self._ops.append(ControlledX(tuple(controls), target))
        return self

    def cphase(self, qubits, angle):
        self._ops.append(ControlledPhase(tuple(qubits), angle))
        return self

    def unitary(self, qubits, matrix, label="U"):
        self._ops.append(DenseUnitary(tuple(qubits), matrix, label))
        return self

    def extend(self, ops):
        self._ops.extend(ops)
        return self

    def build(self):
        return Circuit(self.num_qubits, tuple(self._ops), self.name)


def execute(circuit, initial):
    """Run ``circuit`` on a copy of ``initial`` and return the final state."""
    if initial.num_qubits != circuit.num_qubits:
        raise QubitCountMismatch(
            f"circuit has {circuit.num_qubits} qubits, state has {initial.num_qubits}"
        )
    state = initial.copy()
    for op in circuit.ops:
        apply(state, op)
    return state
