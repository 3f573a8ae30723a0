"""Dense state-vector simulator.

Convention: qubit ``q`` is bit ``q`` of the basis-state index, so qubit 0
is the least significant bit. All gates act in place on the amplitude
array through :mod:`qibam.kernels`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import kernels
from .errors import (
    DuplicateQubitIndex,
    InvalidQubitIndex,
    NonUnitaryMatrix,
    QubitCountOutOfRange,
    ZeroShots,
)

MAX_QUBITS = 26
NORM_TOL = 1e-10
UNITARY_TOL = 1e-10

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)


def _check_distinct(qubits):
    for q in qubits:
        if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 0:
            raise InvalidQubitIndex(f"qubit index must be a non-negative int, got {q!r}")
    if len(set(qubits)) != len(qubits):
        raise DuplicateQubitIndex(f"repeated qubit in {tuple(qubits)}")


# -- gate operations ---------------------------------------------------------

@dataclass(frozen=True)
class H:
    target: int

    def __post_init__(self):
        _check_distinct((self.target,))

    @property
    def qubits(self):
        return (self.target,)

    def matrix(self):
        return _H.copy()


@dataclass(frozen=True)
class X:
    target: int

    def __post_init__(self):
        _check_distinct((self.target,))

    @property
    def qubits(self):
        return (self.target,)

    def matrix(self):
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class Ry:
    target: int
    angle: float

    def __post_init__(self):
        _check_distinct((self.target,))
        object.__setattr__(self, "angle", float(self.angle))

    @property
    def qubits(self):
        return (self.target,)

    def matrix(self):
        c, s = math.cos(self.angle / 2), math.sin(self.angle / 2)
        return np.array([[c, -s], [s, c]], dtype=np.complex128)


@dataclass(frozen=True)
class Rz:
    target: int
    angle: float

    def __post_init__(self):
        _check_distinct((self.target,))
        object.__setattr__(self, "angle", float(self.angle))

    @property
    def qubits(self):
        return (self.target,)

    def matrix(self):
        half = self.angle / 2
        return np.diag([np.exp(-1j * half), np.exp(1j * half)]).astype(np.complex128)


@dataclass(frozen=True)
class ControlledX:
    """X on ``target`` when every control qubit is 1. No controls means plain X."""

    controls: tuple
    target: int

    def __post_init__(self):
        controls = tuple(int(c) for c in self.controls)
        object.__setattr__(self, "controls", controls)
        _check_distinct(controls + (self.target,))

    @property
    def qubits(self):
        return self.controls + (self.target,)


@dataclass(frozen=True)
class ControlledPhase:
    """Multiply by ``exp(1j*angle)`` every basis state where all ``qubits`` are 1."""

    qubits: tuple
    angle: float

    def __post_init__(self):
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "angle", float(self.angle))
        if not qubits:
            raise InvalidQubitIndex("ControlledPhase needs at least one qubit")
        _check_distinct(qubits)


@dataclass(frozen=True, eq=False)
class DenseUnitary:
    """Arbitrary unitary on ``qubits``; the first listed qubit is the least
    significant bit of the matrix row/column index."""

    qubits: tuple
    matrix: np.ndarray = field(repr=False)
    label: str = "U"

    def __post_init__(self):
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if not qubits:
            raise InvalidQubitIndex("DenseUnitary needs at least one qubit")
        _check_distinct(qubits)
        mat = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        dim = 1 << len(qubits)
        if mat.shape != (dim, dim):
            raise NonUnitaryMatrix(f"expected a {dim}x{dim} matrix, got shape {mat.shape}")
        err = np.max(np.abs(mat.conj().T @ mat - np.eye(dim)))
        if not err <= UNITARY_TOL:
            raise NonUnitaryMatrix(f"max |U^dag U - I| = {err:.3e} exceeds {UNITARY_TOL}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def __eq__(self, other):
        if not isinstance(other, DenseUnitary):
            return NotImplemented
        return self.qubits == other.qubits and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


GateOp = Union[H, X, Ry, Rz, ControlledX, ControlledPhase, DenseUnitary]


# -- state -------------------------------------------------------------------

class StateVector:
    """Register of ``num_qubits`` qubits stored as 2**n complex amplitudes."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        n = amps.shape[0].bit_length() - 1
        if n < 1 or amps.shape[0] != 1 << n:
            raise QubitCountOutOfRange(f"amplitude count {amps.shape[0]} is not 2**n with n >= 1")
        self.num_qubits = n
        self.amplitudes = amps

    def copy(self):
        return StateVector(self.amplitudes.copy())

    def norm(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def apply(self, op):
        apply(self, op)
        return self

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


def new_state(num_qubits, max_qubits=MAX_QUBITS):
    """Return ``|0...0>`` on ``num_qubits`` qubits."""
    if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= max_qubits:
        raise QubitCountOutOfRange(f"num_qubits must be in [1, {max_qubits}], got {num_qubits!r}")
    amps = np.zeros(1 << int(num_qubits), dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(amps)


def _check_range(state, qubits):
    for q in qubits:
        if q >= state.num_qubits:
            raise InvalidQubitIndex(f"qubit {q} out of range for {state.num_qubits}-qubit state")


def apply(state, op):
    """Evolve ``state`` in place by ``op`` and return it."""
    _check_range(state, op.qubits)
    amps = state.amplitudes
    if isinstance(op, ControlledX):
        mask = 0
        for c in op.controls:
            mask |= 1 << c
        kernels.apply_mcx(amps, mask, op.target)
    elif isinstance(op, X):
        kernels.apply_mcx(amps, 0, op.target)
    elif isinstance(op, (H, Ry, Rz)):
        kernels.apply_1q(amps, op.matrix(), op.target)
    elif isinstance(op, ControlledPhase):
        qs = np.array(sorted(op.qubits), dtype=np.int64)
        kernels.apply_phase(amps, qs, complex(np.exp(1j * op.angle)))
    elif isinstance(op, DenseUnitary):
        kernels.apply_dense(amps, op.matrix, np.array(op.qubits, dtype=np.int64))
    else:
        raise TypeError(f"unsupported gate op {op!r}")
    return state


def probabilities(state):
    return np.abs(state.amplitudes) ** 2


def marginal(state, qubits):
    """Distribution of the listed qubits; the first listed is the least significant bit."""
    qubits = tuple(qubits)
    _check_distinct(qubits)
    _check_range(state, qubits)
    n = state.num_qubits
    probs = probabilities(state).reshape((2,) * n)
    keep = [n - 1 - q for q in qubits]
    drop = tuple(ax for ax in range(n) if ax not in keep)
    reduced = probs.sum(axis=drop)
    if not qubits:
        return np.array([float(reduced)])
    # reduced axes follow ascending tensor-axis order; reorder to (last listed, ..., first listed)
    order = sorted(keep)
    perm = [order.index(ax) for ax in reversed(keep)]
    return np.transpose(reduced, perm).reshape(-1)


# -- sampling ----------------------------------------------------------------

def shot_uniforms(seed, start, count):
    """Uniform draws in [0, 1) for shots ``start .. start+count-1``.

    Shot ``s`` reads word ``s`` of the Philox-4x64 stream keyed by ``seed``,
    i.e. its value depends only on ``(seed, s)``. Any chunking of the shot
    range therefore reproduces the same draws.
    """
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    block, lane = divmod(int(start), 4)
    bitgen = np.random.Philox(key=int(seed), counter=block)
    raw = bitgen.random_raw(lane + count)[lane:]
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def sample_distribution(dist, shots, seed):
    """Histogram of ``shots`` draws from the discrete distribution ``dist``."""
    if shots < 1:
        raise ZeroShots(f"shots must be >= 1, got {shots}")
    cdf = np.cumsum(dist)
    cdf /= cdf[-1]
    u = shot_uniforms(seed, 0, int(shots))
    outcomes = np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)
    values, counts = np.unique(outcomes, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def sample(state, qubits, shots, seed):
    """Measure ``qubits`` ``shots`` times; returns ``{outcome: count}``."""
    if shots < 1:
        raise ZeroShots(f"shots must be >= 1, got {shots}")
    return sample_distribution(marginal(state, qubits), shots, seed)
