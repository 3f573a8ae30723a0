"""Independent reference constructions used by the tests.

Nothing here touches qibam.kernels: full-space operators are built by
Kronecker products plus an explicit basis permutation.
"""
import itertools
import math

import numpy as np

from qibam.statevector import H, X, ControlledPhase, ControlledX, DenseUnitary, Ry, Rz


def local_matrix(op):
    """(qubits, 2^k x 2^k matrix) straight from each gate's definition."""
    if isinstance(op, H):
        return (op.target,), np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    if isinstance(op, X):
        return (op.target,), np.array([[0, 1], [1, 0]], dtype=complex)
    if isinstance(op, Ry):
        c, s = math.cos(op.angle / 2), math.sin(op.angle / 2)
        return (op.target,), np.array([[c, -s], [s, c]], dtype=complex)
    if isinstance(op, Rz):
        return (op.target,), np.diag([np.exp(-0.5j * op.angle), np.exp(0.5j * op.angle)])
    if isinstance(op, ControlledX):
        qubits = op.controls + (op.target,)
        k = len(qubits)
        ctrl = (1 << (k - 1)) - 1
        U = np.eye(1 << k, dtype=complex)
        a, b = ctrl, ctrl | (1 << (k - 1))
        U[[a, b]] = U[[b, a]]
        return qubits, U
    if isinstance(op, ControlledPhase):
        k = len(op.qubits)
        U = np.eye(1 << k, dtype=complex)
        U[-1, -1] = np.exp(1j * op.angle)
        return op.qubits, U
    if isinstance(op, DenseUnitary):
        return op.qubits, np.asarray(op.matrix)
    raise TypeError(op)


def embed(n, qubits, U):
    """Full 2^n operator: kron(I, U) in a layout with ``qubits`` lowest, then permuted."""
    k = len(qubits)
    rest = [q for q in range(n) if q not in qubits]
    K = np.kron(np.eye(1 << (n - k)), U)
    perm = np.empty(1 << n, dtype=np.int64)
    for i in range(1 << n):
        j = 0
        for m, q in enumerate(qubits):
            j |= ((i >> q) & 1) << m
        for r, q in enumerate(rest):
            j |= ((i >> q) & 1) << (k + r)
        perm[i] = j
    return K[np.ix_(perm, perm)]


def full_operator(n, op):
    qubits, U = local_matrix(op)
    return embed(n, qubits, U)


def random_state(n, rng):
    a = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return a / np.linalg.norm(a)


def random_unitary(k, rng):
    z = rng.normal(size=(1 << k, 1 << k)) + 1j * rng.normal(size=(1 << k, 1 << k))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def all_gate_configs(n, rng):
    """Every gate kind on every qubit assignment of an n-qubit register."""
    ops = []
    for q in range(n):
        ops += [H(q), X(q), Ry(q, rng.uniform(-7, 7)), Rz(q, rng.uniform(-7, 7))]
    for t in range(n):
        others = [q for q in range(n) if q != t]
        for r in range(len(others) + 1):
            for ctrls in itertools.permutations(others, r):
                ops.append(ControlledX(ctrls, t))
    for r in range(1, n + 1):
        for qs in itertools.combinations(range(n), r):
            ops.append(ControlledPhase(qs, rng.uniform(-7, 7)))
    for k in range(1, n + 1):
        for qs in itertools.permutations(range(n), k):
            ops.append(DenseUnitary(qs, random_unitary(k, rng)))
    return ops


def random_serializable_circuit(rng, max_qubits=10, max_ops=50):
    from qibam.circuit import Circuit

    n = int(rng.integers(1, max_qubits + 1))
    ops = []
    for _ in range(int(rng.integers(0, max_ops + 1))):
        kind = rng.integers(0, 6)
        t = int(rng.integers(0, n))
        if kind == 0:
            ops.append(H(t))
        elif kind == 1:
            ops.append(X(t))
        elif kind == 2:
            ops.append(Ry(t, float(rng.normal() * 4)))
        elif kind == 3:
            ops.append(Rz(t, float(rng.normal() * 4)))
        elif kind == 4:
            ctrls = [int(c) for c in rng.permutation(n)[: int(rng.integers(0, n))] if c != t]
            ops.append(ControlledX(tuple(ctrls), t))
        else:
            qs = rng.permutation(n)[: int(rng.integers(1, n + 1))]
            ops.append(ControlledPhase(tuple(int(q) for q in qs), float(rng.uniform(-7, 7))))
    return Circuit(n, tuple(ops), "random")


def brute_force_hamming(reference, query):
    """Per-window bit-mismatch counts via explicit per-base bit tables."""
    table = {"A": (0, 0), "C": (0, 1), "G": (1, 0), "T": (1, 1)}
    m = len(query)
    out = []
    for i in range(len(reference) - m + 1):
        d = 0
        for a, b in zip(reference[i:i + m], query):
            d += sum(x != y for x, y in zip(table[a], table[b]))
        out.append(d)
    return out
