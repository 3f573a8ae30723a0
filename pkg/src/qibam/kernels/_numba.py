"""Numba kernels. In-place over a complex128 amplitude array.

Qubit q is bit q of the basis index. Loops run over the 2^(n-k) "base"
indices that have zeros at the k touched positions; the touched bits are
then OR-ed back in.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _insert_zeros(g, sorted_qubits):
    # sorted_qubits ascending; spread g so that each listed bit position is 0
    i = g
    for q in sorted_qubits:
        low = i & ((1 << q) - 1)
        i = ((i >> q) << (q + 1)) | low
    return i


@njit(cache=True)
def apply_1q(state, mat, target):
    tk = 1 << target
    half = state.shape[0] >> 1
    m00, m01, m10, m11 = mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1]
    for g in range(half):
        i0 = ((g >> target) << (target + 1)) | (g & (tk - 1))
        i1 = i0 | tk
        a = state[i0]
        b = state[i1]
        state[i0] = m00 * a + m01 * b
        state[i1] = m10 * a + m11 * b


@njit(cache=True)
def apply_mcx(state, ctrl_mask, target):
    tk = 1 << target
    half = state.shape[0] >> 1
    for g in range(half):
        i0 = ((g >> target) << (target + 1)) | (g & (tk - 1))
        if (i0 & ctrl_mask) == ctrl_mask:
            i1 = i0 | tk
            tmp = state[i0]
            state[i0] = state[i1]
            state[i1] = tmp


@njit(cache=True)
def apply_phase(state, sorted_qubits, phase):
    mask = 0
    for q in sorted_qubits:
        mask |= 1 << q
    count = state.shape[0] >> sorted_qubits.shape[0]
    for g in range(count):
        i = _insert_zeros(g, sorted_qubits) | mask
        state[i] *= phase


@njit(cache=True)
def apply_dense(state, mat, qubits):
    k = qubits.shape[0]
    dim = 1 << k
    sorted_qubits = np.sort(qubits)
    offsets = np.zeros(dim, dtype=np.int64)
    for j in range(dim):
        off = 0
        for m in range(k):
            if (j >> m) & 1:
                off |= 1 << qubits[m]
        offsets[j] = off
    buf = np.empty(dim, dtype=np.complex128)
    count = state.shape[0] >> k
    for g in range(count):
        base = _insert_zeros(g, sorted_qubits)
        for j in range(dim):
            buf[j] = state[base + offsets[j]]
        for r in range(dim):
            acc = 0j
            for c in range(dim):
                acc += mat[r, c] * buf[c]
            state[base + offsets[r]] = acc
