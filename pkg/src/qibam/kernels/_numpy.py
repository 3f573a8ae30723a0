"""Pure-numpy kernels with the same in-place contract as the numba ones."""
import numpy as np


def apply_1q(state, mat, target):
    tk = 1 << target
    view = state.reshape(-1, 2, tk)
    state[:] = np.einsum("ij,ajb->aib", mat, view).reshape(-1)


def apply_mcx(state, ctrl_mask, target):
    tk = 1 << target
    idx = np.arange(state.shape[0], dtype=np.int64)
    i0 = idx[((idx & ctrl_mask) == ctrl_mask) & ((idx & tk) == 0)]
    i1 = i0 | tk
    state[i0], state[i1] = state[i1], state[i0].copy()


def apply_phase(state, sorted_qubits, phase):
    mask = 0
    for q in sorted_qubits:
        mask |= 1 << int(q)
    idx = np.arange(state.shape[0], dtype=np.int64)
    state[(idx & mask) == mask] *= phase


def apply_dense(state, mat, qubits):
    n = state.shape[0].bit_length() - 1
    k = len(qubits)
    # tensor axis of qubit q is n-1-q; put listed qubits last, first listed innermost
    src = [n - 1 - int(q) for q in reversed(qubits)]
    dst = list(range(n - k, n))
    tensor = np.moveaxis(state.reshape((2,) * n), src, dst)
    shape = tensor.shape
    out = tensor.reshape(-1, 1 << k) @ mat.T
    state[:] = np.moveaxis(out.reshape(shape), dst, src).reshape(-1)
