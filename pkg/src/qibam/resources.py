"""Closed-form qubit and gate-count estimates.

Gate counts are keyed by control count: ``"H"``, ``"C0X"`` (plain X),
``"C{c}X"`` for a c-controlled X. Averaged terms (half the data bits set,
half the tag controls inverted) are rounded half-up to an integer, so they
are estimates rather than worst cases. All arithmetic uses Python ints.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .dna import ceil_log2
from .errors import InvalidParameters


def _half_up(numerator, denominator):
    return (2 * numerator + denominator) // (2 * denominator)


def _tally(*pairs):
    # degenerate sizes can map two terms onto the same key (e.g. C0X)
    out = {}
    for key, count in pairs:
        out[key] = out.get(key, 0) + count
    return out


@dataclass(frozen=True)
class ResourceEstimate:
    alphabet: int
    reference_length: int
    read_length: int
    q_d: int
    q_t: int
    Q: int
    init_hamming: dict
    query_qsd: int
    memory_mark: dict
    grover_gate: dict

    def to_dict(self):
        return asdict(self)


def qsd_cnot_count(n):
    """Quantum Shannon Decomposition count for an ``n``-qubit unitary."""
    if n < 1:
        raise InvalidParameters(f"QSD needs n >= 1, got {n}")
    return 3 * (4 ** (n - 1) - 2 ** (n - 1))


def estimate(alphabet, reference_length, read_length):
    """Resources for alphabet size ``alphabet``, reference length N and read length M."""
    A, N, M = alphabet, reference_length, read_length
    for name, v in (("A", A), ("N", N), ("M", M)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidParameters(f"{name} must be an integer, got {v!r}")
    if A < 2 or M < 1 or N <= M:
        raise InvalidParameters(f"need A >= 2, M >= 1, N > M; got A={A}, N={N}, M={M}")

    q_d = ceil_log2(A) * M
    q_t = ceil_log2(N - M)
    Q = q_d + q_t + 1
    tags = 2 ** q_t
    joint = q_d + q_t

    init_hamming = _tally(
        ("H", q_t),
        ("C0X", q_t * tags),
        (f"C{q_t}X", _half_up(q_t * q_d, 2)),
    )
    memory_mark = _tally(
        ("H", tags * 2),
        ("C0X", tags * (M + q_t)),
        (f"C{joint - 1}X", tags),
    )
    grover_gate = _tally(
        ("H", 2 * joint + 2),
        ("C0X", 2 * joint),
        (f"C{joint - 1}X", 1),
    )
    return ResourceEstimate(
        alphabet=A,
        reference_length=N,
        read_length=M,
        q_d=q_d,
        q_t=q_t,
        Q=Q,
        init_hamming=init_hamming,
        query_qsd=qsd_cnot_count(q_d),
        memory_mark=memory_mark,
        grover_gate=grover_gate,
    )
