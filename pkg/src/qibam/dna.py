"""DNA encoding and construction of the indexed database circuits.

Bases map to two bits, A=00, C=01, G=10, T=11, with the first base in the
most significant pair. The register layout is tag qubits ``0..q_t-1``,
then data qubits ``q_t..q_t+q_d-1`` (data value bit ``j`` lives on qubit
``q_t + j``), then any ancillas.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, CircuitBuilder
from .errors import (
    EmptySequence,
    InvalidBase,
    LayoutInvalid,
    LengthMismatch,
    PatternLongerThanReference,
)

BASES = "ACGT"
BITS_PER_BASE = 2
_CODE = {b: i for i, b in enumerate(BASES)}


def normalize(seq):
    """Upper-case ``seq`` and check it only holds A, C, G, T."""
    if not isinstance(seq, str):
        raise TypeError(f"DNA sequence must be a str, got {type(seq).__name__}")
    if not seq:
        raise EmptySequence("DNA sequence is empty")
    upper = seq.upper()
    for pos, ch in enumerate(upper):
        if ch not in _CODE:
            raise InvalidBase(pos, seq[pos])
    return upper


def encode_value(pattern):
    """Integer value of the data register holding ``pattern``."""
    value = 0
    for ch in normalize(pattern):
        value = (value << BITS_PER_BASE) | _CODE[ch]
    return value


def encode_pattern(pattern):
    """Bit string of ``pattern``, e.g. ``"CA" -> "0100"``."""
    pattern = normalize(pattern)
    return format(encode_value(pattern), f"0{BITS_PER_BASE * len(pattern)}b")


def decode_value(value, length):
    out = []
    for _ in range(length):
        out.append(BASES[value & 3])
        value >>= BITS_PER_BASE
    return "".join(reversed(out))


def hamming_distance(a, b):
    """Number of differing bits between the 2-bit encodings of ``a`` and ``b``."""
    a, b = normalize(a), normalize(b)
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    return (encode_value(a) ^ encode_value(b)).bit_count()


def substrings(reference, m):
    """All ``(i, reference[i:i+m])`` windows, ``i = 0 .. N-m``."""
    reference = normalize(reference)
    if m < 1:
        raise ValueError(f"window length must be >= 1, got {m}")
    if m > len(reference):
        raise PatternLongerThanReference(f"pattern length {m} exceeds reference length {len(reference)}")
    return [(i, reference[i:i + m]) for i in range(len(reference) - m + 1)]


def ceil_log2(x):
    return (x - 1).bit_length() if x > 0 else 0


def tag_qubits_for(num_windows):
    """Tag register width able to address ``num_windows`` memories.

    Takes the larger of ceil(log2(N-M)) and ceil(log2(N-M+1)); the first
    alone is one qubit short when N-M is a power of two.
    """
    n_minus_m = num_windows - 1
    return max(ceil_log2(n_minus_m), ceil_log2(num_windows))


@dataclass(frozen=True)
class QuantumDatabase:
    pattern_length: int
    q_t: int
    q_d: int
    memories: tuple  # ((index, data value), ...)
    num_windows: int
    ancillas: int = 0

    def __post_init__(self):
        if self.q_d != BITS_PER_BASE * self.pattern_length:
            raise LayoutInvalid(f"q_d={self.q_d} but pattern length {self.pattern_length} needs {2 * self.pattern_length}")
        if self.q_t < 0 or (1 << self.q_t) < self.num_windows:
            raise LayoutInvalid(f"{self.q_t} tag qubits cannot address {self.num_windows} windows")
        if self.ancillas < 0:
            raise LayoutInvalid("negative ancilla count")
        seen = set()
        for idx, bits in self.memories:
            if not 0 <= idx < self.num_windows or idx in seen:
                raise LayoutInvalid(f"memory index {idx} invalid or repeated")
            if not 0 <= bits < (1 << self.q_d):
                raise LayoutInvalid(f"memory {idx} value {bits} does not fit {self.q_d} data qubits")
            seen.add(idx)

    @classmethod
    def from_reference(cls, reference, m, exclude=(), ancillas=0):
        """Database of every length-``m`` window, minus the indices in ``exclude``."""
        windows = substrings(reference, m)
        excluded = set(exclude)
        for idx in excluded:
            if not 0 <= idx < len(windows):
                raise LayoutInvalid(f"excluded index {idx} is not a window index")
        memories = tuple((i, encode_value(w)) for i, w in windows if i not in excluded)
        return cls(
            pattern_length=m,
            q_t=tag_qubits_for(len(windows)),
            q_d=BITS_PER_BASE * m,
            memories=memories,
            num_windows=len(windows),
            ancillas=ancillas,
        )

    @property
    def tag_qubits(self):
        return tuple(range(self.q_t))

    @property
    def data_qubits(self):
        return tuple(range(self.q_t, self.q_t + self.q_d))

    @property
    def num_qubits(self):
        return self.q_t + self.q_d + self.ancillas

    @property
    def stored_indices(self):
        return tuple(i for i, _ in self.memories)

    def data_qubit(self, bit):
        return self.q_t + bit


def _dressing(db, index):
    """Tag qubits that must be X-flipped so the all-ones control selects ``index``."""
    return [q for q in db.tag_qubits if not (index >> q) & 1]


def build_qpd_circuit(db):
    """Indexed superposition: each tag ``i`` paired with its stored window.

    Unstored tags keep data ``|0...0>``.
    """
    if not isinstance(db, QuantumDatabase):
        raise LayoutInvalid("expected a QuantumDatabase")
    b = CircuitBuilder(db.num_qubits, name="qpd-init")
    for q in db.tag_qubits:
        b.h(q)
    for idx, bits in db.memories:
        if bits == 0:
            continue
        dress = _dressing(db, idx)
        for q in dress:
            b.x(q)
        for j in range(db.q_d):
            if (bits >> j) & 1:
                b.mcx(db.tag_qubits, db.data_qubit(j))
        for q in dress:
            b.x(q)
    return b.build()


def build_hamming_evolution(query, db):
    """XOR the classical query encoding into the data register."""
    query = normalize(query)
    if len(query) != db.pattern_length:
        raise LengthMismatch(f"query length {len(query)} != stored pattern length {db.pattern_length}")
    value = encode_value(query)
    b = CircuitBuilder(db.num_qubits, name="hamming-evolution")
    for j in range(db.q_d):
        if (value >> j) & 1:
            b.x(db.data_qubit(j))
    return b.build()


def build_database_circuit(db, query):
    """Database load followed by Hamming evolution for ``query``."""
    c = build_qpd_circuit(db) + build_hamming_evolution(query, db)
    return Circuit(c.num_qubits, c.ops, name="database")
