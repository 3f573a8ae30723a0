"""Text format for circuits: a line-oriented cQASM 1.0 subset.

    version 1.0
    qubits <N>
    h q[i] | x q[i] | ry q[i], <angle> | rz q[i], <angle>
    cnot q[i], q[j] | toffoli q[i], q[j], q[k]
    cX q[c1], ..., q[cm], q[t]          (extension, m >= 3)
    cphase q[i1], ..., q[ik], <angle>   (extension)

``#`` starts a comment. Angles are decimal radians, written with 17
significant digits so doubles round-trip exactly.
"""
from __future__ import annotations

import math
import re

from .circuit import Circuit
from .errors import (
    MissingHeader,
    QasmSyntaxError,
    QubitOutOfRange,
    UnknownGate,
    UnsupportedOpForSerialization,
)
from .statevector import (
    MAX_QUBITS,
    H,
    X,
    ControlledPhase,
    ControlledX,
    DenseUnitary,
    Ry,
    Rz,
)

_QUBIT = re.compile(r"q\s*\[\s*(\d+)\s*\]\Z")
_ANGLE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?\Z")
_GATE_LINE = re.compile(r"([A-Za-z_]\w*)(?:\s+(.*))?\Z")


def _fmt_angle(angle):
    return format(angle, ".17g")


def _q(i):
    return f"q[{i}]"


def serialize(circuit):
    lines = ["version 1.0", f"qubits {circuit.num_qubits}"]
    for op in circuit.ops:
        if isinstance(op, H):
            lines.append(f"h {_q(op.target)}")
        elif isinstance(op, X):
            lines.append(f"x {_q(op.target)}")
        elif isinstance(op, Ry):
            lines.append(f"ry {_q(op.target)},{_fmt_angle(op.angle)}")
        elif isinstance(op, Rz):
            lines.append(f"rz {_q(op.target)},{_fmt_angle(op.angle)}")
        elif isinstance(op, ControlledX):
            args = ",".join(_q(i) for i in op.controls + (op.target,))
            mnemonic = {0: "x", 1: "cnot", 2: "toffoli"}.get(len(op.controls), "cX")
            lines.append(f"{mnemonic} {args}")
        elif isinstance(op, ControlledPhase):
            args = ",".join(_q(i) for i in op.qubits)
            lines.append(f"cphase {args},{_fmt_angle(op.angle)}")
        elif isinstance(op, DenseUnitary):
            raise UnsupportedOpForSerialization(
                f"dense unitary {op.label!r} on qubits {op.qubits} has no gate-level form"
            )
        else:
            raise UnsupportedOpForSerialization(f"cannot serialize {op!r}")
    return "\n".join(lines) + "\n"


def _meaningful_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_qubit(token, lineno, num_qubits):
    m = _QUBIT.match(token)
    if not m:
        raise QasmSyntaxError(lineno, f"expected qubit operand q[i], got {token!r}")
    idx = int(m.group(1))
    if idx >= num_qubits:
        raise QubitOutOfRange(lineno, f"qubit {idx} out of range (qubits {num_qubits})")
    return idx


def _parse_angle(token, lineno):
    if not _ANGLE.match(token):
        raise QasmSyntaxError(lineno, f"expected decimal angle, got {token!r}")
    value = float(token)
    if not math.isfinite(value):
        raise QasmSyntaxError(lineno, f"angle {token!r} is not finite")
    return value


# mnemonic -> (min qubits, max qubits or None, takes angle)
_ARITY = {
    "h": (1, 1, False),
    "x": (1, 1, False),
    "ry": (1, 1, True),
    "rz": (1, 1, True),
    "cnot": (2, 2, False),
    "toffoli": (3, 3, False),
    "cx": (4, None, False),
    "cphase": (1, None, True),
}


def _parse_gate(line, lineno, num_qubits):
    m = _GATE_LINE.match(line)
    if not m:
        raise QasmSyntaxError(lineno, f"cannot parse {line!r}")
    mnemonic, rest = m.group(1), m.group(2) or ""
    key = mnemonic.lower()
    if key not in _ARITY:
        raise UnknownGate(lineno, f"unknown gate {mnemonic!r}")
    lo, hi, takes_angle = _ARITY[key]
    tokens = [t.strip() for t in rest.split(",")] if rest.strip() else []
    if any(not t for t in tokens):
        raise QasmSyntaxError(lineno, "empty operand")
    angle = None
    if takes_angle:
        if not tokens:
            raise QasmSyntaxError(lineno, f"{mnemonic} needs an angle operand")
        angle = _parse_angle(tokens.pop(), lineno)
    if len(tokens) < lo or (hi is not None and len(tokens) > hi):
        want = str(lo) if hi == lo else f"at least {lo}"
        raise QasmSyntaxError(lineno, f"{mnemonic} takes {want} qubit operands, got {len(tokens)}")
    qubits = [_parse_qubit(t, lineno, num_qubits) for t in tokens]
    if len(set(qubits)) != len(qubits):
        raise QasmSyntaxError(lineno, f"repeated qubit operand in {mnemonic}")

    if key == "h":
        return H(qubits[0])
    if key == "x":
        return X(qubits[0])
    if key == "ry":
        return Ry(qubits[0], angle)
    if key == "rz":
        return Rz(qubits[0], angle)
    if key == "cphase":
        return ControlledPhase(tuple(qubits), angle)
    return ControlledX(tuple(qubits[:-1]), qubits[-1])


def parse(text, name="parsed"):
    """Parse circuit text; raises a :class:`QasmError` subclass carrying the line number."""
    lines = _meaningful_lines(text)
    header = next(lines, None)
    if header is None or not re.fullmatch(r"version\s+\S+", header[1]):
        raise MissingHeader(header[0] if header else 1, "first statement must be 'version 1.0'")
    lineno, line = header
    if line.split()[1] != "1.0":
        raise QasmSyntaxError(lineno, f"unsupported version {line.split()[1]!r}")

    decl = next(lines, None)
    if decl is None or not decl[1].startswith("qubits"):
        raise MissingHeader(decl[0] if decl else lineno + 1, "second statement must be 'qubits <N>'")
    lineno, line = decl
    m = re.fullmatch(r"qubits\s+(\d+)", line)
    if not m:
        raise QasmSyntaxError(lineno, f"malformed qubit declaration {line!r}")
    num_qubits = int(m.group(1))
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise QasmSyntaxError(lineno, f"qubit count {num_qubits} outside [1, {MAX_QUBITS}]")

    ops = [_parse_gate(line, lineno, num_qubits) for lineno, line in lines]
    return Circuit(num_qubits, tuple(ops), name)
