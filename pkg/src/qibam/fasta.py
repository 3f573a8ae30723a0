"""Minimal FASTA reading: first record only, ACGT only."""
from __future__ import annotations

from .dna import normalize
from .errors import EmptySequence, InvalidBase


class FastaError(ValueError):
    pass


def read_first_record(path):
    """Return ``(record_id, sequence)`` for the first record in ``path``.

    Sequence lines are upper-cased; any character outside ACGT is rejected
    with its 0-based position in the sequence and its file line number.
    """
    record_id = None
    chunks = []
    starts = []  # (sequence offset, line number) per sequence line
    offset = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(">"):
                if record_id is not None:
                    break
                record_id = line[1:].split()[0] if line[1:].strip() else ""
                continue
            if record_id is None:
                raise FastaError(f"{path}:{lineno}: expected a '>' header before sequence data")
            starts.append((offset, lineno))
            chunks.append(line)
            offset += len(line)
    if record_id is None:
        raise FastaError(f"{path}: no FASTA record found")
    seq = "".join(chunks)
    try:
        return record_id, normalize(seq)
    except InvalidBase as exc:
        lineno = max(ln for off, ln in starts if off <= exc.position)
        raise FastaError(
            f"{path}:{lineno}: invalid base {exc.char!r} at sequence position {exc.position}"
        ) from exc
    except EmptySequence as exc:
        raise FastaError(f"{path}: first record has no sequence") from exc
