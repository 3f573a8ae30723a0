"""Brute-force Hamming aligner used as ground truth."""
from __future__ import annotations

from dataclasses import dataclass

from .dna import hamming_distance, normalize, substrings
from .errors import PatternLongerThanReference


@dataclass(frozen=True)
class ClassicalAlignment:
    distances: tuple
    min_distance: int
    min_indices: tuple

    def to_dict(self):
        return {
            "distances": list(self.distances),
            "min_distance": self.min_distance,
            "min_indices": list(self.min_indices),
        }


def classical_align(reference, query):
    """Encoded-bit Hamming distance of ``query`` against every window of ``reference``."""
    reference, query = normalize(reference), normalize(query)
    if len(query) > len(reference):
        raise PatternLongerThanReference(
            f"query length {len(query)} exceeds reference length {len(reference)}"
        )
    distances = tuple(hamming_distance(w, query) for _, w in substrings(reference, len(query)))
    best = min(distances)
    return ClassicalAlignment(
        distances=distances,
        min_distance=best,
        min_indices=tuple(i for i, d in enumerate(distances) if d == best),
    )
