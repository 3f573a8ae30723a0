import itertools

import pytest

from conftest import WORKED_REFERENCE, SUPERSTRING
from oracles import brute_force_hamming
from qibam.classical import classical_align
from qibam.errors import PatternLongerThanReference


def test_worked():
    r = classical_align(WORKED_REFERENCE, "CA")
    assert r.min_distance == 1
    assert r.min_indices == (0, 7, 11, 14)
    assert len(r.distances) == 15


def test_superstring():
    r = classical_align(SUPERSTRING, "CA")
    assert (r.min_distance, r.min_indices) == (0, (15,))


@pytest.mark.parametrize("s", ["A", "GATTACA", "acgtacgt"])
def test_identity(s):
    r = classical_align(s, s)
    assert (r.min_distance, r.min_indices) == (0, (0,))


@pytest.mark.parametrize("query", ["".join(p) for p in itertools.product("ACGT", repeat=3)])
def test_matches_bit_table_oracle(query):
    r = classical_align(SUPERSTRING, query)
    assert list(r.distances) == brute_force_hamming(SUPERSTRING, query)
    assert all(0 <= d <= 6 for d in r.distances)
    assert r.min_distance == min(r.distances)


def test_too_long():
    with pytest.raises(PatternLongerThanReference):
        classical_align("AC", "ACG")


def test_to_dict():
    assert classical_align("ACGT", "CG").to_dict() == {
        "distances": [3, 0, 3],
        "min_distance": 0,
        "min_indices": [1],
    }
