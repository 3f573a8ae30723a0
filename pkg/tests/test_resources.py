import pytest

from qibam.errors import InvalidParameters
from qibam.resources import estimate, qsd_cnot_count


def test_genome_scale():
    r = estimate(4, 3 * 10**9, 50)
    assert (r.q_d, r.q_t, r.Q) == (100, 32, 133)
    assert r.memory_mark["H"] == 2 * 2**32
    assert isinstance(r.query_qsd, int)
    assert r.query_qsd == 3 * (4**99 - 2**99)


def test_small_example():
    r = estimate(4, 16, 2)
    assert (r.q_d, r.q_t, r.Q) == (4, 4, 9)
    assert r.init_hamming == {"H": 4, "C0X": 64, "C4X": 8}
    assert r.query_qsd == 168
    assert r.memory_mark == {"H": 32, "C0X": 96, "C7X": 16}
    assert r.grover_gate == {"H": 18, "C0X": 16, "C7X": 1}


@pytest.mark.parametrize("n,count", [(1, 0), (2, 6), (3, 36), (4, 168)])
def test_qsd(n, count):
    assert qsd_cnot_count(n) == count


def test_half_up_rounding():
    # q_t=1, q_d=3: q_t*q_d/2 = 1.5 rounds up
    r = estimate(8, 3, 1)
    assert r.init_hamming["C1X"] == 2


def test_degenerate_keys_accumulate():
    # q_d + q_t = 1 folds the C_{q_d+q_t-1}X terms into C0X
    r = estimate(2, 2, 1)
    assert (r.q_d, r.q_t) == (1, 0)
    assert r.memory_mark == {"H": 2, "C0X": 2}
    assert r.grover_gate == {"H": 4, "C0X": 3}


def test_monotone():
    for N in (10, 17, 100, 1000):
        qs = [estimate(4, N, M).Q for M in range(1, min(N, 20))]
        assert qs == sorted(qs)
    for M in (1, 5, 20):
        qs = [estimate(4, N, M).Q for N in range(M + 1, M + 300)]
        assert qs == sorted(qs)


@pytest.mark.parametrize("args", [(1, 10, 2), (4, 2, 2), (4, 10, 0), (4.0, 10, 2), (True, 10, 2)])
def test_invalid(args):
    with pytest.raises(InvalidParameters):
        estimate(*args)


def test_to_dict_is_json_ready():
    import json

    json.dumps(estimate(4, 3 * 10**9, 50).to_dict())
