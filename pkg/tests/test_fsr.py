import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from debruijn import fsr
from debruijn.bitword import is_necklace, parse_word, rotate_left


def test_evaluate_examples():
    state = parse_word("101100")
    assert fsr.evaluate(fsr.pcr(6), state) == 1
    assert fsr.evaluate(fsr.psr(6), state) == 1
    assert fsr.evaluate(fsr.csr(6), state) == 0
    with pytest.raises(ValueError):
        fsr.evaluate(fsr.pcr(6), parse_word("1011"))


def test_step_examples():
    assert fsr.step(fsr.pcr(6), parse_word("011010")) == parse_word("110100")
    assert fsr.step(fsr.psr(6), parse_word("000001")) == parse_word("000011")
    assert fsr.step(fsr.psr(6), parse_word("000011")) == parse_word("000110")


@given(st.integers(2, 10), st.integers(0, 1023))
def test_pcr_step_is_rotation(n, seed):
    state = tuple((seed >> i) & 1 for i in range(n))
    assert fsr.step(fsr.pcr(n), state) == rotate_left(state, 1)


def test_decompose_counts():
    assert len(fsr.decompose(fsr.pcr(6))) == 14
    assert len(fsr.decompose(fsr.psr(6))) == 10
    records = fsr.decompose(fsr.pcr(2))
    assert [str(r) for r in records] == ["00", "01", "11"]


def test_decompose_rejects_oversized_order():
    f = fsr.pcr(2)
    object.__setattr__(f, "n", fsr.MAX_SWEEP_ORDER + 1)
    with pytest.raises(ValueError):
        fsr.decompose(f)


@pytest.mark.parametrize("n", range(2, 13))
def test_decompose_partitions_state_space(n):
    for make in (fsr.pcr, fsr.psr, fsr.csr):
        records = fsr.decompose(make(n))
        assert sum(r.state_count for r in records) == 1 << n
        assert len({r.necklace for r in records}) == len(records)
        for r in records:
            assert is_necklace(r.necklace)
            assert len(r.necklace) % r.least_period == 0
            assert r.state_count == r.least_period
            assert r.weight == sum(r.necklace)


@pytest.mark.parametrize("n", range(2, 17))
def test_cycle_counts_match_formulas(n):
    assert fsr.pcr_cycle_count(n) == len(fsr.decompose(fsr.pcr(n)))
    assert fsr.psr_cycle_count(n) == len(fsr.decompose(fsr.psr(n)))


def test_cycle_count_examples():
    assert fsr.pcr_cycle_count(1) == 2
    assert fsr.pcr_cycle_count(6) == 14
    assert fsr.pcr_cycle_count(7) == 20
    assert fsr.psr_cycle_count(6) == 10
    assert fsr.psr_cycle_count(2) == 2


@pytest.mark.parametrize("n", range(2, 13))
def test_summing_register_cycle_shapes(n):
    for make, parity in ((fsr.psr, 0), (fsr.csr, 1)):
        for r in fsr.decompose(make(n)):
            assert len(r.necklace) == n + 1
            assert r.weight % 2 == parity
            assert (n + 1) % r.least_period == 0


@pytest.mark.parametrize("n", range(2, 13))
def test_pcr_cycles_have_constant_weight(n):
    for r in fsr.decompose(fsr.pcr(n)):
        states = {rotate_left(r.necklace, i) for i in range(n)}
        assert len(states) == r.state_count
        assert {sum(s) for s in states} == {r.weight}


def test_extend_psr_state():
    assert fsr.extend_psr_state(parse_word("000000")) == parse_word("0000000")
    assert fsr.extend_psr_state(parse_word("010101")) == parse_word("0101011")
    assert fsr.extend_psr_state(parse_word("101010")) == parse_word("1010101")
    assert sum(fsr.extend_psr_state(parse_word("110100"))) % 2 == 0


def test_table_round_trip_and_nonsingular_check():
    f = fsr.psr(4)
    dump = fsr.table_hex(f)
    again = fsr.parse_table_text(4, dump)
    assert again.table == tuple(fsr.eval_index(f, i) for i in range(16))
    binary = "".join(str(fsr.eval_index(f, i)) for i in range(16))
    assert fsr.parse_table_text(4, binary).table == again.table
    with pytest.raises(ValueError):
        fsr.table_fsr(4, [0] * 16)  # constant table is singular
    with pytest.raises(ValueError):
        fsr.parse_table_text(4, "zz")


def test_random_nonsingular_tables_partition(seed=11):
    rng = random.Random(seed)
    for _ in range(20):
        n = rng.choice([3, 4, 5, 6])
        h = [rng.randint(0, 1) for _ in range(1 << (n - 1))]
        bits = [((i >> (n - 1)) ^ h[i & ((1 << (n - 1)) - 1)]) & 1 for i in range(1 << n)]
        records = fsr.decompose(fsr.table_fsr(n, bits))
        assert sum(r.state_count for r in records) == 1 << n


def test_sequence_bits_runs_the_plain_register():
    f = fsr.psr(4)
    bits = fsr.sequence_bits(f, parse_word("0001"), 10)
    assert bits[:4] == (0, 0, 0, 1)
    state = parse_word("0001")
    expected = []
    for _ in range(10):
        expected.append(state[0])
        state = fsr.step(f, state)
    assert bits == tuple(expected)


def test_cycle_map_owner_lookup():
    records, owner = fsr.cycle_map(fsr.psr(4))
    for idx in range(16):
        state = fsr.index_word(idx, 4)
        window = fsr.ambient_window(fsr.psr(4), state)
        rec = records[owner[idx]]
        rotations = {rotate_left(window, i) for i in range(len(window))}
        assert rec.necklace in rotations
