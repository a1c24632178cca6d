import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from debruijn.bitword import (
    INFINITE_RUN,
    companion,
    conjugate,
    double_zero_starts,
    is_necklace,
    leading_zeros,
    least_rotation_index,
    max_run_starts,
    max_zero_run,
    necklace_of,
    parse_word,
    rotate_left,
    rotate_right,
    shift_dz,
    shift_eo,
    shift_lz,
    shift_rz,
    weight,
    word,
    word_str,
)

words = st.lists(st.integers(0, 1), min_size=1, max_size=16).map(tuple)


def brute_least_rotation(w):
    return min(range(len(w)), key=lambda i: rotate_left(w, i))


def test_weight_examples():
    assert weight(parse_word("011111")) == 5
    assert weight(parse_word("000000")) == 0
    assert weight(parse_word("001110")) == 3


def test_conjugate_companion_examples():
    assert conjugate(parse_word("001011")) == parse_word("101011")
    assert companion(parse_word("001011")) == parse_word("001010")


@given(words)
def test_conjugate_companion_involutions(w):
    assert conjugate(conjugate(w)) == w
    assert companion(companion(w)) == w
    assert abs(weight(conjugate(w)) - weight(w)) == 1


def test_rotate_examples():
    w = parse_word("010110")
    assert rotate_left(w, 1) == parse_word("101100")
    assert rotate_left(w, 0) == w
    assert rotate_left(w, len(w)) == w
    assert rotate_right(rotate_left(w, 1), 1) == w


@given(words, st.integers(-40, 40))
def test_rotate_modular(w, k):
    assert rotate_left(w, k) == rotate_left(w, k % len(w))


def test_necklace_examples():
    assert is_necklace(parse_word("000000"))
    assert not is_necklace(parse_word("000010"))
    assert is_necklace(parse_word("0011101"))


def test_necklace_exhaustive_small():
    for m in range(1, 13):
        for x in range(1 << m):
            w = tuple((x >> (m - 1 - i)) & 1 for i in range(m))
            assert least_rotation_index(w) == brute_least_rotation(w)


@given(words)
def test_necklace_oracle(w):
    assert least_rotation_index(w) == brute_least_rotation(w)
    assert is_necklace(w) == (w == min(rotate_left(w, i) for i in range(len(w))))


def test_shift_lz_examples():
    assert shift_lz(parse_word("001011")) == parse_word("010110")
    assert shift_lz(parse_word("010110")) == parse_word("011001")
    assert shift_lz(parse_word("011111")) == parse_word("011111")
    with pytest.raises(ValueError):
        shift_lz(parse_word("101011"))


def test_shift_eo_examples():
    assert shift_eo(parse_word("001011")) == parse_word("011001")
    assert shift_eo(parse_word("011001")) == parse_word("100101")
    assert shift_eo(parse_word("000001")) == parse_word("000001")
    with pytest.raises(ValueError):
        shift_eo(parse_word("001010"))


def test_shift_rz_examples():
    assert shift_rz(parse_word("0101011")) == parse_word("0101101")
    assert shift_rz(parse_word("0101101")) == parse_word("0110101")
    assert shift_rz(parse_word("0000011")) == parse_word("0000011")
    with pytest.raises(ValueError):
        shift_rz(parse_word("0101011")[1:])  # 101011 does not lead a max run


def brute_next_rotation(w, accepts):
    for j in range(1, len(w) + 1):
        r = rotate_left(w, j)
        if accepts(r):
            return r
    raise AssertionError


def test_shift_dz_by_oracle():
    for text in ("0010010", "0000011", "0011011", "00110101", "0001001"):
        v = parse_word(text)
        want = brute_next_rotation(v, lambda r: r[0] == 0 and r[1] == 0)
        assert shift_dz(v) == want
    with pytest.raises(ValueError):
        shift_dz(parse_word("010011"))


def test_shift_dz_unique_position_fixed_point():
    v = parse_word("0011011")
    assert double_zero_starts(v) == [0]
    assert shift_dz(v) == v


def test_max_zero_run_examples():
    assert max_zero_run(parse_word("0000101")) == 4
    assert max_zero_run(parse_word("0011011")) == 2
    assert max_zero_run(parse_word("0000000")) == INFINITE_RUN
    assert max_zero_run(parse_word("1111")) == 0
    assert INFINITE_RUN > 10**9


@given(words)
def test_max_zero_run_cyclic(w):
    doubled = w + w
    runs = [0]
    cur = 0
    for b in doubled:
        cur = cur + 1 if b == 0 else 0
        runs.append(cur)
    expected = min(max(runs), len(w)) if 1 in w else INFINITE_RUN
    assert max_zero_run(w) == expected


@settings(max_examples=200)
@given(words)
def test_shift_operators_are_rotations_with_orbits(w):
    m = len(w)
    rotations = {rotate_left(w, i) for i in range(m)}
    if w[0] == 0:
        orbit = [w]
        cur = shift_lz(w)
        while cur != w:
            assert cur in rotations and cur[0] == 0
            orbit.append(cur)
            cur = shift_lz(cur)
        assert len(set(orbit)) == len({r for r in rotations if r[0] == 0})
    if w[-1] == 1:
        cur = shift_eo(w)
        seen = 1
        while cur != w:
            assert cur in rotations and cur[-1] == 1
            cur = shift_eo(cur)
            seen += 1
        assert seen == len({r for r in rotations if r[-1] == 1})
    if len(w) >= 2 and w[0] == 0 and w[1] == 0:
        cur = shift_dz(w)
        seen = 1
        while cur != w:
            assert cur in rotations
            cur = shift_dz(cur)
            seen += 1
        assert seen == len(double_zero_starts(w))


@given(words)
def test_shift_rz_orbit(w):
    run = max_zero_run(w)
    if run == INFINITE_RUN:
        assert shift_rz(w) == w
        return
    starts = max_run_starts(w)
    v = rotate_left(w, starts[0])
    cur = shift_rz(v)
    seen = 1
    while cur != v:
        assert leading_zeros(cur) == run
        cur = shift_rz(cur)
        seen += 1
    assert seen == len(set(rotate_left(w, s) for s in starts))


def test_word_parsing_round_trip():
    assert word_str(parse_word("0101")) == "0101"
    assert word([1, 0, 1]) == (1, 0, 1)
    with pytest.raises(ValueError):
        parse_word("01x")
    with pytest.raises(ValueError):
        word([])
    with pytest.raises(ValueError):
        word([2])
