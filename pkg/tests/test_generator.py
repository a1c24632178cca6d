import pytest

from debruijn import fsr
from debruijn.bitword import parse_word, word_str
from debruijn.generator import (
    GeneratedSequence,
    PrematureCycleError,
    bits_hex,
    canonical_form,
    fired_pairs,
    generate,
    stream_bits,
    verify_de_bruijn,
)
from debruijn.rules import RuleSpec

import goldens


def test_generate_golden_spot_checks():
    assert canonical_form(RuleSpec(6, "pcr-lz-k", {"k": 1})) == goldens.GRANDDADDY
    assert canonical_form(RuleSpec(6, "pcr-eo-k", {"k": 0})) == goldens.PCR3_J1
    assert canonical_form(RuleSpec(6, "psr-eo-k", {"k": 2})) == goldens.NECKLACE_ORDER[2]


def test_generate_records_start_state():
    seq = generate(RuleSpec(6, "pcr-lz-k", {"k": 1}))
    assert seq.bits[:6] == seq.start == (0,) * 6
    assert len(seq.bits) == 64


def test_generate_from_other_start_is_a_rotation():
    spec = RuleSpec(5, "pcr-lz-k", {"k": 0})
    base = generate(spec).bits
    other = generate(spec, parse_word("10110")).bits
    doubled = base + base
    assert any(doubled[i : i + 32] == other for i in range(32))


def test_verify_de_bruijn():
    assert verify_de_bruijn(parse_word(goldens.GRANDDADDY), 6)
    assert not verify_de_bruijn((0,) * 64, 6)
    assert verify_de_bruijn(parse_word("0011"), 2)
    flipped = list(parse_word(goldens.GRANDDADDY))
    flipped[17] ^= 1
    assert not verify_de_bruijn(tuple(flipped), 6)
    assert not verify_de_bruijn(parse_word("0011"), 3)  # wrong length
    with pytest.raises(ValueError):
        verify_de_bruijn(parse_word("0011"))


def test_verify_accepts_sequence_objects():
    seq = generate(RuleSpec(4, "psr-run-k", {"k": 0}))
    assert verify_de_bruijn(seq)


def test_canonical_form_collapses_equivalent_shift_counts():
    # shift orbits at order 6 have length dividing 60, so k and k+60 coincide
    assert canonical_form(RuleSpec(6, "pcr-lz-k", {"k": 0})) == canonical_form(
        RuleSpec(6, "pcr-lz-k", {"k": 60})
    )
    assert canonical_form(RuleSpec(6, "pcr-lz-k", {"k": 0})) != canonical_form(
        RuleSpec(6, "pcr-lz-k", {"k": 1})
    )


def test_fired_pairs_counts():
    assert len(fired_pairs(RuleSpec(6, "pcr-lz-k", {"k": 0}))) == 13
    assert len(fired_pairs(RuleSpec(6, "psr-run-k", {"k": 0}))) == 9
    for family, params in (
        ("pcr-lz-k", {"k": 2}),
        ("psr-mixed-k", {"k": 0}),
        ("jfb", {"fsr": "pcr"}),
    ):
        spec = RuleSpec(3, family, params)
        base = fsr.psr(3) if family.startswith("psr") else fsr.pcr(3)
        cycles = len(fsr.decompose(base))
        assert len(fired_pairs(spec)) == cycles - 1


def test_fired_pairs_are_conjugates():
    for zero, one in fired_pairs(RuleSpec(5, "psr-eo-k", {"k": 1})):
        assert zero[0] == 0 and one[0] == 1 and zero[1:] == one[1:]


def test_premature_cycle_reports_period():
    # an explicit-choice rule with no chosen states never leaves the zero cycle
    spec = RuleSpec(4, "pcr-table", {"choice": []})
    from debruijn.rules import FAMILIES

    rule = FAMILIES["pcr-table"].compile(spec)
    with pytest.raises(PrematureCycleError) as err:
        generate(rule)
    assert err.value.period == 1


def test_stream_matches_generate():
    spec = RuleSpec(7, "psr-mixed-k", {"k": 3})
    seq = generate(spec)
    streamed = []
    source = stream_bits(spec)
    for _ in range(128):
        streamed.append(next(source))
    # streaming emits the successor bits; the full period wraps around
    assert tuple(streamed) == seq.bits[7:] + seq.bits[:7]


def test_stream_rejects_bad_start():
    with pytest.raises(ValueError):
        next(stream_bits(RuleSpec(4, "pcr-lz-k", {"k": 0}), (0, 1)))


def test_bits_hex_packing():
    assert bits_hex(parse_word("0011")) == "3"
    assert bits_hex(parse_word("10000000")) == "80"
    assert bits_hex(parse_word("1")) == "8"  # padded to one nibble
    granddaddy_hex = bits_hex(parse_word(goldens.GRANDDADDY))
    assert len(granddaddy_hex) == 16
    assert int(granddaddy_hex, 16) == int(goldens.GRANDDADDY, 2)


def test_sequence_str():
    seq = GeneratedSequence(2, parse_word("0011"), parse_word("00"))
    assert str(seq) == "0011"
    assert word_str(seq.bits) == "0011"
