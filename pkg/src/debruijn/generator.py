"""Drive a successor rule to a full 2^n-bit sequence and verify the result."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import fsr
from .bitword import Bits, word_str
from .rules import RuleSpec, SuccessorRule, successor_rule


class PrematureCycleError(ValueError):
    """The rule closed a cycle before visiting all 2^n states."""

    def __init__(self, n: int, period: int):
        super().__init__(
            f"rule is not de Bruijn at order {n}: start state recurs after "
            f"{period} of {1 << n} steps"
        )
        self.n = n
        self.period = period


@dataclass(frozen=True)
class GeneratedSequence:
    n: int
    bits: Bits
    start: Bits

    def __str__(self) -> str:
        return word_str(self.bits)


def _as_rule(spec_or_rule: RuleSpec | SuccessorRule) -> SuccessorRule:
    if isinstance(spec_or_rule, SuccessorRule):
        return spec_or_rule
    return successor_rule(spec_or_rule)


def generate(
    spec: RuleSpec | SuccessorRule, start: Bits | None = None
) -> GeneratedSequence:
    """Run a rule from ``start`` (default all-zero) through one full period.

    Raises PrematureCycleError when the walk returns to the start state early,
    which is exactly the failure mode of a rule that is not de Bruijn. Firing
    decisions are cached per state suffix for the duration of the call.
    """
    rule = _as_rule(spec)
    n = rule.n
    if start is None:
        start = (0,) * n
    if len(start) != n:
        raise ValueError(f"start state must have {n} bits")
    total = 1 << n
    state = start
    out = []
    fire_cache: dict[Bits, int] = {}
    base_bit = rule.base_bit
    fires = rule.fires
    for i in range(total):
        suffix = state[1:]
        fired = fire_cache.get(suffix)
        if fired is None:
            fired = 1 if fires(suffix) else 0
            fire_cache[suffix] = fired
        bit = base_bit(state) ^ fired
        out.append(bit)
        state = suffix + (bit,)
        if state == start and i != total - 1:
            raise PrematureCycleError(n, i + 1)
    if state != start:
        raise PrematureCycleError(n, total)
    return GeneratedSequence(n=n, bits=start + tuple(out[: total - n]), start=start)


def stream_bits(
    spec: RuleSpec | SuccessorRule, start: Bits | None = None
) -> Iterator[int]:
    """Yield sequence bits forever while holding only the n-bit state.

    Nothing is cached or buffered, so the working set stays O(n) no matter
    how many bits are consumed.
    """
    rule = _as_rule(spec)
    n = rule.n
    state = (0,) * n if start is None else tuple(start)
    if len(state) != n:
        raise ValueError(f"start state must have {n} bits")
    base_bit = rule.base_bit
    fires = rule.fires
    while True:
        suffix = state[1:]
        bit = base_bit(state) ^ (1 if fires(suffix) else 0)
        yield bit
        state = suffix + (bit,)


def verify_de_bruijn(bits: Bits | GeneratedSequence, n: int | None = None) -> bool:
    """True when every n-bit window occurs exactly once cyclically."""
    if isinstance(bits, GeneratedSequence):
        n = bits.n
        bits = bits.bits
    if n is None:
        raise ValueError("order n is required when passing raw bits")
    length = len(bits)
    if length != 1 << n:
        return False
    mask = (1 << n) - 1
    window = 0
    for b in bits[:n]:
        window = (window << 1) | b
    seen = bytearray(length)
    for i in range(length):
        if seen[window]:
            return False
        seen[window] = 1
        window = ((window << 1) & mask) | bits[(i + n) % length]
    return True


def canonical_form(spec: RuleSpec | SuccessorRule) -> str:
    """The sequence string from the all-zero start; equal strings mean equal rules
    as far as distinctness counting is concerned."""
    return word_str(generate(spec).bits)


def fired_pairs(spec: RuleSpec | SuccessorRule) -> tuple[tuple[Bits, Bits], ...]:
    """Every conjugate pair on which the rule overrides the base feedback.

    Pairs are returned as (zero-led state, one-led state), sorted.
    """
    rule = _as_rule(spec)
    n = rule.n
    if n > fsr.MAX_SWEEP_ORDER:
        raise ValueError(f"order {n} exceeds the sweep budget ({fsr.MAX_SWEEP_ORDER})")
    pairs = []
    for idx in range(1 << (n - 1)):
        suffix = fsr.index_word(idx, n - 1)
        if rule.fires(suffix):
            pairs.append(((0,) + suffix, (1,) + suffix))
    return tuple(pairs)


def bits_hex(bits: Bits) -> str:
    """Pack bits into hex, first bit in the most significant position.

    The tail is zero-padded to a whole number of hex digits.
    """
    padded = bits + (0,) * (-len(bits) % 4)
    value = 0
    for b in padded:
        value = (value << 1) | b
    return format(value, f"0{len(padded) // 4}x")
