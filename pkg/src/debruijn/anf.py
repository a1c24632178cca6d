"""Boolean feedback algebra: truth tables, rule feedback functions, ANF.

Truth tables are indexed by the input word read most-significant-first, the
same convention the register module uses for states.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fsr
from .bitword import Bits
from .generator import fired_pairs
from .rules import RuleSpec, SuccessorRule, successor_rule


@dataclass(frozen=True)
class TruthTable:
    arity: int
    bits: Bits

    def __post_init__(self) -> None:
        if len(self.bits) != 1 << self.arity:
            raise ValueError("truth table length must be 2^arity")

    def __call__(self, inputs: Bits) -> int:
        return self.bits[fsr.word_index(inputs)]


def table_from_function(arity: int, fn) -> TruthTable:
    return TruthTable(
        arity, tuple(fn(fsr.index_word(i, arity)) & 1 for i in range(1 << arity))
    )


def table_weight(t: TruthTable) -> int:
    return sum(t.bits)


def h_from_pairs(fired_states, n: int) -> TruthTable:
    """Indicator of the suffixes whose conjugate pair the rule overrides.

    ``fired_states`` must contain both members of every pair; the table fires
    on x1..x_{n-1} exactly when some fired state carries that suffix, so its
    weight equals the number of pairs.
    """
    states = set(map(tuple, fired_states))
    for state in states:
        mate = (state[0] ^ 1,) + state[1:]
        if mate not in states:
            raise ValueError("fired states are not closed under conjugation")
    suffixes = {state[1:] for state in states}
    bits = [0] * (1 << (n - 1))
    for suffix in suffixes:
        bits[fsr.word_index(suffix)] = 1
    return TruthTable(n - 1, tuple(bits))


def _lex_le_rotation(x: Bits, i: int) -> int:
    """1 when x is lexicographically <= its left rotation by i.

    Evaluates the comparison as the literal sum of guarded terms (one per
    position, plus the all-equal tail), with subscripts wrapping modulo n.
    """
    n = len(x)
    value = 0
    equal_prefix = 1
    for j in range(n):
        other = x[(i + j) % n]
        value ^= equal_prefix & (1 ^ x[j]) & other
        equal_prefix &= 1 ^ (x[j] ^ other)
    return value ^ equal_prefix


def necklace_indicator(n: int) -> TruthTable:
    """Necklace membership as a product of per-rotation comparison chains."""

    def fn(x: Bits) -> int:
        result = 1
        for i in range(1, n):
            result &= _lex_le_rotation(x, i)
            if not result:
                break
        return result

    return table_from_function(n, fn)


def rule_feedback(spec: RuleSpec | SuccessorRule) -> fsr.FeedbackFunction:
    """The explicit feedback function whose plain register run equals the rule.

    Assembled as the base feedback XOR the fired-pair indicator lifted to
    arity n; its cycle structure is the single full cycle.
    """
    rule = spec if isinstance(spec, SuccessorRule) else successor_rule(spec)
    n = rule.n
    h = h_from_pairs([s for pair in fired_pairs(rule) for s in pair], n)
    suffix_mask = (1 << (n - 1)) - 1
    bits = [
        fsr.eval_index(rule.base_fsr, idx) ^ h.bits[idx & suffix_mask]
        for idx in range(1 << n)
    ]
    return fsr.table_fsr(n, bits)


@dataclass(frozen=True)
class AnfPolynomial:
    """XOR of monomials; each monomial is a set of variable indices."""

    monomials: frozenset[frozenset[int]]

    def __call__(self, inputs: Bits) -> int:
        value = 0
        for mono in self.monomials:
            term = 1
            for var in mono:
                term &= inputs[var]
            value ^= term
        return value


def to_anf(t: TruthTable) -> AnfPolynomial:
    """Algebraic normal form via the subset-lattice transform over GF(2)."""
    m = t.arity
    coeffs = list(t.bits)
    for v in range(m):
        step = 1 << v
        for mask in range(1 << m):
            if mask & step:
                coeffs[mask] ^= coeffs[mask ^ step]
    monomials = []
    for mask in range(1 << m):
        if coeffs[mask]:
            monomials.append(
                frozenset(m - 1 - bit for bit in range(m) if mask & (1 << bit))
            )
    return AnfPolynomial(frozenset(monomials))


def anf_str(poly: AnfPolynomial) -> str:
    """Render as an xor-joined monomial list, e.g. ``x0 ⊕ x1x3 ⊕ 1``."""
    if not poly.monomials:
        return "0"
    ordered = sorted(poly.monomials, key=lambda mono: (len(mono), sorted(mono)))
    parts = []
    for mono in ordered:
        if not mono:
            parts.append("1")
        else:
            parts.append("".join(f"x{v}" for v in sorted(mono)))
    return " ⊕ ".join(parts)


def table_hex(t: TruthTable) -> str:
    value = 0
    for b in t.bits:
        value = (value << 1) | b
    return format(value, f"0{len(t.bits) // 4}x")
