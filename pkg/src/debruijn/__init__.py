"""Successor-rule de Bruijn sequence generation over cycling and summing registers."""

from .bitword import (
    Bits,
    INFINITE_RUN,
    companion,
    conjugate,
    is_necklace,
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
    word_str,
)
from .fsr import (
    CycleRecord,
    FeedbackFunction,
    csr,
    decompose,
    extend_psr_state,
    pcr,
    pcr_cycle_count,
    psr,
    psr_cycle_count,
    table_fsr,
)
from .generator import (
    GeneratedSequence,
    PrematureCycleError,
    canonical_form,
    fired_pairs,
    generate,
    stream_bits,
    verify_de_bruijn,
)
from .rules import (
    BudgetExceededError,
    InvalidRuleSpecError,
    RuleSpec,
    enumerate_table_choices,
    next_bit,
    successor_rule,
    validate,
)

__version__ = "0.1.0"
