"""Successor rules: deterministic next-bit functions on register states.

Every rule follows one shape: emit the base register's feedback bit, except on
a designated set of states where the bit is complemented. The firing condition
depends only on the last n-1 bits of the state, so fired states always come in
conjugate pairs, and each rule is addressable by a serializable RuleSpec.

Families over the pure cycling register (base bit = first state bit):

* ``pcr-lz-k``      fire when the k-th zero-led rotation after v = 0,c1..c_{n-1}
                    is a necklace.
* ``pcr-eo-k``      same with one-ended rotations of u = c1..c_{n-1},1.
* ``pcr-bands-lz``  weight bands: thresholds ks pick a per-band shift count
                    applied to v before the necklace test.
* ``pcr-bands-eo``  the one-ended variant of the weight bands.
* ``pcr-g-lz``      a per-weight shift-count map g applied to v.
* ``pcr-g-eo``      the one-ended variant of the shift-count map.
* ``pcr-table``     fire when v equals an explicitly chosen zero-led state of
                    its cycle (one choice per cycle).
* ``jfb``           cycle-representative rule over any nonsingular register.

Families over the pure summing register (base bit = state parity):

* ``psr-run-k``     fire when the (n+1)-bit window c1..c_{n-1},1+sum,1 leads a
                    maximal zero run and its k-th max-run rotation is a necklace.
* ``psr-eo-k``      fire when the k-th one-ended rotation of 1+sum,c1..,1 is a
                    necklace (with a one-step fixup when the orbit closes).
* ``psr-index-s``   fire when the rotation cut after the last 1 of the prefix
                    is a necklace.
* ``psr-index-t``   same with the first 1.
* ``psr-eo-table``  fire when the window equals an explicitly chosen one-ended
                    state of its cycle.
* ``psr-mixed-k``   double-zero rotations ranked by k for even-parity suffixes,
                    a fixed necklace-position test otherwise.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from . import fsr
from .bitword import (
    Bits,
    double_zero_starts,
    is_necklace,
    leading_zeros,
    max_run_starts,
    max_zero_run,
    necklace_of,
    one_positions,
    parse_word,
    rotate_left,
    word_str,
    zero_positions,
)

DEFAULT_BUDGET = 10**6

# Root orientation used when a rule's fired pairs are read as tree edges:
# the parent of an edge strictly precedes the child under the named relation.
ORDER_WEIGHT_UP = "weight-up"  # parent has the larger weight; root all-ones
ORDER_WEIGHT_DOWN = "weight-down"  # parent has the smaller weight; root all-zero
ORDER_LEX_REP = "lex-rep"  # parent has the smaller cycle representative
ORDER_RUN = "run"  # parent has the longer maximal zero run
ORDER_NECKLACE = "necklace"  # parent has the smaller necklace
ORDER_MIXED = "mixed"  # weight descending, necklace as tie-break


class InvalidRuleSpecError(ValueError):
    """Raised when a rule spec fails validation; carries the diagnostics."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


class BudgetExceededError(RuntimeError):
    """Raised instead of enumerating a domain larger than the budget."""

    def __init__(self, predicted: int, budget: int, what: str = "enumeration"):
        super().__init__(
            f"{what} of {predicted} items exceeds the budget of {budget}"
        )
        self.predicted = predicted
        self.budget = budget


@dataclass(frozen=True)
class RuleSpec:
    """Serializable name of a successor rule: order, family, parameters."""

    n: int
    family: str
    params: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "family": self.family, "params": dict(self.params)}

    @staticmethod
    def from_json(data: dict[str, Any]) -> "RuleSpec":
        return RuleSpec(int(data["n"]), str(data["family"]), dict(data.get("params", {})))


def _lz_power(v: Bits, k: int) -> Bits:
    positions = zero_positions(v)
    return rotate_left(v, positions[k % len(positions)])


def _eo_power(u: Bits, k: int) -> Bits:
    positions = one_positions(u)
    k %= len(positions)
    if k == 0:
        return u
    return rotate_left(u, positions[k - 1] + 1)


def _rz_power(v: Bits, k: int) -> Bits:
    positions = max_run_starts(v)
    return rotate_left(v, positions[k % len(positions)])


def _dz_power(v: Bits, k: int) -> Bits:
    positions = double_zero_starts(v)
    return rotate_left(v, positions[k % len(positions)])


def _is_cycle_representative(f: fsr.FeedbackFunction, state: Bits) -> bool:
    """True when ``state`` is the lexicographically least state of its cycle."""
    start = fsr.word_index(state)
    idx = fsr.step_index(f, start)
    while idx != start:
        if idx < start:
            return False
        idx = fsr.step_index(f, idx)
    return True


class SuccessorRule:
    """A validated, compiled rule: ``fires`` on suffixes, ``next_bit`` on states."""

    def __init__(
        self,
        spec: RuleSpec,
        base: fsr.FeedbackFunction,
        fires: Callable[[Bits], bool],
        order: str,
    ):
        self.spec = spec
        self.n = spec.n
        self.base_fsr = base
        self._fires = fires
        self.order = order

    def fires(self, suffix: Bits) -> bool:
        return self._fires(suffix)

    def base_bit(self, state: Bits) -> int:
        kind = self.base_fsr.kind
        if kind == fsr.PCR:
            return state[0]
        if kind == fsr.PSR:
            return sum(state) & 1
        return fsr.evaluate(self.base_fsr, state)

    def next_bit(self, state: Bits) -> int:
        if len(state) != self.n:
            raise ValueError(f"state length {len(state)} != order {self.n}")
        return self.base_bit(state) ^ (1 if self._fires(state[1:]) else 0)


def next_bit(spec: RuleSpec, state: Bits) -> int:
    """One-shot convenience wrapper; compile with successor_rule for loops."""
    return successor_rule(spec).next_bit(state)


# ---------------------------------------------------------------------------
# family implementations

def _require_int(params: dict, key: str, issues: list[str], minimum: int = 0) -> int | None:
    value = params.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        issues.append(f"parameter {key!r} must be an integer >= {minimum}, got {value!r}")
        return None
    return value


def _validate_k(spec: RuleSpec, minimum: int = 0) -> list[str]:
    issues: list[str] = []
    _require_int(spec.params, "k", issues, minimum)
    return issues


def _compile_pcr_lz_k(spec: RuleSpec) -> SuccessorRule:
    k = spec.params["k"]

    def fires(suffix: Bits) -> bool:
        return is_necklace(_lz_power((0,) + suffix, k))

    return SuccessorRule(spec, fsr.pcr(spec.n), fires, ORDER_WEIGHT_UP)


def _compile_pcr_eo_k(spec: RuleSpec) -> SuccessorRule:
    k = spec.params["k"]

    def fires(suffix: Bits) -> bool:
        return is_necklace(_eo_power(suffix + (1,), k))

    return SuccessorRule(spec, fsr.pcr(spec.n), fires, ORDER_WEIGHT_DOWN)


def _validate_bands(spec: RuleSpec) -> list[str]:
    issues: list[str] = []
    ks = spec.params.get("ks")
    if not isinstance(ks, (list, tuple)) or not all(
        isinstance(k, int) and not isinstance(k, bool) for k in ks or ()
    ):
        return [f"parameter 'ks' must be a list of integers, got {ks!r}"]
    n = spec.n
    if len(ks) < 2:
        issues.append("'ks' needs at least the two boundary thresholds")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        issues.append("'ks' must be strictly ascending")
    if ks and ks[0] != 1:
        issues.append("'ks' must start at 1")
    if ks and ks[-1] != n + 1:
        issues.append(f"'ks' must end at n+1 = {n + 1}")
    if len(ks) >= 2 and ks[-2] >= n:
        issues.append(f"the second-to-last threshold must be below n = {n}")
    return issues


def _band_exponent(ks: tuple[int, ...], w: int) -> int:
    return ks[bisect.bisect_right(ks, w) - 1] - 1


def _compile_pcr_bands_lz(spec: RuleSpec) -> SuccessorRule:
    ks = tuple(spec.params["ks"])
    n = spec.n

    def fires(suffix: Bits) -> bool:
        v = (0,) + suffix
        return is_necklace(_lz_power(v, _band_exponent(ks, n - sum(v))))

    return SuccessorRule(spec, fsr.pcr(n), fires, ORDER_WEIGHT_UP)


def _compile_pcr_bands_eo(spec: RuleSpec) -> SuccessorRule:
    ks = tuple(spec.params["ks"])

    def fires(suffix: Bits) -> bool:
        u = suffix + (1,)
        return is_necklace(_eo_power(u, _band_exponent(ks, sum(u))))

    return SuccessorRule(spec, fsr.pcr(spec.n), fires, ORDER_WEIGHT_DOWN)


def _validate_g(spec: RuleSpec) -> list[str]:
    g = spec.params.get("g")
    if not isinstance(g, (list, tuple)) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in g or ()
    ):
        return [f"parameter 'g' must be a list of integers, got {g!r}"]
    issues = []
    if len(g) != spec.n:
        issues.append(f"'g' must map every weight 1..n, so it needs {spec.n} entries")
    for i, value in enumerate(g):
        if not 0 <= value <= i:
            issues.append(f"g[{i + 1}] = {value} is outside 0..{i}")
    return issues


def _compile_pcr_g_lz(spec: RuleSpec) -> SuccessorRule:
    g = tuple(spec.params["g"])
    n = spec.n

    def fires(suffix: Bits) -> bool:
        v = (0,) + suffix
        return is_necklace(_lz_power(v, g[n - sum(v) - 1]))

    return SuccessorRule(spec, fsr.pcr(n), fires, ORDER_WEIGHT_UP)


def _compile_pcr_g_eo(spec: RuleSpec) -> SuccessorRule:
    g = tuple(spec.params["g"])

    def fires(suffix: Bits) -> bool:
        u = suffix + (1,)
        return is_necklace(_eo_power(u, g[sum(u) - 1]))

    return SuccessorRule(spec, fsr.pcr(spec.n), fires, ORDER_WEIGHT_DOWN)


def _parse_choice(spec: RuleSpec, width: int) -> tuple[list[Bits], list[str]]:
    raw = spec.params.get("choice")
    if not isinstance(raw, (list, tuple)):
        return [], [f"parameter 'choice' must be a list of state strings, got {raw!r}"]
    states: list[Bits] = []
    issues: list[str] = []
    for item in raw:
        try:
            w = parse_word(item) if isinstance(item, str) else tuple(int(b) for b in item)
        except (TypeError, ValueError):
            issues.append(f"choice entry {item!r} is not a binary word")
            continue
        if len(w) != width:
            issues.append(f"choice entry {word_str(w)} is not {width} bits wide")
        else:
            states.append(w)
    return states, issues


def _validate_pcr_table(spec: RuleSpec) -> list[str]:
    states, issues = _parse_choice(spec, spec.n)
    if issues:
        return issues
    n = spec.n
    if n > fsr.MAX_SWEEP_ORDER:
        return [f"order {n} exceeds the sweep budget for table validation"]
    per_cycle: dict[Bits, list[Bits]] = {}
    for state in states:
        if state[0] != 0:
            issues.append(f"chosen state {word_str(state)} does not start with 0")
            continue
        per_cycle.setdefault(necklace_of(state), []).append(state)
    expected = {
        rec.necklace for rec in fsr.decompose(fsr.pcr(n)) if rec.weight < n
    }
    for neck, group in per_cycle.items():
        if len(group) > 1:
            issues.append(f"cycle {word_str(neck)} has {len(group)} chosen states")
    missing = expected - set(per_cycle)
    extra = set(per_cycle) - expected
    for neck in sorted(missing):
        issues.append(f"cycle {word_str(neck)} has no chosen state")
    for neck in sorted(extra):
        issues.append(f"chosen state names unexpected cycle {word_str(neck)}")
    return issues


def _compile_pcr_table(spec: RuleSpec) -> SuccessorRule:
    chosen = frozenset(_parse_choice(spec, spec.n)[0])

    def fires(suffix: Bits) -> bool:
        return (0,) + suffix in chosen

    return SuccessorRule(spec, fsr.pcr(spec.n), fires, ORDER_WEIGHT_UP)


def _psr_window_trailing(suffix: Bits) -> Bits:
    """The window c1..c_{n-1}, 1+sum, 1 used by the run-order rule."""
    return suffix + ((1 + sum(suffix)) & 1, 1)


def _psr_window_leading(suffix: Bits) -> Bits:
    """The window 1+sum, c1..c_{n-1}, 1 used by the one-ended rules."""
    return ((1 + sum(suffix)) & 1,) + suffix + (1,)


def _compile_psr_run_k(spec: RuleSpec) -> SuccessorRule:
    k = spec.params["k"]

    def fires(suffix: Bits) -> bool:
        w = _psr_window_trailing(suffix)
        if leading_zeros(w) != max_zero_run(w):
            return False
        return is_necklace(_rz_power(w, k))

    return SuccessorRule(spec, fsr.psr(spec.n), fires, ORDER_RUN)


def _compile_psr_eo_k(spec: RuleSpec) -> SuccessorRule:
    k = spec.params["k"]

    def fires(suffix: Bits) -> bool:
        w = _psr_window_leading(suffix)
        shifted = _eo_power(w, k)
        if shifted != w:
            return is_necklace(shifted)
        return is_necklace(_eo_power(w, 1))

    return SuccessorRule(spec, fsr.psr(spec.n), fires, ORDER_NECKLACE)


def _compile_psr_index(which: str):
    def compiler(spec: RuleSpec) -> SuccessorRule:
        pick = max if which == "s" else min

        def fires(suffix: Bits) -> bool:
            d = ((1 + sum(suffix)) & 1,) + suffix
            cut = pick(one_positions(d))
            return is_necklace(rotate_left(d + (1,), cut + 1))

        return SuccessorRule(spec, fsr.psr(spec.n), fires, ORDER_NECKLACE)

    return compiler


def _admissible_eo_states(window: Bits) -> list[Bits]:
    """One-ended states of a summing-register cycle that may be chosen.

    With a single one-ended state it must be taken (it is the necklace);
    with several, anything except the necklace qualifies.
    """
    m = len(window)
    rotations = {rotate_left(window, i) for i in range(m)}
    eo = sorted(r for r in rotations if r[-1] == 1)
    if not eo:
        return []
    if len(eo) == 1:
        return eo
    neck = necklace_of(window)
    return [r for r in eo if r != neck]


def _validate_psr_eo_table(spec: RuleSpec) -> list[str]:
    states, issues = _parse_choice(spec, spec.n + 1)
    if issues:
        return issues
    n = spec.n
    if n > fsr.MAX_SWEEP_ORDER:
        return [f"order {n} exceeds the sweep budget for table validation"]
    per_cycle: dict[Bits, list[Bits]] = {}
    for state in states:
        per_cycle.setdefault(necklace_of(state), []).append(state)
    expected: dict[Bits, set[Bits]] = {}
    for rec in fsr.decompose(fsr.psr(n)):
        admissible = _admissible_eo_states(rec.necklace)
        if admissible:
            expected[rec.necklace] = set(admissible)
    for neck, group in per_cycle.items():
        if neck not in expected:
            issues.append(f"chosen state names unexpected cycle {word_str(neck)}")
            continue
        if len(group) > 1:
            issues.append(f"cycle {word_str(neck)} has {len(group)} chosen states")
        for state in group:
            if state not in expected[neck]:
                issues.append(
                    f"chosen state {word_str(state)} of cycle {word_str(neck)} "
                    "is not an admissible one-ended state"
                )
    for neck in sorted(set(expected) - set(per_cycle)):
        issues.append(f"cycle {word_str(neck)} has no chosen state")
    return issues


def _compile_psr_eo_table(spec: RuleSpec) -> SuccessorRule:
    chosen = frozenset(_parse_choice(spec, spec.n + 1)[0])

    def fires(suffix: Bits) -> bool:
        return _psr_window_leading(suffix) in chosen

    return SuccessorRule(spec, fsr.psr(spec.n), fires, ORDER_NECKLACE)


def _compile_psr_mixed_k(spec: RuleSpec) -> SuccessorRule:
    k = spec.params["k"]

    def fires(suffix: Bits) -> bool:
        if sum(suffix) & 1 == 0:
            return is_necklace(_dz_power((0, 0) + suffix, k))
        if 0 not in suffix:
            return False
        word = (0,) + suffix + (1,)
        m = len(word)
        if any(word[i] == 0 and word[(i + 1) % m] == 0 for i in range(m)):
            return False
        return is_necklace(rotate_left(word, suffix.index(0) + 1))

    return SuccessorRule(spec, fsr.psr(spec.n), fires, ORDER_MIXED)


def _validate_jfb(spec: RuleSpec) -> list[str]:
    kind = spec.params.get("fsr")
    if kind in (fsr.PCR, fsr.PSR, fsr.CSR):
        return []
    if kind == fsr.TABLE:
        try:
            fsr.parse_table_text(spec.n, spec.params.get("table_hex", ""))
        except ValueError as exc:
            return [f"bad truth table: {exc}"]
        return []
    return [f"parameter 'fsr' must be one of pcr/psr/csr/table, got {kind!r}"]


def _jfb_feedback(spec: RuleSpec) -> fsr.FeedbackFunction:
    kind = spec.params["fsr"]
    if kind == fsr.TABLE:
        return fsr.parse_table_text(spec.n, spec.params["table_hex"])
    return fsr.FeedbackFunction(spec.n, kind)


def _compile_jfb(spec: RuleSpec) -> SuccessorRule:
    f = _jfb_feedback(spec)

    def fires(suffix: Bits) -> bool:
        if 1 not in suffix:
            # States x,0,..,0 always step to 0,..,0,x+1.
            return not fsr.evaluate(f, (0,) + suffix)
        return _is_cycle_representative(f, suffix + (0,)) or _is_cycle_representative(
            f, suffix + (1,)
        )

    return SuccessorRule(spec, f, fires, ORDER_LEX_REP)


@dataclass(frozen=True)
class _Family:
    validate: Callable[[RuleSpec], list[str]]
    compile: Callable[[RuleSpec], SuccessorRule]


FAMILIES: dict[str, _Family] = {
    "pcr-lz-k": _Family(_validate_k, _compile_pcr_lz_k),
    "pcr-eo-k": _Family(_validate_k, _compile_pcr_eo_k),
    "pcr-bands-lz": _Family(_validate_bands, _compile_pcr_bands_lz),
    "pcr-bands-eo": _Family(_validate_bands, _compile_pcr_bands_eo),
    "pcr-g-lz": _Family(_validate_g, _compile_pcr_g_lz),
    "pcr-g-eo": _Family(_validate_g, _compile_pcr_g_eo),
    "pcr-table": _Family(_validate_pcr_table, _compile_pcr_table),
    "jfb": _Family(_validate_jfb, _compile_jfb),
    "psr-run-k": _Family(_validate_k, _compile_psr_run_k),
    "psr-eo-k": _Family(lambda s: _validate_k(s, minimum=1), _compile_psr_eo_k),
    "psr-index-s": _Family(lambda s: [], _compile_psr_index("s")),
    "psr-index-t": _Family(lambda s: [], _compile_psr_index("t")),
    "psr-eo-table": _Family(_validate_psr_eo_table, _compile_psr_eo_table),
    "psr-mixed-k": _Family(_validate_k, _compile_psr_mixed_k),
}


def validate(spec: RuleSpec) -> list[str]:
    """All invariant violations of the spec, empty when it is usable."""
    if spec.family not in FAMILIES:
        return [f"unknown rule family {spec.family!r}"]
    if spec.n < 2:
        return [f"order must be at least 2, got {spec.n}"]
    return FAMILIES[spec.family].validate(spec)


def successor_rule(spec: RuleSpec) -> SuccessorRule:
    """Compile a spec into a callable rule; invalid specs raise here."""
    issues = validate(spec)
    if issues:
        raise InvalidRuleSpecError(issues)
    return FAMILIES[spec.family].compile(spec)


# ---------------------------------------------------------------------------
# explicit-choice enumeration

def _pcr_choice_lists(n: int) -> list[list[Bits]]:
    lists = []
    for rec in fsr.decompose(fsr.pcr(n)):
        if rec.weight == n:
            continue
        states = {rotate_left(rec.necklace, i) for i in range(n)}
        lists.append(sorted(s for s in states if s[0] == 0))
    return lists


def _psr_choice_lists(n: int) -> list[list[Bits]]:
    lists = []
    for rec in fsr.decompose(fsr.psr(n)):
        admissible = _admissible_eo_states(rec.necklace)
        if admissible:
            lists.append(admissible)
    return lists


def count_table_choices(family: str, n: int) -> int:
    """Size of the full explicit-choice domain for a table family."""
    if family == "pcr-table":
        lists = _pcr_choice_lists(n)
    elif family == "psr-eo-table":
        lists = _psr_choice_lists(n)
    else:
        raise ValueError(f"{family!r} is not a table family")
    return math.prod(len(lst) for lst in lists)


def enumerate_table_choices(
    family: str, n: int, budget: int = DEFAULT_BUDGET
) -> Iterator[RuleSpec]:
    """Yield every valid choice map exactly once, refusing oversized domains."""
    if family == "pcr-table":
        lists = _pcr_choice_lists(n)
    elif family == "psr-eo-table":
        lists = _psr_choice_lists(n)
    else:
        raise ValueError(f"{family!r} is not a table family")
    predicted = math.prod(len(lst) for lst in lists)
    if predicted > budget:
        raise BudgetExceededError(predicted, budget, f"{family} choice enumeration")
    for combo in itertools.product(*lists):
        yield RuleSpec(n, family, {"choice": [word_str(s) for s in combo]})


def random_table_choice(family: str, n: int, rng) -> RuleSpec:
    """One uniformly random explicit-choice spec (rng is a random.Random)."""
    if family == "pcr-table":
        lists = _pcr_choice_lists(n)
    elif family == "psr-eo-table":
        lists = _psr_choice_lists(n)
    else:
        raise ValueError(f"{family!r} is not a table family")
    return RuleSpec(n, family, {"choice": [word_str(rng.choice(lst)) for lst in lists]})
