"""Exhaustive rule-family enumeration and verification of the counting formulas.

A census runs every parameterization of a family at one order, canonicalizes
the sequences from the all-zero start, and compares the number of distinct
outcomes against the family's closed-form count. Oversized domains are
refused up front with the predicted size.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, asdict
from typing import Callable, Iterable, Iterator

from . import fsr
from .bitword import max_run_starts, rotate_left
from .generator import canonical_form, verify_de_bruijn, generate
from .rules import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    RuleSpec,
    count_table_choices,
    enumerate_table_choices,
)


def lcm_range(a: int, b: int) -> int:
    """Least common multiple of the integers a..b inclusive."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    return math.lcm(*range(a, b + 1))


@dataclass(frozen=True)
class CrtResult:
    """Outcome of a simultaneous-congruence solve.

    ``solution`` is the unique residue modulo ``modulus`` (the lcm of all
    moduli) when the system is solvable; otherwise it is None and ``witness``
    names a pair of moduli whose residues disagree modulo their gcd.
    """

    solution: int | None
    modulus: int
    witness: tuple[int, int] | None = None

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def gcrt_solve(congruences: Iterable[tuple[int, int]]) -> CrtResult:
    """Solve x = a_i (mod m_i) for all i, allowing non-coprime moduli."""
    pairs = [(int(a), int(m)) for a, m in congruences]
    if any(m < 1 for _, m in pairs):
        raise ValueError("moduli must be positive")
    for (a_i, m_i), (a_j, m_j) in itertools.combinations(pairs, 2):
        g = math.gcd(m_i, m_j)
        if (a_i - a_j) % g:
            return CrtResult(None, math.lcm(*(m for _, m in pairs)), (m_i, m_j))
    x, modulus = 0, 1
    for a, m in pairs:
        g = math.gcd(modulus, m)
        step = m // g
        # x + modulus*t = a (mod m), solvable since the pairwise check passed
        t = ((a - x) // g * pow(modulus // g, -1, step)) % step
        x += modulus * t
        modulus *= step
        x %= modulus
    return CrtResult(x, modulus)


@dataclass(frozen=True)
class CensusReport:
    family: str
    n: int
    domain: str
    enumerated: int
    distinct: int
    expected: int
    formula: str
    match: bool
    seconds: float

    def to_json(self) -> dict:
        return asdict(self)


def format_report(report: CensusReport) -> str:
    flag = "ok" if report.match else "MISMATCH"
    return (
        f"{report.family:<14} n={report.n:<3} {report.domain:<26} "
        f"distinct={report.distinct:<10} expected={report.expected:<10} "
        f"[{report.formula}] {flag}  ({report.seconds:.2f}s)"
    )


@dataclass(frozen=True)
class _CensusFamily:
    domain: Callable[[int], Iterator[RuleSpec]]
    size: Callable[[int], int]
    expected: Callable[[int], int]
    formula: str
    describe: Callable[[int], str]


def _k_specs(family: str, lo: int, hi: Callable[[int], int]):
    def domain(n: int) -> Iterator[RuleSpec]:
        for k in range(lo, hi(n) + 1):
            yield RuleSpec(n, family, {"k": k})

    return domain


def _band_sets(n: int) -> Iterator[tuple[int, ...]]:
    middle = range(2, n)
    for r in range(len(middle) + 1):
        for combo in itertools.combinations(middle, r):
            yield (1, *combo, n + 1)


def _g_maps(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(w) for w in range(1, n + 1)))


def _psr_run_modulus(n: int) -> int:
    # count distinct max-run states per cycle; start positions can repeat
    # values when the least period is below the window length
    counts = []
    for rec in fsr.decompose(fsr.psr(n)):
        if rec.weight == 0:
            continue
        states = {
            rotate_left(rec.necklace, i) for i in max_run_starts(rec.necklace)
        }
        counts.append(len(states))
    return math.lcm(*counts)


def _psr_eo_modulus(n: int) -> int:
    return math.lcm(*range(2, 2 * (n // 2) + 1, 2))


CENSUS_FAMILIES: dict[str, _CensusFamily] = {
    "pcr-lz-k": _CensusFamily(
        _k_specs("pcr-lz-k", 0, lambda n: lcm_range(1, n - 1) - 1),
        lambda n: lcm_range(1, n - 1),
        lambda n: lcm_range(1, n - 1),
        "lcm(1..n-1)",
        lambda n: f"k in 0..{lcm_range(1, n - 1) - 1}",
    ),
    "pcr-eo-k": _CensusFamily(
        _k_specs("pcr-eo-k", 0, lambda n: lcm_range(1, n - 1) - 1),
        lambda n: lcm_range(1, n - 1),
        lambda n: lcm_range(1, n - 1),
        "lcm(1..n-1)",
        lambda n: f"k in 0..{lcm_range(1, n - 1) - 1}",
    ),
    "pcr-bands-lz": _CensusFamily(
        lambda n: (
            RuleSpec(n, "pcr-bands-lz", {"ks": list(ks)}) for ks in _band_sets(n)
        ),
        lambda n: 1 << (n - 2),
        lambda n: 1 << (n - 2),
        "2^(n-2)",
        lambda n: "all valid threshold sets",
    ),
    "pcr-bands-eo": _CensusFamily(
        lambda n: (
            RuleSpec(n, "pcr-bands-eo", {"ks": list(ks)}) for ks in _band_sets(n)
        ),
        lambda n: 1 << (n - 2),
        lambda n: 1 << (n - 2),
        "2^(n-2)",
        lambda n: "all valid threshold sets",
    ),
    "pcr-g-lz": _CensusFamily(
        lambda n: (RuleSpec(n, "pcr-g-lz", {"g": list(g)}) for g in _g_maps(n)),
        lambda n: math.factorial(n),
        lambda n: math.factorial(n - 1),
        "(n-1)!",
        lambda n: "all shift-count maps",
    ),
    "pcr-g-eo": _CensusFamily(
        lambda n: (RuleSpec(n, "pcr-g-eo", {"g": list(g)}) for g in _g_maps(n)),
        lambda n: math.factorial(n),
        lambda n: math.factorial(n - 1),
        "(n-1)!",
        lambda n: "all shift-count maps",
    ),
    "pcr-g-both": _CensusFamily(
        lambda n: itertools.chain(
            (RuleSpec(n, "pcr-g-lz", {"g": list(g)}) for g in _g_maps(n)),
            (RuleSpec(n, "pcr-g-eo", {"g": list(g)}) for g in _g_maps(n)),
        ),
        lambda n: 2 * math.factorial(n),
        lambda n: 2 * math.factorial(n - 1),
        "2*(n-1)!",
        lambda n: "both shift-count map families",
    ),
    "pcr-table": _CensusFamily(
        lambda n: enumerate_table_choices("pcr-table", n, budget=2**62),
        lambda n: count_table_choices("pcr-table", n),
        lambda n: count_table_choices("pcr-table", n),
        "product of per-cycle zero-led state counts",
        lambda n: "all explicit state choices",
    ),
    "psr-eo-table": _CensusFamily(
        lambda n: enumerate_table_choices("psr-eo-table", n, budget=2**62),
        lambda n: count_table_choices("psr-eo-table", n),
        lambda n: count_table_choices("psr-eo-table", n),
        "product of per-cycle admissible one-ended state counts",
        lambda n: "all explicit state choices",
    ),
    "psr-run-k": _CensusFamily(
        _k_specs("psr-run-k", 0, lambda n: _psr_run_modulus(n) - 1),
        lambda n: _psr_run_modulus(n),
        lambda n: _psr_run_modulus(n),
        "lcm of per-cycle max-run state counts",
        lambda n: f"k in 0..{_psr_run_modulus(n) - 1}",
    ),
    "psr-eo-k": _CensusFamily(
        _k_specs("psr-eo-k", 1, _psr_eo_modulus),
        _psr_eo_modulus,
        lambda n: _psr_eo_modulus(n) - 1,
        "lcm(2,4,..,2*floor(n/2)) - 1",
        lambda n: f"k in 1..{_psr_eo_modulus(n)}",
    ),
    "psr-mixed-k": _CensusFamily(
        _k_specs("psr-mixed-k", 0, lambda n: lcm_range(1, n - 2) - 1),
        lambda n: lcm_range(1, n - 2),
        lambda n: lcm_range(1, n - 2),
        "lcm(1..n-2)",
        lambda n: f"k in 0..{lcm_range(1, n - 2) - 1}",
    ),
}


def predicted_size(family: str, n: int) -> int:
    """Domain size a census would enumerate, computed without enumerating."""
    if family not in CENSUS_FAMILIES:
        raise ValueError(f"no census is defined for family {family!r}")
    return CENSUS_FAMILIES[family].size(n)


def expected_count(family: str, n: int) -> int:
    """The closed-form distinct-sequence count the census checks against."""
    if family not in CENSUS_FAMILIES:
        raise ValueError(f"no census is defined for family {family!r}")
    return CENSUS_FAMILIES[family].expected(n)


def _canonical_from_json(payload: dict) -> str:
    return canonical_form(RuleSpec.from_json(payload))


def run_census(
    family: str,
    n: int,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    check_de_bruijn: bool = False,
) -> CensusReport:
    """Enumerate one family at order n and compare distinct counts.

    Raises BudgetExceededError before doing any work when the predicted
    domain size exceeds ``budget``. With ``jobs`` > 1 the generation work is
    spread over a process pool; the distinct count is a set union, so the
    outcome does not depend on scheduling order.
    """
    if family not in CENSUS_FAMILIES:
        raise ValueError(f"no census is defined for family {family!r}")
    entry = CENSUS_FAMILIES[family]
    size = entry.size(n)
    if size > budget:
        raise BudgetExceededError(size, budget, f"{family} census at n={n}")
    started = time.perf_counter()
    forms: set[str] = set()
    enumerated = 0
    if jobs > 1:
        import multiprocessing

        payloads = [spec.to_json() for spec in entry.domain(n)]
        enumerated = len(payloads)
        with multiprocessing.Pool(jobs) as pool:
            for form in pool.imap_unordered(_canonical_from_json, payloads, chunksize=64):
                forms.add(form)
    else:
        for spec in entry.domain(n):
            enumerated += 1
            if check_de_bruijn:
                seq = generate(spec)
                if not verify_de_bruijn(seq):
                    raise AssertionError(f"{spec} produced a non de Bruijn sequence")
                forms.add(str(seq))
            else:
                forms.add(canonical_form(spec))
    expected = entry.expected(n)
    return CensusReport(
        family=family,
        n=n,
        domain=entry.describe(n),
        enumerated=enumerated,
        distinct=len(forms),
        expected=expected,
        formula=entry.formula,
        match=len(forms) == expected,
        seconds=time.perf_counter() - started,
    )
