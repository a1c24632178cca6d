import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from debruijn.census import (
    CENSUS_FAMILIES,
    CensusReport,
    expected_count,
    format_report,
    gcrt_solve,
    lcm_range,
    predicted_size,
    run_census,
)
from debruijn.rules import BudgetExceededError


def test_lcm_range_examples():
    assert lcm_range(1, 5) == 60
    assert lcm_range(1, 4) == 12
    assert lcm_range(1, 1) == 1
    with pytest.raises(ValueError):
        lcm_range(3, 2)


def test_gcrt_examples():
    ok = gcrt_solve([(1, 2), (1, 3)])
    assert ok.solvable and ok.solution == 1 and ok.modulus == 6
    bad = gcrt_solve([(0, 2), (1, 4)])
    assert not bad.solvable
    assert bad.witness == (2, 4)
    with pytest.raises(ValueError):
        gcrt_solve([(0, 0)])


@settings(max_examples=150)
@given(
    st.lists(st.integers(1, 60), min_size=1, max_size=5),
    st.integers(0, 10**6),
)
def test_gcrt_solvable_systems_verify_by_substitution(moduli, x):
    congruences = [(x % m, m) for m in moduli]
    result = gcrt_solve(congruences)
    assert result.solvable
    assert result.modulus == math.lcm(*moduli)
    for a, m in congruences:
        assert result.solution % m == a
    assert result.solution == x % result.modulus


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(1, 30)), min_size=1, max_size=5))
def test_gcrt_unsolvable_iff_no_solution_exists(congruences):
    result = gcrt_solve(congruences)
    brute = [
        x
        for x in range(math.lcm(*(m for _, m in congruences)))
        if all(x % m == a % m for a, m in congruences)
    ]
    if result.solvable:
        assert brute == [result.solution]
    else:
        assert brute == []
        m_i, m_j = result.witness
        assert math.gcd(m_i, m_j) > 1


SMALL_ORDER_COUNTS = {
    # family: (n, expected distinct)
    "pcr-lz-k": (4, 6),
    "pcr-eo-k": (4, 6),
    "pcr-bands-lz": (4, 4),
    "pcr-bands-eo": (4, 4),
    "pcr-g-lz": (4, 6),
    "pcr-g-eo": (4, 6),
    "pcr-g-both": (4, 12),
    "pcr-table": (4, 6),
    "psr-eo-table": (5, 9),
    "psr-run-k": (5, 2),
    "psr-eo-k": (5, 3),
    "psr-mixed-k": (5, 6),
}


@pytest.mark.parametrize("family", sorted(SMALL_ORDER_COUNTS))
def test_census_small_orders(family):
    n, expected = SMALL_ORDER_COUNTS[family]
    report = run_census(family, n, check_de_bruijn=True)
    assert report.match, format_report(report)
    assert report.distinct == expected == expected_count(family, n)
    assert report.enumerated == predicted_size(family, n)
    assert report.distinct <= report.enumerated


def test_census_refuses_oversized_domain():
    assert predicted_size("pcr-table", 7) == 1_492_992_000
    with pytest.raises(BudgetExceededError) as err:
        run_census("pcr-table", 7)
    assert err.value.predicted == 1_492_992_000


def test_census_budget_is_overridable():
    report = run_census("psr-run-k", 4, budget=10)
    assert report.match
    with pytest.raises(BudgetExceededError):
        run_census("pcr-lz-k", 6, budget=10)


def test_census_unknown_family():
    with pytest.raises(ValueError):
        run_census("jfb", 4)


def test_census_parallel_matches_serial():
    serial = run_census("psr-mixed-k", 5)
    parallel = run_census("psr-mixed-k", 5, jobs=2)
    assert serial.distinct == parallel.distinct
    assert serial.enumerated == parallel.enumerated


def test_report_serialization():
    report = run_census("psr-run-k", 4)
    data = report.to_json()
    assert data["family"] == "psr-run-k"
    assert isinstance(data["seconds"], float)
    assert "ok" in format_report(report)


@pytest.mark.parametrize("n", range(3, 21))
def test_count_lower_bounds(n):
    assert lcm_range(1, n - 1) >= 1 << (n - 2)
    evens = math.lcm(*range(2, 2 * (n // 2) + 1, 2))
    assert evens - 1 >= (1 << (n // 2)) - 1
