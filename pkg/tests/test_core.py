import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from roierr import (
    DomainError,
    Estimate,
    LineItem,
    Scenario,
    compute_roi,
    relative_error_of,
    total_value,
)


def test_roi_of_double_benefit_is_one():
    assert compute_roi(200.0, 100.0) == 1.0


def test_roi_worked_example():
    assert compute_roi(150_000.0, 120_000.0) == 0.25


def test_roi_below_break_even_is_negative():
    assert compute_roi(80.0, 100.0) == pytest.approx(-0.2, rel=1e-15)


def test_roi_rejects_nonpositive_cost():
    with pytest.raises(DomainError):
        compute_roi(100.0, 0.0)
    with pytest.raises(DomainError):
        compute_roi(100.0, -5.0)


def test_roi_rejects_negative_or_nonfinite_benefit():
    with pytest.raises(DomainError):
        compute_roi(-1.0, 100.0)
    with pytest.raises(DomainError):
        compute_roi(math.inf, 100.0)
    with pytest.raises(DomainError):
        compute_roi(100.0, math.nan)


def test_roi_at_zero_benefit_is_minus_one():
    assert compute_roi(0.0, 50.0) == -1.0


@given(
    benefit=st.floats(0.0, 1e12),
    cost=st.floats(1e-6, 1e12),
    twos=st.integers(-40, 40),
)
def test_roi_scale_invariance_exact_for_power_of_two(benefit, cost, twos):
    k = 2.0**twos
    assert compute_roi(benefit * k, cost * k) == compute_roi(benefit, cost)


@given(
    benefit=st.floats(0.0, 1e9),
    cost=st.floats(1e-3, 1e9),
    k=st.floats(1e-3, 1e3),
)
def test_roi_scale_invariance_general(benefit, cost, k):
    assert compute_roi(benefit * k, cost * k) == pytest.approx(
        compute_roi(benefit, cost), rel=1e-12, abs=1e-12
    )


def test_estimate_validates_value_and_error():
    with pytest.raises(DomainError):
        Estimate(-1.0, 0.0)
    with pytest.raises(DomainError):
        Estimate(1.0, -0.5)
    with pytest.raises(DomainError):
        Estimate(math.nan, 0.0)
    est = Estimate(200.0, 20.0)
    assert (est.value, est.abs_error) == (200.0, 20.0)


def test_estimate_from_relative():
    est = Estimate.from_relative(200.0, 0.1)
    assert est.abs_error == pytest.approx(20.0, rel=1e-15)
    with pytest.raises(DomainError):
        Estimate.from_relative(0.0, 0.1)
    with pytest.raises(DomainError):
        Estimate.from_relative(100.0, -0.1)


def test_relative_error_of():
    assert relative_error_of(Estimate(200.0, 20.0)) == pytest.approx(0.1, rel=1e-15)
    with pytest.raises(DomainError):
        relative_error_of(Estimate(0.0, 0.0))


def test_total_value_sums_values():
    ests = [Estimate(100.0, 3.0), Estimate(100.0, 4.0), Estimate(50.0, 0.0)]
    assert total_value(ests) == 250.0
    assert total_value([]) == 0.0


@given(st.lists(st.floats(0.0, 1e9), min_size=1, max_size=12), st.randoms())
def test_total_value_permutation_invariant(values, rng):
    ests = [Estimate(v) for v in values]
    shuffled = list(ests)
    rng.shuffle(shuffled)
    assert total_value(shuffled) == total_value(ests)


@given(
    st.lists(st.floats(0.0, 1e9), max_size=8),
    st.lists(st.floats(0.0, 1e9), max_size=8),
)
def test_total_value_additive_over_concatenation(left, right):
    a = [Estimate(v) for v in left]
    b = [Estimate(v) for v in right]
    assert total_value(a + b) == pytest.approx(
        total_value(a) + total_value(b), rel=1e-12, abs=1e-9
    )


def _item(label, value, error=0.0):
    return LineItem(label, Estimate(value, error))


def test_scenario_requires_a_cost_item():
    with pytest.raises(DomainError):
        Scenario("s", benefits=(_item("b", 10.0),), costs=())


def test_scenario_requires_positive_cost_total():
    with pytest.raises(DomainError):
        Scenario("s", benefits=(), costs=(_item("c", 0.0),))


def test_scenario_rejects_total_cost_error_at_or_past_total():
    with pytest.raises(DomainError):
        Scenario("s", benefits=(), costs=(_item("c", 100.0, 120.0),))
    with pytest.raises(DomainError):
        Scenario("s", benefits=(), costs=(_item("a", 60.0, 30.0), _item("b", 40.0, 70.0)))


def test_scenario_accepts_empty_benefits():
    s = Scenario("cost only", benefits=(), costs=(_item("c", 100.0, 10.0),))
    assert s.benefit_estimates() == []
    assert [e.value for e in s.cost_estimates()] == [100.0]


def test_scenario_is_frozen():
    s = Scenario("s", benefits=(), costs=(_item("c", 100.0),))
    with pytest.raises(AttributeError):
        s.name = "other"
