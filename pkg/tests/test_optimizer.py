import math

import pytest

from lunarpad.costing import CASES, EconomicScenario
from lunarpad.optimizer import (
    Constraints, Evaluator, evaluate_at_scale, grid_oracle, optimize_scale, rank_cases, sweep_transport,
)

SCENARIOS = {
    "baseline": EconomicScenario(),
    "expensive": EconomicScenario(transport_k_per_kg=1000.0),
    "moderate_high_delay": EconomicScenario(transport_k_per_kg=100.0, value_multiple=20.0),
}


@pytest.mark.parametrize("name", list(SCENARIOS))
@pytest.mark.parametrize("case", list(CASES))
def test_matches_grid_oracle(p, case, name):
    s = SCENARIOS[name]
    opt = optimize_scale(case, p, s)
    best, _ = grid_oracle(case, p, s)
    assert opt.feasible
    assert opt.value <= best * (1 + 5e-3)


@pytest.mark.parametrize("case", list(CASES))
def test_optimization_never_hurts(p, case):
    nominal = evaluate_at_scale(case, 1.0, p)[1].total
    assert optimize_scale(case, p).value <= nominal + 1e-9


def test_doubling_scale_is_faster(p):
    for case in CASES:
        a, _ = evaluate_at_scale(case, 0.7, p)
        b, _ = evaluate_at_scale(case, 1.4, p)
        assert b.time_days < a.time_days


def test_small_scale_limit(p):
    plan, _ = evaluate_at_scale("SiSi", 1e-4, p)
    assert plan.time_days > 1e5
    assert plan.rover_count == 1


def test_constrained_plans_respect_limits(p):
    c = Constraints(max_days=270, max_power_kw=50, objective="appropriated")
    for case in CASES:
        o = optimize_scale(case, p, constraints=c)
        if o.feasible:
            plan, _ = evaluate_at_scale(case, o.scale, p)
            assert plan.calendar_days(p.solar_duty_cycle) <= 270
            assert plan.peak_power_kw <= 50


def test_binding_schedule_lands_on_the_limit(p):
    # with no operations or delay penalty, the slowest feasible schedule is cheapest
    s = EconomicScenario(ops_m_per_yr=0.0)
    c = Constraints(max_days=100, objective="appropriated")
    o = optimize_scale("SiSi", p, s, c)
    assert o.plan.calendar_days(0.8) == pytest.approx(100, rel=1e-4)
    assert o.plan.calendar_days(0.8) <= 100


def test_impossible_constraints_flagged(p):
    o = optimize_scale("SiSi", p, constraints=Constraints(max_days=0.001))
    assert not o.feasible


def test_constraint_validation():
    with pytest.raises(ValueError):
        Constraints(max_days=0)
    with pytest.raises(ValueError):
        Constraints(objective="cheapest")


def test_baseline_rank(p):
    assert rank_cases(p)[0].case == "SiSi"


def test_zero_cost_scenario_ties(p):
    s = EconomicScenario(transport_k_per_kg=0, dev_rate_m_per_kg=0, value_multiple=0, ops_m_per_yr=0)
    ranked = rank_cases(p, s)
    assert len(ranked) == 8
    assert all(o.value == 0 for o in ranked)
    # ties go to the smallest scale searched
    assert all(o.scale == pytest.approx(1e-2) for o in ranked)


def test_single_point_sweep_equals_optimize(p):
    pts = sweep_transport(["SiPo"], 250.0, 250.0, 1, p)
    direct = optimize_scale("SiPo", p, EconomicScenario(transport_k_per_kg=250.0))
    assert len(pts) == 1
    assert pts[0].optimum.value == direct.value
    assert pts[0].optimum.scale == direct.scale


@pytest.mark.parametrize("case", ["SiSi", "SiPo", "PaPa"])
def test_optimum_mass_non_increasing_with_transport(p, case):
    pts = sweep_transport([case], 10.0, 2000.0, 10, p)
    masses = [pt.optimum.plan.mass_from_earth_kg for pt in pts]
    assert all(b <= a * (1 + 1e-6) for a, b in zip(masses, masses[1:]))


def test_evaluator_counts_calls(p):
    ev = Evaluator("SiSi", p)
    ev(1.0)
    ev(2.0)
    assert ev.calls == 2
    assert math.isinf(Evaluator("SiSi", p, constraints=Constraints(max_days=1)).objective(0.01))
