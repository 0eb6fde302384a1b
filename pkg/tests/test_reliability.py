import math

import pytest
from hypothesis import given, strategies as st

from lunarpad.costing import CASES, build_case
from lunarpad.reliability import (
    DEFAULT_HOURS, SYSTEMS, SubsystemRating, allocate, baseline_reliability, hours_from_plan, load_ratings,
    mass_fractions, mettas_cost, minimize_effort, normalize_lambda, reliability_factor,
    relative_failure_rate, system_cost_factor, time_ratings,
)


@pytest.fixture(scope="module")
def report():
    return allocate()


def test_time_ratings():
    tr = time_ratings(DEFAULT_HOURS)
    assert tr["pavers_outer.baking"] == pytest.approx(10.0)
    assert round(tr["pavers_inner.baking"], 2) == 1.84
    assert time_ratings({"a": 0.0, "b": 1.0})["a"] == 0
    with pytest.raises(ValueError):
        time_ratings({"a": 0.0})


def test_failure_rate_examples():
    tr = time_ratings(DEFAULT_HOURS)
    assert relative_failure_rate(SubsystemRating("x", 4, 3, 4), tr["gc_inner"]) == pytest.approx(3.01, abs=0.01)
    assert relative_failure_rate(SubsystemRating("x", 3, 5, 5), tr["sinter_inner"]) == pytest.approx(27.72, abs=0.01)
    assert relative_failure_rate(SubsystemRating("x", 3, 5, 5), 0) == 0


def test_rating_bounds():
    with pytest.raises(ValueError):
        SubsystemRating("x", 0, 1, 1)


def test_ratings_file():
    r = load_ratings()
    assert r["pavers_outer.oven_robotics"] == SubsystemRating("pavers_outer.oven_robotics", 10, 8, 4)
    for rows in SYSTEMS.values():
        for members in rows.values():
            assert all(m in r for m in members)


def test_normalization(report):
    assert report["SiSi"].big_lambda == pytest.approx(4337.9, rel=1e-3)
    assert normalize_lambda([43.60], 0.99) == pytest.approx(4337.9, rel=1e-3)
    assert baseline_reliability(1272.91, 4337.9) == pytest.approx(0.7457, abs=5e-5)
    assert baseline_reliability(0, 4337.9) == 1


def test_min_lambda_system_on_target(report):
    best = min(report.values(), key=lambda r: r.total_lambda)
    assert best.case == "SiPo"
    assert best.baseline == pytest.approx(0.99, rel=1e-12)


def test_minimize_effort_examples(report):
    sisi = report["SiSi"].subsystems
    assert sisi[0].goal == sisi[0].baseline
    assert sisi[1].goal == pytest.approx(0.9935, abs=2e-4)
    pasi = {s.name: s for s in report["PaSi"].subsystems}
    assert pasi["baking"].goal == pasi["baking"].baseline
    for name, s in pasi.items():
        if name != "baking":
            assert s.goal == pytest.approx(0.9985, abs=2e-4)
    assert all(s.goal == s.baseline for s in report["SiPo"].subsystems)


@given(st.lists(st.floats(0.5, 1.0), min_size=1, max_size=8), st.floats(0.5, 0.999))
def test_minimize_effort_properties(base, target):
    goals = minimize_effort(base, target)
    assert all(gl >= b - 1e-15 for gl, b in zip(goals, base))
    if math.prod(base) < target:
        assert math.prod(goals) == pytest.approx(target, rel=1e-6)
    else:
        assert goals == base


def test_mettas_examples():
    assert mettas_cost(0.99829, 0.82078, 0.5) == pytest.approx(1.641, abs=0.001)
    assert mettas_cost(0.99348, 0.98194, 0.5) == pytest.approx(1.38, abs=0.01)
    assert mettas_cost(0.9, 0.9, 0.5) == 1.0
    with pytest.raises(ValueError):
        mettas_cost(0.8, 0.9, 0.5)


@given(st.floats(0.0, 0.99), st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0, 0.99))
def test_mettas_monotone(rmin, a, b, f):
    lo, hi = sorted((a, b))
    ga, gb = rmin + lo * (1 - rmin), rmin + hi * (1 - rmin)
    assert 1 <= mettas_cost(ga, rmin, f) <= mettas_cost(gb, rmin, f)


def test_system_cost_factor():
    assert system_cost_factor([1, 1, 1], [0.2, 0.3, 0.5]) == 1
    assert system_cost_factor([1.0, 2.0], [0.5, 0.5]) == 1.5
    with pytest.raises(ValueError):
        system_cost_factor([1.0], [0.7])


def test_every_system_reaches_target(report):
    for r in report.values():
        assert r.achieved >= 0.99 - 1e-4
        assert all(s.cost_factor >= 1 for s in r.subsystems)


@pytest.mark.parametrize("case", list(CASES))
def test_mass_fractions_sum_to_one(p, case):
    phi = mass_fractions(build_case(case, 1, p))
    assert set(phi) == set(SYSTEMS[case])
    assert sum(phi.values()) == pytest.approx(1, abs=1e-9)


def test_sisi_factor(p):
    assert reliability_factor(build_case("SiSi", 1, p)) == pytest.approx(1.31, abs=0.05)
    assert reliability_factor(build_case("SiPo", 1, p)) == pytest.approx(1.0)


def test_hours_from_plan(p):
    h = hours_from_plan(build_case("PaGr", 1, p))
    assert {"gc_inner", "gc_outer", "pavers_inner.baking", "gravel.raking"} <= set(h)
    rep = allocate({c: hours_from_plan(build_case(c, 1, p)) for c in CASES})
    assert all(r.achieved >= 0.99 - 1e-4 for r in rep.values())
