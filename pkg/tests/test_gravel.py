import math
import random

import pytest
from hypothesis import given, strategies as st

from lunarpad.gravel import (
    ANCHOR_FORCES_N, class_depths, default_soil, gravel_process, plan_gravel, raking_area,
    raking_power, read_soil_table, regolith_density, relative_density, tine_force,
)
from lunarpad.params import ParameterSet, derive_geometry


def test_density_law():
    assert regolith_density(0) == pytest.approx(1920 * 0.122 / 0.18)
    assert regolith_density(1e9) == pytest.approx(1920, rel=1e-6)
    assert regolith_density(0.1) < regolith_density(0.2)
    with pytest.raises(ValueError):
        regolith_density(-0.1)


@given(st.floats(0, 100))
def test_density_bounds(z):
    assert regolith_density(z) <= 1920
    assert 0 <= relative_density(z) <= 100


def test_relative_density():
    assert relative_density(0) == pytest.approx(0)
    assert relative_density(1e9) == pytest.approx(100, rel=1e-6)
    a, b = 0.122 / 0.18, (0.1 + 0.122) / (0.1 + 0.18)
    assert relative_density(0.1) == pytest.approx((b - a) / (1 - a) * 100)


def test_raking_area():
    assert raking_area(0.15) == pytest.approx(1.042e5, rel=1e-3)
    assert raking_area(0.015) == pytest.approx(3.57e5, rel=1e-3)
    assert raking_area(0.05) / raking_area(0.1) == pytest.approx(2 ** 0.535)


def test_class_depths(p):
    assert [round(d * 100, 2) for d in class_depths(p)] == [1.02, 2.19, 4.71, 10.16]


def test_tine_force_anchors(p):
    soil = default_soil(p)
    depths = class_depths(p)
    assert tine_force(depths[-1], soil) == pytest.approx(667)
    assert tine_force(depths[0], soil) == pytest.approx(8.3)
    mid = 0.5 * (depths[1] + depths[2])
    assert ANCHOR_FORCES_N[1] < tine_force(mid, soil) < ANCHOR_FORCES_N[2]
    with pytest.raises(ValueError):
        tine_force(0.3, soil)


@given(st.floats(0.001, 0.25), st.floats(0.001, 0.25))
def test_force_increasing_in_depth(a, b):
    soil = default_soil(ParameterSet())
    lo, hi = sorted((a, b))
    assert tine_force(lo, soil) <= tine_force(hi, soil)


def test_raking_power(p):
    d = class_depths(p)
    assert raking_power(d[-1], p) == pytest.approx(982)
    assert raking_power(d[0], p) == pytest.approx(982 * 8.3 / 667)


def test_soil_table_parse():
    with pytest.raises(ValueError):
        read_soil_table("a,b\n1,2\n")
    soil = default_soil()
    assert soil.friction(0.0) <= soil.friction(0.5)


def test_plan_classes(p, g):
    plan = plan_gravel(p, g)
    areas = [c.area_m2 for c in plan.classes]
    assert areas == sorted(areas, reverse=True)
    forces = [c.force_n for c in plan.classes]
    assert forces == sorted(forces)


def test_class_totals_order_independent(p, g):
    plan = plan_gravel(p, g)
    items = list(plan.classes)
    random.Random(0).shuffle(items)
    assert math.fsum(c.energy_j for c in items) == pytest.approx(plan.raking_j)
    assert math.fsum(c.time_s for c in items) == pytest.approx(plan.raking_s)


def test_process_scale_1(p, g):
    r = gravel_process(1, p, g)
    assert r.energy_mwh == pytest.approx(0.81, rel=0.5)
    assert r.hardware_mass_kg == pytest.approx(1600)
    assert 35.4 / 2 <= r.time_days <= 35.4 * 2
    # component times add up to the total
    h = r.subsystem_hours
    assert (h["raking"] + h["laying_rock"] + h["hauling"]) / 24 == pytest.approx(r.time_days)
    assert h["sorting"] == pytest.approx(h["raking"] / 2)


def test_scale_2_halves_raking(p, g):
    a, b = gravel_process(1, p, g), gravel_process(2, p, g)
    assert b.subsystem_hours["raking"] == pytest.approx(a.subsystem_hours["raking"] / 2)
    assert b.energy_mwh == pytest.approx(a.energy_mwh)
