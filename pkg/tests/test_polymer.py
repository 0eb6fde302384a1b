import pytest
from hypothesis import given, strategies as st

from lunarpad.params import ParameterSet, derive_geometry
from lunarpad.polymer import plan_polymer, polymer_mass_fraction_pore_filling, polymer_process


def test_pore_filling_fraction():
    assert round(polymer_mass_fraction_pore_filling(2200, 3100, 1000), 6) == pytest.approx(0.116580, abs=5e-7)
    assert polymer_mass_fraction_pore_filling(3100, 3100, 1000) == 0
    assert polymer_mass_fraction_pore_filling(1550, 3100, 1000) == pytest.approx(500 / 2050)
    with pytest.raises(ValueError):
        polymer_mass_fraction_pore_filling(3200, 3100, 1000)


def test_outer_row(p, g):
    r = polymer_process("outer", 1, p, g)
    assert r.consumable_mass_kg == pytest.approx(7200, rel=0.01)
    assert r.time_days == pytest.approx(0.56, rel=0.05)
    assert r.energy_mwh == pytest.approx(0.011, rel=0.2)
    assert r.mass_from_earth_kg == pytest.approx(7600, rel=0.01)


def test_refills_ceiling(p, g):
    plan = plan_polymer("outer", p, g)
    assert plan.refills == -(-plan.polymer_mass_kg // p.polymer_tank_kg)
    assert plan.total_s == plan.application_s + plan.refill_s + plan.roving_s


def test_inner_supported(p, g):
    assert polymer_process("inner", 1, p, g).consumable_mass_kg > 0


@given(st.floats(0.01, 100.0))
def test_polymer_mass_invariant_under_scale(scale):
    p = ParameterSet()
    g = derive_geometry(p)
    a = polymer_process("outer", scale, p, g)
    b = polymer_process("outer", 1, p, g)
    assert a.consumable_mass_kg == b.consumable_mass_kg
    assert a.time_days == pytest.approx(b.time_days / scale)
