import json
import math

import pytest
from hypothesis import given, strategies as st

from lunarpad.params import (
    ParameterError, ParameterSet, derive_geometry, dump_parameters, key_dictionary, load_parameters,
)


def test_empty_config_gives_defaults():
    assert load_parameters("") == ParameterSet()
    assert load_parameters("  \n") == ParameterSet()


def test_single_override():
    p = load_parameters('{"transport_cost_k_per_kg": 100}')
    assert p.transport_cost_k_per_kg == 100.0
    assert p.replace(transport_cost_k_per_kg=300.0) == ParameterSet()


def test_duty_cycle_zero_rejected():
    with pytest.raises(ParameterError, match="duty cycle out of range"):
        load_parameters('{"solar_duty_cycle": 0}')


@pytest.mark.parametrize("text", ['{"nope": 1}', "[1, 2]", "{bad json", '{"rover_mass_kg": "x"}'])
def test_bad_configs_rejected(text):
    with pytest.raises(ParameterError):
        load_parameters(text)


def test_error_reports_key_and_value():
    with pytest.raises(ParameterError) as info:
        load_parameters('{"rover_mass_kg": -3}')
    assert info.value.key == "rover_mass_kg"
    assert info.value.value == -3


def test_radius_and_density_ordering():
    with pytest.raises(ParameterError):
        ParameterSet(r_inner_m=30.0)
    with pytest.raises(ParameterError):
        ParameterSet(compacted_density_kg_m3=3200.0)


def test_dev_charging_mode_checked():
    with pytest.raises(ParameterError):
        ParameterSet(dev_cost_charging="sometimes")


def test_round_trip_defaults():
    p = ParameterSet()
    assert load_parameters(dump_parameters(p)) == p


@given(st.floats(1.0, 2000.0), st.floats(0.05, 1.0), st.sampled_from(["full", "amortized", "excluded"]))
def test_round_trip_property(rate, duty, mode):
    p = ParameterSet(transport_cost_k_per_kg=rate, solar_duty_cycle=duty, dev_cost_charging=mode)
    q = load_parameters(dump_parameters(p))
    assert q.to_dict() == p.to_dict()


def test_key_dictionary_covers_every_field():
    rows = key_dictionary()
    assert [r[0] for r in rows] == list(ParameterSet().to_dict())
    assert all(r[3] for r in rows)


def test_geometry_defaults(g):
    assert math.isclose(g.inner_area_m2, math.pi * 144)
    assert math.isclose(g.outer_area_m2, math.pi * (729 - 144))
    assert g.outer_area_m2 == pytest.approx(1837.83, abs=0.01)
    assert g.inner_paver_mass_kg == pytest.approx(35.05, abs=0.01)
    assert g.inner_paver_count == math.ceil(g.inner_area_m2 / 0.4572 ** 2)


@given(st.floats(1.0, 50.0), st.floats(1.05, 3.0))
def test_doubling_radii_quadruples_areas(r_in, ratio):
    a = derive_geometry(ParameterSet(r_inner_m=r_in, r_outer_m=r_in * ratio))
    b = derive_geometry(ParameterSet(r_inner_m=2 * r_in, r_outer_m=2 * r_in * ratio))
    assert b.inner_area_m2 == pytest.approx(4 * a.inner_area_m2)
    assert b.outer_area_m2 == pytest.approx(4 * a.outer_area_m2)


def test_dump_is_json_object():
    assert isinstance(json.loads(dump_parameters(ParameterSet())), dict)
