"""Model inputs: economic assumptions, construction parameters and pad geometry.

Every tunable lives on :class:`ParameterSet`.  Field names carry their unit
as a suffix and values are stored in those units; the process models convert
to SI where they use them.  Money is always in $M inside the cost model.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from typing import Any

KWH = 3.6e6  # J
SECONDS_PER_DAY = 86400.0
DAYS_PER_YEAR = 365.25
HOURS_PER_YEAR = DAYS_PER_YEAR * 24.0

DEV_CHARGING_MODES = ("full", "amortized", "excluded")


class ParameterError(ValueError):
    """Raised when a configuration cannot be parsed or violates a constraint."""

    def __init__(self, message: str, key: str | None = None, value: Any = None):
        self.key = key
        self.value = value
        super().__init__(message)


def _p(default, unit: str, doc: str, check: str = "positive"):
    return field(default=default, metadata={"unit": unit, "doc": doc, "check": check})


@dataclass(frozen=True)
class ParameterSet:
    # -- program and economics ------------------------------------------------
    program_budget_b: float = _p(160.0, "$B", "Budgeted capital cost of the lunar program")
    value_multiple: float = _p(4.0, "-", "Expected program value as a multiple of its present cost")
    annual_ops_budget_b_per_yr: float = _p(3.0, "$B/yr", "Annual operational budget of the program (informational)")
    program_duration_yr: float = _p(20.0, "yr", "Program duration")
    discount_rate_per_yr: float = _p(0.035, "1/yr", "Discount rate for federal money", "nonneg")
    reprogrammable_fraction: float = _p(0.75, "-", "Fraction of program delay mitigated by re-sequencing", "fraction")
    dev_cost_rate_m_per_kg: float = _p(1.684, "$M/kg", "Hardware development cost rate", "nonneg")
    transport_cost_k_per_kg: float = _p(300.0, "$K/kg", "Transportation cost to the lunar surface", "nonneg")
    pad_ops_cost_m_per_yr: float = _p(124.0, "$M/yr", "Yearly operations cost of pad construction", "nonneg")
    solar_mass_to_power_kg_per_kw: float = _p(30.0, "kg/kW", "Solar photovoltaic mass-to-power ratio", "nonneg")
    solar_lifespan_yr: float = _p(20.0, "yr", "Solar photovoltaic lifespan")
    solar_duty_cycle: float = _p(0.8, "-", "Fraction of calendar time surface work is possible", "duty")
    dev_cost_charging: str = _p("amortized", "-", "Development cost charging: full, amortized or excluded", "mode")

    # -- pad geometry and soil -------------------------------------------------
    r_inner_m: float = _p(12.0, "m", "Inner zone radius")
    r_outer_m: float = _p(27.0, "m", "Outer zone radius")
    soil_density_kg_m3: float = _p(1500.0, "kg/m3", "Density of soil before compaction")
    mineral_density_kg_m3: float = _p(3100.0, "kg/m3", "Specific gravity of regolith minerals")
    compacted_density_kg_m3: float = _p(2200.0, "kg/m3", "Density of regolith after compaction")

    # -- roving, grading, compacting ------------------------------------------
    rover_mass_kg: float = _p(300.0, "kg", "Mass of one generic rover")
    driving_speed_m_s: float = _p(1.0, "m/s", "Rover driving speed")
    roving_energy_j_per_kg_m: float = _p(2.5, "J/kg/m", "Roving specific energy per distance")
    grading_rate_m2_s: float = _p(0.1, "m2/s", "Grading rate")
    compacting_rate_m2_s: float = _p(0.05, "m2/s", "Compacting rate")
    blade_width_m: float = _p(1.5, "m", "Grader blade (and compactor) width")
    grading_energy_kwh_per_m: float = _p(0.0167, "kWh/m", "Blade energy per meter of grading path")
    compactor_mass_kg: float = _p(200.0, "kg", "Compactor attachment mass")
    grading_blade_mass_kg: float = _p(300.0, "kg", "Grading blade attachment mass")
    compactor_power_kw: float = _p(4.26, "kW", "Compactor plate power")

    # -- gravel / rock breakwater ----------------------------------------------
    rock_pad_thickness_m: float = _p(0.2286, "m", "Thickness of rock pad")
    rock_layers: int = _p(4, "-", "Number of rock layers")
    rake_rover_mass_kg: float = _p(1000.0, "kg", "Mass of raking/sorting rover")
    rock_laying_rover_mass_kg: float = _p(600.0, "kg", "Mass of rock laying rover")
    usable_rock_fraction: float = _p(0.04, "-", "Fraction of regolith that is usable rock (unused by the area law)", "fraction")
    rock_pad_density_kg_m3: float = _p(2200.0, "kg/m3", "Bulk density of packed rock pad")
    rake_width_m: float = _p(1.0, "m", "Rock rake width")
    rake_depth_m: float = _p(0.1016, "m", "Deepest rock raking depth (largest class)")
    raking_speed_m_s: float = _p(0.667, "m/s", "Rock raking speed")
    rock_laying_time_s_per_m2: float = _p(300.0, "s/m2", "Time to lay rock")
    rock_laying_width_m: float = _p(1.0, "m", "Width of rock laying device")
    rake_power_deepest_w: float = _p(982.0, "W", "Power of rock rake at deepest depth")
    trommel_energy_kwh_per_t: float = _p(0.433, "kWh/t", "Rock sorter (trommel) energy")
    rock_load_per_trip_kg: float = _p(1000.0, "kg", "Rock load per hauling trip")
    rock_haul_round_trip_m: float = _p(100.0, "m", "Round-trip hauling distance per rock load")

    # -- microwave sintering ---------------------------------------------------
    sinter_thickness_inner_m: float = _p(0.0762, "m", "Inner pad sintered thickness")
    sinter_thickness_outer_m: float = _p(0.0254, "m", "Outer pad sintered thickness")
    sinter_payload_per_rover_kg: float = _p(1000.0, "kg", "Maximum sintering payload per rover")
    sintered_density_kg_m3: float = _p(2200.0, "kg/m3", "Density of sintered pad")
    sinter_power_kw: float = _p(200.0, "kW", "Nominal consumed power of the sintering set")
    magnetron_efficiency: float = _p(0.5, "-", "Fraction of consumed power delivered as microwaves", "unit")
    magnetron_kw_per_kg: float = _p(3.0 / 260.0, "kW/kg", "Terrestrial magnetron power-to-mass ratio")
    magnetron_mass_factor: float = _p(0.2, "-", "Spaceflight optimization factor for magnetron mass", "unit")
    sinter_energy_inner_kwh_m2: float = _p(21.73, "kWh/m2", "Inner pad microwave energy application")
    sinter_energy_outer_kwh_m2: float = _p(18.45, "kWh/m2", "Outer pad microwave energy application")

    # -- polymer infusion ------------------------------------------------------
    polymer_thickness_inner_m: float = _p(0.0508, "m", "Inner polymer pad thickness")
    polymer_thickness_outer_m: float = _p(0.0254, "m", "Outer polymer pad thickness")
    polymer_fraction_outer: float = _p(0.07, "-", "Outer polymer mass fraction", "fraction")
    polymer_fraction_inner: float = _p(0.1166, "-", "Inner polymer mass fraction", "fraction")
    sprayer_mass_kg: float = _p(100.0, "kg", "Mass of sprayer/infusion assembly")
    polymer_tank_kg: float = _p(1000.0, "kg", "Mass of polymer in a full rover tank")
    tank_refill_min: float = _p(30.0, "min", "Rover tank refill time", "nonneg")
    polymer_application_s_per_m2: float = _p(10.0, "s/m2", "Polymer application time")
    spray_width_m: float = _p(1.0, "m", "Spray width")
    polymer_density_kg_m3: float = _p(1000.0, "kg/m3", "Polymer density")
    polymer_storage_distance_km: float = _p(1.0, "km", "Distance from polymer storage to pad", "nonneg")

    # -- pavers ----------------------------------------------------------------
    paver_thickness_inner_m: float = _p(0.0762, "m", "Inner pad paver thickness")
    paver_thickness_outer_m: float = _p(0.0254, "m", "Outer pad paver thickness")
    paver_size_m: float = _p(0.4572, "m", "Paver horizontal dimension (square)")
    paver_density_kg_m3: float = _p(2200.0, "kg/m3", "Paver material density")
    oven_mass_kg: float = _p(1000.0, "kg", "Oven and associated mechanisms mass")
    oven_distance_m: float = _p(20.0, "m", "Oven distance to pad edge", "nonneg")
    install_arm_mass_kg: float = _p(100.0, "kg", "Paver installation robotic arm mass")
    excavator_mass_kg: float = _p(100.0, "kg", "Feedstock excavator implement mass")
    bucket_width_m: float = _p(0.5, "m", "Excavator digging bucket width")
    excavation_depth_m: float = _p(0.3, "m", "Excavation (bite) depth")
    excavation_rate_kg_s: float = _p(2.286, "kg/s", "Feedstock excavation rate")
    excavator_power_kw: float = _p(4.0, "kW", "Feedstock excavator power", "nonneg")
    feedstock_load_kg: float = _p(1000.0, "kg", "Feedstock load on rover per trip")
    mold_fill_s_per_paver: float = _p(30.0, "s", "Time to fill molds and place into oven per paver", "nonneg")
    oven_temp_c: float = _p(1120.0, "degC", "Oven sintering temperature")
    oven_start_temp_c: float = _p(100.0, "degC", "Oven starting temperature")
    mold_conductivity_mw_m_k: float = _p(346.99, "mW/m/K", "Average thermal conductivity in packed molds")
    mold_specific_heat_j_kg_k: float = _p(1095.19, "J/kg/K", "Average specific heat in packed molds")
    oven_cooling_factor: float = _p(0.5, "-", "Oven cooling time as a fraction of heating time", "nonneg")
    oven_efficiency: float = _p(0.6, "-", "Oven energy efficiency", "unit")
    transfer_s_per_paver: float = _p(15.0, "s", "Transfer time from oven to rover per paver", "nonneg")
    paver_haul_load_kg: float = _p(1000.0, "kg", "Max load of pavers on rover when hauling")
    install_s_per_paver: float = _p(60.0, "s", "Installation time per paver", "nonneg")
    install_power_w: float = _p(400.0, "W", "Robot power to install pavers", "nonneg")
    grout_density_kg_m3: float = _p(1500.0, "kg/m3", "Grout density")
    grout_bead_radius_mm: float = _p(3.0, "mm", "Grout bead radius", "nonneg")
    grout_rate_cm_s: float = _p(1.0, "cm/s", "Grout insertion rate")
    bake_start_temp_c: float = _p(127.0, "degC", "Feedstock temperature before baking")
    bake_end_temp_c: float = _p(1200.0, "degC", "Feedstock temperature at end of baking")

    # -- reliability -----------------------------------------------------------
    reliability_target: float = _p(0.99, "-", "System reliability every construction method must reach", "open_unit")
    mettas_feasibility: float = _p(0.5, "-", "Feasibility of reliability improvement in the cost model", "half_open_unit")

    def __post_init__(self):
        for f in dataclasses.fields(self):
            _check(f.name, getattr(self, f.name), f.metadata["check"])
        if not self.r_outer_m > self.r_inner_m:
            raise ParameterError(
                f"r_outer_m={self.r_outer_m} must exceed r_inner_m={self.r_inner_m}",
                "r_outer_m", self.r_outer_m)
        if self.compacted_density_kg_m3 > self.mineral_density_kg_m3:
            raise ParameterError(
                f"compacted_density_kg_m3={self.compacted_density_kg_m3} exceeds "
                f"mineral_density_kg_m3={self.mineral_density_kg_m3}",
                "compacted_density_kg_m3", self.compacted_density_kg_m3)

    def replace(self, **changes) -> "ParameterSet":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    # frequently used derived quantities
    @property
    def transport_m_per_kg(self) -> float:
        return self.transport_cost_k_per_kg / 1000.0

    @property
    def magnetron_kg_per_kw(self) -> float:
        return self.magnetron_mass_factor / self.magnetron_kw_per_kg


def _check(key: str, value: Any, check: str) -> None:
    if check == "mode":
        if value not in DEV_CHARGING_MODES:
            raise ParameterError(
                f"{key}={value!r} must be one of {', '.join(DEV_CHARGING_MODES)}", key, value)
        return
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ParameterError(f"{key}={value!r} is not a finite number", key, value)
    ok, rule = {
        "positive": (value > 0, "> 0"),
        "nonneg": (value >= 0, ">= 0"),
        "fraction": (0 <= value <= 1, "in [0, 1]"),
        "unit": (0 < value <= 1, "in (0, 1]"),
        "open_unit": (0 < value < 1, "in (0, 1)"),
        "half_open_unit": (0 <= value < 1, "in [0, 1)"),
        "duty": (0 < value <= 1, "in (0, 1]"),
    }[check]
    if not ok:
        if check == "duty":
            raise ParameterError(f"duty cycle out of range: {key}={value} must be {rule}", key, value)
        raise ParameterError(f"{key}={value} must be {rule}", key, value)


_FIELDS = {f.name: f for f in dataclasses.fields(ParameterSet)}


def load_parameters(config_text: str = "") -> ParameterSet:
    """Parse a flat JSON object of overrides on top of the defaults.

    Empty (or whitespace-only) text yields the defaults.
    """
    if not config_text.strip():
        return ParameterSet()
    try:
        data = json.loads(config_text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParameterError("config must be a JSON object")
    unknown = sorted(set(data) - set(_FIELDS))
    if unknown:
        raise ParameterError(f"unknown parameter key(s): {', '.join(unknown)}", unknown[0])
    values = {}
    for key, value in data.items():
        default = _FIELDS[key].default
        if isinstance(default, float) and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if isinstance(default, int) and not isinstance(default, bool) and isinstance(value, float):
            if not value.is_integer():
                raise ParameterError(f"{key}={value} must be an integer", key, value)
            value = int(value)
        values[key] = value
    return ParameterSet(**values)


def dump_parameters(p: ParameterSet) -> str:
    return json.dumps(p.to_dict(), indent=2, sort_keys=False)


def key_dictionary() -> list[tuple[str, Any, str, str]]:
    """(key, default, unit, description) rows for every configuration key."""
    return [(f.name, f.default, f.metadata["unit"], f.metadata["doc"])
            for f in dataclasses.fields(ParameterSet)]


@dataclass(frozen=True)
class PadGeometry:
    inner_area_m2: float
    outer_area_m2: float
    inner_volume_m3: float
    outer_volume_m3: float
    inner_mass_kg: float
    outer_mass_kg: float
    paver_footprint_m2: float
    inner_paver_count: int
    outer_paver_count: int
    inner_paver_mass_kg: float
    outer_paver_mass_kg: float

    def area(self, zone: str) -> float:
        return {"inner": self.inner_area_m2, "outer": self.outer_area_m2}[_zone(zone)]

    def paver_count(self, zone: str) -> int:
        return {"inner": self.inner_paver_count, "outer": self.outer_paver_count}[_zone(zone)]

    def paver_mass(self, zone: str) -> float:
        return {"inner": self.inner_paver_mass_kg, "outer": self.outer_paver_mass_kg}[_zone(zone)]


def _zone(zone: str) -> str:
    if zone not in ("inner", "outer"):
        raise ValueError(f"zone must be 'inner' or 'outer', got {zone!r}")
    return zone


def derive_geometry(p: ParameterSet) -> PadGeometry:
    inner_area = math.pi * p.r_inner_m ** 2
    outer_area = math.pi * (p.r_outer_m ** 2 - p.r_inner_m ** 2)
    inner_volume = inner_area * p.paver_thickness_inner_m
    outer_volume = outer_area * p.paver_thickness_outer_m
    footprint = p.paver_size_m ** 2
    return PadGeometry(
        inner_area_m2=inner_area,
        outer_area_m2=outer_area,
        inner_volume_m3=inner_volume,
        outer_volume_m3=outer_volume,
        inner_mass_kg=inner_volume * p.compacted_density_kg_m3,
        outer_mass_kg=outer_volume * p.compacted_density_kg_m3,
        paver_footprint_m2=footprint,
        # partial pavers at the zone edge are still whole pavers
        inner_paver_count=math.ceil(inner_area / footprint),
        outer_paver_count=math.ceil(outer_area / footprint),
        inner_paver_mass_kg=footprint * p.paver_thickness_inner_m * p.paver_density_kg_m3,
        outer_paver_mass_kg=footprint * p.paver_thickness_outer_m * p.paver_density_kg_m3,
    )
