"""Combine processes into pad-construction cases and cost them."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Sequence

from .gravel import gravel_process
from .params import DAYS_PER_YEAR, HOURS_PER_YEAR, PadGeometry, ParameterSet, derive_geometry
from .pavers import paver_process
from .polymer import polymer_process
from .siteprep import ProcessResult, compact, grade
from .sintering import sinter_zone

# signifier -> (inner technology, outer technology)
CASES: dict[str, tuple[str, str]] = {
    "SiSi": ("sinter", "sinter"),
    "SiGr": ("sinter", "gravel"),
    "SiPa": ("sinter", "pavers"),
    "SiPo": ("sinter", "polymer"),
    "PaSi": ("pavers", "sinter"),
    "PaGr": ("pavers", "gravel"),
    "PaPa": ("pavers", "pavers"),
    "PaPo": ("pavers", "polymer"),
}


@dataclass(frozen=True)
class EconomicScenario:
    transport_k_per_kg: float = 300.0
    value_multiple: float = 4.0
    mitigation: float = 0.75
    duty_cycle: float = 0.8
    discount_rate: float = 0.035
    program_budget_b: float = 160.0
    program_duration_yr: float = 20.0
    ops_m_per_yr: float = 124.0
    dev_rate_m_per_kg: float = 1.684
    solar_kg_per_kw: float = 30.0
    solar_life_yr: float = 20.0
    dev_charging: str = "amortized"

    def __post_init__(self):
        if self.value_multiple < 0:
            raise ValueError("value multiple must be >= 0")
        if not 0 <= self.mitigation <= 1:
            raise ValueError("mitigation must be in [0, 1]")
        if not 0 < self.duty_cycle <= 1:
            raise ValueError("duty cycle out of range")

    @classmethod
    def from_params(cls, p: ParameterSet) -> "EconomicScenario":
        return cls(
            transport_k_per_kg=p.transport_cost_k_per_kg,
            value_multiple=p.value_multiple,
            mitigation=p.reprogrammable_fraction,
            duty_cycle=p.solar_duty_cycle,
            discount_rate=p.discount_rate_per_yr,
            program_budget_b=p.program_budget_b,
            program_duration_yr=p.program_duration_yr,
            ops_m_per_yr=p.pad_ops_cost_m_per_yr,
            dev_rate_m_per_kg=p.dev_cost_rate_m_per_kg,
            solar_kg_per_kw=p.solar_mass_to_power_kg_per_kw,
            solar_life_yr=p.solar_lifespan_yr,
            dev_charging=p.dev_cost_charging,
        )

    def replace(self, **changes) -> "EconomicScenario":
        return replace(self, **changes)


def present_value_annuity(total: float, years: int, rate: float) -> float:
    """Present value of ``total`` paid in equal parts at the start of each year."""
    if years < 1 or rate < 0:
        raise ValueError("need years >= 1 and rate >= 0")
    payment = total / years
    return sum(payment / (1 + rate) ** k for k in range(int(years)))


def capital_recovery_factor(rate: float, years: float) -> float:
    if rate == 0:
        return 1.0 / years
    return rate / (1 - (1 + rate) ** -years)


def program_delay_cost(construction_days: float, s: EconomicScenario) -> float:
    """Opportunity cost ($M) of the program waiting on the pad."""
    if construction_days < 0:
        raise ValueError("construction days must be >= 0")
    pv = present_value_annuity(s.program_budget_b, int(s.program_duration_yr), s.discount_rate)
    delay_yr = construction_days / s.duty_cycle / DAYS_PER_YEAR
    return (1 - s.mitigation) * s.value_multiple * pv * 1000.0 * s.discount_rate * delay_yr


def energy_cost_rate(s: EconomicScenario) -> float:
    """Cost of lunar solar energy in $K/MWh (equivalently $/kWh)."""
    capital_m_per_kw = s.solar_kg_per_kw * (s.dev_rate_m_per_kg + s.transport_k_per_kg / 1000.0)
    annual = capital_m_per_kw * capital_recovery_factor(s.discount_rate, s.solar_life_yr)
    # $M per kW-year -> $K per MWh
    return annual * 1e6 / HOURS_PER_YEAR


@dataclass(frozen=True)
class CombinedPlan:
    case: str
    phases: tuple[ProcessResult, ...]
    time_days: float
    energy_mwh: float
    equipment_mass_kg: float
    rover_count: int
    rover_mass_kg: float
    consumable_mass_kg: float
    peak_power_kw: float
    subsystem_hours: dict[str, float] = field(default_factory=dict)
    subsystem_mass_kg: dict[str, float] = field(default_factory=dict)
    scale: float = 1.0

    @property
    def hardware_mass_kg(self) -> float:
        return self.equipment_mass_kg + self.rover_mass_kg

    @property
    def mass_from_earth_kg(self) -> float:
        return self.hardware_mass_kg + self.consumable_mass_kg

    def calendar_days(self, duty_cycle: float) -> float:
        return self.time_days / duty_cycle

    def phase(self, name: str) -> ProcessResult:
        for ph in self.phases:
            if ph.name == name:
                return ph
        raise KeyError(name)


def combine_case(case: str, phases: Sequence[ProcessResult], scale: float = 1.0) -> CombinedPlan:
    """Serial schedule, one shared rover fleet, shared equipment counted once."""
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    equipment: dict[str, float] = {}
    hours: dict[str, float] = {}
    masses: dict[str, float] = {}
    for ph in phases:
        for key, kg in ph.equipment.items():
            equipment[key] = max(equipment.get(key, 0.0), kg)
        # subsystem masses follow the same dedup rule as the equipment
        for key, kg in ph.subsystem_mass_kg.items():
            masses[key] = max(masses.get(key, 0.0), kg)
        for key, h in ph.subsystem_hours.items():
            hours[f"{ph.name}.{key}"] = hours.get(f"{ph.name}.{key}", 0.0) + h
    fleet_kg = max((ph.rover_mass_kg for ph in phases), default=0.0)
    # the shared fleet belongs to the first process that needs all of it
    driver = next((ph for ph in phases if ph.rover_mass_kg == fleet_kg), None)
    if driver is not None:
        for key, kg in driver.rover_roles.items():
            masses[key] = masses.get(key, 0.0) + kg
    return CombinedPlan(
        case=case,
        phases=tuple(phases),
        time_days=sum(ph.time_days for ph in phases),
        energy_mwh=sum(ph.energy_mwh for ph in phases),
        equipment_mass_kg=sum(equipment.values()),
        rover_count=max((ph.rover_count for ph in phases), default=0),
        rover_mass_kg=fleet_kg,
        consumable_mass_kg=sum(ph.consumable_mass_kg for ph in phases),
        peak_power_kw=max((ph.peak_power_kw for ph in phases), default=0.0),
        subsystem_hours=hours,
        subsystem_mass_kg=masses,
        scale=scale,
    )


def _zone_process(tech: str, zone: str, scale: float, p: ParameterSet, g: PadGeometry) -> ProcessResult:
    if tech == "sinter":
        return sinter_zone(zone, p.sinter_power_kw * scale, p, g)
    if tech == "pavers":
        return paver_process(zone, scale, p, g)
    if tech == "polymer":
        return polymer_process(zone, scale, p, g)
    if tech == "gravel":
        if zone != "outer":
            raise ValueError("gravel pads are outer-zone only")
        return gravel_process(scale, p, g)
    raise ValueError(f"unknown technology {tech!r}")


def build_case(case: str, scale: float, p: ParameterSet, g: PadGeometry | None = None) -> CombinedPlan:
    """All phases of ``case`` with every hardware set multiplied by ``scale``.

    Sintering power is ``scale`` × the nominal power; the other processes
    get ``scale`` × their nominal fleet.
    """
    if scale <= 0:
        raise ValueError("scale must be > 0")
    g = g or derive_geometry(p)
    inner, outer = CASES[case]
    phases = [
        grade("inner", p, g, scale),
        grade("outer", p, g, scale),
        compact("inner", p, g, scale),
        compact("outer", p, g, scale),
        _zone_process(inner, "inner", scale, p, g),
        _zone_process(outer, "outer", scale, p, g),
    ]
    return combine_case(case, phases, scale)


@dataclass(frozen=True)
class CostBreakdown:
    transport: float
    development: float
    delay: float
    energy: float
    operations: float
    reliability_factor: float = 1.0

    @property
    def total(self) -> float:
        return self.transport + self.development + self.delay + self.energy + self.operations

    @property
    def appropriated(self) -> float:
        return self.total - self.delay - self.energy

    def as_dict(self) -> dict[str, float]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["total"] = self.total
        out["appropriated"] = self.appropriated
        return out


def development_cost(hardware_kg: float, working_days: float, s: EconomicScenario,
                     reliability_factor: float = 1.0) -> float:
    base = hardware_kg * s.dev_rate_m_per_kg * reliability_factor
    if s.dev_charging == "full":
        return base
    if s.dev_charging == "excluded":
        return 0.0
    # amortized: pay for the construction period's share of the hardware's life
    years = working_days / DAYS_PER_YEAR
    return base * capital_recovery_factor(s.discount_rate, s.solar_life_yr) * years


def cost_breakdown(plan: CombinedPlan, s: EconomicScenario, reliability_factor: float = 1.0) -> CostBreakdown:
    """Five cost streams in $M."""
    return CostBreakdown(
        transport=plan.mass_from_earth_kg * s.transport_k_per_kg / 1000.0,
        development=development_cost(plan.hardware_mass_kg, plan.time_days, s, reliability_factor),
        delay=program_delay_cost(plan.time_days, s),
        energy=plan.energy_mwh * energy_cost_rate(s) / 1000.0,
        operations=s.ops_m_per_yr * plan.time_days / DAYS_PER_YEAR,
        reliability_factor=reliability_factor,
    )

