"""Polymer infusion of the compacted regolith surface."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import KWH, SECONDS_PER_DAY, PadGeometry, ParameterSet
from .siteprep import ProcessResult, roving_energy


def polymer_mass_fraction_pore_filling(rho_bulk: float, rho_grain: float, rho_poly: float) -> float:
    """Polymer mass fraction when polymer fills every pore of the compacted soil."""
    if not 0 < rho_bulk <= rho_grain:
        raise ValueError("need 0 < bulk density <= grain density")
    filled = (1 - rho_bulk / rho_grain) * rho_poly
    return filled / (filled + rho_bulk)


@dataclass(frozen=True)
class PolymerPlan:
    polymer_mass_kg: float
    refills: int
    application_s: float
    refill_s: float
    roving_s: float

    @property
    def total_s(self) -> float:
        return self.application_s + self.refill_s + self.roving_s


def plan_polymer(zone: str, p: ParameterSet, g: PadGeometry) -> PolymerPlan:
    thickness, fraction = {
        "inner": (p.polymer_thickness_inner_m, p.polymer_fraction_inner),
        "outer": (p.polymer_thickness_outer_m, p.polymer_fraction_outer),
    }[zone]
    area = g.area(zone)
    mass = area * thickness * p.compacted_density_kg_m3 * fraction
    refills = math.ceil(mass / p.polymer_tank_kg)
    trip_m = 2 * p.polymer_storage_distance_km * 1000.0
    return PolymerPlan(
        polymer_mass_kg=mass,
        refills=refills,
        application_s=p.polymer_application_s_per_m2 * area,
        refill_s=refills * p.tank_refill_min * 60.0,
        roving_s=refills * trip_m / p.driving_speed_m_s,
    )


def polymer_process(zone: str, scale: float, p: ParameterSet, g: PadGeometry) -> ProcessResult:
    if scale <= 0:
        raise ValueError("scale must be > 0")
    plan = plan_polymer(zone, p, g)
    fleet = math.ceil(scale)
    dry = p.rover_mass_kg + p.sprayer_mass_kg
    leg = p.polymer_storage_distance_km * 1000.0
    # carry each tankful out, return empty
    loads = [min(p.polymer_tank_kg, plan.polymer_mass_kg - i * p.polymer_tank_kg)
             for i in range(plan.refills)]
    e_trips = sum(roving_energy(dry + load, leg, p) + roving_energy(dry, leg, p) for load in loads)
    # the tank drains linearly while spraying
    path = g.area(zone) / p.spray_width_m
    e_spray = roving_energy(dry + p.polymer_tank_kg / 2, path, p)
    energy = e_trips + e_spray
    powers = [e_spray / plan.application_s if plan.application_s else 0.0,
              e_trips / plan.roving_s if plan.roving_s else 0.0]
    return ProcessResult(
        name=f"polymer_{zone}",
        time_days=plan.total_s / scale / SECONDS_PER_DAY,
        energy_mwh=energy / KWH / 1000.0,
        equipment_mass_kg=p.sprayer_mass_kg * fleet,
        rover_count=fleet,
        rover_mass_kg=p.rover_mass_kg * fleet,
        consumable_mass_kg=plan.polymer_mass_kg,
        peak_power_kw=scale * max(powers) / 1000.0,
        subsystem_hours={"polymer": plan.application_s / scale / 3600.0,
                         "rover_ops": plan.roving_s / scale / 3600.0},
        equipment={"sprayer": p.sprayer_mass_kg * fleet},
        subsystem_mass_kg={"polymer": p.sprayer_mass_kg * fleet},
        rover_roles={"rover_ops": p.rover_mass_kg * fleet},
    )
