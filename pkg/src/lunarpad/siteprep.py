"""Grading and compacting, plus the result record shared by every process."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .params import KWH, SECONDS_PER_DAY, PadGeometry, ParameterSet


@dataclass(frozen=True)
class ProcessResult:
    """Time, energy and mass of one construction process at one scale.

    ``equipment_mass_kg`` covers attachments, ovens and magnetrons.  Rovers
    are kept apart (``rover_count`` / ``rover_mass_kg``) because a combined
    plan shares one fleet across processes.  ``equipment`` maps an equipment
    key to its mass so that plans can drop duplicates when the same
    technology builds both zones.
    """

    name: str
    time_days: float
    energy_mwh: float
    equipment_mass_kg: float
    rover_count: int
    rover_mass_kg: float
    consumable_mass_kg: float = 0.0
    peak_power_kw: float = 0.0
    subsystem_hours: dict[str, float] = field(default_factory=dict)
    equipment: dict[str, float] = field(default_factory=dict)
    # hardware mass by reliability subsystem; rovers are listed apart in
    # rover_roles because only the fleet-sizing process's rovers are kept
    subsystem_mass_kg: dict[str, float] = field(default_factory=dict)
    rover_roles: dict[str, float] = field(default_factory=dict)

    @property
    def hardware_mass_kg(self) -> float:
        return self.equipment_mass_kg + self.rover_mass_kg

    @property
    def mass_from_earth_kg(self) -> float:
        return self.hardware_mass_kg + self.consumable_mass_kg


def roving_energy(load_mass: float, distance: float, p: ParameterSet) -> float:
    """Energy in J to drive ``load_mass`` kg over ``distance`` m."""
    return p.roving_energy_j_per_kg_m * load_mass * distance


def _site_work(name: str, zone: str, rate: float, tool_mass: float, tool_power_w: float,
               blade_j_per_m: float, scale: float, p: ParameterSet, g: PadGeometry) -> ProcessResult:
    area = g.area(zone)
    fleet = math.ceil(scale)
    work_s = area / rate / scale
    path = area / p.blade_width_m
    energy = (blade_j_per_m * path
              + roving_energy(p.rover_mass_kg + tool_mass, path, p)
              + tool_power_w * work_s * scale)
    peak = energy / work_s / 1000.0 if work_s > 0 else 0.0
    return ProcessResult(
        name=f"{name}_{zone}",
        time_days=work_s / SECONDS_PER_DAY,
        energy_mwh=energy / KWH / 1000.0,
        equipment_mass_kg=tool_mass * fleet,
        rover_count=fleet,
        rover_mass_kg=p.rover_mass_kg * fleet,
        peak_power_kw=peak,
        subsystem_hours={"rover_ops": work_s / 3600.0},
        equipment={name: tool_mass * fleet},
        subsystem_mass_kg={name: tool_mass * fleet},
        rover_roles={"rover_ops": p.rover_mass_kg * fleet},
    )


def grade(zone: str, p: ParameterSet, g: PadGeometry, scale: float = 1.0) -> ProcessResult:
    """Grade a zone with ``ceil(scale)`` bladed rovers working at ``scale`` × the base rate."""
    return _site_work("grading", zone, p.grading_rate_m2_s, p.grading_blade_mass_kg, 0.0,
                      p.grading_energy_kwh_per_m * KWH, scale, p, g)


def compact(zone: str, p: ParameterSet, g: PadGeometry, scale: float = 1.0) -> ProcessResult:
    return _site_work("compacting", zone, p.compacting_rate_m2_s, p.compactor_mass_kg,
                      p.compactor_power_kw * 1000.0, 0.0, scale, p, g)
