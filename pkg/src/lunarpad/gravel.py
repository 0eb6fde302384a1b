"""Gravel/rock outer pad: soil profile, rake forces, raking, sorting, laying, hauling."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .params import KWH, SECONDS_PER_DAY, PadGeometry, ParameterSet
from .siteprep import ProcessResult, roving_energy

ROCK_DIAMETERS_M = (0.015, 0.0323, 0.0696, 0.15)
# tine forces at the four class depths, N
ANCHOR_FORCES_N = (8.3, 24.7, 104.0, 667.0)
MAX_RAKE_DEPTH_M = 0.25

RHO_MAX = 1920.0
Z_A, Z_B = 0.122, 0.18


def regolith_density(z):
    """Bulk density (kg/m³) of undisturbed regolith at depth ``z`` m."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("depth must be >= 0")
    out = RHO_MAX * (z + Z_A) / (z + Z_B)
    return float(out) if out.ndim == 0 else out


def relative_density(z):
    """Relative density in percent at depth ``z`` m."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("depth must be >= 0")
    surf = Z_A / Z_B
    out = ((z + Z_A) / (z + Z_B) - surf) / (1 - surf) * 100.0
    return float(out) if out.ndim == 0 else out


def raking_area(d: float) -> float:
    """Area (m²) raked to collect enough rocks of diameter ``d`` m."""
    if d <= 0:
        raise ValueError("rock diameter must be > 0")
    return 37772.0 * d ** -0.535


def class_depths(p: ParameterSet) -> tuple[float, ...]:
    # embedded rocks: extraction depth proportional to size
    return tuple(p.rake_depth_m * d / ROCK_DIAMETERS_M[-1] for d in ROCK_DIAMETERS_M)


@dataclass(frozen=True)
class SoilProfile:
    """Lunar soil column with friction angle and cohesion keyed on relative density."""

    dr_pct: tuple[float, ...]
    friction_deg: tuple[float, ...]
    cohesion_pa: tuple[float, ...]
    gravity: float = 1.622
    anchor_depths_m: tuple[float, ...] = (0.01016, 0.021877, 0.047142, 0.1016)
    anchor_forces_n: tuple[float, ...] = ANCHOR_FORCES_N

    def density(self, z):
        return regolith_density(z)

    def relative_density(self, z):
        return relative_density(z)

    def friction(self, z):
        return np.interp(relative_density(z), self.dr_pct, self.friction_deg)

    def cohesion(self, z):
        return np.interp(relative_density(z), self.dr_pct, self.cohesion_pa)

    def with_anchor_depths(self, depths) -> "SoilProfile":
        return SoilProfile(self.dr_pct, self.friction_deg, self.cohesion_pa, self.gravity,
                           tuple(depths), self.anchor_forces_n)


def read_soil_table(text: str):
    rows = list(csv.DictReader(io.StringIO(text)))
    cols = {"relative_density_pct", "friction_deg", "cohesion_pa"}
    if not rows or set(rows[0]) != cols:
        raise ValueError("soil table needs header relative_density_pct,friction_deg,cohesion_pa")
    return tuple(tuple(float(r[c]) for r in rows)
                 for c in ("relative_density_pct", "friction_deg", "cohesion_pa"))


def default_soil(p: ParameterSet | None = None) -> SoilProfile:
    text = resources.files("lunarpad").joinpath("data", "soil_strength.csv").read_text()
    soil = SoilProfile(*read_soil_table(text))
    return soil.with_anchor_depths(class_depths(p)) if p is not None else soil


def tine_force(depth: float, profile: SoilProfile) -> float:
    """Horizontal force (N) on one rake tine at ``depth`` m in lunar soil.

    Log-log interpolation through the anchor forces, extended by the end
    segments' slopes.
    """
    if not 0 < depth <= MAX_RAKE_DEPTH_M:
        raise ValueError(f"tine depth must be in (0, {MAX_RAKE_DEPTH_M}] m, got {depth}")
    lx = np.log(profile.anchor_depths_m)
    ly = np.log(profile.anchor_forces_n)
    x = math.log(depth)
    if x <= lx[0]:
        i = 0
    elif x >= lx[-1]:
        i = len(lx) - 2
    else:
        i = int(np.searchsorted(lx, x)) - 1
    slope = (ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i])
    return float(math.exp(ly[i] + slope * (x - lx[i])))


def raking_power(depth: float, p: ParameterSet, profile: SoilProfile | None = None) -> float:
    """Rake power (W) at ``depth``: the deepest-class measurement scaled by tine force."""
    profile = profile or default_soil(p)
    deepest = profile.anchor_depths_m[-1]
    return p.rake_power_deepest_w * tine_force(depth, profile) / tine_force(deepest, profile)


@dataclass(frozen=True)
class RockClass:
    diameter_m: float
    depth_m: float
    force_n: float
    area_m2: float
    time_s: float  # single-rake time
    energy_j: float


@dataclass(frozen=True)
class GravelPlan:
    classes: tuple[RockClass, ...]
    rock_mass_kg: float
    trommel_j: float
    laying_s: float
    laying_j: float
    haul_trips: int
    haul_s: float
    haul_j: float

    @property
    def raking_s(self) -> float:
        return sum(c.time_s for c in self.classes)

    @property
    def raking_j(self) -> float:
        return sum(c.energy_j for c in self.classes)


def plan_gravel(p: ParameterSet, g: PadGeometry) -> GravelPlan:
    soil = default_soil(p)
    classes = []
    for d, z in zip(ROCK_DIAMETERS_M, class_depths(p)):
        area = raking_area(d)
        t = area / p.rake_width_m / p.raking_speed_m_s
        classes.append(RockClass(d, z, tine_force(z, soil), area, t, raking_power(z, p, soil) * t))
    rock = g.outer_area_m2 * p.rock_pad_thickness_m * p.rock_pad_density_kg_m3
    trips = math.ceil(rock / p.rock_load_per_trip_kg)
    leg = p.rock_haul_round_trip_m / 2
    haul_j = trips * (roving_energy(p.rock_laying_rover_mass_kg + p.rock_load_per_trip_kg, leg, p)
                      + roving_energy(p.rock_laying_rover_mass_kg, leg, p))
    # laying unloads each trip linearly, so the rover carries half a load on average
    lay_path = g.outer_area_m2 / p.rock_laying_width_m
    lay_j = roving_energy(p.rock_laying_rover_mass_kg + p.rock_load_per_trip_kg / 2, lay_path, p)
    return GravelPlan(
        classes=tuple(classes),
        rock_mass_kg=rock,
        trommel_j=p.trommel_energy_kwh_per_t * rock / 1000.0 * KWH,
        laying_s=p.rock_laying_time_s_per_m2 * g.outer_area_m2,
        laying_j=lay_j,
        haul_trips=trips,
        haul_s=trips * p.rock_haul_round_trip_m / p.driving_speed_m_s,
        haul_j=haul_j,
    )


def gravel_process(scale: float, p: ParameterSet, g: PadGeometry) -> ProcessResult:
    if scale <= 0:
        raise ValueError("scale must be > 0")
    plan = plan_gravel(p, g)
    fleet = math.ceil(scale)
    rake_s = plan.raking_s / scale
    lay_s = plan.laying_s / scale
    haul_s = plan.haul_s / scale
    energy = plan.raking_j + plan.trommel_j + plan.laying_j + plan.haul_j
    # sorting runs alongside raking
    rake_power = max(c.energy_j / c.time_s for c in plan.classes) + plan.trommel_j / plan.raking_s
    peak = scale * max(rake_power, plan.laying_j / plan.laying_s, plan.haul_j / plan.haul_s) / 1000.0
    rovers_kg = (p.rake_rover_mass_kg + p.rock_laying_rover_mass_kg) * fleet
    return ProcessResult(
        name="gravel_outer",
        time_days=(rake_s + lay_s + haul_s) / SECONDS_PER_DAY,
        energy_mwh=energy / KWH / 1000.0,
        equipment_mass_kg=0.0,
        rover_count=2 * fleet,
        rover_mass_kg=rovers_kg,
        peak_power_kw=peak,
        subsystem_hours={
            "raking": rake_s / 3600.0,
            "sorting": rake_s / 7200.0,
            "laying_rock": lay_s / 3600.0,
            "hauling": haul_s / 3600.0,
        },
        equipment={},
        rover_roles={
            "raking_sorting": p.rake_rover_mass_kg * fleet,
            "laying_rock": p.rock_laying_rover_mass_kg * fleet,
        },
    )
