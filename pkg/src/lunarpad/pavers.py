"""Oven-baked pavers: feedstock excavation, batch baking, hauling, laying, grouting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .params import KWH, SECONDS_PER_DAY, PadGeometry, ParameterSet
from .siteprep import ProcessResult, roving_energy

# mean distance from a corner-side midpoint to a square, per unit side
SQUARE_HAUL_FACTOR = 0.593


@dataclass(frozen=True)
class BatchTimes:
    heat_s: float
    cool_s: float

    @property
    def total_s(self) -> float:
        return self.heat_s + self.cool_s


@dataclass(frozen=True)
class PaverPlan:
    paver_count: int
    paver_mass_kg: float
    batch_size: int
    batch_count: int
    heat_s: float
    cool_s: float
    bake_total_s: float  # oven occupancy over all batches, incl. loading
    excavation_s: float
    feedstock_haul_s: float
    haul_install_s: float
    grout_mass_kg: float
    grout_s: float
    total_s: float


def bake_time_per_batch(thickness: float, p: ParameterSet) -> BatchTimes:
    """Heat-up time for the paver midplane to reach oven temperature, plus cooling.

    Six diffusion time constants for heat entering from both faces.
    """
    if thickness <= 0:
        raise ValueError("paver thickness must be > 0")
    kappa = p.mold_conductivity_mw_m_k / 1000.0
    tau = (thickness / 2) ** 2 * p.compacted_density_kg_m3 * p.mold_specific_heat_j_kg_k / (2 * kappa)
    heat = 6 * tau
    return BatchTimes(heat, p.oven_cooling_factor * heat)


def grout_requirements(g: PadGeometry, p: ParameterSet) -> tuple[float, float]:
    """Grout mass (kg) and insertion time (s) for the inner-zone joints."""
    # shared edges are grouted once
    length = 4 * p.paver_size_m * g.inner_paver_count / 2
    mass = length * math.pi * (p.grout_bead_radius_mm / 1000.0) ** 2 * p.grout_density_kg_m3
    return mass, length / (p.grout_rate_cm_s / 100.0)


def paver_total_time(feed_s: float, bake_s: float, handling_s: float, haul_install_s: float,
                     n: float) -> float:
    """Pipeline time for ``n`` batches.

    ``feed_s`` is excavation plus feedstock hauling, ``handling_s`` the
    third stream (grouting plus paver hauling/installing) and
    ``haul_install_s`` the last batch's hauling/installing tail.  All are
    totals over every batch.
    """
    if n < 1:
        raise ValueError("batch count must be >= 1")
    if min(feed_s, bake_s, handling_s, haul_install_s) < 0:
        raise ValueError("stream times must be >= 0")
    return (n - 1) / n * max(feed_s, bake_s, handling_s) + (feed_s + bake_s + haul_install_s) / n


@lru_cache(maxsize=64)
def mean_haul_distance(r_lo: float, r_hi: float, oven_r: float, order: int = 64) -> float:
    """Mean straight-line distance from a point at ``oven_r`` to an annulus (or disc)."""
    x, w = np.polynomial.legendre.leggauss(order)
    r = 0.5 * (r_hi - r_lo) * x + 0.5 * (r_hi + r_lo)
    wr = 0.5 * (r_hi - r_lo) * w
    th = np.pi * (x + 1)
    wt = np.pi * w
    rr, tt = np.meshgrid(r, th, indexing="ij")
    d = np.sqrt(rr ** 2 + oven_r ** 2 - 2 * rr * oven_r * np.cos(tt))
    weights = np.outer(wr, wt) * rr
    return float((d * weights).sum() / weights.sum())


def plan_pavers(zone: str, scale: float, p: ParameterSet, g: PadGeometry) -> PaverPlan:
    count = g.paver_count(zone)
    m_p = g.paver_mass(zone)
    mass = count * m_p
    thickness = {"inner": p.paver_thickness_inner_m, "outer": p.paver_thickness_outer_m}[zone]
    batch = max(1, math.floor(p.paver_haul_load_kg / m_p))
    n_batches = math.ceil(count / batch)
    times = bake_time_per_batch(thickness, p)
    loading = count * (p.mold_fill_s_per_paver + p.transfer_s_per_paver)
    bake_total = n_batches * times.total_s + loading

    excavation = mass / p.excavation_rate_kg_s
    dig_area = mass / p.soil_density_kg_m3 / p.excavation_depth_m
    feed_trips = math.ceil(mass / p.feedstock_load_kg)
    feed_haul = feed_trips * 2 * SQUARE_HAUL_FACTOR * math.sqrt(dig_area) / p.driving_speed_m_s

    paver_trips = math.ceil(mass / p.paver_haul_load_kg)
    haul = paver_trips * 2 * _paver_haul_distance(zone, p) / p.driving_speed_m_s
    haul_install = haul + count * p.install_s_per_paver

    grout_mass, grout_s = grout_requirements(g, p) if zone == "inner" else (0.0, 0.0)

    lines = scale
    n_eff = max(1.0, n_batches / lines)
    total = paver_total_time((excavation + feed_haul) / lines, bake_total / lines,
                             (grout_s + haul_install) / lines, haul_install / lines, n_eff)
    return PaverPlan(count, m_p, batch, n_batches, times.heat_s, times.cool_s, bake_total,
                     excavation, feed_haul, haul_install, grout_mass, grout_s, total)


def _paver_haul_distance(zone: str, p: ParameterSet) -> float:
    lo, hi = (0.0, p.r_inner_m) if zone == "inner" else (p.r_inner_m, p.r_outer_m)
    return mean_haul_distance(lo, hi, p.r_outer_m + p.oven_distance_m)


def baking_energy(mass: float, p: ParameterSet) -> float:
    """Oven energy in J to bring ``mass`` kg of feedstock to the sintering temperature."""
    dT = p.bake_end_temp_c - p.bake_start_temp_c
    return mass * p.mold_specific_heat_j_kg_k * dT / p.oven_efficiency


def paver_process(zone: str, scale: float, p: ParameterSet, g: PadGeometry) -> ProcessResult:
    if scale <= 0:
        raise ValueError("scale must be > 0")
    plan = plan_pavers(zone, scale, p, g)
    mass = plan.paver_count * plan.paver_mass_kg
    fleet = math.ceil(scale)

    feed_trips = math.ceil(mass / p.feedstock_load_kg)
    paver_trips = math.ceil(mass / p.paver_haul_load_kg)
    feed_leg = plan.feedstock_haul_s * p.driving_speed_m_s / (2 * feed_trips) if feed_trips else 0.0
    paver_leg = _paver_haul_distance(zone, p)
    dig_rover = p.rover_mass_kg + p.excavator_mass_kg
    lay_rover = p.rover_mass_kg + p.install_arm_mass_kg
    # loaded one way, empty back
    e_feed = feed_trips * (roving_energy(dig_rover + p.feedstock_load_kg, feed_leg, p)
                           + roving_energy(dig_rover, feed_leg, p))
    e_haul = paver_trips * (roving_energy(lay_rover + p.paver_haul_load_kg, paver_leg, p)
                            + roving_energy(lay_rover, paver_leg, p))
    e_dig = p.excavator_power_kw * 1000.0 * plan.excavation_s
    e_bake = baking_energy(mass, p)
    install_s = plan.paver_count * p.install_s_per_paver
    e_lay = p.install_power_w * (install_s + plan.grout_s)
    energy = e_feed + e_haul + e_dig + e_bake + e_lay

    paver_haul_s = plan.haul_install_s - install_s
    oven_s = plan.batch_count * (plan.heat_s + plan.cool_s)
    robotics_s = plan.paver_count * (p.mold_fill_s_per_paver + p.transfer_s_per_paver)
    # the three streams run side by side
    peak = scale * (e_bake / plan.bake_total_s
                    + (e_dig + e_feed) / (plan.excavation_s + plan.feedstock_haul_s)
                    + (e_lay + e_haul) / (plan.haul_install_s + plan.grout_s)) / 1000.0

    oven_set = p.oven_mass_kg + p.excavator_mass_kg + p.install_arm_mass_kg
    hours = {
        "excavating": plan.excavation_s,
        "hauling": plan.feedstock_haul_s + paver_haul_s,
        "oven_robotics": robotics_s,
        "baking": oven_s,
        "laying": install_s,
    }
    if plan.grout_s:
        hours["grouting"] = plan.grout_s
    return ProcessResult(
        name=f"pavers_{zone}",
        time_days=plan.total_s / SECONDS_PER_DAY,
        energy_mwh=energy / KWH / 1000.0,
        equipment_mass_kg=oven_set * fleet,
        rover_count=2 * fleet,
        rover_mass_kg=2 * fleet * p.rover_mass_kg,
        consumable_mass_kg=plan.grout_mass_kg,
        peak_power_kw=peak,
        subsystem_hours={k: v / scale / 3600.0 for k, v in hours.items()},
        equipment={"paver_set": oven_set * fleet},
        subsystem_mass_kg={
            "excavating": p.excavator_mass_kg * fleet,
            "oven_robotics": 0.5 * p.oven_mass_kg * fleet,
            "baking": 0.5 * p.oven_mass_kg * fleet,
            "laying": p.install_arm_mass_kg * fleet,
        },
        rover_roles={"rover_ops": 2 * fleet * p.rover_mass_kg},
    )
