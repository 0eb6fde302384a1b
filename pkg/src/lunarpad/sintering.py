"""Microwave sintering: a 1-D absorption simulator and the trade-level process model."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.integrate import trapezoid

from .params import KWH, SECONDS_PER_DAY, PadGeometry, ParameterSet
from .siteprep import ProcessResult

KELVIN = 273.15

# basalt heat-capacity fit, J/kg/K
CP_COEFFS = (2337.0, -0.2773, 220.2e5, -29760.0)


def specific_heat_basalt(t, coeffs=CP_COEFFS):
    """Evaluate the basalt heat-capacity fit at ``t``.

    The fit variable must be positive.  Its published form reproduces the
    tabulated average of 1095.19 J/kg/K only when the argument is absolute
    temperature, so callers working in °C pass ``T + 273.15``.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("specific heat fit is defined for T > 0 only")
    a, b, c, d = coeffs
    out = a + b * t + c / t ** 2 + d / np.sqrt(t)
    return float(out) if out.ndim == 0 else out


def mean_specific_heat(t_lo_c: float, t_hi_c: float, step_c: float = 1.0) -> float:
    """Average heat capacity between two Celsius temperatures (trapezoid rule)."""
    n = max(2, int(math.ceil((t_hi_c - t_lo_c) / step_c)) + 1)
    t = np.linspace(t_lo_c, t_hi_c, n)
    return float(trapezoid(specific_heat_basalt(t + KELVIN), t) / (t_hi_c - t_lo_c))


@dataclass(frozen=True)
class MaterialModel:
    temperatures_c: tuple[float, ...]
    decay_per_m: tuple[float, ...]
    density_kg_m3: float = 2200.0
    start_temp_c: float = 127.0
    sinter_temp_c: float = 1200.0
    cp_coeffs: tuple[float, float, float, float] = CP_COEFFS

    def __post_init__(self):
        if len(self.temperatures_c) != len(self.decay_per_m) or len(self.temperatures_c) < 2:
            raise ValueError("decay table needs at least two matching rows")
        if any(b <= a for a, b in zip(self.temperatures_c, self.temperatures_c[1:])):
            raise ValueError("decay table must be sorted by strictly increasing temperature")
        if any(a <= 0 for a in self.decay_per_m):
            raise ValueError("decay constants must be > 0")
        if self.density_kg_m3 <= 0:
            raise ValueError("density must be > 0")

    def decay(self, t_c):
        # np.interp holds the end values flat outside the table
        return np.interp(t_c, self.temperatures_c, self.decay_per_m)

    def heat_capacity(self, t_c):
        # the fit turns over far above the sintering range; hold it at the sinter point
        t = np.minimum(t_c, self.sinter_temp_c) + KELVIN
        return specific_heat_basalt(t, self.cp_coeffs)


def read_decay_table(text: str) -> tuple[tuple[float, ...], tuple[float, ...]]:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or set(rows[0]) != {"temperature_c", "decay_constant_per_m"}:
        raise ValueError("decay table needs header temperature_c,decay_constant_per_m")
    temps = tuple(float(r["temperature_c"]) for r in rows)
    decay = tuple(float(r["decay_constant_per_m"]) for r in rows)
    return temps, decay


def default_material(table_path: str | Path | None = None, **kwargs) -> MaterialModel:
    if table_path is None:
        text = resources.files("lunarpad").joinpath("data", "decay_constant.csv").read_text()
    else:
        text = Path(table_path).read_text()
    temps, decay = read_decay_table(text)
    return MaterialModel(temps, decay, **kwargs)


@dataclass(frozen=True)
class SinterSimResult:
    energy_kwh_m2: float
    elapsed_s: float
    depth_m: np.ndarray
    temperature_c: np.ndarray
    dt_s: float
    dz_m: float
    steps: int
    max_balance_error: float  # worst per-step relative energy imbalance
    monotone: bool  # profile non-increasing with depth at every step

    @property
    def elapsed_min(self) -> float:
        return self.elapsed_s / 60.0


class ConvergenceError(RuntimeError):
    pass


def simulate_microwave_column(flux_kw_m2: float, m: MaterialModel | None = None,
                              target_depth: float = 0.01, dt: float = 0.3, dz: float = 0.001,
                              column_m: float = 0.3, max_steps: int = 200_000) -> SinterSimResult:
    """Heat a soil column from the top with a plane microwave wave.

    Each cell absorbs ``q (1 - exp(-alpha dz))`` of the flux ``q`` reaching
    it, with ``alpha`` taken at the cell's own temperature.  Conduction is
    ignored.  Stops when the mean temperature over ``target_depth`` reaches
    the sintering temperature.
    """
    m = m or default_material()
    cells = int(round(target_depth / dz))
    if cells < 1 or not math.isclose(cells * dz, target_depth, rel_tol=1e-9, abs_tol=1e-12):
        raise ValueError("target_depth must be a positive multiple of dz")
    n = max(cells, int(round(column_m / dz)))
    flux = flux_kw_m2 * 1000.0
    temp = np.full(n, m.start_temp_c)
    worst = 0.0
    monotone = True
    steps = 0
    if flux <= 0:
        raise ConvergenceError("no incident power; the column never heats")
    while temp[:cells].mean() < m.sinter_temp_c:
        if steps >= max_steps:
            raise ConvergenceError(f"no convergence after {max_steps} steps")
        trans = np.exp(-m.decay(temp) * dz)
        q = flux * np.concatenate(([1.0], np.cumprod(trans)))
        absorbed = q[:-1] * (1.0 - trans)
        worst = max(worst, abs(absorbed.sum() + q[-1] - flux) / flux)
        temp = temp + absorbed * dt / (m.density_kg_m3 * dz * m.heat_capacity(temp))
        monotone = monotone and bool(np.all(np.diff(temp) <= 1e-9))
        steps += 1
    elapsed = steps * dt
    return SinterSimResult(
        energy_kwh_m2=flux * elapsed / KWH,
        elapsed_s=elapsed,
        depth_m=(np.arange(n) + 0.5) * dz,
        temperature_c=temp,
        dt_s=dt,
        dz_m=dz,
        steps=steps,
        max_balance_error=worst,
        monotone=monotone,
    )


def magnetron_mass(power_kw: float, p: ParameterSet) -> float:
    return power_kw * p.magnetron_kg_per_kw


def sinter_zone(zone: str, scale_power_kw: float, p: ParameterSet, g: PadGeometry) -> ProcessResult:
    """Sinter one zone with ``scale_power_kw`` of consumed electrical power."""
    if scale_power_kw <= 0:
        raise ValueError("sintering power must be > 0")
    per_area = {"inner": p.sinter_energy_inner_kwh_m2, "outer": p.sinter_energy_outer_kwh_m2}[zone]
    applied_kwh = g.area(zone) * per_area
    hours = applied_kwh / (scale_power_kw * p.magnetron_efficiency)
    mag = magnetron_mass(scale_power_kw, p)
    rovers = math.ceil(mag / p.sinter_payload_per_rover_kg)
    return ProcessResult(
        name=f"sintering_{zone}",
        time_days=hours * 3600.0 / SECONDS_PER_DAY,
        energy_mwh=applied_kwh / p.magnetron_efficiency / 1000.0,
        equipment_mass_kg=mag,
        rover_count=rovers,
        rover_mass_kg=rovers * p.rover_mass_kg,
        peak_power_kw=scale_power_kw,
        subsystem_hours={"sintering": hours},
        equipment={"magnetrons": mag},
        subsystem_mass_kg={"sintering": mag},
        rover_roles={"sintering": rovers * p.rover_mass_kg},
    )
