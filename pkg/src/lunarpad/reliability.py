"""Reliability allocation and the development-cost multiplier it implies.

Each subsystem carries integer ratings plus a rating for its operating time;
their product is a relative failure rate.  Rates are normalized so the most
reliable construction system sits exactly on the target.  Weaker subsystems
are then lifted by minimum-effort allocation and priced with an exponential
cost-of-reliability model.  Plan mass fractions blend the subsystem factors
into one multiplier on development cost.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

# Reference operating hours for the baseline scenario, per subsystem row.
DEFAULT_HOURS: dict[str, float] = {
    "gc_inner": 3.8,
    "gc_outer": 15.3,
    "sinter_inner": 22.42,
    "sinter_outer": 41.51,
    "sinter_both": 47.18,
    "polymer_outer": 2.59,
    "pavers_inner.excavating": 10.07,
    "pavers_inner.hauling": 2.41,
    "pavers_inner.oven_robotics": 29.98,
    "pavers_inner.baking": 111.82,
    "pavers_inner.laying": 39.50,
    "pavers_inner.grouting": 60.17,
    "pavers_outer.excavating": 18.42,
    "pavers_outer.hauling": 4.86,
    "pavers_outer.oven_robotics": 162.40,
    "pavers_outer.baking": 606.58,
    "pavers_outer.laying": 216.05,
    "pavers_both.excavating": 19.06,
    "pavers_both.hauling": 4.83,
    "pavers_both.oven_robotics": 120.88,
    "pavers_both.baking": 451.36,
    "pavers_both.laying": 160.50,
    "pavers_both.grouting": 48.32,
    "gravel.raking": 6.75,
    "gravel.sorting": 3.38,
    "gravel.laying_rock": 27.78,
    "gravel.hauling": 4.03,
}

_GC = ["gc_inner", "gc_outer"]
_PAV_IN = {k: [f"pavers_inner.{k}"] for k in ("excavating", "oven_robotics", "baking", "laying", "grouting")}
_PAV_OUT = {k: [f"pavers_outer.{k}"] for k in ("excavating", "oven_robotics", "baking", "laying")}
_GRAVEL = {"raking_sorting": ["gravel.raking", "gravel.sorting"], "laying_rock": ["gravel.laying_rock"]}

# case -> ordered {system subsystem: hour rows summed into it}
SYSTEMS: dict[str, dict[str, list[str]]] = {
    "SiSi": {"rover_ops": _GC, "sintering": ["sinter_inner", "sinter_outer"]},
    "SiPa": {"rover_ops": _GC + ["pavers_outer.hauling"], "sintering": ["sinter_inner"], **_PAV_OUT},
    "SiPo": {"rover_ops": _GC, "sintering": ["sinter_inner"], "polymer": ["polymer_outer"]},
    "SiGr": {"rover_ops": _GC + ["gravel.hauling"], "sintering": ["sinter_inner"], **_GRAVEL},
    "PaSi": {"rover_ops": _GC + ["pavers_inner.hauling"], **_PAV_IN, "sintering": ["sinter_outer"]},
    "PaPa": {
        "rover_ops": _GC + ["pavers_inner.hauling", "pavers_outer.hauling"],
        **{k: _PAV_IN[k] + _PAV_OUT.get(k, []) for k in _PAV_IN},
    },
    "PaPo": {"rover_ops": _GC + ["pavers_inner.hauling"], **_PAV_IN, "polymer": ["polymer_outer"]},
    "PaGr": {"rover_ops": _GC + ["pavers_inner.hauling", "gravel.hauling"], **_PAV_IN, **_GRAVEL},
}

# system subsystem -> plan hardware keys carrying its mass
MASS_KEYS: dict[str, tuple[str, ...]] = {
    "rover_ops": ("rover_ops", "grading", "compacting"),
    "sintering": ("sintering",),
    "polymer": ("polymer",),
    "excavating": ("excavating",),
    "oven_robotics": ("oven_robotics",),
    "baking": ("baking",),
    "laying": ("laying",),
    "grouting": ("grouting",),
    "raking_sorting": ("raking_sorting",),
    "laying_rock": ("laying_rock",),
}


@dataclass(frozen=True)
class SubsystemRating:
    name: str
    intricacy: int
    state_of_art: int
    environment: int

    def __post_init__(self):
        for v in (self.intricacy, self.state_of_art, self.environment):
            if not (isinstance(v, int) and 1 <= v <= 10):
                raise ValueError(f"{self.name}: ratings must be integers in 1..10")


def load_ratings(path: str | Path | None = None) -> dict[str, SubsystemRating]:
    if path is None:
        text = resources.files("lunarpad").joinpath("data", "ratings.csv").read_text()
    else:
        text = Path(path).read_text()
    out = {}
    for row in csv.DictReader(io.StringIO(text)):
        out[row["subsystem"]] = SubsystemRating(row["subsystem"], int(row["intricacy"]),
                                                int(row["state_of_art"]), int(row["environment"]))
    return out


def time_ratings(hours: Mapping[str, float]) -> dict[str, float]:
    """Linear 0-10 rating of operating time, 10 for the longest-running subsystem."""
    if any(h < 0 for h in hours.values()):
        raise ValueError("operating hours must be >= 0")
    top = max(hours.values(), default=0.0)
    if top <= 0:
        raise ValueError("at least one subsystem must have operating hours")
    return {k: 10.0 * h / top for k, h in hours.items()}


def relative_failure_rate(r: SubsystemRating, time_rating: float) -> float:
    return r.intricacy * r.state_of_art * time_rating * r.environment


def normalize_lambda(system_totals: Sequence[float], target: float) -> float:
    """Normalization putting the most reliable system exactly on ``target``."""
    if not 0 < target < 1:
        raise ValueError("target must be in (0, 1)")
    return -min(system_totals) / math.log(target)


def baseline_reliability(lam: float, big_lambda: float) -> float:
    return math.exp(-lam / big_lambda)


def minimize_effort(baselines: Sequence[float], target: float) -> list[float]:
    """Raise the weakest subsystems to a common level so the product meets ``target``."""
    if any(not 0 < r <= 1 for r in baselines):
        raise ValueError("baseline reliabilities must be in (0, 1]")
    if math.prod(baselines) >= target:
        return list(baselines)
    raised = set(range(len(baselines)))
    while True:
        kept = math.prod(baselines[i] for i in range(len(baselines)) if i not in raised)
        level = (target / kept) ** (1.0 / len(raised))
        stay = {i for i in raised if baselines[i] >= level}
        if not stay:
            break
        raised -= stay
    return [level if i in raised else r for i, r in enumerate(baselines)]


def mettas_cost(r_goal: float, r_min: float, f: float, r_max: float = 1.0) -> float:
    """Cost multiplier to lift a subsystem from ``r_min`` to ``r_goal``."""
    if not 0 <= f < 1:
        raise ValueError("feasibility must be in [0, 1)")
    if r_goal < r_min - 1e-12:
        raise ValueError("goal reliability below baseline")
    if r_min >= r_max:
        return 1.0
    return math.exp((1 - f) * (r_goal - r_min) / (r_max - r_min))


def system_cost_factor(factors: Sequence[float], fractions: Sequence[float]) -> float:
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError(f"mass fractions sum to {sum(fractions)}, not 1")
    return sum(c * phi for c, phi in zip(factors, fractions))


@dataclass(frozen=True)
class SubsystemAllocation:
    name: str
    lam: float
    fraction_of_failures: float
    baseline: float
    goal: float
    cost_factor: float


@dataclass(frozen=True)
class AllocationReport:
    case: str
    big_lambda: float
    subsystems: tuple[SubsystemAllocation, ...]

    @property
    def total_lambda(self) -> float:
        return sum(s.lam for s in self.subsystems)

    @property
    def baseline(self) -> float:
        return math.prod(s.baseline for s in self.subsystems)

    @property
    def achieved(self) -> float:
        return math.prod(s.goal for s in self.subsystems)

    def factor(self, name: str) -> float:
        return next(s.cost_factor for s in self.subsystems if s.name == name)

    def system_factor(self, fractions: Mapping[str, float]) -> float:
        names = [s.name for s in self.subsystems]
        return system_cost_factor([s.cost_factor for s in self.subsystems],
                                  [fractions.get(n, 0.0) for n in names])


def allocate(hours: Mapping[str, float] | Mapping[str, Mapping[str, float]] = DEFAULT_HOURS,
             ratings: Mapping[str, SubsystemRating] | None = None,
             target: float = 0.99, feasibility: float = 0.5) -> dict[str, AllocationReport]:
    """Allocation for all eight cases.

    ``hours`` is either one table of subsystem hours shared by every case or
    a per-case mapping of such tables.  Time ratings are scaled against the
    longest time across everything supplied.
    """
    ratings = ratings or load_ratings()
    per_case = (dict(hours) if hours and isinstance(next(iter(hours.values())), Mapping)
                else {c: hours for c in SYSTEMS})
    top = max(h for tbl in per_case.values() for h in tbl.values())
    lams: dict[str, list[tuple[str, float]]] = {}
    for case, rows in SYSTEMS.items():
        tbl = per_case[case]
        lams[case] = [
            (name, sum(relative_failure_rate(ratings[r], 10.0 * tbl.get(r, 0.0) / top) for r in members))
            for name, members in rows.items()
        ]
    big = normalize_lambda([sum(l for _, l in v) for v in lams.values()], target)
    out = {}
    for case, items in lams.items():
        total = sum(l for _, l in items)
        base = [baseline_reliability(l, big) for _, l in items]
        goals = minimize_effort(base, target)
        out[case] = AllocationReport(case, big, tuple(
            SubsystemAllocation(name, l, l / total if total else 0.0, b, gl, mettas_cost(gl, b, feasibility))
            for (name, l), b, gl in zip(items, base, goals)))
    return out


@lru_cache(maxsize=8)
def _reference(target: float, feasibility: float) -> dict[str, AllocationReport]:
    return allocate(DEFAULT_HOURS, target=target, feasibility=feasibility)


def reference_allocation(target: float = 0.99, feasibility: float = 0.5) -> dict[str, AllocationReport]:
    """Allocation from the shipped reference hours (cached)."""
    return _reference(target, feasibility)


def mass_fractions(plan) -> dict[str, float]:
    """Hardware mass fraction of each reliability subsystem of ``plan``'s case."""
    masses = {name: sum(plan.subsystem_mass_kg.get(k, 0.0) for k in MASS_KEYS[name])
              for name in SYSTEMS[plan.case]}
    total = sum(masses.values())
    if total <= 0:
        return {name: 1.0 / len(masses) for name in masses}
    return {name: m / total for name, m in masses.items()}


def reliability_factor(plan, report: Mapping[str, AllocationReport] | None = None,
                       target: float = 0.99, feasibility: float = 0.5) -> float:
    report = report or reference_allocation(target, feasibility)
    return report[plan.case].system_factor(mass_fractions(plan))


def hours_from_plan(plan) -> dict[str, float]:
    """Subsystem operating hours of a plan, keyed like ``DEFAULT_HOURS``."""
    h = plan.subsystem_hours
    out = {
        "gc_inner": h.get("grading_inner.rover_ops", 0.0) + h.get("compacting_inner.rover_ops", 0.0),
        "gc_outer": h.get("grading_outer.rover_ops", 0.0) + h.get("compacting_outer.rover_ops", 0.0),
        "sinter_inner": h.get("sintering_inner.sintering", 0.0),
        "sinter_outer": h.get("sintering_outer.sintering", 0.0),
        "polymer_outer": h.get("polymer_outer.polymer", 0.0),
    }
    for key, val in h.items():
        phase, sub = key.split(".", 1)
        if phase.startswith("pavers_"):
            out[f"{phase}.{sub}"] = val
        elif phase == "gravel_outer":
            out[f"gravel.{sub}"] = val
    return out
