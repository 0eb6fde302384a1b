"""Cost-minimizing hardware scale per case, with optional schedule and power ceilings.

A case's hardware is multiplied by one scalar ``scale`` (1 = nominal
hardware: 200 kW of sintering, one paver line, one rover per attachment).
Rover counts are ``ceil``-ed, so the objective jumps at integer scales.  The
search evaluates a geometric grid, then refines the best brackets with
golden-section search on each piece between integer breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .costing import CASES, CombinedPlan, CostBreakdown, EconomicScenario, build_case, cost_breakdown
from .params import PadGeometry, ParameterSet, derive_geometry
from .reliability import reference_allocation, reliability_factor

SCALE_LO = 1e-2
SCALE_HI = 1e3
GRID_POINTS = 241
ORACLE_POINTS = 1000
_INVPHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class Constraints:
    max_days: float | None = None  # calendar days
    max_power_kw: float | None = None
    objective: str = "total"

    def __post_init__(self):
        if self.objective not in ("total", "appropriated"):
            raise ValueError(f"objective must be 'total' or 'appropriated', got {self.objective!r}")
        for name in ("max_days", "max_power_kw"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be > 0")

    def satisfied(self, plan: CombinedPlan, duty_cycle: float) -> bool:
        if self.max_days is not None and plan.calendar_days(duty_cycle) > self.max_days:
            return False
        if self.max_power_kw is not None and plan.peak_power_kw > self.max_power_kw:
            return False
        return True


@dataclass(frozen=True)
class Optimum:
    case: str
    scale: float
    plan: CombinedPlan
    cost: CostBreakdown
    feasible: bool
    objective: str = "total"

    @property
    def value(self) -> float:
        return self.cost.total if self.objective == "total" else self.cost.appropriated


class Evaluator:
    """Evaluates one case under fixed parameters, scenario and constraints."""

    def __init__(self, case: str, p: ParameterSet, scenario: EconomicScenario | None = None,
                 constraints: Constraints | None = None):
        if case not in CASES:
            raise ValueError(f"unknown case {case!r}")
        self.case = case
        self.p = p
        self.g: PadGeometry = derive_geometry(p)
        self.s = scenario or EconomicScenario.from_params(p)
        self.c = constraints or Constraints()
        self.alloc = reference_allocation(p.reliability_target, p.mettas_feasibility)
        self.calls = 0

    def __call__(self, scale: float) -> tuple[CombinedPlan, CostBreakdown]:
        self.calls += 1
        plan = build_case(self.case, scale, self.p, self.g)
        rf = reliability_factor(plan, self.alloc)
        return plan, cost_breakdown(plan, self.s, rf)

    def objective(self, scale: float) -> float:
        """Objective in $M, ``inf`` where constraints are violated."""
        plan, cost = self(scale)
        if not self.c.satisfied(plan, self.s.duty_cycle):
            return math.inf
        return cost.total if self.c.objective == "total" else cost.appropriated

    def optimum(self, scale: float, feasible: bool = True) -> Optimum:
        plan, cost = self(scale)
        return Optimum(self.case, scale, plan, cost, feasible, self.c.objective)


def evaluate_at_scale(case: str, scale: float, p: ParameterSet,
                      scenario: EconomicScenario | None = None) -> tuple[CombinedPlan, CostBreakdown]:
    if scale <= 0:
        raise ValueError("scale must be > 0")
    return Evaluator(case, p, scenario)(scale)


def geometric_grid(n: int, lo: float = SCALE_LO, hi: float = SCALE_HI) -> np.ndarray:
    return np.geomspace(lo, hi, n)


def _golden(f: Callable[[float], float], a: float, b: float, tol: float = 1e-7) -> tuple[float, float]:
    """Minimum of ``f`` on [a, b], endpoints included."""
    best = min(((f(a), a), (f(b), b)))
    c, d = b - _INVPHI * (b - a), a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return min(best, (fc, c), (fd, d))


def _boundary(ok: Callable[[float], bool], bad: float, good: float, iters: int = 60) -> float:
    """Feasible point nearest the feasibility edge between ``bad`` and ``good``."""
    for _ in range(iters):
        mid = math.sqrt(bad * good)
        if ok(mid):
            good = mid
        else:
            bad = mid
    return good


def _pieces(a: float, b: float) -> list[tuple[float, float]]:
    """Split [a, b] at integers; each piece has a constant ``ceil``."""
    cuts = [a] + [float(k) for k in range(math.ceil(a), math.floor(b) + 1) if a < k < b] + [b]
    # the left end of each piece after the first sits just above an integer
    out = []
    for i, (lo, hi) in enumerate(zip(cuts[:-1], cuts[1:])):
        if i > 0:
            lo = math.nextafter(lo, math.inf) if lo == int(lo) else lo
        if hi > lo:
            out.append((lo, hi))
    return out


def optimize_scale(case: str, p: ParameterSet, scenario: EconomicScenario | None = None,
                   constraints: Constraints | None = None, grid_points: int = GRID_POINTS,
                   refine: int = 4) -> Optimum:
    ev = Evaluator(case, p, scenario, constraints)
    grid = geometric_grid(grid_points)
    vals = [ev.objective(float(s)) for s in grid]
    finite = [i for i, v in enumerate(vals) if math.isfinite(v)]
    if not finite:
        # report the scale that comes closest: the least-violating grid point
        return ev.optimum(float(grid[_least_violation(ev, grid)]), feasible=False)

    candidates: list[tuple[float, float]] = [(vals[i], float(grid[i])) for i in finite]
    ok = lambda s: math.isfinite(ev.objective(s))  # noqa: E731
    for i in sorted(finite, key=lambda i: vals[i])[:refine]:
        lo = float(grid[max(i - 1, 0)])
        hi = float(grid[min(i + 1, len(grid) - 1)])
        # shrink to the feasible part of the bracket
        if not ok(lo):
            lo = _boundary(ok, lo, float(grid[i]))
        if not ok(hi):
            hi = _boundary(ok, hi, float(grid[i]))
        for a, b in _pieces(lo, hi):
            if not ok(a):
                a = _boundary(ok, a, b) if ok(b) else a
            if not ok(b):
                b = _boundary(ok, b, a) if ok(a) else b
            if ok(a) and ok(b):
                candidates.append(_golden(ev.objective, a, b))
    val, scale = min(candidates)
    # among equal objectives prefer the smallest scale
    tie = min(s for v, s in candidates if v <= val * (1 + 1e-12) + 1e-12)
    return ev.optimum(tie)


def _least_violation(ev: Evaluator, grid: np.ndarray) -> int:
    def excess(s: float) -> float:
        plan, _ = ev(float(s))
        e = 0.0
        if ev.c.max_days is not None:
            e += max(0.0, plan.calendar_days(ev.s.duty_cycle) / ev.c.max_days - 1)
        if ev.c.max_power_kw is not None:
            e += max(0.0, plan.peak_power_kw / ev.c.max_power_kw - 1)
        return e
    return int(np.argmin([excess(s) for s in grid]))


def grid_oracle(case: str, p: ParameterSet, scenario: EconomicScenario | None = None,
                constraints: Constraints | None = None, points: int = ORACLE_POINTS) -> tuple[float, float]:
    """Brute-force (objective, scale) over a fine geometric grid."""
    ev = Evaluator(case, p, scenario, constraints)
    best = (math.inf, math.nan)
    for s in geometric_grid(points):
        v = ev.objective(float(s))
        if v < best[0]:
            best = (v, float(s))
    return best


def rank_cases(p: ParameterSet, scenario: EconomicScenario | None = None,
               constraints: Constraints | None = None,
               cases: Iterable[str] = CASES) -> list[Optimum]:
    """Optimize every case and sort: feasible first, then by objective."""
    opts = [optimize_scale(c, p, scenario, constraints) for c in cases]
    return sorted(opts, key=lambda o: (not o.feasible, o.value))


@dataclass(frozen=True)
class SweepPoint:
    rate_k_per_kg: float
    optimum: Optimum


def sweep_transport(cases: Sequence[str], lo: float, hi: float, points: int, p: ParameterSet,
                    scenario: EconomicScenario | None = None,
                    constraints: Constraints | None = None) -> list[SweepPoint]:
    """Optimum per case over transport rates spaced geometrically from ``lo`` to ``hi``."""
    if points < 1 or lo <= 0 or hi < lo:
        raise ValueError("need points >= 1 and 0 < lo <= hi")
    base = scenario or EconomicScenario.from_params(p)
    rates = [lo] if points == 1 else [float(r) for r in np.geomspace(lo, hi, points)]
    out = []
    for rate in rates:
        s = base.replace(transport_k_per_kg=rate)
        for case in cases:
            out.append(SweepPoint(rate, optimize_scale(case, p, s, constraints)))
    return out


def crossover_rate(case_a: str, case_b: str, lo: float, hi: float, p: ParameterSet,
                   scenario: EconomicScenario | None = None, tol: float = 0.5) -> float | None:
    """Transport rate where two cases' optimized costs are equal, by bisection.

    Returns ``None`` when the sign of the difference does not change on [lo, hi].
    """
    base = scenario or EconomicScenario.from_params(p)

    def diff(rate: float) -> float:
        s = base.replace(transport_k_per_kg=rate)
        return optimize_scale(case_a, p, s).value - optimize_scale(case_b, p, s).value

    f_lo, f_hi = diff(lo), diff(hi)
    if f_lo == 0:
        return lo
    if f_lo * f_hi > 0:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = diff(mid)
        if f_mid * f_lo > 0:
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
