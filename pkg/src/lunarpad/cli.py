"""Command-line interface: ``lunarpad <subcommand> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .costing import CASES, CombinedPlan, CostBreakdown
from .optimizer import Constraints, Evaluator, Optimum, optimize_scale, rank_cases
from .params import ParameterError, ParameterSet, load_parameters
from .reliability import allocate, hours_from_plan, mass_fractions, reference_allocation
from .sintering import ConvergenceError, default_material, simulate_microwave_column

EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_INFEASIBLE = 4

REPORT_COLUMNS = [
    "case", "scale", "time_days", "energy_MWh", "mass_from_earth_t", "rover_count", "peak_power_kW",
    "transport", "development", "delay", "energy", "operations", "total", "appropriated",
]
MONEY = {"transport", "development", "delay", "energy", "operations", "total", "appropriated"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def report_row(plan: CombinedPlan, cost: CostBreakdown | None, label: str | None = None) -> dict[str, Any]:
    row: dict[str, Any] = {
        "case": label or plan.case,
        "scale": plan.scale,
        "time_days": plan.time_days,
        "energy_MWh": plan.energy_mwh,
        "mass_from_earth_t": plan.mass_from_earth_kg / 1000.0,
        "rover_count": plan.rover_count,
        "peak_power_kW": plan.peak_power_kw,
    }
    for k in MONEY:
        row[k] = None
    if cost is not None:
        row.update({k: v for k, v in cost.as_dict().items() if k in MONEY})
    return {k: row[k] for k in REPORT_COLUMNS}


def _phase_row(ph, scale: float) -> dict[str, Any]:
    row = {k: None for k in REPORT_COLUMNS}
    row.update(case=ph.name, scale=scale, time_days=ph.time_days, energy_MWh=ph.energy_mwh,
               mass_from_earth_t=ph.mass_from_earth_kg / 1000.0, rover_count=ph.rover_count,
               peak_power_kW=ph.peak_power_kw)
    return row


def _optimum_row(o: Optimum) -> dict[str, Any]:
    row = report_row(o.plan, o.cost)
    row["feasible"] = o.feasible
    return row


# -- emitters ---------------------------------------------------------------

def _text(v: Any, money: bool = False) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.3f}" if money else repr(v)
    return str(v)


def _cell(v: Any, money: bool) -> str:
    if isinstance(v, float) and not money:
        return f"{v:.4g}"
    return _text(v, money)


def emit(rows: list[dict[str, Any]], fmt: str, out) -> None:
    cols = list(rows[0]) if rows else []
    if fmt == "json":
        json.dump(rows, out, indent=2, allow_nan=False)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_text(r[c]) for c in cols])
    else:
        cells = [[_cell(r[c], c in MONEY) for c in cols] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
        out.write("  ".join(c.rjust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() + "\n")


# -- subcommands -------------------------------------------------------------

def _constraints(a) -> Constraints:
    return Constraints(max_days=a.max_days, max_power_kw=a.max_power_kw, objective=a.objective)


def cmd_run(a, p: ParameterSet) -> tuple[list[dict], int]:
    scale = 1.0 if a.non_optimized or a.scale is None else a.scale
    if scale <= 0:
        raise UsageError("--scale must be > 0")
    ev = Evaluator(a.case, p)
    plan, cost = ev(scale)
    rows = [_phase_row(ph, scale) for ph in plan.phases]
    rows.append(report_row(plan, cost))
    return rows, 0


def cmd_rank(a, p: ParameterSet) -> tuple[list[dict], int]:
    opts = rank_cases(p, constraints=_constraints(a))
    rows = []
    for i, o in enumerate(opts, 1):
        rows.append({"rank": i, **_optimum_row(o)})
    return rows, 0 if any(o.feasible for o in opts) else EXIT_INFEASIBLE


def cmd_optimize(a, p: ParameterSet) -> tuple[list[dict], int]:
    cases = a.case or list(CASES)
    opts = [optimize_scale(c, p, constraints=_constraints(a)) for c in cases]
    rows = [_optimum_row(o) for o in opts]
    return rows, 0 if all(o.feasible for o in opts) else EXIT_INFEASIBLE


def cmd_sweep(a, p: ParameterSet) -> tuple[list[dict], int]:
    if a.points < 1:
        raise UsageError("--points must be >= 1")
    if a.param not in p.to_dict() or not isinstance(p.to_dict()[a.param], float):
        raise UsageError(f"cannot sweep {a.param!r}: not a numeric parameter")
    if a.points == 1:
        values = [a.from_]
    else:
        step = (a.to - a.from_) / (a.points - 1)
        values = [a.from_ + i * step for i in range(a.points)]
    cases = a.case or list(CASES)
    rows, status = [], 0
    for v in values:
        pv = p.replace(**{a.param: v})
        for c in cases:
            o = optimize_scale(c, pv, constraints=_constraints(a))
            rows.append({"param": a.param, "value": v, **_optimum_row(o)})
            if not o.feasible:
                status = EXIT_INFEASIBLE
    return rows, status


def cmd_sinter_sim(a, p: ParameterSet) -> tuple[list[dict], int]:
    m = default_material(a.material_table, density_kg_m3=p.compacted_density_kg_m3)
    depth = a.depth_cm / 100.0
    cells = max(1, round(depth / (a.dz_mm / 1000.0)))
    try:
        r = simulate_microwave_column(a.flux_kw_m2, m, target_depth=depth, dt=a.dt_s, dz=depth / cells)
    except ConvergenceError as exc:
        raise _Infeasible(str(exc)) from exc
    return [{
        "flux_kW_m2": a.flux_kw_m2, "depth_cm": a.depth_cm, "dz_mm": r.dz_m * 1000.0, "dt_s": r.dt_s,
        "steps": r.steps, "elapsed_min": r.elapsed_min, "energy_kWh_m2": r.energy_kwh_m2,
        "max_balance_error": r.max_balance_error,
    }], 0


def cmd_reliability(a, p: ParameterSet) -> tuple[list[dict], int]:
    if a.from_plans:
        plans = {c: Evaluator(c, p)(a.scale)[0] for c in CASES}
        report = allocate({c: hours_from_plan(pl) for c, pl in plans.items()},
                          target=p.reliability_target, feasibility=p.mettas_feasibility)
    else:
        report = reference_allocation(p.reliability_target, p.mettas_feasibility)
        plans = {c: Evaluator(c, p)(a.scale)[0] for c in CASES}
    rows = []
    for case, rep in report.items():
        phi = mass_fractions(plans[case])
        factor = rep.system_factor(phi)
        for sub in rep.subsystems:
            rows.append({
                "case": case, "subsystem": sub.name, "lambda": sub.lam,
                "failure_share": sub.fraction_of_failures, "baseline": sub.baseline, "goal": sub.goal,
                "cost_factor": sub.cost_factor, "mass_fraction": phi[sub.name],
                "system_baseline": rep.baseline, "system_factor": factor,
            })
    return rows, 0


class _Infeasible(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lunarpad", description="Lunar landing-pad construction trade study")
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file of parameter overrides")
    common.add_argument("--format", choices=("csv", "json", "table"), default="table")

    cons = _Parser(add_help=False)
    cons.add_argument("--objective", choices=("total", "appropriated"), default="total")
    cons.add_argument("--max-days", type=float, help="ceiling on calendar construction days")
    cons.add_argument("--max-power-kw", type=float, help="ceiling on peak power")

    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    r = sub.add_parser("run", parents=[common], help="one case at a given scale")
    r.add_argument("--case", required=True, choices=list(CASES))
    g = r.add_mutually_exclusive_group()
    g.add_argument("--scale", type=float)
    g.add_argument("--non-optimized", action="store_true", help="nominal hardware (scale 1)")
    r.set_defaults(func=cmd_run)

    k = sub.add_parser("rank", parents=[common, cons], help="optimize and rank all cases")
    k.set_defaults(func=cmd_rank)

    o = sub.add_parser("optimize", parents=[common, cons], help="optimize scale per case")
    o.add_argument("--case", action="append", choices=list(CASES))
    o.set_defaults(func=cmd_optimize)

    s = sub.add_parser("sweep", parents=[common, cons], help="optimize across a parameter range")
    s.add_argument("--param", default="transport_cost_k_per_kg")
    s.add_argument("--from", dest="from_", type=float, required=True)
    s.add_argument("--to", type=float, required=True)
    s.add_argument("--points", type=int, default=11)
    s.add_argument("--case", action="append", choices=list(CASES))
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("sinter-sim", parents=[common], help="finite-difference microwave heating")
    m.add_argument("--flux-kw-m2", type=float, default=200.0)
    m.add_argument("--depth-cm", type=float, default=1.0)
    m.add_argument("--dz-mm", type=float, default=1.0, help="target cell size; adjusted to divide the depth")
    m.add_argument("--dt-s", type=float, default=0.3)
    m.add_argument("--material-table", type=Path, help="CSV of temperature_c,decay_constant_per_m")
    m.set_defaults(func=cmd_sinter_sim)

    e = sub.add_parser("reliability-report", parents=[common], help="reliability allocation per case")
    e.add_argument("--scale", type=float, default=1.0, help="scale of the plans supplying mass fractions")
    e.add_argument("--from-plans", action="store_true",
                   help="use the plans' operating hours instead of the reference hours")
    e.set_defaults(func=cmd_reliability)
    return ap


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"lunarpad: usage error: {exc}\n")
        return EXIT_USAGE
    try:
        text = a.config.read_text(encoding="utf-8") if a.config else ""
        p = load_parameters(text)
    except OSError as exc:
        err.write(f"lunarpad: cannot read config: {exc}\n")
        return EXIT_CONFIG
    except ParameterError as exc:
        err.write(f"lunarpad: config error: {exc}\n")
        return EXIT_CONFIG
    try:
        rows, status = a.func(a, p)
    except UsageError as exc:
        err.write(f"lunarpad: usage error: {exc}\n")
        return EXIT_USAGE
    except ParameterError as exc:
        err.write(f"lunarpad: config error: {exc}\n")
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        # bad material table or out-of-range option values
        err.write(f"lunarpad: error: {exc}\n")
        return EXIT_CONFIG if getattr(a, "material_table", None) else EXIT_USAGE
    except _Infeasible as exc:
        err.write(f"lunarpad: infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    buf = io.StringIO()
    emit(rows, a.format, buf)
    out.write(buf.getvalue())
    if status == EXIT_INFEASIBLE:
        err.write("lunarpad: infeasible: no scale satisfies the constraints for at least one case\n")
    return status

