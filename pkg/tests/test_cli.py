import csv
import io
import json

import pytest

from lunarpad.cli import REPORT_COLUMNS, main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_run_non_optimized_table1_rows():
    code, out, _ = run("run", "--case", "SiSi", "--non-optimized", "--format", "csv")
    assert code == 0
    rows = parse_csv(out)
    assert [r["case"] for r in rows] == [
        "grading_inner", "grading_outer", "compacting_inner", "compacting_outer",
        "sintering_inner", "sintering_outer", "SiSi"]
    assert list(rows[0]) == REPORT_COLUMNS
    assert float(rows[4]["time_days"]) == pytest.approx(4.1, abs=0.01)
    assert int(rows[4]["rover_count"]) == 4


def test_rank_defaults_sisi_first():
    code, out, _ = run("rank", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["case"] == "SiSi"


def test_csv_and_json_encode_the_same_numbers():
    _, c, _ = run("optimize", "--case", "SiGr", "--format", "csv")
    _, j, _ = run("optimize", "--case", "SiGr", "--format", "json")
    row, obj = parse_csv(c)[0], json.loads(j)[0]
    for k, v in obj.items():
        if isinstance(v, float):
            assert float(row[k]) == v
            assert abs(float(row[k]) - v) <= 1e-9 * abs(v)


def test_single_point_sweep_matches_optimize():
    _, s, _ = run("sweep", "--from", "300", "--to", "300", "--points", "1", "--case", "SiPo", "--format", "json")
    _, o, _ = run("optimize", "--case", "SiPo", "--format", "json")
    row = json.loads(s)[0]
    assert row.pop("param") == "transport_cost_k_per_kg"
    assert row.pop("value") == 300
    assert row == json.loads(o)[0]


def test_sweep_rows_in_input_order():
    _, out, _ = run("sweep", "--from", "100", "--to", "300", "--points", "3", "--case", "SiSi",
                    "--case", "SiPo", "--format", "csv")
    rows = parse_csv(out)
    assert [(float(r["value"]), r["case"]) for r in rows] == [
        (100.0, "SiSi"), (100.0, "SiPo"), (200.0, "SiSi"), (200.0, "SiPo"), (300.0, "SiSi"), (300.0, "SiPo")]


def test_deterministic_output():
    assert run("rank", "--format", "csv") == run("rank", "--format", "csv")


def test_table_format_has_header():
    code, out, _ = run("run", "--case", "PaPo", "--scale", "2")
    assert code == 0
    assert out.splitlines()[0].split()[:3] == ["case", "scale", "time_days"]


def test_usage_errors():
    assert run()[0] == 2
    assert run("explode")[0] == 2
    assert run("run")[0] == 2
    assert run("run", "--case", "SiSi", "--scale", "-1")[0] == 2
    assert run("sweep", "--param", "dev_cost_charging", "--from", "1", "--to", "2")[0] == 2


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"solar_duty_cycle": 0}')
    code, _, err = run("rank", "--config", str(bad))
    assert code == 3
    assert "duty cycle out of range" in err
    assert run("rank", "--config", str(tmp_path / "missing.json"))[0] == 3


def test_config_applies(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"transport_cost_k_per_kg": 0}')
    _, out, _ = run("run", "--case", "SiSi", "--non-optimized", "--config", str(cfg), "--format", "json")
    assert json.loads(out)[-1]["transport"] == 0


def test_infeasible_exit_code():
    code, out, err = run("optimize", "--case", "SiSi", "--max-days", "0.001", "--format", "json")
    assert code == 4
    assert json.loads(out)[0]["feasible"] is False
    assert "infeasible" in err


def test_sinter_sim(tmp_path):
    code, out, _ = run("sinter-sim", "--format", "json")
    assert code == 0
    row = json.loads(out)[0]
    assert row["elapsed_min"] == pytest.approx(5.34, rel=0.15)
    table = tmp_path / "decay.csv"
    table.write_text("temperature_c,decay_constant_per_m\n20,30\n1200,30\n")
    code, out, _ = run("sinter-sim", "--material-table", str(table), "--format", "json")
    assert code == 0 and json.loads(out)[0]["energy_kWh_m2"] > 0
    table.write_text("nonsense\n")
    assert run("sinter-sim", "--material-table", str(table))[0] == 3


def test_sinter_sim_no_power():
    assert run("sinter-sim", "--flux-kw-m2", "0")[0] == 4


def test_reliability_report():
    code, out, _ = run("reliability-report", "--format", "csv")
    assert code == 0
    rows = parse_csv(out)
    sipa = [r for r in rows if r["case"] == "SiPa" and r["subsystem"] == "oven_robotics"][0]
    assert float(sipa["cost_factor"]) == pytest.approx(1.641, abs=0.001)
    code, _, _ = run("reliability-report", "--from-plans")
    assert code == 0
