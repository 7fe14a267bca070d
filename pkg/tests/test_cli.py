import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from levypk import model_to_dict, reference_model
from levypk.cli import main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(rows))))


@pytest.fixture
def model_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(model_to_dict(reference_model(name))))
        return str(path)

    return write


def test_roots_m1(capsys, model_file):
    code, out, _ = run(capsys, "roots", model_file("m1"), "--s", "1")
    assert code == 0
    roots = json.loads(out)
    assert len(roots) == 1
    assert roots[0]["re"] == pytest.approx(np.sqrt(2) - 1, abs=1e-10)
    assert roots[0]["multiplicity"] == 1


def test_roots_csv_format(capsys):
    code, out, _ = run(capsys, "--format", "csv", "roots", "--preset", "erlang2_double", "--s", "0")
    rows = table(out)
    assert code == 0 and [int(r["multiplicity"]) for r in rows] == [1, 2]


def test_malformed_model_points_at_key(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"drift_a": 1, "pos_jumps": {"rate": 1, "kind": "exponential", "params": {"mean": 1}}}))
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 1 and out == ""
    assert "pos_jumps.params" in err and "mean" in err


def test_invalid_json_text(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{drift_a: 1")
    assert run(capsys, "validate", str(bad))[0] == 1


def test_missing_file_and_usage_errors(capsys):
    assert run(capsys, "roots", "/nonexistent/model.json", "--s", "1")[0] == 1
    assert run(capsys, "roots", "--preset", "m1")[0] == 1
    assert run(capsys, "infimum-density", "--preset", "m1", "--s", "1", "--grid", "0:1")[0] == 1


def test_nonnegative_mean_is_an_input_error(capsys, tmp_path):
    path = tmp_path / "up.json"
    path.write_text(json.dumps({"drift_a": 1.0, "sigma": 1.0}))
    code, _, err = run(capsys, "supremum", "triplet", str(path))
    assert code == 1
    assert "E X_1 < 0" in err


def test_numerical_failure_exit_code(capsys):
    code, _, err = run(capsys, "--tolerance", "1e-300", "supremum", "cdf", "--preset", "halfnormal_oscillating", "--grid", "0:5:3")
    assert code == 2
    assert "GridTooCoarse" in err and "levypk.supremum" in err


def test_infimum_density_csv(capsys):
    code, out, _ = run(capsys, "infimum-density", "--preset", "m1", "--s", "1", "--grid", "-3:-0.5:6")
    assert code == 0
    header = dict(line[2:].split("=", 1) for line in out.splitlines() if line.startswith("#"))
    r1 = np.sqrt(2) - 1
    assert float(header["atom0"]) == pytest.approx(r1, rel=1e-12)
    rows = table(out)
    y = np.array([float(r["y"]) for r in rows])
    np.testing.assert_allclose([float(r["density"]) for r in rows], (1 - r1) * r1 * np.exp(r1 * y), rtol=1e-10)


def test_infimum_density_methods_agree(capsys):
    _, a, _ = run(capsys, "infimum-density", "--preset", "erlang2_complex", "--s", "1", "--grid", "-10:-0.1:20")
    _, b, _ = run(capsys, "infimum-density", "--preset", "erlang2_complex", "--s", "1", "--grid", "-10:-0.1:20",
                  "--method", "matrix")
    da = [float(r["density"]) for r in table(a)]
    db = [float(r["density"]) for r in table(b)]
    np.testing.assert_allclose(da, db, atol=1e-10)


def test_transform_sine_value(capsys, tmp_path):
    path = tmp_path / "e.json"
    path.write_text(json.dumps({"drift_a": -1, "pos_jumps": {"rate": 1, "kind": "exponential", "params": {"beta": 1}}}))
    code, out, _ = run(capsys, "transform", str(path), "--kind", "C2", "--u", "0", "--w", "1", "--grid", "0:1:2")
    assert code == 0
    assert float(table(out)[0]["value"]) == pytest.approx(-0.5, abs=1e-15)


def test_supremum_subcommands(capsys):
    code, out, _ = run(capsys, "supremum", "triplet", "--preset", "halfnormal_oscillating")
    trip = json.loads(out)
    assert code == 0 and trip["a_star"] == pytest.approx(2.1687, abs=1e-4)
    _, out, _ = run(capsys, "supremum", "cdf", "--preset", "m1", "--grid", "0:4:5")
    rows = table(out)
    np.testing.assert_allclose([float(r["cdf"]) for r in rows], 1 - np.exp(-np.linspace(0, 4, 5)), atol=1e-8)
    _, out, _ = run(capsys, "--format", "json", "supremum", "mgf", "--preset", "m1", "--grid", "-1:0:2")
    assert json.loads(out)[0]["mgf_re"] == pytest.approx(0.5, abs=1e-12)


def test_seed_fixes_samples(capsys):
    a = run(capsys, "supremum", "sample", "--preset", "halfnormal_oscillating", "--n", "50", "--seed", "5")[1]
    b = run(capsys, "supremum", "sample", "--preset", "halfnormal_oscillating", "--n", "50", "--seed", "5")[1]
    c = run(capsys, "supremum", "sample", "--preset", "halfnormal_oscillating", "--n", "50", "--seed", "6")[1]
    assert a == b and a != c


def test_montecarlo_table(capsys):
    args = ("montecarlo", "--preset", "brownian", "--paths", "3000", "--horizon", "20", "--seed", "2")
    code, out, _ = run(capsys, *args)
    assert code == 0
    rows = table(out)
    assert list(rows[0]) == ["x", "empirical_cdf", "se", "analytic_cdf", "z_score"]
    assert len(rows) == 20
    assert run(capsys, *args)[1] == out


def test_reference_example_report(capsys):
    code, out, _ = run(capsys, "reproduce-paper-example", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["all_pass"]
    assert len(rep["f0_grid"]["x"]) == len(rep["f0_grid"]["f0"])
    assert {c["quantity"] for c in rep["checks"]} >= {"r2_re", "r2_im", "r4", "a_star", "c_star", "one_minus_rho"}


def test_reference_example_text(capsys):
    code, out, _ = run(capsys, "reproduce-paper-example")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 10


def test_json_outputs_reparse(capsys):
    for argv in (["validate", "--preset", "halfnormal_oscillating"], ["roots", "--preset", "hyperexp2_s", "--s", "0.5"],
                 ["--format", "json", "infimum-density", "--preset", "m1", "--s", "1", "--grid", "-1:-0.1:3"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        json.loads(out)


def test_parse_grid():
    np.testing.assert_allclose(parse_grid("-2:0:5"), np.linspace(-2, 0, 5))
    with pytest.raises(ValueError):
        parse_grid("1:2")


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "levypk.cli", "roots", "--preset", "m1", "--s", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["re"] == pytest.approx(0.41421356, abs=1e-8)
