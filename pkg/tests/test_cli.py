import json
import math
import subprocess
import sys

import numpy as np
import pytest

from bellhv.cli import main, parse_angle, run


def run_json(argv):
    code, text, _ = run(argv)
    return code, json.loads(text)


def usage_exit(argv):
    with pytest.raises(SystemExit) as err:
        run(argv)
    return err.value.code


@pytest.mark.parametrize("text, value", [("pi", math.pi), ("3pi/4", 0.75 * math.pi),
                                         ("-pi/2", -math.pi / 2), ("0.5*pi", math.pi / 2), ("1.25", 1.25)])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value)


def test_spin():
    code, doc = run_json(["spin", "--theta", "pi/3", "--n", "1000000", "--seed", "3"])
    assert code == 0 and doc["schema"] == "1" and doc["command"] == "spin"
    assert doc["exact_p_up"] == pytest.approx(0.75)
    assert abs(doc["geometric_p_up"] - 0.75) < doc["band"]
    assert doc["within_band"]


def test_spin_usage_errors():
    assert usage_exit(["spin", "--n", "0"]) == 2
    assert usage_exit(["spin", "--theta", "banana"]) == 2
    assert usage_exit(["spin", "--theta", "4"]) == 2
    assert usage_exit(["nonsense"]) == 2


def test_density():
    code, doc = run_json(["density", "--lambda0", "0", "--iters", "25"])
    assert code == 0
    assert len(doc["sup_deviation"]) == 26
    assert doc["sup_deviation"][-1] < 0.01
    code, doc = run_json(["density", "--profile", "uniform", "--theta", "1.0", "--grid", "64", "--iters", "5"])
    assert all(d == 0 for d in doc["sup_deviation"])


def test_density_csv():
    code, text, _ = run(["density", "--grid", "16", "--iters", "3", "--format", "csv"])
    lines = text.strip().split("\n")
    assert code == 0 and len(lines) == 1 + 4 * 16
    assert lines[0] == "iteration,lambda,density,sup_deviation"
    assert lines[-1].startswith("3,")


def test_density_errors():
    assert usage_exit(["density", "--grid", "-4"]) == 2
    assert usage_exit(["density", "--lambda0", "0.5"]) == 2
    assert usage_exit(["density", "--lambda0", "0", "--theta", "1"]) == 2


def test_sequence():
    code, doc = run_json(["sequence", "--n", "200000", "--tau", "1", "--t-max", "20", "--points", "6"])
    assert code == 0 and doc["monotone_nonincreasing"]
    assert doc["fraction_up"][0] == 1.0
    assert abs(doc["fraction_up"][-1] - 0.5) < 0.005
    for got, want in zip(doc["fraction_up"], doc["expected_fraction_up"]):
        assert abs(got - want) < 0.005


def test_chsh():
    code, doc = run_json(["chsh", "--n", "200000"])
    assert code == 0
    assert doc["chsh_analytic"] == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert abs(doc["chsh_monte_carlo"] - 2 * math.sqrt(2)) < 0.02
    code, doc = run_json(["chsh", "--n", "200000", "--angles", "0,0,0,0"])
    assert doc["chsh_analytic"] == pytest.approx(-2)
    assert abs(doc["chsh_monte_carlo"] + 2) < 0.02


def test_reconstruct_default():
    code, doc = run_json(["reconstruct"])
    assert code == 0 and doc["rank"] == 9 and doc["residual_ok"]
    assert doc["bell_invariant"] == pytest.approx(math.sqrt(2), abs=1e-10)
    assert doc["negative_entries"] == [3, 4, 6, 8, 9, 11, 13, 14]
    assert doc["sum_p"] == pytest.approx(1)


def test_reconstruct_uniform_angles():
    code, doc = run_json(["reconstruct", "--angles", "pi/2,pi/2,pi/2,pi/2"])
    assert code == 0
    assert np.allclose(doc["p_reg"], 1 / 16)
    assert doc["bell_invariant"] == pytest.approx(0, abs=1e-12)
    assert not doc["has_negative"]


def test_reconstruct_b_file(tmp_path):
    path = tmp_path / "b.txt"
    path.write_text("\n".join(["0.25"] * 16) + "\n")
    code, doc = run_json(["reconstruct", "--b-file", str(path)])
    assert code == 0 and np.allclose(doc["p_reg"], 1 / 16)
    noisy = [0.25] * 16
    noisy[0] = 0.27
    path.write_text("\n".join(map(str, noisy)))
    code, doc = run_json(["reconstruct", "--b-file", str(path)])
    assert code == 1 and not doc["residual_ok"]
    code, doc = run_json(["reconstruct", "--b-file", str(path), "--regularize"])
    assert code == 0 and doc["regularized"]
    path.write_text("0.1\n0.2\n")
    assert usage_exit(["reconstruct", "--b-file", str(path)]) == 2
    assert usage_exit(["reconstruct", "--b-file", str(tmp_path / "missing.txt")]) == 2


def test_reconstruct_csv():
    code, text, _ = run(["reconstruct", "--format", "csv"])
    lines = text.strip().split("\n")
    assert code == 0 and len(lines) == 17


def test_ghz():
    code, doc = run_json(["ghz"])
    assert code == 0
    assert [e["product"] for e in doc["edges"]] == [1, 1, 1, 1, -1]
    assert doc["edge_sign_product"] == -1
    assert doc["assignment_value_products"] == [1]
    assert doc["system_shape"] == [80, 1024] and doc["ones_per_row"] == [64]
    assert all(e["zero_rows"] == 8 for e in doc["edges"])
    assert all(abs(e["b_sum"] - 1) < 1e-12 for e in doc["edges"])
    assert doc["all_columns_covered"]
    assert doc["uncovered_without_horizontal_edge"] == 64


def test_ks():
    code, doc = run_json(["ks", "--seed", "5"])
    assert code == 0 and doc["passed"]


def _write_matrix(path, m):
    path.write_text(json.dumps([[[float(np.real(z)), float(np.imag(z))] for z in row] for row in m]))


def test_schmidt_files(tmp_path):
    s = 1 / math.sqrt(2)
    singlet = tmp_path / "singlet.json"
    _write_matrix(singlet, [[0, s], [-s, 0]])
    code, doc = run_json(["schmidt", "--matrix", str(singlet)])
    assert code == 0
    assert doc["weights"] == pytest.approx([0.5, 0.5])
    assert doc["K"] == pytest.approx(2) and doc["S"] == pytest.approx(1)
    assert not doc["separable"]
    product = tmp_path / "product.json"
    _write_matrix(product, np.outer([0.6, 0.8], [1, 0, 0]))
    code, doc = run_json(["schmidt", "--matrix", str(product)])
    assert doc["K"] == 1 and doc["I"] == 0 and doc["S"] == 0 and doc["separable"]
    as_csv = tmp_path / "m.csv"
    as_csv.write_text("0,0.7071067811865476\n-0.7071067811865476,0\n")
    code, doc = run_json(["schmidt", "--matrix", str(as_csv), "--normalize"])
    assert doc["K"] == pytest.approx(2)


def test_schmidt_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[[1, 2], [3")
    assert usage_exit(["schmidt", "--matrix", str(bad)]) == 2
    unnormalized = tmp_path / "u.json"
    _write_matrix(unnormalized, [[1, 1], [1, 1]])
    assert usage_exit(["schmidt", "--matrix", str(unnormalized)]) == 2
    code, doc = run_json(["schmidt", "--matrix", str(unnormalized), "--normalize"])
    assert doc["separable"]


def test_out_file(tmp_path, capsys):
    out = tmp_path / "ks.json"
    assert main(["ks", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["passed"]


def test_doubles_full_precision():
    _, text, _ = run(["chsh", "--n", "10"])
    assert '"chsh_analytic": 2.8284271247461903' in text


@pytest.mark.parametrize("argv", [
    ["spin", "--n", "20000", "--seed", "9"],
    ["sequence", "--n", "20000", "--seed", "9", "--points", "4"],
    ["chsh", "--n", "20000", "--seed", "9"],
])
def test_separate_processes_byte_identical(argv):
    cmd = [sys.executable, "-m", "bellhv", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and len(a) > 0
