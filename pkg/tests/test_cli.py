import csv
import json
import math

import numpy as np
import pytest

from fermitomo.cli import main
from fermitomo.jordan_wigner import build_algebra
from fermitomo.linalg import matrix_from_json, matrix_to_json
from fermitomo.tomography import CONVENTION


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_single_mode(capsys):
    code, out, err = run(["algebra", "--modes", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert np.array_equal(matrix_from_json(doc["annihilators"][0]), [[0, 1], [0, 0]])
    assert np.array_equal(matrix_from_json(doc["creators"][0]), [[0, 0], [1, 0]])
    assert all(v == 0 for v in doc["residuals"].values())
    assert "ok" in err


def test_algebra_two_modes(capsys):
    code, out, _ = run(["algebra", "--modes", "2"], capsys)
    alg = build_algebra(2)
    doc = json.loads(out)
    assert code == 0
    for j in (1, 2):
        assert np.array_equal(matrix_from_json(doc["annihilators"][j - 1]), alg.a(j))
    assert doc["meta"]["convention"] == CONVENTION


def test_algebra_mode_bound(capsys):
    code, _, err = run(["algebra", "--modes", "11"], capsys)
    assert code == 2 and "modes" in err


def test_usage_error_exit_code(capsys):
    assert main(["nope"]) == 2
    capsys.readouterr()


def test_verify_default_passes(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, _, err = run(["verify", "--modes", "2", "-o", str(out)], capsys)
    doc = json.loads(out.read_text())
    assert code == 0 and doc["passed"]
    assert [s["name"] for s in doc["suites"]] == [
        "anticommutation", "vacuum", "tomogram", "reconstruction", "kernel", "star", "symbols", "antisymmetry"
    ]
    assert doc["meta"]["seed"] == 0 and doc["meta"]["convention"] == CONVENTION


def test_verify_tiny_tolerance_fails(capsys):
    code, out, err = run(["verify", "--modes", "2", "--tolerance", "1e-30", "--samples", "3"], capsys)
    doc = json.loads(out)
    assert code == 1
    assert not doc["passed"]
    assert doc["first_failure"] in err


def test_verify_suite_filter(capsys):
    code, out, _ = run(["verify", "--suite", "star", "--modes", "2", "--samples", "5"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert [s["name"] for s in doc["suites"]] == ["star"]


def test_verify_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "--seed", "7", "--samples", "5", "-o", str(path)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    main(["verify", "--seed", "8", "--samples", "5", "-o", str(c)])
    capsys.readouterr()
    assert c.read_bytes() != a.read_bytes()


def test_tomogram_vacuum_json(capsys):
    code, out, _ = run(["tomogram", "--state", "vac", "--modes", "2", "--angles", "0.7,0.3;1.1,2.0"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["modes"] == 2
    probs = doc["points"][0]["probs"]
    c1, s1 = math.cos(0.35) ** 2, math.sin(0.35) ** 2
    c2, s2 = math.cos(0.55) ** 2, math.sin(0.55) ** 2
    expected = {"00": c1 * c2, "01": c1 * s2, "10": s1 * c2, "11": s1 * s2}
    for k, v in expected.items():
        assert probs[k] == pytest.approx(v, abs=1e-15)


def test_tomogram_degrees_and_csv(capsys):
    code, out, _ = run(
        ["tomogram", "--state", "vac", "--modes", "1", "--angles", "90,0", "--degrees", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.splitlines()
    meta = json.loads(lines[0][2:])
    assert meta["angle_unit"] == "degrees"
    rows = list(csv.DictReader(lines[1:]))
    assert list(rows[0].keys()) == ["theta_1", "psi_1", "m_bits", "value"]
    assert float(rows[0]["theta_1"]) == pytest.approx(90)
    assert float(rows[0]["value"]) == pytest.approx(0.5)
    assert float(rows[1]["value"]) == pytest.approx(0.5)


def test_tomogram_default_grid_and_state_file(tmp_path, capsys):
    psi = np.array([[0.6], [0.8j]])
    path = tmp_path / "psi.json"
    path.write_text(json.dumps(matrix_to_json(psi)))
    code, out, _ = run(["tomogram", "--state", str(path), "--modes", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["points"]) == 6
    for p in doc["points"]:
        assert sum(p["probs"].values()) == pytest.approx(1, abs=1e-14)


def test_tomogram_rejects_bad_input(capsys):
    assert main(["tomogram", "--state", "fock:1,1", "--modes", "2"]) == 2
    assert main(["tomogram", "--state", "vac", "--modes", "2", "--angles", "0.1,0.2"]) == 2
    assert main(["tomogram", "--state", "vac", "--modes", "1", "--angles", "4,0"]) == 2
    capsys.readouterr()


def test_symbol_a1_two_modes(capsys):
    code, out, err = run(["symbol", "--op", "a1", "--modes", "2"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["closed_form"] == ["one", "plus"]
    assert doc["max_deviation"] < 1e-12
    assert len(doc["points"]) == 144
    for p in doc["points"]:
        theta2, psi2 = p["angles"][1]
        sign = 1 if p["m_bits"][1] == "0" else -1
        expected = sign * 0.5 * math.sin(theta2) * np.exp(1j * psi2)
        assert complex(*p["closed"]) == pytest.approx(expected, abs=1e-14)
        assert complex(*p["matrix"]) == pytest.approx(expected, abs=1e-14)


def test_symbol_csv_header(capsys):
    code, out, _ = run(["symbol", "--op", "a2+", "--modes", "2", "--format", "csv"], capsys)
    header = out.splitlines()[1].split(",")
    assert code == 0
    assert header == ["theta_1", "psi_1", "theta_2", "psi_2", "m_bits", "closed_re", "closed_im", "matrix_re", "matrix_im"]


def test_symbol_unknown_operator(capsys):
    assert main(["symbol", "--op", "b7", "--modes", "2"]) == 2
    assert main(["symbol", "--op", "a3", "--modes", "2"]) == 2
    capsys.readouterr()


def test_star_oracle_and_reconstruct(capsys):
    code, out, err = run(
        ["star", "--left", "a1", "--right", "a1+", "--modes", "2", "--check-oracle", "--reconstruct"], capsys
    )
    doc = json.loads(out)
    alg = build_algebra(2)
    assert code == 0
    assert doc["oracle_deviation"] < 1e-10
    assert doc["reconstruction_deviation"] < 1e-10
    assert np.allclose(matrix_from_json(doc["reconstructed"]), alg.a(1) @ alg.adag(1), atol=1e-12)


def test_star_csv_feeds_reconstruct(tmp_path, capsys):
    sym = tmp_path / "s.csv"
    ref = tmp_path / "ref.json"
    alg = build_algebra(2)
    ref.write_text(json.dumps(matrix_to_json(alg.adag(2) @ alg.a(2))))
    assert main(["star", "--left", "a2+", "--right", "a2", "--format", "csv", "-o", str(sym)]) == 0
    code, out, err = run(["reconstruct", "--symbol", str(sym), "--reference", str(ref)], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["max_abs_deviation"] < 1e-12


def test_reconstruct_builtin_against_reference(capsys):
    code, out, _ = run(["reconstruct", "--op", "sz", "--modes", "2", "--reference", "sz"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert np.allclose(matrix_from_json(doc["operator"]), np.diag([1, -1, -1, 1]), atol=1e-13)


def test_reconstruct_mismatched_reference_fails(capsys):
    code, _, _ = run(["reconstruct", "--op", "a1", "--modes", "2", "--reference", "a2"], capsys)
    assert code == 1


def test_operator_file_shape_checked(tmp_path, capsys):
    path = tmp_path / "op.json"
    path.write_text(json.dumps(matrix_to_json(np.eye(2))))
    assert main(["symbol", "--op", str(path), "--modes", "2"]) == 2
    path.write_text("{not json")
    assert main(["symbol", "--op", str(path), "--modes", "1"]) == 2
    capsys.readouterr()


def test_outputs_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        main(["star", "--left", "a1", "--right", "a2+", "--format", "csv", "-o", str(p)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert CONVENTION in a.read_text().splitlines()[0]
