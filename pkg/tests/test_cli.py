"""Tests for the command-line front end: parsing, artifacts, exit codes."""

import json

import numpy as np
import numpy.testing as npt
import pytest

from cryptoherm import biorthogonal_decompose
from cryptoherm.cli import main, parse_config, run
from cryptoherm.errors import ValidationError


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


MATRIX_2 = [[1, 1], [4, 1]]
EVOLVE_CFG = {
    "command": "evolve",
    "model": {"taylor": [[[1, 0], [0, -1]], [[0, 3], [0, 0]]]},
    "dyson": {"kind": "exp_poly", "generator": [[0, 1.5], [0, 0]], "theta": [0.0, 1.0]},
    "grid": {"t_start": 0.0, "t_end": 1.0, "n_samples": 5},
    "step": 1e-2,
    "phi0": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
}


def test_parse_minimal_decompose():
    cfg = parse_config(json.dumps({"command": "decompose", "model": {"matrix": MATRIX_2}}))
    assert cfg.command == "decompose"
    npt.assert_array_equal(cfg.matrix, np.array(MATRIX_2, dtype=complex))


def test_parse_rejects_unknown_keys_and_lists_everything():
    with pytest.raises(ValidationError) as excinfo:
        parse_config(
            json.dumps(
                {
                    "command": "metric",
                    "model": {"matrix": MATRIX_2},
                    "kappa": [1, -1],
                    "bogus": 1,
                }
            )
        )
    message = str(excinfo.value)
    assert "kappa" in message
    assert "bogus" in message


def test_parse_rejects_dimension_mismatch():
    with pytest.raises(ValidationError):
        parse_config(
            json.dumps(
                {"command": "decompose", "model": {"matrix": [[1, 2, 3], [4, 5, 6]]}}
            )
        )


def test_parse_rejects_zero_step():
    cfg = dict(EVOLVE_CFG)
    cfg["step"] = 0
    with pytest.raises(ValidationError) as excinfo:
        parse_config(json.dumps(cfg))
    assert "step" in str(excinfo.value)


def test_parse_rejects_malformed_json():
    from cryptoherm.errors import ParseError

    with pytest.raises(ParseError):
        parse_config("{not json")


def test_parse_rejects_non_finite_values():
    with pytest.raises(ValidationError):
        parse_config(
            '{"command": "decompose", "model": {"matrix": [[Infinity, 0], [0, 1]]}}'
        )
    cfg = dict(EVOLVE_CFG)
    cfg["step"] = float("nan")
    with pytest.raises(ValidationError):
        parse_config(json.dumps(cfg))


def test_parse_rejects_singular_constant_dyson():
    cfg = {
        "command": "hermitize",
        "model": {"matrix": MATRIX_2},
        "dyson": {"kind": "constant", "matrix": [[1, 2], [2, 4]]},
    }
    with pytest.raises(ValidationError) as excinfo:
        parse_config(json.dumps(cfg))
    assert "invertible" in str(excinfo.value)


def test_decompose_roundtrip(tmp_path):
    cfg = parse_config(json.dumps({"command": "decompose", "model": {"matrix": MATRIX_2}}))
    (path,) = run(cfg, tmp_path, quiet=True)
    payload = json.loads(path.read_text())
    system = biorthogonal_decompose(np.array(MATRIX_2, dtype=complex))
    parsed_eigs = np.array([complex(re, im) for re, im in payload["eigenvalues"]])
    npt.assert_array_equal(parsed_eigs, system.eigenvalues)
    parsed_right = np.array(
        [[complex(re, im) for re, im in row] for row in payload["right_vectors"]]
    )
    npt.assert_array_equal(parsed_right, system.right_vectors)


def test_trajectory_csv_roundtrip(tmp_path):
    from cryptoherm import DysonFamily, TaylorHamiltonian, propagate_pair

    cfg = parse_config(json.dumps(EVOLVE_CFG))
    paths = run(cfg, tmp_path, quiet=True)
    csv_path = next(p for p in paths if p.suffix == ".csv")
    lines = csv_path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])

    ham = TaylorHamiltonian(tuple(np.array(c, dtype=complex) for c in EVOLVE_CFG["model"]["taylor"]))
    fam = DysonFamily.exp_poly(np.array([[0, 1.5], [0, 0]]), [0.0, 1.0])
    phi0 = np.array([0.7071067811865476, 0.7071067811865476], dtype=complex)
    traj = propagate_pair(ham, fam, phi0, None, np.linspace(0, 1, 5), 1e-2)

    assert header[0] == "t"
    npt.assert_array_equal(rows[:, 0], traj.times)
    phi_re = rows[:, 1:5:2] + 1j * rows[:, 2:5:2]
    npt.assert_array_equal(phi_re, traj.phi)  # exact full-precision round trip
    overlap = rows[:, header.index("overlap_re")] + 1j * rows[:, header.index("overlap_im")]
    npt.assert_array_equal(overlap, traj.overlap)
    drift = rows[:, header.index("drift")]
    assert (np.diff(drift) >= 0).all()  # cumulative


def test_exit_codes(tmp_path):
    good = _write(tmp_path, "good.json", {"command": "decompose", "model": {"matrix": MATRIX_2}})
    assert main(["--config", str(good), "--out", str(tmp_path / "a"), "--quiet"]) == 0

    bad_cfg = dict(EVOLVE_CFG)
    bad_cfg["step"] = 0
    bad = _write(tmp_path, "bad.json", bad_cfg)
    assert main(["--config", str(bad), "--out", str(tmp_path / "b"), "--quiet"]) == 2

    defective = _write(
        tmp_path, "defective.json", {"command": "decompose", "model": {"matrix": [[0, 1], [0, 0]]}}
    )
    assert main(["--config", str(defective), "--out", str(tmp_path / "c"), "--quiet"]) == 1

    missing = tmp_path / "nope.json"
    assert main(["--config", str(missing), "--out", str(tmp_path / "d"), "--quiet"]) == 2


def test_metric_command(tmp_path):
    cfg_path = _write(
        tmp_path,
        "metric.json",
        {"command": "metric", "model": {"matrix": MATRIX_2}, "kappa": [1, 1]},
    )
    assert main(["--config", str(cfg_path), "--out", str(tmp_path / "m"), "--quiet"]) == 0
    payload = json.loads((tmp_path / "m" / "metric.json").read_text())
    assert payload["min_eig"] > 0
    assert payload["quasi_hermiticity_residual"] <= 1e-10
    theta = np.array([[complex(re, im) for re, im in row] for row in payload["theta"]])
    npt.assert_allclose(theta, theta.conj().T)


def test_hermitize_command(tmp_path):
    cfg_path = _write(
        tmp_path,
        "herm.json",
        {
            "command": "hermitize",
            "model": {"matrix": [[1, 0], [0, -1]]},
            "dyson": {"kind": "constant", "matrix": [[1, 0], [0, 1]]},
        },
    )
    assert main(["--config", str(cfg_path), "--out", str(tmp_path / "h"), "--quiet"]) == 0
    payload = json.loads((tmp_path / "h" / "hermitize.json").read_text())
    assert payload["hermiticity_residual"] <= 1e-12
    npt.assert_allclose(
        [complex(re, im) for re, im in payload["eigenvalues"]], [-1.0, 1.0]
    )


def test_naive_evolve_command(tmp_path):
    cfg = dict(EVOLVE_CFG)
    cfg["command"] = "naive-evolve"
    cfg_path = _write(tmp_path, "naive.json", cfg)
    assert main(["--config", str(cfg_path), "--out", str(tmp_path / "n"), "--quiet"]) == 0
    summary = json.loads((tmp_path / "n" / "naive_trajectory_summary.json").read_text())
    assert summary["max_metric_drift"] >= 1e-3  # falsification-grade drive
    assert (tmp_path / "n" / "naive_trajectory.csv").exists()


def test_qs_check_hermitian_inputs(tmp_path):
    h0 = [[2, [0, 1]], [[0, -1], 3]]  # Hermitian with complex off-diagonal
    h1 = [[1, 0], [0, -1]]
    cfg_path = _write(
        tmp_path, "qs.json", {"command": "qs-check", "model": {"taylor": [h0, h1]}}
    )
    assert main(["--config", str(cfg_path), "--out", str(tmp_path / "out"), "--quiet"]) == 0
    payload = json.loads((tmp_path / "out" / "certificate.json").read_text())
    assert payload["status"] == "compatible"
    npt.assert_allclose(payload["kappa"], [1.0, 1.0], atol=1e-9)


def test_qs_scan_seed_override(tmp_path):
    cfg_path = _write(
        tmp_path,
        "scan.json",
        {"command": "qs-scan", "sampler": "shared", "trials": 3, "n": 3, "seed": 5},
    )
    assert main(["--config", str(cfg_path), "--out", str(tmp_path / "s1"), "--quiet"]) == 0
    assert (
        main(
            [
                "--config",
                str(cfg_path),
                "--out",
                str(tmp_path / "s2"),
                "--seed",
                "5",
                "--quiet",
            ]
        )
        == 0
    )
    a = (tmp_path / "s1" / "qs_scan.json").read_bytes()
    b = (tmp_path / "s2" / "qs_scan.json").read_bytes()
    assert a == b
    payload = json.loads(a)
    assert payload["compatible"] == 3


def test_demo_outputs_show_drift_gap(tmp_path):
    cfg_path = _write(tmp_path, "demo.json", {"command": "demo"})
    assert main(["--config", str(cfg_path), "--out", str(tmp_path / "demo"), "--quiet"]) == 0
    summary = json.loads((tmp_path / "demo" / "demo_summary.json").read_text())
    assert summary["naive_metric_drift"] >= 1e-3
    assert summary["naive_metric_drift"] >= 100 * summary["covariant_metric_drift"]
    assert (tmp_path / "demo" / "covariant.csv").exists()
    assert (tmp_path / "demo" / "naive.csv").exists()


def test_rerun_byte_identical(tmp_path):
    cfg_path = _write(tmp_path, "demo.json", {"command": "demo"})
    main(["--config", str(cfg_path), "--out", str(tmp_path / "r1"), "--quiet"])
    main(["--config", str(cfg_path), "--out", str(tmp_path / "r2"), "--quiet"])
    for name in ("covariant.csv", "naive.csv", "demo_summary.json"):
        assert (tmp_path / "r1" / name).read_bytes() == (tmp_path / "r2" / name).read_bytes()


def test_crosscheck_command(tmp_path):
    cfg = dict(EVOLVE_CFG)
    cfg["command"] = "crosscheck"
    cfg_path = _write(tmp_path, "cc.json", cfg)
    assert main(["--config", str(cfg_path), "--out", str(tmp_path / "cc"), "--quiet"]) == 0
    payload = json.loads((tmp_path / "cc" / "crosscheck.json").read_text())
    assert payload["max_pairwise_deviation"] <= 1e-7
