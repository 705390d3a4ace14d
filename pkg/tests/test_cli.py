"""End-to-end tests for the command-line entry point."""

import json

import numpy as np
import pytest

import main
from core.bipartite import BipartiteVector, DensityOperator
from core.families import (
    TANGENT_PLANE,
    cyclic_bell_mixture,
    cyclic_ppt_state,
    cyclic_ppt_witness,
    shift_family_mixture,
)
from tools.state_files import load_witness, save_state, save_witness
from utils import settings as settings_module

CYCLIC_LABELS = ["rho1", "rho2", "rho3", "rho3", "rho3"]


@pytest.fixture(autouse=True)
def no_home_config(tmp_path, monkeypatch):
    monkeypatch.setattr(settings_module, "DEFAULT_CONFIG_PATH", tmp_path / "missing.yaml")


@pytest.fixture
def ppt_point(tmp_path):
    return str(save_state(cyclic_ppt_state((0.2, 0.1, 0.7)), tmp_path / "point.json",
                          CYCLIC_LABELS))


def _run(capsys, *argv):
    code = main.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_ppt_entangled_point(capsys, tmp_path, ppt_point):
    witness_path = save_witness(cyclic_ppt_witness(TANGENT_PLANE), tmp_path / "w1.json")
    code, out, _ = _run(capsys, "check", ppt_point, "--witness", str(witness_path), "--json")
    assert code == 0
    reports = {r["criterion"]: r for r in json.loads(out)["reports"]}
    assert reports["ppt"]["verdict"] == "not-detected"
    assert "margin" in reports["realignment"]
    assert reports["witness"]["margin"] == pytest.approx(-0.03, abs=1e-12)
    assert reports["witness"]["verdict"] == "detected"
    for report in reports.values():
        assert set(report) == {"criterion", "verdict", "margin", "tolerance", "config"}


def test_check_dense_product_state(capsys, tmp_path, product_state):
    dense = DensityOperator.from_matrix(product_state.matrix, 2, 3)
    path = save_state(dense, tmp_path / "product.json")
    code, out, _ = _run(capsys, "check", str(path), "--json")
    assert code == 0
    reports = json.loads(out)["reports"]
    assert all(r["verdict"] == "not-detected" for r in reports)
    realignment = next(r for r in reports if r["criterion"] == "realignment")
    assert realignment["margin"] == pytest.approx(0.0, abs=1e-10)


def test_check_malformed_weights(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "mixture", "dims": [2, 2], "terms": [
        {"weight": 0.5, "coefficients": [1, 0, 0, 0]},
        {"weight": 0.4, "coefficients": [0, 0, 0, 1]},
    ]}), encoding="utf-8")
    code, out, err = _run(capsys, "check", str(path))
    assert code == 2
    assert "weights sum 0.9 ≠ 1" in err
    assert out == ""


def test_check_sequence_mixture_reports_truncation(capsys, tmp_path):
    path = save_state(shift_family_mixture([0.65, 0.2, 0.15]), tmp_path / "seq.json")
    code, out, _ = _run(capsys, "check", str(path), "--truncate", "24", "--json")
    assert code == 0
    config = json.loads(out)["reports"][0]["config"]
    assert config["truncation"]["N"] == 24
    assert config["truncation"]["rows"] == 26
    assert config["dims"] == [26, 24]


def test_check_table_output(capsys, ppt_point):
    code, out, _ = _run(capsys, "check", ppt_point, "--tol", "1e-6")
    assert code == 0
    assert "ppt" in out and "realignment" in out
    assert "not-detected" in out


def test_construct_corollary_witness(capsys, tmp_path):
    state = save_state(cyclic_bell_mixture([0.4, 0.3, 0.3]), tmp_path / "bell.json")
    output = tmp_path / "w.json"
    code, _, _ = _run(capsys, "witness", "construct", str(state), "--corollary", "--k0", "1",
                      "--output", str(output))
    assert code == 0
    witness = load_witness(output)
    assert witness.alpha == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert len(witness.terms) == 1


def test_construct_corollary_needs_k0(capsys, tmp_path):
    state = save_state(cyclic_bell_mixture([0.4, 0.3, 0.3]), tmp_path / "bell.json")
    code, _, err = _run(capsys, "witness", "construct", str(state), "--corollary")
    assert code == 2
    assert "--k0" in err


def test_construct_special_prints_witness_json(capsys, tmp_path):
    state = save_state(DensityOperator.pure(BipartiteVector(np.eye(2) / np.sqrt(2))),
                       tmp_path / "bell.json")
    code, out, _ = _run(capsys, "witness", "construct", str(state), "--special", "--json")
    assert code == 0
    document = json.loads(out)
    assert document["witness"]["alpha"] == pytest.approx(0.5)
    assert document["witness"]["is_witness"] is True
    assert document["reports"][0]["verdict"] == "detected"


def test_construct_hyperplane_witness(capsys, tmp_path, ppt_point):
    output = tmp_path / "plane.json"
    code, out, _ = _run(capsys, "witness", "construct", ppt_point, "--hyperplane",
                        "--restarts", "16", "--output", str(output), "--json")
    assert code == 0
    report = json.loads(out)["reports"][0]
    assert report["margin"] < -1e-3
    assert report["config"]["components"] == ["rho1", "rho2", "rho3"]
    witness = load_witness(output)
    assert witness.certification is not None
    assert witness.certification.certified


def test_hyperplane_needs_component_labels(capsys, tmp_path):
    state = save_state(cyclic_ppt_state((0.2, 0.1, 0.7)), tmp_path / "plain.json")
    code, _, err = _run(capsys, "witness", "construct", str(state), "--hyperplane")
    assert code == 2
    assert "component" in err


def test_evaluate_over_several_states(capsys, tmp_path):
    witness_path = save_witness(cyclic_ppt_witness(TANGENT_PLANE), tmp_path / "w1.json")
    points = [(0.2, 0.1, 0.7), (0.5, 0.3, 0.2), (0.1, 0.6, 0.3)]
    paths = [str(save_state(cyclic_ppt_state(q), tmp_path / f"s{n}.json"))
             for n, q in enumerate(points)]
    code, out, _ = _run(capsys, "witness", "evaluate", str(witness_path), *paths, "--json")
    assert code == 0
    margins = [r["margin"] for r in json.loads(out)["reports"]]
    expected = [-0.5 * q[0] + 0.7 * q[1] for q in points]
    np.testing.assert_allclose(margins, expected, atol=1e-12)


def test_certify_attaches_block(capsys, tmp_path):
    witness_path = save_witness(cyclic_ppt_witness(TANGENT_PLANE), tmp_path / "w1.json")
    code, out, _ = _run(capsys, "witness", "certify", str(witness_path), "--json")
    assert code == 0
    record = json.loads(out)["certification"]
    assert record["method"] == "seesaw"
    assert record["restarts"] == 64
    assert record["infimum"] == pytest.approx(0.0, abs=1e-4)
    assert load_witness(witness_path).certification.certified


def test_seed_fixes_output(capsys, tmp_path):
    witness_path = save_witness(cyclic_ppt_witness(TANGENT_PLANE), tmp_path / "w1.json")
    runs = []
    for name in ("a.json", "b.json"):
        _run(capsys, "witness", "certify", str(witness_path), "--seed", "9",
             "--restarts", "8", "--output", str(tmp_path / name))
        runs.append((tmp_path / name).read_text(encoding="utf-8"))
    assert runs[0] == runs[1]


def test_config_file_and_bad_config(capsys, tmp_path, ppt_point):
    good = tmp_path / "good.yaml"
    good.write_text("optimizer:\n  restarts: 12\n", encoding="utf-8")
    code, out, _ = _run(capsys, "--config", str(good), "check", ppt_point, "--json")
    assert code == 0
    assert json.loads(out)["reports"][0]["config"]["restarts"] == 12

    bad = tmp_path / "bad.yaml"
    bad.write_text("optimizer:\n  restartz: 12\n", encoding="utf-8")
    code, _, err = _run(capsys, "--config", str(bad), "check", ppt_point)
    assert code == 2
    assert "restartz" in err


def test_unknown_scenario(capsys):
    code, _, err = _run(capsys, "reproduce", "3.9")
    assert code == 2
    assert "shift-family" in err


def test_check_sequence_mixture_default_truncation(capsys, tmp_path):
    path = save_state(shift_family_mixture([0.65, 0.2, 0.15]), tmp_path / "seq.json")
    code, out, _ = _run(capsys, "check", str(path), "--json")
    assert code == 0
    config = json.loads(out)["reports"][0]["config"]
    assert config["truncation"]["N"] == 40
    assert config["dims"] == [42, 40]


def test_check_rejects_oversized_truncation(capsys, tmp_path):
    path = save_state(shift_family_mixture([0.65, 0.2, 0.15]), tmp_path / "seq.json")
    code, out, err = _run(capsys, "check", str(path), "--truncate", "60")
    assert code == 2
    assert "max_dense_dim" in err
    assert out == ""
