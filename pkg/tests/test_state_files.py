"""Tests for state and witness JSON files."""

import json

import numpy as np
import pytest

from core.bipartite import BipartiteVector, DensityOperator
from core.errors import StateFileError
from core.families import (
    TANGENT_PLANE,
    cyclic_ppt_components,
    cyclic_ppt_state,
    cyclic_ppt_witness,
    shift_family_mixture,
)
from core.sequence import SequenceMixture
from hyperplane.feature_map import FeatureMap, feature_vector
from tools.state_files import (
    load_state,
    load_witness,
    save_state,
    save_witness,
    state_to_dict,
)
from witness.construct import corollary_witness
from witness.evaluate import certify, evaluate
from witness.model import Certification

CYCLIC_LABELS = ["rho1", "rho2", "rho3", "rho3", "rho3"]


def _write(path, document) -> str:
    path.write_text(json.dumps(document, indent=2), encoding="utf-8")
    return str(path)


def test_mixture_round_trip_keeps_components(tmp_path):
    rho = cyclic_ppt_state((0.2, 0.1, 0.7))
    path = save_state(rho, tmp_path / "state.json", CYCLIC_LABELS)
    loaded = load_state(path)
    assert loaded.kind == "mixture"
    np.testing.assert_array_equal(loaded.state.matrix, rho.matrix)
    assert loaded.component_labels == ["rho1", "rho2", "rho3"]
    original = FeatureMap(cyclic_ppt_components())
    restored = FeatureMap(tuple(loaded.components))
    np.testing.assert_allclose(feature_vector(restored, rho), feature_vector(original, rho),
                               atol=1e-15)


def test_dense_round_trip(tmp_path, product_state):
    dense = DensityOperator.from_matrix(product_state.matrix, 2, 3)
    loaded = load_state(save_state(dense, tmp_path / "dense.json"))
    assert loaded.kind == "dense"
    np.testing.assert_array_equal(loaded.state.matrix, dense.matrix)


def test_sequence_round_trip(tmp_path):
    mixture = shift_family_mixture([0.65, 0.2, 0.15])
    loaded = load_state(save_state(mixture, tmp_path / "seq.json"))
    assert isinstance(loaded.state, SequenceMixture)
    assert loaded.state == mixture


def test_real_entries_may_be_plain_numbers(tmp_path):
    document = {"kind": "mixture", "dims": [2, 2],
                "terms": [{"weight": 1.0, "coefficients": [0.6, 0, 0, 0.8]}]}
    loaded = load_state(_write(tmp_path / "plain.json", document))
    assert loaded.state.vector_expectation(BipartiteVector.basis(1, 1, 2, 2)) == \
        pytest.approx(0.64)


def test_weights_sum_error_names_field_and_line(tmp_path):
    document = {"kind": "mixture", "dims": [2, 2], "terms": [
        {"weight": 0.5, "coefficients": [1, 0, 0, 0]},
        {"weight": 0.4, "coefficients": [0, 0, 0, 1]},
    ]}
    path = _write(tmp_path / "bad.json", document)
    with pytest.raises(StateFileError) as info:
        load_state(path)
    message = str(info.value)
    assert "weights sum 0.9 ≠ 1" in message
    assert "field 'terms'" in message
    lines = (tmp_path / "bad.json").read_text(encoding="utf-8").splitlines()
    assert info.value.line == next(n for n, line in enumerate(lines, 1) if '"terms"' in line)


def test_wrong_coefficient_count_names_the_term(tmp_path):
    document = {"kind": "mixture", "dims": [2, 2], "terms": [
        {"weight": 0.5, "coefficients": [1, 0, 0, 0]},
        {"weight": 0.5, "coefficients": [0, 1]},
    ]}
    with pytest.raises(StateFileError) as info:
        load_state(_write(tmp_path / "short.json", document))
    assert info.value.field == "terms[1].coefficients"
    text = (tmp_path / "short.json").read_text(encoding="utf-8").splitlines()
    assert '"coefficients"' in text[info.value.line - 1]


@pytest.mark.parametrize("document, field", [
    ({"kind": "tensor", "terms": []}, "kind"),
    ({"kind": "mixture", "dims": [2], "terms": [{"weight": 1}]}, "dims"),
    ({"kind": "mixture", "dims": [2, 2], "terms": [{"weight": "one"}]}, "terms[0].weight"),
    ({"kind": "sequence-mixture", "terms": [{"weight": 1.0, "family": "harmonic"}]}, "family"),
    ({"kind": "dense", "dims": [1, 2], "matrix": [[1, 0]]}, "matrix"),
])
def test_schema_errors(tmp_path, document, field):
    with pytest.raises(StateFileError) as info:
        load_state(_write(tmp_path / "state.json", document))
    assert info.value.field == field


def test_invalid_json_reports_line(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "kind": "mixture",\n  "dims": [2, 2\n}\n', encoding="utf-8")
    with pytest.raises(StateFileError) as info:
        load_state(path)
    assert info.value.line == 4


def test_missing_file(tmp_path):
    with pytest.raises(StateFileError, match="cannot read"):
        load_state(tmp_path / "absent.json")


def test_witness_round_trip_is_bit_identical(tmp_path):
    witness = cyclic_ppt_witness(TANGENT_PLANE)
    rho = cyclic_ppt_state((0.23, 0.11, 0.66))
    restored = load_witness(save_witness(witness, tmp_path / "w.json"))
    assert evaluate(restored, rho) == evaluate(witness, rho)
    assert restored.alpha == witness.alpha


def test_sequence_witness_round_trip(tmp_path):
    witness, _ = corollary_witness(shift_family_mixture([0.65, 0.2, 0.15]), 0)
    witness = witness.with_certification(certify(witness))
    restored = load_witness(save_witness(witness, tmp_path / "seq_w.json"))
    assert not restored.is_finite
    assert restored.is_witness
    assert restored.certification == witness.certification
    mixture = shift_family_mixture([0.7, 0.3])
    assert evaluate(restored, mixture) == evaluate(witness, mixture)


def test_certification_block_is_written(tmp_path):
    witness = cyclic_ppt_witness(TANGENT_PLANE)
    record = Certification(-1e-6, "seesaw", 1e-4, 64, 0, True)
    path = save_witness(witness.with_certification(record), tmp_path / "w.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["certification"]["method"] == "seesaw"
    assert data["certification"]["restarts"] == 64
    assert data["dims"] == [3, 3]


def test_finite_witness_terms_need_dims(tmp_path):
    document = {"alpha": 0.5, "terms": [{"lambda": -1.0, "coefficients": [1, 0, 0, 0]}]}
    with pytest.raises(StateFileError) as info:
        load_witness(_write(tmp_path / "w.json", document))
    assert info.value.field == "dims"


def test_state_to_dict_keeps_dense_without_terms(product_state):
    dense = DensityOperator.from_matrix(product_state.matrix, 2, 3)
    data = state_to_dict(dense)
    assert data["kind"] == "dense"
    assert len(data["matrix"]) == 6
