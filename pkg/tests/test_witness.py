"""Tests for finite-rank witnesses: construction, evaluation, certification."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.bipartite import (
    BipartiteVector,
    DensityOperator,
    TruncationSpec,
    admixture,
    assemble_mixture,
)
from core.errors import DimensionMismatchError, ValidationError
from core.families import (
    MIRRORED_PLANE,
    TANGENT_PLANE,
    cyclic_bell_mixture,
    cyclic_bell_vector,
    cyclic_ppt_state,
    cyclic_ppt_witness,
    shift_family_mixture,
    shift_family_vectors,
)
from core.sequence import SequenceVector
from core.truncation import truncate_normalize, truncated_terms
from criteria.report import Verdict
from optimizer.config import OptimizerConfig
from witness.bounds import c_bound, term_norm
from witness.construct import (
    bound_witness,
    corollary_witness,
    mixture_detection_margin,
    pure_state_witness,
    special_witness,
)
from witness.evaluate import admixture_threshold, certify, evaluate, evaluate_terms
from witness.model import Certification, FiniteRankWitness

SHIFT_NORM_SQ = 6.0 / math.pi ** 2


def test_shift_family_detection_on_truncation():
    mixture = shift_family_mixture([0.65, 0.2, 0.15])
    witness, report = corollary_witness(mixture, 0)
    assert witness.alpha == pytest.approx(SHIFT_NORM_SQ, abs=1e-15)
    assert len(witness.terms) == 1
    assert report.verdict is Verdict.DETECTED
    terms = truncated_terms(mixture, TruncationSpec(66, 64))
    assert evaluate_terms(witness, terms) == pytest.approx(SHIFT_NORM_SQ - 0.65, abs=1e-6)


def test_term_evaluation_matches_dense_truncation():
    mixture = shift_family_mixture([0.65, 0.2, 0.15])
    witness, _ = corollary_witness(mixture, 0)
    spec = TruncationSpec(18, 16)
    dense = truncate_normalize(mixture, spec)
    assert evaluate_terms(witness, truncated_terms(mixture, spec)) == pytest.approx(
        evaluate(witness, dense), abs=1e-12)
    assert np.trace(dense.matrix).real == pytest.approx(1.0)


def test_shift_family_exact_evaluation():
    mixture = shift_family_mixture([0.65, 0.2, 0.15])
    witness = pure_state_witness(shift_family_vectors(1)[0])
    assert evaluate(witness, mixture) == pytest.approx(SHIFT_NORM_SQ - 0.65, abs=1e-12)


def test_shift_family_not_detected_below_norm():
    mixture = shift_family_mixture([0.5, 0.3, 0.2])
    _, report = corollary_witness(mixture, 0)
    assert report.verdict is Verdict.NOT_DETECTED
    assert report.margin == pytest.approx(SHIFT_NORM_SQ - 0.5)


@pytest.mark.parametrize("q1", np.linspace(0.0, 1.0, 21))
def test_cyclic_bell_detected_iff_q1_above_one_third(q1):
    rest = (1.0 - q1) / 2.0
    _, report = corollary_witness(cyclic_bell_mixture([q1, rest, rest]), 0)
    assert report.margin == pytest.approx(1.0 / 3.0 - q1, abs=1e-12)
    assert report.detected == (q1 > 1.0 / 3.0)


def test_equal_weights_are_not_detected():
    witness, report = corollary_witness(cyclic_bell_mixture([1 / 3] * 3), 0)
    assert report.margin == pytest.approx(0.0, abs=1e-12)
    assert report.verdict is Verdict.NOT_DETECTED
    assert report.config["construction"] == "corollary"
    assert witness.alpha == pytest.approx(1.0 / 3.0)


def test_corollary_index_out_of_range():
    with pytest.raises(ValidationError) as info:
        corollary_witness(cyclic_bell_mixture([0.5, 0.5]), 2)
    assert info.value.field == "k0"


def test_special_witness_of_pure_entangled_state():
    rho1 = DensityOperator.pure(cyclic_bell_vector(3, 0))
    witness = special_witness(rho1)
    assert witness.alpha == pytest.approx(1.0 / 3.0)
    assert witness.is_witness
    assert witness.is_non_positive()


def test_special_witness_of_product_state_is_not_a_witness(product_state):
    witness = special_witness(product_state)
    assert witness.alpha == pytest.approx(1.0)
    assert witness.is_witness is False


def test_special_witness_of_sequence_state():
    witness = special_witness(shift_family_mixture([1.0]))
    assert witness.alpha == pytest.approx(SHIFT_NORM_SQ)
    assert witness.is_witness
    assert not witness.is_finite


def test_mixture_detection_margin_matches_evaluation():
    rho1 = cyclic_bell_mixture([0.8, 0.2, 0.0])
    rho2 = DensityOperator.pure(cyclic_bell_vector(3, 2))
    witness = special_witness(rho1)
    for p in (0.0, 0.3, 0.9, 1.0):
        mixed = admixture(rho1, rho2, 1.0 - p)
        assert mixture_detection_margin(rho1, rho2, p) == pytest.approx(
            evaluate(witness, mixed), abs=1e-12)


def test_pure_state_witness_flags():
    entangled = pure_state_witness(cyclic_bell_vector(2, 0))
    assert entangled.alpha == pytest.approx(0.5)
    assert entangled.is_witness
    product = pure_state_witness(BipartiteVector.basis(0, 1, 2, 2))
    assert product.is_witness is False


def test_bound_witness_numeric_and_analytic():
    omega = cyclic_bell_vector(3, 0)
    numeric = bound_witness([(1.0, omega)], cfg=OptimizerConfig(restarts=32, seed=3))
    analytic = bound_witness([(1.0, omega)], analytic=True)
    assert numeric.alpha == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert analytic.alpha == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert numeric.is_witness and analytic.is_witness
    assert bound_witness([(1.0, omega)], d=0.5).is_witness
    assert bound_witness([(1.0, omega)], d=1.0).is_witness is False


def test_bound_witness_needs_terms():
    with pytest.raises(ValidationError):
        bound_witness([])


def test_c_bound_sums_weighted_norms():
    terms = [(0.5, cyclic_bell_vector(2, 0)), (-0.25, BipartiteVector.basis(0, 1, 2, 2))]
    assert c_bound(terms) == pytest.approx(0.5 * 0.5 + 0.25 * 1.0)
    assert term_norm(SequenceVector.from_label("inverse-linear")) ** 2 == \
        pytest.approx(SHIFT_NORM_SQ)


@pytest.mark.parametrize("plane, slope", [(TANGENT_PLANE, (-0.5, 0.7)),
                                          (MIRRORED_PLANE, (0.7, -0.5))])
def test_linear_identity_on_random_states(plane, slope):
    witness = cyclic_ppt_witness(plane)
    rng = np.random.default_rng(2024)
    for q in rng.dirichlet(np.ones(3), size=100):
        expected = slope[0] * q[0] + slope[1] * q[1]
        assert evaluate(witness, cyclic_ppt_state(q)) == pytest.approx(expected, abs=1e-12)


def test_ppt_entangled_point_value():
    witness = cyclic_ppt_witness(TANGENT_PLANE)
    assert evaluate(witness, cyclic_ppt_state((0.2, 0.1, 0.7))) == pytest.approx(-0.03,
                                                                                 abs=1e-12)


def test_certify_with_seesaw():
    witness = pure_state_witness(cyclic_bell_vector(3, 0))
    record = certify(witness, OptimizerConfig(restarts=64, seed=5))
    assert record.method == "seesaw"
    assert record.restarts == 64
    assert record.infimum == pytest.approx(0.0, abs=1e-4)
    assert record.certified


def test_certify_rejects_operator_negative_on_products():
    witness = FiniteRankWitness(0.2, ((-1.0, cyclic_bell_vector(3, 0)),))
    record = certify(witness, OptimizerConfig(restarts=16))
    assert record.infimum == pytest.approx(0.2 - 1.0 / 3.0, abs=1e-6)
    assert not record.certified


def test_certify_sequence_witness_analytically():
    witness, _ = corollary_witness(shift_family_mixture([0.65, 0.2, 0.15]), 0)
    record = certify(witness)
    assert record.method == "c-bound"
    assert record.infimum == pytest.approx(0.0, abs=1e-12)
    assert record.certified


def test_certification_round_trips_through_dict():
    record = Certification(1e-5, "seesaw", 1e-4, 64, 7, True)
    assert Certification.from_dict(record.to_dict()) == record


def test_admixture_threshold():
    witness = cyclic_ppt_witness(TANGENT_PLANE).embed(4, 4)
    rho = cyclic_ppt_state((0.2, 0.1, 0.7)).padded(4, 4)
    noise = DensityOperator.pure(BipartiteVector.basis(3, 3, 4, 4))
    threshold = admixture_threshold(witness, rho, noise)
    assert threshold == pytest.approx(0.03 / 1.03, abs=1e-12)
    assert evaluate(witness, admixture(rho, noise, threshold)) == pytest.approx(0.0, abs=1e-12)


def test_admixture_threshold_of_undetected_state():
    witness = cyclic_ppt_witness(TANGENT_PLANE)
    assert admixture_threshold(witness, cyclic_ppt_state((0.1, 0.5, 0.4)),
                               cyclic_ppt_state((0.2, 0.1, 0.7))) is None


@pytest.mark.parametrize("witness", [
    pure_state_witness(cyclic_bell_vector(3, 0)),
    cyclic_ppt_witness(TANGENT_PLANE),
    special_witness(cyclic_bell_mixture([0.6, 0.4, 0.0])),
])
def test_identity_outside_support(witness):
    """Extending by one basis direction leaves <ij|W|ij> = alpha there."""
    dim_a, dim_b = witness.dims
    extended = witness.embed(dim_a + 1, dim_b + 1)
    for j in range(dim_b + 1):
        assert extended.product_expectation(dim_a, j) == witness.alpha
    for i in range(dim_a + 1):
        assert extended.product_expectation(i, dim_b) == witness.alpha


def test_truncated_sequence_witness_extended():
    witness, _ = corollary_witness(shift_family_mixture([0.65, 0.2, 0.15]), 0)
    block = witness.truncate(TruncationSpec(8, 8))
    assert block.alpha == witness.alpha
    assert block.terms[0][1].norm() == pytest.approx(1.0)
    extended = block.embed(9, 9)
    assert all(extended.product_expectation(8, j) == witness.alpha for j in range(9))


def test_finite_witness_against_sequence_mixture():
    witness = pure_state_witness(cyclic_bell_vector(3, 0))
    with pytest.raises(ValidationError):
        evaluate(witness, shift_family_mixture([1.0]))


def test_dimension_mismatch_on_evaluate(bell_state):
    witness = pure_state_witness(cyclic_bell_vector(3, 0))
    with pytest.raises(DimensionMismatchError):
        evaluate(witness, bell_state)


def test_witness_validation():
    omega = cyclic_bell_vector(2, 0)
    with pytest.raises(ValidationError, match="orthonormal"):
        FiniteRankWitness(1.0, ((-1.0, omega), (-1.0, omega)))
    with pytest.raises(ValidationError, match="mixes"):
        FiniteRankWitness(1.0, ((-1.0, omega), (-1.0, SequenceVector.from_label("uniform(2)"))))
    with pytest.raises(ValidationError, match="alpha"):
        FiniteRankWitness(-0.5, ((-1.0, omega),), is_witness=True)


def test_cyclic_bell_needs_the_heaviest_term():
    mixture = cyclic_bell_mixture([0.0, 0.5, 0.5])
    _, report = corollary_witness(mixture, 1)
    assert report.verdict == Verdict.DETECTED
    assert report.margin == pytest.approx(1 / 3 - 0.5, abs=1e-12)
    _, report = corollary_witness(mixture, 0)
    assert report.verdict != Verdict.DETECTED


def _random_vector(rng, dim_a: int, dim_b: int) -> BipartiteVector:
    coeffs = rng.standard_normal((dim_a, dim_b)) + 1j * rng.standard_normal((dim_a, dim_b))
    return BipartiteVector(coeffs / np.linalg.norm(coeffs))


def _random_product(rng, dim_a: int, dim_b: int) -> BipartiteVector:
    alpha = rng.standard_normal(dim_a) + 1j * rng.standard_normal(dim_a)
    beta = rng.standard_normal(dim_b) + 1j * rng.standard_normal(dim_b)
    return BipartiteVector.product(alpha / np.linalg.norm(alpha), beta / np.linalg.norm(beta))


DIMS = st.sampled_from([(2, 2), (2, 3), (3, 3)])


@given(st.integers(0, 2 ** 32 - 1), DIMS)
@settings(max_examples=20, deadline=None)
def test_certified_witness_is_non_negative_on_separable_mixtures(seed, dims):
    rng = np.random.default_rng(seed)
    witness = pure_state_witness(_random_vector(rng, *dims))
    record = certify(witness, OptimizerConfig(restarts=8, seed=seed))
    assert record.certified
    weights = rng.dirichlet(np.ones(4))
    separable = assemble_mixture([(p, _random_product(rng, *dims)) for p in weights])
    assert evaluate(witness, separable) >= -1e-8


@given(st.integers(0, 2 ** 32 - 1), DIMS, st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_product_overlap_is_bounded_by_c_bound(seed, dims, rank):
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(rank))
    rho1 = assemble_mixture([(p, _random_vector(rng, *dims)) for p in weights])
    sigma = _random_product(rng, *dims)
    assert rho1.vector_expectation(sigma) <= c_bound(rho1.terms) + 1e-12
