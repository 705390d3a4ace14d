"""Tests for the see-saw product optimizer and the grid oracle."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.bipartite import BipartiteVector
from core.errors import ConfigError, DimensionMismatchError, RefusalError, ValidationError
from optimizer.config import OptimizerConfig
from optimizer.grid import grid_oracle_max, real_sphere_grid
from optimizer.seesaw import product_objective, seesaw_max, separable_sup
from witness.bounds import c_bound


def _random_symmetric(seed: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    matrix = rng.standard_normal((dim, dim))
    return (matrix + matrix.T) / 2


def test_product_projector_maximum_is_one():
    vector = BipartiteVector.product([0.6, 0.8], [0.0, 1.0, 0.0])
    result = seesaw_max(vector.projector(), (2, 3))
    assert result.value == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_maximally_entangled_projector(n):
    vector = BipartiteVector(np.eye(n) / np.sqrt(n))
    result = seesaw_max(vector.projector(), (n, n))
    assert result.value == pytest.approx(1.0 / n, abs=1e-10)


def test_result_value_is_objective_at_returned_vectors():
    matrix = _random_symmetric(3, 6)
    result = seesaw_max(matrix, (2, 3))
    assert result.value == pytest.approx(product_objective(matrix, result.alpha, result.beta),
                                         abs=1e-14)
    assert np.linalg.norm(result.alpha) == pytest.approx(1.0)
    assert np.linalg.norm(result.beta) == pytest.approx(1.0)
    assert result.best_restart.value == pytest.approx(result.value, abs=1e-10)


def test_same_seed_gives_identical_results():
    matrix = _random_symmetric(9, 9)
    cfg = OptimizerConfig(restarts=32, seed=4)
    first, second = seesaw_max(matrix, (3, 3), cfg), seesaw_max(matrix, (3, 3), cfg)
    assert first.value == second.value
    np.testing.assert_array_equal(first.alpha, second.alpha)
    np.testing.assert_array_equal(first.beta, second.beta)


def test_worker_count_does_not_change_result():
    matrix = _random_symmetric(21, 9)
    serial = seesaw_max(matrix, (3, 3), OptimizerConfig(restarts=48, batch_size=8, seed=2))
    threaded = seesaw_max(matrix, (3, 3),
                          OptimizerConfig(restarts=48, batch_size=8, seed=2, workers=4))
    assert serial.value == threaded.value
    np.testing.assert_array_equal(serial.alpha, threaded.alpha)
    assert [r.index for r in threaded.restarts] == list(range(48))


def test_history_never_decreases():
    matrix = _random_symmetric(17, 12)
    cfg = OptimizerConfig(restarts=8, seed=1, record_history=True)
    result = seesaw_max(matrix, (3, 4), cfg)
    for restart in result.restarts:
        steps = np.diff(restart.history)
        assert np.all(steps >= -1e-12)
    assert len(result.restarts) == 8


def test_bad_operator_shape():
    with pytest.raises(DimensionMismatchError):
        seesaw_max(np.eye(6), (3, 3))


def test_non_hermitian_operator():
    matrix = np.zeros((4, 4))
    matrix[0, 1] = 1.0
    with pytest.raises(ValidationError, match="Hermitian"):
        seesaw_max(matrix, (2, 2))


@pytest.mark.parametrize("field, value", [
    ("restarts", 0), ("max_iters", 0), ("workers", 0), ("batch_size", 0),
])
def test_config_validation(field, value):
    with pytest.raises(ConfigError) as info:
        OptimizerConfig(**{field: value})
    assert info.value.key == field


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([(2, 2), (2, 3), (3, 3)]))
@settings(max_examples=50, deadline=None)
def test_seesaw_agrees_with_grid_oracle(seed, dims):
    matrix = _random_symmetric(seed, dims[0] * dims[1])
    found = seesaw_max(matrix, dims, OptimizerConfig(restarts=64, seed=seed % 1000)).value
    assert found >= grid_oracle_max(matrix, dims, resolution=60) - 2e-3
    assert found <= np.linalg.eigvalsh(matrix)[-1] + 1e-9


def test_separable_sup_takes_both_signs():
    vector = BipartiteVector(np.eye(2) / np.sqrt(2.0))
    operator = -vector.projector()
    assert separable_sup(operator, (2, 2)) == pytest.approx(0.5, abs=1e-10)


def test_grid_refuses_large_dims():
    with pytest.raises(RefusalError):
        grid_oracle_max(np.eye(16), (4, 4))


def test_grid_needs_real_operator():
    matrix = np.zeros((4, 4), dtype=complex)
    matrix[0, 1], matrix[1, 0] = 1j, -1j
    with pytest.raises(ValidationError):
        grid_oracle_max(matrix, (2, 2))


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_sphere_grid_rows_are_unit_vectors(dim):
    grid = real_sphere_grid(dim, 12)
    np.testing.assert_allclose(np.linalg.norm(grid, axis=1), 1.0, atol=1e-12)


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([(2, 2), (2, 3), (3, 3)]),
       st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_c_bound_dominates_product_maximum(seed, dims, rank):
    rng = np.random.default_rng(seed)
    terms = []
    for _ in range(rank):
        coeffs = rng.standard_normal(dims) + 1j * rng.standard_normal(dims)
        terms.append((float(rng.uniform(-1.0, 1.0)),
                      BipartiteVector(coeffs / np.linalg.norm(coeffs))))
    operator = sum(lam * vec.projector() for lam, vec in terms)
    cfg = OptimizerConfig(restarts=8, seed=seed)
    bound = c_bound(terms)
    assert seesaw_max(operator, dims, cfg).value <= bound + 1e-9
    assert separable_sup(operator, dims, cfg) <= bound + 1e-9
