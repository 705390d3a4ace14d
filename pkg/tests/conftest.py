"""Shared fixtures; puts src/ on the import path like src/main.py does."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from core.bipartite import BipartiteVector, DensityOperator  # noqa: E402
from core.families import cyclic_ppt_components  # noqa: E402
from hyperplane.feature_map import FeatureMap  # noqa: E402
from optimizer.config import OptimizerConfig  # noqa: E402
from utils.colors import set_color_enabled  # noqa: E402


@pytest.fixture(autouse=True)
def plain_output():
    set_color_enabled(False)
    yield


@pytest.fixture
def bell_state() -> DensityOperator:
    psi = np.array([[1.0, 0.0], [0.0, 1.0]]) / np.sqrt(2.0)
    return DensityOperator.pure(BipartiteVector(psi))


@pytest.fixture
def product_state() -> DensityOperator:
    alpha = np.array([0.6, 0.8j])
    beta = np.array([1.0, 1.0, -1.0]) / np.sqrt(3.0)
    return DensityOperator.pure(BipartiteVector.product(alpha, beta))


@pytest.fixture
def cyclic_map() -> FeatureMap:
    return FeatureMap(cyclic_ppt_components())


@pytest.fixture
def optimizer_config() -> OptimizerConfig:
    return OptimizerConfig(restarts=64, seed=11)
