"""
Feature map L(T) = (Tr(rho_1 T), ..., Tr(rho_n T)) over mutually orthogonal
components, and the plane check f . L(s) <= 1 over product states s.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from core.bipartite import DensityOperator
from core.errors import DimensionMismatchError, ValidationError
from core.tolerances import DEFAULT_TOLERANCES
from optimizer.config import OptimizerConfig
from optimizer.seesaw import seesaw_max
from witness.model import FiniteRankWitness

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FeatureMap:
    """
    Components rho_1..rho_n with Tr(rho_i rho_j) = 0 for i != j.

    Components may be mixed; orthogonality of PSD operators makes their
    supports orthogonal, so their decompositions together stay orthonormal.
    """
    components: Tuple[DensityOperator, ...]
    tol: float = DEFAULT_TOLERANCES.orthonormality

    def __post_init__(self):
        components = tuple(self.components)
        if not components:
            raise ValidationError("feature map needs at least one component",
                                  field="components")
        dims = components[0].dims
        for component in components[1:]:
            if component.dims[0] != dims[0]:
                raise DimensionMismatchError("first factor", dims[0], component.dims[0])
            if component.dims[1] != dims[1]:
                raise DimensionMismatchError("second factor", dims[1], component.dims[1])
        for i in range(len(components)):
            for j in range(i + 1, len(components)):
                overlap = components[i].expectation(components[j].matrix)
                if abs(overlap) > self.tol:
                    raise ValidationError(
                        f"components {i} and {j} are not orthogonal (overlap {overlap:.3g})",
                        field="components")
        object.__setattr__(self, "components", components)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def dims(self) -> Tuple[int, int]:
        return self.components[0].dims

    def combination(self, coefficients: Sequence[float]) -> np.ndarray:
        """sum_i f_i rho_i as a dense matrix."""
        coefficients = self._coefficients(coefficients)
        return sum(f * c.matrix for f, c in zip(coefficients, self.components))

    def support_weight(self, rho: DensityOperator) -> float:
        """Tr(P rho) for P the projector onto the components' joint support."""
        vectors = [v for c in self.components for p, v in c.orthonormal_terms() if p > 0]
        return float(sum(rho.vector_expectation(v) for v in vectors))

    def witness(self, coefficients: Sequence[float]) -> FiniteRankWitness:
        """I - sum_i f_i rho_i."""
        coefficients = self._coefficients(coefficients)
        terms = []
        for f, component in zip(coefficients, self.components):
            terms += [(-f * p, vec) for p, vec in component.orthonormal_terms()]
        return FiniteRankWitness(1.0, tuple(terms))

    def _coefficients(self, coefficients: Sequence[float]) -> np.ndarray:
        coefficients = np.asarray(coefficients, dtype=float).ravel()
        if coefficients.shape[0] != self.n:
            raise DimensionMismatchError("coefficients", self.n, coefficients.shape[0])
        return coefficients


def feature_vector(fmap: FeatureMap, rho: DensityOperator) -> np.ndarray:
    """(Tr(rho_1 rho), ..., Tr(rho_n rho))."""
    if rho.dims[0] != fmap.dims[0]:
        raise DimensionMismatchError("first factor", fmap.dims[0], rho.dims[0])
    if rho.dims[1] != fmap.dims[1]:
        raise DimensionMismatchError("second factor", fmap.dims[1], rho.dims[1])
    return np.array([rho.expectation(c.matrix) for c in fmap.components])


def product_features(fmap: FeatureMap, alpha, beta) -> np.ndarray:
    """Feature vector of the product state |alpha beta><alpha beta|."""
    alpha = np.asarray(alpha, dtype=complex).ravel()
    beta = np.asarray(beta, dtype=complex).ravel()
    alpha = alpha / np.linalg.norm(alpha)
    beta = beta / np.linalg.norm(beta)
    ket = np.kron(alpha, beta)
    return np.array([float(np.real(np.vdot(ket, c.matrix @ ket))) for c in fmap.components])


@dataclass(frozen=True, eq=False)
class PlaneCheck:
    """Separable maximum of f . L(s) and where it was attained."""
    coefficients: np.ndarray
    separable_max: float
    tangent: bool
    alpha: np.ndarray
    beta: np.ndarray
    features: np.ndarray


def check_plane(fmap: FeatureMap, coefficients: Sequence[float],
                cfg: Optional[OptimizerConfig] = None,
                tol: float = DEFAULT_TOLERANCES.certification) -> PlaneCheck:
    """
    Maximize f . L(s) over product states.

    Args:
        fmap: feature map
        coefficients: plane normal f (the plane is f . x = 1)
        cfg: optimizer settings
        tol: tangency tolerance on |max - 1|

    Returns:
        PlaneCheck with the maximum and its maximizer
    """
    coefficients = fmap._coefficients(coefficients)
    result = seesaw_max(fmap.combination(coefficients), fmap.dims, cfg)
    features = product_features(fmap, result.alpha, result.beta)
    tangent = abs(result.value - 1.0) <= tol
    logger.debug(f"plane {np.round(coefficients, 6).tolist()}: separable max "
                 f"{result.value:.8g}, tangent={tangent}")
    return PlaneCheck(coefficients, result.value, tangent, result.alpha, result.beta, features)
