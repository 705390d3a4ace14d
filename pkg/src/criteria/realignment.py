"""
Realignment criterion.

The realigned operator of sum_i p_i |w_i><w_i| is sum_i p_i D_i (x) conj(D_i),
a dim_a^2 x dim_b^2 matrix. Separable states have trace norm at most one.
"""

import logging

import numpy as np
from scipy import linalg

from core.bipartite import DensityOperator
from core.errors import ValidationError
from core.tolerances import DEFAULT_TOLERANCES

from .report import CriterionReport, Side

logger = logging.getLogger(__name__)


def realign(rho: DensityOperator, source: str = "terms") -> np.ndarray:
    """
    Realigned matrix from a pure-state decomposition.

    Args:
        rho: state to realign
        source: "terms" uses the stored mixture when present,
            "spectral" always uses the eigendecomposition

    Returns:
        Complex (dim_a**2) x (dim_b**2) matrix
    """
    if source == "terms":
        terms = rho.pure_decomposition()
    elif source == "spectral":
        terms = rho.spectral_terms()
    else:
        raise ValidationError(f"source must be 'terms' or 'spectral', got '{source}'",
                              field="source")
    realigned = np.zeros((rho.dim_a ** 2, rho.dim_b ** 2), dtype=complex)
    for weight, vector in terms:
        coeffs = vector.coefficients
        realigned += weight * np.kron(coeffs, coeffs.conj())
    return realigned


def trace_norm(matrix: np.ndarray) -> float:
    return float(np.sum(linalg.svdvals(matrix)))


def realignment_check(rho: DensityOperator,
                      tol: float = DEFAULT_TOLERANCES.report) -> CriterionReport:
    """Detected iff the realigned trace norm exceeds 1 + tol."""
    margin = trace_norm(realign(rho)) - 1.0
    logger.debug(f"realignment margin {margin:.6g}")
    return CriterionReport.from_margin("realignment", margin, tol, Side.ABOVE,
                                       dims=list(rho.dims))
