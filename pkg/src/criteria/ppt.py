"""
PPT criterion: minimum eigenvalue of the partial transpose.
"""

import logging
from typing import Union

import numpy as np
from scipy import linalg

from core.bipartite import DensityOperator
from core.errors import ValidationError
from core.tolerances import DEFAULT_TOLERANCES

from .report import CriterionReport, Side

logger = logging.getLogger(__name__)


def partial_transpose(rho: Union[DensityOperator, np.ndarray], side: str = "second",
                      dims=None) -> np.ndarray:
    """
    Transpose one tensor factor.

    For side="second", entry ((i,j),(k,l)) moves to ((i,l),(k,j)).

    Args:
        rho: state, or a bare square matrix when `dims` is given
        side: "first" or "second"
        dims: (dim_a, dim_b) for bare matrices

    Returns:
        Partially transposed matrix (Hermitian when the input is)
    """
    if isinstance(rho, DensityOperator):
        matrix, (dim_a, dim_b) = rho.matrix, rho.dims
    else:
        if dims is None:
            raise ValidationError("dims are required for a bare matrix", field="dims")
        matrix, (dim_a, dim_b) = np.asarray(rho), dims
    blocks = matrix.reshape(dim_a, dim_b, dim_a, dim_b)
    if side == "second":
        flipped = blocks.transpose(0, 3, 2, 1)
    elif side == "first":
        flipped = blocks.transpose(2, 1, 0, 3)
    else:
        raise ValidationError(f"side must be 'first' or 'second', got '{side}'", field="side")
    return flipped.reshape(dim_a * dim_b, dim_a * dim_b)


def ppt_check(rho: DensityOperator, tol: float = DEFAULT_TOLERANCES.report) -> CriterionReport:
    """Detected iff the partial transpose has an eigenvalue below -tol."""
    transposed = partial_transpose(rho, "second")
    margin = float(linalg.eigvalsh(transposed)[0])
    logger.debug(f"ppt margin {margin:.6g} on {rho.dim_a}x{rho.dim_b}")
    return CriterionReport.from_margin("ppt", margin, tol, Side.BELOW,
                                       dims=list(rho.dims))
