"""
Grid oracle - brute-force product maximum over real unit vectors.

Only meant to cross-check seesaw_max on small real-symmetric problems.
Real unit vectors are enumerated up to sign on angular grids: a half circle
for dimension 2 and a hemisphere for dimension 3.
"""

import logging
from typing import Tuple

import numpy as np

from core.errors import RefusalError, ValidationError

from .seesaw import validate_operator

logger = logging.getLogger(__name__)

MAX_GRID_DIM = 3
# alpha grid points contracted per step; bounds the (chunk x beta grid) buffer
CHUNK = 128


def real_sphere_grid(dim: int, resolution: int) -> np.ndarray:
    """Rows are real unit vectors covering the sphere up to sign."""
    if dim == 1:
        return np.ones((1, 1))
    if dim == 2:
        theta = np.linspace(0.0, np.pi, resolution, endpoint=False)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    theta = np.linspace(0.0, np.pi, resolution + 1)
    phi = np.linspace(0.0, np.pi, resolution, endpoint=False)
    theta, phi = np.meshgrid(theta, phi, indexing="ij")
    points = np.column_stack([
        (np.sin(theta) * np.cos(phi)).ravel(),
        (np.sin(theta) * np.sin(phi)).ravel(),
        np.cos(theta).ravel(),
    ])
    return points


def grid_oracle_max(operator, dims: Tuple[int, int], resolution: int = 60) -> float:
    """
    Exhaustive maximum of <ab|T|ab> over gridded real unit a, b.

    Args:
        operator: real-symmetric matrix on the row-major product basis
        dims: (dim_a, dim_b), each at most 3
        resolution: angular samples per coordinate

    Returns:
        Largest sampled value (a lower bound on the true maximum)
    """
    dim_a, dim_b = dims
    if dim_a > MAX_GRID_DIM or dim_b > MAX_GRID_DIM:
        raise RefusalError(f"grid oracle handles local dims up to {MAX_GRID_DIM}, "
                           f"got {dim_a}x{dim_b}")
    if resolution < 2:
        raise ValidationError(f"resolution must be >= 2, got {resolution}", field="resolution")
    matrix = validate_operator(operator, dims, 1e-9)
    if np.max(np.abs(matrix.imag)) > 1e-12:
        raise ValidationError("grid oracle needs a real-symmetric operator", field="operator")
    tensor = matrix.real.reshape(dim_a, dim_b, dim_a, dim_b)

    grid_a = real_sphere_grid(dim_a, resolution)
    grid_b = real_sphere_grid(dim_b, resolution)
    best = -np.inf
    for start in range(0, len(grid_a), CHUNK):
        chunk = grid_a[start:start + CHUNK]
        reduced = np.einsum("ai,ijkl,ak->ajl", chunk, tensor, chunk)
        values = np.einsum("bj,ajl,bl->ab", grid_b, reduced, grid_b)
        best = max(best, float(values.max()))
    logger.debug(f"grid oracle {dim_a}x{dim_b} at resolution {resolution}: {best:.6g}")
    return best
