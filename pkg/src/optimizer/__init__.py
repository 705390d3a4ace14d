"""
Optimizer - maximum of a Hermitian operator over product states.

Contains:
- config: OptimizerConfig
- seesaw: alternating top-eigenvector search with seeded restarts
- grid: brute-force real grid used to cross-check the see-saw
"""

from .config import OptimizerConfig
from .grid import grid_oracle_max, real_sphere_grid
from .seesaw import (
    ProductMaxResult,
    RestartSummary,
    product_objective,
    seesaw_max,
    separable_sup,
    validate_operator,
)

__all__ = [
    'OptimizerConfig',
    'grid_oracle_max', 'real_sphere_grid',
    'ProductMaxResult', 'RestartSummary', 'product_objective',
    'seesaw_max', 'separable_sup', 'validate_operator',
]
