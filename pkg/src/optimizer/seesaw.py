"""
See-saw - maximize <a (x) b|T|a (x) b> over unit product vectors

For fixed b the objective is a^H M_b a with M_b[i,k] = <i b|T|k b>, so the
best a is a top eigenvector of M_b; the b step is symmetric. Each half-step
can only raise the objective. Many random starts guard against the fixed
points the alternation can stall on.

Restarts are iterated as stacked arrays (one eigh call per half-step for a
whole batch). With workers > 1 the batches run concurrently behind a
semaphore, and results are gathered and reduced in restart-index order, so
the answer never depends on scheduling.

Usage:
    result = seesaw_max(T, (3, 3), OptimizerConfig(restarts=64, seed=7))
    print(result.value, result.alpha, result.beta)
"""

import asyncio
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.errors import DimensionMismatchError, ValidationError

from .config import OptimizerConfig

logger = logging.getLogger(__name__)

# Eigenvalues this close to the top count as degenerate
DEGENERACY_TOL = 1e-10
# Smallest modulus treated as a nonzero component when fixing phases
PHASE_TOL = 1e-12


@dataclass
class RestartSummary:
    """Outcome of one restart."""
    index: int
    value: float
    iterations: int
    converged: bool
    history: Optional[List[float]] = None


@dataclass(frozen=True, eq=False)
class ProductMaxResult:
    """Best product vector found over all restarts."""
    value: float
    alpha: np.ndarray
    beta: np.ndarray
    restarts_used: int
    restarts: List[RestartSummary] = field(default_factory=list)

    @property
    def converged(self) -> List[bool]:
        return [r.converged for r in self.restarts]

    @property
    def converged_count(self) -> int:
        return sum(self.converged)

    @property
    def best_restart(self) -> RestartSummary:
        return max(self.restarts, key=lambda r: (r.value, -r.index))


def validate_operator(operator, dims: Tuple[int, int], tol: float) -> np.ndarray:
    """Return T as a complex Hermitian array, or raise."""
    matrix = np.asarray(operator, dtype=complex)
    dim = dims[0] * dims[1]
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"operator must be square, got shape {matrix.shape}",
                              field="operator")
    if matrix.shape[0] != dim:
        raise DimensionMismatchError("operator", dim, matrix.shape[0])
    scale = max(1.0, float(np.max(np.abs(matrix))))
    deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
    if deviation > tol * scale:
        raise ValidationError(f"operator is not Hermitian (deviation {deviation:.3g})",
                              field="operator")
    return (matrix + matrix.conj().T) / 2


def product_objective(operator: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> float:
    """<alpha (x) beta|T|alpha (x) beta> for one pair of local vectors."""
    ket = np.kron(alpha, beta)
    return float(np.real(np.vdot(ket, operator @ ket)))


def _fix_phase(vectors: np.ndarray) -> np.ndarray:
    # first component above PHASE_TOL becomes real positive
    first = np.argmax(np.abs(vectors) > PHASE_TOL, axis=1)
    pivots = vectors[np.arange(len(vectors)), first]
    phases = pivots / np.abs(pivots)
    return vectors / phases[:, None]


def _tie_break(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    top = values[-1]
    candidates = [vectors[:, c] for c in range(len(values))
                  if values[c] >= top - DEGENERACY_TOL]
    return max(candidates, key=lambda v: tuple(np.round(np.abs(v), 12)))


def _top_eigenvectors(matrices: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Top eigenpair of each matrix in a stack, with deterministic tie-breaks."""
    values, vectors = np.linalg.eigh(matrices)
    top_values = values[:, -1]
    chosen = vectors[:, :, -1].copy()
    if values.shape[1] > 1:
        for row in np.nonzero(values[:, -2] >= top_values - DEGENERACY_TOL)[0]:
            chosen[row] = _tie_break(values[row], vectors[row])
    return top_values, _fix_phase(chosen)


def _hermitize(stack: np.ndarray) -> np.ndarray:
    return (stack + np.conj(np.swapaxes(stack, 1, 2))) / 2


def _initial_vectors(cfg: OptimizerConfig, dims: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    # drawn up front so restart r starts from the same point in any schedule
    rng = np.random.default_rng(cfg.seed)
    shape_a, shape_b = (cfg.restarts, dims[0]), (cfg.restarts, dims[1])
    alphas = rng.standard_normal(shape_a) + 1j * rng.standard_normal(shape_a)
    betas = rng.standard_normal(shape_b) + 1j * rng.standard_normal(shape_b)
    alphas /= np.linalg.norm(alphas, axis=1, keepdims=True)
    betas /= np.linalg.norm(betas, axis=1, keepdims=True)
    return alphas, betas


def _run_batch(tensor: np.ndarray, indices: np.ndarray, alphas: np.ndarray,
               betas: np.ndarray, cfg: OptimizerConfig):
    """Iterate one stack of restarts to convergence."""
    count = len(indices)
    kets = np.einsum("ri,rj->rij", alphas, betas).reshape(count, -1)
    matrix = tensor.reshape(kets.shape[1], kets.shape[1])
    values = np.real(np.einsum("rp,pq,rq->r", kets.conj(), matrix, kets))
    histories = [[float(v)] for v in values] if cfg.record_history else None
    iterations = np.zeros(count, dtype=int)
    converged = np.zeros(count, dtype=bool)
    active = np.ones(count, dtype=bool)

    for _ in range(cfg.max_iters):
        rows = np.nonzero(active)[0]
        if len(rows) == 0:
            break
        contracted = np.einsum("rj,ijkl,rl->rik", betas[rows].conj(), tensor, betas[rows])
        top_a, alphas[rows] = _top_eigenvectors(_hermitize(contracted))
        contracted = np.einsum("ri,ijkl,rk->rjl", alphas[rows].conj(), tensor, alphas[rows])
        top_b, betas[rows] = _top_eigenvectors(_hermitize(contracted))
        if histories is not None:
            for position, row in enumerate(rows):
                histories[row].extend([float(top_a[position]), float(top_b[position])])
        improvement = top_b - values[rows]
        values[rows] = top_b
        iterations[rows] += 1
        settled = rows[improvement < cfg.convergence_tol]
        converged[settled] = True
        active[settled] = False

    summaries = [
        RestartSummary(int(indices[r]), float(values[r]), int(iterations[r]),
                       bool(converged[r]), histories[r] if histories else None)
        for r in range(count)
    ]
    return summaries, alphas, betas


async def _run_batches_async(tensor, batches, alphas, betas, cfg: OptimizerConfig):
    semaphore = asyncio.Semaphore(cfg.workers)

    async def run_one(indices):
        async with semaphore:
            return await asyncio.to_thread(_run_batch, tensor, indices,
                                           alphas[indices].copy(), betas[indices].copy(), cfg)

    return await asyncio.gather(*[run_one(indices) for indices in batches])


def seesaw_max(operator, dims: Tuple[int, int],
               cfg: Optional[OptimizerConfig] = None) -> ProductMaxResult:
    """
    Maximize the product-state expectation of a Hermitian operator.

    Args:
        operator: Hermitian (dim_a*dim_b) square matrix in the row-major product basis
        dims: (dim_a, dim_b)
        cfg: restarts, iteration limits and seed

    Returns:
        ProductMaxResult; the value is recomputed at the returned vectors
    """
    cfg = cfg or OptimizerConfig()
    dim_a, dim_b = dims
    matrix = validate_operator(operator, dims, cfg.hermitian_tol)
    tensor = matrix.reshape(dim_a, dim_b, dim_a, dim_b)
    alphas, betas = _initial_vectors(cfg, dims)

    order = np.arange(cfg.restarts)
    batches = [order[start:start + cfg.batch_size]
               for start in range(0, cfg.restarts, cfg.batch_size)]
    if cfg.workers > 1 and len(batches) > 1:
        outcomes = asyncio.run(_run_batches_async(tensor, batches, alphas, betas, cfg))
    else:
        outcomes = [_run_batch(tensor, indices, alphas[indices].copy(),
                               betas[indices].copy(), cfg) for indices in batches]

    summaries: List[RestartSummary] = []
    best = None
    for batch_summaries, batch_alphas, batch_betas in outcomes:
        for position, summary in enumerate(batch_summaries):
            summaries.append(summary)
            # strict improvement keeps the lowest index on ties
            if best is None or summary.value > best[0].value:
                best = (summary, batch_alphas[position], batch_betas[position])
    summaries.sort(key=lambda s: s.index)

    summary, alpha, beta = best
    value = product_objective(matrix, alpha, beta)
    logger.debug(f"seesaw {dim_a}x{dim_b}: best {value:.12g} from restart {summary.index}, "
                 f"{sum(s.converged for s in summaries)}/{cfg.restarts} converged")
    return ProductMaxResult(value, alpha, beta, cfg.restarts, summaries)


def separable_sup(operator, dims: Tuple[int, int],
                  cfg: Optional[OptimizerConfig] = None) -> float:
    """sup over product states of |<ab|T|ab>|, from maximizing T and -T."""
    matrix = np.asarray(operator, dtype=complex)
    upper = seesaw_max(matrix, dims, cfg).value
    lower = seesaw_max(-matrix, dims, cfg).value
    return max(upper, lower)
