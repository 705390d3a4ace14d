"""Optimizer settings."""

from dataclasses import dataclass

from core.errors import ConfigError


@dataclass(frozen=True)
class OptimizerConfig:
    """
    See-saw settings.

    Attributes:
        restarts: number of independent random starts
        max_iters: full alternations allowed per restart
        convergence_tol: stop a restart once a full step improves less than this
        seed: seeds every restart's starting vectors
        workers: batches run concurrently when > 1
        batch_size: restarts iterated together as one stacked array
        record_history: keep the objective after every half-step
        hermitian_tol: allowed deviation of T from its adjoint
    """
    restarts: int = 64
    max_iters: int = 500
    convergence_tol: float = 1e-12
    seed: int = 0
    workers: int = 1
    batch_size: int = 64
    record_history: bool = False
    hermitian_tol: float = 1e-9

    def __post_init__(self):
        if self.restarts < 1:
            raise ConfigError(f"restarts must be >= 1, got {self.restarts}", key="restarts")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}", key="max_iters")
        if not self.convergence_tol > 0:
            raise ConfigError("convergence_tol must be positive", key="convergence_tol")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}", key="workers")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}",
                              key="batch_size")
