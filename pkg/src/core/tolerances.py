"""
Tolerances - numeric thresholds shared by every module

All comparisons against zero go through one of these values. The settings
loader (utils/settings.py) can override any of them from YAML or flags.
"""

from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class Tolerances:
    """
    Numeric thresholds.

    Attributes:
        validation: Hermiticity, unit trace and PSD checks on input states
        report: margin beyond which a criterion reports "detected"
        orthonormality: Gram matrix check for witness terms
        certification: slack allowed when certifying a witness or a plane
        cut: oracle excess over 1 that adds a cutting plane
        tail: per-term discarded squared norm when truncating sequences
        max_truncation: cap on the default truncation length N
        max_dense_dim: largest (rows * cols) the dense criteria will run on
    """
    validation: float = 1e-9
    report: float = 1e-9
    orthonormality: float = 1e-9
    certification: float = 1e-4
    cut: float = 1e-6
    tail: float = 1e-10
    max_truncation: int = 40
    max_dense_dim: int = 2500

    def __post_init__(self):
        for name in ("validation", "report", "orthonormality",
                     "certification", "cut", "tail"):
            if getattr(self, name) < 0:
                raise ConfigError(f"tolerance '{name}' must be non-negative", key=name)
        if self.max_truncation < 1:
            raise ConfigError("max_truncation must be at least 1", key="max_truncation")
        if self.max_dense_dim < 1:
            raise ConfigError("max_dense_dim must be at least 1", key="max_dense_dim")


DEFAULT_TOLERANCES = Tolerances()
