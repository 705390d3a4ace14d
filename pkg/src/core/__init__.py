"""
Core Module - Bipartite algebra for witnesskit

Contains:
- bipartite: BipartiteVector, DensityOperator, product overlaps, mixtures
- sequence: closed-form infinite shifted-diagonal vectors and mixtures
- truncation: compression onto leading product blocks
- families: named states used by tests and the reproduce command
- errors / tolerances: exception hierarchy and numeric thresholds
"""

from .bipartite import (
    BipartiteVector,
    DensityOperator,
    TruncationSpec,
    admixture,
    assemble_mixture,
    coefficient_operator_norm,
    is_orthonormal,
    partial_trace,
    product_overlap,
)
from .errors import (
    ConfigError,
    DimensionMismatchError,
    RefusalError,
    SearchFailure,
    StateFileError,
    TruncationError,
    ValidationError,
    WitnessKitError,
)
from .sequence import SequenceMixture, SequenceVector, WeightFamily, shift_family_norm
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .truncation import compression_trace, default_truncation, truncate_normalize, truncated_terms

__all__ = [
    'BipartiteVector', 'DensityOperator', 'TruncationSpec', 'admixture',
    'assemble_mixture', 'coefficient_operator_norm', 'is_orthonormal',
    'partial_trace', 'product_overlap',
    'ConfigError', 'DimensionMismatchError', 'RefusalError', 'SearchFailure',
    'StateFileError', 'TruncationError', 'ValidationError', 'WitnessKitError',
    'SequenceMixture', 'SequenceVector', 'WeightFamily', 'shift_family_norm',
    'DEFAULT_TOLERANCES', 'Tolerances',
    'compression_trace', 'default_truncation', 'truncate_normalize', 'truncated_terms',
]
