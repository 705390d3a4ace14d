"""Coefficient-norm bounds for finite-rank operators."""

from typing import Sequence, Tuple

from core.bipartite import coefficient_operator_norm
from core.sequence import SequenceVector, shift_family_norm

from .model import WitnessVector


def term_norm(vector: WitnessVector) -> float:
    """Operator norm of the coefficient matrix."""
    if isinstance(vector, SequenceVector):
        return shift_family_norm(vector)
    return coefficient_operator_norm(vector)


def c_bound(terms: Sequence[Tuple[float, WitnessVector]]) -> float:
    """sum_k |lambda_k| ||D_k||^2, an upper bound on |<ab|T|ab>|."""
    return float(sum(abs(lam) * term_norm(vec) ** 2 for lam, vec in terms))
