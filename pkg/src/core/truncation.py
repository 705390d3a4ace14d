"""
Truncation - compress states onto a leading k x l product block

rho_kl = P rho P / Tr(P rho P) with P = P_k (x) Q_l. Works on dense
DensityOperators and on SequenceMixtures; for the latter the default block
size is the smallest N whose per-term discarded tail is below the tail
tolerance, capped at Tolerances.max_truncation.
"""

import logging
from typing import List, Optional, Tuple, Union

import numpy as np

from .bipartite import BipartiteVector, DensityOperator, TruncationSpec, assemble_mixture
from .errors import TruncationError, ValidationError
from .sequence import SequenceMixture
from .tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)

StateLike = Union[DensityOperator, SequenceMixture]


def default_truncation(mixture: SequenceMixture,
                       tolerances: Tolerances = DEFAULT_TOLERANCES,
                       length: Optional[int] = None) -> Tuple[TruncationSpec, float]:
    """
    Block size for a sequence mixture.

    Args:
        mixture: state to truncate
        tolerances: supplies the tail tolerance and the cap on N
        length: explicit N (the --truncate flag); skips the tail search

    Returns:
        (TruncationSpec(N + max shift, N), largest per-term discarded tail)
    """
    if length is None:
        length = max(
            v.family.truncation_length(tolerances.tail, tolerances.max_truncation)
            for v in mixture.vectors
        )
    tail = max(v.tail_mass(length) for v in mixture.vectors)
    if tail >= tolerances.tail:
        logger.warning(f"truncation N={length} leaves tail mass {tail:.3g} "
                       f"(tolerance {tolerances.tail:g})")
    else:
        logger.info(f"truncation N={length}, tail mass {tail:.3g}")
    return TruncationSpec(length + mixture.max_shift, length), tail


def compression_trace(state: StateLike, spec: TruncationSpec) -> float:
    """Tr(P rho P) before renormalization."""
    if isinstance(state, SequenceMixture):
        return float(sum(p * v.compress(spec.k, spec.l).norm() ** 2
                         for p, v in state.terms))
    blocks = state.matrix.reshape(state.dim_a, state.dim_b, state.dim_a, state.dim_b)
    _check_fits(state, spec)
    kept = blocks[: spec.k, : spec.l, : spec.k, : spec.l]
    return float(np.real(np.einsum("ijij->", kept)))


def _check_fits(state: DensityOperator, spec: TruncationSpec) -> None:
    if spec.k > state.dim_a or spec.l > state.dim_b:
        raise ValidationError(
            f"truncation {spec.k}x{spec.l} exceeds dims {state.dim_a}x{state.dim_b}",
            field="truncate",
        )


Terms = List[Tuple[float, BipartiteVector]]


def truncated_terms(state: StateLike, spec: TruncationSpec,
                    tol: float = DEFAULT_TOLERANCES.validation) -> Terms:
    """
    Renormalized decomposition of the compressed state.

    Each term p_i |v_i> becomes (p_i m_i / M, P v_i / sqrt(m_i)) with
    m_i = ||P v_i||^2 and M = sum_i p_i m_i; terms compressed to zero drop out.

    Args:
        state: sequence mixture or dense state carrying a decomposition
        spec: block to keep
        tol: compressed traces at or below this annihilate the state

    Returns:
        (weight, unit BipartiteVector) pairs on C^k (x) C^l
    """
    if isinstance(state, SequenceMixture):
        compressed = [(p, v.compress(spec.k, spec.l)) for p, v in state.terms]
    else:
        _check_fits(state, spec)
        if not state.terms:
            raise ValidationError("state has no decomposition to truncate", field="state")
        compressed = [(p, v.compressed(spec.k, spec.l)) for p, v in state.terms]
    weighted = []
    for weight, vector in compressed:
        mass = vector.norm() ** 2
        if weight > 0 and mass > tol * tol:
            weighted.append((weight * mass, vector.normalized()))
    total = sum(w for w, _ in weighted)
    if total <= tol:
        raise TruncationError()
    return [(w / total, v) for w, v in weighted]


def truncate_normalize(state: StateLike, spec: TruncationSpec,
                       tol: float = DEFAULT_TOLERANCES.validation) -> DensityOperator:
    """
    Compress onto the leading spec.k x spec.l block and renormalize.

    Args:
        state: dense state or sequence mixture
        spec: block to keep
        tol: compressed traces at or below this annihilate the state

    Returns:
        Unit-trace DensityOperator on C^k (x) C^l; states with a decomposition
        keep the renormalized compressed terms
    """
    if isinstance(state, SequenceMixture) or state.terms:
        return assemble_mixture(truncated_terms(state, spec, tol), tol=tol)

    _check_fits(state, spec)
    trace = compression_trace(state, spec)
    if trace <= tol:
        raise TruncationError()
    blocks = state.matrix.reshape(state.dim_a, state.dim_b, state.dim_a, state.dim_b)
    kept = blocks[: spec.k, : spec.l, : spec.k, : spec.l].reshape(spec.k * spec.l,
                                                                  spec.k * spec.l)
    return DensityOperator(kept / trace, spec.k, spec.l, None, state.tol)
