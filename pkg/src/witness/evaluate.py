"""
Witness evaluation and certification.

evaluate returns Tr(W rho) = alpha Tr(rho) + sum_k lambda_k <w_k|rho|w_k>.
certify bounds inf over product states of <ab|W|ab> from below: by the
see-saw on -R for finite witnesses, by the c-bound for sequence witnesses.
"""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from core.bipartite import BipartiteVector, DensityOperator, TruncationSpec
from core.errors import DimensionMismatchError, ValidationError
from core.sequence import SequenceMixture
from core.tolerances import DEFAULT_TOLERANCES
from optimizer.config import OptimizerConfig
from optimizer.seesaw import seesaw_max

from .bounds import c_bound
from .model import Certification, FiniteRankWitness

logger = logging.getLogger(__name__)


def evaluate(witness: FiniteRankWitness,
             rho: Union[DensityOperator, SequenceMixture]) -> float:
    """
    Tr(W rho).

    Sequence witnesses against a dense state are first truncated to the
    state's block; against a sequence mixture they are evaluated exactly.

    Args:
        witness: operator to evaluate
        rho: dense state or sequence mixture

    Returns:
        Real expectation value
    """
    if isinstance(rho, SequenceMixture):
        if witness.is_finite and witness.terms:
            raise ValidationError("finite witness against a sequence mixture; "
                                  "truncate the state first", field="state")
        return witness.alpha + sum(lam * rho.vector_expectation(vec)
                                   for lam, vec in witness.terms)

    if not witness.is_finite:
        witness = witness.truncate(TruncationSpec(rho.dim_a, rho.dim_b))
    dims = witness.dims
    if dims is not None:
        if dims[0] != rho.dim_a:
            raise DimensionMismatchError("first factor", dims[0], rho.dim_a)
        if dims[1] != rho.dim_b:
            raise DimensionMismatchError("second factor", dims[1], rho.dim_b)
    trace = float(np.real(np.trace(rho.matrix)))
    return witness.alpha * trace + sum(lam * rho.vector_expectation(vec)
                                       for lam, vec in witness.terms)


def evaluate_terms(witness: FiniteRankWitness,
                   terms: Sequence[Tuple[float, BipartiteVector]]) -> float:
    """
    Tr(W rho) for rho = sum_i p_i |v_i><v_i| without forming rho.

    Used on large truncations where only the decomposition is kept.
    """
    if not terms:
        raise ValidationError("decomposition has no terms", field="terms")
    dim_a, dim_b = terms[0][1].dims
    if not witness.is_finite:
        witness = witness.truncate(TruncationSpec(dim_a, dim_b))
    dims = witness.dims
    if dims is not None:
        if dims[0] != dim_a:
            raise DimensionMismatchError("first factor", dims[0], dim_a)
        if dims[1] != dim_b:
            raise DimensionMismatchError("second factor", dims[1], dim_b)
    total = sum(p for p, _ in terms)
    value = witness.alpha * total
    for lam, omega in witness.terms:
        ket = omega.ket()
        value += lam * sum(p * abs(np.vdot(ket, v.ket())) ** 2 for p, v in terms)
    return float(value)


def certify(witness: FiniteRankWitness, cfg: Optional[OptimizerConfig] = None,
            tol: float = DEFAULT_TOLERANCES.certification) -> Certification:
    """
    Lower-bound the witness over product states.

    Args:
        witness: finite or sequence witness
        cfg: see-saw settings (finite witnesses only)
        tol: certified iff the infimum is >= -tol

    Returns:
        Certification record
    """
    if not witness.is_finite:
        # products only see the negative terms, each at most ||D_k||^2
        negative = [(lam, vec) for lam, vec in witness.terms if lam < 0]
        infimum = witness.alpha - c_bound(negative)
        return Certification(infimum, "c-bound", tol, 0, None, infimum >= -tol)

    cfg = cfg or OptimizerConfig()
    if not witness.terms:
        return Certification(witness.alpha, "seesaw", tol, 0, cfg.seed, witness.alpha >= -tol)
    dims = witness.dims
    result = seesaw_max(-witness.rank_part(), dims, cfg)
    infimum = witness.alpha - result.value
    logger.info(f"certify: infimum {infimum:.6g} over {cfg.restarts} restarts "
                f"({result.converged_count} converged)")
    return Certification(infimum, "seesaw", tol, cfg.restarts, cfg.seed, infimum >= -tol)


def admixture_threshold(witness: FiniteRankWitness, rho: DensityOperator,
                        noise: DensityOperator) -> Optional[float]:
    """
    Largest t with (1 - t) rho + t noise still detected by the witness.

    Returns:
        t in (0, 1], or None when rho itself is not detected
    """
    detected = evaluate(witness, rho)
    if detected >= 0:
        return None
    added = evaluate(witness, noise)
    if added <= 0:
        return 1.0
    return detected / (detected - added)
