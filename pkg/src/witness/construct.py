"""
Witness constructors built from the c-bound

For T = sum_k lambda_k |w_k><w_k| with orthonormal w_k,
c_T = sum_k |lambda_k| ||D_k||^2 bounds |Tr(T s)| over separable s, because
|<ab|w_k>| = |<a|D_k|conj(b)>| <= ||D_k||. Hence c_T I - T is never
negative on separable states; it is a witness exactly when it is not
positive.
"""

import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from core.bipartite import BipartiteVector, DensityOperator
from core.errors import ValidationError
from core.sequence import SequenceMixture
from core.tolerances import DEFAULT_TOLERANCES
from criteria.report import CriterionReport, Side
from optimizer.config import OptimizerConfig
from optimizer.seesaw import separable_sup

from .bounds import c_bound, term_norm
from .evaluate import evaluate
from .model import FiniteRankWitness, WitnessVector

logger = logging.getLogger(__name__)

MixtureLike = Union[DensityOperator, SequenceMixture]


def _mixture_terms(rho: MixtureLike) -> List[Tuple[float, WitnessVector]]:
    if isinstance(rho, SequenceMixture):
        return list(rho.terms)
    return rho.orthonormal_terms()


def special_witness(rho1: MixtureLike,
                    tol: float = DEFAULT_TOLERANCES.report) -> FiniteRankWitness:
    """
    W = c I - rho1 with c the c-bound of rho1's orthonormal decomposition.

    Args:
        rho1: state with an orthonormal pure decomposition (stored or spectral)
        tol: margin required for the non-positivity flag

    Returns:
        The operator, flagged is_witness=False when it is positive
    """
    terms = _mixture_terms(rho1)
    bound = c_bound(terms)
    largest = max(p for p, _ in terms)
    valid = largest > bound + tol
    if not valid:
        logger.info(f"c-bound {bound:.6g} >= largest weight {largest:.6g}: not a witness")
    return FiniteRankWitness(bound, tuple((-p, vec) for p, vec in terms), is_witness=valid)


def pure_state_witness(psi: WitnessVector,
                       tol: float = DEFAULT_TOLERANCES.report) -> FiniteRankWitness:
    """||D_psi||^2 I - |psi><psi|; a witness iff ||D_psi|| < 1."""
    norm_sq = term_norm(psi) ** 2
    return FiniteRankWitness(norm_sq, ((-1.0, psi),), is_witness=norm_sq < 1.0 - tol)


def corollary_witness(rho: MixtureLike, index: int,
                      tol: float = DEFAULT_TOLERANCES.report
                      ) -> Tuple[FiniteRankWitness, CriterionReport]:
    """
    Single-term witness ||D_k||^2 I - |w_k><w_k| for one mixture term.

    Tr(W rho) = ||D_k||^2 - p_k, so rho is detected when p_k exceeds the
    squared coefficient norm of its own term.

    Args:
        rho: orthonormal mixture sum_k p_k |w_k><w_k|
        index: zero-based term index k
        tol: reporting tolerance

    Returns:
        (witness, report with margin Tr(W rho))
    """
    terms = _mixture_terms(rho)
    if not 0 <= index < len(terms):
        raise ValidationError(f"term index {index} out of range for {len(terms)} terms",
                              field="k0")
    weight, vector = terms[index]
    witness = pure_state_witness(vector, tol)
    margin = evaluate(witness, rho)
    report = CriterionReport.from_margin(
        "witness", margin, tol, Side.BELOW,
        construction="corollary", k0=index, norm_sq=witness.alpha, weight=weight,
    )
    return witness, report


def bound_witness(terms: Sequence[Tuple[float, BipartiteVector]],
                  d: Optional[float] = None, analytic: bool = False,
                  cfg: Optional[OptimizerConfig] = None,
                  tol: float = DEFAULT_TOLERANCES.report) -> FiniteRankWitness:
    """
    W = d I - T for T = sum_k lambda_k |w_k><w_k|.

    Args:
        terms: finite orthonormal (lambda, vector) pairs
        d: identity coefficient; defaults to the product-state supremum d_T
            (or to c_T when analytic is set)
        analytic: use c_T instead of the numerically estimated d_T
        cfg: optimizer settings for estimating d_T
        tol: margin for the non-positivity flag

    Returns:
        Witness flagged valid iff d < max_k lambda_k
    """
    terms = [(float(lam), vec) for lam, vec in terms]
    if not terms:
        raise ValidationError("bound witness needs at least one term", field="terms")
    if d is None:
        if analytic:
            d = c_bound(terms)
        else:
            dims = terms[0][1].dims
            dim = dims[0] * dims[1]
            operator = np.zeros((dim, dim), dtype=complex)
            for lam, vec in terms:
                operator += lam * vec.projector()
            d = separable_sup(operator, dims, cfg)
    top = max(lam for lam, _ in terms)
    return FiniteRankWitness(d, tuple((-lam, vec) for lam, vec in terms),
                             is_witness=d < top - tol)


def mixture_detection_margin(rho1: DensityOperator, rho2: DensityOperator, p: float) -> float:
    """
    c(rho1) - p ||rho1||_2^2 - (1 - p) Tr(rho1 rho2).

    Equals Tr(W rho) for W = c I - rho1 and rho = p rho1 + (1 - p) rho2;
    negative means rho is detected.
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}", field="p")
    bound = c_bound(rho1.orthonormal_terms())
    overlap = rho2.expectation(rho1.matrix)
    return bound - p * rho1.purity() - (1.0 - p) * overlap
