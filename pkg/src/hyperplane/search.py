"""
Hyperplane search - find f with f . L(rho) > 1 >= f . L(s) for product s

Cutting-plane loop:
1. Keep a set V of feature vectors of product states (seeded from each
   component's product maximizer and from random product states).
2. Solve the LP  max f . L(rho)  s.t.  f . v <= 1 for v in V, |f_i| <= B.
3. Ask the see-saw for s = max over products of f . L(s) at the LP point.
   If s > 1 + cut tolerance, add the maximizer's features to V.
4. f / s is always a valid plane (its separable maximum is 1), so the best
   f . L(rho) / s seen so far is a certified lower bound on the optimum,
   and the LP value is an upper bound. Stop when the LP point needs no cut
   or the two bounds are within gap_tol.

The resulting witness W = I - sum_i f_i rho_i acts as the identity outside
the components' support, so states with remainder weight are handled by
Tr(W rho) directly.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.optimize import linprog

from core.bipartite import DensityOperator
from core.errors import SearchFailure
from core.tolerances import DEFAULT_TOLERANCES, Tolerances
from optimizer.config import OptimizerConfig
from optimizer.seesaw import seesaw_max
from witness.model import FiniteRankWitness

from .feature_map import FeatureMap, check_plane, feature_vector, product_features

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    """
    Cutting-plane settings.

    Attributes:
        box_bound: LP bound on every |f_i|
        random_seeds: random product states seeding V
        max_rounds: LP / oracle rounds before giving up
        gap_tol: stop once LP bound - certified value is below this
        seed: seeds the random product states
        optimizer: see-saw settings for the oracle
        tolerances: cut, report and certification thresholds
    """
    box_bound: float = 100.0
    random_seeds: int = 200
    max_rounds: int = 150
    gap_tol: float = 5e-3
    seed: int = 0
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    tolerances: Tolerances = DEFAULT_TOLERANCES


@dataclass
class SearchRound:
    """One LP + oracle round."""
    round: int
    coefficients: List[float]
    lp_value: float
    oracle_value: float
    certified_value: Optional[float]
    cut_added: bool
    cuts: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True, eq=False)
class SeparatingResult:
    """
    A certified separating plane.

    Attributes:
        feature_map: components the coefficients refer to
        coefficients: a_1..a_n, scaled so the separable maximum is 1
        separable_max: re-certified maximum of f . L(s) over product states
        violation: f . L(rho) - 1
        target_features: L(rho)
        remainder_weight: weight of rho outside the components' support
        remainder_condition: (1 - w) / w < -Tr(W' rho') for the support part
        box_bound: LP box bound used
        trace: every round
    """
    feature_map: FeatureMap
    coefficients: np.ndarray
    separable_max: float
    violation: float
    target_features: np.ndarray
    remainder_weight: float
    remainder_condition: bool
    box_bound: float
    trace: List[SearchRound]

    def witness(self) -> FiniteRankWitness:
        return self.feature_map.witness(self.coefficients)


def _seed_cuts(fmap: FeatureMap, cfg: SearchConfig) -> List[np.ndarray]:
    cuts = []
    for component in fmap.components:
        best = seesaw_max(component.matrix, fmap.dims, cfg.optimizer)
        cuts.append(product_features(fmap, best.alpha, best.beta))
    rng = np.random.default_rng(cfg.seed)
    dim_a, dim_b = fmap.dims
    for _ in range(cfg.random_seeds):
        alpha = rng.standard_normal(dim_a) + 1j * rng.standard_normal(dim_a)
        beta = rng.standard_normal(dim_b) + 1j * rng.standard_normal(dim_b)
        cuts.append(product_features(fmap, alpha, beta))
    return cuts


def _remainder_condition(weight: float, violation: float) -> bool:
    # support part rho' = P rho P / w has Tr(W' rho') = 1 - f . L(rho) / w
    if weight <= 0.0:
        return False
    support_value = 1.0 - (violation + 1.0) / weight
    return (1.0 - weight) / weight < -support_value


def search(fmap: FeatureMap, rho: DensityOperator,
           cfg: Optional[SearchConfig] = None) -> SeparatingResult:
    """
    Find a plane separating L(rho) from the product-state feature set.

    Args:
        fmap: components rho_1..rho_n
        rho: target state
        cfg: search settings

    Returns:
        SeparatingResult

    Raises:
        SearchFailure: LP failure, no violating functional, round limit,
            or failed re-certification; carries the round trace
    """
    cfg = cfg or SearchConfig()
    tol = cfg.tolerances
    target = feature_vector(fmap, rho)
    weight = fmap.support_weight(rho)
    cuts = _seed_cuts(fmap, cfg)
    bounds = [(-cfg.box_bound, cfg.box_bound)] * fmap.n
    trace: List[SearchRound] = []
    best = None  # (certified value, scaled coefficients)

    for round_number in range(1, cfg.max_rounds + 1):
        lp = linprog(-target, A_ub=np.array(cuts), b_ub=np.ones(len(cuts)),
                     bounds=bounds, method="highs")
        if lp.status != 0:
            raise SearchFailure(f"linear program failed: {lp.message}", trace)
        coefficients = lp.x
        lp_value = float(target @ coefficients)
        if lp_value <= 1.0 + tol.report:
            logger.info("LP optimum does not exceed 1: the state lies on the "
                        "separable side of every admissible plane")
            raise SearchFailure("no separating functional: LP optimum "
                                f"{lp_value:.6g} <= 1", trace)

        oracle = seesaw_max(fmap.combination(coefficients), fmap.dims, cfg.optimizer)
        value = oracle.value
        cut_added = value > 1.0 + tol.cut
        if cut_added:
            cuts.append(product_features(fmap, oracle.alpha, oracle.beta))
        certified = lp_value / value if value > tol.cut else None
        if certified is not None and (best is None or certified > best[0]):
            best = (certified, coefficients / value)

        trace.append(SearchRound(round_number, coefficients.tolist(), lp_value, value,
                                 certified, cut_added, len(cuts)))
        logger.debug(f"round {round_number}: lp {lp_value:.6g}, oracle {value:.6g}, "
                     f"certified {certified if certified is None else round(certified, 6)}")
        if not cut_added:
            break
        if best is not None and lp_value - best[0] <= cfg.gap_tol:
            break
    else:
        logger.info(f"cutting plane stopped at the round limit {cfg.max_rounds}")

    if best is None or best[0] <= 1.0 + tol.report:
        raise SearchFailure("no certified separating functional within "
                            f"{len(trace)} rounds", trace)

    coefficients = best[1]
    final = check_plane(fmap, coefficients, cfg.optimizer, tol.certification)
    if not final.tangent:
        raise SearchFailure(f"re-certification gave separable max {final.separable_max:.6g}",
                            trace)
    violation = float(target @ coefficients) - 1.0
    remainder_ok = _remainder_condition(weight, violation)
    if not remainder_ok:
        raise SearchFailure("remainder weight outside the components' support "
                            "cancels the violation", trace)
    logger.info(f"separating plane found in {len(trace)} rounds: violation {violation:.6g}")
    return SeparatingResult(fmap, coefficients, final.separable_max, violation, target,
                            1.0 - weight, remainder_ok, cfg.box_bound, trace)


def fixed_plane_value(fmap: FeatureMap, rho: DensityOperator, coefficients) -> float:
    """f . L(rho) for a hand-chosen plane."""
    return float(feature_vector(fmap, rho) @ np.asarray(coefficients, dtype=float))
