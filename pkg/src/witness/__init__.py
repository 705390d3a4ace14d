"""
Witness - finite-rank entanglement witnesses W = alpha I + R.

Contains:
- model: FiniteRankWitness and Certification
- bounds: coefficient-norm c-bound
- construct: special, corollary, pure-state and bound witnesses
- evaluate: Tr(W rho), product-state certification, admixture threshold
"""

from .bounds import c_bound, term_norm
from .construct import (
    bound_witness,
    corollary_witness,
    mixture_detection_margin,
    pure_state_witness,
    special_witness,
)
from .evaluate import admixture_threshold, certify, evaluate, evaluate_terms
from .model import Certification, FiniteRankWitness

__all__ = [
    'c_bound', 'term_norm',
    'bound_witness', 'corollary_witness', 'mixture_detection_margin',
    'pure_state_witness', 'special_witness',
    'admixture_threshold', 'certify', 'evaluate', 'evaluate_terms',
    'Certification', 'FiniteRankWitness',
]
