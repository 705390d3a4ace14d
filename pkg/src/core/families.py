"""
Families - named states used throughout the tests and the reproduce command

- shift family: inverse-linear sequence vectors on the diagonals s = 0, 1, 2
- cyclic Bell basis: |i, i+m mod n> / sqrt(n), m = 0..n-1
- cyclic PPT family on 3x3: rho(q) = q1 rho1 + q2 rho2 + q3 rho3 with
  rho1, rho2 the m = 0, 1 cyclic Bell projectors and rho3 the uniform
  mixture of |0 2>, |1 0>, |2 1>
"""

import math
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from .bipartite import BipartiteVector, DensityOperator, assemble_mixture
from .errors import ValidationError
from .sequence import SequenceMixture, SequenceVector, WeightFamily

INVERSE_LINEAR = WeightFamily("inverse-linear")


def shift_family_vectors(count: int = 3) -> List[SequenceVector]:
    return [SequenceVector(INVERSE_LINEAR, shift) for shift in range(count)]


def shift_family_mixture(weights: Sequence[float]) -> SequenceMixture:
    """sum_k p_k |w_k><w_k| with w_k the inverse-linear vector on diagonal k."""
    vectors = shift_family_vectors(len(weights))
    return SequenceMixture(tuple(zip(weights, vectors)))


def cyclic_bell_vector(n: int, m: int) -> BipartiteVector:
    if n < 1:
        raise ValidationError(f"dimension must be positive, got {n}", field="n")
    coeffs = np.zeros((n, n), dtype=complex)
    index = np.arange(n)
    coeffs[index, (index + m) % n] = 1.0 / math.sqrt(n)
    return BipartiteVector(coeffs)


def cyclic_bell_mixture(weights: Sequence[float]) -> DensityOperator:
    """sum_m q_m |w_m><w_m| on C^n (x) C^n with n = len(weights)."""
    n = len(weights)
    return assemble_mixture([(q, cyclic_bell_vector(n, m)) for m, q in enumerate(weights)])


def _third_component_terms() -> List[BipartiteVector]:
    return [BipartiteVector.basis(i, (i + 2) % 3, 3, 3) for i in range(3)]


def cyclic_ppt_components() -> Tuple[DensityOperator, DensityOperator, DensityOperator]:
    """(rho1, rho2, rho3) of the three-component 3x3 family."""
    rho1 = assemble_mixture([(1.0, cyclic_bell_vector(3, 0))])
    rho2 = assemble_mixture([(1.0, cyclic_bell_vector(3, 1))])
    rho3 = assemble_mixture([(1.0 / 3.0, v) for v in _third_component_terms()])
    return rho1, rho2, rho3


def cyclic_ppt_state(q: Sequence[float]) -> DensityOperator:
    q1, q2, q3 = (float(x) for x in q)
    terms = [(q1, cyclic_bell_vector(3, 0)), (q2, cyclic_bell_vector(3, 1))]
    terms += [(q3 / 3.0, v) for v in _third_component_terms()]
    return assemble_mixture(terms)


def cyclic_ppt_witness(f: Sequence[float]):
    """I - f1 rho1 - f2 rho2 - f3 rho3 as a FiniteRankWitness."""
    from witness.model import FiniteRankWitness

    f1, f2, f3 = (float(x) for x in f)
    terms = [(-f1, cyclic_bell_vector(3, 0)), (-f2, cyclic_bell_vector(3, 1))]
    terms += [(-f3 / 3.0, v) for v in _third_component_terms()]
    return FiniteRankWitness(1.0, tuple(terms))


def cyclic_ppt_margin(q: Sequence[float]) -> float:
    """q1 q2 q3 - q1^3 - q2^3; the state is PPT iff this is >= 0."""
    q1, q2, q3 = (float(x) for x in q)
    return q1 * q2 * q3 - q1 ** 3 - q2 ** 3


def cyclic_ppt_boundary_distance(q: Sequence[float]) -> float:
    """
    First-order distance |g| / |grad g| from (q1, q2) to the surface g = 0,
    g = cyclic_ppt_margin with q3 = 1 - q1 - q2.

    Zero on the surface, including the singular point at the origin.
    """
    q1, q2, q3 = (float(x) for x in q)
    margin = q1 * q2 * q3 - q1 ** 3 - q2 ** 3
    grad_q1 = q2 * (q3 - q1) - 3 * q1 ** 2
    grad_q2 = q1 * (q3 - q2) - 3 * q2 ** 2
    slope = math.hypot(grad_q1, grad_q2)
    if slope == 0.0:
        return 0.0 if margin == 0.0 else math.inf
    return abs(margin) / slope


def cyclic_ppt_predicate(q: Sequence[float], band: float = 1e-9) -> str:
    """
    "ppt", "npt" or "boundary" from the closed-form determinant condition.

    Points whose estimated distance to the surface is below band are
    "boundary".
    """
    if cyclic_ppt_boundary_distance(q) < band:
        return "boundary"
    return "ppt" if cyclic_ppt_margin(q) > 0 else "npt"


def cyclic_ppt_trace_norm(q: Sequence[float]) -> float:
    """
    Closed-form trace norm of the realigned cyclic PPT state.

    The realigned matrix splits into a 3x3 circulant block
    q1 I + q2 C + q3 C^2 on span{|00>,|11>,|22>} and two circulant blocks
    q1 I + q2 C on the off-diagonal cycles; singular values are the moduli
    of the circulant eigenvalues.
    """
    q1, q2, q3 = (float(x) for x in q)
    diagonal_block = math.sqrt(max(0.0, q1 * q1 + q2 * q2 + q3 * q3
                                   - q1 * q2 - q1 * q3 - q2 * q3))
    cycle_block = math.sqrt(max(0.0, q1 * q1 - q1 * q2 + q2 * q2))
    return (abs(q1 + q2 + q3) + 2 * diagonal_block + 2 * abs(q1 + q2)
            + 4 * cycle_block) / 3.0


class ProductFixture(NamedTuple):
    alpha: Tuple[float, ...]
    beta: Tuple[float, ...]
    features: Tuple[float, float, float]


_SQRT3 = 1.0 / math.sqrt(3.0)
_SQRT2 = 1.0 / math.sqrt(2.0)

# Real product vectors with their quoted (Tr rho1 s, Tr rho2 s, Tr rho3 s)
PRODUCT_FIXTURES: Dict[str, ProductFixture] = {
    "vertex-0": ProductFixture((1, 0, 0), (1, 0, 0), (1 / 3, 0.0, 0.0)),
    "vertex-1": ProductFixture((1, 0, 0), (0, 1, 0), (0.0, 1 / 3, 0.0)),
    "vertex-2": ProductFixture((1, 0, 0), (0, 0, 1), (0.0, 0.0, 1 / 3)),
    "uniform": ProductFixture((_SQRT3,) * 3, (_SQRT3,) * 3, (1 / 3, 1 / 3, 1 / 9)),
    "pair": ProductFixture((_SQRT2, _SQRT2, 0), (_SQRT2, _SQRT2, 0), (1 / 3, 1 / 12, 1 / 12)),
    "tilted": ProductFixture((-0.707104, 0.672502, -0.218509),
                             (0.707107, -0.706824, -0.0199903),
                             (0.314261, 0.0367071, 0.0833943)),
    "skewed": ProductFixture((0.876317, -0.0152726, 0.481493),
                             (0.481493, -0.0152726, 0.876317),
                             (0.237509, 0.0140176, 0.196609)),
}

# Planes a . L(s) = 1 quoted for the cyclic PPT family
TANGENT_PLANE = (1.5, 0.3, 3.0)
MIRRORED_PLANE = (0.3, 1.5, 3.0)
OVERSHOOT_PLANE = (1.71, 0.29, 3.0)
VIOLATED_PLANE = (3.0, -1.0, 3.0)
