"""
Witness model - W = alpha I + sum_k lambda_k |w_k><w_k| with orthonormal w_k

Terms are either all finite (BipartiteVector, one common shape) or all
infinite shifted-diagonal SequenceVectors. Sequence witnesses become finite
through `truncate`, which compresses every term onto the leading block and
renormalizes it.
"""

import logging
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from core.bipartite import BipartiteVector, TruncationSpec, is_orthonormal
from core.errors import DimensionMismatchError, ValidationError
from core.sequence import SequenceVector

logger = logging.getLogger(__name__)

WitnessVector = Union[BipartiteVector, SequenceVector]


@dataclass(frozen=True)
class Certification:
    """
    Numerical lower bound on inf over product states of <ab|W|ab>.

    method is "seesaw" (numerical, not a proof) or "c-bound" (analytic).
    """
    infimum: float
    method: str
    tolerance: float
    restarts: int
    seed: Optional[int]
    certified: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certification":
        return cls(float(data["infimum"]), str(data["method"]), float(data["tolerance"]),
                   int(data.get("restarts", 0)), data.get("seed"), bool(data["certified"]))


@dataclass(frozen=True, eq=False)
class FiniteRankWitness:
    """
    Identity multiple plus a finite-rank Hermitian part.

    Attributes:
        alpha: coefficient of the identity
        terms: (lambda_k, w_k) with pairwise orthonormal w_k
        certification: optional product-state infimum record
        is_witness: constructor's non-positivity verdict (None if not judged)
        tol: orthonormality tolerance
    """
    alpha: float
    terms: Tuple[Tuple[float, WitnessVector], ...]
    certification: Optional[Certification] = None
    is_witness: Optional[bool] = None
    tol: float = 1e-9

    def __post_init__(self):
        terms = tuple((float(lam), vec) for lam, vec in self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "alpha", float(self.alpha))
        vectors = [vec for _, vec in terms]
        finite = [isinstance(v, BipartiteVector) for v in vectors]
        if any(finite) and not all(finite):
            raise ValidationError("witness mixes finite and sequence terms", field="terms")
        if all(finite) and vectors:
            shape = vectors[0].dims
            for vec in vectors[1:]:
                if vec.dims[0] != shape[0]:
                    raise DimensionMismatchError("first factor", shape[0], vec.dims[0])
                if vec.dims[1] != shape[1]:
                    raise DimensionMismatchError("second factor", shape[1], vec.dims[1])
            if not is_orthonormal(vectors, self.tol):
                raise ValidationError("witness terms are not orthonormal", field="terms")
        elif vectors:
            for a in range(len(vectors)):
                for b in range(a, len(vectors)):
                    expected = 1.0 if a == b else 0.0
                    if abs(vectors[a].inner(vectors[b]) - expected) > self.tol:
                        raise ValidationError("witness terms are not orthonormal",
                                              field="terms")
        if self.is_witness and self.alpha < -self.tol:
            raise ValidationError(f"a witness needs alpha >= 0, got {self.alpha:g}",
                                  field="alpha")

    @property
    def is_finite(self) -> bool:
        return all(isinstance(v, BipartiteVector) for _, v in self.terms)

    @property
    def dims(self) -> Optional[Tuple[int, int]]:
        if not self.terms or not self.is_finite:
            return None
        return self.terms[0][1].dims

    @property
    def lambdas(self) -> List[float]:
        return [lam for lam, _ in self.terms]

    def rank_part(self) -> np.ndarray:
        """Dense finite-rank part R."""
        self._require_finite()
        dim = self.dims[0] * self.dims[1]
        matrix = np.zeros((dim, dim), dtype=complex)
        for lam, vec in self.terms:
            matrix += lam * vec.projector()
        return matrix

    def matrix(self) -> np.ndarray:
        rank = self.rank_part()
        return self.alpha * np.eye(rank.shape[0]) + rank

    def range_is_proper(self) -> bool:
        if not self.is_finite:
            return True
        dim_a, dim_b = self.dims
        return len(self.terms) < dim_a * dim_b

    def is_non_positive(self, tol: float = 1e-9) -> bool:
        """
        W has a negative eigenvalue.

        The w_k are orthonormal, so R restricted to its range has
        eigenvalues lambda_k and W acts as alpha on the complement.
        """
        if self.terms and self.alpha + min(self.lambdas) < -tol:
            return True
        return self.range_is_proper() and self.alpha < -tol

    def with_certification(self, record: Certification) -> "FiniteRankWitness":
        return replace(self, certification=record)

    def truncate(self, spec: TruncationSpec) -> "FiniteRankWitness":
        """
        Finite witness on the leading spec.k x spec.l block.

        Each term is compressed and renormalized; terms whose compression
        vanishes are dropped. alpha is unchanged.
        """
        terms = []
        for lam, vec in self.terms:
            if isinstance(vec, SequenceVector):
                compressed = vec.compress(spec.k, spec.l)
            else:
                compressed = vec.compressed(spec.k, spec.l)
            if compressed.norm() == 0.0:
                logger.debug("dropping witness term annihilated by truncation")
                continue
            terms.append((lam, compressed.normalized()))
        return replace(self, terms=tuple(terms), certification=None)

    def embed(self, dim_a: int, dim_b: int) -> "FiniteRankWitness":
        """Same witness on a larger product space (zero-padded terms)."""
        self._require_finite()
        return replace(self, terms=tuple((lam, vec.padded(dim_a, dim_b))
                                         for lam, vec in self.terms))

    def product_expectation(self, i: int, j: int) -> float:
        """<ij|W|ij>; equals alpha for basis products outside the terms' support."""
        self._require_finite()
        value = self.alpha
        for lam, vec in self.terms:
            if i < vec.dim_a and j < vec.dim_b:
                value += lam * abs(vec.coefficients[i, j]) ** 2
        return float(value)

    def _require_finite(self) -> None:
        if not self.is_finite:
            raise ValidationError("operation needs a finite witness; truncate it first",
                                  field="terms")
