"""
Sequence vectors - infinite shifted-diagonal bipartite vectors

A SequenceVector is |w> = n * sum_i c_i |(i+s) i> on l2 (x) l2, where the
raw weights c_i come from a closed-form WeightFamily and n normalizes the
vector. Its coefficient matrix is a shifted diagonal, so the operator norm
is the supremum of the normalized weights and every truncation is exact.

Supported families:
- inverse-linear   c_i = 1/(i+1)
- geometric(r)     c_i = r**i, |r| < 1
- uniform(n)       c_i = 1 for i < n (finite support)
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from .bipartite import BipartiteVector
from .errors import ValidationError

logger = logging.getLogger(__name__)

_FAMILY_PATTERN = re.compile(r"^\s*([a-z-]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")

# Longest partial sum used for numeric inner products between families
_INNER_SUM_LIMIT = 1_000_000


@dataclass(frozen=True)
class WeightFamily:
    """
    Closed-form weight sequence.

    Attributes:
        kind: "inverse-linear", "geometric" or "uniform"
        parameter: ratio r for geometric, support size n for uniform
    """
    kind: str
    parameter: Optional[float] = None

    def __post_init__(self):
        if self.kind == "inverse-linear":
            if self.parameter is not None:
                raise ValidationError("inverse-linear takes no parameter", field="family")
        elif self.kind == "geometric":
            if self.parameter is None or not (0 < abs(self.parameter) < 1):
                raise ValidationError(f"geometric ratio must satisfy 0 < |r| < 1, "
                                      f"got {self.parameter}", field="family")
        elif self.kind == "uniform":
            if self.parameter is None or int(self.parameter) != self.parameter \
                    or self.parameter < 1:
                raise ValidationError(f"uniform support must be a positive integer, "
                                      f"got {self.parameter}", field="family")
        else:
            raise ValidationError(f"unknown weight family '{self.kind}'", field="family")

    @classmethod
    def parse(cls, label: str) -> "WeightFamily":
        """Parse "inverse-linear", "geometric(0.5)" or "uniform(3)"."""
        match = _FAMILY_PATTERN.match(label or "")
        if not match:
            raise ValidationError(f"cannot parse weight family '{label}'", field="family")
        kind, argument = match.group(1), match.group(2)
        if argument is None:
            return cls(kind)
        try:
            value = float(argument)
        except ValueError:
            raise ValidationError(f"bad parameter in weight family '{label}'", field="family")
        return cls(kind, value)

    @property
    def label(self) -> str:
        if self.kind == "inverse-linear":
            return self.kind
        if self.kind == "uniform":
            return f"uniform({int(self.parameter)})"
        return f"geometric({self.parameter!r})"

    def raw(self, indices: np.ndarray) -> np.ndarray:
        """Unnormalized weights c_i."""
        indices = np.asarray(indices, dtype=float)
        if self.kind == "inverse-linear":
            return 1.0 / (indices + 1.0)
        if self.kind == "geometric":
            return np.power(self.parameter, indices)
        return np.where(indices < self.parameter, 1.0, 0.0)

    def squared_sum(self) -> float:
        """sum_i c_i**2 in closed form."""
        if self.kind == "inverse-linear":
            return math.pi ** 2 / 6.0
        if self.kind == "geometric":
            return 1.0 / (1.0 - self.parameter ** 2)
        return float(self.parameter)

    def tail_mass(self, length: int) -> float:
        """Normalized squared weight discarded when keeping the first `length` terms."""
        if self.kind == "inverse-linear":
            # sum_{i >= N} 1/(i+1)^2 = trigamma(N + 1)
            return float(special.polygamma(1, length + 1)) * 6.0 / math.pi ** 2
        if self.kind == "geometric":
            return float(self.parameter ** (2 * length))
        return max(0.0, self.parameter - length) / self.parameter

    def support(self) -> Optional[int]:
        return int(self.parameter) if self.kind == "uniform" else None

    def sup_raw(self) -> float:
        # every supported family is largest at i = 0
        return 1.0

    def truncation_length(self, tail_tol: float, cap: int) -> int:
        """Smallest N with tail_mass(N) < tail_tol, clipped to [1, cap]."""
        support = self.support()
        if support is not None:
            return max(1, min(support, cap))
        if self.kind == "geometric":
            if tail_tol <= 0:
                return cap
            needed = math.ceil(math.log(tail_tol) / (2.0 * math.log(abs(self.parameter))))
            while needed > 1 and self.tail_mass(needed - 1) < tail_tol:
                needed -= 1
            while self.tail_mass(needed) >= tail_tol:
                needed += 1
            return max(1, min(needed, cap))
        # inverse-linear: tail ~ 6 / (pi^2 N); bisect on the exact trigamma
        low, high = 1, 1
        while self.tail_mass(high) >= tail_tol and high < cap:
            high = min(2 * high, cap)
        if self.tail_mass(high) >= tail_tol:
            return cap
        while low < high:
            mid = (low + high) // 2
            if self.tail_mass(mid) < tail_tol:
                high = mid
            else:
                low = mid + 1
        return low


@dataclass(frozen=True)
class SequenceVector:
    """Normalized shifted-diagonal vector n * sum_i c_i |(i + row_shift) i>."""
    family: WeightFamily
    row_shift: int = 0

    def __post_init__(self):
        if self.row_shift < 0:
            raise ValidationError(f"row shift must be >= 0, got {self.row_shift}",
                                  field="shift")

    @classmethod
    def from_label(cls, label: str, row_shift: int = 0) -> "SequenceVector":
        return cls(WeightFamily.parse(label), int(row_shift))

    @property
    def normalizer(self) -> float:
        return 1.0 / math.sqrt(self.family.squared_sum())

    def weights(self, count: int) -> np.ndarray:
        """First `count` normalized weights."""
        return self.normalizer * self.family.raw(np.arange(count))

    def tail_mass(self, length: int) -> float:
        return self.family.tail_mass(length)

    def compress(self, rows: int, cols: int) -> BipartiteVector:
        """
        Compression onto the leading rows x cols block, not renormalized.

        Args:
            rows: basis vectors kept on the first factor
            cols: basis vectors kept on the second factor

        Returns:
            BipartiteVector of shape rows x cols
        """
        coeffs = np.zeros((rows, cols), dtype=complex)
        count = max(0, min(cols, rows - self.row_shift))
        if count:
            index = np.arange(count)
            coeffs[index + self.row_shift, index] = self.weights(count)
        return BipartiteVector(coeffs)

    def inner(self, other: "SequenceVector") -> float:
        """<self|other>, exact for equal or differently shifted vectors."""
        if self.row_shift != other.row_shift:
            return 0.0
        if self.family == other.family:
            return 1.0
        length = max(
            self.family.truncation_length(1e-20, _INNER_SUM_LIMIT),
            other.family.truncation_length(1e-20, _INNER_SUM_LIMIT),
        )
        return float(np.dot(self.weights(length), other.weights(length)))


def shift_family_norm(vector: SequenceVector) -> float:
    """Operator norm of the shifted-diagonal coefficient matrix: sup_i |n c_i|."""
    return vector.normalizer * vector.family.sup_raw()


@dataclass(frozen=True)
class SequenceMixture:
    """sum_k p_k |w_k><w_k| over orthonormal SequenceVectors."""
    terms: Tuple[Tuple[float, SequenceVector], ...]
    tol: float = 1e-9

    def __post_init__(self):
        terms = tuple((float(p), v) for p, v in self.terms)
        if not terms:
            raise ValidationError("mixture has no terms", field="terms")
        for index, (weight, _) in enumerate(terms):
            if weight < -self.tol:
                raise ValidationError(f"weight {weight:g} is negative",
                                      field=f"terms[{index}].weight")
        total = sum(p for p, _ in terms)
        if abs(total - 1.0) > self.tol:
            raise ValidationError(f"weights sum {total:g} ≠ 1", field="terms")
        vectors = [v for _, v in terms]
        for a in range(len(vectors)):
            for b in range(a + 1, len(vectors)):
                if abs(vectors[a].inner(vectors[b])) > self.tol:
                    raise ValidationError(
                        f"terms {a} and {b} are not orthogonal", field="terms")
        object.__setattr__(self, "terms", terms)

    @property
    def vectors(self) -> List[SequenceVector]:
        return [v for _, v in self.terms]

    @property
    def weights(self) -> List[float]:
        return [p for p, _ in self.terms]

    @property
    def max_shift(self) -> int:
        return max(v.row_shift for v in self.vectors)

    def vector_expectation(self, vector: SequenceVector) -> float:
        """<w|rho|w> computed from exact inner products."""
        return float(sum(p * vector.inner(v) ** 2 for p, v in self.terms))


def mixture_of(weights: Sequence[float], vectors: Sequence[SequenceVector]) -> SequenceMixture:
    if len(weights) != len(vectors):
        raise ValidationError(f"{len(weights)} weights for {len(vectors)} vectors",
                              field="terms")
    return SequenceMixture(tuple(zip(weights, vectors)))
