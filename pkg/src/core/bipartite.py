"""
Bipartite - vectors and density operators on a finite product space

A vector |w> = sum d_ij |ij> on C^dim_a (x) C^dim_b is stored through its
coefficient matrix D = (d_ij). Product basis index (i, j) maps to the flat
position i * dim_b + j (row-major), so `ket()` is `D.ravel()` and dense
operators are laid out the same way.

Features:
- BipartiteVector: immutable coefficient matrix with ket/projector helpers
- DensityOperator: validated Hermitian, unit-trace, PSD matrix with an
  optional explicit pure-state decomposition
- product_overlap, coefficient_operator_norm, assemble_mixture, partial_trace

Usage:
    from core.bipartite import BipartiteVector, assemble_mixture

    bell = BipartiteVector(np.eye(2) / np.sqrt(2))
    rho = assemble_mixture([(1.0, bell)])
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .errors import DimensionMismatchError, ValidationError
from .tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)

# (weight, vector) pairs of a pure-state decomposition
Decomposition = Tuple[Tuple[float, "BipartiteVector"], ...]


def _readonly(array: np.ndarray) -> np.ndarray:
    frozen = np.array(array, dtype=complex, copy=True)
    frozen.setflags(write=False)
    return frozen


def _local_vector(vector, dim: int, axis: str) -> np.ndarray:
    local = np.asarray(vector, dtype=complex).ravel()
    if local.shape[0] != dim:
        raise DimensionMismatchError(axis, dim, local.shape[0])
    return local


@dataclass(frozen=True, eq=False)
class BipartiteVector:
    """
    Vector in C^dim_a (x) C^dim_b held as its dim_a x dim_b coefficient matrix.

    The squared Frobenius norm of `coefficients` is the squared vector norm.
    """
    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[0] < 1 or coeffs.shape[1] < 1:
            raise ValidationError(
                f"coefficients must be a non-empty matrix, got shape {coeffs.shape}",
                field="coefficients",
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValidationError("coefficients contain non-finite entries",
                                  field="coefficients")
        object.__setattr__(self, "coefficients", _readonly(coeffs))

    @classmethod
    def from_amplitudes(cls, amplitudes, dim_a: int, dim_b: int) -> "BipartiteVector":
        """Build from a flat row-major amplitude list of length dim_a * dim_b."""
        flat = np.asarray(amplitudes, dtype=complex).ravel()
        if flat.shape[0] != dim_a * dim_b:
            raise DimensionMismatchError("amplitudes", dim_a * dim_b, flat.shape[0])
        return cls(flat.reshape(dim_a, dim_b))

    @classmethod
    def product(cls, alpha, beta) -> "BipartiteVector":
        """|alpha> (x) |beta>, coefficient matrix alpha beta^T."""
        alpha = np.asarray(alpha, dtype=complex).ravel()
        beta = np.asarray(beta, dtype=complex).ravel()
        return cls(np.outer(alpha, beta))

    @classmethod
    def basis(cls, i: int, j: int, dim_a: int, dim_b: int) -> "BipartiteVector":
        if not (0 <= i < dim_a and 0 <= j < dim_b):
            raise ValidationError(f"basis index ({i}, {j}) outside {dim_a}x{dim_b}",
                                  field="index")
        coeffs = np.zeros((dim_a, dim_b), dtype=complex)
        coeffs[i, j] = 1.0
        return cls(coeffs)

    @property
    def dim_a(self) -> int:
        return self.coefficients.shape[0]

    @property
    def dim_b(self) -> int:
        return self.coefficients.shape[1]

    @property
    def dims(self) -> Tuple[int, int]:
        return self.coefficients.shape

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def normalized(self) -> "BipartiteVector":
        norm = self.norm()
        if norm == 0.0:
            raise ValidationError("cannot normalize the zero vector", field="coefficients")
        return BipartiteVector(self.coefficients / norm)

    def ket(self) -> np.ndarray:
        """Flat state vector in the row-major product basis."""
        return self.coefficients.ravel()

    def projector(self) -> np.ndarray:
        ket = self.ket()
        return np.outer(ket, ket.conj())

    def inner(self, other: "BipartiteVector") -> complex:
        """<self|other>."""
        _check_dims(self.dims, other.dims)
        return complex(np.vdot(self.coefficients, other.coefficients))

    def padded(self, dim_a: int, dim_b: int) -> "BipartiteVector":
        """Embed into a larger product space by appending zero coefficients."""
        if dim_a < self.dim_a or dim_b < self.dim_b:
            raise ValidationError(
                f"cannot pad {self.dim_a}x{self.dim_b} into {dim_a}x{dim_b}",
                field="dims",
            )
        coeffs = np.zeros((dim_a, dim_b), dtype=complex)
        coeffs[: self.dim_a, : self.dim_b] = self.coefficients
        return BipartiteVector(coeffs)

    def compressed(self, rows: int, cols: int) -> "BipartiteVector":
        """(P_rows (x) Q_cols)|w> restricted to the leading block, unnormalized."""
        if rows > self.dim_a or cols > self.dim_b:
            raise ValidationError(
                f"truncation {rows}x{cols} exceeds dims {self.dim_a}x{self.dim_b}",
                field="truncate",
            )
        return BipartiteVector(self.coefficients[:rows, :cols])


def _check_dims(expected: Tuple[int, int], got: Tuple[int, int]) -> None:
    if expected[0] != got[0]:
        raise DimensionMismatchError("first factor", expected[0], got[0])
    if expected[1] != got[1]:
        raise DimensionMismatchError("second factor", expected[1], got[1])


@dataclass(frozen=True)
class TruncationSpec:
    """Keep the leading k basis vectors of the first factor and l of the second."""
    k: int
    l: int

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ValidationError(f"truncation sizes must be >= 1, got ({self.k}, {self.l})",
                                  field="truncate")


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Density operator on C^dim_a (x) C^dim_b.

    Attributes:
        matrix: (dim_a*dim_b) square matrix in the row-major product basis
        dim_a: first factor dimension
        dim_b: second factor dimension
        terms: optional pure-state decomposition the matrix was built from;
            assemble_mixture validates it, so the dense Hermitian and
            eigenvalue checks are skipped when it is present
        tol: tolerance used for the Hermitian / trace / PSD validation
    """
    matrix: np.ndarray
    dim_a: int
    dim_b: int
    terms: Optional[Decomposition] = None
    tol: float = DEFAULT_TOLERANCES.validation

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValidationError(f"dims must be positive, got ({self.dim_a}, {self.dim_b})",
                                  field="dims")
        matrix = np.asarray(self.matrix, dtype=complex)
        dim = self.dim_a * self.dim_b
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"matrix must be square, got shape {matrix.shape}",
                                  field="matrix")
        if matrix.shape[0] != dim:
            raise DimensionMismatchError("matrix", dim, matrix.shape[0])
        if not np.all(np.isfinite(matrix)):
            raise ValidationError("matrix contains non-finite entries", field="matrix")

        trace = float(np.real(np.trace(matrix)))
        if abs(trace - 1.0) > self.tol:
            raise ValidationError(f"trace {trace:.12g} != 1", field="matrix")
        if self.terms is not None:
            # PSD by construction: non-negative weights on unit vectors
            object.__setattr__(self, "matrix", _readonly(matrix))
            object.__setattr__(self, "terms", tuple((float(p), v) for p, v in self.terms))
            return

        asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asymmetry > self.tol:
            raise ValidationError(f"matrix is not Hermitian (deviation {asymmetry:.3g})",
                                  field="matrix")
        hermitian = (matrix + matrix.conj().T) / 2
        min_eig = float(linalg.eigvalsh(hermitian)[0])
        if min_eig < -self.tol:
            raise ValidationError(f"matrix is not positive semidefinite "
                                  f"(minimum eigenvalue {min_eig:.3g})", field="matrix")
        object.__setattr__(self, "matrix", _readonly(hermitian))

    @classmethod
    def from_matrix(cls, matrix, dim_a: int, dim_b: int,
                    tol: float = DEFAULT_TOLERANCES.validation) -> "DensityOperator":
        return cls(np.asarray(matrix, dtype=complex), dim_a, dim_b, None, tol)

    @classmethod
    def pure(cls, vector: BipartiteVector,
             tol: float = DEFAULT_TOLERANCES.validation) -> "DensityOperator":
        return assemble_mixture([(1.0, vector)], tol=tol)

    @property
    def dims(self) -> Tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def expectation(self, operator: np.ndarray) -> float:
        """Real part of Tr(operator rho)."""
        operator = np.asarray(operator, dtype=complex)
        if operator.shape != self.matrix.shape:
            raise DimensionMismatchError("operator", self.dim, operator.shape[0])
        return float(np.real(np.einsum("ij,ji->", operator, self.matrix)))

    def vector_expectation(self, vector: BipartiteVector) -> float:
        """<w|rho|w>."""
        _check_dims(self.dims, vector.dims)
        ket = vector.ket()
        if self.terms:
            return float(sum(p * abs(np.vdot(ket, v.ket())) ** 2 for p, v in self.terms))
        return float(np.real(np.vdot(ket, self.matrix @ ket)))

    def purity(self) -> float:
        return float(np.real(np.einsum("ij,ji->", self.matrix, self.matrix)))

    def spectral_terms(self, tol: Optional[float] = None) -> List[Tuple[float, BipartiteVector]]:
        """
        Pure-state decomposition from the eigendecomposition.

        Args:
            tol: eigenvalues below -tol abort; eigenvalues in [-tol, tol] are dropped

        Returns:
            (eigenvalue, eigenvector) pairs, largest eigenvalue first
        """
        tol = self.tol if tol is None else tol
        values, vectors = linalg.eigh(self.matrix)
        if values[0] < -tol:
            raise ValidationError(f"negative eigenvalue {values[0]:.3g} in decomposition",
                                  field="matrix")
        terms = []
        for index in range(len(values) - 1, -1, -1):
            if values[index] > tol:
                vec = BipartiteVector(vectors[:, index].reshape(self.dim_a, self.dim_b))
                terms.append((float(values[index]), vec))
        return terms

    def orthonormal_terms(self, tol: Optional[float] = None) -> List[Tuple[float, BipartiteVector]]:
        """Stored decomposition when it is orthonormal, spectral otherwise."""
        tol = self.tol if tol is None else tol
        if self.terms:
            vectors = [v for _, v in self.terms]
            if is_orthonormal(vectors, tol):
                return list(self.terms)
            logger.debug("stored decomposition is not orthonormal, using eigendecomposition")
        return self.spectral_terms(tol)

    def pure_decomposition(self) -> List[Tuple[float, BipartiteVector]]:
        """Explicit terms when available, eigendecomposition otherwise."""
        if self.terms:
            return list(self.terms)
        return self.spectral_terms()

    def padded(self, dim_a: int, dim_b: int) -> "DensityOperator":
        """Same state viewed inside a larger product space."""
        return assemble_mixture(
            [(p, v.padded(dim_a, dim_b)) for p, v in self.pure_decomposition()],
            tol=self.tol,
        )


def is_orthonormal(vectors: Sequence[BipartiteVector], tol: float) -> bool:
    """Gram matrix equals the identity within tol."""
    if not vectors:
        return True
    stacked = np.stack([v.ket() for v in vectors])
    gram = stacked.conj() @ stacked.T
    return bool(np.max(np.abs(gram - np.eye(len(vectors)))) <= tol)


def product_overlap(omega: BipartiteVector, alpha, beta) -> complex:
    """
    <alpha|D|conj(beta)>, equal to the inner product <alpha (x) beta|omega>.

    Args:
        omega: bipartite vector with coefficient matrix D
        alpha: local vector on the first factor
        beta: local vector on the second factor

    Returns:
        Complex overlap
    """
    alpha = _local_vector(alpha, omega.dim_a, "first factor")
    beta = _local_vector(beta, omega.dim_b, "second factor")
    return complex(alpha.conj() @ omega.coefficients @ beta.conj())


def coefficient_operator_norm(omega: BipartiteVector) -> float:
    """Largest singular value of the coefficient matrix."""
    return float(linalg.svdvals(omega.coefficients)[0])


def assemble_mixture(terms: Iterable[Tuple[float, BipartiteVector]],
                     tol: float = DEFAULT_TOLERANCES.validation) -> DensityOperator:
    """
    Dense sum_i p_i |w_i><w_i| that remembers its decomposition.

    Args:
        terms: (weight, vector) pairs; weights >= 0 summing to 1, unit vectors
        tol: tolerance for the weight sum and vector norms

    Returns:
        DensityOperator with `terms` set
    """
    terms = [(float(p), v) for p, v in terms]
    if not terms:
        raise ValidationError("mixture has no terms", field="terms")
    dims = terms[0][1].dims
    for index, (weight, vector) in enumerate(terms):
        if weight < -tol:
            raise ValidationError(f"weight {weight:g} is negative",
                                  field=f"terms[{index}].weight")
        _check_dims(dims, vector.dims)
        if abs(vector.norm() - 1.0) > tol:
            raise ValidationError(f"vector norm {vector.norm():.12g} != 1",
                                  field=f"terms[{index}].coefficients")
    total = sum(p for p, _ in terms)
    if abs(total - 1.0) > tol:
        raise ValidationError(f"weights sum {total:g} ≠ 1", field="terms")

    kets = np.stack([v.ket() for _, v in terms])
    weights = np.array([p for p, _ in terms])
    matrix = (kets.T * weights) @ kets.conj()
    return DensityOperator(matrix, dims[0], dims[1], tuple(terms), tol)


def partial_trace(rho: DensityOperator, side: str = "second") -> np.ndarray:
    """
    Trace out one factor.

    Args:
        rho: bipartite state
        side: "first" or "second", the factor that is traced out

    Returns:
        Reduced density matrix of the remaining factor
    """
    blocks = rho.matrix.reshape(rho.dim_a, rho.dim_b, rho.dim_a, rho.dim_b)
    if side == "second":
        return np.einsum("ijkj->ik", blocks)
    if side == "first":
        return np.einsum("ijil->jl", blocks)
    raise ValidationError(f"side must be 'first' or 'second', got '{side}'", field="side")


def admixture(rho: DensityOperator, noise: DensityOperator, t: float) -> DensityOperator:
    """(1 - t) rho + t noise, keeping the decomposition when both have one."""
    if not 0.0 <= t <= 1.0:
        raise ValidationError(f"mixing parameter must lie in [0, 1], got {t}", field="t")
    _check_dims(rho.dims, noise.dims)
    if rho.terms and noise.terms:
        terms = [((1 - t) * p, v) for p, v in rho.terms]
        terms += [(t * p, v) for p, v in noise.terms]
        return assemble_mixture(terms, tol=rho.tol)
    return DensityOperator((1 - t) * rho.matrix + t * noise.matrix,
                           rho.dim_a, rho.dim_b, None, rho.tol)
