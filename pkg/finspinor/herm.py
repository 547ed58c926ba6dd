"""The real N^2-dimensional space Herm(N) and the map L: SL(N,C) -> FL(N^2,R).

An element ``X`` of Herm(N) has components ``X^{b c.}`` (one upper plain and
one upper dotted index) forming a Hermitian matrix.  Dual elements ``E^alpha``
carry two lower indices; their matrix view is ``||E^alpha_{c. b}||`` so that
the full contraction with ``E_beta`` reads ``trace(E^alpha @ E_beta)`` and

    L(C)^alpha_beta = trace(E^alpha C E_beta C^+).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import TOL, TOL_KERNEL
from .errors import ConventionError, DomainError, NotABasisError
from .spinors import BasisChange, Spintensor, Valency, _check_dim, _frozen, compose

logger = logging.getLogger(__name__)

BASIS_ID = "gellmann-v1"


def _hermitian_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def _as_square(matrix, name: str = "matrix") -> np.ndarray:
    m = np.array(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError(f"{name} entries must be finite")
    return m


@dataclass(frozen=True, eq=False)
class HermVector:
    """A valency [k=1, l=1] spintensor with Hermitian components ``X^{b c.}``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _as_square(self.matrix, "Herm(N) element")
        _check_dim(m.shape[0])
        scale = max(1.0, float(np.max(np.abs(m))))
        if _hermitian_defect(m) > TOL * scale:
            raise DomainError(
                f"matrix violates Hermitian symmetry by {_hermitian_defect(m):.3g}"
            )
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_spintensor(self) -> Spintensor:
        return Spintensor(self.dim, Valency(k=1, l=1), self.matrix)

    @classmethod
    def from_spintensor(cls, s: Spintensor) -> "HermVector":
        if s.valency != Valency(k=1, l=1):
            raise DomainError(f"Herm(N) elements have valency (1, 1, 0, 0), got {s.valency.counts()}")
        return cls(s.components)


@dataclass(frozen=True, eq=False)
class HermBasis:
    """An ordered basis ``E_alpha`` of Herm(N) with its dual ``E^alpha``."""

    E: tuple
    E_dual: tuple
    basis_id: str = "custom"

    @property
    def dim(self) -> int:
        return self.E[0].dim

    @property
    def size(self) -> int:
        return len(self.E)

    def matrices(self) -> np.ndarray:
        """Stacked ``E_alpha`` matrices, shape ``(N^2, N, N)``."""
        return np.stack([e.matrix for e in self.E])

    def dual_matrices(self) -> np.ndarray:
        """Stacked ``||E^alpha_{c. b}||`` matrices, shape ``(N^2, N, N)``."""
        return np.stack(self.E_dual)

    def pairing_matrix(self) -> np.ndarray:
        """``contraction(E^alpha (x) E_beta)`` for all alpha, beta."""
        return np.einsum("acb,gbc->ag", self.dual_matrices(), self.matrices())

    def dual_spintensor(self, alpha: int) -> Spintensor:
        """``E^alpha`` as a valency [m=1, n=1] spintensor."""
        return Spintensor(self.dim, Valency(m=1, n=1), self.E_dual[alpha].T)


def _check_basis_list(E) -> list[HermVector]:
    E = [e if isinstance(e, HermVector) else HermVector(e) for e in E]
    if not E:
        raise NotABasisError("empty list of Hermitian matrices")
    n = E[0].dim
    if any(e.dim != n for e in E):
        raise DomainError("basis matrices have mixed dimensions")
    if len(E) != n * n:
        raise NotABasisError(f"Herm({n}) needs {n * n} basis elements, got {len(E)}")
    return E


def dual_basis(E) -> list[np.ndarray]:
    """The unique ``E^alpha`` with ``contraction(E^alpha (x) E_beta) = delta``.

    ``E^alpha = sum_beta (G^-1)^{alpha beta} E_beta`` with the real Gram matrix
    ``G_{alpha beta} = trace(E_alpha E_beta)``.
    """
    E = _check_basis_list(E)
    mats = np.stack([e.matrix for e in E])
    gram = np.einsum("aij,bji->ab", mats, mats)
    if np.max(np.abs(gram.imag)) > TOL * max(1.0, float(np.max(np.abs(gram)))):
        raise ConventionError("Gram matrix of Hermitian matrices is not real")
    gram = gram.real

    # scale-aware rank test; a singular Gram matrix means linear dependence over R
    if np.linalg.matrix_rank(gram) < len(E):
        raise NotABasisError("matrices are linearly dependent over R (singular Gram matrix)")
    inv = np.linalg.inv(gram)
    dual = np.einsum("ab,bij->aij", inv, mats)
    return [_frozen(0.5 * (d + d.conj().T)) for d in dual]


def make_herm_basis(E, basis_id: str = "custom", E_dual=None) -> HermBasis:
    """Build a :class:`HermBasis`, computing (or validating) the dual set."""
    E = _check_basis_list(E)
    if E_dual is None:
        E_dual = dual_basis(E)
    else:
        E_dual = [_frozen(_as_square(d, "dual matrix")) for d in E_dual]
        if len(E_dual) != len(E) or any(d.shape != E[0].matrix.shape for d in E_dual):
            raise NotABasisError("dual set does not match the basis in size")
    basis = HermBasis(tuple(E), tuple(E_dual), basis_id)

    defect = float(np.max(np.abs(basis.pairing_matrix() - np.eye(len(E)))))
    if defect > TOL:
        raise NotABasisError(f"dual pairing deviates from identity by {defect:.3g}")
    return basis


def gellmann_matrices(n: int) -> list[np.ndarray]:
    """Identity followed by the generalized Gell-Mann matrices.

    Order: identity; symmetric pairs ``(j, k)``, ``j < k`` lexicographic;
    antisymmetric pairs likewise; diagonal traceless ``l = 1..N-1``.
    For ``N = 2`` this is ``(sigma_0, sigma_1, sigma_2, sigma_3)``.
    """
    n = _check_dim(n)
    out = [np.eye(n, dtype=np.complex128)]
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    for j, k in pairs:
        m = np.zeros((n, n), dtype=np.complex128)
        m[j, k] = m[k, j] = 1
        out.append(m)
    for j, k in pairs:
        m = np.zeros((n, n), dtype=np.complex128)
        m[j, k] = -1j
        m[k, j] = 1j
        out.append(m)
    for l in range(1, n):
        diag = np.zeros(n, dtype=np.complex128)
        diag[:l] = 1
        diag[l] = -l
        out.append(np.sqrt(2 / (l * (l + 1))) * np.diag(diag))
    return out


@lru_cache(maxsize=None)
def standard_herm_basis(n: int) -> HermBasis:
    """Identity plus generalized Gell-Mann basis with its dual set."""
    n = _check_dim(n)
    basis = make_herm_basis(gellmann_matrices(n), basis_id=BASIS_ID)
    logger.debug(f"Built standard Herm({n}) basis with {basis.size} elements")
    return basis


# --------------------------------------------------------------------
# The epimorphism L
# --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FLMatrix:
    """``L(C)^alpha_beta``: row ``alpha``, column ``beta``."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        size = self.dim * self.dim
        if entries.shape != (size, size):
            raise DomainError(f"FL({size},R) matrix must be {size}x{size}, got {entries.shape}")
        object.__setattr__(self, "entries", _frozen(entries))

    def __matmul__(self, other: "FLMatrix") -> "FLMatrix":
        if not isinstance(other, FLMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise DomainError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return FLMatrix(self.dim, self.entries @ other.entries)

    def inverse(self) -> "FLMatrix":
        return FLMatrix(self.dim, np.linalg.inv(self.entries))

    def deviation_from_identity(self) -> float:
        return float(np.max(np.abs(self.entries - np.eye(self.entries.shape[0]))))


def _check_pair(C: BasisChange, basis: HermBasis):
    if C.dim != basis.dim:
        raise DomainError(f"basis change dimension {C.dim} does not match Herm({basis.dim})")


def transform_herm_basis(C: BasisChange, basis: HermBasis) -> np.ndarray:
    """``E'_beta = C E_beta C^+`` as a stack of matrices."""
    _check_pair(C, basis)
    return np.einsum("ij,bjk,lk->bil", C.c, basis.matrices(), C.c.conj())


def L_traces(C: BasisChange, basis: HermBasis) -> np.ndarray:
    """Complex traces ``trace(E^alpha C E_beta C^+)`` before the realness check."""
    primed = transform_herm_basis(C, basis)
    return np.einsum("acb,gbc->ag", basis.dual_matrices(), primed)


def epimorphism_L(C: BasisChange, basis: HermBasis, tol: float = TOL) -> FLMatrix:
    """``L(C)^alpha_beta = trace(E^alpha C E_beta C^+)``."""
    raw = L_traces(C, basis)
    residue = float(np.max(np.abs(raw.imag)))
    scale = max(1.0, float(np.max(np.abs(raw.real))))
    if residue > tol * scale:
        raise ConventionError(f"L(C) has imaginary residue {residue:.3g}")
    return FLMatrix(basis.dim, raw.real)


def check_homomorphism(B: BasisChange, C: BasisChange, basis: HermBasis) -> float:
    """``max |L(BC) - L(B) L(C)|`` entrywise."""
    _check_pair(B, basis)
    _check_pair(C, basis)
    lhs = epimorphism_L(compose(B, C), basis).entries
    rhs = (epimorphism_L(B, basis) @ epimorphism_L(C, basis)).entries
    return float(np.max(np.abs(lhs - rhs)))


def is_in_kernel(C: BasisChange, basis: HermBasis, tol: float = TOL_KERNEL) -> bool:
    """True iff ``L(C)`` is the identity (``C`` is a scalar ``N``-th root of unity)."""
    return epimorphism_L(C, basis).deviation_from_identity() <= tol


def conjugation_residual(C: BasisChange, basis: HermBasis) -> float:
    """``max_beta ||C E_beta C^+ - sum_gamma L^gamma_beta E_gamma||``."""
    L = epimorphism_L(C, basis).entries
    primed = transform_herm_basis(C, basis)
    expanded = np.einsum("gb,gij->bij", L, basis.matrices())
    return float(np.max(np.abs(primed - expanded)))


# --------------------------------------------------------------------
# Components of Herm(N) vectors
# --------------------------------------------------------------------

def vector_components(X, basis: HermBasis, tol: float = TOL) -> np.ndarray:
    """Real ``X^alpha`` with ``X = sum_alpha X^alpha E_alpha``."""
    if not isinstance(X, HermVector):
        X = HermVector(X)
    if X.dim != basis.dim:
        raise DomainError(f"Herm({X.dim}) vector does not match Herm({basis.dim}) basis")
    raw = np.einsum("acb,bc->a", basis.dual_matrices(), X.matrix)
    residue = float(np.max(np.abs(raw.imag)))
    if residue > tol * max(1.0, float(np.max(np.abs(raw.real)))):
        raise ConventionError(f"components have imaginary residue {residue:.3g}")
    return raw.real


def assemble(components, basis: HermBasis) -> HermVector:
    """``sum_alpha X^alpha E_alpha``."""
    x = np.asarray(components, dtype=float).reshape(-1)
    if x.shape[0] != basis.size:
        raise DomainError(f"expected {basis.size} components, got {x.shape[0]}")
    return HermVector(np.einsum("a,aij->ij", x, basis.matrices()))


def primed_components(components, C: BasisChange, basis: HermBasis) -> np.ndarray:
    """``X'^beta = L(C^-1)^beta_alpha X^alpha``."""
    x = np.asarray(components, dtype=float).reshape(-1)
    if x.shape[0] != basis.size:
        raise DomainError(f"expected {basis.size} components, got {x.shape[0]}")
    return epimorphism_L(C.inverse(), basis).entries @ x


# --------------------------------------------------------------------
# N = 2 Lorentz diagnostics
# --------------------------------------------------------------------

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])


def minkowski_defect(L: FLMatrix) -> float:
    """``max |L^T eta L - eta|`` for a 4x4 matrix."""
    if L.dim != 2:
        raise DomainError("Minkowski check applies to N = 2 only")
    m = L.entries
    return float(np.max(np.abs(m.T @ MINKOWSKI @ m - MINKOWSKI)))


def is_proper_orthochronous(L: FLMatrix, tol: float = TOL_KERNEL) -> bool:
    """``L^T eta L = eta``, ``det L = 1`` and ``L^0_0 >= 1``, each to ``tol``."""
    m = L.entries
    return (
        minkowski_defect(L) <= tol
        and abs(float(np.linalg.det(m)) - 1.0) <= tol
        and m[0, 0] >= 1.0 - tol
    )
