"""The invariant determinant on Herm(N) and the degree-N Finslerian form.

``det(X^alpha E_alpha) = G_{alpha beta ... gamma} X^alpha X^beta ... X^gamma``
with ``G`` totally symmetric.  Coefficients are the mixed determinants of the
basis matrices, obtained by polarizing ``det``; they are stored once per
sorted index multiset and expanded with multinomial multiplicity on
evaluation.
"""
from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import factorial
from types import MappingProxyType

import numpy as np

from .config import TOL, ZERO_CUTOFF
from .errors import ConventionError, DomainError
from .herm import FLMatrix, HermBasis, HermVector, standard_herm_basis
from .spinors import _check_dim, _frozen

logger = logging.getLogger(__name__)

# index multisets evaluated per batched determinant call
CHUNK = 20000


def det_invariant(X, tol: float = TOL) -> float:
    """``det X``, real by Hermitian symmetry and invariant under SL(N, C)."""
    if not isinstance(X, HermVector):
        X = HermVector(X)
    det = complex(np.linalg.det(X.matrix))
    scale = max(1.0, float(np.max(np.abs(X.matrix))) ** X.dim)
    if abs(det.imag) > tol * scale:
        raise ConventionError(f"det of a Hermitian matrix has imaginary part {det.imag:.3g}")
    return det.real


@lru_cache(maxsize=None)
def _subsets(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    # nonempty subsets of range(n) with their inclusion-exclusion sign
    return tuple(
        (subset, (-1) ** (n - size))
        for size in range(1, n + 1)
        for subset in combinations(range(n), size)
    )


def _polarize(stacks: np.ndarray) -> np.ndarray:
    """Mixed determinants of ``stacks`` with shape ``(batch, N, N, N)``."""
    n = stacks.shape[1]
    total = np.zeros(stacks.shape[0], dtype=np.complex128)
    for subset, sign in _subsets(n):
        total += sign * np.linalg.det(stacks[:, list(subset)].sum(axis=1))
    return total / factorial(n)


def mixed_determinant(A) -> complex:
    """Symmetric multilinear form with ``mixed_determinant([A] * N) == det(A)``."""
    mats = [np.asarray(a, dtype=np.complex128) for a in A]
    if not mats:
        raise DomainError("mixed determinant needs N matrices, got none")
    n = len(mats)
    if any(m.shape != (n, n) for m in mats):
        raise DomainError(f"mixed determinant of {n} arguments needs {n}x{n} matrices")
    return complex(_polarize(np.stack(mats)[np.newaxis])[0])


def _multinomial(indices) -> int:
    out = factorial(len(indices))
    for count in Counter(indices).values():
        out //= factorial(count)
    return out


@dataclass(frozen=True, eq=False)
class FinslerMetric:
    """Symmetric coefficients ``G`` keyed by sorted index tuples.

    ``coefficients`` is a read-only mapping.
    """

    dim: int
    coefficients: Mapping
    basis_id: str = "custom"
    max_imag_residue: float = 0.0
    _indices: np.ndarray = field(init=False, repr=False)
    _weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = _check_dim(self.dim)
        size = n * n
        coeffs = {}
        for key, value in self.coefficients.items():
            key = tuple(sorted(int(i) for i in key))
            if len(key) != n or any(not 0 <= i < size for i in key):
                raise DomainError(f"coefficient index {key} invalid for N={n}")
            if key in coeffs:
                raise DomainError(f"duplicate coefficient multiset {key}")
            coeffs[key] = float(value)
        object.__setattr__(self, "coefficients", MappingProxyType(coeffs))

        keys = [k for k, v in coeffs.items() if v != 0.0]
        indices = np.array(keys, dtype=np.intp).reshape(-1, n)
        weights = np.array([coeffs[k] * _multinomial(k) for k in keys], dtype=float)
        object.__setattr__(self, "_indices", _frozen(indices))
        object.__setattr__(self, "_weights", _frozen(weights))

    @property
    def size(self) -> int:
        return self.dim * self.dim

    def coefficient(self, indices) -> float:
        """``G`` at any ordering of ``indices``."""
        return self.coefficients.get(tuple(sorted(int(i) for i in indices)), 0.0)

    def nonzero(self) -> dict:
        return {k: v for k, v in self.coefficients.items() if v != 0.0}


def metric_coefficients(basis: HermBasis, tol: float = TOL,
                        zero_cutoff: float = ZERO_CUTOFF) -> FinslerMetric:
    """``G_{alpha...gamma} = mixed_determinant(E_alpha, ..., E_gamma)``."""
    n = basis.dim
    mats = basis.matrices()
    keys = list(combinations_with_replacement(range(basis.size), n))
    logger.debug(f"Extracting {len(keys)} metric coefficients for N={n}")

    values = np.empty(len(keys), dtype=np.complex128)
    index = np.array(keys, dtype=np.intp)
    for start in range(0, len(keys), CHUNK):
        chunk = index[start:start + CHUNK]
        values[start:start + CHUNK] = _polarize(mats[chunk])

    residue = float(np.max(np.abs(values.imag))) if len(keys) else 0.0
    if residue > tol:
        raise ConventionError(f"metric coefficients have imaginary residue {residue:.3g}")
    real = values.real
    real[np.abs(real) < zero_cutoff] = 0.0
    return FinslerMetric(
        n,
        {k: float(v) for k, v in zip(keys, real)},
        basis_id=basis.basis_id,
        max_imag_residue=residue,
    )


@lru_cache(maxsize=None)
def standard_metric(n: int) -> FinslerMetric:
    """Metric coefficients relative to :func:`standard_herm_basis`."""
    return metric_coefficients(standard_herm_basis(n))


def finsler_power(X, metric: FinslerMetric) -> float | np.ndarray:
    """``G_{alpha beta ... gamma} X^alpha X^beta ... X^gamma``.

    ``X`` may also be a ``(samples, N^2)`` array, giving one value per row.
    """
    x = np.asarray(X, dtype=float)
    if x.shape[-1] != metric.size or x.ndim not in (1, 2):
        raise DomainError(f"expected {metric.size} components, got shape {x.shape}")
    if x.ndim == 1:
        return float(np.prod(x[metric._indices], axis=-1) @ metric._weights)

    terms = max(1, metric._indices.size)
    rows = max(1, (4 * CHUNK * 64) // terms)
    out = np.empty(x.shape[0], dtype=float)
    for start in range(0, x.shape[0], rows):
        block = x[start:start + rows]
        out[start:start + rows] = np.prod(block[:, metric._indices], axis=-1) @ metric._weights
    return out


def check_forminvariance(metric: FinslerMetric, L: FLMatrix, samples: int,
                         rng: np.random.Generator | None = None,
                         relative: bool = False) -> float:
    """``max |X^N - X'^N|`` over random ``X``, with ``X' = L^-1 X``.

    With ``relative`` each deviation is divided by ``max(1, max|X'|^N)``,
    the size of the terms the primed evaluation sums.
    """
    if L.dim != metric.dim:
        raise DomainError(f"FL matrix for N={L.dim} does not match metric for N={metric.dim}")
    if samples < 1:
        return 0.0
    rng = np.random.default_rng() if rng is None else rng
    X = rng.uniform(-1.0, 1.0, size=(int(samples), metric.size))
    primed = np.linalg.solve(L.entries, X.T).T
    deviation = np.abs(finsler_power(X, metric) - finsler_power(primed, metric))
    if relative:
        deviation /= np.maximum(1.0, np.max(np.abs(primed), axis=1) ** metric.dim)
    return float(np.max(deviation))
