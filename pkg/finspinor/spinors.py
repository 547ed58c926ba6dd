"""Finslerian N-spinors, canonical basis changes and the spintensor engine.

Components are always taken relative to a canonical basis
``{eps_1, ..., eps_N}`` (scalar N-product equal to 1).  A basis change is
stored as the matrix ``c`` whose column ``a`` holds the components of the new
basis spinor ``eps'_a``; spinor components then transform with ``d = c^-1``.

Spintensor axes are grouped as

    upper plain | upper dotted | lower plain | lower dotted

and each block is ordered left to right.  Dotted axes transform with the
complex-conjugated coefficients.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

import numpy as np
from sympy.combinatorics.permutations import Permutation

from .config import TOL, TOL_DET
from .errors import DomainError, ConventionError, NotUnimodularError, SingularMatrixError

logger = logging.getLogger(__name__)

BLOCKS = ("upper_plain", "upper_dotted", "lower_plain", "lower_dotted")


def _check_dim(dim) -> int:
    if isinstance(dim, bool) or int(dim) != dim:
        raise DomainError(f"dimension must be an integer, got {dim!r}")
    dim = int(dim)
    if dim < 2:
        raise DomainError(f"dimension must be at least 2, got {dim}")
    return dim


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


# --------------------------------------------------------------------
# Levi-Civita symbol and the scalar N-product
# --------------------------------------------------------------------

def levi_civita(indices) -> int:
    """Sign of ``indices`` (1-based) as a permutation of ``1..N``, 0 on repeats."""
    idx = [int(i) for i in indices]
    n = len(idx)
    if n < 1:
        raise DomainError("Levi-Civita symbol needs at least one index")
    bad = [i for i in idx if i < 1 or i > n]
    if bad:
        raise DomainError(f"indices {bad} out of range 1..{n}")
    if len(set(idx)) != n:
        return 0
    return int(Permutation([i - 1 for i in idx]).signature())


@lru_cache(maxsize=None)
def _permutation_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)
    signs = np.array([Permutation(list(p)).signature() for p in perms], dtype=float)
    return _frozen(perms), _frozen(signs)


@dataclass(frozen=True, eq=False)
class NSpinor:
    """A Finslerian N-spinor given by its components ``xi^a``."""

    components: np.ndarray

    def __post_init__(self):
        comps = np.array(self.components, dtype=np.complex128).reshape(-1)
        _check_dim(comps.shape[0])
        if not np.all(np.isfinite(comps)):
            raise DomainError("spinor components must be finite")
        object.__setattr__(self, "components", _frozen(comps))

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def __repr__(self):
        return f"NSpinor(dim={self.dim}, components={self.components.tolist()})"


def canonical_basis(n: int) -> list[NSpinor]:
    """The unit coordinate spinors ``eps_1, ..., eps_N``."""
    n = _check_dim(n)
    return [NSpinor(row) for row in np.eye(n, dtype=np.complex128)]


def _column_matrix(spinors) -> np.ndarray:
    spinors = list(spinors)
    if not spinors:
        raise DomainError("scalar N-product needs N spinors, got none")
    dims = {s.dim for s in spinors}
    if len(dims) != 1:
        raise DomainError(f"mixed spinor dimensions {sorted(dims)}")
    n = dims.pop()
    if len(spinors) != n:
        raise DomainError(f"scalar N-product needs exactly {n} spinors, got {len(spinors)}")
    return np.stack([s.components for s in spinors], axis=1)


def scalar_n_product(spinors, tol: float = TOL) -> complex:
    """``[xi, eta, ..., lambda] = eps_{ab...c} xi^a eta^b ... lambda^c``.

    Evaluated as the full Levi-Civita expansion and checked against the
    determinant of the column matrix of components.
    """
    m = _column_matrix(spinors)
    n = m.shape[0]
    perms, signs = _permutation_table(n)
    # term for permutation p: prod_j m[p[j], j]
    terms = np.prod(m[perms, np.arange(n)], axis=1)
    value = complex(np.dot(signs, terms))

    scale = float(np.prod(np.linalg.norm(m, axis=0))) or 1.0
    det = complex(np.linalg.det(m))
    if abs(value - det) > 100 * tol * max(scale, 1.0):
        raise ConventionError(
            f"Levi-Civita expansion {value} disagrees with determinant {det}"
        )
    return value


# --------------------------------------------------------------------
# Canonical basis changes
# --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BasisChange:
    """An element of SL(N, C) acting on canonical bases.

    ``c[b, a]`` is the coefficient of ``eps_b`` in ``eps'_a`` and ``d`` is the
    inverse matrix, so that ``sum_a c[b, a] d[a, e] = delta_be``.
    """

    c: np.ndarray
    d: np.ndarray

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def identity(cls, n: int) -> "BasisChange":
        n = _check_dim(n)
        eye = np.eye(n, dtype=np.complex128)
        return cls(_frozen(eye.copy()), _frozen(eye.copy()))

    def inverse(self) -> "BasisChange":
        return BasisChange(self.d, self.c)

    def __repr__(self):
        return f"BasisChange(dim={self.dim}, c={self.c.tolist()})"


def make_basis_change(c, tol_det: float = TOL_DET) -> BasisChange:
    """Validate ``c`` as a unimodular matrix and attach its inverse."""
    c = np.array(c, dtype=np.complex128)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise DomainError(f"basis change must be a square matrix, got shape {c.shape}")
    _check_dim(c.shape[0])
    if not np.all(np.isfinite(c)):
        raise DomainError("basis change entries must be finite")

    det = complex(np.linalg.det(c))
    if det == 0:
        raise SingularMatrixError("basis change matrix is singular")
    if abs(det - 1) > tol_det:
        raise NotUnimodularError(f"det(c) = {det:.6g}, expected 1 within {tol_det:g}")

    try:
        d = np.linalg.inv(c)
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(f"basis change matrix is not invertible: {e}") from e
    if abs(complex(np.linalg.det(d)) - 1) > tol_det:
        raise NotUnimodularError("inverse of basis change is not unimodular")
    return BasisChange(_frozen(c), _frozen(d))


def compose(first: BasisChange, then: BasisChange) -> BasisChange:
    """The change equivalent to applying ``first`` and afterwards ``then``.

    With ``eps' = eps c1`` and ``eps'' = eps' c2`` the composite matrix is
    ``c1 @ c2``, and ``transform(transform(s, first), then)`` equals
    ``transform(s, compose(first, then))``.
    """
    if first.dim != then.dim:
        raise DomainError(f"cannot compose changes of dimension {first.dim} and {then.dim}")
    c = first.c @ then.c
    d = then.d @ first.d
    return BasisChange(_frozen(c), _frozen(d))


def primed_basis(b: BasisChange) -> list[NSpinor]:
    """The spinors ``eps'_a = c_a^b eps_b`` (columns of ``c``)."""
    return [NSpinor(b.c[:, a]) for a in range(b.dim)]


def transform_spinor(s: NSpinor, b: BasisChange) -> NSpinor:
    """Components of ``s`` in the primed basis: ``xi'^a = d^a_b xi^b``."""
    if s.dim != b.dim:
        raise DomainError(f"spinor dimension {s.dim} does not match change dimension {b.dim}")
    return NSpinor(b.d @ s.components)


# --------------------------------------------------------------------
# Spintensors
# --------------------------------------------------------------------

@dataclass(frozen=True)
class Valency:
    """Index counts ``[k l; m n]``: upper plain, upper dotted, lower plain, lower dotted."""

    k: int = 0
    l: int = 0
    m: int = 0
    n: int = 0

    def __post_init__(self):
        for name in ("k", "l", "m", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 0:
                raise DomainError(f"valency count {name}={value!r} must be a nonnegative integer")
            object.__setattr__(self, name, int(value))

    @property
    def rank(self) -> int:
        return self.k + self.l + self.m + self.n

    def counts(self) -> tuple[int, int, int, int]:
        return (self.k, self.l, self.m, self.n)

    def __add__(self, other: "Valency") -> "Valency":
        return Valency(*(a + b for a, b in zip(self.counts(), other.counts())))

    def axis_blocks(self) -> list[str]:
        """Block name of every axis, in storage order."""
        out = []
        for block, count in zip(BLOCKS, self.counts()):
            out.extend([block] * count)
        return out

    def axis(self, block: str, position: int = 0) -> int:
        """Storage axis of the ``position``-th index of ``block``."""
        if block not in BLOCKS:
            raise DomainError(f"unknown index block {block!r}")
        i = BLOCKS.index(block)
        count = self.counts()[i]
        if not 0 <= position < count:
            raise DomainError(f"{block} block has {count} axes, no position {position}")
        return sum(self.counts()[:i]) + position


@dataclass(frozen=True, eq=False)
class Spintensor:
    """Components of a Finslerian N-spintensor of a given valency."""

    dim: int
    valency: Valency
    components: np.ndarray

    def __post_init__(self):
        dim = _check_dim(self.dim)
        comps = np.array(self.components, dtype=np.complex128)
        shape = (dim,) * self.valency.rank
        if comps.size != dim ** self.valency.rank:
            raise DomainError(
                f"valency {self.valency.counts()} at N={dim} needs {dim ** self.valency.rank} "
                f"components, got {comps.size}"
            )
        comps = comps.reshape(shape)
        if not np.all(np.isfinite(comps)):
            raise DomainError("spintensor components must be finite")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "components", _frozen(comps))

    @classmethod
    def scalar(cls, n: int, value: complex = 1.0) -> "Spintensor":
        return cls(n, Valency(), np.array(value, dtype=np.complex128))

    @classmethod
    def from_spinor(cls, s: NSpinor) -> "Spintensor":
        return cls(s.dim, Valency(k=1), s.components)

    @classmethod
    def kronecker_delta(cls, n: int) -> "Spintensor":
        n = _check_dim(n)
        return cls(n, Valency(k=1, m=1), np.eye(n))

    def axis(self, block: str, position: int = 0) -> int:
        return self.valency.axis(block, position)

    def _check_compatible(self, other: "Spintensor"):
        if self.dim != other.dim:
            raise DomainError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.valency != other.valency:
            raise DomainError(
                f"valency mismatch: {self.valency.counts()} vs {other.valency.counts()}"
            )

    def __add__(self, other: "Spintensor") -> "Spintensor":
        if not isinstance(other, Spintensor):
            return NotImplemented
        self._check_compatible(other)
        return Spintensor(self.dim, self.valency, self.components + other.components)

    def __mul__(self, z) -> "Spintensor":
        if isinstance(z, Spintensor):
            return NotImplemented
        return Spintensor(self.dim, self.valency, complex(z) * self.components)

    __rmul__ = __mul__


def tensor_product(s: Spintensor, u: Spintensor) -> Spintensor:
    """``S (x) U`` with each index block of ``S`` followed by the same block of ``U``."""
    if s.dim != u.dim:
        raise DomainError(f"dimension mismatch: {s.dim} vs {u.dim}")
    outer = np.multiply.outer(s.components, u.components)

    # outer axes: s blocks then u blocks; interleave them block by block
    rank_s = s.valency.rank
    order = []
    for block in range(4):
        start_s = sum(s.valency.counts()[:block])
        start_u = rank_s + sum(u.valency.counts()[:block])
        order.extend(range(start_s, start_s + s.valency.counts()[block]))
        order.extend(range(start_u, start_u + u.valency.counts()[block]))
    return Spintensor(s.dim, s.valency + u.valency, np.transpose(outer, order))


def contract(s: Spintensor, upper_slot: int, lower_slot: int) -> Spintensor:
    """Sum over a pair of upper/lower axes of the same kind (plain or dotted)."""
    blocks = s.valency.axis_blocks()
    for slot in (upper_slot, lower_slot):
        if isinstance(slot, bool) or not isinstance(slot, (int, np.integer)) \
                or not 0 <= slot < len(blocks):
            raise DomainError(f"axis id {slot!r} out of range for rank {len(blocks)}")
    upper, lower = blocks[upper_slot], blocks[lower_slot]
    if not upper.startswith("upper"):
        raise DomainError(f"axis {upper_slot} is a {upper} axis, expected an upper one")
    if not lower.startswith("lower"):
        raise DomainError(f"axis {lower_slot} is a {lower} axis, expected a lower one")
    if upper.split("_")[1] != lower.split("_")[1]:
        raise DomainError(f"cannot contract a {upper} axis with a {lower} axis")

    comps = np.trace(s.components, axis1=upper_slot, axis2=lower_slot)
    k, l, m, n = s.valency.counts()
    if upper == "upper_plain":
        valency = Valency(k - 1, l, m - 1, n)
    else:
        valency = Valency(k, l - 1, m, n - 1)
    return Spintensor(s.dim, valency, comps)


def _axis_factors(b: BasisChange) -> dict[str, np.ndarray]:
    # new[i] = sum_j factor[i, j] old[j] along the axis
    return {
        "upper_plain": b.d,
        "upper_dotted": b.d.conj(),
        "lower_plain": b.c.T,
        "lower_dotted": b.c.conj().T,
    }


def transform_spintensor(s: Spintensor, b: BasisChange) -> Spintensor:
    """Components of ``s`` in the primed canonical basis."""
    if s.dim != b.dim:
        raise DomainError(f"spintensor dimension {s.dim} does not match change dimension {b.dim}")
    factors = _axis_factors(b)
    comps = np.array(s.components)
    for axis, block in enumerate(s.valency.axis_blocks()):
        comps = np.moveaxis(np.tensordot(factors[block], comps, axes=([1], [axis])), 0, axis)
    return Spintensor(s.dim, s.valency, comps)


def transform_spintensor_reference(s: Spintensor, b: BasisChange) -> Spintensor:
    """Term-by-term evaluation of the transformation law, for small cases."""
    if s.dim != b.dim:
        raise DomainError(f"spintensor dimension {s.dim} does not match change dimension {b.dim}")
    factors = _axis_factors(b)
    blocks = s.valency.axis_blocks()
    rank = len(blocks)
    out = np.zeros(s.components.shape, dtype=np.complex128)
    for new in product(range(s.dim), repeat=rank):
        total = 0j
        for old in product(range(s.dim), repeat=rank):
            term = s.components[old]
            for axis, block in enumerate(blocks):
                term *= factors[block][new[axis], old[axis]]
            total += term
        out[new] = total
    return Spintensor(s.dim, s.valency, out)
