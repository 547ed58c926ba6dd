"""Seeded invariant suites run by the ``verify`` command.

Each suite draws from its own substream ``make_rng(seed, N, suite number)``
so adding samples to one suite never shifts the inputs of another.
Homomorphism, Lorentz, determinant and form invariance deviations are
absolute.  The other suites whose values grow with their inputs divide by
``max(1, magnitude)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product

import numpy as np

from .herm import (
    L_traces, assemble, check_homomorphism, epimorphism_L, conjugation_residual, minkowski_defect,
    standard_herm_basis, vector_components, HermVector,
)
from .metric import (
    check_forminvariance, det_invariant, finsler_power, mixed_determinant, standard_metric,
)
from .sampling import (
    complex_normal, kernel_element, make_rng, random_hermitian, random_near_identity_sl, random_sl,
    random_spinor,
)
from .spinors import (
    BasisChange, NSpinor, Spintensor, Valency, compose, contract, scalar_n_product,
    tensor_product, transform_spintensor, transform_spintensor_reference,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteResult:
    module: str
    name: str
    n: int
    deviation: float
    bound: float
    # "<=": pass when deviation <= bound; ">": pass when deviation > bound
    comparison: str = "<="

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.deviation):
            return False
        if self.comparison == ">":
            return self.deviation > self.bound
        return self.deviation <= self.bound


def _hadamard(m: np.ndarray) -> float:
    return max(1.0, float(np.prod(np.linalg.norm(m, axis=0))))


def _random_tensor(rng, n: int, valency: Valency) -> Spintensor:
    return Spintensor(n, valency, complex_normal(rng, (n,) * valency.rank))


def _rel(diff, reference) -> float:
    return float(np.max(np.abs(diff))) / max(1.0, float(np.max(np.abs(reference))))


# --------------------------------------------------------------------
# core-algebra
# --------------------------------------------------------------------

def suite_scalar_det_oracle(n, rng, samples):
    worst = 0.0
    for _ in range(samples):
        spinors = [random_spinor(rng, n) for _ in range(n)]
        m = np.stack([s.components for s in spinors], axis=1)
        worst = max(worst, abs(scalar_n_product(spinors) - np.linalg.det(m)) / _hadamard(m))
    return worst


def suite_antisymmetry(n, rng, samples):
    worst = 0.0
    for _ in range(samples):
        spinors = [random_spinor(rng, n) for _ in range(n)]
        i, j = rng.choice(n, size=2, replace=False)
        swapped = list(spinors)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        m = np.stack([s.components for s in spinors], axis=1)
        worst = max(worst, abs(scalar_n_product(spinors) + scalar_n_product(swapped)) / _hadamard(m))
    return worst


def suite_multilinearity(n, rng, samples):
    worst = 0.0
    for _ in range(samples):
        spinors = [random_spinor(rng, n) for _ in range(n)]
        eta = random_spinor(rng, n)
        z = complex(complex_normal(rng, ()))
        slot = int(rng.integers(n))
        mixed = list(spinors)
        mixed[slot] = NSpinor(z * spinors[slot].components + eta.components)
        only_eta = list(spinors)
        only_eta[slot] = eta
        lhs = scalar_n_product(mixed)
        rhs = z * scalar_n_product(spinors) + scalar_n_product(only_eta)
        m = np.stack([s.components for s in mixed], axis=1)
        scale = _hadamard(m) + abs(z) * _hadamard(np.stack([s.components for s in spinors], axis=1))
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def suite_rank_deficient(n, rng, samples):
    worst = 0.0
    for _ in range(samples):
        spinors = [random_spinor(rng, n) for _ in range(n - 1)]
        weights = complex_normal(rng, n - 1)
        spinors.append(NSpinor(sum(w * s.components for w, s in zip(weights, spinors))))
        m = np.stack([s.components for s in spinors], axis=1)
        worst = max(worst, abs(scalar_n_product(spinors)) / _hadamard(m))
    return worst


def suite_identity_transform(n, rng, samples):
    s = _random_tensor(rng, n, Valency(1, 1, 1, 1))
    out = transform_spintensor(s, BasisChange.identity(n))
    return float(np.max(np.abs(out.components - s.components)))


def suite_composition(n, rng, samples):
    worst = 0.0
    for _ in range(max(1, samples // 10)):
        s = _random_tensor(rng, n, Valency(1, 1, 1, 1))
        b1, b2 = random_sl(rng, n), random_sl(rng, n)
        stepwise = transform_spintensor(transform_spintensor(s, b1), b2)
        direct = transform_spintensor(s, compose(b1, b2))
        worst = max(worst, _rel(stepwise.components - direct.components, direct.components))
    return worst


def suite_transform_reference(n, rng, samples):
    s = _random_tensor(rng, n, Valency(1, 1, 1, 1))
    b = random_sl(rng, n)
    fast = transform_spintensor(s, b)
    slow = transform_spintensor_reference(s, b)
    return _rel(fast.components - slow.components, slow.components)


def suite_dual_contraction(n, rng, samples):
    basis = standard_herm_basis(n)
    worst = 0.0
    for alpha, beta in product(range(basis.size), repeat=2):
        t = tensor_product(basis.dual_spintensor(alpha), basis.E[beta].to_spintensor())
        t = contract(t, t.axis("upper_plain"), t.axis("lower_plain"))
        t = contract(t, t.axis("upper_dotted"), t.axis("lower_dotted"))
        worst = max(worst, abs(complex(t.components) - (alpha == beta)))
    return worst


# --------------------------------------------------------------------
# herm-space
# --------------------------------------------------------------------

def suite_realness(n, rng, samples):
    basis = standard_herm_basis(n)
    worst = 0.0
    for _ in range(samples):
        raw = L_traces(random_sl(rng, n), basis)
        worst = max(worst, _rel(raw.imag, raw.real))
    return worst


def suite_homomorphism(n, rng, samples):
    basis = standard_herm_basis(n)
    worst = 0.0
    for _ in range(samples):
        B, C = random_sl(rng, n), random_sl(rng, n)
        worst = max(worst, check_homomorphism(B, C, basis))
    return worst


def suite_inverse(n, rng, samples):
    basis = standard_herm_basis(n)
    worst = 0.0
    for _ in range(samples):
        C = random_sl(rng, n)
        L, L_inv = epimorphism_L(C, basis), epimorphism_L(C.inverse(), basis)
        worst = max(worst, (L_inv @ L).deviation_from_identity() / max(1.0, np.max(np.abs(L.entries))) ** 2)
    return worst


def suite_kernel_scalars(n, rng, samples):
    basis = standard_herm_basis(n)
    return max(epimorphism_L(kernel_element(n, k), basis).deviation_from_identity() for k in range(n))


def suite_kernel_separation(n, rng, samples):
    basis = standard_herm_basis(n)
    return min(
        epimorphism_L(random_sl(rng, n), basis).deviation_from_identity() for _ in range(samples)
    )


def suite_conjugation_residual(n, rng, samples):
    basis = standard_herm_basis(n)
    worst = 0.0
    for _ in range(samples):
        C = random_sl(rng, n)
        scale = max(1.0, float(np.max(np.abs(C.c))) ** 2)
        worst = max(worst, conjugation_residual(C, basis) / scale)
    return worst


def suite_lorentz(n, rng, samples):
    basis = standard_herm_basis(2)
    worst = 0.0
    for _ in range(samples):
        L = epimorphism_L(random_sl(rng, 2), basis)
        worst = max(
            worst,
            minkowski_defect(L),
            abs(float(np.linalg.det(L.entries)) - 1.0),
            max(0.0, 1.0 - float(L.entries[0, 0])),
        )
    return worst


# --------------------------------------------------------------------
# finsler-metric
# --------------------------------------------------------------------

def suite_diagonal_consistency(n, rng, samples):
    basis, metric = standard_herm_basis(n), standard_metric(n)
    worst = 0.0
    for _ in range(samples):
        X = HermVector(random_hermitian(rng, n))
        det = det_invariant(X)
        worst = max(worst, abs(finsler_power(vector_components(X, basis), metric) - det) / max(1.0, abs(det)))
    return worst


def suite_symmetry(n, rng, samples):
    basis, metric = standard_herm_basis(n), standard_metric(n)
    mats = basis.matrices()
    worst = 0.0
    for _ in range(max(1, samples // 10)):
        indices = rng.integers(basis.size, size=n)
        shuffled = rng.permutation(indices)
        value = mixed_determinant(mats[shuffled])
        worst = max(worst, abs(value - metric.coefficient(indices)))
    return worst


def suite_homogeneity(n, rng, samples):
    metric = standard_metric(n)
    worst = 0.0
    for _ in range(samples):
        x = rng.uniform(-1.0, 1.0, metric.size)
        t = rng.uniform(-2.0, 2.0)
        expected = t ** n * finsler_power(x, metric)
        worst = max(worst, abs(finsler_power(t * x, metric) - expected) / max(1.0, abs(expected)))
    return worst


def suite_metric_realness(n, rng, samples):
    return standard_metric(n).max_imag_residue


def suite_indefinite(n, rng, samples):
    basis, metric = standard_herm_basis(n), standard_metric(n)
    positive = finsler_power(vector_components(np.eye(n), basis), metric)
    negative = finsler_power(vector_components(np.diag([-1.0] + [1.0] * (n - 1)), basis), metric)
    return min(positive, -negative)


def suite_det_invariance(n, rng, samples):
    worst = 0.0
    for _ in range(samples):
        X = HermVector(random_hermitian(rng, n))
        C = random_near_identity_sl(rng, n)
        after = HermVector.from_spintensor(transform_spintensor(X.to_spintensor(), C))
        worst = max(worst, abs(det_invariant(X) - det_invariant(after)))
    return worst


def suite_forminvariance(n, rng, samples):
    basis, metric = standard_herm_basis(n), standard_metric(n)
    worst = 0.0
    for _ in range(samples):
        L = epimorphism_L(random_near_identity_sl(rng, n), basis)
        worst = max(worst, check_forminvariance(metric, L, 1, rng=rng))
    return worst


def suite_assemble_round_trip(n, rng, samples):
    basis = standard_herm_basis(n)
    worst = 0.0
    for _ in range(samples):
        X = random_hermitian(rng, n)
        worst = max(worst, _rel(assemble(vector_components(X, basis), basis).matrix - X, X))
    return worst


# (module, name, function, bound, comparison, max N or None)
SUITES = [
    ("core-algebra", "scalar-product = det", suite_scalar_det_oracle, 1e-12, "<=", 6),
    ("core-algebra", "antisymmetry", suite_antisymmetry, 1e-12, "<=", 6),
    ("core-algebra", "multilinearity", suite_multilinearity, 1e-12, "<=", 6),
    ("core-algebra", "dependent set vanishes", suite_rank_deficient, 1e-10, "<=", 6),
    ("core-algebra", "identity transform", suite_identity_transform, 0.0, "<=", None),
    ("core-algebra", "composition law", suite_composition, 1e-10, "<=", None),
    ("core-algebra", "transform = nested loops", suite_transform_reference, 1e-10, "<=", 3),
    ("core-algebra", "dual contraction = delta", suite_dual_contraction, 1e-10, "<=", None),
    ("herm-space", "L realness", suite_realness, 1e-10, "<=", None),
    ("herm-space", "homomorphism", suite_homomorphism, 1e-9, "<=", None),
    ("herm-space", "inverse", suite_inverse, 1e-9, "<=", None),
    ("herm-space", "kernel scalars", suite_kernel_scalars, 1e-9, "<=", None),
    ("herm-space", "kernel separation", suite_kernel_separation, 1e-3, ">", None),
    ("herm-space", "C E C+ expansion", suite_conjugation_residual, 1e-9, "<=", None),
    ("herm-space", "Lorentz covering", suite_lorentz, 1e-9, "<=", 2),
    ("herm-space", "components round trip", suite_assemble_round_trip, 1e-10, "<=", None),
    ("finsler-metric", "diagonal consistency", suite_diagonal_consistency, 1e-9, "<=", None),
    ("finsler-metric", "coefficient symmetry", suite_symmetry, 1e-10, "<=", None),
    ("finsler-metric", "homogeneity", suite_homogeneity, 1e-10, "<=", None),
    ("finsler-metric", "coefficient realness", suite_metric_realness, 1e-10, "<=", None),
    ("finsler-metric", "indefinite witness", suite_indefinite, 0.0, ">", None),
    ("finsler-metric", "det invariance", suite_det_invariance, 1e-9, "<=", None),
    ("finsler-metric", "forminvariance", suite_forminvariance, 1e-8, "<=", None),
]


def run_suites(max_n: int, seed: int, samples: int) -> list[SuiteResult]:
    results = []
    for n in range(2, max_n + 1):
        for number, (module, name, func, bound, comparison, limit) in enumerate(SUITES):
            if limit is not None and n > limit:
                continue
            rng = make_rng(seed, n, number)
            try:
                deviation = float(func(n, rng, samples))
            except Exception:
                logger.exception(f"Suite '{name}' raised at N={n}")
                deviation = float("nan")
            result = SuiteResult(module, name, n, deviation, bound, comparison)
            if not result.passed:
                logger.error(f"Suite '{name}' failed at N={n}: {deviation:.3e} vs {comparison} {bound:.0e}")
            results.append(result)
    return results


def format_table(results: list[SuiteResult]) -> str:
    header = f"{'module':<15} {'suite':<26} {'N':>2}  {'deviation':>10}  {'bound':>10}  status"
    lines = [header, "-" * len(header)]
    for r in results:
        lines.append(
            f"{r.module:<15} {r.name:<26} {r.n:>2}  {r.deviation:>10.3e}  "
            f"{r.comparison:>2}{r.bound:>8.0e}  {'PASS' if r.passed else 'FAIL'}"
        )
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} suites passed")
    return "\n".join(lines)
