"""Seeded random inputs for the verification suites and tests.

Every random draw goes through ``make_rng(seed)``, a numpy ``Generator`` over
the PCG64 bit generator, so a run is replayable from its 64-bit seed.
"""
import logging

import numpy as np

from .spinors import BasisChange, NSpinor, make_basis_change

logger = logging.getLogger(__name__)

GENERATOR_NAME = "numpy.random.Generator(PCG64)"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for ``seed``; ``stream`` keys give independent substreams."""
    entropy = [int(seed) & 0xFFFF_FFFF_FFFF_FFFF, *(int(s) for s in stream)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """I.i.d. standard complex normal entries."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_spinor(rng: np.random.Generator, n: int) -> NSpinor:
    return NSpinor(complex_normal(rng, n))


def random_sl(rng: np.random.Generator, n: int, min_abs_det: float = 1e-6) -> BasisChange:
    """Gaussian matrix rescaled by the principal ``N``-th root of its determinant."""
    while True:
        m = complex_normal(rng, (n, n))
        det = complex(np.linalg.det(m))
        if abs(det) >= min_abs_det:
            break
        logger.debug(f"Resampling SL({n},C) draw with |det|={abs(det):.3g}")
    return make_basis_change(m / det ** (1.0 / n))


def random_near_identity_sl(rng: np.random.Generator, n: int, spread: float = 0.3) -> BasisChange:
    """A unimodular matrix within ``spread`` of the identity (well conditioned)."""
    m = np.eye(n) + spread * complex_normal(rng, (n, n))
    det = complex(np.linalg.det(m))
    return make_basis_change(m / det ** (1.0 / n))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = complex_normal(rng, (n, n))
    return (a + a.conj().T) / 2


def kernel_element(n: int, k: int) -> BasisChange:
    """``exp(2 pi i k / N) 1_N``."""
    return make_basis_change(np.exp(2j * np.pi * k / n) * np.eye(n))
