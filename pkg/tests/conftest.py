import os

import django
import numpy as np
import pytest

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'finspinor.settings')
django.setup()

from finspinor.sampling import make_rng  # noqa: E402

SIGMA = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


@pytest.fixture
def rng():
    return make_rng(12345)


@pytest.fixture
def pauli():
    return [m.copy() for m in SIGMA]
