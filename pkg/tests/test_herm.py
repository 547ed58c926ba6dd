"""Tests for Herm(N), its dual basis and the map L."""
import numpy as np
import pytest

from finspinor.errors import DomainError, NotABasisError
from finspinor.herm import (
    FLMatrix, HermVector, MINKOWSKI, assemble, check_homomorphism, dual_basis, epimorphism_L,
    conjugation_residual, is_in_kernel, is_proper_orthochronous, make_herm_basis, minkowski_defect,
    primed_components, standard_herm_basis, transform_herm_basis, vector_components,
)
from finspinor.sampling import (
    kernel_element, random_hermitian, random_near_identity_sl, random_sl,
)
from finspinor.spinors import BasisChange, contract, make_basis_change, tensor_product


def _boost(rapidity):
    L = np.eye(4)
    L[0, 0] = L[3, 3] = np.cosh(rapidity)
    L[0, 3] = L[3, 0] = np.sinh(rapidity)
    return L


# --------------------------------------------------------------------
# Bases
# --------------------------------------------------------------------

def test_n2_basis_is_pauli(pauli):
    basis = standard_herm_basis(2)
    for e, sigma in zip(basis.E, pauli):
        np.testing.assert_array_equal(e.matrix, sigma)
    for dual, sigma in zip(basis.E_dual, pauli):
        np.testing.assert_allclose(dual, sigma / 2, atol=1e-12)
    assert basis.basis_id == "gellmann-v1"


def test_n2_gram_matrix(pauli):
    mats = standard_herm_basis(2).matrices()
    gram = np.einsum("aij,bji->ab", mats, mats)
    np.testing.assert_allclose(gram, 2 * np.eye(4), atol=1e-15)


@pytest.mark.parametrize("n", range(2, 6))
def test_basis_size_hermiticity_and_pairing(n):
    basis = standard_herm_basis(n)
    assert basis.size == n * n
    for e in basis.E:
        np.testing.assert_array_equal(e.matrix, e.matrix.conj().T)
    for d in basis.E_dual:
        np.testing.assert_allclose(d, d.conj().T, atol=1e-15)
    np.testing.assert_allclose(basis.pairing_matrix(), np.eye(n * n), atol=1e-10)


def test_basis_rejects_small_n():
    with pytest.raises(DomainError):
        standard_herm_basis(1)


def test_dual_of_orthonormal_set_is_itself(pauli):
    E = [s / np.sqrt(2) for s in pauli]
    for dual, e in zip(dual_basis(E), E):
        np.testing.assert_allclose(dual, e, atol=1e-12)


def test_dual_of_perturbed_basis(rng):
    E = [e.matrix + 0.1 * random_hermitian(rng, 3) for e in standard_herm_basis(3).E]
    basis = make_herm_basis(E)
    np.testing.assert_allclose(basis.pairing_matrix(), np.eye(9), atol=1e-10)


def test_dual_rejects_dependent_set(pauli):
    with pytest.raises(NotABasisError):
        dual_basis([pauli[0], pauli[1], pauli[2], pauli[1] + pauli[2]])
    with pytest.raises(NotABasisError):
        dual_basis(pauli[:3])


@pytest.mark.parametrize("n", [2, 3])
def test_dual_contraction_with_spintensor_engine(n):
    basis = standard_herm_basis(n)
    for alpha in range(basis.size):
        for beta in range(basis.size):
            t = tensor_product(basis.dual_spintensor(alpha), basis.E[beta].to_spintensor())
            t = contract(t, t.axis("upper_plain"), t.axis("lower_plain"))
            t = contract(t, t.axis("upper_dotted"), t.axis("lower_dotted"))
            assert complex(t.components) == pytest.approx(float(alpha == beta), abs=1e-10)


def test_herm_vector_validation():
    with pytest.raises(DomainError):
        HermVector([[1, 1j], [1j, 1]])
    HermVector([[1, 1j], [-1j, 1]])


# --------------------------------------------------------------------
# The map L
# --------------------------------------------------------------------

@pytest.mark.parametrize("n", range(2, 6))
def test_identity_maps_to_identity(n):
    L = epimorphism_L(BasisChange.identity(n), standard_herm_basis(n))
    np.testing.assert_allclose(L.entries, np.eye(n * n), atol=1e-12)


def test_z_boost():
    rapidity = np.arctanh(0.5)
    C = make_basis_change(np.diag([np.exp(rapidity / 2), np.exp(-rapidity / 2)]))
    L = epimorphism_L(C, standard_herm_basis(2))
    np.testing.assert_allclose(L.entries, _boost(rapidity), atol=1e-12)
    # velocity 0.5: L^3_0 / L^0_0
    assert L.entries[3, 0] / L.entries[0, 0] == pytest.approx(0.5)


def test_rotation_about_third_axis():
    theta = 0.7
    C = make_basis_change(np.diag([np.exp(0.5j * theta), np.exp(-0.5j * theta)]))
    L = epimorphism_L(C, standard_herm_basis(2)).entries
    expected = np.eye(4)
    expected[1:3, 1:3] = [[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]]
    np.testing.assert_allclose(L, expected, atol=1e-12)


def test_conjugation_expansion(rng):
    for n in range(2, 6):
        basis = standard_herm_basis(n)
        for _ in range(10):
            assert conjugation_residual(random_near_identity_sl(rng, n), basis) <= 1e-9


def test_homomorphism_examples(rng):
    basis2 = standard_herm_basis(2)
    identity = BasisChange.identity(2)
    assert check_homomorphism(identity, identity, basis2) == 0.0
    assert check_homomorphism(random_near_identity_sl(rng, 2),
                              random_near_identity_sl(rng, 2), basis2) <= 1e-10
    basis4 = standard_herm_basis(4)
    assert check_homomorphism(random_near_identity_sl(rng, 4),
                              random_near_identity_sl(rng, 4), basis4) <= 1e-9


@pytest.mark.parametrize("n", range(2, 6))
def test_homomorphism_random_pairs(rng, n):
    basis = standard_herm_basis(n)
    for _ in range(100):
        assert check_homomorphism(random_sl(rng, n), random_sl(rng, n), basis) <= 1e-9


@pytest.mark.parametrize("n", [2, 3, 4])
def test_inverse_maps_to_inverse(rng, n):
    basis = standard_herm_basis(n)
    C = random_near_identity_sl(rng, n)
    product = epimorphism_L(C.inverse(), basis) @ epimorphism_L(C, basis)
    assert product.deviation_from_identity() <= 1e-9
    np.testing.assert_allclose(epimorphism_L(C, basis).inverse().entries,
                               epimorphism_L(C.inverse(), basis).entries, atol=1e-9)


def test_mismatched_dimensions():
    with pytest.raises(DomainError):
        epimorphism_L(BasisChange.identity(3), standard_herm_basis(2))
    with pytest.raises(DomainError):
        FLMatrix(2, np.eye(3))


# --------------------------------------------------------------------
# Kernel
# --------------------------------------------------------------------

def test_kernel_examples():
    assert is_in_kernel(make_basis_change(np.exp(2j * np.pi / 3) * np.eye(3)), standard_herm_basis(3))
    assert is_in_kernel(BasisChange.identity(2), standard_herm_basis(2))
    assert not is_in_kernel(make_basis_change(np.diag([2, 0.5])), standard_herm_basis(2))


@pytest.mark.parametrize("n", range(2, 6))
def test_kernel_is_roots_of_unity(rng, n):
    basis = standard_herm_basis(n)
    for k in range(n):
        assert is_in_kernel(kernel_element(n, k), basis)
    for _ in range(100):
        assert epimorphism_L(random_sl(rng, n), basis).deviation_from_identity() > 1e-3


def test_minus_identity_is_in_n2_kernel():
    assert is_in_kernel(make_basis_change(-np.eye(2)), standard_herm_basis(2))


# --------------------------------------------------------------------
# Components
# --------------------------------------------------------------------

def test_components_of_basis_element():
    basis = standard_herm_basis(3)
    x = vector_components(basis.E[0], basis)
    np.testing.assert_allclose(x, np.eye(9)[0], atol=1e-12)


def test_components_n2(pauli):
    x = vector_components(pauli[0] + 2 * pauli[3], standard_herm_basis(2))
    np.testing.assert_allclose(x, [1, 0, 0, 2], atol=1e-12)


@pytest.mark.parametrize("n", range(2, 6))
def test_components_round_trip(rng, n):
    basis = standard_herm_basis(n)
    X = random_hermitian(rng, n)
    x = vector_components(X, basis)
    assert x.dtype == np.float64
    np.testing.assert_allclose(assemble(x, basis).matrix, X, atol=1e-10)
    np.testing.assert_allclose(vector_components(assemble(x, basis), basis), x, atol=1e-10)


def test_components_reject_non_hermitian():
    with pytest.raises(DomainError):
        vector_components(np.array([[1, 2], [0, 1]]), standard_herm_basis(2))


def test_primed_components_expand_in_primed_basis(rng):
    n = 3
    basis = standard_herm_basis(n)
    C = random_near_identity_sl(rng, n)
    X = random_hermitian(rng, n)
    primed = primed_components(vector_components(X, basis), C, basis)
    rebuilt = np.einsum("b,bij->ij", primed, transform_herm_basis(C, basis))
    np.testing.assert_allclose(rebuilt, X, atol=1e-10)


# --------------------------------------------------------------------
# N = 2: the Lorentz group
# --------------------------------------------------------------------

def test_random_sl2_images_are_proper_orthochronous(rng):
    basis = standard_herm_basis(2)
    for _ in range(100):
        L = epimorphism_L(random_sl(rng, 2), basis)
        m = L.entries
        assert minkowski_defect(L) <= 1e-9
        assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-9)
        assert m[0, 0] >= 1.0 - 1e-12
        assert is_proper_orthochronous(L)


def test_minkowski_defect_is_n2_only():
    assert minkowski_defect(epimorphism_L(BasisChange.identity(2), standard_herm_basis(2))) == 0.0
    with pytest.raises(DomainError):
        minkowski_defect(epimorphism_L(BasisChange.identity(3), standard_herm_basis(3)))


def test_proper_orthochronous_rejects_non_lorentz_matrices():
    assert is_proper_orthochronous(FLMatrix(2, np.eye(4)))
    assert not is_proper_orthochronous(FLMatrix(2, np.diag([1.0, -1.0, 1.0, 1.0])))
    assert not is_proper_orthochronous(FLMatrix(2, np.diag([-1.0, -1.0, 1.0, 1.0])))
    assert not is_proper_orthochronous(FLMatrix(2, (1 + 1e-6) * np.eye(4)))
