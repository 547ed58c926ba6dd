import json
from io import StringIO

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from finspinor.__main__ import main
from finspinor.documents import basis_document, matrix_document, write_json
from finspinor.errors import ConventionError, DomainError
from finspinor.herm import epimorphism_L, make_herm_basis, standard_herm_basis
from finspinor.management.commands import kernel as kernel_command
from finspinor.management.commands import map as map_command
from finspinor.management.commands import metric as metric_command
from finspinor.management.commands.metric import spot_check
from finspinor.sampling import random_near_identity_sl
from finspinor.spinors import make_basis_change


def _matrix_file(tmp_path, matrix, name="c.json"):
    path = tmp_path / name
    write_json(path, matrix_document(np.asarray(matrix, dtype=complex)))
    return str(path)


def _run(name, **options):
    out = StringIO()
    call_command(name, stdout=out, **options)
    return out.getvalue()


def _pairs_to_matrix(entries, n):
    return np.array([complex(re, im) for re, im in entries]).reshape(n, n)


# --------------------------------------------------------------------
# gen-basis
# --------------------------------------------------------------------

def test_gen_basis_n2(tmp_path, pauli):
    path = tmp_path / "basis.json"
    _run("gen_basis", n=2, out=str(path))
    doc = json.loads(path.read_text())
    assert doc["n"] == 2
    for entries, sigma in zip(doc["E"], pauli):
        np.testing.assert_array_equal(_pairs_to_matrix(entries, 2), sigma)
    for entries, sigma in zip(doc["E_dual"], pauli):
        np.testing.assert_allclose(_pairs_to_matrix(entries, 2), sigma / 2, atol=1e-12)


def test_gen_basis_n3(tmp_path):
    path = tmp_path / "basis.json"
    _run("gen_basis", n=3, out=str(path))
    doc = json.loads(path.read_text())
    assert len(doc["E"]) == len(doc["E_dual"]) == 9
    for entries in doc["E"]:
        m = _pairs_to_matrix(entries, 3)
        np.testing.assert_array_equal(m, m.conj().T)


def test_gen_basis_rejects_n1(tmp_path):
    with pytest.raises(CommandError) as excinfo:
        _run("gen_basis", n=1, out=str(tmp_path / "basis.json"))
    assert excinfo.value.returncode == 2


# --------------------------------------------------------------------
# map
# --------------------------------------------------------------------

def test_map_identity(tmp_path):
    doc = json.loads(_run("map", n=2, input=_matrix_file(tmp_path, np.eye(2))))
    assert doc["n"] == 2 and doc["size"] == 4
    np.testing.assert_allclose(doc["entries"], np.eye(4), atol=1e-12)


def test_map_boost(tmp_path):
    doc = json.loads(_run("map", n=2, input=_matrix_file(tmp_path, np.diag([2, 0.5]))))
    L = np.array(doc["entries"])
    assert L[0, 0] == pytest.approx(2.125)
    assert L[3, 3] == pytest.approx(2.125)
    assert L[0, 3] == pytest.approx(1.875)
    assert L[3, 0] == pytest.approx(1.875)
    np.testing.assert_allclose(L[1:3, 1:3], np.eye(2), atol=1e-12)


@pytest.mark.parametrize("matrix", [np.diag([2, 1]), np.zeros((2, 2))])
def test_map_rejects_non_unimodular(tmp_path, matrix):
    with pytest.raises(CommandError) as excinfo:
        _run("map", n=2, input=_matrix_file(tmp_path, matrix))
    assert excinfo.value.returncode == 3


def test_map_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2", encoding="utf-8")
    with pytest.raises(CommandError) as excinfo:
        _run("map", n=2, input=str(bad))
    assert excinfo.value.returncode == 2
    with pytest.raises(CommandError) as excinfo:
        _run("map", n=3, input=_matrix_file(tmp_path, np.eye(2)))
    assert excinfo.value.returncode == 2


def test_map_with_generated_basis(tmp_path, rng):
    basis_path = tmp_path / "basis.json"
    _run("gen_basis", n=3, out=str(basis_path))
    C = random_near_identity_sl(rng, 3)
    doc = json.loads(_run("map", n=3, input=_matrix_file(tmp_path, C.c), basis=str(basis_path)))
    expected = epimorphism_L(make_basis_change(C.c), standard_herm_basis(3)).entries
    np.testing.assert_array_equal(np.array(doc["entries"]), expected)


def test_map_with_custom_basis(tmp_path, pauli):
    E = [s / np.sqrt(2) for s in pauli]
    basis = make_herm_basis(E, basis_id="pauli-normalized")
    path = tmp_path / "basis.json"
    write_json(path, basis_document(basis))
    C = np.diag([2, 0.5])
    doc = json.loads(_run("map", n=2, input=_matrix_file(tmp_path, C), basis=str(path)))
    expected = epimorphism_L(make_basis_change(C), basis).entries
    np.testing.assert_allclose(doc["entries"], expected, atol=1e-12)


# --------------------------------------------------------------------
# metric
# --------------------------------------------------------------------

def test_metric_n2(tmp_path):
    path = tmp_path / "metric.json"
    _run("metric", n=2, out=str(path))
    doc = json.loads(path.read_text())
    values = {tuple(c["indices"]): c["value"] for c in doc["coefficients"]}
    assert set(values) == {(0, 0), (1, 1), (2, 2), (3, 3)}
    assert values[(0, 0)] == pytest.approx(1.0)
    assert values[(3, 3)] == pytest.approx(-1.0)
    assert spot_check(path, 2) <= 1e-9


def test_metric_n3_spot_check(tmp_path):
    path = tmp_path / "metric.json"
    _run("metric", n=3, out=str(path))
    assert spot_check(path, 3, seed=7) <= 1e-9


def test_metric_rejects_large_n(tmp_path):
    with pytest.raises(CommandError) as excinfo:
        _run("metric", n=6, out=str(tmp_path / "metric.json"))
    assert excinfo.value.returncode == 2


# --------------------------------------------------------------------
# kernel
# --------------------------------------------------------------------

def test_kernel_root_of_unity(tmp_path):
    matrix = np.exp(2j * np.pi / 3) * np.eye(3)
    assert _run("kernel", n=3, input=_matrix_file(tmp_path, matrix)).strip() == "kernel: true"


def test_kernel_boost(tmp_path):
    assert _run("kernel", n=2, input=_matrix_file(tmp_path, np.diag([2, 0.5]))).strip() == "kernel: false"


def test_kernel_rejects_non_unimodular(tmp_path):
    with pytest.raises(CommandError) as excinfo:
        _run("kernel", n=2, input=_matrix_file(tmp_path, np.diag([2, 2])))
    assert excinfo.value.returncode == 3


def test_kernel_accepts_badly_scaled_unimodular_matrix(tmp_path):
    matrix = np.diag([1e9, 1e-9])
    assert _run("kernel", n=2, input=_matrix_file(tmp_path, matrix)).strip() == "kernel: false"


# --------------------------------------------------------------------
# verify
# --------------------------------------------------------------------

def test_verify_passes_and_is_deterministic():
    first = _run("verify", max_n=2, seed=3, samples=10)
    second = _run("verify", max_n=2, seed=3, samples=10)
    assert first == second
    assert "FAIL" not in first
    assert first.strip().endswith("suites passed")


@pytest.mark.parametrize("options", [{"max_n": 9}, {"max_n": 1}, {"max_n": 2, "samples": 0}])
def test_verify_usage_errors(options):
    with pytest.raises(CommandError) as excinfo:
        _run("verify", **options)
    assert excinfo.value.returncode == 2


# --------------------------------------------------------------------
# finspinor entry point
# --------------------------------------------------------------------

def test_entry_point_accepts_hyphenated_names(tmp_path):
    path = tmp_path / "basis.json"
    main(["finspinor", "gen-basis", "-n", "2", "-o", str(path)])
    assert json.loads(path.read_text())["n"] == 2


def test_entry_point_exit_code(tmp_path, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["finspinor", "gen-basis", "-n", "1", "-o", str(tmp_path / "basis.json")])
    assert excinfo.value.code == 2
    assert "N must be" in capsys.readouterr().err


# --------------------------------------------------------------------
# library errors raised while computing
# --------------------------------------------------------------------

def _raise(error):
    def fail(*args, **kwargs):
        raise error
    return fail


@pytest.mark.parametrize("error, code", [
    (ConventionError("L(C) has imaginary residue 1e-3"), 1),
    (DomainError("dimension mismatch"), 2),
])
def test_map_translates_library_errors(tmp_path, monkeypatch, error, code):
    monkeypatch.setattr(map_command, "epimorphism_L", _raise(error))
    with pytest.raises(CommandError) as excinfo:
        _run("map", n=2, input=_matrix_file(tmp_path, np.eye(2)))
    assert excinfo.value.returncode == code
    assert str(error) in str(excinfo.value)


def test_kernel_translates_convention_error(tmp_path, monkeypatch):
    monkeypatch.setattr(kernel_command, "is_in_kernel", _raise(ConventionError("residue")))
    with pytest.raises(CommandError) as excinfo:
        _run("kernel", n=2, input=_matrix_file(tmp_path, np.eye(2)))
    assert excinfo.value.returncode == 1


def test_metric_translates_convention_error(tmp_path, monkeypatch):
    monkeypatch.setattr(metric_command, "metric_coefficients", _raise(ConventionError("residue")))
    with pytest.raises(CommandError) as excinfo:
        _run("metric", n=2, out=str(tmp_path / "metric.json"))
    assert excinfo.value.returncode == 1
