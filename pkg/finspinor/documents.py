"""JSON documents read and written by the commands.

Complex numbers are ``[re, im]`` pairs; matrices are row-major lists of them.

    MatrixDocument  {"n": N, "entries": [[re, im], ...]}           (N*N pairs)
    BasisDocument   {"n": N, "basis_id": ..., "E": [...], "E_dual": [...]}
    MetricDocument  {"n": N, "basis_id": ..., "coefficients": [{"indices": [...], "value": v}]}
    FL output       {"n": N, "size": N*N, "entries": [[...], ...]}  (real rows)
"""
import json
import math
import logging

import json5  # lenient reading: comments, trailing commas

import numpy as np

from .errors import DocumentError, FinspinorError
from .herm import FLMatrix, HermBasis, make_herm_basis
from .metric import FinslerMetric

logger = logging.getLogger(__name__)


def read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json5.load(f)
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}") from e
    except ValueError as e:
        raise DocumentError(f"{path} is not valid JSON: {e}") from e


def write_json(path, doc):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(doc))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise DocumentError(f"{where}: non-finite number")
    return float(value)


def _dimension(doc, where: str = "document") -> int:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where} must be a JSON object")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DocumentError(f"{where}: 'n' must be an integer >= 2, got {n!r}")
    return n


# --------------------------------------------------------------------
# MatrixDocument
# --------------------------------------------------------------------

def encode_entries(matrix) -> list:
    m = np.asarray(matrix, dtype=np.complex128)
    return [[float(z.real), float(z.imag)] for z in m.reshape(-1)]


def decode_entries(entries, n: int, where: str = "entries") -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != n * n:
        count = len(entries) if isinstance(entries, list) else "no"
        raise DocumentError(f"{where}: expected {n * n} [re, im] pairs, got {count}")
    out = np.empty(n * n, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentError(f"{where}[{i}]: expected an [re, im] pair, got {pair!r}")
        out[i] = complex(_number(pair[0], f"{where}[{i}]"), _number(pair[1], f"{where}[{i}]"))
    return out.reshape(n, n)


def matrix_document(matrix) -> dict:
    m = np.asarray(matrix)
    return {"n": int(m.shape[0]), "entries": encode_entries(m)}


def load_matrix(path) -> np.ndarray:
    doc = read_json(path)
    n = _dimension(doc, "matrix document")
    return decode_entries(doc.get("entries"), n)


# --------------------------------------------------------------------
# BasisDocument
# --------------------------------------------------------------------

def basis_document(basis: HermBasis) -> dict:
    return {
        "n": basis.dim,
        "basis_id": basis.basis_id,
        "E": [encode_entries(e.matrix) for e in basis.E],
        "E_dual": [encode_entries(d) for d in basis.E_dual],
    }


def load_basis(path) -> HermBasis:
    doc = read_json(path)
    n = _dimension(doc, "basis document")
    E, E_dual = doc.get("E"), doc.get("E_dual")
    if not isinstance(E, list) or not isinstance(E_dual, list):
        raise DocumentError("basis document needs 'E' and 'E_dual' lists")
    mats = [decode_entries(e, n, f"E[{i}]") for i, e in enumerate(E)]
    duals = [decode_entries(d, n, f"E_dual[{i}]") for i, d in enumerate(E_dual)]
    try:
        return make_herm_basis(mats, basis_id=str(doc.get("basis_id", "custom")), E_dual=duals)
    except FinspinorError as e:
        raise DocumentError(f"{path}: invalid basis: {e}") from e


# --------------------------------------------------------------------
# FL matrix output
# --------------------------------------------------------------------

def fl_document(L: FLMatrix) -> dict:
    return {
        "n": L.dim,
        "size": L.dim * L.dim,
        "entries": [[float(v) for v in row] for row in L.entries],
    }


# --------------------------------------------------------------------
# MetricDocument
# --------------------------------------------------------------------

def metric_document(metric: FinslerMetric) -> dict:
    return {
        "n": metric.dim,
        "basis_id": metric.basis_id,
        "coefficients": [
            {"indices": list(key), "value": value}
            for key, value in sorted(metric.nonzero().items())
        ],
    }


def load_metric(path) -> FinslerMetric:
    doc = read_json(path)
    n = _dimension(doc, "metric document")
    entries = doc.get("coefficients")
    if not isinstance(entries, list):
        raise DocumentError("metric document needs a 'coefficients' list")

    coefficients = {}
    for i, item in enumerate(entries):
        where = f"coefficients[{i}]"
        indices = item.get("indices") if isinstance(item, dict) else None
        if not isinstance(indices, list) or len(indices) != n:
            raise DocumentError(f"{where}: 'indices' must list {n} integers")
        if any(isinstance(j, bool) or not isinstance(j, int) or not 0 <= j < n * n for j in indices):
            raise DocumentError(f"{where}: indices must be integers in 0..{n * n - 1}")
        if indices != sorted(indices):
            raise DocumentError(f"{where}: indices must be sorted ascending")
        key = tuple(indices)
        if key in coefficients:
            raise DocumentError(f"{where}: duplicate multiset {key}")
        coefficients[key] = _number(item.get("value"), where)
    return FinslerMetric(n, coefficients, basis_id=str(doc.get("basis_id", "custom")))
