"""JSON algebra files.

Keys are ``dimension``, ``mul`` (n x n x n), ``unit`` (n), ``counit`` (n) and an
optional ``hermitian`` (n x n). Every number is a ``[re, im]`` pair.
"""

import json
from pathlib import Path

import numpy as np

from .errors import AxiomViolation, ParseError, ShapeError, SingularMatrix
from .frobenius import AxiomReport, FrobeniusAlgebra, verify_axioms
from .hermitian import HermitianStructure
from .linalg import DEFAULT_TOL, hermitian_residual


def _pairs(obj, shape, key):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{key}: entries must be [re, im] number pairs") from exc
    if arr.shape != (*shape, 2):
        raise ShapeError(f"{key}: expected shape {shape} of [re, im] pairs, got {arr.shape[:-1] if arr.ndim else ()}")
    if not np.all(np.isfinite(arr)):
        raise ShapeError(f"{key}: non-finite number")
    return arr[..., 0] + 1j * arr[..., 1]


def parse_algebra(doc, tol=DEFAULT_TOL, validate=True):
    """Build ``(algebra, hermitian or None)`` from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    for key in ("dimension", "mul", "unit", "counit"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    n = doc["dimension"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ShapeError("dimension must be a positive integer")
    a = FrobeniusAlgebra(
        _pairs(doc["mul"], (n, n, n), "mul"),
        _pairs(doc["unit"], (n,), "unit"),
        _pairs(doc["counit"], (n,), "counit"),
        tol=tol,
    )
    h = None
    if doc.get("hermitian") is not None:
        hm = _pairs(doc["hermitian"], (n, n), "hermitian")
        sym = hermitian_residual(hm)
        sv = np.linalg.svd(hm, compute_uv=False)
        nondeg = float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0
        if sym > tol or nondeg <= tol:
            report = AxiomReport(
                {"hermitian_symmetry": sym, "hermitian_nondegeneracy": nondeg},
                {"hermitian_symmetry": sym <= tol, "hermitian_nondegeneracy": nondeg > tol},
            )
            raise AxiomViolation(report)
        h = HermitianStructure(hm, tol=tol)
    if validate:
        report = verify_axioms(a, tol)
        if not report.ok:
            raise AxiomViolation(report)
    return a, h


def load_algebra(path, tol=DEFAULT_TOL, validate=True):
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return parse_algebra(doc, tol=tol, validate=validate)
    except SingularMatrix as exc:
        raise AxiomViolation(AxiomReport({"hermitian_nondegeneracy": 0.0}, {"hermitian_nondegeneracy": False})) from exc


def _to_pairs(arr):
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def algebra_to_dict(a, h=None):
    doc = {
        "dimension": a.dim,
        "mul": _to_pairs(a.mul),
        "unit": _to_pairs(a.unit),
        "counit": _to_pairs(a.counit),
    }
    if h is not None:
        doc["hermitian"] = _to_pairs(h.h)
    return doc


def dump_algebra(a, path, h=None):
    Path(path).write_text(json.dumps(algebra_to_dict(a, h), indent=2) + "\n", encoding="utf-8")
