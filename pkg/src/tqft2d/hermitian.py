"""Hermitian forms on the state space and the real structure they induce.

A form is stored by its Gram matrix ``h[i, j] = h(b_i, b_j)``; it is linear
in the first slot and conjugate-linear in the second, so
``h(v, w) = v^T h conj(w)``.

Given an algebra and a form, the involution ``J`` is pinned down by
``h(x, J(y)) = beta(x, y)``. The pair comes from a Hermitian TQFT exactly
when ``J`` squares to the identity, fixes the unit, respects the product and
the counit is real on ``J``-fixed vectors; the fixed vectors then form a
real Frobenius algebra whose complexification is the original one.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .cobordism import evaluate, reverse
from .errors import DimensionMismatch, IncompatiblePair, RankDeficient, SingularMatrix
from .frobenius import FrobeniusAlgebra
from .linalg import (
    DEFAULT_TOL,
    ConjugateLinearMap,
    as_matrix,
    hermitian_residual,
    kron,
    kron_power,
    max_norm,
    op_norm,
    solve,
)


@dataclass(frozen=True, eq=False)
class HermitianStructure:
    h: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        h = as_matrix(np.asarray(self.h, dtype=complex))
        if h.shape[0] != h.shape[1]:
            raise DimensionMismatch(f"Hermitian matrix must be square, got {h.shape}")
        if hermitian_residual(h) > self.tol:
            raise ValueError("matrix is not conjugate-symmetric")
        sv = np.linalg.svd(h, compute_uv=False)
        if sv[-1] <= self.tol * sv[0]:
            raise SingularMatrix("Hermitian form is degenerate")
        object.__setattr__(self, "h", (h + h.conj().T) / 2)

    @property
    def dim(self):
        return self.h.shape[0]

    def __call__(self, v, w):
        return complex(np.asarray(v) @ self.h @ np.conj(w))

    @property
    def eigenvalues(self):
        return np.linalg.eigvalsh(self.h)

    @property
    def signature(self):
        ev = self.eigenvalues
        return int(np.sum(ev > 0)), int(np.sum(ev < 0))

    def is_positive_definite(self, tol=None):
        tol = self.tol if tol is None else tol
        ev = self.eigenvalues
        return bool(ev[0] > tol * max(abs(ev[-1]), 1.0))

    def to_dual(self):
        """The conjugate-linear isomorphism ``v -> h(., v)`` into covector coordinates."""
        return ConjugateLinearMap(self.h)


def induced_dual_form(h):
    """Form on the dual space with ``h*(h(., v), h(., w)) = h(w, v)``.

    In dual coordinates its Gram matrix is ``conj(h)^{-1}``.
    """
    k = solve(np.conj(h.h), np.eye(h.dim), tol=h.tol)
    return HermitianStructure(k, tol=h.tol)


def induced_tensor_form(h1, h2):
    """Product form ``h1(v1, w1) h2(v2, w2)`` on the tensor product."""
    return HermitianStructure(kron(h1.h, h2.h), tol=max(h1.tol, h2.tol))


def tensor_power_form(h, k):
    """Form on ``V^{(x) k}``; the empty product is the standard form on C."""
    return kron_power(h.h, k)


@dataclass
class HermitianReport:
    involution: ConjugateLinearMap
    residuals: dict
    passed: dict
    signature: tuple

    @property
    def ok(self):
        return all(self.passed.values())

    def failing(self):
        return [k for k, v in self.passed.items() if not v]


def involution_matrix(a, h):
    """Matrix of ``J`` (acting after conjugation) solving ``h(x, J(y)) = beta(x, y)``."""
    if h.dim != a.dim:
        raise DimensionMismatch(f"form has dimension {h.dim}, algebra {a.dim}")
    # h conj(Jm) = B  =>  Jm = conj(h)^{-1} conj(B)
    return solve(np.conj(h.h), np.conj(a.pairing_matrix), tol=a.tol)


def fixed_space_basis(j, tol=DEFAULT_TOL):
    """Real basis of ``{v : J(v) = v}`` as columns, via column-pivoted QR.

    Spans the vectors ``e_k + J(e_k)`` and ``i (e_k - J(e_k))`` and keeps the
    pivot columns above ``tol`` times the largest column norm, normalized.
    """
    n = j.dim
    eye = np.eye(n)
    spanning = np.hstack([eye + j.mat, 1j * (eye - j.mat)])
    real_view = np.vstack([spanning.real, spanning.imag])
    _, r, piv = scipy.linalg.qr(real_view, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0:
        return np.zeros((n, 0), dtype=complex)
    rank = int(np.sum(diag > tol * diag[0]))
    cols = spanning[:, piv[:rank]]
    return cols / np.linalg.norm(cols, axis=0)


def _rel(diff, *scales):
    s = max([max_norm(x) for x in scales] + [0.0])
    return max_norm(diff) / s if s > 0 else max_norm(diff)


def build_involution(a, h, tol=None, strict=True):
    """Construct ``J`` and run the four Hermitian-axiom checks.

    All checks are always computed. With ``strict`` a failing check raises
    IncompatiblePair carrying the report; otherwise the report is returned
    as is.
    """
    tol = a.tol if tol is None else tol
    j = ConjugateLinearMap(involution_matrix(a, h))
    n = a.dim
    eye = np.eye(n)

    squares = max_norm(j.square() - eye)
    unit_fixed = _rel(j(a.unit) - a.unit, a.unit)

    jb = j.mat  # columns are J(b_i)
    # J(b_i b_j) = Jm conj(sum_k c[i,j,k] b_k)
    lhs = np.einsum("lk,ijk->ijl", jb, np.conj(a.mul))
    rhs = np.einsum("ai,bj,abl->ijl", jb, jb, a.mul)
    multiplicative = _rel(lhs - rhs, lhs, rhs)

    fixed = fixed_space_basis(j, tol)
    eps_fixed = a.counit @ fixed
    counit_real = _rel(eps_fixed.imag, a.counit) if fixed.shape[1] else 0.0

    defining = _rel(h.h @ np.conj(j.mat) - a.pairing_matrix, a.pairing_matrix)

    residuals = {
        "involution": float(squares),
        "unit_fixed": float(unit_fixed),
        "multiplicative": float(multiplicative),
        "counit_real": float(counit_real),
    }
    passed = {k: v <= tol for k, v in residuals.items()}
    residuals["defining_identity"] = float(defining)
    report = HermitianReport(j, residuals, passed, h.signature)
    if strict and not report.ok:
        raise IncompatiblePair(report)
    return report


@dataclass(frozen=True, eq=False)
class RealForm:
    involution: ConjugateLinearMap
    basis: np.ndarray  # columns span the J-fixed real subspace
    mul: np.ndarray
    unit: np.ndarray
    counit: np.ndarray
    residuals: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.basis.shape[1]

    def complexify(self, tol=DEFAULT_TOL):
        """The complex algebra generated by the real form, in the real-form basis."""
        return FrobeniusAlgebra(self.mul, self.unit, self.counit, tol=tol)

    def left_mul_matrices(self):
        """Real matrices of multiplication by each real-form basis vector."""
        return [self.mul[i].T.copy() for i in range(self.dim)]

    def pairing_matrix(self):
        return np.einsum("ijk,k->ij", self.mul, self.counit)


def extract_real_form(a, j, tol=None):
    """Restrict the algebra to the vectors fixed by ``j``.

    Raises RankDeficient when the fixed space does not have real dimension
    ``a.dim``, which means ``j`` is not an involution.
    """
    tol = a.tol if tol is None else tol
    if not isinstance(j, ConjugateLinearMap):
        j = j.involution
    basis = fixed_space_basis(j, tol)
    if basis.shape[1] != a.dim:
        raise RankDeficient(f"fixed space has real dimension {basis.shape[1]}, expected {a.dim}")
    in_basis = a.change_basis(basis)
    imag = {
        "mul_imag": _rel(in_basis.mul.imag, in_basis.mul),
        "unit_imag": _rel(in_basis.unit.imag, in_basis.unit),
        "counit_imag": _rel(in_basis.counit.imag, in_basis.counit),
    }
    rf = RealForm(
        j,
        basis,
        in_basis.mul.real.copy(),
        in_basis.unit.real.copy(),
        in_basis.counit.real.copy(),
    )
    back = rf.complexify(tol).change_basis(solve(basis, np.eye(a.dim), tol=tol))
    imag["reconstruction"] = max(
        _rel(back.mul - a.mul, a.mul),
        _rel(back.unit - a.unit, a.unit),
        _rel(back.counit - a.counit, a.counit),
    )
    rf.residuals.update({k: float(v) for k, v in imag.items()})
    return rf


def adjoint_residual(a, h, m):
    """Relative residual of ``h_W(Z(M) v, w) = h_V(v, Z(M*) w)`` over all v, w.

    In matrices: ``Z(M)^T h_W = h_V conj(Z(M*))``.
    """
    if h.dim != a.dim:
        raise DimensionMismatch(f"form has dimension {h.dim}, algebra {a.dim}")
    z = evaluate(a, m)
    z_star = evaluate(a, reverse(m))
    h_in = tensor_power_form(h, m.n_in)
    h_out = tensor_power_form(h, m.n_out)
    lhs = z.T @ h_out
    rhs = h_in @ np.conj(z_star)
    scale = max(op_norm(z) * op_norm(h_out), op_norm(z_star) * op_norm(h_in))
    diff = max_norm(lhs - rhs)
    return float(diff / scale) if scale > 0 else float(diff)


verify_adjoint = adjoint_residual
