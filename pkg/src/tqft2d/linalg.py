"""Small dense complex linear algebra.

Vectors and matrices are plain numpy arrays. Tensor products use the
lexicographic basis with the first factor major, which is what ``np.kron``
produces.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    FormNotPositive,
    NotCommuting,
    NotSelfAdjoint,
    SingularMatrix,
)

DEFAULT_TOL = 1e-9
# relative width of an eigenvalue cluster in simultaneous_diagonalize
BLOCK_TOL = 1e-6


def as_matrix(a):
    a = np.asarray(a)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    elif a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(*mats):
    """Kronecker product of any number of matrices, first factor major."""
    if not mats:
        return np.ones((1, 1))
    return reduce(np.kron, (as_matrix(m) for m in mats))


def kron_power(a, k):
    if k == 0:
        return np.ones((1, 1), dtype=np.asarray(a).dtype)
    return kron(*([a] * k))


def adjoint(a):
    return np.conj(np.asarray(a)).T


def op_norm(a):
    """Operator norm (largest singular value)."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def max_norm(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def solve(a, b, tol=DEFAULT_TOL):
    """Solve ``a @ x = b``.

    Raises SingularMatrix when the condition number of ``a`` exceeds
    ``1/tol``; for a Frobenius pairing that means the counit is degenerate.
    """
    a = as_matrix(a)
    b_arr = np.asarray(b)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"solve needs a square matrix, got {a.shape}")
    if b_arr.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"rhs has {b_arr.shape[0]} rows, matrix has {a.shape[0]}")
    sv = np.linalg.svd(a, compute_uv=False)
    if sv.size == 0 or sv[-1] <= tol * sv[0]:
        smallest = sv[-1] if sv.size else 0.0
        raise SingularMatrix(f"matrix is singular at tolerance (smallest singular value {smallest:.3e})")
    return np.linalg.solve(a, b_arr)


def hermitian_eigendecomposition(a):
    a = as_matrix(a)
    return np.linalg.eigh((a + adjoint(a)) / 2)


def hermitian_residual(a):
    a = as_matrix(a)
    return max_norm(a - adjoint(a)) / max(max_norm(a), 1.0)


@dataclass(frozen=True, eq=False)
class ConjugateLinearMap:
    """The map ``v -> mat @ conj(v)``."""

    mat: np.ndarray

    def __post_init__(self):
        mat = as_matrix(self.mat)
        if mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch("conjugate-linear map must be square")
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self):
        return self.mat.shape[0]

    def __call__(self, v):
        return self.mat @ np.conj(v)

    def compose(self, other):
        """Return the linear matrix of ``self o other``."""
        return self.mat @ np.conj(other.mat)

    def square(self):
        return self.compose(self)


def _commutator_residual(ops):
    worst = 0.0
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            a, b = ops[i], ops[j]
            scale = max(op_norm(a) * op_norm(b), 1e-300)
            worst = max(worst, op_norm(a @ b - b @ a) / scale)
    return worst


def _split_clusters(vals, gap):
    groups, start = [], 0
    for k in range(1, len(vals) + 1):
        if k == len(vals) or vals[k] - vals[k - 1] > gap:
            groups.append(list(range(start, k)))
            start = k
    return groups


def simultaneous_diagonalize(ops, form=None, tol=DEFAULT_TOL, seed=0):
    """Diagonalize a commuting family of operators self-adjoint for ``form``.

    Returns ``(basis, diagonals)``: the columns of ``basis`` are orthonormal
    for ``form`` (``basis^H form basis = I``) and every ``inv(basis) @ op @ basis``
    is diagonal with entries ``diagonals[k]``.

    A random combination of the family is diagonalized first; clusters of
    eigenvalues closer than ``BLOCK_TOL`` times the spectral radius are then
    refined against each operator in turn.
    """
    ops = [as_matrix(op) for op in ops]
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].shape[0]
    form = np.eye(n) if form is None else as_matrix(form)
    for op in ops:
        if op.shape != (n, n):
            raise DimensionMismatch(f"operator shape {op.shape} != ({n}, {n})")
    if form.shape != (n, n):
        raise DimensionMismatch(f"form shape {form.shape} != ({n}, {n})")
    if hermitian_residual(form) > tol:
        raise NotSelfAdjoint("form is not Hermitian")

    form_eigs = np.linalg.eigvalsh((form + adjoint(form)) / 2)
    if form_eigs[0] <= tol * max(abs(form_eigs[-1]), 1.0):
        raise FormNotPositive(float(form_eigs[0]), tol)

    for k, op in enumerate(ops):
        lhs = form @ op
        if max_norm(lhs - adjoint(lhs)) > tol * max(op_norm(form) * op_norm(op), 1.0):
            raise NotSelfAdjoint(f"operator {k} is not self-adjoint for the form")
    comm = _commutator_residual(ops)
    if comm > tol:
        raise NotCommuting(comm, tol)

    is_real = all(np.isrealobj(m) or not np.any(m.imag) for m in [form, *ops])
    dtype = float if is_real else complex
    form = (form + adjoint(form)) / 2
    chol = np.linalg.cholesky(form.real if is_real else form)
    chol_h_inv = scipy.linalg.solve_triangular(chol, np.eye(n), lower=True).conj().T
    sym = []
    for op in ops:
        op = op.real if is_real else op
        t = adjoint(chol) @ op @ chol_h_inv
        sym.append(((t + adjoint(t)) / 2).astype(dtype))

    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(len(sym))
    combo = sum(c * s for c, s in zip(coeffs, sym))

    u = np.eye(n, dtype=dtype)
    blocks = [list(range(n))]
    for target in [combo, *sym]:
        radius = max(np.max(np.abs(np.linalg.eigvalsh(target))), 0.0)
        gap = BLOCK_TOL * radius
        new_blocks = []
        for block in blocks:
            if len(block) == 1:
                new_blocks.append(block)
                continue
            sub = u[:, block]
            restricted = adjoint(sub) @ target @ sub
            vals, vecs = np.linalg.eigh((restricted + adjoint(restricted)) / 2)
            u[:, block] = sub @ vecs
            for group in _split_clusters(vals, gap):
                new_blocks.append([block[g] for g in group])
        blocks = new_blocks

    basis = chol_h_inv @ u
    diagonals = [np.real(np.einsum("ij,jk,ki->i", adjoint(u), s, u)) for s in sym]
    return basis, diagonals
