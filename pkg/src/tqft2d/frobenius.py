"""Commutative Frobenius algebras given by structure constants.

An algebra of dimension ``n`` is stored in a fixed basis ``b_0 .. b_{n-1}``:

* ``mul[i, j, k]`` is the coefficient of ``b_k`` in ``b_i * b_j``
* ``unit`` holds the coordinates of the unit
* ``counit[i]`` is the Frobenius form evaluated on ``b_i``

Maps between tensor powers are matrices whose rows index the codomain and
columns the domain, tensor indices lexicographic with the first factor major.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch
from .linalg import DEFAULT_TOL, as_matrix, kron, max_norm, op_norm, solve


def _as_complex(a, shape, name):
    arr = np.asarray(a, dtype=complex)
    if arr.shape != shape:
        raise DimensionMismatch(f"{name} has shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    mul: np.ndarray
    unit: np.ndarray
    counit: np.ndarray
    tol: float = field(default=DEFAULT_TOL)

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=complex)
        if mul.ndim != 3 or len(set(mul.shape)) != 1:
            raise DimensionMismatch(f"structure constants must be n x n x n, got {mul.shape}")
        n = mul.shape[0]
        if n == 0:
            raise DimensionMismatch("algebra must have positive dimension")
        object.__setattr__(self, "mul", _as_complex(mul, (n, n, n), "mul"))
        object.__setattr__(self, "unit", _as_complex(self.unit, (n,), "unit"))
        object.__setattr__(self, "counit", _as_complex(self.counit, (n,), "counit"))

    @property
    def dim(self):
        return self.mul.shape[0]

    @classmethod
    def diagonal(cls, weights, tol=DEFAULT_TOL):
        """The algebra C^n with coordinatewise product and counit ``weights``."""
        w = np.asarray(weights, dtype=complex)
        n = w.shape[0]
        mul = np.zeros((n, n, n), dtype=complex)
        for i in range(n):
            mul[i, i, i] = 1
        return cls(mul, np.ones(n), w, tol=tol)

    @classmethod
    def group_algebra(cls, order, tol=DEFAULT_TOL):
        """C[Z/order] on the basis of group elements, counit picking out the identity."""
        mul = np.zeros((order, order, order), dtype=complex)
        for i in range(order):
            for j in range(order):
                mul[i, j, (i + j) % order] = 1
        unit = np.zeros(order)
        unit[0] = 1
        return cls(mul, unit, unit.copy(), tol=tol)

    # -- basic operations -------------------------------------------------

    def multiply(self, x, y):
        return np.einsum("i,j,ijk->k", x, y, self.mul)

    def apply_counit(self, x):
        return self.counit @ np.asarray(x)

    @cached_property
    def mul_matrix(self):
        """mu as an ``n x n^2`` matrix."""
        n = self.dim
        return self.mul.reshape(n * n, n).T.copy()

    def left_mul(self, x):
        """Matrix of ``y -> x * y``."""
        return np.einsum("i,ijk->kj", x, self.mul)

    def change_basis(self, basis):
        """Re-express the algebra in the basis given by the columns of ``basis``."""
        s = as_matrix(np.asarray(basis, dtype=complex))
        if s.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"basis has shape {s.shape}")
        s_inv = solve(s, np.eye(self.dim), tol=self.tol)
        mul = np.einsum("ai,bj,abk,lk->ijl", s, s, self.mul, s_inv)
        return FrobeniusAlgebra(mul, s_inv @ self.unit, self.counit @ s, tol=self.tol)

    # -- derived structures -----------------------------------------------

    @cached_property
    def pairing_matrix(self):
        """``B[i, j] = counit(b_i * b_j)``."""
        return np.einsum("ijk,k->ij", self.mul, self.counit)

    @cached_property
    def copairing_matrix(self):
        """Coefficients ``G`` with ``gamma = sum G[i, j] b_i (x) b_j``; solves ``B G = I``."""
        return solve(self.pairing_matrix, np.eye(self.dim), tol=self.tol)

    @cached_property
    def comul_matrix(self):
        """delta as an ``n^2 x n`` matrix, ``delta(x) = sum G[i, j] b_i (x) (b_j * x)``."""
        n = self.dim
        # delta(b_l) = sum_{i,j,k} G[i,j] mul[j,l,k] b_i (x) b_k
        t = np.einsum("ij,jlk->ikl", self.copairing_matrix, self.mul)
        return t.reshape(n * n, n)

    @cached_property
    def handle_matrix(self):
        return self.mul_matrix @ self.comul_matrix


@dataclass
class AxiomReport:
    residuals: dict
    passed: dict

    @property
    def ok(self):
        return all(self.passed.values())

    def failing(self):
        return [k for k, v in self.passed.items() if not v]


def verify_axioms(a, tol=None):
    """Check associativity, commutativity, unit law and nondegeneracy of the pairing."""
    tol = a.tol if tol is None else tol
    n = a.dim
    c = a.mul
    scale = max(max_norm(c), 1.0)
    # (b_i b_j) b_l  vs  b_i (b_j b_l)
    left = np.einsum("ijk,klm->ijlm", c, c)
    right = np.einsum("jlk,ikm->ijlm", c, c)
    assoc = max_norm(left - right) / scale**2
    comm = max_norm(c - c.transpose(1, 0, 2)) / scale
    unit_law = max_norm(a.left_mul(a.unit) - np.eye(n)) / max(scale * max_norm(a.unit), 1.0)
    sv = np.linalg.svd(a.pairing_matrix, compute_uv=False)
    smallest = float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0

    residuals = {
        "associativity": float(assoc),
        "commutativity": float(comm),
        "unit_law": float(unit_law),
        "nondegeneracy": smallest,
    }
    passed = {
        "associativity": assoc <= tol,
        "commutativity": comm <= tol,
        "unit_law": unit_law <= tol,
        "nondegeneracy": smallest > tol,
    }
    return AxiomReport(residuals, passed)


def _check_dims(a, *vecs):
    for v in vecs:
        if np.shape(v) != (a.dim,):
            raise DimensionMismatch(f"vector of shape {np.shape(v)} in a {a.dim}-dimensional algebra")


def pairing(a, x, y):
    _check_dims(a, x, y)
    return complex(np.asarray(x) @ a.pairing_matrix @ np.asarray(y))


def copairing(a):
    """gamma as a vector in V (x) V."""
    return a.copairing_matrix.reshape(-1)


def comultiplication(a):
    return a.comul_matrix


def handle_operator(a):
    return a.handle_matrix


def closed_surface(a, genus):
    """Value of the closed connected surface of the given genus: ``eps(H^g(eta))``."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    v = a.unit
    for _ in range(genus):
        v = a.handle_matrix @ v
    return complex(a.counit @ v)


def snake_residual(a):
    """``||(id (x) beta)(gamma (x) id) - id||`` relative to the identity."""
    n = a.dim
    eye = np.eye(n)
    beta_row = a.pairing_matrix.reshape(1, n * n)
    gamma_col = copairing(a).reshape(n * n, 1)
    lhs = kron(eye, beta_row) @ kron(gamma_col, eye)
    return max_norm(lhs - eye)


def frobenius_residual(a):
    """Residuals of ``(id (x) mu)(delta (x) id) = delta mu = (mu (x) id)(id (x) delta)``."""
    eye = np.eye(a.dim)
    mu, delta = a.mul_matrix, a.comul_matrix
    mid = delta @ mu
    left = kron(eye, mu) @ kron(delta, eye)
    right = kron(mu, eye) @ kron(eye, delta)
    scale = max(op_norm(mid), 1.0)
    return max(max_norm(left - mid), max_norm(right - mid)) / scale


def counit_law_residual(a):
    """``(eps (x) id) delta = id``."""
    eye = np.eye(a.dim)
    lhs = kron(a.counit.reshape(1, -1), eye) @ a.comul_matrix
    return max_norm(lhs - eye)
