"""Random Frobenius algebras with a known hidden classification.

Start from ``C^n`` with coordinatewise product and real weights, then move
to a random complex basis. The hidden weights, the basis change and the
form ``h(x, y) = beta(x, conj_hidden(y))`` are returned alongside, so tests
can check recovered structure against the truth.
"""

from dataclasses import dataclass

import numpy as np

from .frobenius import FrobeniusAlgebra
from .hermitian import HermitianStructure
from .linalg import DEFAULT_TOL


@dataclass(frozen=True, eq=False)
class HiddenAlgebra:
    algebra: FrobeniusAlgebra
    hermitian: HermitianStructure
    weights: np.ndarray
    basis: np.ndarray  # columns: new basis vectors in idempotent coordinates


def random_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_invertible(n, rng, cond_max=10.0):
    """Complex matrix with condition number at most ``cond_max``."""
    s = np.exp(rng.uniform(0.0, np.log(cond_max), size=n))
    s[0] = 1.0
    return random_unitary(n, rng) @ np.diag(s) @ random_unitary(n, rng)


def random_weights(n, rng, low=0.1, high=10.0):
    return np.exp(rng.uniform(np.log(low), np.log(high), size=n))


def hidden_algebra(weights, basis, tol=DEFAULT_TOL):
    w = np.asarray(weights, dtype=float)
    s = np.asarray(basis, dtype=complex)
    a = FrobeniusAlgebra.diagonal(w, tol=tol).change_basis(s)
    # h[i, j] = beta(b_i, conj(b_j)) computed in idempotent coordinates
    h = s.T @ np.diag(w) @ np.conj(s)
    return HiddenAlgebra(a, HermitianStructure(h, tol=tol), w, s)


def random_hidden_algebra(n, rng, cond_max=10.0, negative=0, tol=DEFAULT_TOL):
    """Random algebra of dimension ``n``; ``negative`` weights get a minus sign (non-unitary)."""
    w = random_weights(n, rng)
    if negative:
        w[rng.choice(n, size=negative, replace=False)] *= -1
    return hidden_algebra(w, random_invertible(n, rng, cond_max), tol=tol)
