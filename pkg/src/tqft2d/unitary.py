"""Classification of unitary data by positive-weight idempotents.

For a unitary pair the real form is a product of copies of R: multiplication
operators are symmetric for the (positive) pairing, so they diagonalize
simultaneously and the common eigenvectors, rescaled, are orthogonal
idempotents ``e_i``. The weights ``eps(e_i)`` determine everything else: the
handle operator acts on ``e_i`` by ``1/eps(e_i)`` and the closed surface of
genus ``g`` evaluates to ``sum_i eps(e_i)^(1-g)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NotPositiveDefinite
from .frobenius import FrobeniusAlgebra
from .hermitian import build_involution, extract_real_form
from .linalg import DEFAULT_TOL, max_norm, simultaneous_diagonalize, solve


@dataclass(frozen=True, eq=False)
class UnitaryClassification:
    idempotents: np.ndarray  # columns, input-basis coordinates
    weights: np.ndarray
    lambdas: np.ndarray
    residuals: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.weights)

    @property
    def change_of_basis(self):
        return self.idempotents

    def coordinates(self, x):
        """Coordinates of ``x`` (input basis) in the idempotent basis."""
        return solve(self.idempotents, np.asarray(x), tol=DEFAULT_TOL)

    def norm(self, x):
        """Operator norm of left multiplication by ``x``: its largest idempotent coordinate."""
        return float(np.max(np.abs(self.coordinates(x))))


def _sort_key(weight, vec):
    coords = tuple((round(float(z.real), 9), round(float(z.imag), 9)) for z in vec)
    return (round(float(weight), 12), coords)


def classify(a, h, tol=None, seed=0):
    tol = a.tol if tol is None else tol
    ev = h.eigenvalues
    if ev[0] <= tol * max(abs(ev[-1]), 1.0):
        raise NotPositiveDefinite(f"Hermitian form has eigenvalue {ev[0]:.6g}; the data is not unitary")
    report = build_involution(a, h, tol=tol)
    rf = extract_real_form(a, report.involution, tol=tol)

    # left multiplications are symmetric for the real pairing
    q_real, _ = simultaneous_diagonalize(rf.left_mul_matrices(), rf.pairing_matrix(), tol=tol, seed=seed)
    q = rf.basis @ q_real
    # beta-normalized eigenvectors satisfy q_i = e_i / sqrt(w_i) and eps(q_i) = sqrt(w_i)
    idem = q * (a.counit @ q)
    weights_c = a.counit @ idem
    order = sorted(range(a.dim), key=lambda i: _sort_key(weights_c[i].real, idem[:, i]))
    idem = idem[:, order]
    weights_c = weights_c[order]
    weights = weights_c.real.copy()
    if np.any(weights <= tol * max(np.max(np.abs(weights)), 1.0)):
        raise NotPositiveDefinite(f"non-positive idempotent weight {weights.min():.6g}")

    n = a.dim
    prods = np.einsum("ai,bj,abk->ijk", idem, idem, a.mul)
    target = np.zeros_like(prods)
    for i in range(n):
        target[i, i] = idem[:, i]
    scale = max(max_norm(idem), 1.0)
    residuals = {
        "orthogonal_idempotents": max_norm(prods - target) / scale**2,
        "unit_decomposition": max_norm(idem.sum(axis=1) - a.unit) / max(max_norm(a.unit), 1.0),
        "weights_real": max_norm(weights_c.imag) / np.max(np.abs(weights)),
    }
    model = FrobeniusAlgebra.diagonal(weights, tol=tol).change_basis(solve(idem, np.eye(n), tol=tol))
    residuals["reconstruction"] = max(
        max_norm(model.mul - a.mul) / max(max_norm(a.mul), 1.0),
        max_norm(model.counit - a.counit) / max_norm(a.counit),
        max_norm(model.unit - a.unit) / max_norm(a.unit),
    )
    residuals = {k: float(v) for k, v in residuals.items()}
    return UnitaryClassification(idem, weights, 1.0 / weights, residuals)


def handle_spectrum(c):
    """Eigenvalues ``1/eps(e_i)`` of the handle operator, in idempotent order."""
    return np.asarray(c.lambdas, dtype=float).copy()


def closed_surface_series(c, g_max):
    """Closed-surface values ``sum_i w_i^(1-g)`` for ``g = 0 .. g_max``."""
    w = np.asarray(c.weights, dtype=float)
    return [float(np.sum(w ** (1 - g))) for g in range(g_max + 1)]


@dataclass
class CStarReport:
    samples: int
    norm_identity_deviation: float
    positivity_min: float
    positivity_imag: float
    positivity_formula_deviation: float
    tol: float

    @property
    def positive(self):
        return (
            self.positivity_min > 0
            and self.positivity_imag <= self.tol
            and self.positivity_formula_deviation <= self.tol
        )

    @property
    def ok(self):
        return self.positive and self.norm_identity_deviation <= self.tol


def _random_samples(rng, samples, n):
    x = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    # norms between 0.1 and 10
    x *= np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=(samples, 1)))
    return x


def cstar_check(a, h, samples=1000, seed=0, tol=None, classification=None):
    """Sample ``x`` and test ``beta(J x, x) > 0`` and ``||J(x) x|| = ||x|| ||J(x)||``.

    The norm is the operator norm of multiplication in the idempotent
    representation, i.e. the largest absolute idempotent coordinate.
    """
    tol = a.tol if tol is None else tol
    c = classification if classification is not None else classify(a, h, tol=tol, seed=seed)
    j = build_involution(a, h, tol=tol).involution
    rng = np.random.default_rng(seed)
    x = _random_samples(rng, samples, a.dim)
    jx = np.conj(x) @ j.mat.T
    prod = np.einsum("si,sj,ijk->sk", jx, x, a.mul)

    e_inv = solve(c.idempotents, np.eye(a.dim), tol=tol)
    norm_x = np.max(np.abs(x @ e_inv.T), axis=1)
    norm_jx = np.max(np.abs(jx @ e_inv.T), axis=1)
    norm_prod = np.max(np.abs(prod @ e_inv.T), axis=1)
    identity_dev = np.abs(norm_prod - norm_x * norm_jx) / (norm_x * norm_jx)

    value = prod @ a.counit
    sq = np.abs(x @ e_inv.T) ** 2
    expected = sq @ c.weights
    return CStarReport(
        samples=samples,
        norm_identity_deviation=float(identity_dev.max()),
        positivity_min=float(np.min(value.real / np.sum(np.abs(x) ** 2, axis=1))),
        positivity_imag=float(np.max(np.abs(value.imag) / np.abs(value))),
        positivity_formula_deviation=float(np.max(np.abs(value - expected) / expected)),
        tol=tol,
    )
