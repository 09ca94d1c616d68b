import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tqft2d.errors import IncompatiblePair, NotPositiveDefinite
from tqft2d.frobenius import FrobeniusAlgebra, closed_surface, copairing, handle_operator
from tqft2d.hermitian import HermitianStructure, build_involution
from tqft2d.linalg import max_norm, op_norm
from tqft2d.random_algebras import random_hidden_algebra
from tqft2d.unitary import classify, closed_surface_series, cstar_check, handle_spectrum

from conftest import one_dim

seeds = st.integers(0, 2**32 - 1)


def diag_pair(weights):
    a = FrobeniusAlgebra.diagonal(weights)
    return a, HermitianStructure(a.pairing_matrix)


def test_classify_diagonal():
    a, h = diag_pair([1, 2])
    c = classify(a, h)
    assert np.allclose(c.weights, [1, 2])
    assert np.allclose(c.idempotents, np.eye(2))


def test_classify_group_algebra(z2):
    c = classify(z2, HermitianStructure(np.eye(2)))
    # (1 - g)/2 then (1 + g)/2: equal weights, tie broken by input coordinates
    assert np.allclose(c.weights, [0.5, 0.5])
    assert np.allclose(c.idempotents.T, [[0.5, -0.5], [0.5, 0.5]])


def test_classify_rejects_negative():
    with pytest.raises(NotPositiveDefinite):
        classify(one_dim(-1), HermitianStructure([[-1.0]]))


def test_classify_rejects_incompatible():
    with pytest.raises(IncompatiblePair):
        classify(one_dim(-1), HermitianStructure([[1.0]]))


def test_classify_rejects_indefinite_random(rng):
    ha = random_hidden_algebra(3, rng, negative=1)
    with pytest.raises(NotPositiveDefinite):
        classify(ha.algebra, ha.hermitian)


@given(seeds)
def test_classify_roundtrip(seed):
    rng = np.random.default_rng(seed)
    ha = random_hidden_algebra(int(rng.integers(1, 7)), rng)
    c = classify(ha.algebra, ha.hermitian)
    assert np.allclose(c.weights, np.sort(ha.weights), rtol=1e-7, atol=0)
    assert all(v <= 1e-8 for v in c.residuals.values())
    a = ha.algebra
    # phi(x)(unit) = x, so the representation is faithful on the basis
    for x in np.eye(a.dim):
        assert np.allclose(a.left_mul(x) @ a.unit, x)
    # copairing in idempotent coordinates is sum (1/w_i) e_i (x) e_i
    e_inv = np.linalg.inv(c.idempotents)
    gamma = copairing(a).reshape(a.dim, a.dim)
    assert np.allclose(e_inv @ gamma @ e_inv.T, np.diag(1 / c.weights), rtol=1e-8, atol=1e-9 * np.max(1 / c.weights))


def test_spectrum_examples(z2):
    a, h = diag_pair([1, 2])
    assert np.allclose(handle_spectrum(classify(a, h)), [1, 0.5], rtol=0, atol=1e-12)
    a, h = diag_pair([1, 1, 1])
    c = classify(a, h)
    assert np.allclose(handle_spectrum(c), 1)
    assert np.allclose(handle_operator(a), np.eye(3))
    s = handle_spectrum(classify(z2, HermitianStructure(np.eye(2))))
    assert np.allclose(s, [2, 2])
    assert np.allclose(handle_operator(z2), 2 * np.eye(2))


@given(seeds)
def test_spectrum_matches_handle_eigenvalues(seed):
    rng = np.random.default_rng(seed)
    ha = random_hidden_algebra(int(rng.integers(1, 6)), rng)
    c = classify(ha.algebra, ha.hermitian)
    eig = np.sort(np.linalg.eigvals(handle_operator(ha.algebra)).real)
    assert np.allclose(np.sort(handle_spectrum(c)), eig, rtol=1e-7, atol=0)
    # in the idempotent basis the handle is diag(lambda)
    h_idem = np.linalg.inv(c.idempotents) @ handle_operator(ha.algebra) @ c.idempotents
    assert max_norm(h_idem - np.diag(c.lambdas)) <= 1e-8 * np.max(c.lambdas)


def test_cstar_hand_example():
    # weights (1, 2), x = e1 + i e2: J x = e1 - i e2, (J x) x = e1 + e2, beta(J x, x) = 3
    a, h = diag_pair([1, 2])
    c = classify(a, h)
    j = build_involution(a, h).involution
    x = np.array([1, 1j])
    jx = j(x)
    assert np.allclose(jx, [1, -1j])
    prod = a.multiply(jx, x)
    assert np.allclose(prod, [1, 1])
    assert c.norm(prod) == pytest.approx(c.norm(x) * c.norm(jx)) == pytest.approx(1)
    assert a.apply_counit(prod) == pytest.approx(3)
    e1 = np.array([1.0, 0.0])
    assert c.norm(a.multiply(e1, e1)) == pytest.approx(c.norm(e1) ** 2) == pytest.approx(1)
    x2 = 2 * e1
    assert a.apply_counit(a.multiply(j(x2), x2)) == pytest.approx(4)


def test_cstar_norm_is_operator_norm(rng):
    ha = random_hidden_algebra(4, rng)
    c = classify(ha.algebra, ha.hermitian)
    e, e_inv = c.idempotents, np.linalg.inv(c.idempotents)
    for _ in range(10):
        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        phi = e_inv @ ha.algebra.left_mul(x) @ e
        assert op_norm(phi) == pytest.approx(c.norm(x), rel=1e-9)


def test_cstar_random(rng):
    ha = random_hidden_algebra(5, rng)
    rep = cstar_check(ha.algebra, ha.hermitian, samples=1000, seed=3)
    assert rep.ok
    assert rep.positivity_min > 1e-9
    assert rep.norm_identity_deviation <= 1e-9


def test_cstar_seeded_is_reproducible(rng):
    ha = random_hidden_algebra(3, rng)
    r1 = cstar_check(ha.algebra, ha.hermitian, samples=50, seed=11)
    r2 = cstar_check(ha.algebra, ha.hermitian, samples=50, seed=11)
    assert r1 == r2


def test_surface_series_examples():
    a, h = diag_pair([1, 2])
    c = classify(a, h)
    series = closed_surface_series(c, 3)
    assert series[0] == pytest.approx(3)
    assert series[1] == pytest.approx(2)
    assert series[3] == pytest.approx(1.25)
    for g, v in enumerate(series):
        assert closed_surface(a, g) == pytest.approx(v)


@given(seeds)
def test_surface_series_matches_evaluation(seed):
    rng = np.random.default_rng(seed)
    ha = random_hidden_algebra(int(rng.integers(1, 6)), rng)
    c = classify(ha.algebra, ha.hermitian)
    for g, v in enumerate(closed_surface_series(c, 4)):
        assert closed_surface(ha.algebra, g) == pytest.approx(v, rel=1e-8)
