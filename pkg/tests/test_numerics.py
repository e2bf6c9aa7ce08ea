import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from biglide.errors import MassNotPositiveDefinite, NotPositiveDefinite, NotSymmetric, Singular
from biglide.numerics import generalized_eigs, invert_symmetric, solve_linear, symmetrize

from conftest import random_spd


def test_invert_identity_and_diagonal():
    assert_allclose(invert_symmetric(np.eye(6)), np.eye(6))
    assert_allclose(invert_symmetric(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))


def test_invert_foot_compliance_residual(ds):
    k = ds.compliance("foot")
    K = invert_symmetric(k)
    assert np.abs(K @ k - np.eye(6)).max() < 1e-6


def test_invert_rejects_asymmetric_and_indefinite(ds):
    with pytest.raises(NotSymmetric):
        invert_symmetric(np.array([[1.0, 0.1], [0.0, 1.0]]))
    with pytest.raises(NotPositiveDefinite):
        invert_symmetric(np.diag([1.0, -1.0]))
    # printed foot compliance is indefinite
    with pytest.raises(NotPositiveDefinite):
        invert_symmetric(ds.k_foot)


def test_symmetrize_tolerance():
    a = np.array([[1.0, 1.0 + 5e-9], [1.0, 2.0]])
    s = symmetrize(a)
    assert_allclose(s, s.T, rtol=0, atol=0)
    with pytest.raises(NotSymmetric):
        symmetrize(np.array([[1.0, 1.0 + 1e-6], [1.0, 2.0]]))


def test_solve_linear_examples(rng):
    b = rng.normal(size=4)
    assert_allclose(solve_linear(np.eye(4), b), b)
    assert_allclose(solve_linear(np.diag([2.0, 5.0]), [2.0, 10.0]), [1.0, 2.0])
    a = random_spd(rng, 6, cond=1e2) + 0.3 * rng.normal(size=(6, 6))
    b = rng.normal(size=6)
    x = solve_linear(a, b)
    assert np.linalg.norm(a @ x - b) <= 1e-9 * np.linalg.norm(b)


def test_solve_linear_singular():
    with pytest.raises(Singular):
        solve_linear(np.array([[1.0, 2.0], [2.0, 4.0]]), [1.0, 2.0])


def test_eigs_decoupled():
    sol = generalized_eigs(np.diag([4.0, 9.0]), np.eye(2))
    assert_allclose(sol.omegas, [2.0, 3.0])


def test_eigs_rank_deficit_gives_exact_zeros(rng):
    V = rng.normal(size=(5, 3))
    k = V @ V.T
    sol = generalized_eigs(k, np.eye(5))
    assert np.count_nonzero(sol.eigenvalues == 0.0) == 2


def test_eigs_two_by_two_closed_form(rng):
    for _ in range(20):
        k = random_spd(rng, 2, cond=50)
        m = random_spd(rng, 2, cond=5)
        # det(k - w m) = 0 as a quadratic in w
        a = np.linalg.det(m)
        b = -(k[0, 0] * m[1, 1] + k[1, 1] * m[0, 0] - 2 * k[0, 1] * m[0, 1])
        c = np.linalg.det(k)
        disc = np.sqrt(b * b - 4 * a * c)
        roots = np.sort([(-b - disc) / (2 * a), (-b + disc) / (2 * a)])
        assert_allclose(generalized_eigs(k, m).eigenvalues, roots, rtol=1e-9)


def test_eigs_residual_and_normalisation(rng):
    k = random_spd(rng, 8, cond=1e4)
    m = random_spd(rng, 8, cond=10)
    sol = generalized_eigs(k, m)
    assert np.all(np.diff(sol.eigenvalues) >= 0)
    for w2, v in zip(sol.eigenvalues, sol.eigenvectors.T):
        assert np.isclose(np.linalg.norm(v), 1.0)
        assert np.linalg.norm(k @ v - w2 * m @ v) <= 1e-6 * np.linalg.norm(k @ v) + 1e-12


def test_eigs_mass_not_pd():
    with pytest.raises(MassNotPositiveDefinite):
        generalized_eigs(np.eye(2), np.diag([1.0, 0.0]))


spd_seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(spd_seeds, st.integers(2, 7))
def test_invert_is_involution(seed, n):
    a = random_spd(np.random.default_rng(seed), n, cond=1e4)
    assert_allclose(invert_symmetric(invert_symmetric(a)), a, rtol=1e-7, atol=1e-7 * np.abs(a).max())


@settings(max_examples=40, deadline=None)
@given(spd_seeds, st.integers(2, 6))
def test_eigs_congruence_invariance(seed, n):
    r = np.random.default_rng(seed)
    k, m = random_spd(r, n, 1e3), random_spd(r, n, 10)
    P = random_spd(r, n, 10) @ np.linalg.qr(r.normal(size=(n, n)))[0]  # cond(P) = 10
    w = generalized_eigs(k, m).eigenvalues
    w2 = generalized_eigs(P.T @ k @ P, P.T @ m @ P).eigenvalues
    assert_allclose(w2, w, rtol=1e-8)


@settings(max_examples=40, deadline=None)
@given(spd_seeds, st.floats(1e-3, 1e3))
def test_eigs_scaling(seed, c):
    r = np.random.default_rng(seed)
    k, m = random_spd(r, 4, 1e3), random_spd(r, 4, 10)
    assert_allclose(generalized_eigs(c * k, m).eigenvalues,
                    c * generalized_eigs(k, m).eigenvalues, rtol=1e-9)
