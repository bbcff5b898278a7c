import math

import numpy as np
import pytest

from netstates import Graph, laplacian, matrix_exp_neg, solve_linear_symmetric, sym_eigen


def random_symmetric(rng, n):
    m = rng.normal(size=(n, n))
    return (m + m.T) / 2.0


def test_sym_eigen_zero_matrix():
    dec = sym_eigen(np.zeros((3, 3)))
    assert np.array_equal(dec.values, np.zeros(3))


def test_sym_eigen_k4_and_star():
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert np.allclose(sym_eigen(laplacian(k4)).values, [0, 4, 4, 4], atol=1e-8)
    star = Graph(5, [(0, i) for i in range(1, 5)])
    assert np.allclose(sym_eigen(laplacian(star)).values, [0, 1, 1, 1, 5], atol=1e-8)


def test_sym_eigen_invariants_random():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(2, 25))
        m = random_symmetric(rng, n)
        dec = sym_eigen(m)
        assert np.all(np.diff(dec.values) >= 0)
        scale = max(1.0, np.max(np.abs(m)))
        recon = dec.vectors @ np.diag(dec.values) @ dec.vectors.T
        assert np.max(np.abs(recon - m)) <= 1e-8 * scale
        assert np.max(np.abs(dec.vectors.T @ dec.vectors - np.eye(n))) <= 1e-8
        assert abs(dec.values.sum() - np.trace(m)) <= 1e-8 * max(1.0, abs(np.trace(m)))


def test_sym_eigen_rejects_bad_input():
    with pytest.raises(ValueError, match="non-finite"):
        sym_eigen(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError, match="not symmetric"):
        sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError, match="square"):
        sym_eigen(np.zeros((2, 3)))


def test_connected_laplacian_has_single_null_eigenvalue():
    rng = np.random.default_rng(4)
    for _ in range(10):
        n = int(rng.integers(3, 20))
        edges = {(i, i + 1) for i in range(n - 1)}  # spanning path keeps it connected
        edges |= {
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.2
        }
        values = sym_eigen(laplacian(Graph(n, edges))).values
        assert int(np.sum(values < 1e-8)) == 1


def test_matrix_exp_zero_is_identity():
    assert np.allclose(matrix_exp_neg(np.zeros((4, 4)), beta=2.5), np.eye(4), atol=1e-12)


def test_matrix_exp_diagonal():
    out = matrix_exp_neg(np.diag([0.0, 2.0]), beta=1.0)
    assert np.allclose(out, np.diag([1.0, math.exp(-2.0)]), atol=1e-12)


def test_matrix_exp_single_edge_laplacian():
    lap = laplacian(Graph(2, [(0, 1)]), "combinatorial")
    out = matrix_exp_neg(lap, beta=1.0)
    a = (1 + math.exp(-2)) / 2
    b = (1 - math.exp(-2)) / 2
    assert np.allclose(out, [[a, b], [b, a]], atol=1e-12)


def test_matrix_exp_trace_matches_eigenvalue_sum():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = random_symmetric(rng, int(rng.integers(2, 15)))
        beta = float(rng.uniform(0.1, 3.0))
        dec = sym_eigen(m)
        expected = np.sum(np.exp(-beta * dec.values))
        got = np.trace(matrix_exp_neg(m, beta))
        assert abs(got - expected) <= 1e-10 * abs(expected)


def test_matrix_exp_requires_positive_beta():
    with pytest.raises(ValueError, match="beta"):
        matrix_exp_neg(np.eye(2), beta=0.0)


def test_solve_identity_returns_rhs():
    rhs = np.arange(6.0).reshape(3, 2)
    assert np.allclose(solve_linear_symmetric(np.eye(3), rhs), rhs, atol=1e-14)


def test_solve_two_by_two_hand_inverse():
    m = np.array([[1.25, -0.5], [-0.5, 1.25]])
    x = solve_linear_symmetric(m, np.eye(2))
    expected = np.array([[20 / 21, 8 / 21], [8 / 21, 20 / 21]])  # inverse via det 21/16
    assert np.allclose(x, expected, atol=1e-12)


def test_solve_diagonal():
    x = solve_linear_symmetric(np.diag([2.0, 4.0]), np.ones((2, 1)))
    assert np.allclose(x, [[0.5], [0.25]], atol=1e-14)


def test_solve_residual_bound():
    rng = np.random.default_rng(6)
    for _ in range(10):
        n = int(rng.integers(2, 20))
        a = rng.normal(size=(n, n))
        m = a @ a.T + n * np.eye(n)
        rhs = rng.normal(size=(n, 3))
        x = solve_linear_symmetric(m, rhs)
        assert np.max(np.abs(m @ x - rhs)) <= 1e-8 * max(1.0, np.max(np.abs(rhs)))


def test_solve_rejects_indefinite():
    with pytest.raises(ValueError, match="positive definite"):
        solve_linear_symmetric(np.diag([1.0, -1.0]), np.ones(2))
