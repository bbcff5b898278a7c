"""Dense symmetric eigendecomposition and the matrix functions the distances need.

Everything here assumes matrices small enough for full O(n^3) dense solves
(a few hundred to ~1000 nodes per snapshot), which keeps the numerics simple
and exactly reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

_SYM_TOL = 1e-12


@dataclass
class EigenDecomposition:
    """Eigenvalues in ascending order with matching orthonormal eigenvectors."""

    values: np.ndarray   # shape (n,), ascending
    vectors: np.ndarray  # shape (n, n), column i pairs with values[i]


def _check_square_finite(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def _symmetrize(m: np.ndarray) -> np.ndarray:
    asym = np.max(np.abs(m - m.T)) if m.size else 0.0
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if asym > _SYM_TOL * scale:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    return (m + m.T) / 2.0


def sym_eigen(m: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix, ascending eigenvalues."""
    m = _symmetrize(_check_square_finite(m))
    values, vectors = scipy.linalg.eigh(m)
    return EigenDecomposition(values=values, vectors=vectors)


def sym_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues only (cheaper when eigenvectors are not needed)."""
    m = _symmetrize(_check_square_finite(m))
    return scipy.linalg.eigvalsh(m)


def matrix_exp_neg(m: np.ndarray, beta: float) -> np.ndarray:
    """exp(-beta * M) for symmetric M, via eigendecomposition.

    The result is explicitly re-symmetrized so downstream consumers can rely
    on exact symmetry.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    dec = sym_eigen(m)
    scaled = dec.vectors * np.exp(-beta * dec.values)[None, :]
    out = scaled @ dec.vectors.T
    return (out + out.T) / 2.0


def solve_linear_symmetric(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve M X = rhs for symmetric positive-definite M (Cholesky).

    Raises ValueError if M is singular or indefinite within factorization
    tolerance.
    """
    m = _symmetrize(_check_square_finite(m))
    rhs = np.asarray(rhs, dtype=float)
    if rhs.ndim == 1:
        rhs = rhs[:, None]
    if rhs.shape[0] != m.shape[0]:
        raise ValueError("rhs row count must match matrix dimension")
    try:
        factor = scipy.linalg.cho_factor(m)
    except np.linalg.LinAlgError as exc:
        raise ValueError("matrix is not positive definite") from exc
    return scipy.linalg.cho_solve(factor, rhs)
