"""Per-block entanglement parameters and maximally entangled states.

Each 2x2 block ``Q`` of the coefficient matrix carries the parameter
``|det Q|**2``; their sum ``E_total`` vanishes exactly on product states and
never exceeds ``(N - 1) / (2N)`` for a normalized state, ``N = min(n, m)``.
The bound is reached exactly when the rows (or, for ``n > m``, the
columns) are orthogonal with equal norms ``1/N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .criteria import QuadSelector, all_minors, iter_selectors, submatrix_Q
from .errors import DimensionError, InvalidStateError
from .state import NORMALIZED_TOL, StateMatrix, as_state


@dataclass(frozen=True, eq=False)
class EntanglementReport:
    params: dict[QuadSelector, float]
    total: float
    upper_bound: float
    maxent_residual: float

    def top(self, k: int | None = None) -> list[tuple[QuadSelector, float]]:
        """Parameters sorted by value (descending), selector order on ties."""
        items = sorted(self.params.items(), key=lambda kv: (-kv[1], kv[0]))
        return items if k is None else items[:k]


@dataclass(frozen=True, eq=False)
class RowGram:
    """Row norms ``L[i] = sum_J |C[i, J]|^2`` and row inner products.

    ``offdiag[(i, j)]`` for ``i < j`` holds ``sum_K conj(C[i, K]) C[j, K]``.
    """

    L: np.ndarray
    offdiag: dict[tuple[int, int], complex]
    gram: np.ndarray


def row_gram(C) -> RowGram:
    X = as_state(C).data
    G = X.conj() @ X.T  # G[i, j] = sum_K conj(C[i, K]) C[j, K]
    L = np.real(np.diag(G)).copy()
    n = X.shape[0]
    off = {(i, j): complex(G[i, j]) for i in range(n) for j in range(i + 1, n)}
    return RowGram(L, off, G)


def e_param(C, sel: QuadSelector) -> float:
    """``|det Q|**2`` for the block picked by ``sel``; no renormalization."""
    Q = submatrix_Q(C, sel)
    d = Q[0, 0] * Q[1, 1] - Q[0, 1] * Q[1, 0]
    return float(d.real**2 + d.imag**2)


def e_total_value(C) -> float:
    """Just the scalar ``E_total`` (sum of all squared minor moduli)."""
    C = as_state(C)
    if C.n < 2 or C.m < 2:
        return 0.0
    d = all_minors(C)
    return float(np.sum(d.real**2 + d.imag**2))


def e_upper_bound(n: int, m: int) -> float:
    """Largest ``E_total`` a normalized ``n x m`` state can reach."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    N = min(n, m)
    return (N - 1) / (2 * N)


def _maxent_residual(X: np.ndarray) -> float:
    if X.shape[0] > X.shape[1]:
        X = X.T
    n = X.shape[0]
    G = X.conj() @ X.T
    return float(np.max(np.abs(G - np.eye(n) / n)))


def e_total(C) -> EntanglementReport:
    """All block parameters, their sum, the dimension bound and the
    distance from the maximally-entangled condition."""
    C = as_state(C)
    params: dict[QuadSelector, float] = {}
    if C.n >= 2 and C.m >= 2:
        d = all_minors(C).ravel()
        vals = (d.real**2 + d.imag**2).tolist()
        params = dict(zip(iter_selectors(C.n, C.m), vals))
    total = float(math.fsum(params.values()))
    return EntanglementReport(params, total, e_upper_bound(C.n, C.m), _maxent_residual(C.data))


def maxent_check(C, tol: float = 1e-10) -> tuple[bool, float]:
    """Test ``sum_K conj(C[i,K]) C[j,K] == delta_ij / n`` on a normalized state.

    Returns ``(is_max, residual)`` with ``residual`` the largest entrywise
    deviation of the row Gram matrix from ``I / n``.  For ``n > m`` the
    condition is applied to the transpose, so it always refers to the
    smaller side.
    """
    C = as_state(C)
    if not C.is_normalized(NORMALIZED_TOL):
        raise InvalidStateError(f"maxent_check needs a normalized state (norm2={C.norm2!r})")
    r = _maxent_residual(C.data)
    return r <= tol, r


def _orthonormal_rows(X: np.ndarray) -> np.ndarray:
    # modified Gram-Schmidt, two passes
    Q = X.astype(np.complex128, copy=True)
    for _ in range(2):
        for i in range(Q.shape[0]):
            for j in range(i):
                Q[i] -= np.vdot(Q[j], Q[i]) * Q[j]
            nrm = np.linalg.norm(Q[i])
            if nrm < 1e-8:
                raise InvalidStateError("degenerate random draw during orthonormalization")
            Q[i] /= nrm
    return Q


def generate_maxent(n: int, m: int, seed: int | np.random.Generator | None = None) -> StateMatrix:
    """Random maximally entangled ``n x m`` state.

    Rows of a seeded complex Gaussian matrix are orthonormalized and scaled
    by ``1/sqrt(n)``.  For ``n > m`` the ``m x n`` state is built and
    transposed.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    if n > m:
        return generate_maxent(m, n, seed).transpose()
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    return StateMatrix(_orthonormal_rows(X) / math.sqrt(n))


def verify_2xm_identity(C) -> tuple[float, float]:
    """Both sides of the row-norm identity for a two-row state.

    ``lhs = (L1 + L2)**2 - 4 E_total`` and
    ``rhs = (L1 - L2)**2 + 4 |<row1, row2>|**2``; they agree for every
    2 x m matrix, normalized or not.
    """
    C = as_state(C)
    if C.n != 2:
        raise DimensionError(f"identity applies to 2 x m states, got {C.n} x {C.m}")
    g = row_gram(C)
    L1, L2 = g.L
    lhs = (L1 + L2) ** 2 - 4.0 * e_total_value(C)
    rhs = (L1 - L2) ** 2 + 4.0 * abs(g.offdiag[(0, 1)]) ** 2
    return float(lhs), float(rhs)

