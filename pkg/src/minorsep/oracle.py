"""Independent cross-checks, kept algorithmically apart from the main path.

* :func:`schmidt_rank` - singular values by one-sided (Hestenes) Jacobi,
  no minors involved;
* :func:`e_total_gram` - ``E_total`` from traces of ``C C^H``
  (Cauchy-Binet) rather than by enumerating minors;
* :func:`grid_chsh` - exhaustive CHSH search over a fixed angle grid.

These are slow by design and meant for tests and the ``verify`` command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chsh import PAULI
from .errors import ConvergenceError, DimensionError
from .state import as_state

MAX_GRID_RESOLUTION = 12


@dataclass(frozen=True, eq=False)
class SingularProfile:
    values: np.ndarray
    rank: int


def _hestenes(X: np.ndarray, tol: float = 1e-15, max_sweeps: int = 60) -> np.ndarray:
    A = X.astype(np.complex128, copy=True)
    k = A.shape[1]
    # columns below this squared norm are rounding noise of a rank deficit
    floor = (np.finfo(float).eps * float(np.linalg.norm(A))) ** 2
    for _ in range(max_sweeps):
        rotated = False
        for p in range(k - 1):
            for q in range(p + 1, k):
                alpha = float(np.vdot(A[:, p], A[:, p]).real)
                beta = float(np.vdot(A[:, q], A[:, q]).real)
                gamma = complex(np.vdot(A[:, p], A[:, q]))
                g = abs(gamma)
                if g == 0.0 or min(alpha, beta) <= floor or g <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                ce = (gamma / g).conjugate()
                zeta = (beta - alpha) / (2.0 * g)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                ap = A[:, p].copy()
                aq = A[:, q]
                A[:, p] = c * ap - s * ce * aq
                A[:, q] = s * ap + c * ce * aq
        if not rotated:
            return np.sqrt(np.sum(np.abs(A) ** 2, axis=0))
    raise ConvergenceError(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")


def schmidt_rank(C, tol: float = 1e-12) -> SingularProfile:
    """Singular values of ``C`` (descending, ``min(n, m)`` of them) and the
    number exceeding ``tol * max``."""
    X = as_state(C).data
    if X.shape[0] < X.shape[1]:
        X = X.T
    sv = np.sort(_hestenes(X))[::-1]
    rank = int(np.sum(sv > tol * sv[0])) if sv[0] > 0 else 0
    return SingularProfile(sv, rank)


def e_total_gram(C) -> float:
    """``((Tr G)^2 - Tr G^2) / 2`` with ``G = C C^H``."""
    X = as_state(C).data
    G = X @ X.conj().T
    tr = float(np.trace(G).real)
    tr2 = float(np.sum(np.abs(G) ** 2))
    return 0.5 * (tr * tr - tr2)


def _grid_directions(resolution: int) -> np.ndarray:
    th = math.pi * (np.arange(resolution) + 0.5) / resolution
    ph = 2.0 * math.pi * np.arange(resolution) / resolution
    TH, PH = np.meshgrid(th, ph, indexing="ij")
    return np.stack([np.sin(TH) * np.cos(PH), np.sin(TH) * np.sin(PH), np.cos(TH)], axis=-1).reshape(-1, 3)


def grid_chsh(C, resolution: int = 8) -> float:
    """Largest CHSH expectation over a ``resolution**8`` angle grid.

    Polar angles sit at ``pi (k + 1/2) / resolution``, azimuths at
    ``2 pi k / resolution``.  For fixed first-qubit directions the best
    second-qubit directions decouple, so the exhaustive maximum is taken
    exactly without visiting every grid point explicitly.
    """
    X = as_state(C)
    if X.shape != (2, 2):
        raise DimensionError(f"grid_chsh needs a 2 x 2 state, got {X.n} x {X.m}")
    if not 1 <= resolution <= MAX_GRID_RESOLUTION:
        raise ValueError(f"resolution must be in 1..{MAX_GRID_RESOLUTION}")
    psi = X.data.ravel()
    # built here rather than via chsh.correlation_tensor
    T = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            T[a, b] = np.real(psi.conj() @ np.kron(PAULI[a], PAULI[b]) @ psi)
    D = _grid_directions(resolution)
    M = D @ T @ D.T  # M[x, y] = dir_x . T dir_y
    best = -math.inf
    for q in range(len(D)):
        plus = M[q][None, :] + M  # rows r, cols s: M[q, s] + M[r, s]
        minus = M[q][None, :] - M
        best = max(best, float(np.max(plus.max(axis=1) + minus.max(axis=1))))
    return best
