"""Cyclic Jacobi diagonalization of complex Hermitian matrices."""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DimensionError

HERMITIAN_TOL = 1e-12


def _check_hermitian(A: np.ndarray, tol: float) -> None:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    dev = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    if dev > tol * scale:
        raise DimensionError(f"matrix is not Hermitian (max |A - A^H| = {dev:.3e})")


def jacobi_eigh(A, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition ``A = V diag(w) V^H`` by cyclic Jacobi rotations.

    Each rotation first rotates the phase of ``A[p, q]`` onto the real axis
    and then applies the real symmetric Jacobi rotation that annihilates it.
    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||A||_F``.

    Parameters
    ----------
    A : array_like
        Complex Hermitian matrix (checked to ``1e-12`` relative).
    tol : float
        Relative off-diagonal threshold.
    max_sweeps : int
        Sweep cap; exceeding it raises :class:`ConvergenceError`.

    Returns
    -------
    w : ndarray
        Real eigenvalues in descending order.
    V : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """
    A = np.array(A, dtype=np.complex128, copy=True)
    _check_hermitian(A, HERMITIAN_TOL)
    n = A.shape[0]
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=np.complex128)
    fro = float(np.linalg.norm(A))
    if n < 2 or fro == 0.0:
        return _sorted(np.real(np.diag(A)).copy(), V)

    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0) * float(np.linalg.norm(A[iu]))
        if off <= tol * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r == 0.0 or r < 1e-3 * tol * fro / n:
                    continue
                ce = (apq / r).conjugate()
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # U = [[c, s], [-s*ce, c*ce]] acting on columns p, q
                u10 = -s * ce
                u11 = c * ce
                cp = A[:, p].copy()
                cq = A[:, q]
                A[:, p] = c * cp + u10 * cq
                A[:, q] = s * cp + u11 * cq
                rp = A[p, :].copy()
                rq = A[q, :]
                A[p, :] = c * rp + u10.conjugate() * rq
                A[q, :] = s * rp + u11.conjugate() * rq
                A[p, q] = A[q, p] = 0.0
                A[p, p] = app - t * r
                A[q, q] = aqq + t * r
                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp + u10 * vq
                V[:, q] = s * vp + u11 * vq
    else:
        off = math.sqrt(2.0) * float(np.linalg.norm(A[iu]))
        if off > tol * fro:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")
    return _sorted(np.real(np.diag(A)).copy(), V)


def _sorted(w: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def hermitian_spectrum(A, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, descending."""
    return jacobi_eigh(A, tol, max_sweeps)[0]
