"""Partial transpose of pure-state density matrices.

Composite index convention: basis vector ``|i> (x) |J>`` sits at position
``i * m + J`` (row-major flattening of the coefficient matrix), so that
``rho[iJ, kL] = C[i, J] * conj(C[k, L])``.  The CHSH module uses the same
ordering.

For a pure state the spectrum of the partial transpose is fully fixed by
the squared Schmidt coefficients, and for ``2 x m`` and ``3 x 3`` states it
can be written in terms of ``E_total`` and ``|det C|^2`` alone;
:func:`closed_form_spectrum_2xm` and :func:`cubic_spectrum_3x3` build those
closed forms so they can be compared with the numerical spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cubic import cubic_roots
from .eigen import hermitian_spectrum
from .entanglement import e_total_value
from .errors import DimensionError, InvalidStateError
from .state import NORMALIZED_TOL, StateMatrix, as_state

#: Smallest eigenvalue still counted as non-negative is ``-PPT_TOL``.
PPT_TOL = 1e-9

#: Largest ``m`` for which the ``2 x m`` closed form is treated as established;
#: beyond it results are labelled as extrapolated.
VERIFIED_2XM_MAX = 5


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray
    n: int
    m: int

    @property
    def dim(self) -> int:
        return self.n * self.m


@dataclass(frozen=True, eq=False)
class ClosedFormComparison:
    kind: str  # "2xm" or "3x3"
    eigenvalues: np.ndarray
    max_deviation: float
    extrapolated: bool


@dataclass(frozen=True, eq=False)
class PartialTransposeSpectrum:
    sigma: np.ndarray
    eigenvalues: np.ndarray
    min_eigenvalue: float
    ppt_positive: bool
    tol: float
    side: str
    trace: float
    trace_sq: float
    closed_form: ClosedFormComparison | None = None

    @property
    def dim(self) -> int:
        return self.sigma.shape[0]


def _require_normalized(C: StateMatrix) -> None:
    if not C.is_normalized(NORMALIZED_TOL):
        raise InvalidStateError(f"state must be normalized (norm2={C.norm2!r})")


def density_matrix(C) -> DensityMatrix:
    """``rho = |psi><psi|`` for a normalized coefficient matrix."""
    C = as_state(C)
    _require_normalized(C)
    psi = C.data.ravel()
    return DensityMatrix(np.outer(psi, psi.conj()), C.n, C.m)


def partial_transpose(rho: DensityMatrix, side: str = "A") -> np.ndarray:
    """Transpose the indices of one subsystem.

    Side ``"A"``: ``sigma[iJ, kL] = rho[kJ, iL]``;
    side ``"B"``: ``sigma[iJ, kL] = rho[iL, kJ]``.
    """
    n, m = rho.n, rho.m
    T = rho.entries.reshape(n, m, n, m)
    if side == "A":
        T = T.transpose(2, 1, 0, 3)
    elif side == "B":
        T = T.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return np.ascontiguousarray(T).reshape(n * m, n * m)


def trace_checks(sigma: np.ndarray) -> tuple[float, float]:
    """``(Tr sigma, Tr sigma^2)``; both are 1 for a normalized pure state."""
    sigma = np.asarray(sigma)
    tr = float(np.real(np.trace(sigma)))
    # Tr(sigma^2) = sum |sigma_ij|^2 for Hermitian sigma
    tr2 = float(np.sum(sigma.real**2 + sigma.imag**2))
    return tr, tr2


def ppt_verdict(eigenvalues, tol: float = PPT_TOL) -> bool:
    """True when no eigenvalue is below ``-tol``."""
    return bool(np.min(eigenvalues) >= -tol)


def closed_form_spectrum_2xm(C, tol: float = 1e-12) -> np.ndarray:
    """Partial-transpose spectrum of a normalized ``2 x m`` state.

    ``2m - 4`` zeros, ``+-sqrt(E)`` and ``(1 +- sqrt(1 - 4E)) / 2`` with
    ``E = E_total``; sorted descending.

    ``1 - 4E`` cancels badly near ``E = 1/4``, so the discriminant is taken
    from the equivalent sum of squares ``(L1 - L2)^2 + 4 |<row1, row2>|^2``
    and the leading 1 from the actual ``norm2``.
    """
    C = as_state(C)
    if C.n != 2:
        raise DimensionError(f"closed form applies to 2 x m states, got {C.n} x {C.m}")
    _require_normalized(C)
    E = e_total_value(C)
    if E > 0.25 + tol:
        raise InvalidStateError(f"E_total = {E!r} exceeds 1/4; closed form would be complex")
    X = C.data
    L1, L2 = np.sum(np.abs(X) ** 2, axis=1)
    disc = (L1 - L2) ** 2 + 4.0 * abs(np.vdot(X[0], X[1])) ** 2
    root = math.sqrt(disc)
    vals = [math.sqrt(E), -math.sqrt(E), 0.5 * (C.norm2 + root), 0.5 * (C.norm2 - root)]
    vals += [0.0] * (2 * C.m - 4)
    return np.sort(np.array(vals))[::-1]


def cubic_spectrum_3x3(C) -> np.ndarray:
    """Partial-transpose spectrum of a normalized ``3 x 3`` state from two cubics.

    With ``E = E_total`` and ``D = |det C|^2``: three eigenvalues are the
    roots of ``x^3 - x^2 + E x - D``; the other six are ``+-sqrt(y)`` over
    the roots of ``y^3 - E y^2 + D y - D^2``.
    """
    C = as_state(C)
    if C.shape != (3, 3):
        raise DimensionError(f"cubic closed form applies to 3 x 3 states, got {C.n} x {C.m}")
    _require_normalized(C)
    E = e_total_value(C)
    D = abs(np.linalg.det(C.data)) ** 2
    xs = cubic_roots(-1.0, E, -D)
    ys = cubic_roots(-E, D, -D * D)
    if np.min(ys) < -1e-9:
        raise ArithmeticError(f"negative root {np.min(ys)!r} of the product-of-weights cubic")
    r = np.sqrt(np.clip(ys, 0.0, None))
    return np.sort(np.concatenate([xs, r, -r]))[::-1]


def closed_form_comparison(C, eigenvalues: np.ndarray) -> ClosedFormComparison | None:
    """Closed-form spectrum for ``2 x m`` / ``3 x 3`` states and its largest
    deviation from ``eigenvalues``; None for other shapes."""
    C = as_state(C)
    if C.n == 2 and C.m >= 2:
        cf = closed_form_spectrum_2xm(C)
        kind, extrapolated = "2xm", C.m > VERIFIED_2XM_MAX
    elif C.shape == (3, 3):
        cf = cubic_spectrum_3x3(C)
        kind, extrapolated = "3x3", False
    else:
        return None
    dev = float(np.max(np.abs(np.sort(cf) - np.sort(eigenvalues))))
    return ClosedFormComparison(kind, cf, dev, extrapolated)


def ppt_spectrum(C, side: str = "A", tol: float = PPT_TOL, closed_form: bool = False) -> PartialTransposeSpectrum:
    """Density matrix, partial transpose, its spectrum and the PPT verdict."""
    C = as_state(C)
    sigma = partial_transpose(density_matrix(C), side)
    w = hermitian_spectrum(sigma)
    tr, tr2 = trace_checks(sigma)
    cf = closed_form_comparison(C, w) if closed_form else None
    return PartialTransposeSpectrum(
        sigma=sigma,
        eigenvalues=w,
        min_eigenvalue=float(w[-1]),
        ppt_positive=ppt_verdict(w, tol),
        tol=tol,
        side=side,
        trace=tr,
        trace_sq=tr2,
        closed_form=cf,
    )
