"""Real roots of monic cubics with all-real roots.

``x**3 + a2*x**2 + a1*x + a0`` is shifted to the depressed form
``t**3 + p*t + q``.  Three real roots use the trigonometric formula, one
real root uses Cardano's.  Every root then gets one Newton step.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = np.finfo(float).eps


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _polish(x: float, a2: float, a1: float, a0: float) -> float:
    f = ((x + a2) * x + a1) * x + a0
    df = (3.0 * x + 2.0 * a2) * x + a1
    if df == 0.0:
        return x
    step = f / df
    # a Newton step that lands farther away than the root spread is noise
    return x - step if abs(step) <= 1e-6 * max(1.0, abs(x)) else x


def cubic_roots(a2: float, a1: float, a0: float, imag_tol: float = 1e-7) -> np.ndarray:
    """Real roots of ``x^3 + a2 x^2 + a1 x + a0``, ascending.

    The cubics this package solves come from Hermitian spectra, so all
    three roots are real in exact arithmetic.  When rounding makes the
    discriminant slightly positive, Cardano's complex pair is accepted as a
    (near-)double real root provided its imaginary part is below
    ``imag_tol`` times the coefficient scale; otherwise ``ValueError``.

    Examples
    --------
    >>> cubic_roots(-6.0, 11.0, -6.0)
    array([1., 2., 3.])
    """
    shift = -a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2**3 / 27.0 - a2 * a1 / 3.0 + a0
    scale = max(1.0, abs(a2), abs(a1) ** 0.5, abs(a0) ** (1.0 / 3.0))

    if abs(p) <= 64 * _EPS * scale**2 and abs(q) <= 64 * _EPS * scale**3:
        # triple root; rounding in the coefficients would otherwise split it
        # by ~eps**(1/3)
        roots = [shift, shift, shift]
    else:
        disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
        if disc <= 0.0:
            r = 2.0 * math.sqrt(-p / 3.0)
            arg = 3.0 * q / (p * r) if p != 0.0 else 0.0
            phi = math.acos(max(-1.0, min(1.0, arg)))
            roots = [shift + r * math.cos((phi - 2.0 * math.pi * k) / 3.0) for k in range(3)]
        else:
            sq = math.sqrt(disc)
            u = _cbrt(-q / 2.0 + sq)
            v = _cbrt(-q / 2.0 - sq)
            real = u + v
            imag = math.sqrt(3.0) / 2.0 * abs(u - v)
            if imag > imag_tol * scale:
                raise ValueError(f"cubic has a complex root pair (imag part {imag:.3e})")
            roots = [shift + real, shift - real / 2.0, shift - real / 2.0]
        roots = [_polish(x, a2, a1, a0) for x in roots]
    return np.sort(np.array(roots, dtype=float))
