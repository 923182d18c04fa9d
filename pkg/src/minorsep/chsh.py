"""CHSH operator on two qubits and the maximum over measurement settings.

Observables are Bloch-vector contractions ``n . sigma`` with the Pauli
matrices; the operator is ``(Q + R) (x) S + (Q - R) (x) T`` in the same
``|i> (x) |J>`` ordering as :mod:`minorsep.ppt`.  For a (possibly
unnormalized) 2x2 coefficient matrix the maximum over settings is
``2 sqrt(<psi|psi>^2 + 4 |det C|^2)``; :func:`chsh_optimize` recovers it
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .criteria import QuadSelector, submatrix_Q
from .errors import DimensionError
from .state import StateMatrix, as_state

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

UNIT_TOL = 1e-12
IMAG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MeasurementSetting:
    """Bloch directions: ``q``, ``r`` on the first qubit, ``s``, ``t`` on the second."""

    q: np.ndarray
    r: np.ndarray
    s: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        for name in ("q", "r", "s", "t"):
            v = np.array(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
            if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
                raise ValueError(f"{name} is not a unit vector (norm {np.linalg.norm(v)!r})")
            v.flags.writeable = False
            object.__setattr__(self, name, v)

    @classmethod
    def from_angles(cls, angles) -> "MeasurementSetting":
        """Build from ``(theta_q, phi_q, theta_r, phi_r, ..., phi_t)``."""
        a = np.asarray(angles, dtype=float).reshape(4, 2)
        return cls(*(_unit(th, ph) for th, ph in a))

    def as_dict(self) -> dict[str, list[float]]:
        return {k: getattr(self, k).tolist() for k in ("q", "r", "s", "t")}


@dataclass(frozen=True, eq=False)
class ChshResult:
    settings: MeasurementSetting
    achieved: float
    closed_form_max: float
    gap: float
    evaluations: int
    selector: QuadSelector | None = None
    e_param: float | None = None


def _unit(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def bloch_observable(n) -> np.ndarray:
    """``n . sigma`` as a 2x2 matrix."""
    return np.tensordot(np.asarray(n, dtype=float), PAULI, axes=1)


def chsh_operator(settings: MeasurementSetting) -> np.ndarray:
    """The 4x4 Hermitian CHSH operator for the given directions."""
    Q, R, S, T = (bloch_observable(getattr(settings, k)) for k in ("q", "r", "s", "t"))
    return np.kron(Q + R, S) + np.kron(Q - R, T)


def _two_qubit(C) -> StateMatrix:
    C = as_state(C)
    if C.shape != (2, 2):
        raise DimensionError(f"CHSH needs a 2 x 2 coefficient matrix, got {C.n} x {C.m}")
    return C


def chsh_expectation(C, settings: MeasurementSetting) -> float:
    """``<psi| CHSH |psi>`` with ``psi`` the flattened coefficients (no normalization)."""
    C = _two_qubit(C)
    psi = C.data.ravel()
    val = np.vdot(psi, chsh_operator(settings) @ psi)
    if abs(val.imag) > IMAG_TOL * max(1.0, C.norm2):
        raise ArithmeticError(f"CHSH expectation has imaginary part {val.imag!r}")
    return float(val.real)


def chsh_max_closed(C) -> float:
    """``2 sqrt(<psi|psi>^2 + 4 |det C|^2)``, the maximum over all settings."""
    C = _two_qubit(C)
    X = C.data
    det = X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0]
    return 2.0 * math.sqrt(C.norm2**2 + 4.0 * abs(det) ** 2)


def e_param_from_chsh(max_value: float, norm2: float) -> float:
    """Invert the closed form: ``|det C|^2`` from a measured maximum and ``<psi|psi>``."""
    return (max_value**2 / 4.0 - norm2**2) / 4.0


def correlation_tensor(C) -> np.ndarray:
    """``T[a, b] = <psi| sigma_a (x) sigma_b |psi>`` (real 3x3)."""
    psi = _two_qubit(C).data.ravel()
    T = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            T[a, b] = np.vdot(psi, np.kron(PAULI[a], PAULI[b]) @ psi).real
    return T


class _Objective:
    """CHSH value as a function of the 8 angles, via the correlation tensor."""

    def __init__(self, T: np.ndarray):
        self.T = T
        self._rows = [tuple(float(v) for v in row) for row in T]
        self.calls = 0

    def __call__(self, x) -> float:
        # plain floats: this is the optimizer's inner loop
        self.calls += 1
        sin, cos = math.sin, math.cos
        vecs = []
        for k in range(4):
            th, ph = x[2 * k], x[2 * k + 1]
            st = sin(th)
            vecs.append((st * cos(ph), st * sin(ph), cos(th)))
        q, r, s, t = vecs
        plus = (q[0] + r[0], q[1] + r[1], q[2] + r[2])
        minus = (q[0] - r[0], q[1] - r[1], q[2] - r[2])
        total = 0.0
        for a, row in enumerate(self._rows):
            total += plus[a] * (row[0] * s[0] + row[1] * s[1] + row[2] * s[2])
            total += minus[a] * (row[0] * t[0] + row[1] * t[1] + row[2] * t[2])
        return total


_THIRDS = (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)


def _ascend(f: _Objective, x: np.ndarray, rng: np.random.Generator, passes: int) -> tuple[np.ndarray, float]:
    """Coordinate ascent on the angles.

    Along any single angle the objective is ``c + A cos x + B sin x``, so
    three equally spaced samples determine it and its maximizer exactly.
    """
    x = [float(v) for v in x]
    fx = f(x)
    for _ in range(passes):
        start = fx
        for k in range(8):
            if k % 2 == 1 and abs(math.sin(x[k - 1])) < 1e-6:
                # azimuth is meaningless at a pole
                x[k] = float(rng.uniform(0.0, 2.0 * math.pi))
                continue
            x0 = x[k]
            a = b = 0.0
            for d in _THIRDS:
                x[k] = x0 + d
                fd = f(x)
                a += fd * math.cos(x0 + d)
                b += fd * math.sin(x0 + d)
            x[k] = math.atan2(b, a)
            fnew = f(x)
            if fnew >= fx:
                fx = fnew
            else:
                x[k] = x0
        if fx - start <= 1e-15 * max(1.0, abs(fx)):
            break
    return np.array(x), fx


def chsh_optimize(C, budget: int = 20, seed: int = 0, passes: int = 500) -> ChshResult:
    """Maximize the CHSH expectation over measurement directions.

    Runs ``budget`` seeded random restarts of derivative-free coordinate
    ascent over the 8 spherical angles (at most ``passes`` sweeps each) and
    keeps the best, earliest restart winning ties.  Restart ``k`` depends
    only on ``(seed, k)``, so raising ``budget`` never lowers the result.
    """
    C = _two_qubit(C)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    f = _Objective(correlation_tensor(C))
    best_x, best_f = None, -math.inf
    for child in np.random.SeedSequence(seed).spawn(budget):
        rng = np.random.default_rng(child)
        x0 = np.empty(8)
        x0[0::2] = np.arccos(rng.uniform(-1.0, 1.0, 4))
        x0[1::2] = rng.uniform(0.0, 2.0 * math.pi, 4)
        x, fx = _ascend(f, x0, rng, passes)
        if fx > best_f:
            best_x, best_f = x.copy(), fx
    settings = MeasurementSetting.from_angles(best_x)
    achieved = chsh_expectation(C, settings)
    bound = chsh_max_closed(C)
    return ChshResult(settings, achieved, bound, bound - achieved, f.calls)


def submatrix_chsh(C, sel: QuadSelector, budget: int = 20, seed: int = 0, passes: int = 500) -> ChshResult:
    """CHSH maximum of the (unnormalized) 2x2 block ``sel``.

    The block is treated as a two-qubit state with its own ``<psi|psi>``;
    ``e_param`` carries the block's ``|det|^2`` for comparison.
    """
    block = StateMatrix(submatrix_Q(C, sel))
    res = chsh_optimize(block, budget, seed, passes)
    X = block.data
    det = X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0]
    return ChshResult(
        res.settings,
        res.achieved,
        res.closed_form_max,
        res.gap,
        res.evaluations,
        selector=sel,
        e_param=float(abs(det) ** 2),
    )
