"""Separability from 2x2 minors of the coefficient matrix.

A pure state is a product state exactly when every 2x2 minor of its
coefficient matrix vanishes.  Three families of 2x2 blocks are available:

* ``S(a, b)``       adjacent rows and adjacent columns,
* ``G(a, b, α, β)`` one pair adjacent, the other stretched,
* ``Q(s, t, u, v)`` any row pair ``s < t`` and column pair ``u < v``.

The adjacent family alone decides separability only together with the
zero flag of the reduced matrix (:func:`reduced_criterion`); the full
family ``Q`` decides it directly (:func:`is_separable`).

All indices passed to functions here are 0-based.  ``str(QuadSelector)``
renders the 1-based form used in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .errors import DimensionError, NotSeparableError
from .state import ZERO_TOL, as_state, reduce, zero_flag


@dataclass(frozen=True, order=True)
class QuadSelector:
    """Rows ``s < t`` and columns ``u < v`` of one 2x2 block (0-based)."""

    s: int
    t: int
    u: int
    v: int

    def __post_init__(self):
        if not (0 <= self.s < self.t and 0 <= self.u < self.v):
            raise DimensionError(f"invalid selector {tuple(self)}: need s < t and u < v")

    def __iter__(self):
        return iter((self.s, self.t, self.u, self.v))

    def __str__(self):
        return f"{self.s + 1},{self.t + 1},{self.u + 1},{self.v + 1}"

    @classmethod
    def parse(cls, label: str) -> "QuadSelector":
        """Inverse of ``str()``: ``"1,2,1,3"`` -> ``QuadSelector(0, 1, 0, 2)``."""
        s, t, u, v = (int(x) - 1 for x in label.split(","))
        return cls(s, t, u, v)

    def check(self, n: int, m: int) -> None:
        if self.t >= n or self.v >= m:
            raise DimensionError(f"selector {self} out of range for a {n}x{m} matrix")


class SeparabilityVerdict(NamedTuple):
    separable: bool
    q_sum: float
    witness: QuadSelector | None
    tol: float


class ReducedVerdict(NamedTuple):
    value: float
    separable: bool


@dataclass(frozen=True, eq=False)
class Factorization:
    """Product-state factors with ``C[i, J] ~= a[i] * b[J]``."""

    a: np.ndarray
    b: np.ndarray
    residual: float

    def outer(self) -> np.ndarray:
        return np.outer(self.a, self.b)


def submatrix_S(C, a: int, b: int) -> np.ndarray:
    """Adjacent block ``C[a:a+2, b:b+2]``."""
    C = as_state(C)
    if not (0 <= a < C.n - 1 and 0 <= b < C.m - 1):
        raise DimensionError(f"adjacent block ({a}, {b}) out of range for a {C.n}x{C.m} matrix")
    return C.data[a : a + 2, b : b + 2].copy()


def submatrix_G(C, a: int, b: int, alpha: int, beta: int) -> np.ndarray:
    """Block on rows ``a, a+alpha`` and columns ``b, b+beta``."""
    C = as_state(C)
    if alpha < 1 or beta < 1 or a < 0 or b < 0 or a + alpha >= C.n or b + beta >= C.m:
        raise DimensionError(f"generalized block {(a, b, alpha, beta)} out of range for a {C.n}x{C.m} matrix")
    return C.data[np.ix_([a, a + alpha], [b, b + beta])]


def submatrix_Q(C, sel: QuadSelector) -> np.ndarray:
    """Block on rows ``sel.s, sel.t`` and columns ``sel.u, sel.v``."""
    C = as_state(C)
    sel.check(C.n, C.m)
    return C.data[np.ix_([sel.s, sel.t], [sel.u, sel.v])]


@lru_cache(maxsize=None)
def _pairs(k: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = np.triu_indices(k, 1)
    i.flags.writeable = False
    j.flags.writeable = False
    return i, j


def all_minors(C) -> np.ndarray:
    """Every 2x2 minor, shape ``(n(n-1)/2, m(m-1)/2)``.

    Entry ``[p, q]`` belongs to the ``p``-th row pair and ``q``-th column
    pair in lexicographic order, so ``ravel()`` is lexicographic in
    ``(s, t, u, v)``.
    """
    X = as_state(C).data
    S, T = _pairs(X.shape[0])
    U, V = _pairs(X.shape[1])
    return X[S][:, U] * X[T][:, V] - X[S][:, V] * X[T][:, U]


def iter_selectors(n: int, m: int) -> Iterator[QuadSelector]:
    """All selectors for an ``n x m`` matrix, lexicographically."""
    S, T = _pairs(n)
    U, V = _pairs(m)
    for s, t in zip(S.tolist(), T.tolist()):
        for u, v in zip(U.tolist(), V.tolist()):
            yield QuadSelector(s, t, u, v)


def selector_at(n: int, m: int, flat_index: int) -> QuadSelector:
    """Selector at position ``flat_index`` of ``all_minors(C).ravel()``."""
    S, T = _pairs(n)
    U, V = _pairs(m)
    p, q = divmod(int(flat_index), len(U))
    return QuadSelector(int(S[p]), int(T[p]), int(U[q]), int(V[q]))


def s_sum(C) -> float:
    """Sum of ``|det|`` over the ``(n-1)(m-1)`` adjacent blocks."""
    X = as_state(C).data
    d = X[:-1, :-1] * X[1:, 1:] - X[:-1, 1:] * X[1:, :-1]
    return float(np.sum(np.abs(d)))


def chi(C) -> float:
    """Sum of ``|det G|`` over the stretched blocks only.

    Two families: adjacent rows with columns ``b, b+beta`` for ``beta >= 2``,
    and adjacent columns with rows ``a, a+alpha`` for ``alpha >= 2``.
    Blocks reaching past the last row or column are skipped.
    """
    X = as_state(C).data
    n, m = X.shape
    total = 0.0
    for beta in range(2, m):
        d = X[:-1, :-beta] * X[1:, beta:] - X[:-1, beta:] * X[1:, :-beta]
        total += float(np.sum(np.abs(d)))
    for alpha in range(2, n):
        d = X[:-alpha, :-1] * X[alpha:, 1:] - X[:-alpha, 1:] * X[alpha:, :-1]
        total += float(np.sum(np.abs(d)))
    return total


def q_sum(C) -> float:
    """Sum of ``|det Q|`` over all ``C(n,2) * C(m,2)`` selectors."""
    C = as_state(C)
    if C.n < 2 or C.m < 2:
        return 0.0
    return float(np.sum(np.abs(all_minors(C))))


def reduced_criterion(C, tol: float = ZERO_TOL) -> ReducedVerdict:
    """Adjacent-minor sum of the reduced matrix plus its zero flag.

    The state is separable iff the value is ``<= tol``.  A zero surviving
    reduction adds 1, which always exceeds any sensible tolerance.
    """
    R = reduce(C, tol).matrix
    value = s_sum(R) + zero_flag(R, tol)
    return ReducedVerdict(value, value <= tol)


def is_separable(C, tol: float = ZERO_TOL) -> SeparabilityVerdict:
    """Decide separability from the sum of all 2x2 minor moduli.

    When entangled, ``witness`` is the selector with the largest ``|det|``
    (ties broken lexicographically).

    Examples
    --------
    >>> import numpy as np
    >>> is_separable(np.eye(2) / np.sqrt(2)).witness
    QuadSelector(s=0, t=1, u=0, v=1)
    """
    C = as_state(C)
    if C.n < 2 or C.m < 2:
        return SeparabilityVerdict(True, 0.0, None, tol)
    mod = np.abs(all_minors(C))
    total = float(np.sum(mod))
    if total <= tol:
        return SeparabilityVerdict(True, total, None, tol)
    return SeparabilityVerdict(False, total, selector_at(C.n, C.m, int(np.argmax(mod))), tol)


def factorize(C, tol: float = ZERO_TOL) -> Factorization:
    """Split a separable state into ``a (x) b``.

    ``a`` is the first column of the reduced matrix and ``b`` its first row
    divided by the corner entry, padded with exact zeros where reduction
    removed rows or columns.  If the corner entry is itself below ``tol``
    (possible only at the tolerance boundary) the largest entry is used as
    the pivot instead.

    Raises
    ------
    NotSeparableError
        If ``is_separable(C, tol)`` fails; the witness is attached.
    """
    C = as_state(C)
    verdict = is_separable(C, tol)
    if not verdict.separable:
        raise NotSeparableError(
            f"state is entangled (q_sum={verdict.q_sum:.3e}, witness {verdict.witness})",
            witness=verdict.witness,
        )
    red = reduce(C, tol)
    R = red.matrix.data
    p, q = 0, 0
    if abs(R[0, 0]) <= tol:
        p, q = np.unravel_index(int(np.argmax(np.abs(R))), R.shape)
    a = np.zeros(C.n, dtype=np.complex128)
    b = np.zeros(C.m, dtype=np.complex128)
    a[list(red.kept_rows)] = R[:, q]
    b[list(red.kept_cols)] = R[p, :] / R[p, q]
    residual = float(np.max(np.abs(C.data - np.outer(a, b))))
    return Factorization(a, b, residual)
