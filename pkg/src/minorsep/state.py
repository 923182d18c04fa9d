"""Coefficient matrices of pure bipartite states.

A pure state ``|psi> = sum_iJ C[i, J] |i> (x) |J>`` is stored as its
``n x m`` complex coefficient matrix.  This module covers construction,
text I/O, normalization, the reduced matrix (all-zero rows and columns
removed) and the zero flag used by the reduced separability test.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidStateError, StateParseError

#: Default modulus below which an entry counts as zero.
ZERO_TOL = 1e-12
#: Allowed deviation of ``norm2`` from 1 for a matrix to count as normalized.
NORMALIZED_TOL = 1e-10

_UNDERFLOW = np.finfo(float).tiny


@dataclass(frozen=True, eq=False)
class StateMatrix:
    """Immutable ``n x m`` complex coefficient matrix.

    Parameters
    ----------
    data : array_like
        Two-dimensional array of complex (or real) entries.  A copy is
        taken and frozen.
    """

    data: np.ndarray
    norm2: float = field(init=False)

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidStateError(f"coefficient matrix must be 2-D and non-empty, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidStateError("coefficient matrix has non-finite entries")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "norm2", float(np.sum(arr.real**2 + arr.imag**2)))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def m(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def is_normalized(self, tol: float = NORMALIZED_TOL) -> bool:
        return abs(self.norm2 - 1.0) <= tol

    def transpose(self) -> "StateMatrix":
        return StateMatrix(self.data.T)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)

    def __repr__(self):
        return f"StateMatrix(n={self.n}, m={self.m}, norm2={self.norm2!r})"


@dataclass(frozen=True, eq=False)
class ReducedMatrix:
    """Result of :func:`reduce`: the surviving block and where it came from.

    ``kept_rows`` and ``kept_cols`` are sorted 0-based indices into the
    parent matrix.
    """

    matrix: StateMatrix
    kept_rows: tuple[int, ...]
    kept_cols: tuple[int, ...]


def as_state(C) -> StateMatrix:
    """Accept either a :class:`StateMatrix` or anything array-like."""
    if isinstance(C, StateMatrix):
        return C
    return StateMatrix(C)


# --------------------------------------------------------------------------
# text formats

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY_RE = re.compile(
    rf"^(?P<re>[+-]?{_NUM})?(?:(?P<isign>[+-])?(?P<im>{_NUM})?(?P<unit>[ij]))?$"
)


def _parse_entry(tok: str) -> complex:
    mt = _ENTRY_RE.match(tok)
    if mt is None or (mt.group("re") is None and mt.group("unit") is None):
        raise StateParseError(f"cannot parse entry {tok!r}")
    re_part = float(mt.group("re")) if mt.group("re") is not None else 0.0
    im_part = 0.0
    if mt.group("unit"):
        if mt.group("re") is not None and mt.group("isign") is None:
            # "2i" is caught here as re="2" with an imaginary unit and no sign
            if mt.group("im") is not None:
                raise StateParseError(f"cannot parse entry {tok!r}")
            re_part, im_part = 0.0, float(mt.group("re"))
        else:
            mag = float(mt.group("im")) if mt.group("im") is not None else 1.0
            im_part = -mag if mt.group("isign") == "-" else mag
    z = complex(re_part, im_part)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise StateParseError(f"non-finite entry {tok!r}")
    return z


def _parse_plain(text: str) -> np.ndarray:
    rows = [r.split() for r in re.split(r"[/\n]", text)]
    rows = [r for r in rows if r]
    if not rows:
        raise StateParseError("no entries found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise StateParseError("rows have differing numbers of entries")
    return np.array([[_parse_entry(t) for t in r] for r in rows], dtype=np.complex128)


def _parse_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise StateParseError('JSON state needs "rows", "cols" and "data" keys')
    n, m, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(n, int) and isinstance(m, int)) or n < 1 or m < 1:
        raise StateParseError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != n * m:
        raise StateParseError(f"data length {len(data) if isinstance(data, list) else '?'} != rows*cols = {n * m}")
    out = np.empty(n * m, dtype=np.complex128)
    for k, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise StateParseError(f"data[{k}] must be a [re, im] pair of numbers")
        re_part, im_part = float(pair[0]), float(pair[1])
        if not (math.isfinite(re_part) and math.isfinite(im_part)):
            raise StateParseError(f"data[{k}] is not finite")
        out[k] = complex(re_part, im_part)
    return out.reshape(n, m)


def parse_state(text: str | bytes, format: str = "json") -> StateMatrix:
    """Parse a state from JSON or plain text.

    JSON: ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` with ``data``
    row-major.  Plain: rows separated by ``/`` or newlines, entries such as
    ``1``, ``-0.5i``, ``0.3+2i`` separated by whitespace.  The matrix is
    returned as written; it is not normalized.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise StateParseError(f"input is not UTF-8: {exc}") from None
    if format == "json":
        arr = _parse_json(text)
    elif format == "plain":
        arr = _parse_plain(text)
    else:
        raise ValueError(f"unknown format {format!r}")
    try:
        return StateMatrix(arr)
    except InvalidStateError as exc:
        raise StateParseError(str(exc)) from None


def format_real(x: float) -> str:
    """17-significant-digit decimal that always reads back as a float."""
    s = "%.17g" % x
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def serialize_state(C: StateMatrix) -> str:
    """JSON text for ``C``; :func:`parse_state` reads it back bit-for-bit."""
    C = as_state(C)
    pairs = ", ".join(f"[{format_real(z.real)}, {format_real(z.imag)}]" for z in C.data.ravel())
    return f'{{"rows": {C.n}, "cols": {C.m}, "data": [{pairs}]}}\n'


# --------------------------------------------------------------------------
# basic operations


def normalize(C) -> StateMatrix:
    """Scale ``C`` to unit Frobenius norm."""
    C = as_state(C)
    if C.norm2 <= _UNDERFLOW:
        raise InvalidStateError("cannot normalize the zero state")
    out = C.data / math.sqrt(C.norm2)
    # one correction step pins norm2 to 1 at the last ulp
    return StateMatrix(out / math.sqrt(float(np.sum(np.abs(out) ** 2))))


def reduce(C, tol: float = ZERO_TOL) -> ReducedMatrix:
    """Drop every row and column whose entries all have modulus <= ``tol``."""
    C = as_state(C)
    big = np.abs(C.data) > tol
    rows = np.flatnonzero(big.any(axis=1))
    cols = np.flatnonzero(big.any(axis=0))
    if rows.size == 0:
        raise InvalidStateError("state is entirely zero at tolerance %g" % tol)
    sub = C.data[np.ix_(rows, cols)]
    return ReducedMatrix(StateMatrix(sub), tuple(int(i) for i in rows), tuple(int(j) for j in cols))


def zero_flag(M, tol: float = ZERO_TOL) -> int:
    """0 if every entry has modulus above ``tol``, otherwise 1."""
    M = as_state(M)
    return 0 if bool(np.all(np.abs(M.data) > tol)) else 1


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def random_state(n: int, m: int, seed: int | np.random.Generator | None = None) -> StateMatrix:
    """Normalized state with i.i.d. standard complex Gaussian entries."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    rng = np.random.default_rng(seed)
    return normalize(_complex_gaussian(rng, (n, m)))


def random_product_state(n: int, m: int, seed: int | np.random.Generator | None = None) -> StateMatrix:
    """Normalized rank-one state ``a b^T`` with Gaussian ``a`` and ``b``."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    rng = np.random.default_rng(seed)
    a = _complex_gaussian(rng, n)
    b = _complex_gaussian(rng, m)
    return normalize(np.outer(a, b))
