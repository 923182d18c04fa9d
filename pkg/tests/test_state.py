import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from minorsep.errors import InvalidStateError, StateParseError
from minorsep.state import (
    StateMatrix,
    normalize,
    parse_state,
    random_product_state,
    random_state,
    reduce,
    serialize_state,
    zero_flag,
)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
complex_matrices = st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda shape: arrays(np.complex128, shape, elements=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
)


class TestParse:
    def test_json_identity_like(self):
        C = parse_state('{"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0], [0, 0]]}')
        assert C.shape == (2, 2)
        assert C.norm2 == 1.0
        assert C.data[0, 0] == 1

    def test_json_rounded_bell_not_normalized(self):
        C = parse_state('{"rows": 2, "cols": 2, "data": [[0.7071, 0], [0, 0], [0, 0], [0.7071, 0]]}')
        # 2 * 0.7071**2 by hand
        assert C.norm2 == pytest.approx(0.99998082, abs=1e-12)
        assert not C.is_normalized()

    def test_plain_two_rows(self):
        C = parse_state("1+0i 0+0i / 0+0i 1+0i", format="plain")
        assert C.shape == (2, 2)
        assert C.norm2 == 2.0

    def test_plain_entry_forms(self):
        C = parse_state("1 -2.5i 0.5-0.25i\n3e-1+2i i -i", format="plain")
        expected = np.array([[1, -2.5j, 0.5 - 0.25j], [0.3 + 2j, 1j, -1j]])
        np.testing.assert_array_equal(C.data, expected)

    def test_bytes_input(self):
        C = parse_state(b'{"rows": 1, "cols": 1, "data": [[0.6, 0.8]]}')
        assert C.data[0, 0] == 0.6 + 0.8j

    @pytest.mark.parametrize(
        "text",
        [
            "{not json",
            '{"rows": 2, "cols": 2, "data": [[1, 0]]}',
            '{"rows": 1, "cols": 1, "data": [[1]]}',
            '{"rows": 1, "cols": 1, "data": [["a", 0]]}',
            '{"rows": 0, "cols": 1, "data": []}',
            '{"rows": 1, "cols": 1}',
            '{"rows": 1, "cols": 1, "data": [[NaN, 0]]}',
            '{"rows": 1, "cols": 1, "data": [[Infinity, 0]]}',
        ],
    )
    def test_bad_json(self, text):
        with pytest.raises(StateParseError):
            parse_state(text)

    @pytest.mark.parametrize("text", ["1 2 / 3", "1 x", "", "1e999", "1+2", "2ii"])
    def test_bad_plain(self, text):
        with pytest.raises(StateParseError):
            parse_state(text, format="plain")

    @given(complex_matrices)
    def test_json_roundtrip_bit_exact(self, X):
        C = StateMatrix(X)
        back = parse_state(serialize_state(C))
        assert back.shape == C.shape
        assert back.data.tobytes() == C.data.tobytes()

    def test_roundtrip_negative_zero(self):
        C = StateMatrix(np.array([[complex(-0.0, 0.0), complex(1.0, -0.0)]]))
        back = parse_state(serialize_state(C))
        assert back.data.tobytes() == C.data.tobytes()

    def test_serialization_uses_17_digits(self):
        text = serialize_state(StateMatrix([[1 / 3]]))
        assert "0.33333333333333331" in text


class TestStateMatrix:
    def test_norm_cached_matches_recomputed(self, rng):
        X = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        C = StateMatrix(X)
        assert C.norm2 == pytest.approx(np.sum(np.abs(X) ** 2), rel=1e-14)

    def test_immutable(self):
        C = StateMatrix(np.eye(2))
        with pytest.raises(ValueError):
            C.data[0, 0] = 5

    def test_copy_on_construction(self):
        X = np.eye(2, dtype=complex)
        C = StateMatrix(X)
        X[0, 0] = 7
        assert C.data[0, 0] == 1

    @pytest.mark.parametrize("bad", [np.zeros((0, 2)), np.zeros(3), [[np.nan]], [[np.inf, 1]]])
    def test_rejects(self, bad):
        with pytest.raises(InvalidStateError):
            StateMatrix(bad)


class TestNormalize:
    def test_identity(self):
        C = normalize(np.eye(2))
        np.testing.assert_allclose(C.data, np.eye(2) / math.sqrt(2), atol=1e-16)

    def test_single_entry(self):
        np.testing.assert_array_equal(normalize([[2, 0], [0, 0]]).data, [[1, 0], [0, 0]])

    def test_all_ones(self):
        # norm2 = 4 so every entry becomes 1/2
        np.testing.assert_allclose(normalize(np.ones((2, 2))).data, 0.5, atol=1e-16)

    def test_zero_rejected(self):
        with pytest.raises(InvalidStateError):
            normalize(np.zeros((2, 3)))

    @given(complex_matrices.filter(lambda X: np.sum(np.abs(X) ** 2) > 1e-20))
    def test_unit_norm(self, X):
        assert abs(normalize(X).norm2 - 1.0) <= 1e-14


class TestReduce:
    def test_zero_middle_column(self):
        a, b, c, d, e, f = 1, 2, 3, 4, 5, 6
        C = np.array([[a, 0, b], [c, 0, d], [e, 0, f]], dtype=float)
        R = reduce(C)
        np.testing.assert_array_equal(R.matrix.data, [[a, b], [c, d], [e, f]])
        assert R.kept_rows == (0, 1, 2)
        assert R.kept_cols == (0, 2)

    def test_zero_row_and_two_columns(self):
        a, b, c, d, e, f, g, h, i = range(1, 10)
        C = np.array(
            [[a, b, 0, 0, c], [d, e, 0, 0, f], [0, 0, 0, 0, 0], [g, h, 0, 0, i]],
            dtype=float,
        )
        R = reduce(C)
        np.testing.assert_array_equal(R.matrix.data, [[a, b, c], [d, e, f], [g, h, i]])
        assert R.kept_rows == (0, 1, 3)
        assert R.kept_cols == (0, 1, 4)

    def test_nothing_to_remove(self, rng):
        X = rng.standard_normal((3, 4)) + 1
        R = reduce(X)
        np.testing.assert_array_equal(R.matrix.data, X)
        assert R.kept_rows == (0, 1, 2) and R.kept_cols == (0, 1, 2, 3)

    def test_all_zero_rejected(self):
        with pytest.raises(InvalidStateError):
            reduce(np.zeros((2, 2)))

    def test_tolerance_counts_tiny_as_zero(self):
        R = reduce([[1, 1e-13], [1, 1e-14]], tol=1e-12)
        assert R.kept_cols == (0,)

    @given(complex_matrices, st.data())
    def test_idempotent_and_no_empty_lines(self, X, data):
        mask = data.draw(arrays(bool, X.shape))
        X = np.where(mask, 0, X)
        if not np.any(np.abs(X) > 1e-12):
            return
        R = reduce(X)
        M = np.abs(R.matrix.data)
        assert np.all(M.max(axis=1) > 1e-12) and np.all(M.max(axis=0) > 1e-12)
        R2 = reduce(R.matrix)
        np.testing.assert_array_equal(R2.matrix.data, R.matrix.data)
        # everything outside the kept block is zero
        outside = np.abs(X).copy()
        outside[np.ix_(R.kept_rows, R.kept_cols)] = 0
        assert np.all(outside <= 1e-12)


class TestZeroFlag:
    @pytest.mark.parametrize(
        "M, expected",
        [([[1, 2], [3, 4]], 0), ([[1, 0], [3, 4]], 1), ([[1e-15, 1], [1, 1]], 1)],
    )
    def test_examples(self, M, expected):
        assert zero_flag(M, tol=1e-12) == expected


class TestRandom:
    def test_deterministic(self):
        a = random_state(2, 2, seed=7)
        b = random_state(2, 2, seed=7)
        assert a.data.tobytes() == b.data.tobytes()

    def test_seeds_differ(self):
        assert not np.allclose(random_state(3, 3, 1).data, random_state(3, 3, 2).data)

    @pytest.mark.parametrize("seed", range(5))
    def test_normalized(self, seed):
        assert abs(random_state(3, 4, seed).norm2 - 1.0) <= 1e-14
        assert abs(random_product_state(4, 2, seed).norm2 - 1.0) <= 1e-14

    @pytest.mark.parametrize("seed", range(5))
    def test_product_is_rank_one(self, seed):
        C = random_product_state(4, 3, seed)
        assert np.linalg.matrix_rank(C.data, tol=1e-12) == 1

    def test_bad_dims(self):
        with pytest.raises(ValueError):
            random_state(0, 2, 1)
        with pytest.raises(ValueError):
            random_product_state(2, 0, 1)
