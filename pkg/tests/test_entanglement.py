import itertools

import numpy as np
import pytest
from conftest import SQ2, SQ3, brute_minors, haar_unitary
from hypothesis import given
from hypothesis import strategies as st

from minorsep.criteria import QuadSelector
from minorsep.entanglement import (
    e_param,
    e_total,
    e_upper_bound,
    generate_maxent,
    maxent_check,
    row_gram,
    verify_2xm_identity,
)
from minorsep.errors import DimensionError, InvalidStateError
from minorsep.oracle import e_total_gram
from minorsep.state import random_product_state, random_state

dims = st.tuples(st.integers(2, 6), st.integers(2, 6))
seeds = st.integers(0, 2**32 - 1)


class TestParams:
    def test_bell(self, bell):
        rep = e_total(bell)
        assert rep.params == {QuadSelector(0, 1, 0, 1): pytest.approx(0.25, abs=1e-15)}
        assert rep.total == pytest.approx(0.25, abs=1e-15)
        assert rep.upper_bound == 0.25
        assert rep.maxent_residual <= 1e-15

    def test_hand_computed_2x2(self):
        # det = 1*4 - 2*3 = -2
        assert e_param([[1, 2], [3, 4]], QuadSelector(0, 1, 0, 1)) == 4.0

    def test_complex_entries(self):
        # det = 1j * 1j - 1 * 1 = -2
        assert e_param([[1j, 1], [1, 1j]], QuadSelector(0, 1, 0, 1)) == 4.0

    def test_identity_3x3(self):
        rep = e_total(np.eye(3) / SQ3)
        assert len(rep.params) == 9
        assert rep.total == pytest.approx(1 / 3, abs=1e-15)
        assert rep.upper_bound == pytest.approx(1 / 3)
        nonzero = [s for s, v in rep.params.items() if v > 0]
        assert nonzero == [QuadSelector(0, 1, 0, 1), QuadSelector(0, 2, 0, 2), QuadSelector(1, 2, 1, 2)]

    def test_top_order(self):
        rep = e_total(np.array([[1, 2, 0], [0, 1, 3]]) / np.sqrt(15))
        vals = [v for _, v in rep.top()]
        assert vals == sorted(vals, reverse=True)
        assert len(rep.top(2)) == 2

    @given(dims, seeds)
    def test_total_matches_brute_force_and_gram(self, shape, seed):
        C = random_state(*shape, seed)
        brute = sum(abs(d) ** 2 for d in brute_minors(C.data).values())
        rep = e_total(C)
        assert rep.total == pytest.approx(brute, rel=1e-12)
        assert rep.total == pytest.approx(e_total_gram(C), rel=1e-10)

    @given(dims, seeds)
    def test_bound_holds(self, shape, seed):
        rep = e_total(random_state(*shape, seed))
        assert 0 <= rep.total <= rep.upper_bound + 1e-12

    @given(dims, seeds)
    def test_product_is_zero(self, shape, seed):
        assert e_total(random_product_state(*shape, seed)).total <= 1e-28

    @given(dims, seeds)
    def test_local_unitary_invariance(self, shape, seed):
        rng = np.random.default_rng(seed)
        C = random_state(*shape, rng).data
        U = haar_unitary(shape[0], rng)
        V = haar_unitary(shape[1], rng)
        assert e_total(U @ C @ V.T).total == pytest.approx(e_total(C).total, rel=1e-10, abs=1e-15)

    @given(dims, seeds)
    def test_transpose_invariance(self, shape, seed):
        C = random_state(*shape, seed)
        assert e_total(C.transpose()).total == pytest.approx(e_total(C).total, rel=1e-13)

    def test_upper_bound_values(self):
        assert e_upper_bound(2, 5) == 0.25
        assert e_upper_bound(6, 4) == pytest.approx(3 / 8)
        assert e_upper_bound(1, 4) == 0.0
        with pytest.raises(ValueError):
            e_upper_bound(0, 2)


class TestRowGram:
    def test_example(self):
        g = row_gram([[1, 1j], [2, 0]])
        np.testing.assert_array_equal(g.L, [2, 4])
        # conj(1)*2 + conj(1j)*0
        assert g.offdiag == {(0, 1): 2 + 0j}


class TestMaxent:
    @pytest.mark.parametrize("n, m", list(itertools.product(range(2, 7), repeat=2)))
    def test_generated_states_reach_bound(self, n, m):
        C = generate_maxent(n, m, seed=n * 10 + m)
        assert C.shape == (n, m)
        assert abs(C.norm2 - 1) <= 1e-12
        ok, res = maxent_check(C)
        assert ok and res <= 1e-10
        assert e_total(C).total == pytest.approx(e_upper_bound(n, m), abs=1e-10)

    def test_bell_and_identity(self, bell):
        assert maxent_check(bell) == (True, pytest.approx(0, abs=1e-15))
        assert maxent_check(np.eye(3) / SQ3)[0]

    def test_product_is_not_max(self):
        ok, res = maxent_check(random_product_state(3, 3, 0))
        assert not ok and res > 0.05

    def test_tall_matrix_uses_columns(self):
        C = np.zeros((4, 2))
        C[0, 0] = C[3, 1] = 1 / SQ2
        assert maxent_check(C)[0]

    def test_requires_normalized(self):
        with pytest.raises(InvalidStateError):
            maxent_check(np.eye(2))

    def test_deterministic(self):
        a = generate_maxent(3, 5, seed=4).data
        b = generate_maxent(3, 5, seed=4).data
        assert a.tobytes() == b.tobytes()


class TestIdentity2xm:
    @given(st.integers(2, 8), seeds, st.floats(0.1, 10.0))
    def test_both_sides_agree_unnormalized(self, m, seed, lam):
        C = lam * random_state(2, m, seed).data
        lhs, rhs = verify_2xm_identity(C)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs), lam**4)

    def test_bell(self, bell):
        lhs, rhs = verify_2xm_identity(bell)
        assert lhs == pytest.approx(0, abs=1e-15) and rhs == 0

    def test_wrong_shape(self):
        with pytest.raises(DimensionError):
            verify_2xm_identity(np.eye(3))
