import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minorsep.oracle import e_total_gram, schmidt_rank
from minorsep.state import random_product_state, random_state

dims = st.tuples(st.integers(1, 6), st.integers(1, 6))
seeds = st.integers(0, 2**32 - 1)


@given(dims, seeds)
def test_singular_values_match_numpy(shape, seed):
    C = random_state(*shape, seed)
    prof = schmidt_rank(C)
    ref = np.linalg.svd(C.data, compute_uv=False)
    np.testing.assert_allclose(prof.values, ref, atol=1e-13)
    assert prof.rank == min(shape)


@given(dims, seeds)
def test_product_rank_one(shape, seed):
    assert schmidt_rank(random_product_state(*shape, seed)).rank == 1


def test_known_rank_two():
    C = np.diag([3.0, 4.0, 0.0])
    prof = schmidt_rank(C)
    np.testing.assert_allclose(prof.values, [4, 3, 0], atol=1e-15)
    assert prof.rank == 2


def test_gram_formula_bell(bell):
    assert e_total_gram(bell) == pytest.approx(0.25, abs=1e-15)


@given(dims, seeds)
def test_gram_equals_elementary_symmetric_of_schmidt(shape, seed):
    C = random_state(*shape, seed)
    lam = np.linalg.svd(C.data, compute_uv=False) ** 2
    e2 = 0.5 * (np.sum(lam) ** 2 - np.sum(lam**2))
    assert e_total_gram(C) == pytest.approx(e2, abs=1e-14)


@given(dims, seeds)
def test_rank_one_with_zero_lines_converges(shape, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(shape[0]) + 1j * rng.standard_normal(shape[0])
    b = rng.standard_normal(shape[1]) + 1j * rng.standard_normal(shape[1])
    a[rng.random(shape[0]) < 0.4] = 0
    b[rng.random(shape[1]) < 0.4] = 0
    a[0] = b[-1] = 1.0
    assert schmidt_rank(np.outer(a, b)).rank == 1
