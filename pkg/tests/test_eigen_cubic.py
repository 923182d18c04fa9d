import numpy as np
import pytest
from conftest import haar_unitary
from hypothesis import given
from hypothesis import strategies as st

from minorsep.cubic import cubic_roots
from minorsep.eigen import hermitian_spectrum, jacobi_eigh
from minorsep.errors import ConvergenceError, DimensionError


def _random_hermitian(k, seed):
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    return Z + Z.conj().T


class TestJacobi:
    @given(st.integers(1, 12), st.integers(0, 2**32 - 1))
    def test_matches_numpy_eigvalsh(self, k, seed):
        A = _random_hermitian(k, seed)
        w, V = jacobi_eigh(A)
        ref = np.sort(np.linalg.eigvalsh(A))[::-1]
        scale = max(1.0, np.linalg.norm(A))
        np.testing.assert_allclose(w, ref, atol=1e-13 * scale)
        # descending, unitary eigenvectors, A V = V diag(w)
        assert np.all(np.diff(w) <= 0)
        np.testing.assert_allclose(V.conj().T @ V, np.eye(k), atol=1e-12)
        np.testing.assert_allclose(A @ V, V * w, atol=1e-12 * scale)

    def test_known_spectrum_with_degeneracy(self):
        rng = np.random.default_rng(3)
        U = haar_unitary(6, rng)
        d = np.array([2.0, 2.0, 0.5, 0.0, 0.0, -1.0])
        A = U @ np.diag(d) @ U.conj().T
        np.testing.assert_allclose(hermitian_spectrum(A), np.sort(d)[::-1], atol=1e-13)

    def test_diagonal_input(self):
        np.testing.assert_array_equal(hermitian_spectrum(np.diag([1.0, 3.0, 2.0])), [3, 2, 1])

    def test_zero_matrix(self):
        np.testing.assert_array_equal(hermitian_spectrum(np.zeros((3, 3))), [0, 0, 0])

    def test_pauli_y(self):
        np.testing.assert_allclose(hermitian_spectrum([[0, -1j], [1j, 0]]), [1, -1], atol=1e-15)

    def test_rejects_non_hermitian(self):
        with pytest.raises(DimensionError):
            jacobi_eigh([[1, 2], [0, 1]])

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            jacobi_eigh(np.zeros((2, 3)))

    def test_sweep_cap(self):
        with pytest.raises(ConvergenceError):
            jacobi_eigh(_random_hermitian(8, 0), max_sweeps=1)


class TestCubic:
    def test_integer_roots(self):
        np.testing.assert_allclose(cubic_roots(-6.0, 11.0, -6.0), [1, 2, 3], atol=1e-14)

    def test_triple_root(self):
        # (x - 1/3)^3
        np.testing.assert_allclose(cubic_roots(-1.0, 1 / 3, -1 / 27), [1 / 3] * 3, atol=1e-15)

    def test_double_root(self):
        # (x - 1)^2 (x + 2) = x^3 - 3x + 2
        np.testing.assert_allclose(cubic_roots(0.0, -3.0, 2.0), [-2, 1, 1], atol=1e-7)

    def test_zero_roots(self):
        np.testing.assert_allclose(cubic_roots(-1.0, 0.0, 0.0), [0, 0, 1], atol=1e-15)

    def test_complex_pair_rejected(self):
        with pytest.raises(ValueError):
            cubic_roots(0.0, 1.0, 0.0)  # x^3 + x

    @given(st.lists(st.floats(-3, 3), min_size=3, max_size=3))
    def test_matches_numpy_roots(self, r):
        r = np.sort(r)
        a2 = -(r[0] + r[1] + r[2])
        a1 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2]
        a0 = -r[0] * r[1] * r[2]
        got = cubic_roots(a2, a1, a0)
        ref = np.sort(np.real(np.roots([1.0, a2, a1, a0])))
        # clustered roots are ill-conditioned: error ~ eps**(1/3) at a triple root
        np.testing.assert_allclose(got, ref, atol=1e-4)
        np.testing.assert_allclose(got, r, atol=1e-4)
        resid = ((got + a2) * got + a1) * got + a0
        assert np.max(np.abs(resid)) <= 1e-12
