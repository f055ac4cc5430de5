import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from sl2dirac.eigensolver import ConvergenceFailure, jacobi_eigh, off_norm

entries = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@given(st.integers(1, 12).flatmap(lambda n: arrays(float, (n, n), elements=entries)))
def test_matches_lapack(a):
    a = a + a.T
    w, v = jacobi_eigh(a)
    scale = max(1.0, np.abs(a).max())
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-11 * scale)
    np.testing.assert_allclose(v.T @ v, np.eye(len(a)), atol=1e-12)
    np.testing.assert_allclose(a @ v, v * w, atol=1e-10 * scale)


def test_scalar_matrix_exact():
    w, v = jacobi_eigh(-0.5 * np.eye(2))
    assert list(w) == [-0.5, -0.5]


def test_degenerate_blocks():
    a = np.kron(np.eye(3), np.array([[1.0, 2.0], [2.0, 1.0]]))
    w, _ = jacobi_eigh(a)
    np.testing.assert_allclose(w, [-1, -1, -1, 3, 3, 3], atol=1e-14)


def test_convergence_failure_is_reported():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(20, 20))
    with pytest.raises(ConvergenceFailure):
        jacobi_eigh(a + a.T, max_sweeps=1)


def test_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_off_norm():
    assert off_norm(np.array([[1.0, 3.0], [4.0, 2.0]])) == 5.0
