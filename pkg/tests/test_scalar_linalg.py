import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from framelab import scalar_linalg as sl
from framelab.errors import ContractError, DimensionError


def test_det_examples():
    assert sl.det(np.eye(3)) == 1.0
    assert sl.det(np.zeros((2, 2))) == 0.0
    # cofactor expansion: 1*4 - 2*3
    assert sl.det([[1, 2], [3, 4]]) == pytest.approx(-2.0, rel=1e-14)


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        sl.det(np.ones((2, 3)))


def test_det_bruteforce_examples():
    assert sl.det_bruteforce(np.eye(4)) == 1.0
    assert sl.det_bruteforce([[0, 1], [1, 0]]) == -1.0
    assert sl.det_bruteforce([[1, 2], [3, 4]]) == -2.0


def test_det_bruteforce_refuses_large():
    with pytest.raises(DimensionError):
        sl.det_bruteforce(np.eye(5))


def test_hermitian_eigenvalues_examples():
    np.testing.assert_array_equal(sl.hermitian_eigenvalues(np.eye(2)), [1, 1])
    np.testing.assert_allclose(sl.hermitian_eigenvalues(np.diag([7.0, 3.0])), [3, 7])
    # lambda^2 - 4 lambda + 3 = (lambda - 1)(lambda - 3)
    np.testing.assert_allclose(sl.hermitian_eigenvalues([[2, 1], [1, 2]]), [1, 3],
                               rtol=1e-14)


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(ContractError):
        sl.hermitian_eigenvalues([[1.0, 2.0], [0.0, 1.0]])


def test_reconstruction():
    rng = np.random.default_rng(3)
    for _ in range(20):
        X = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        m = X + X.conj().T
        w, q = sl.hermitian_eigenvalues(m, vectors=True)
        assert np.all(np.diff(w) >= 0)
        err = np.linalg.norm(m - q @ np.diag(w) @ q.conj().T)
        assert err <= 1e-10 * np.linalg.norm(m)


def test_psd_det_is_real_for_complex_gram():
    rng = np.random.default_rng(0)
    X = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    G = X.conj().T @ X
    d = sl.psd_det(G)
    assert isinstance(d, float) and d > 0


def test_psd_det_rejects_genuinely_complex():
    with pytest.raises(ContractError):
        sl.psd_det(np.diag([1.0 + 1.0j, 1.0]))


def test_non_finite_rejected():
    with pytest.raises(ContractError):
        sl.det([[np.nan, 0], [0, 1]])


square = st.integers(1, 4).flatmap(lambda n: hnp.arrays(
    np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False)))


@settings(max_examples=200, deadline=None)
@given(square)
def test_det_matches_bruteforce(m):
    ref = sl.det_bruteforce(m)
    assert abs(sl.det(m) - ref) <= 1e-10 * max(1.0, abs(ref))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_psd_eigen_properties(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n + 2, n)) + 1j * rng.standard_normal((n + 2, n))
    m = X.conj().T @ X
    w = sl.hermitian_eigenvalues(m)
    assert w[0] >= -1e-12 * w[-1]
    assert sl.psd_det(m) == pytest.approx(np.prod(w), rel=1e-8)
