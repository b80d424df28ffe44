import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from skewnum.counterexample import RHO1, RHO12, RHO12_EIGENVALUES, SQRT_RHO1, SQRT_RHO12
from skewnum.errors import ConvergenceError, DimensionMismatchError, NotHermitianError, NotPositiveError
from skewnum.linalg import (apply_spectral_function, commutator, eigh, fractional_power, hermitian,
                            psd_eigh, sqrtm_psd)

from conftest import random_hermitian, random_psd


def test_eigh_counterexample_spectrum():
    dec = eigh(RHO12)
    np.testing.assert_allclose(dec.eigenvalues, RHO12_EIGENVALUES, atol=1e-10)
    np.testing.assert_allclose(eigh(RHO1).eigenvalues, [3, 23], atol=1e-12)


def test_eigh_identity():
    dec = eigh(np.eye(4))
    assert np.array_equal(dec.eigenvalues, np.ones(4))
    np.testing.assert_allclose(dec.vectors.conj().T @ dec.vectors, np.eye(4), atol=1e-14)


def test_eigh_random_against_numpy(rng):
    for _ in range(200):
        d = int(rng.integers(1, 9))
        a = random_hermitian(rng, d, complex_entries=bool(rng.integers(2)))
        dec = eigh(a)
        scale = np.max(np.abs(a))
        assert np.all(np.diff(dec.eigenvalues) >= 0)
        assert np.max(np.abs(dec.reconstruct() - a)) <= 1e-10 * scale
        assert np.max(np.abs(dec.vectors.conj().T @ dec.vectors - np.eye(d))) <= 1e-10
        assert abs(np.trace(a).real - dec.eigenvalues.sum()) <= 1e-10 * max(1.0, scale)
        np.testing.assert_allclose(dec.eigenvalues, np.linalg.eigvalsh(a), atol=1e-10 * scale)


def test_eigh_deterministic(rng):
    a = random_hermitian(rng, 6)
    d1, d2 = eigh(a), eigh(a.copy())
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    assert np.array_equal(d1.vectors, d2.vectors)


def test_eigh_degenerate_spectrum(rng):
    u = np.linalg.qr(rng.standard_normal((5, 5)))[0]
    a = u @ np.diag([1.0, 1.0, 2.0, 2.0, 2.0]) @ u.T
    dec = eigh(a)
    np.testing.assert_allclose(dec.eigenvalues, [1, 1, 2, 2, 2], atol=1e-12)
    assert np.max(np.abs(dec.reconstruct() - a)) <= 1e-12


def test_eigh_sweep_budget_exhausted(rng):
    with pytest.raises(ConvergenceError):
        eigh(random_hermitian(rng, 6), max_sweeps=1)


def test_hermitian_validation():
    with pytest.raises(NotHermitianError):
        hermitian([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(DimensionMismatchError):
        hermitian(np.ones((2, 3)))
    with pytest.raises(DimensionMismatchError):
        hermitian(np.zeros((0, 0)))
    a = hermitian([[1, 1 + 1e-14], [1, 1]])
    assert a[0, 1] == a[1, 0]
    assert hermitian([[2]]).dtype == float


def test_sqrt_of_counterexample_is_integer_matrix():
    assert np.max(np.abs(sqrtm_psd(RHO12) - SQRT_RHO12)) <= 1e-10
    assert np.max(np.abs(apply_spectral_function(RHO1, np.sqrt) - SQRT_RHO1)) <= 1e-12


def test_identity_function_returns_input(rng):
    a = random_hermitian(rng, 5)
    np.testing.assert_allclose(apply_spectral_function(a, lambda x: x), a, atol=1e-12)


def test_spectral_function_undefined():
    with pytest.raises(ValueError):
        apply_spectral_function(np.diag([-1.0, 1.0]), np.log)
    with pytest.raises(NotPositiveError):
        fractional_power(np.diag([-1.0, 1.0]), 0.5)


def test_clamp_rounding_negative_eigenvalue():
    # rank-1 projector: zero eigenvalues may come out as tiny negatives
    v = np.array([1.0, 2.0, 3.0]) / np.sqrt(14)
    dec = psd_eigh(np.outer(v, v))
    assert np.all(dec.eigenvalues >= 0)
    np.testing.assert_allclose(sqrtm_psd(np.outer(v, v)), np.outer(v, v), atol=1e-12)


def test_sqrt_squared_random_psd(rng):
    for _ in range(100):
        d = int(rng.integers(1, 7))
        a = random_psd(rng, d, rank=int(rng.integers(1, d + 1)))
        s = sqrtm_psd(a)
        assert np.max(np.abs(s @ s - a)) <= 1e-9 * np.max(np.abs(a))


def test_fractional_powers_compose(rng):
    a = random_psd(rng, 4) + np.eye(4)
    p = 0.3
    np.testing.assert_allclose(fractional_power(a, p) @ fractional_power(a, 1 - p), a, atol=1e-10)


def test_commutator_examples():
    from skewnum.counterexample import COMMUTATOR12, K12
    assert np.array_equal(commutator(SQRT_RHO12, K12), COMMUTATOR12)
    assert np.array_equal(commutator(RHO1, RHO1), np.zeros((2, 2)))
    c = commutator(SQRT_RHO1, np.array([[10.0, 1.0], [1.0, 1.0]]))
    off = 4.5 * (np.sqrt(23) - np.sqrt(3))
    np.testing.assert_allclose(c, [[0, -off], [off, 0]], atol=1e-12)
    with pytest.raises(DimensionMismatchError):
        commutator(np.eye(2), np.eye(3))


def test_commutator_random_is_antihermitian_traceless(rng):
    for _ in range(100):
        d = int(rng.integers(1, 8))
        a, b = random_hermitian(rng, d), random_hermitian(rng, d)
        c = commutator(a, b)
        scale = np.max(np.abs(a)) * np.max(np.abs(b)) * d
        assert np.max(np.abs(c + c.conj().T)) <= 1e-12 * scale
        assert np.max(np.abs(np.diag(c).real)) <= 1e-12 * scale
        assert abs(np.trace(c)) <= 1e-12 * scale


finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(arrays(float, (4, 4), elements=finite), arrays(float, (4, 4), elements=finite))
def test_eigh_property_complex(re, im):
    a = (re + re.T) / 2 + 1j * (im - im.T) / 2
    dec = eigh(a)
    scale = max(np.max(np.abs(a)), 1e-300)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    assert np.max(np.abs(dec.reconstruct() - a)) <= 1e-10 * scale


@pytest.mark.parametrize("scale", [1e-300, 1e-215, 1e-150, 1e150, 1e300])
def test_eigh_extreme_scales(rng, scale):
    a = random_hermitian(rng, 4) * scale
    dec = eigh(a)
    assert np.max(np.abs(dec.reconstruct() - a)) <= 1e-10 * np.max(np.abs(a))
    np.testing.assert_allclose(dec.eigenvalues / scale, np.linalg.eigvalsh(a / scale), atol=1e-10)
