"""Wigner-Yanase-Dyson, Wigner-Yanase and von Neumann entropies.

States need not have unit trace: the skew entropies are homogeneous of
degree one in the state, so any positive multiple of a density matrix is
accepted.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError
from .linalg import commutator, fractional_power, hermitian, psd_eigh, sqrtm_psd

IMAG_RTOL = 1e-10


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    return p


def _pair(rho, k):
    rho = hermitian(rho)
    k = hermitian(k)
    if rho.shape != k.shape:
        raise DimensionMismatchError(f"state {rho.shape} and observable {k.shape} differ in size")
    return rho, k


def _half_trace_product(c1: np.ndarray, c2: np.ndarray) -> float:
    # tr(c1 c2) without forming the product
    value = np.sum(c1 * c2.T)
    scale = np.linalg.norm(c1) * np.linalg.norm(c2)
    if abs(np.imag(value)) > IMAG_RTOL * max(scale, np.finfo(float).tiny):
        raise ArithmeticError(f"trace has imaginary part {np.imag(value):.3e}; inputs not Hermitian?")
    return 0.5 * float(np.real(value))


def wyd_entropy(rho, k, p: float) -> float:
    """``S_p(rho, k) = 1/2 tr [rho^p, k][rho^(1-p), k]``.

    This is minus the Wigner-Yanase-Dyson skew information, so it is never
    positive.  ``rho`` must be positive semi-definite (rounding-level
    negative eigenvalues are clamped to zero).
    """
    p = _check_p(p)
    rho, k = _pair(rho, k)
    return _wyd(rho, k, p)


def wy_entropy(rho, k) -> float:
    """Wigner-Yanase entropy ``1/2 tr [rho^(1/2), k]^2`` (the ``p = 1/2`` case)."""
    rho, k = _pair(rho, k)
    return _wy(rho, k)


# Unchecked kernels: arguments are exactly Hermitian arrays of equal size.

def _wyd(rho: np.ndarray, k: np.ndarray, p: float) -> float:
    dec = psd_eigh(rho, checked=False)
    c1 = commutator(fractional_power(rho, p, dec), k)
    c2 = commutator(fractional_power(rho, 1.0 - p, dec), k)
    return _half_trace_product(c1, c2)


def _wy(rho: np.ndarray, k: np.ndarray) -> float:
    c = commutator(sqrtm_psd(rho, checked=False), k)
    return _half_trace_product(c, c)


def _skew(rho: np.ndarray, k: np.ndarray, p: float) -> float:
    return _wy(rho, k) if p == 0.5 else _wyd(rho, k, p)


def _skew_spectral(rho: np.ndarray, k: np.ndarray, p: float) -> float:
    # same quantity in the eigenbasis of rho:
    # S_p = -1/2 sum_ij (d_i^p - d_j^p)(d_i^(1-p) - d_j^(1-p)) |kt_ij|^2
    d, v = psd_eigh(rho, checked=False)
    kt = v.conj().T @ k @ v
    a = d**p
    b = a if p == 0.5 else d ** (1.0 - p)
    da = a[:, None] - a[None, :]
    db = b[:, None] - b[None, :]
    return -0.5 * float(np.sum(da * db * (kt.real**2 + kt.imag**2)))


def von_neumann_entropy(rho) -> float:
    """``-tr rho log rho`` in nats, with ``0 log 0 = 0``."""
    w = psd_eigh(rho).eigenvalues
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))
