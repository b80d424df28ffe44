"""lambda-entropies built from the extreme Morozova-Chentsov functions.

For ``lambda`` in ``[0, 1]`` the extreme Morozova-Chentsov functions are::

    c_lambda(x, y) = (1 + lambda)/2 * (1/(x + lambda*y) + 1/(lambda*x + y))

and ``f_lambda(x, y) = x*y*c_lambda(x, y)``.  The lambda-entropy is

    E_lambda(rho, k) = -tr(rho k^2) + tr(k f_lambda(L_rho, R_rho) k),

where ``L_rho`` and ``R_rho`` are left and right multiplication by
``rho``.  In the eigenbasis of ``rho`` (eigenvalues ``d``) the superoperator
acts entrywise, so with ``kt = V* k V``::

    E_lambda = -1/2 sum_ij (d_i + d_j - 2 f_lambda(d_i, d_j)) |kt_ij|^2
             = -1/2 sum_ij lambda (d_i + d_j)(d_i - d_j)^2
                     / ((d_i + lambda d_j)(lambda d_i + d_j)) |kt_ij|^2.

The last form has no cancellation and shows ``E_lambda <= 0`` and
``E_lambda = O(lambda)`` as ``lambda -> 0``.

The Wigner-Yanase-Dyson entropy is recovered by integrating ``E_lambda``
against the probability measure

    dmu_p = 2 sin(p pi) / (pi p (1-p)) * (lambda^p + lambda^(1-p)) / (1+lambda)^3 dlambda

as ``S_p = p(1-p)/2 * int_0^1 E_lambda (1+lambda)^2 / lambda dmu_p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .entropy import _check_p, _pair
from .errors import NotPositiveError, QuadratureError
from .linalg import eigh
from .quadrature import QuadratureConfig, QuadratureResult, adaptive_simpson

PD_RTOL = 1e-12


def _check_xy(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("c_lambda and f_lambda are defined for x, y > 0 only")
    return x, y


def _check_lam(lam, lower_open: bool = False):
    lam = np.asarray(lam, dtype=float)
    low_bad = lam <= 0 if lower_open else lam < 0
    if np.any(low_bad) or np.any(lam > 1):
        interval = "(0, 1]" if lower_open else "[0, 1]"
        raise ValueError(f"lambda must lie in {interval}")
    return lam


def c_lambda(lam, x, y):
    """Extreme Morozova-Chentsov function; broadcasts over its arguments."""
    lam = _check_lam(lam)
    x, y = _check_xy(x, y)
    out = 0.5 * (1.0 + lam) * (1.0 / (x + lam * y) + 1.0 / (lam * x + y))
    return out if out.ndim else float(out)


def f_lambda(lam, x, y):
    """``x * y * c_lambda(x, y)``; a mean of ``x`` and ``y`` (``f(x, x) = x``)."""
    x, y = _check_xy(x, y)
    out = x * y * np.asarray(c_lambda(lam, x, y))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class LeftRightSpectrum:
    """Spectrum of a positive definite state and the observable in its eigenbasis."""

    eigenvalues: np.ndarray
    k_tilde: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        """``|kt_ij|^2``."""
        return np.abs(self.k_tilde) ** 2

    def slope(self, lam) -> np.ndarray:
        """``E_lambda / lambda`` for an array of ``lambda`` (finite at ``lambda = 0``)."""
        lam = np.asarray(lam, dtype=float)[..., None, None]
        x = self.eigenvalues[:, None]
        y = self.eigenvalues[None, :]
        kernel = (x + y) * (x - y) ** 2 / ((x + lam * y) * (lam * x + y))
        return -0.5 * np.sum(kernel * self.weights, axis=(-2, -1))

    def entropy(self, lam) -> np.ndarray:
        lam = np.asarray(lam, dtype=float)
        return lam * self.slope(lam)


def left_right_spectrum(rho, k) -> LeftRightSpectrum:
    """Diagonalise ``rho`` (must be positive definite) and rotate ``k`` to match."""
    rho, k = _pair(rho, k)
    dec = eigh(rho)
    d = dec.eigenvalues
    if d[0] <= PD_RTOL * max(d[-1], 0.0):
        raise NotPositiveError(f"state is not positive definite (smallest eigenvalue {d[0]:.6g})")
    kt = dec.vectors.conj().T @ k @ dec.vectors
    return LeftRightSpectrum(d, (kt + kt.conj().T) / 2)


def lambda_entropy(rho, k, lam: float) -> float:
    """``E_lambda(rho, k)`` for ``lambda`` in ``(0, 1]``; never positive."""
    lam = float(_check_lam(lam, lower_open=True))
    return float(left_right_spectrum(rho, k).entropy(lam))


def _mu_density(p: float, lam):
    lam = np.asarray(lam, dtype=float)
    # sin of the smaller exponent keeps the density symmetric under p -> 1-p
    norm = 2.0 * np.sin(min(p, 1.0 - p) * np.pi) / (np.pi * p * (1.0 - p))
    return norm * (lam**p + lam ** (1.0 - p)) / (1.0 + lam) ** 3


def mu_p_density(p: float, lam):
    """Density of the probability measure ``mu_p`` on ``[0, 1]``."""
    p = _check_p(p)
    lam = _check_lam(lam, lower_open=True)
    out = _mu_density(p, lam)
    return out if out.ndim else float(out)


def mu_p_mass(p: float, cfg: QuadratureConfig = QuadratureConfig()) -> QuadratureResult:
    """``int_0^1 dmu_p``; equals 1 up to quadrature error."""
    p = _check_p(p)
    m = cfg.substitution_exponent

    def integrand(u):
        return _mu_density(p, u**m) * m * u ** (m - 1.0)

    return adaptive_simpson(integrand, 0.0, 1.0, cfg.abs_tol, cfg.max_panels)


@lru_cache(maxsize=64)
def inverse_moment(p: float, abs_tol: float = 1e-8, max_panels: int = 4096) -> QuadratureResult:
    """``int_0^1 lambda^-1 dmu_p(lambda)``, which must be finite for the integral form of S_p.

    Uses ``lambda = u**(1/min(p, 1-p))`` so the integrand stays bounded at 0.
    """
    p = _check_p(p)
    m = 1.0 / min(p, 1.0 - p)
    norm = 2.0 * np.sin(p * np.pi) / (np.pi * p * (1.0 - p))

    def integrand(u):
        lam = u**m
        return norm * m * (u ** (m * p - 1.0) + u ** (m * (1.0 - p) - 1.0)) / (1.0 + lam) ** 3

    return adaptive_simpson(integrand, 0.0, 1.0, abs_tol, max_panels)


def wyd_via_quadrature(rho, k, p: float, cfg: QuadratureConfig = QuadratureConfig(), full_output: bool = False):
    """``S_p(rho, k)`` from its integral representation over lambda-entropies.

    The integral is taken in ``u`` with ``lambda = u**m``.  The
    ``lambda^-1``-moment of ``mu_p`` is checked once per ``p`` before the
    main integral.  Returns a float, or the :class:`QuadratureResult` when
    ``full_output`` is set.

    Raises
    ------
    QuadratureError
        If the panel budget ``cfg.max_panels`` is exhausted; the exception
        carries the estimate and error bound reached.
    """
    p = _check_p(p)
    moment = inverse_moment(p)
    if not np.isfinite(moment.value):
        raise QuadratureError(f"lambda^-1 moment of mu_{p} is not finite")
    spectrum = left_right_spectrum(rho, k)
    m = cfg.substitution_exponent
    prefactor = 0.5 * p * (1.0 - p)

    def integrand(u):
        lam = u**m
        return prefactor * spectrum.slope(lam) * (1.0 + lam) ** 2 * _mu_density(p, lam) * m * u ** (m - 1.0)

    result = adaptive_simpson(integrand, 0.0, 1.0, cfg.abs_tol, cfg.max_panels)
    return result if full_output else result.value
