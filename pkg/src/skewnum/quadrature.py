"""Globally adaptive Simpson quadrature with Richardson-corrected panels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for :func:`adaptive_simpson` and the integral form of ``S_p``.

    ``substitution_exponent`` is the power ``m`` in ``lambda = u**m`` used to
    smooth the endpoint behaviour at ``lambda = 0``.
    """

    abs_tol: float = 1e-8
    max_panels: int = 4096
    substitution_exponent: float = 2.0

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_panels < 4:
            raise ValueError("max_panels must be at least 4")
        if not self.substitution_exponent >= 1:
            raise ValueError("substitution_exponent must be >= 1")


class QuadratureResult(NamedTuple):
    value: float
    error: float
    panels: int


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    abs_tol: float = 1e-8,
    max_panels: int = 4096,
    initial_panels: int = 4,
) -> QuadratureResult:
    """Integrate a vectorised ``f`` over ``[a, b]``.

    Each panel compares Simpson's rule against its two-half refinement; the
    difference over 15 is both the error estimate and the Richardson
    correction.  A panel is accepted when its error is below its share
    ``abs_tol * width / (b - a)`` of the budget, otherwise it is bisected.
    All pending panels of a round are evaluated in one call to ``f``.
    Accepted panels are summed left to right.
    """
    if not b > a:
        raise ValueError("need a < b")
    initial_panels = max(1, min(initial_panels, max_panels))
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    fx = np.asarray(f(np.concatenate([edges, mid])), dtype=float)
    if not np.all(np.isfinite(fx)):
        raise QuadratureError("integrand is not finite on the integration interval")
    flo, fhi, fmid = fx[:initial_panels], fx[1:initial_panels + 1], fx[initial_panels + 1:]

    width = b - a
    acc_left, acc_value, acc_error = [], [], []
    while lo.size:
        h = hi - lo
        q1 = lo + 0.25 * h
        q3 = lo + 0.75 * h
        fq = np.asarray(f(np.concatenate([q1, q3])), dtype=float)
        fq1, fq3 = fq[: lo.size], fq[lo.size:]
        if not np.all(np.isfinite(fq)):
            raise QuadratureError("integrand is not finite on the integration interval")
        coarse = h / 6.0 * (flo + 4.0 * fmid + fhi)
        fine = h / 12.0 * (flo + 4.0 * fq1 + 2.0 * fmid + 4.0 * fq3 + fhi)
        err = np.abs(fine - coarse) / 15.0
        ok = err <= abs_tol * h / width
        acc_left.extend(lo[ok])
        acc_value.extend(fine[ok] + (fine[ok] - coarse[ok]) / 15.0)
        acc_error.extend(err[ok])

        bad = ~ok
        if len(acc_left) + 2 * int(bad.sum()) > max_panels:
            estimate = float(np.sum(acc_value) + np.sum(fine[bad]))
            error = float(np.sum(acc_error) + np.sum(err[bad]))
            raise QuadratureError(
                f"adaptive Simpson exceeded {max_panels} panels (estimate {estimate:.12g}, error {error:.3g})",
                estimate=estimate,
                error=error,
            )
        m = mid[bad]
        lo = np.concatenate([lo[bad], m])
        hi = np.concatenate([m, hi[bad]])
        flo, fhi = np.concatenate([flo[bad], fmid[bad]]), np.concatenate([fmid[bad], fhi[bad]])
        fmid = np.concatenate([fq1[bad], fq3[bad]])
        mid = np.concatenate([q1[bad], q3[bad]])

    order = np.argsort(acc_left, kind="stable")
    value = float(np.sum(np.asarray(acc_value)[order]))
    return QuadratureResult(value, float(np.sum(acc_error)), len(acc_left))
