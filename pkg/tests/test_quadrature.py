import math

import numpy as np
import pytest
from scipy import integrate

from skewnum.errors import QuadratureError
from skewnum.quadrature import QuadratureConfig, adaptive_simpson


def test_polynomial_exact():
    res = adaptive_simpson(lambda x: 3 * x**2 - x + 1, 0.0, 2.0, 1e-12, 64)
    assert res.value == pytest.approx(8 - 2 + 2, abs=1e-12)


def test_smooth_integrals():
    assert adaptive_simpson(np.sin, 0.0, math.pi, 1e-10, 4096).value == pytest.approx(2.0, abs=1e-10)
    assert adaptive_simpson(np.exp, -1.0, 1.0, 1e-10, 4096).value == pytest.approx(math.e - 1 / math.e, abs=1e-10)


def test_endpoint_singularity_after_substitution():
    # int_0^1 cos(x) x^-1/2 dx with x = u^2 becomes int_0^1 2 cos(u^2) du
    oracle, _ = integrate.quad(lambda x: np.cos(x) / np.sqrt(x), 0, 1, epsabs=1e-13, limit=200)
    res = adaptive_simpson(lambda u: 2.0 * np.cos(u**2), 0.0, 1.0, 1e-10, 4096)
    assert res.value == pytest.approx(oracle, abs=1e-10)


def test_error_estimate_bounds_actual_error():
    res = adaptive_simpson(lambda x: np.sqrt(x), 0.0, 1.0, 1e-7, 4096)
    assert abs(res.value - 2 / 3) <= max(res.error, 1e-7)


def test_budget_and_nonfinite():
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda x: np.sqrt(x), 0.0, 1.0, 1e-15, 8)
    with pytest.raises(QuadratureError), np.errstate(divide="ignore"):
        adaptive_simpson(lambda x: 1 / x, 0.0, 1.0, 1e-8, 64)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_panels=0)
