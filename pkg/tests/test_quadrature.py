import math

import numpy as np
import pytest

from hypab.errors import ConvergenceError
from hypab.quadrature import gauss_kronrod


def test_scalar_integrand_columns():
    res = gauss_kronrod(lambda x: np.stack([np.sin(x), np.exp(-x)], axis=1), 0.0, math.pi, rel_tol=1e-13)
    assert res.value == pytest.approx([2.0, 1 - math.exp(-math.pi)], rel=1e-13)
    assert np.all(res.error < 1e-12)


def test_endpoint_singularity_refines():
    res = gauss_kronrod(lambda x: (1 / np.sqrt(x))[:, None], 0.0, 1.0, rel_tol=1e-10, max_panels=20000)
    assert res.value[0] == pytest.approx(2.0, rel=1e-9)


def test_cancelling_integrand_stops_at_roundoff():
    # integral of a large oscillation that almost cancels
    res = gauss_kronrod(lambda x: (1e8 * np.cos(x) + 1e-9)[:, None], 0.0, 2 * math.pi, rel_tol=1e-12)
    assert abs(res.value[0] - 2 * math.pi * 1e-9) < 1e-5


def test_breakpoints_and_failure():
    res = gauss_kronrod(lambda x: np.abs(x - 0.3)[:, None], 0.0, 1.0, breakpoints=[0.3], rel_tol=1e-14)
    assert res.value[0] == pytest.approx(0.045 + 0.245, rel=1e-14)
    with pytest.raises(ConvergenceError):
        gauss_kronrod(lambda x: np.sign(np.sin(1 / x))[:, None], 0.0, 1.0, rel_tol=1e-14, max_panels=64)
