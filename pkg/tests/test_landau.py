import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypab.core import PhysicalParams, PseudospherePoint
from hypab.errors import QuantumNumberError
from hypab.landau import (bound_normalization, continuum_threshold, free_energy, free_wavefunction,
                          landau_bound_radial, landau_bound_state, landau_bound_wavefunction, landau_level,
                          landau_levels, landau_scattering_state, landau_scattering_wavefunction, max_bound_index)
from hypab.quadrature import gauss_kronrod
from hypab.validation import b_zero_residual, landau_gram_residual


@pytest.mark.parametrize("b", [0.0, 0.5, 0.51, 1.5, 3.0, 10.2])
def test_bound_count_by_enumeration(b):
    expect = sum(1 for N in range(100) if N < b - 0.5)
    assert len(landau_levels(b)) == expect
    assert max_bound_index(b) == expect - 1


def test_ladder_at_b3():
    assert landau_levels(3.0) == pytest.approx([1.5, 3.5, 4.5], abs=1e-12)
    assert landau_levels(0.4) == []


@given(st.floats(0.51, 40.0))
def test_levels_below_threshold(b):
    top = continuum_threshold(b)
    for e in landau_levels(b):
        assert 0 < e < top


def test_units_scale_energies():
    pp = PhysicalParams(hbar=2.0, mass=0.5, curvature_radius=2.0)
    assert landau_level(1, 3.0, pp) == pytest.approx(pp.energy_unit * 2 * 3.5)
    assert landau_scattering_state(1.2, 0, 3.0).energy == pytest.approx(0.5 * (1.44 + 9.25))
    assert free_energy(2.0) == pytest.approx(0.5 * 4.25)


def test_gram_matrix_b42():
    assert landau_gram_residual(4.2) < 1e-7


def test_lowest_state_profile():
    # N = 0 is t^|l| (1 - t^2)^b up to normalization, t = tanh(tau / 2)
    l, b = 2, 2.3
    taus = np.array([0.2, 1.0, 2.5])
    t = np.tanh(taus / 2)
    ratio = landau_bound_radial(0, l, b, taus) / (t**l * (1 - t * t) ** b)
    assert np.ptp(ratio) < 1e-12 * abs(ratio[0])


def test_verbatim_normalization_is_not_unit():
    b, l, N = 4.2, 1, 2
    f = lambda tau: (landau_bound_radial(N, l, b, tau, verbatim=True) ** 2 * np.sinh(tau) * 2 * math.pi)[:, None]
    norm = gauss_kronrod(f, 0.0, 60.0, rel_tol=1e-12).value[0]
    assert abs(norm - 1.0) > 1e-2
    assert bound_normalization(N, l, b, verbatim=True) != bound_normalization(N, l, b)


def test_bound_wavefunction_phase_and_units():
    p = PseudospherePoint(0.8, 1.1)
    a = landau_bound_wavefunction(1, 2, 3.0, p)
    assert a / abs(a) == pytest.approx(complex(math.cos(2.2), math.sin(2.2)))
    b = landau_bound_wavefunction(1, 2, 3.0, p, PhysicalParams(curvature_radius=4.0))
    assert b == pytest.approx(a / 4.0)


def test_invalid_quantum_numbers():
    with pytest.raises(QuantumNumberError):
        landau_bound_state(3, 0, 3.0)
    with pytest.raises((QuantumNumberError, ValueError)):
        landau_bound_radial(0, 0, 0.4, 1.0)
    with pytest.raises(ValueError):
        landau_scattering_state(-1.0, 0, 1.0)


def test_b_zero_reduction():
    assert b_zero_residual() < 1e-8


def test_free_state_is_conical_function():
    mp.mp.dps = 30
    k, l, tau = 1.3, 2, 0.9
    w = free_wavefunction(k, l, PseudospherePoint(tau, 0.0))
    p = float(mp.re(mp.legenp(-0.5 + 1j * k, -l, mp.cosh(tau), type=3)))
    # |Psi| = sqrt(k sinh(pi k)) |Gamma(1/2 + ik + l)| / (pi sqrt 2) |P|
    amp = math.sqrt(k * math.sinh(math.pi * k)) * abs(complex(mp.gamma(0.5 + 1j * k + l))) / (math.pi * math.sqrt(2))
    assert abs(w) == pytest.approx(amp * abs(p), rel=1e-10)


def test_scattering_state_is_regular_at_origin():
    for l in (0, 1, 3):
        v = abs(landau_scattering_wavefunction(1.0, l, 2.0, PseudospherePoint(1e-4, 0.0)))
        assert v < 1e-4 ** l * 10 + (1 if l == 0 else 0)
