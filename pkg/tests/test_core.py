import math

import pytest
from hypothesis import given, strategies as st

from hypab.core import (EffectiveAngularMomentum, FluxParams, PhysicalParams, PseudospherePoint, QuantumNumbers,
                        effective_channel, geodesic_invariants, principal_angle)

ints = st.integers(-50, 50)
fluxes = st.floats(-20, 20, allow_nan=False)
taus = st.floats(1e-3, 8.0)
angles = st.floats(-50, 50, allow_nan=False)


@given(ints, fluxes)
def test_channel_flux_shift_covariance(l, xi):
    # a unit of flux is absorbed by relabelling l -> l + 1
    assert effective_channel(l + 1, xi + 1) == pytest.approx(effective_channel(l, xi), abs=1e-12)


def test_flux_shift_is_not_a_swap_of_arguments():
    assert effective_channel(0, 1.0 + 1) == 2.0
    assert effective_channel(0 + 1, 1.0) == 0.0


@given(ints, fluxes)
def test_channel_reflection_symmetry(l, xi):
    assert effective_channel(-l, -xi) == effective_channel(l, xi)
    assert effective_channel(l, xi) >= 0


@given(taus, angles, taus, angles)
def test_cosh_distance_at_least_one(t1, p1, t2, p2):
    g = geodesic_invariants(PseudospherePoint(t1, p1), PseudospherePoint(t2, p2))
    assert g.cosh_distance >= 1.0
    assert -math.pi < g.delta_phi <= math.pi


@given(taus, angles)
def test_coincident_points_have_zero_distance(t, p):
    q = PseudospherePoint(t, p)
    assert geodesic_invariants(q, q).cosh_distance == 1.0
    assert geodesic_invariants(q, PseudospherePoint(t, p + 2 * math.pi)).distance < 1e-6


def test_distinct_points_are_separated():
    a, b = PseudospherePoint(1.0, 0.0), PseudospherePoint(1.0, 1e-3)
    assert geodesic_invariants(a, b).cosh_distance > 1.0
    # law of cosines at the origin
    c, d = PseudospherePoint(0.7, 0.2), PseudospherePoint(1.9, 2.1)
    expect = math.cosh(0.7) * math.cosh(1.9) - math.sinh(0.7) * math.sinh(1.9) * math.cos(1.9)
    assert geodesic_invariants(c, d).cosh_distance == pytest.approx(expect, rel=1e-14)


@given(angles)
def test_angle_folding(phi):
    p = PseudospherePoint(1.0, phi)
    assert 0.0 <= p.phi < 2 * math.pi
    assert math.cos(p.phi) == pytest.approx(math.cos(phi), abs=1e-9)
    a = principal_angle(phi)
    assert -math.pi < a <= math.pi


@pytest.mark.parametrize("kwargs", [dict(hbar=0), dict(mass=-1), dict(curvature_radius=math.inf),
                                    dict(light_speed=math.nan)])
def test_physical_params_reject_bad_values(kwargs):
    with pytest.raises(ValueError):
        PhysicalParams(**kwargs)


def test_energy_unit():
    assert PhysicalParams(hbar=2, mass=0.5, curvature_radius=2).energy_unit == pytest.approx(1.0)


def test_boundary_validation():
    with pytest.raises(ValueError):
        PseudospherePoint(0.0)
    with pytest.raises(ValueError):
        PseudospherePoint(1.0, math.nan)
    with pytest.raises(ValueError):
        FluxParams(b=-1)
    with pytest.raises(ValueError):
        FluxParams(xi=math.inf)
    with pytest.raises(ValueError):
        QuantumNumbers(n_radial=-1)
    with pytest.raises(ValueError):
        EffectiveAngularMomentum(-0.1)
    assert EffectiveAngularMomentum(0.25).lam == 0.25
