"""Constant magnetic field on the pseudosphere: Landau levels and eigenstates.

The field strength enters through ``b = eB/(hbar c)``. Bound states exist only
for ``N < b - 1/2``; above the threshold ``(b^2 + 1/4)`` (in units of
hbar^2/2mR^2) the spectrum is continuous. Wavefunctions are normalised against
the measure ``R^2 sinh(tau) dtau dphi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NATURAL, PhysicalParams, PseudospherePoint
from .errors import QuantumNumberError
from .specfun import DEFAULT_CONTROLS, SeriesControls, hyp2f1, jacobi_poly, legendre_p, log_gamma


@dataclass(frozen=True)
class BoundState:
    N: int
    l: int
    b: float
    energy: float
    normalization_constant: float


@dataclass(frozen=True)
class ScatteringState:
    k: float
    l: int
    b: float
    energy: float


def max_bound_index(b: float) -> int:
    """Largest N with N < b - 1/2, or -1 when there is none."""
    if b <= 0.5:
        return -1
    n = math.ceil(b - 0.5) - 1
    return n


def landau_level(N: int, b: float, params: PhysicalParams = NATURAL) -> float:
    return params.energy_unit * (b * b + 0.25 - (b - N - 0.5) ** 2)


def landau_levels(b: float, params: PhysicalParams = NATURAL) -> list[float]:
    """Discrete Landau energies for field strength ``b`` (empty for b <= 1/2)."""
    if not (math.isfinite(b) and b >= 0):
        raise ValueError("b must be >= 0")
    return [landau_level(N, b, params) for N in range(max_bound_index(b) + 1)]


def continuum_threshold(b: float, params: PhysicalParams = NATURAL) -> float:
    return params.energy_unit * (b * b + 0.25)


def _tanh_half(tau: float):
    t = math.tanh(0.5 * tau)
    return t, t * t


def _check_bound(N: int, b: float):
    if N < 0 or N > max_bound_index(b):
        raise QuantumNumberError(f"N={N} outside the bound window N < b - 1/2 (b={b})")


def bound_normalization(N: int, l: int, b: float, *, verbatim: bool = False) -> float:
    """Normalisation constant of the bound state (N, l).

    The default uses the factor ``2b - 2N - 1`` that makes the state unit-norm;
    ``verbatim=True`` uses ``2b + |l|`` in its place, which is not normalised
    except by coincidence.
    """
    _check_bound(N, b)
    al = abs(l)
    factor = (2 * b + al) if verbatim else (2 * b - 2 * N - 1)
    log_c2 = (
        math.lgamma(N + 1) + math.log(factor) + math.lgamma(2 * b - N + al)
        - math.log(4 * math.pi) - math.lgamma(N + al + 1) - math.lgamma(2 * b - N)
    )
    return math.exp(0.5 * log_c2)


def landau_bound_state(N: int, l: int, b: float, params: PhysicalParams = NATURAL) -> BoundState:
    return BoundState(N, l, b, landau_level(N, b, params), bound_normalization(N, l, b))


def landau_bound_radial(N: int, l: int, b: float, tau, *, verbatim: bool = False):
    """Radial factor of the bound state, vectorised over ``tau`` (R = 1 units)."""
    c = bound_normalization(N, l, b, verbatim=verbatim)
    t = np.tanh(0.5 * np.asarray(tau, dtype=float))
    s = t * t
    al = abs(l)
    return c * t**al * (1.0 - s) ** (b - N) * jacobi_poly(N, al, 2 * b - 2 * N - 1, 1.0 - 2.0 * s)


def landau_bound_wavefunction(
    N: int, l: int, b: float, p: PseudospherePoint, params: PhysicalParams = NATURAL,
    *, verbatim: bool = False,
) -> complex:
    radial = float(landau_bound_radial(N, l, b, p.tau, verbatim=verbatim))
    return radial * complex(math.cos(l * p.phi), math.sin(l * p.phi)) / params.R


def landau_scattering_state(k: float, l: int, b: float, params: PhysicalParams = NATURAL) -> ScatteringState:
    if not k > 0:
        raise ValueError("k must be > 0")
    return ScatteringState(k, l, b, params.energy_unit * (k * k + b * b + 0.25))


def landau_scattering_wavefunction(
    k: float, l: int, b: float, p: PseudospherePoint, params: PhysicalParams = NATURAL,
    ctl: SeriesControls = DEFAULT_CONTROLS, *, verbatim: bool = False,
) -> complex:
    """Continuum eigenstate of wavenumber ``k`` in the constant field ``b``.

    The default form is an exact eigenfunction with real radial part, carrying
    the phase of ``Gamma(1/2 + ik + b + |l|)`` so that at ``b = 0`` it coincides
    with :func:`free_wavefunction`. ``verbatim=True`` evaluates the alternative
    parameterisation with ``(1 + ik)/2`` in the Gamma arguments and ``-ik`` in
    the first hypergeometric parameter.
    """
    if not k > 0:
        raise ValueError("k must be > 0")
    if b < 0:
        raise ValueError("b must be >= 0")
    al = abs(l)
    t, s = _tanh_half(p.tau)
    log_amp = 0.5 * (math.log(k) + _log_sinh(2 * math.pi * k) - math.log(4 * math.pi)) - math.log(math.pi) - math.lgamma(al + 1)
    if verbatim:
        g = log_gamma(0.5 + 0.5j * k + b + al) + log_gamma(0.5 + 0.5j * k - b)
        f = hyp2f1(0.5 - 1j * k + b + al, 0.5 + 1j * k - b, 1 + al, s, ctl)
    else:
        g1 = log_gamma(0.5 + 1j * k + b + al)
        g = g1 + log_gamma(0.5 + 1j * k - b).real
        f = hyp2f1(0.5 + 1j * k + b + al, 0.5 + 1j * k - b, 1 + al, s, ctl)
    radial = np.exp(log_amp + g + (0.5 + 1j * k) * math.log1p(-s)) * t**al * f
    return complex(radial) * complex(math.cos(l * p.phi), math.sin(l * p.phi)) / params.R


def _log_sinh(x: float) -> float:
    # log sinh x without overflow for large x
    return x + math.log1p(-math.exp(-2 * x)) - math.log(2.0)


def free_energy(k: float, params: PhysicalParams = NATURAL) -> float:
    return params.energy_unit * (k * k + 0.25)


def free_wavefunction(
    k: float, l: int, p: PseudospherePoint, params: PhysicalParams = NATURAL,
    ctl: SeriesControls = DEFAULT_CONTROLS,
) -> complex:
    """Zero-field continuum state built from the conical function P^{-|l|}_{ik-1/2}."""
    if not k > 0:
        raise ValueError("k must be > 0")
    al = abs(l)
    log_amp = 0.5 * (math.log(k) + _log_sinh(math.pi * k) - math.log(2 * math.pi**2))
    pref = np.exp(log_amp + log_gamma(0.5 + 1j * k + al))
    conical = legendre_p(al, 1j * k, p.tau, ctl)
    return complex(pref * conical) * complex(math.cos(l * p.phi), math.sin(l * p.phi)) / params.R
