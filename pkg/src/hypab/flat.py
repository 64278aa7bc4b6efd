"""Flat-space limit R -> infinity: Bessel limit, flat kernels and interference.

Near the origin of a pseudosphere of large radius R the substitution r = R tau
turns the radial channel kernels into the polar free-particle kernels, and the
winding decomposition becomes a Gaussian in the winding angle
``Th_n = dphi + 2 pi n``. Real time is allowed here since every expression is
algebraic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NATURAL, TWO_PI, PhysicalParams
from .specfun import DEFAULT_CONTROLS, SeriesControls, bessel_i, legendre_p


@dataclass(frozen=True)
class LimitCheck:
    lhs: float
    rhs: float
    rel_dev: float


def legendre_bessel_limit_check(mu: float, z: float, nu: float,
                                ctl: SeriesControls = DEFAULT_CONTROLS) -> LimitCheck:
    """Compare nu^mu P^{-mu}_nu(cosh(z/nu)) with I_mu(z)."""
    if nu < 10:
        raise ValueError("nu must be >= 10")
    if not (mu >= 0 and z > 0):
        raise ValueError("need mu >= 0 and z > 0")
    # legendre_p(mu, s, tau) is P^{-mu}_{s - 1/2}; degree nu means s = nu + 1/2
    lhs = nu**mu * float(legendre_p(mu, nu + 0.5, z / nu, ctl))
    rhs = float(np.real(bessel_i(mu, z, ctl)))
    return LimitCheck(lhs, rhs, abs(lhs - rhs) / abs(rhs))


def _check_time(time):
    time = complex(time)
    if time == 0:
        raise ValueError("time must be nonzero")
    return time


def flat_radial_kernel(lam: float, r1: float, r2: float, time, params: PhysicalParams = NATURAL,
                       ctl: SeriesControls = DEFAULT_CONTROLS) -> complex:
    """(m/2pi i hbar T) exp(i m (r1^2 + r2^2)/2 hbar T) I_|lam|(m r1 r2/(i hbar T)).

    Pass ``time = -1j * beta`` for the Euclidean kernel.
    """
    time = _check_time(time)
    m, hbar = params.mass, params.hbar
    iht = 1j * hbar * time
    z = m * r1 * r2 / iht
    gauss = 1j * m * (r1 * r1 + r2 * r2) / (2.0 * hbar * time)
    # carry e^{Re z} into the Gaussian so large Euclidean arguments do not overflow
    scaled = complex(bessel_i(abs(lam), z, ctl, scaled=True))
    return complex(m / (TWO_PI * iht) * np.exp(gauss + z.real) * scaled)


@dataclass(frozen=True)
class InterferenceGeometry:
    tau1: float
    tau2: float
    phi1: float = 0.0
    phi2: float = 0.0
    R: float = 1.0
    T: float = 1.0
    params: PhysicalParams = NATURAL

    def __post_init__(self):
        for name in ("tau1", "tau2", "R", "T"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be > 0")

    @property
    def coupling(self) -> float:
        """m R^2 tau1 tau2 / (hbar T), the Gaussian width in the winding angle."""
        p = self.params
        return p.mass * self.R**2 * self.tau1 * self.tau2 / (p.hbar * self.T)

    @property
    def delta_phi(self) -> float:
        return self.phi2 - self.phi1

    def winding_angle(self, n: int) -> float:
        return self.delta_phi + TWO_PI * n

    @property
    def amplitude(self) -> complex:
        p = self.params
        return p.mass / (TWO_PI * 1j * p.hbar * self.T)


def partial_propagator_flat(n: int, g: InterferenceGeometry, xi: float, *, verbatim: bool = False) -> complex:
    """Large-R winding-n propagator.

    Exponent: i m R^2 (tau2 - tau1)^2/(2 hbar T) + i hbar T/(8 m R^2 tau1 tau2)
    + i xi Th_n + i c Th_n^2 / 2, with c = :attr:`InterferenceGeometry.coupling`,
    the quadratic dependence on Th_n coming from the Gaussian lambda-integral.
    ``verbatim=True`` uses the last term linear in Th_n instead.
    """
    p = g.params
    m, hbar = p.mass, p.hbar
    th = g.winding_angle(n)
    c = g.coupling
    expo = (1j * m * g.R**2 * (g.tau2 - g.tau1) ** 2 / (2.0 * hbar * g.T)
            + 1j * hbar * g.T / (8.0 * m * g.R**2 * g.tau1 * g.tau2)
            + 1j * xi * th)
    expo += 1j * c * th / 2.0 if verbatim else 1j * c * th * th / 2.0
    return complex(g.amplitude * np.exp(expo))


CONVENTIONS = ("contrast", "magnitude", "verbatim")


def _scale(convention: str, time: float, params: PhysicalParams) -> float:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    if convention == "contrast":
        return 1.0
    mag = 2.0 * (params.mass / (TWO_PI * params.hbar * time)) ** 2
    # (m / 2 pi i hbar T)^2 is negative real
    return mag if convention == "magnitude" else -mag


def interference_phase(n: int, l: int, g: InterferenceGeometry, xi: float) -> float:
    """Argument of the interference cosine between winding classes n and l."""
    c = g.coupling
    d = l - n
    return TWO_PI * d * (xi + c * (g.delta_phi - math.pi)) + 2.0 * math.pi**2 * c * d * (l + n + 1)


def interference_term(n: int, l: int, g: InterferenceGeometry, xi: float, convention: str = "magnitude") -> float:
    """Cross term of the winding classes n and l.

    ``convention``: ``"contrast"`` returns the bare cosine, ``"magnitude"``
    multiplies it by 2 (m/2 pi hbar T)^2 and ``"verbatim"`` by the signed square
    2 (m/2 pi i hbar T)^2 = -2 (m/2 pi hbar T)^2.
    """
    return _scale(convention, g.T, g.params) * math.cos(interference_phase(n, l, g, xi))


def max_interference(xi: float, time: float, params: PhysicalParams = NATURAL, convention: str = "verbatim") -> float:
    """Adjacent-winding interference 2 (m/2 pi i hbar T)^2 cos(2 pi xi)."""
    if not time > 0:
        raise ValueError("time must be > 0")
    return _scale(convention, time, params) * math.cos(TWO_PI * xi)
