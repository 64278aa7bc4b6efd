"""Physical parameters, coordinates and quantum-number bookkeeping.

Every formula in the package takes its constants from a :class:`PhysicalParams`
record, so natural units (hbar = m = c = R = 1) are the default but nothing is
hard-wired to them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


def _positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    hbar: float = 1.0
    mass: float = 1.0
    light_speed: float = 1.0
    curvature_radius: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "light_speed", "curvature_radius"):
            _positive(name, getattr(self, name))

    @property
    def R(self) -> float:
        return self.curvature_radius

    @property
    def energy_unit(self) -> float:
        """hbar^2 / (2 m R^2), the scale of all curved-space energies."""
        return self.hbar**2 / (2.0 * self.mass * self.curvature_radius**2)


NATURAL = PhysicalParams()


@dataclass(frozen=True)
class FluxParams:
    """Aharonov-Bohm flux ``xi = e Phi / (2 pi hbar c)`` and field ``b = e B / (hbar c)``.

    ``flux_phi`` is informational only; nothing downstream reads it.
    """

    xi: float = 0.0
    b: float = 0.0
    flux_phi: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.xi):
            raise ValueError("xi must be finite")
        if not (math.isfinite(self.b) and self.b >= 0):
            raise ValueError(f"b must be >= 0, got {self.b!r}")


@dataclass(frozen=True)
class PseudospherePoint:
    tau: float
    phi: float = 0.0

    def __post_init__(self):
        _positive("tau", self.tau)
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        # fold into [0, 2pi); the winding is never stored in the angle
        phi = math.fmod(self.phi, TWO_PI)
        if phi < 0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class QuantumNumbers:
    n_radial: int = 0
    l: int = 0
    k: float | None = None
    winding: int = 0

    def __post_init__(self):
        if self.n_radial < 0:
            raise ValueError("n_radial must be >= 0")
        if self.k is not None and not self.k > 0:
            raise ValueError("k must be > 0")


class EffectiveAngularMomentum(float):
    """Non-negative channel label lambda (|l - xi| in shifted channels)."""

    def __new__(cls, lam: float):
        lam = float(lam)
        if not (math.isfinite(lam) and lam >= 0):
            raise ValueError(f"effective angular momentum must be >= 0, got {lam!r}")
        return super().__new__(cls, lam)

    @property
    def lam(self) -> float:
        return float(self)


def effective_channel(l: int, xi: float) -> EffectiveAngularMomentum:
    """Angular momentum seen by the radial motion in channel ``l`` under flux ``xi``."""
    return EffectiveAngularMomentum(abs(l - xi))


@dataclass(frozen=True)
class GeodesicInvariants:
    delta_phi: float
    cosh_distance: float

    @property
    def distance(self) -> float:
        return math.acosh(max(self.cosh_distance, 1.0))


def principal_angle(angle: float) -> float:
    """Map an angle to (-pi, pi]."""
    a = math.remainder(angle, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    return a


def geodesic_invariants(p1: PseudospherePoint, p2: PseudospherePoint) -> GeodesicInvariants:
    dphi = principal_angle(p2.phi - p1.phi)
    t1, t2 = p1.tau, p2.tau
    # cosh d = cosh(t2 - t1) + sinh t1 sinh t2 (1 - cos dphi); avoids cancellation
    # for nearby points
    cd = math.cosh(t2 - t1) + 2.0 * math.sinh(t1) * math.sinh(t2) * math.sin(0.5 * dphi) ** 2
    return GeodesicInvariants(delta_phi=dphi, cosh_distance=max(cd, 1.0))
