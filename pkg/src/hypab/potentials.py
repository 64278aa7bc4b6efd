"""Higgs oscillator and Kepler-Coulomb problems with an AB flux line.

The flux only shifts the angular momentum, ``l -> |l - xi|``, so every spectrum
below is a function of the channel label ``lam = |l - xi|``.

Higgs oscillator, V = (m/2) w^2 R^2 tanh^2(tau), with
``nu^2 = (m w R^2/hbar)^2 + 1/4``. The bracket count ``[nu - lam - 1]`` of
discrete levels includes levels with ``nu - lam - 2n - 1 <= 0`` whose
wavefunctions are not square integrable; ``normalizable_only=True`` keeps only
the genuine bound states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NATURAL, TWO_PI, PhysicalParams, PseudospherePoint, effective_channel
from .errors import QuantumNumberError, TruncationError, UnsupportedProblemError
from .kernel import KernelRequest, partial_wave_kernel
from .quadrature import gauss_kronrod
from .specfun import DEFAULT_CONTROLS, SeriesControls, hyp2f1, log_gamma


@dataclass(frozen=True)
class HiggsParams:
    omega: float
    nu: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be > 0")
        if not self.nu >= 0.5:
            raise ValueError("nu must be >= 1/2")

    @classmethod
    def create(cls, omega: float, params: PhysicalParams = NATURAL) -> "HiggsParams":
        x = params.mass * omega * params.R**2 / params.hbar
        return cls(omega, math.sqrt(x * x + 0.25))

    def consistent_with(self, params: PhysicalParams, tol: float = 1e-12) -> bool:
        x = params.mass * self.omega * params.R**2 / params.hbar
        return abs(self.nu**2 - 0.25 - x * x) <= tol * max(1.0, x * x)


@dataclass(frozen=True)
class CoulombParams:
    alpha: float
    bohr_radius: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.bohr_radius > 0):
            raise ValueError("alpha and bohr_radius must be > 0")

    @classmethod
    def create(cls, alpha: float, params: PhysicalParams = NATURAL) -> "CoulombParams":
        return cls(alpha, params.hbar**2 / (params.mass * alpha))


def higgs_potential(h: HiggsParams, params: PhysicalParams = NATURAL):
    """V(tau) = (m/2) w^2 R^2 tanh^2(tau), vectorised."""
    amp = 0.5 * params.mass * h.omega**2 * params.R**2
    return lambda tau: amp * np.tanh(tau) ** 2


def _higgs_top(h: HiggsParams, params: PhysicalParams) -> float:
    return 0.5 * params.mass * h.omega**2 * params.R**2


def higgs_level(n: int, lam: float, h: HiggsParams, params: PhysicalParams = NATURAL) -> float:
    unit = params.energy_unit
    return -unit * ((2 * n + lam - h.nu + 1) ** 2 - 0.25) + _higgs_top(h, params)


def higgs_max_index(lam: float, h: HiggsParams, *, normalizable_only: bool = False) -> int:
    """Largest admissible n, or -1 when the window is empty."""
    if normalizable_only:
        # need nu - lam - 2n - 1 > 0
        gap = h.nu - lam - 1.0
        if gap <= 0:
            return -1
        return math.ceil(gap / 2.0) - 1
    top = math.floor(h.nu - lam - 1.0)
    return top if top >= 0 else -1


def higgs_bound_spectrum(h: HiggsParams, l: int, xi: float, params: PhysicalParams = NATURAL,
                         *, normalizable_only: bool = False) -> list[float]:
    lam = float(effective_channel(l, xi))
    return [higgs_level(n, lam, h, params)
            for n in range(higgs_max_index(lam, h, normalizable_only=normalizable_only) + 1)]


def higgs_continuum_threshold(h: HiggsParams, params: PhysicalParams = NATURAL) -> float:
    return params.energy_unit * 0.25 + _higgs_top(h, params)


def _higgs_bound_radial(n: int, lam: float, h: HiggsParams, tau, R: float, verbatim: bool):
    nu = h.nu
    gap = nu - lam - 2 * n - 1
    if verbatim:
        log_norm = (math.lgamma(n + lam + 1) + math.lgamma(nu - lam)
                    - math.lgamma(nu - lam - n) - math.lgamma(n + 1))
        cosh_pow = n + 0.5 - nu
        first = -lam
    else:
        log_norm = (math.lgamma(n + lam + 1) + math.lgamma(nu - n)
                    - math.lgamma(nu - lam - n) - math.lgamma(n + 1))
        cosh_pow = 2 * n + 0.5 - nu
        first = -n
    norm = math.sqrt(2.0 * gap / R**2) * math.exp(0.5 * log_norm - math.lgamma(lam + 1))
    tau = np.asarray(tau, dtype=float)
    th2 = np.tanh(tau) ** 2
    if verbatim:
        poly = np.array([complex(hyp2f1(first, nu - n, 1 + lam, float(x))).real for x in np.atleast_1d(th2)])
        poly = poly.reshape(tau.shape)
    else:
        poly = _terminating(n, nu - n, 1 + lam, th2)
    return norm * np.sinh(tau) ** (lam + 0.5) * np.cosh(tau) ** cosh_pow * poly


def _terminating(n: int, b: float, c: float, x):
    # 2F1(-n, b; c; x) as a polynomial, valid for every x
    total = np.ones_like(x)
    term = np.ones_like(x)
    for j in range(n):
        term = term * ((-n + j) * (b + j) / ((c + j) * (j + 1.0))) * x
        total = total + term
    return total


def higgs_bound_radial(n: int, l: int, xi: float, h: HiggsParams, tau, params: PhysicalParams = NATURAL,
                       *, verbatim: bool = False):
    """S_n(tau): radial factor with |Psi|^2 R^2 sinh dtau dphi = S_n^2 R^2 dtau / 1."""
    lam = float(effective_channel(l, xi))
    if n < 0 or n > higgs_max_index(lam, h, normalizable_only=True):
        raise QuantumNumberError(
            f"n={n} is not a normalisable level (need nu - lam - 2n - 1 > 0; nu={h.nu:.6g}, lam={lam:.6g})"
        )
    return _higgs_bound_radial(n, lam, h, tau, params.R, verbatim)


def higgs_bound_wavefunction(n: int, l: int, xi: float, h: HiggsParams, p: PseudospherePoint,
                             params: PhysicalParams = NATURAL, ctl: SeriesControls = DEFAULT_CONTROLS,
                             *, verbatim: bool = False) -> complex:
    """Bound state (2 pi sinh tau)^(-1/2) S_n(tau) e^{il phi}.

    The default radial factor uses the terminating polynomial 2F1(-n, nu-n;
    1+lam; tanh^2) with cosh power 2n + 1/2 - nu. ``verbatim=True`` evaluates
    the variant with first parameter ``-lam``, cosh power ``n + 1/2 - nu`` and
    Gamma(nu - lam) in the norm, which is neither orthogonal nor normalised.
    """
    s = float(higgs_bound_radial(n, l, xi, h, p.tau, params, verbatim=verbatim))
    return s / math.sqrt(TWO_PI * math.sinh(p.tau)) * complex(math.cos(l * p.phi), math.sin(l * p.phi))


def _higgs_continuum_radial(k, lam: float, nu: float, tau: float, R: float, ctl=DEFAULT_CONTROLS):
    k = np.asarray(k, dtype=float)
    a = 0.5 * (nu + lam + 1 - 1j * k)
    b = 0.5 * (lam - nu + 1 - 1j * k)
    log_amp = (0.5 * (np.log(k) + np.pi * k + np.log1p(-np.exp(-2 * np.pi * k)) - math.log(4 * math.pi**2 * R**2))
               - math.lgamma(lam + 1) + log_gamma(a) + log_gamma(b))
    th = math.tanh(tau)
    f = hyp2f1(a, b, 1 + lam, th * th, ctl)
    return np.exp(log_amp + (lam + 0.5) * math.log(th) + 1j * k * math.log(math.cosh(tau))) * f


@dataclass(frozen=True)
class HiggsScattering:
    value: complex
    energy: float


def higgs_scattering_energy(k: float, h: HiggsParams, params: PhysicalParams = NATURAL) -> float:
    return params.energy_unit * (k * k + 0.25) + _higgs_top(h, params)


def higgs_scattering_state(k: float, l: int, xi: float, h: HiggsParams, p: PseudospherePoint,
                           params: PhysicalParams = NATURAL, ctl: SeriesControls = DEFAULT_CONTROLS) -> HiggsScattering:
    """Continuum state of wavenumber ``k`` and its energy.

    The radial factor uses Gamma((nu + lam + 1 - ik)/2) Gamma((lam - nu + 1 - ik)/2),
    the pair matching the hypergeometric parameters, which gives unit amplitude
    sqrt(2/pi) at large tau (delta(k - k') normalisation).
    """
    if not k > 0:
        raise ValueError("k must be > 0")
    lam = float(effective_channel(l, xi))
    s = complex(_higgs_continuum_radial(k, lam, h.nu, p.tau, params.R, ctl))
    value = s / math.sqrt(TWO_PI * math.sinh(p.tau)) * complex(math.cos(l * p.phi), math.sin(l * p.phi))
    return HiggsScattering(value, higgs_scattering_energy(k, h, params))


def coulomb_max_index(lam: float, c: CoulombParams, params: PhysicalParams = NATURAL) -> int:
    top = math.floor(math.sqrt(params.R / c.bohr_radius) - lam - 0.5)
    return top if top >= 0 else -1


def coulomb_level(N: int, lam: float, c: CoulombParams, params: PhysicalParams = NATURAL) -> float:
    nt = N + lam + 0.5
    R, hbar, m = params.R, params.hbar, params.mass
    return c.alpha / R - hbar**2 * (nt * nt - 0.25) / (2 * m * R**2) - m * c.alpha**2 / (2 * hbar**2 * nt * nt)


def coulomb_bound_spectrum(c: CoulombParams, l: int, xi: float, params: PhysicalParams = NATURAL) -> list[float]:
    lam = float(effective_channel(l, xi))
    return [coulomb_level(N, lam, c, params) for N in range(coulomb_max_index(lam, c, params) + 1)]


# --------------------------------------------------------------------------
# propagator assembly
# --------------------------------------------------------------------------

def higgs_channel_kernel(lam: float, tau1: float, tau2: float, beta: float, h: HiggsParams,
                         params: PhysicalParams = NATURAL, *, rel_tol: float = 1e-10, abs_tol: float = 0.0,
                         include_continuum: bool = True) -> float:
    """Euclidean radial kernel of one Higgs channel in the sinh(tau) dtau measure.

    Bound part from the normalisable levels, continuum by k-quadrature.
    ``abs_tol`` is an absolute accuracy floor on the returned value.
    """
    hb = params.hbar
    total = 0.0
    n_top = higgs_max_index(lam, h, normalizable_only=True)
    for n in range(n_top + 1):
        s1 = _higgs_bound_radial(n, lam, h, tau1, params.R, False)
        s2 = _higgs_bound_radial(n, lam, h, tau2, params.R, False)
        total += math.exp(-beta * higgs_level(n, lam, h, params) / hb) * float(s1) * float(s2)
    if include_continuum:
        unit = params.energy_unit / hb
        k_cut = math.sqrt(45.0 / (beta * unit))

        def integrand(k):
            k = np.maximum(k, 1e-12)
            a = _higgs_continuum_radial(k, lam, h.nu, tau1, params.R)
            b = a if tau2 == tau1 else _higgs_continuum_radial(k, lam, h.nu, tau2, params.R)
            w = np.exp(-beta * (unit * (k * k + 0.25) + _higgs_top(h, params) / hb))
            return (w * (a * np.conj(b)).real)[:, None]

        floor = max(abs_tol * math.sqrt(math.sinh(tau1) * math.sinh(tau2)), 1e-300)
        res = gauss_kronrod(integrand, 0.0, k_cut, rel_tol=rel_tol, abs_tol=floor, max_panels=4000)
        total += float(res.value[0])
    return total / math.sqrt(math.sinh(tau1) * math.sinh(tau2))


def ab_partial_wave_assembly(problem: str, req: KernelRequest, *, higgs: HiggsParams | None = None,
                             coulomb: CoulombParams | None = None, include_continuum: bool = True) -> complex:
    """AB propagator (1/2pi) sum_l e^{il dphi} K_{|l - xi|} for a central problem.

    ``problem`` is ``"free"``, ``"higgs"`` or ``"coulomb"``. The Coulomb case
    raises UnsupportedProblemError: no wavefunctions are available for it.
    """
    if problem == "free":
        return partial_wave_kernel(req)
    if problem == "coulomb":
        raise UnsupportedProblemError("Coulomb channel kernels need wavefunctions, which are not available")
    if problem != "higgs":
        raise ValueError(f"unknown problem {problem!r}")
    if higgs is None:
        raise ValueError("higgs parameters required")
    ls = np.arange(-req.l_max, req.l_max + 1)
    lams = np.abs(ls - req.xi)
    cache = {}
    biggest = 0.0
    # small channels first would set no useful floor, so go outward in lambda
    for lam in sorted(set(lams.tolist())):
        v = higgs_channel_kernel(lam, req.p1.tau, req.p2.tau, req.beta, higgs, req.params, rel_tol=req.rel_tol,
                                 abs_tol=1e-3 * req.truncation_tol * biggest, include_continuum=include_continuum)
        cache[lam] = v
        biggest = max(biggest, abs(v))
    vals = np.array([cache[lam] for lam in lams.tolist()])
    terms = np.exp(1j * ls * req.delta_phi) * vals / TWO_PI
    edge = float(np.sum(np.abs(terms[np.abs(ls) >= req.l_max - 2])))
    if edge > req.truncation_tol * float(np.sum(np.abs(terms))):
        raise TruncationError(f"Higgs partial-wave sum not converged at l_max={req.l_max}")
    return complex(np.sum(terms))
