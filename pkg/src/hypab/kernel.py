"""Aharonov-Bohm propagator on the pseudosphere in Euclidean time.

The radial channel kernel ``G_lam(tau1, tau2; beta)`` is the spectral integral
over the conical continuum. Two global representations are built from it:

* the partial-wave sum ``(1/2pi) sum_l e^{il dphi} G_{|l-xi|}``;
* the winding sum ``sum_n K_n`` with
  ``K_n = e^{i xi Th_n} (1/2pi) int dlam e^{i lam Th_n} G_{|lam|}``,
  ``Th_n = dphi + 2 pi n``.

They are related by Poisson summation. Because ``G_{|lam|}`` has a kink at
``lam = 0`` the winding terms only fall off like ``1/n^2``; the truncated winding
sum is therefore completed with an asymptotic tail built from the odd
derivatives of ``G_lam`` at ``lam = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as C

from .core import NATURAL, TWO_PI, PhysicalParams, PseudospherePoint, principal_angle
from .errors import ConvergenceError, TruncationError
from .quadrature import gauss_kronrod
from .specfun import DEFAULT_CONTROLS, SeriesControls, bessel_i, conical_log_parts, log_gamma

# exponent below which an integrand factor is treated as zero
_NEGLIGIBLE = 45.0


def _log_sinh(x):
    x = np.asarray(x, dtype=float)
    return x + np.log1p(-np.exp(-2.0 * x)) - math.log(2.0)


def log_spectral_weight(k, lam):
    k = np.asarray(k, dtype=float)
    lam = np.asarray(lam, dtype=float)
    return np.log(k) + _log_sinh(np.pi * k) - math.log(math.pi) + 2.0 * np.real(log_gamma(0.5 + 1j * k + lam))


def radial_spectral_weight(k, lam):
    """rho_lam(k) = (k sinh(pi k)/pi) |Gamma(1/2 + ik + lam)|^2."""
    k = np.asarray(k, dtype=float)
    if np.any(k <= 0) or np.any(np.asarray(lam) < 0):
        raise ValueError("need k > 0 and lam >= 0")
    out = np.exp(log_spectral_weight(k, lam))
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class KernelRequest:
    p1: PseudospherePoint
    p2: PseudospherePoint
    beta: float
    xi: float = 0.0
    l_max: int = 40
    n_max: int = 5
    k_max: float | None = None
    rel_tol: float = 1e-10
    truncation_tol: float = 1e-8
    params: PhysicalParams = NATURAL

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError("beta must be > 0")
        if self.l_max < 1 or self.n_max < 1:
            raise ValueError("truncations must be >= 1")
        if not math.isfinite(self.xi):
            raise ValueError("xi must be finite")

    @property
    def delta_phi(self) -> float:
        return principal_angle(self.p2.phi - self.p1.phi)

    @property
    def spectral_cutoff(self) -> float:
        return self.k_max if self.k_max is not None else default_spectral_cutoff(self.beta, self.params)

    def swapped(self) -> "KernelRequest":
        return KernelRequest(self.p2, self.p1, self.beta, self.xi, self.l_max, self.n_max,
                             self.k_max, self.rel_tol, self.truncation_tol, self.params)

    def with_xi(self, xi: float) -> "KernelRequest":
        return KernelRequest(self.p1, self.p2, self.beta, xi, self.l_max, self.n_max,
                             self.k_max, self.rel_tol, self.truncation_tol, self.params)


def default_spectral_cutoff(beta: float, params: PhysicalParams = NATURAL) -> float:
    """40 / sqrt(beta hbar / (m R^2)): the Boltzmann factor is e^-800 there."""
    return 40.0 / math.sqrt(beta * params.hbar / (params.mass * params.R**2))


@dataclass
class RadialKernelResult:
    lam: np.ndarray
    value: np.ndarray
    quad_error: np.ndarray
    tail_bound: np.ndarray
    k_cut: float


def _conical_factor(lam, k, tau, ctl):
    log_mag, q, _ = conical_log_parts(lam[None, :], k[:, None], tau, ctl)
    return log_mag, q


def radial_kernel_batch(
    lam, tau1: float, tau2: float, beta: float, *, params: PhysicalParams = NATURAL,
    k_max: float | None = None, rel_tol: float = 1e-10, batch_rel_tol: float | None = None,
    ctl: SeriesControls | None = None,
) -> RadialKernelResult:
    """Evaluate G_lam for a batch of channel labels sharing one k-quadrature."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    if np.any(lam < 0) or not np.all(np.isfinite(lam)):
        raise ValueError("lam must be finite and >= 0")
    if not (tau1 > 0 and tau2 > 0 and beta > 0):
        raise ValueError("need tau1, tau2, beta > 0")
    ctl = ctl or SeriesControls(rel_tol=min(1e-14, rel_tol * 1e-3))
    # Euclidean exponent per unit (k^2 + 1/4)
    s = beta * params.hbar / (2.0 * params.mass * params.R**2)
    k_limit = k_max if k_max is not None else default_spectral_cutoff(beta, params)
    k_cut = min(k_limit, math.sqrt(_NEGLIGIBLE / s))

    def integrand(k):
        k = np.maximum(k, 1e-300)
        lw = log_spectral_weight(k, 0.0)[:, None] - 2.0 * np.real(log_gamma(0.5 + 1j * k))[:, None]
        lw = lw + 2.0 * np.real(log_gamma(0.5 + 1j * k[:, None] + lam[None, :]))
        m1, q1 = _conical_factor(lam, k, tau1, ctl)
        if tau2 == tau1:
            m2, q2 = m1, q1
        else:
            m2, q2 = _conical_factor(lam, k, tau2, ctl)
        expo = lw + m1 + m2 - s * (k[:, None] ** 2 + 0.25)
        return np.exp(expo) * q1 * q2

    # P at k = 0 bounds |P| for all k (positive Mehler integrand)
    p0_1 = _conical_at_zero(lam, tau1, ctl)
    p0_2 = p0_1 if tau2 == tau1 else _conical_at_zero(lam, tau2, ctl)
    while True:
        res = gauss_kronrod(integrand, 0.0, k_cut, rel_tol=rel_tol, batch_rel_tol=batch_rel_tol,
                            initial_panels=8, max_panels=20000)
        value = res.value
        # Gaussian tail estimate beyond the cutoff with the k = 0 envelope
        env = np.exp(log_spectral_weight(k_cut, lam) - s * (k_cut**2 + 0.25)) * p0_1 * p0_2
        tail = env / np.maximum(2.0 * s * k_cut - (2.0 * lam + 1.0) / k_cut, s * k_cut)
        target = rel_tol * np.abs(value)
        if batch_rel_tol is not None:
            target = np.maximum(target, batch_rel_tol * np.max(np.abs(value)))
        if np.all(tail <= np.maximum(target, 1e-300)):
            break
        if k_cut >= k_limit:
            raise ConvergenceError(f"spectral tail beyond k={k_cut:.4g} exceeds tolerance")
        k_cut = min(k_limit, 1.5 * k_cut)
    scale = 1.0 / params.R**2
    return RadialKernelResult(lam, value * scale, res.error * scale, tail * scale, k_cut)


def _conical_at_zero(lam, tau, ctl):
    log_mag, q, _ = conical_log_parts(lam, np.zeros_like(lam), tau, ctl)
    return np.abs(np.exp(log_mag) * q)


def euclidean_radial_kernel(
    lam, tau1: float, tau2: float, beta: float, *, params: PhysicalParams = NATURAL,
    k_max: float | None = None, rel_tol: float = 1e-10,
):
    """Euclidean radial kernel G_lam(tau1, tau2; beta) of channel ``lam``.

    Scalar ``lam`` gives a float, an array gives an array.
    """
    res = radial_kernel_batch(lam, tau1, tau2, beta, params=params, k_max=k_max, rel_tol=rel_tol)
    return float(res.value[0]) if np.ndim(lam) == 0 else res.value


# --------------------------------------------------------------------------
# partial-wave representation
# --------------------------------------------------------------------------

@dataclass
class PartialWaveResult:
    value: complex
    truncation_estimate: float
    abs_sum: float
    channels: np.ndarray = field(repr=False)
    channel_values: np.ndarray = field(repr=False)


def partial_wave_sum(req: KernelRequest, *, check: bool = True) -> PartialWaveResult:
    l = np.arange(-req.l_max, req.l_max + 1)
    lam = np.abs(l - req.xi)
    res = radial_kernel_batch(
        lam, req.p1.tau, req.p2.tau, req.beta, params=req.params, k_max=req.k_max,
        rel_tol=req.rel_tol, batch_rel_tol=req.rel_tol * 1e-3,
    )
    g = res.value
    terms = np.exp(1j * l * req.delta_phi) * g / TWO_PI
    # fixed summation order for reproducibility
    value = complex(np.sum(terms))
    abs_sum = float(np.sum(np.abs(terms)))
    edge = np.abs(l) >= req.l_max - 2
    estimate = float(np.sum(np.abs(terms[edge])))
    if check and estimate > req.truncation_tol * abs_sum:
        raise TruncationError(
            f"partial-wave sum not converged at l_max={req.l_max} (edge {estimate:.3g} of {abs_sum:.3g})"
        )
    return PartialWaveResult(value, estimate, abs_sum, l, g)


def partial_wave_kernel(req: KernelRequest) -> complex:
    """(1/2pi) sum_{|l| <= l_max} e^{il dphi} G_{|l - xi|}(tau1, tau2; beta)."""
    return partial_wave_sum(req).value


# --------------------------------------------------------------------------
# winding representation
# --------------------------------------------------------------------------

class LambdaProfile:
    """Chebyshev model of lam -> G_lam on [0, lam_cut] for fixed endpoints.

    ``lam_cut`` is where G has dropped below ``1e-12`` of its value at 0; the
    interpolant degree is doubled until successive models agree.
    """

    def __init__(self, tau1: float, tau2: float, beta: float, *, params: PhysicalParams = NATURAL,
                 k_max: float | None = None, rel_tol: float = 1e-10, floor: float = 1e-12,
                 interp_tol: float = 1e-9, max_degree: int = 512):
        self.tau1, self.tau2, self.beta = tau1, tau2, beta
        kw = dict(params=params, k_max=k_max, rel_tol=rel_tol)
        g0 = radial_kernel_batch([0.0], tau1, tau2, beta, **kw).value[0]
        self.g0 = g0
        cut = 4.0
        while True:
            probe = radial_kernel_batch([cut], tau1, tau2, beta, batch_rel_tol=1e-3, **kw).value[0]
            if abs(probe) < floor * g0:
                break
            cut *= 1.5
            if cut > 1e3:
                raise ConvergenceError("channel kernel does not decay in lam")
        self.lam_cut = cut
        kw["batch_rel_tol"] = rel_tol * 1e-2
        degree = 32
        prev = None
        while True:
            nodes = self._lobatto(degree)
            vals = radial_kernel_batch(nodes, tau1, tau2, beta, **kw).value
            coef = C.chebfit(2.0 * nodes / cut - 1.0, vals, degree)
            if prev is not None:
                diff = np.max(np.abs(C.chebval(np.linspace(-1, 1, 257), coef)
                                     - C.chebval(np.linspace(-1, 1, 257), prev)))
                if diff <= interp_tol * abs(g0):
                    break
            if degree >= max_degree:
                raise ConvergenceError("Chebyshev model of G_lam did not converge")
            prev = coef
            degree *= 2
        self.degree = degree
        self.coef = _chop(coef, 1e-15 * abs(g0))

    def _lobatto(self, degree):
        j = np.arange(degree + 1)
        return 0.5 * self.lam_cut * (1.0 - np.cos(np.pi * j / degree))

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        return C.chebval(2.0 * np.abs(lam) / self.lam_cut - 1.0, self.coef)

    def derivative_at_zero(self, order: int) -> float:
        d = C.chebder(self.coef, order) * (2.0 / self.lam_cut) ** order
        return float(C.chebval(-1.0, d))

    def cosine_transform(self, theta: float) -> float:
        """int_0^inf cos(lam theta) G_lam dlam (G below the floor beyond lam_cut)."""
        # composite 20-point Gauss-Legendre, a few panels per oscillation
        panels = int(16 + 2.0 * abs(theta) * self.lam_cut / math.pi)
        edges = np.linspace(0.0, self.lam_cut, panels + 1)
        half = 0.5 * np.diff(edges)
        lam = (edges[:-1] + half)[:, None] + half[:, None] * _GL_X[None, :]
        vals = np.cos(lam * theta) * self(lam)
        return float(np.sum(half[:, None] * _GL_W[None, :] * vals))


_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


def _chop(coef, floor):
    # drop trailing coefficients at the noise floor; they only amplify noise
    # in derivatives
    big = np.flatnonzero(np.abs(coef) > floor)
    return coef[: big[-1] + 1] if big.size else coef[:1]


def lambda_profile(req: KernelRequest) -> LambdaProfile:
    return LambdaProfile(req.p1.tau, req.p2.tau, req.beta, params=req.params, k_max=req.k_max,
                         rel_tol=req.rel_tol)


def _theta(req: KernelRequest, n: int) -> float:
    return req.delta_phi + TWO_PI * n


def winding_kernel(n: int, req: KernelRequest, profile: LambdaProfile | None = None) -> complex:
    """Contribution K_n of paths winding ``n`` times around the flux line."""
    profile = profile or lambda_profile(req)
    th = _theta(req, n)
    integral = 2.0 * profile.cosine_transform(th)
    return complex(np.exp(1j * req.xi * th) * integral / TWO_PI)


def _tail_power_sums(req: KernelRequest, n_max: int, powers=(2, 4, 6), n_far: int = 200_000):
    """sum_{|n| > n_max} e^{i xi Th_n} / Th_n^p for each power p."""
    n = np.concatenate([np.arange(-n_far, -n_max), np.arange(n_max + 1, n_far + 1)])
    th = req.delta_phi + TWO_PI * n
    phase = np.exp(1j * req.xi * th)
    out = {}
    for p in powers:
        out[p] = complex(np.sum(phase / th**p))
    # remainder beyond n_far, non-oscillating bound for the leading power
    remainder = 2.0 / (TWO_PI**2 * n_far)
    return out, remainder


@dataclass
class WindingSumResult:
    value: complex
    raw_value: complex
    tail: complex
    tail_bound: float
    terms: dict


def winding_sum(req: KernelRequest, *, tail_correction: bool = True,
                profile: LambdaProfile | None = None) -> WindingSumResult:
    """sum_{|n| <= n_max} K_n, optionally completed by the asymptotic tail.

    For |n| > n_max, int_0^inf cos(lam Th) G dlam is replaced by its expansion
    -G'(0)/Th^2 + G'''(0)/Th^4 - G^(5)(0)/Th^6.
    """
    profile = profile or lambda_profile(req)
    terms = {n: winding_kernel(n, req, profile) for n in range(-req.n_max, req.n_max + 1)}
    raw = complex(sum(terms[n] for n in sorted(terms)))
    tail = 0j
    bound = 0.0
    if tail_correction:
        d1, d3, d5 = (profile.derivative_at_zero(m) for m in (1, 3, 5))
        sums, rem = _tail_power_sums(req, req.n_max)
        tail = 2.0 * (-d1 * sums[2] + d3 * sums[4] - d5 * sums[6]) / TWO_PI
        # first omitted order, summed crudely over both tails, plus the far remainder
        d7 = profile.derivative_at_zero(7)
        th_min = TWO_PI * (req.n_max + 1) - math.pi
        bound = 2.0 * (abs(d1) * rem + 2.0 * abs(d7) * th_min**-7 / math.pi) / TWO_PI
    return WindingSumResult(raw + tail, raw, tail, bound, terms)


def winding_kernel_sum(req: KernelRequest, *, tail_correction: bool = True) -> complex:
    return winding_sum(req, tail_correction=tail_correction).value


def duality_residual(pw: complex, wind: complex, abs_sum: float) -> float:
    """Relative mismatch of the two representations.

    Normalised by |partial-wave value|, or by the absolute channel sum when the
    kernel itself vanishes by symmetry (e.g. xi = 1/2, dphi = pi).
    """
    denom = abs(pw) if abs(pw) > 1e-6 * abs_sum else abs_sum
    return abs(wind - pw) / denom


# --------------------------------------------------------------------------
# flat space
# --------------------------------------------------------------------------

def euclidean_time(beta: float) -> complex:
    """Real time T corresponding to Euclidean time beta (T = -i beta)."""
    return -1j * beta


@dataclass
class FlatKernelResult:
    value: complex
    truncation_estimate: float
    n_used: int


def flat_ab_sum(r1: float, r2: float, delta_phi: float, xi: float, time, params: PhysicalParams = NATURAL,
                ctl: SeriesControls = DEFAULT_CONTROLS, *, l_max: int = 40,
                truncation_tol: float = 1e-12, check: bool = True) -> FlatKernelResult:
    time = complex(time)
    if time == 0:
        raise ValueError("time must be nonzero")
    if not (r1 > 0 and r2 > 0):
        raise ValueError("radii must be > 0")
    m, hbar = params.mass, params.hbar
    iht = 1j * hbar * time
    pref = m / (TWO_PI * iht) * np.exp(1j * m * (r1**2 + r2**2) / (2.0 * hbar * time))
    z = m * r1 * r2 / iht
    n = np.arange(-l_max, l_max + 1)
    bes = np.array([complex(bessel_i(abs(j - xi), z, ctl)) for j in n])
    terms = np.exp(1j * n * delta_phi) * bes
    total = complex(np.sum(terms))
    edge = float(np.sum(np.abs(terms[np.abs(n) >= l_max - 1])))
    scale = float(np.sum(np.abs(terms)))
    if check and edge > truncation_tol * scale:
        raise TruncationError(f"flat AB sum not converged at |n| <= {l_max} (edge {edge:.3g})")
    return FlatKernelResult(complex(pref * total), float(abs(pref) * edge), l_max)


def flat_ab_kernel(r1: float, r2: float, delta_phi: float, xi: float, time, params: PhysicalParams = NATURAL,
                   ctl: SeriesControls = DEFAULT_CONTROLS, *, l_max: int = 40) -> complex:
    """Flat-plane AB propagator as a sum over angular channels of I_{|n - xi|}.

    Use ``time = euclidean_time(beta)`` for the Euclidean kernel; real times are
    evaluated best effort and raise TruncationError if ``l_max`` is too small.
    """
    return flat_ab_sum(r1, r2, delta_phi, xi, time, params, ctl, l_max=l_max).value


def free_flat_kernel_euclidean(r1: float, r2: float, delta_phi: float, beta: float,
                               params: PhysicalParams = NATURAL) -> float:
    m, hbar = params.mass, params.hbar
    d2 = (r1 - r2) ** 2 + 2.0 * r1 * r2 * (1.0 - math.cos(delta_phi))
    return m / (TWO_PI * hbar * beta) * math.exp(-m * d2 / (2.0 * hbar * beta))
