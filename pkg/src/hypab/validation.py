"""Oracle suites behind ``hypab validate``.

Each check returns a :class:`CheckResult` with the measured residual and the
tolerance it is held to. Suites are plain lists of such checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PhysicalParams, PseudospherePoint
from .errors import HypabError
from .flat import flat_radial_kernel, legendre_bessel_limit_check
from .grid import RadialGrid, grid_convergence_study
from .kernel import (KernelRequest, duality_residual, euclidean_radial_kernel, lambda_profile,
                     partial_wave_sum, radial_spectral_weight, winding_sum)
from .landau import free_wavefunction, landau_bound_radial, landau_levels, landau_scattering_wavefunction, max_bound_index
from .potentials import CoulombParams, HiggsParams, coulomb_bound_spectrum, higgs_bound_spectrum
from .quadrature import gauss_kronrod
from .specfun import bessel_i, conical_log_parts, hyp2f1, hyp2f1_terminating, jacobi_poly, legendre_p_complex


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.tolerance)


# --------------------------------------------------------------------------
# special functions
# --------------------------------------------------------------------------

def mehler_density_residual(k=None) -> float:
    """max relative gap between (k sinh pi k/pi)|Gamma(1/2+ik)|^2 and k tanh(pi k)."""
    k = np.linspace(0.01, 20.0, 2000) if k is None else np.asarray(k, dtype=float)
    lhs = radial_spectral_weight(k, 0.0)
    rhs = k * np.tanh(np.pi * k)
    return float(np.max(np.abs(lhs / rhs - 1.0)))


def terminating_2f1_residual() -> float:
    worst = 0.0
    for n in range(0, 9):
        for b, c in ((0.3 + 1.1j, 1.7), (2.5, 0.5 + 0.25j), (-1.25, 3.0)):
            for x in (0.1, 0.45, 0.7, 0.95):
                ref = hyp2f1_terminating(n, b, c, x)
                got = complex(hyp2f1(-n, b, c, x))
                worst = max(worst, abs(got - ref) / max(abs(ref), 1.0))
    return worst


def jacobi_2f1_residual() -> float:
    """Jacobi polynomial against its terminating 2F1 form.

    P_n^(a,b)(x) = (a+1)_n/n! 2F1(-n, n+a+b+1; a+1; (1-x)/2); for x < 0 the
    reflected form (-1)^n P_n^(b,a)(-x) keeps the argument below 1/2.
    """
    worst = 0.0
    for n in range(0, 9):
        for a, b in ((0.0, 0.0), (0.5, 0.5), (1.0, 2.0), (2.7, 0.4)):
            for x in (-0.9, -0.3, 0.2, 0.8):
                aa, bb, xx, sign = (a, b, x, 1.0) if x >= 0 else (b, a, -x, (-1.0) ** n)
                poch = math.exp(math.lgamma(aa + 1 + n) - math.lgamma(aa + 1) - math.lgamma(n + 1))
                ref = sign * poch * complex(hyp2f1(-n, n + aa + bb + 1, aa + 1, (1 - xx) / 2)).real
                got = jacobi_poly(n, a, b, x)
                worst = max(worst, abs(got - ref) / max(abs(ref), 1.0))
    return worst


def bessel_recurrence_residual() -> float:
    worst = 0.0
    for nu in (1.0, 1.5, 2.3, 5.0):
        for z in (0.5, 3.0, 25.0, 45.0, 80.0, 10 + 20j, 4 - 35j):
            lo, mid, hi = (complex(bessel_i(v, z)) for v in (nu - 1, nu, nu + 1))
            res = abs(lo - hi - 2 * nu / z * mid) / max(abs(lo), abs(hi))
            worst = max(worst, res)
    return worst


def conical_reality_residual() -> float:
    """max |Im P| relative to the k = 0 envelope, which bounds |P| for all k."""
    worst = 0.0
    for mu in (0.0, 0.3, 1.0, 2.5, 7.0):
        for k in (0.1, 1.0, 5.0, 15.0):
            for tau in (0.2, 1.0, 2.5, 5.0):
                val = legendre_p_complex(mu, 1j * k, tau)
                lm, q, _ = conical_log_parts(mu, 0.0, tau)
                env = abs(math.exp(float(lm)) * float(q))
                worst = max(worst, abs(val.imag) / env)
    return worst


def specfun_suite() -> list[CheckResult]:
    s = "specfun"
    return [
        CheckResult(s, "mehler_fock_density", mehler_density_residual(), 1e-12),
        CheckResult(s, "hyp2f1_terminating", terminating_2f1_residual(), 1e-12),
        CheckResult(s, "jacobi_vs_hyp2f1", jacobi_2f1_residual(), 1e-12),
        CheckResult(s, "bessel_recurrence", bessel_recurrence_residual(), 1e-9),
        CheckResult(s, "conical_reality", conical_reality_residual(), 1e-8),
    ]


# --------------------------------------------------------------------------
# kernels
# --------------------------------------------------------------------------

GRID_LAMBDAS = (0.0, 0.3, 0.7, 1.0, 2.5)
GRID_BETAS = (0.25, 0.5, 1.0)
GRID_TAUS = (0.5, 1.0, 2.0)


def grid_oracle_points(pairs: str = "all"):
    """(lam, beta, tau1, tau2) points of the grid-oracle comparison.

    ``pairs="distinct"`` uses the 3 unordered pairs of distinct radii (45
    points); ``"all"`` uses all 9 ordered pairs (135 points).
    """
    if pairs == "distinct":
        tp = [(0.5, 1.0), (1.0, 2.0), (0.5, 2.0)]
    else:
        tp = [(a, b) for a in GRID_TAUS for b in GRID_TAUS]
    return [(lam, beta, a, b) for lam in GRID_LAMBDAS for beta in GRID_BETAS for a, b in tp]


def grid_oracle_checks(pairs: str = "all") -> list[CheckResult]:
    out = []
    for lam, beta, a, b in grid_oracle_points(pairs):
        spec = euclidean_radial_kernel(lam, a, b, beta)
        st = grid_convergence_study(lam, a, b, beta)
        name = f"grid lam={lam} beta={beta} tau=({a},{b})"
        out.append(CheckResult("kernel", name, abs(st.extrapolated / spec - 1.0), 1e-3))
        out.append(CheckResult("kernel", name + " order", abs(st.observed_order - 2.0), 0.1))
    return out


DUALITY_XI = (0.0, 0.3, 0.5)
DUALITY_BETA = (0.5, 1.0)
DUALITY_DPHI = (0.0, 0.7, math.pi)


def duality_checks(tau: float = 1.0) -> list[CheckResult]:
    out = []
    for beta in DUALITY_BETA:
        profile = None
        for xi in DUALITY_XI:
            for dphi in DUALITY_DPHI:
                req = KernelRequest(PseudospherePoint(tau, 0.0), PseudospherePoint(tau, dphi), beta, xi)
                pw = partial_wave_sum(req)
                profile = profile or lambda_profile(req)
                w = winding_sum(req, profile=profile)
                res = duality_residual(pw.value, w.value, pw.abs_sum)
                out.append(CheckResult("kernel", f"duality xi={xi} beta={beta} dphi={dphi:.4g}", res, 1e-4))
    return out


def kernel_suite() -> list[CheckResult]:
    return grid_oracle_checks() + duality_checks()


# --------------------------------------------------------------------------
# limits
# --------------------------------------------------------------------------

LIMIT_MU = (0.0, 0.3, 0.5, 1.0)
LIMIT_Z = (0.5, 2.0)


def limits_suite() -> list[CheckResult]:
    out = []
    for mu in LIMIT_MU:
        for z in LIMIT_Z:
            devs = [legendre_bessel_limit_check(mu, z, nu).rel_dev for nu in (500, 1000, 2000)]
            out.append(CheckResult("limits", f"legendre_bessel mu={mu} z={z} nu=1000", devs[1], 1e-2))
            mono = 0.0 if devs[0] > devs[1] > devs[2] else 1.0
            out.append(CheckResult("limits", f"legendre_bessel mu={mu} z={z} monotone", mono, 0.5))
    out.append(CheckResult("limits", "curved vs flat channel kernels R=50", flat_consistency_residual(), 5e-2))
    return out


def flat_consistency_residual(R: float = 50.0) -> float:
    """Worst relative gap between 2 pi x flat polar kernel and the curved channel kernel at r = R tau."""
    pp = PhysicalParams(curvature_radius=R)
    worst = 0.0
    for lam in (0.0, 0.3, 1.0, 2.5):
        for r1, r2, beta in ((1.0, 1.0, 0.5), (0.5, 2.0, 1.0)):
            curved = euclidean_radial_kernel(lam, r1 / R, r2 / R, beta, params=pp)
            flat = 2.0 * math.pi * flat_radial_kernel(lam, r1, r2, -1j * beta, pp)
            worst = max(worst, abs(curved - flat) / abs(flat))
    return worst


# --------------------------------------------------------------------------
# spectra
# --------------------------------------------------------------------------

def landau_gram_residual(b: float = 4.2, ls=range(-2, 3)) -> float:
    worst = 0.0
    top = max_bound_index(b)
    for l in ls:
        states = list(range(top + 1))

        def f(t):
            rows = np.array([landau_bound_radial(N, l, b, t) for N in states])
            prod = rows[:, None, :] * rows[None, :, :] * np.sinh(t) * 2 * math.pi
            return prod.reshape(len(states) ** 2, -1).T

        res = gauss_kronrod(f, 0.0, 60.0, rel_tol=1e-12, abs_tol=1e-14)
        gram = res.value.reshape(len(states), len(states))
        worst = max(worst, float(np.max(np.abs(gram - np.eye(len(states))))))
    return worst


def b_zero_residual() -> float:
    worst = 0.0
    for k in (0.5, 2.0):
        for l in (0, 1, 3):
            for tau in (0.1, 1.0, 3.0):
                p = PseudospherePoint(tau, 0.37)
                a = landau_scattering_wavefunction(k, l, 0.0, p)
                f = free_wavefunction(k, l, p)
                worst = max(worst, abs(a - f) / abs(f))
    return worst


def spectra_suite() -> list[CheckResult]:
    s = "spectra"
    out = []
    out.append(CheckResult(s, "landau b=0.4 count", float(len(landau_levels(0.4))), 0.5))
    ladder = landau_levels(3.0)
    dev = max(abs(a - b) for a, b in zip(ladder, (1.5, 3.5, 4.5))) if len(ladder) == 3 else math.inf
    out.append(CheckResult(s, "landau b=3 ladder", dev, 1e-12))
    out.append(CheckResult(s, "landau gram b=4.2", landau_gram_residual(), 1e-7))
    out.append(CheckResult(s, "b->0 reduction", b_zero_residual(), 1e-8))
    h = HiggsParams.create(3.0)
    e = higgs_bound_spectrum(h, 0, 0.0)
    out.append(CheckResult(s, "higgs count omega=3", abs(len(e) - 3.0), 0.5))
    # -(1/2)((1 - sqrt(37/4))^2 - 1/4) + 9/2 evaluated in 30-digit arithmetic
    out.append(CheckResult(s, "higgs E0 omega=3", abs(e[0] - HIGGS_E0_OMEGA3) if e else math.inf, 1e-12))
    pp = PhysicalParams(curvature_radius=100.0)
    c = CoulombParams.create(1.0, pp)
    ec = coulomb_bound_spectrum(c, 0, 0.0, pp)
    out.append(CheckResult(s, "coulomb count R=100", abs(len(ec) - 10.0), 0.5))
    out.append(CheckResult(s, "coulomb E0 R=100", abs(ec[0] + 1.99) if ec else math.inf, 1e-12))
    shift = 0.0
    for xi in (0.0, 0.3, 0.5):
        for l in (-2, 0, 1):
            for a, b in ((higgs_bound_spectrum(h, l, xi), higgs_bound_spectrum(h, l + 1, xi + 1)),
                         (coulomb_bound_spectrum(c, l, xi, pp), coulomb_bound_spectrum(c, l + 1, xi + 1, pp))):
                if len(a) != len(b):
                    shift = math.inf
                elif a:
                    shift = max(shift, max(abs(x - y) for x, y in zip(a, b)))
    out.append(CheckResult(s, "flux shift covariance", shift, 1e-12))
    return out


HIGGS_E0_OMEGA3 = 2.5413812651491098


SUITES = {
    "specfun": specfun_suite,
    "kernel": kernel_suite,
    "limits": limits_suite,
    "spectra": spectra_suite,
}


def run_suite(name: str) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise ValueError(f"unknown suite {n!r}")
        try:
            out.extend(SUITES[n]())
        except HypabError as exc:
            out.append(CheckResult(n, f"error: {type(exc).__name__}", math.inf, 0.0))
    return out
