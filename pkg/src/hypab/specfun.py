"""Special functions needed by the spectral formulas.

Everything here is self-contained numpy code: complex log-gamma (Lanczos),
Gauss hypergeometric 2F1 with complex parameters on a real argument in [0, 1),
Jacobi polynomials, Legendre functions of complex degree (conical functions),
and the modified Bessel function I with complex argument. All functions accept
scalars or broadcastable arrays; scalar input gives scalar output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import psi

from .errors import ConicalRealityError, ConvergenceError, PoleError

LOG_PI = math.log(math.pi)
LOG_2PI_HALF = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class SeriesControls:
    rel_tol: float = 1e-12
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")

    def tightened(self, factor: float = 1e-3) -> "SeriesControls":
        return SeriesControls(max(self.rel_tol * factor, 1e-17), self.max_terms)


DEFAULT_CONTROLS = SeriesControls()
TIGHT = SeriesControls(rel_tol=1e-15)


def _scalarize(value, *inputs):
    if all(np.ndim(x) == 0 for x in inputs):
        return value[()] if isinstance(value, np.ndarray) else value
    return value


def _check_finite(z, name="argument"):
    if not np.all(np.isfinite(z)):
        raise ValueError(f"{name} must be finite")


# --------------------------------------------------------------------------
# log-gamma
# --------------------------------------------------------------------------

# Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes, 3rd ed.)
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS = (
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
)


def _lgamma_right(z):
    # valid for Re z >= 1/2
    t = z + _LANCZOS_G
    head = (z + 0.5) * np.log(t) - t
    ser = np.full_like(z, _LANCZOS_C0)
    y = z
    for c in _LANCZOS:
        y = y + 1.0
        ser = ser + c / y
    return head + LOG_2PI_HALF + np.log(ser) - np.log(z)


def _log_sin_pi(z):
    w = np.pi * z
    upper = w.imag >= 0
    # factor out the growing exponential so large |Im z| cannot overflow
    # the placeholder 0.5 keeps the unused branch away from log(0)
    e_up = np.exp(2j * np.where(upper, w, 0.5 * np.pi))
    e_dn = np.exp(-2j * np.where(upper, 0.5 * np.pi, w))
    up = -1j * w + np.log((e_up - 1.0) / 2j)
    dn = 1j * w + np.log((1.0 - e_dn) / 2j)
    return np.where(upper, up, dn)


def _is_pole(z):
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def log_gamma(z):
    """log Gamma(z) for complex ``z``.

    For Re z >= 1/2 this is the analytic continuation of the real log-gamma
    (the branch used by ``scipy.special.loggamma``); in the reflected half-plane
    the imaginary part is fixed only modulo 2 pi.
    """
    z = np.asarray(z, dtype=complex)
    _check_finite(z, "log_gamma argument")
    if np.any(_is_pole(z)):
        raise PoleError("log_gamma evaluated at a non-positive integer")
    right = z.real >= 0.5
    zr = np.where(right, z, 1.0 - z)
    lg = _lgamma_right(zr)
    out = np.where(right, lg, LOG_PI - _log_sin_pi(np.where(right, 0.5, z)) - lg)
    return _scalarize(out, z)


def gamma(z):
    return np.exp(log_gamma(z))


def rgamma(z):
    """1/Gamma(z), zero at the poles."""
    z = np.asarray(z, dtype=complex)
    pole = _is_pole(z)
    safe = np.where(pole, 1.0, z)
    out = np.where(pole, 0.0, np.exp(-log_gamma(safe)))
    return _scalarize(out, z)


def log_abs_gamma(z):
    return np.real(log_gamma(z))


# --------------------------------------------------------------------------
# Gauss hypergeometric function
# --------------------------------------------------------------------------

def _series_2f1(a, b, c, x, ctl: SeriesControls):
    """Direct Gauss series; returns (sum, largest term magnitude)."""
    a, b, c = np.broadcast_arrays(
        np.asarray(a, complex), np.asarray(b, complex), np.asarray(c, complex)
    )
    total = np.ones(a.shape, complex)
    term = np.ones(a.shape, complex)
    biggest = np.ones(a.shape)
    if x == 0:
        return total, biggest
    active = np.ones(a.shape, bool)
    quiet = np.zeros(a.shape, int)
    tail_factor = max(1.0, abs(x) / (1.0 - abs(x))) if abs(x) < 1 else 1.0
    for n in range(ctl.max_terms):
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        # a terminated series stays terminated even past a pole of c
        term = np.where(term == 0, 0.0, term * ratio)
        total = total + term
        mag = np.abs(term)
        biggest = np.maximum(biggest, mag)
        # late terms shrink like x^n, so the remaining tail is about mag x / (1 - x)
        tail = mag * tail_factor
        small = (tail <= ctl.rel_tol * np.abs(total)) | (tail <= 1e-17 * biggest)
        # require two consecutive small terms; a single one can be accidental
        quiet = np.where(small, quiet + 1, 0)
        active = quiet < 2
        if not active.any():
            return total, biggest
    raise ConvergenceError(f"2F1 series did not converge in {ctl.max_terms} terms (x={x})")


def _check_c(a, b, c):
    bad = _is_pole(c)
    if not np.any(bad):
        return
    # allowed only if the series terminates before the zero denominator
    ncut = -np.round(c.real)
    for p in (a, b):
        term_ok = _is_pole(p) & (-np.round(p.real) < ncut)
        bad = bad & ~term_ok
    if np.any(bad):
        raise PoleError("2F1 lower parameter c is a non-positive integer")


def _near_integer(z, tol=1e-7):
    return (np.abs(z.imag) < tol) & (np.abs(z.real - np.round(z.real)) < tol)


def _connection_2f1(a, b, c, x, ctl, y=None):
    """x -> 1 - x transformation; requires c - a - b not an integer."""
    y = 1.0 - x if y is None else y
    s = c - a - b
    f1, m1 = _series_2f1(a, b, 1.0 - s, y, ctl)
    f2, m2 = _series_2f1(c - a, c - b, 1.0 + s, y, ctl)
    lg_c = log_gamma(c)
    coef1 = np.exp(lg_c + log_gamma(s)) * rgamma(c - a) * rgamma(c - b)
    coef2 = np.exp(lg_c + log_gamma(-s)) * rgamma(a) * rgamma(b) * np.exp(s * math.log(y))
    t1 = coef1 * f1
    t2 = coef2 * f2
    scale = np.abs(coef1) * m1 + np.abs(coef2) * m2
    return t1 + t2, scale


_DEGENERATE_SERIES_TERMS = 200_000


def _log_case_2f1(a, b, c, x, ctl, y=None):
    """Connection formula with logarithm for integer m = c - a - b.

    For m < 0 Euler's transformation maps onto m > 0 first.
    """
    m_all = np.round((c - a - b).real).astype(int)
    out = np.empty(a.shape, complex)
    scale = np.empty(a.shape)
    for m in np.unique(m_all):
        sel = m_all == m
        aa, bb, cc = a[sel], b[sel], c[sel]
        pre = 1.0
        if m < 0:
            aa, bb = cc - aa, cc - bb
            pre = (1.0 - x if y is None else y) ** m
        v, sc = _log_case_nonneg(aa, bb, abs(int(m)), x, ctl, y)
        out[sel] = pre * v
        scale[sel] = abs(pre) * sc
    return out, scale


def _log_case_nonneg(a, b, m: int, x, ctl, y=None):
    y = 1.0 - x if y is None else y
    log_y = math.log(y)
    c = a + b + m
    gc = np.exp(log_gamma(c))
    # finite part
    finite = np.zeros(a.shape, complex)
    if m > 0:
        term = np.ones(a.shape, complex)
        for n in range(m):
            finite = finite + term
            if n + 1 < m:
                term = term * (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * y
        finite = finite * math.gamma(m) * gc * rgamma(a + m) * rgamma(b + m)
    # logarithmic series
    coef = gc * rgamma(a) * rgamma(b) * (-y) ** m / math.factorial(m)
    term = np.ones(a.shape, complex)
    total = np.zeros(a.shape, complex)
    biggest = np.zeros(a.shape)
    quiet = np.zeros(a.shape, int)
    for n in range(ctl.max_terms):
        bracket = log_y - psi(n + 1.0) - psi(n + m + 1.0) + psi(a + n + m) + psi(b + n + m)
        piece = term * bracket
        total = total + piece
        mag = np.abs(piece)
        biggest = np.maximum(biggest, mag)
        small = (mag <= ctl.rel_tol * np.abs(total)) | (mag <= 1e-17 * biggest)
        quiet = np.where(small, quiet + 1, 0)
        if np.all(quiet >= 2):
            break
        term = term * (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * y
    else:
        raise ConvergenceError("logarithmic 2F1 series did not converge")
    value = finite - coef * total
    return value, np.abs(finite) + np.abs(coef) * biggest + np.abs(value)


def _hyp2f1_scaled(a, b, c, x, ctl, y=None):
    """``y``, if given, is 1 - x computed without cancellation."""
    a, b, c = np.broadcast_arrays(
        np.asarray(a, complex), np.asarray(b, complex), np.asarray(c, complex)
    )
    if not (0.0 <= x < 1.0 or (x == 1.0 and y is not None and y > 0)):
        raise ValueError(f"2F1 argument must lie in [0, 1), got {x!r}")
    _check_c(a, b, c)
    terminating = _is_pole(a) | _is_pole(b)
    if x <= 0.5 or np.all(terminating):
        return _series_2f1(a, b, c, x, ctl)

    out = np.empty(a.shape, complex)
    scale = np.empty(a.shape)
    s = c - a - b
    degenerate = _near_integer(s) & ~terminating
    # the plain series still converges; accept it while its length stays modest
    y_exact = 1.0 - x if y is None else y
    series_len = math.log(1e-17) / math.log1p(-y_exact) if y_exact < 1.0 else 0.0
    direct = terminating | (degenerate & (series_len <= _DEGENERATE_SERIES_TERMS))
    exact = degenerate & ~direct & ((c - a - b) == np.round((c - a - b).real))
    perturb = degenerate & ~direct & ~exact
    regular = ~(direct | perturb | exact)
    if exact.any():
        out[exact], scale[exact] = _log_case_2f1(a[exact], b[exact], c[exact], x, ctl, y)
    if regular.any():
        out[regular], scale[regular] = _connection_2f1(a[regular], b[regular], c[regular], x, ctl, y)
    if direct.any():
        out[direct], scale[direct] = _series_2f1(a[direct], b[direct], c[direct], x, ctl)
    if perturb.any():
        # symmetric shift of a: the O(eps) errors cancel, leaving O(eps^2)
        eps = 1e-6
        aa, bb, cc = a[perturb], b[perturb], c[perturb]
        up, su = _connection_2f1(aa + eps, bb, cc, x, ctl, y)
        dn, sd = _connection_2f1(aa - eps, bb, cc, x, ctl, y)
        out[perturb] = 0.5 * (up + dn)
        scale[perturb] = np.maximum(su, sd)
    return out, scale


def hyp2f1(a, b, c, x: float, ctl: SeriesControls = DEFAULT_CONTROLS):
    """Gauss hypergeometric function 2F1(a, b; c; x) for real ``0 <= x < 1``.

    Direct series for ``x <= 1/2``; the ``x -> 1 - x`` connection formula above.
    When ``c - a - b`` is (nearly) an integer the connection formula is singular:
    the direct series is used while it needs at most a few hundred thousand terms
    (``x`` up to about 0.9998) and a symmetric parameter shift beyond.
    """
    x = float(x)
    value, _ = _hyp2f1_scaled(a, b, c, x, ctl)
    return _scalarize(value, a, b, c)


def hyp2f1_terminating(n: int, b, c, x):
    """Polynomial 2F1(-n, b; c; x) summed term by term (oracle helper)."""
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for j in range(n + 1):
        total += term
        term *= (-n + j) * (b + j) / ((c + j) * (j + 1.0)) * x
    return total


# --------------------------------------------------------------------------
# Jacobi polynomials
# --------------------------------------------------------------------------

def jacobi_poly(n: int, a: float, b: float, x):
    """Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return _scalarize(p0, x)
    p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        s = 2.0 * k + a + b
        c1 = 2.0 * k * (k + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (a * a - b * b)
        c3 = (s - 1.0) * s * (s - 2.0)
        c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        p0, p1 = p1, ((c2 + c3 * x) * p1 - c4 * p0) / c1
    return _scalarize(p1, x)


# --------------------------------------------------------------------------
# Legendre / conical functions
# --------------------------------------------------------------------------

def _reality(value, scale, check: bool):
    if not check:
        return value.real
    im = np.abs(value.imag)
    limit = 1e-8 * np.abs(value.real) + 1e-12 * np.maximum(scale, np.abs(value))
    if np.any(im > limit):
        worst = float(np.max(im - limit))
        raise ConicalRealityError(f"conical function has imaginary residue (excess {worst:.3g})")
    return value.real


def _legendre_exp(mu, nu, tau, ctl):
    x = -math.expm1(-2.0 * tau)
    log_pref = -log_gamma(1.0 + mu) - 2.0 * mu * math.log(2.0) + mu * math.log(x) - (nu + 0.5) * tau
    f, scale = _hyp2f1_scaled(0.5 + mu, 0.5 + nu + mu, 1.0 + 2.0 * mu, x, ctl, math.exp(-2.0 * tau))
    pref = np.exp(log_pref)
    return pref * f, np.abs(pref) * scale


def _legendre_tanh(mu, nu, tau, ctl):
    t = math.tanh(0.5 * tau)
    s = t * t
    log_pref = -log_gamma(1.0 + mu) + mu * math.log(t) + (0.5 + nu) * math.log1p(-s)
    f, scale = _hyp2f1_scaled(0.5 + nu + mu, 0.5 + nu, 1.0 + mu, s, ctl, 1.0 / math.cosh(0.5 * tau) ** 2)
    pref = np.exp(log_pref)
    return pref * f, np.abs(pref) * scale


def legendre_p_complex(mu, nu, tau: float, ctl: SeriesControls = DEFAULT_CONTROLS, *, method: str = "exp"):
    """Like :func:`legendre_p` but returns the raw complex value, no reality check."""
    if not tau > 0:
        raise ValueError("tau must be > 0")
    mu_arr = np.asarray(mu, dtype=float)
    nu_arr = np.asarray(nu, dtype=complex)
    if method == "exp":
        value, _ = _legendre_exp(mu_arr, nu_arr, float(tau), ctl)
    elif method == "tanh":
        value, _ = _legendre_tanh(mu_arr, nu_arr, float(tau), ctl)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _scalarize(value, mu, nu)


def legendre_p(mu, nu, tau: float, ctl: SeriesControls = DEFAULT_CONTROLS, *, method: str = "exp"):
    """Regular Legendre function P^{-mu}_{nu - 1/2}(cosh tau).

    ``method="exp"`` uses the hypergeometric representation in ``1 - e^{-2 tau}``;
    ``method="tanh"`` the one in ``tanh^2(tau/2)``. Both are exact; the tanh form
    stays well conditioned for large orders. For purely imaginary ``nu`` (the
    conical case) the result is real and returned as a float after a reality
    check.
    """
    if not tau > 0:
        raise ValueError("tau must be > 0")
    mu_arr = np.asarray(mu, dtype=float)
    if np.any(mu_arr < 0):
        raise ValueError("mu must be >= 0")
    nu_arr = np.asarray(nu, dtype=complex)
    _check_finite(nu_arr, "nu")
    if method == "exp":
        value, scale = _legendre_exp(mu_arr, nu_arr, float(tau), ctl)
    elif method == "tanh":
        value, scale = _legendre_tanh(mu_arr, nu_arr, float(tau), ctl)
    else:
        raise ValueError(f"unknown method {method!r}")
    if np.all(nu_arr.real == 0) or np.all(nu_arr.imag == 0):
        value = _reality(value, scale, check=True)
    return _scalarize(value, mu, nu)


def legendre_p_positive_order(mu: float, nu, tau: float, ctl: SeriesControls = DEFAULT_CONTROLS):
    """P^{+mu}_{nu - 1/2}(cosh tau) from the same representation with mu -> -mu.

    Exposed for cross-checks only; all physics uses the regular order -mu branch.
    """
    x = -math.expm1(-2.0 * tau)
    value = (
        rgamma(1.0 - mu) * 2.0 ** (2.0 * mu) * x ** (-mu) * np.exp(-(np.asarray(nu, complex) + 0.5) * tau)
        * hyp2f1(0.5 - mu, 0.5 + np.asarray(nu, complex) - mu, 1.0 - 2.0 * mu, x, ctl)
    )
    return value


def _conical_tanh_parts(mu, k, tau, ctl):
    t = math.tanh(0.5 * tau)
    s = t * t
    log_mag = -np.real(log_gamma(1.0 + mu)) + mu * math.log(t) + 0.5 * math.log1p(-s)
    f, scale = _hyp2f1_scaled(0.5 + 1j * k + mu, 0.5 + 1j * k, 1.0 + mu, s, ctl, 1.0 / math.cosh(0.5 * tau) ** 2)
    return log_mag, np.exp(1j * k * math.log1p(-s)) * f, scale


def _conical_exp_parts(mu, k, tau, ctl):
    x = -math.expm1(-2.0 * tau)
    log_mag = -np.real(log_gamma(1.0 + mu)) - 2.0 * mu * math.log(2.0) + mu * math.log(x) - 0.5 * tau
    f, scale = _hyp2f1_scaled(0.5 + mu, 0.5 + 1j * k + mu, 1.0 + 2.0 * mu, x, ctl, math.exp(-2.0 * tau))
    return log_mag, np.exp(-1j * k * tau) * f, scale


def conical_log_parts(mu, k, tau: float, ctl: SeriesControls = TIGHT):
    """Split P^{-mu}_{ik-1/2}(cosh tau) = exp(log_mag) * q for vectorised use.

    Returns ``(log_mag, q, scale)`` with real ``q``, so that products with large
    Gamma-function weights can be formed in log space; ``scale`` is the largest
    partial-sum term on the same footing as ``q`` (a cancellation indicator).
    The tanh representation is tried first. It cancels badly once
    ``k tanh(tau/2)`` is large, and there the exponential representation,
    whose connection formula is free of k-growth, is used when it is better
    conditioned. ``mu`` and ``k`` broadcast against each other.
    """
    mu, k = np.broadcast_arrays(np.asarray(mu, dtype=float), np.asarray(k, dtype=float))
    shape = mu.shape
    # masked fix-ups below need at least one axis
    mu, k = np.atleast_1d(mu), np.atleast_1d(k)
    s = math.tanh(0.5 * tau) ** 2
    if s <= 0.95:
        log_mag, q, scale = _conical_tanh_parts(mu, k, tau, ctl)
        log_mag = np.broadcast_to(log_mag, q.shape).copy()
        bad = scale > 1e3
    else:
        log_mag = np.zeros(mu.shape)
        q = np.zeros(mu.shape, complex)
        scale = np.full(mu.shape, np.inf)
        bad = np.ones(mu.shape, bool)
    if bad.any():
        lm2, q2, sc2 = _conical_exp_parts(mu[bad], k[bad], tau, ctl)
        lm2 = np.broadcast_to(lm2, q2.shape)
        # compare conditioning on a common footing
        take = np.log(sc2) + lm2 < np.log(scale[bad]) + log_mag[bad]
        idx = np.flatnonzero(bad)[take]
        log_mag.flat[idx] = lm2[take]
        q.flat[idx] = q2[take]
        scale.flat[idx] = sc2[take]
    return log_mag.reshape(shape), q.real.reshape(shape), scale.reshape(shape)


def mehler_fock_integrand(mu: float, k: float, tau: float):
    """Integrand of the Mehler-type integral representation (oracle helper).

    P^{-mu}_{ik-1/2}(cosh tau) = sqrt(2/pi) sinh(tau)^-mu / Gamma(mu + 1/2)
    * int_0^tau (cosh tau - cosh s)^(mu - 1/2) cos(k s) ds, valid for mu > -1/2.
    """
    pref = math.sqrt(2.0 / math.pi) * math.sinh(tau) ** (-mu) / math.gamma(mu + 0.5)

    def integrand(s):
        return pref * (math.cosh(tau) - math.cosh(s)) ** (mu - 0.5) * math.cos(k * s)

    return integrand


# --------------------------------------------------------------------------
# Modified Bessel function I
# --------------------------------------------------------------------------

_BESSEL_SWITCH = 30.0


def _bessel_series(nu, z, ctl):
    half = z / 2.0
    q = half * half
    total = np.ones_like(z)
    term = np.ones_like(z)
    biggest = np.ones(z.shape)
    for k in range(1, ctl.max_terms):
        term = term * q / (k * (k + nu))
        total = total + term
        mag = np.abs(term)
        biggest = np.maximum(biggest, mag)
        if np.all((mag <= ctl.rel_tol * 1e-3 * np.abs(total)) | (mag <= 1e-18 * biggest)):
            break
    else:
        raise ConvergenceError("Bessel series did not converge")
    zero = z == 0
    safe = np.where(zero, 1.0, half)
    lead = np.exp(nu * np.log(safe) - log_gamma(nu + 1.0))
    lead = np.where(zero, 1.0 if nu == 0 else 0.0, lead)
    return lead * total


def _bessel_hankel(nu, z, rel_tol, scaled=False):
    """Large-|z| expansion including the recessive e^{-z} branch.

    Returns (value, ok) where ``ok`` flags points where the asymptotic series
    reached ``rel_tol`` before its terms started to grow. ``scaled`` drops the
    dominant factor e^z.
    """
    mu4 = 4.0 * nu * nu
    s1 = np.ones_like(z)
    s2 = np.ones_like(z)
    a = np.ones_like(z)
    ok = np.zeros(z.shape, bool)
    prev = np.full(z.shape, np.inf)
    live = np.ones(z.shape, bool)
    for k in range(1, 200):
        a = a * (mu4 - (2 * k - 1) ** 2) / (k * 8.0 * z)
        mag = np.abs(a)
        grow = mag > prev
        live = live & ~grow
        s1 = np.where(live, s1 + (-1) ** k * a, s1)
        s2 = np.where(live, s2 + a, s2)
        ok = ok | (live & (mag <= rel_tol * 1e-2))
        live = live & ~ok
        prev = mag
        if not live.any():
            break
    root = np.sqrt(2.0 * np.pi * z)
    upper = np.where(z.imag >= 0, 1.0, -1.0)
    dominant = 1.0 if scaled else np.exp(z)
    rec_factor = np.exp(-2.0 * z) if scaled else np.exp(-z)
    with np.errstate(over="ignore", invalid="ignore"):
        recessive = np.where(z.imag == 0, 0.0, 1j * upper * np.exp(upper * 1j * nu * np.pi) * rec_factor * s2 / root)
    return dominant * s1 / root + recessive, ok


def bessel_i(nu: float, z, ctl: SeriesControls = DEFAULT_CONTROLS, *, scaled: bool = False):
    """Modified Bessel function I_nu(z), real order ``nu >= 0``, complex ``z``.

    Power series for ``|z| <= 30`` and the Hankel expansion beyond. Where the
    expansion cannot reach tolerance (order large compared with sqrt|z|) the
    series is used instead; on the real axis it has no cancellation, while for
    large imaginary ``z`` it loses roughly ``|Im z| / 2.3`` digits.
    ``scaled=True`` returns ``I_nu(z) e^{-Re z}``, finite for large real ``z``.
    """
    if nu < 0:
        raise ValueError("order must be >= 0")
    z_arr = np.asarray(z, dtype=complex)
    _check_finite(z_arr, "bessel argument")
    out = np.empty(z_arr.shape, complex)
    big = np.abs(z_arr) > _BESSEL_SWITCH
    # oscillatory arguments reach the asymptotic regime sooner
    big |= (np.abs(z_arr) > 12.0) & (np.abs(z_arr.imag) > np.abs(z_arr.real))
    use_series = ~big
    if big.any():
        val, ok = _bessel_hankel(nu, z_arr[big], ctl.rel_tol, scaled)
        if scaled:
            val = val * np.exp(1j * z_arr[big].imag)
        tmp = out[big]
        tmp[ok] = val[ok]
        out[big] = tmp
        fallback = np.zeros(z_arr.shape, bool)
        fallback[big] = ~ok
        use_series |= fallback
    if use_series.any():
        zs = z_arr[use_series]
        out[use_series] = _bessel_series(float(nu), zs, ctl) * (np.exp(-zs.real) if scaled else 1.0)
    return _scalarize(out, z)


def bessel_i_asymptotic(lam, z):
    """Leading large-|z| form sqrt(1/(2 pi z)) exp(z - (lam^2 - 1/4)/(2 z))."""
    z = np.asarray(z, dtype=complex)
    lam = np.asarray(lam, dtype=float)
    out = np.sqrt(1.0 / (2.0 * np.pi * z)) * np.exp(z - (lam * lam - 0.25) / (2.0 * z))
    return _scalarize(out, lam, z)


def gaussian_lambda_integral(theta, z):
    """Closed form of int dlam e^{i lam theta} I_lam(z) from the asymptotic I."""
    z = np.asarray(z, dtype=complex)
    theta = np.asarray(theta, dtype=float)
    out = np.exp(z + 1.0 / (8.0 * z) - 0.5 * z * theta * theta)
    return _scalarize(out, theta, z)
