"""Finite-difference oracle for the radial channel kernels.

The radial operator of channel ``lam`` is discretised on ``[0, tau_max]`` and
diagonalised; the Euclidean kernel is then ``sum_j e^{-beta E_j} f_j f_j``.
This shares nothing with the spectral evaluation except the Hamiltonian.

Two schemes are offered:

``"weighted"`` (default)
    Finite volumes for ``v = f / sinh(tau)^lam`` with weight ``sinh^{2 lam+1}``,
    cell-centred nodes and a zero-flux inner face at ``tau = 0``. The regular
    solution is built in, so the scheme is second order for every ``lam >= 0``.
``"potential"``
    Three-point differences for ``u = sqrt(sinh tau) f`` with the potential
    ``((lam^2 - 1/4)/sinh^2 + 1/4)/2`` and Dirichlet ends at ``tau_min`` and
    ``tau_max``. Only trustworthy for ``lam >= 1/2``, where the centrifugal
    term is repulsive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import NATURAL, TWO_PI, PhysicalParams, PseudospherePoint, principal_angle


@dataclass(frozen=True)
class RadialGrid:
    tau_min: float = 1e-3
    tau_max: float = 12.0
    points: int = 2000
    scheme: str = "weighted"

    def __post_init__(self):
        if not 0 < self.tau_min < self.tau_max:
            raise ValueError("need 0 < tau_min < tau_max")
        if self.points < 100:
            raise ValueError("points must be >= 100")
        if self.scheme not in ("weighted", "potential"):
            raise ValueError(f"unknown scheme {self.scheme!r}")

    def refined(self, factor: int = 2) -> "RadialGrid":
        return RadialGrid(self.tau_min, self.tau_max, self.points * factor, self.scheme)


@dataclass
class RadialOperator:
    """Symmetric tridiagonal matrix in units of hbar^2/(m R^2).

    ``nodes`` are the unknowns' positions; ``to_kernel`` converts an
    eigenvector component at a node into the value of the eigenfunction in the
    ``sinh(tau) dtau`` normalisation.
    """

    lam: float
    diag: np.ndarray
    offdiag: np.ndarray
    nodes: np.ndarray
    to_kernel: np.ndarray
    spacing: float
    scheme: str

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _log_sinh(x):
    return x + np.log1p(-np.exp(-2.0 * x)) - math.log(2.0)


def build_radial_operator(lam: float, grid: RadialGrid = RadialGrid(), params: PhysicalParams = NATURAL,
                          extra_potential: Callable | None = None) -> RadialOperator:
    """Discrete radial Hamiltonian of channel ``lam``.

    ``extra_potential(tau)`` adds a physical potential energy to the free
    operator; it is converted to the internal unit hbar^2/(m R^2).
    """
    if not (math.isfinite(lam) and lam >= 0):
        raise ValueError("lam must be >= 0")
    unit = params.hbar**2 / (params.mass * params.R**2)
    if grid.scheme == "weighted":
        n = grid.points
        h = grid.tau_max / n
        nodes = (np.arange(n) + 0.5) * h
        faces = np.arange(n + 1) * h
        # weights relative to their value at the node to dodge overflow
        p = 2.0 * lam + 1.0
        lw_nodes = p * _log_sinh(nodes)
        with np.errstate(divide="ignore"):
            lw_faces = p * _log_sinh(faces)
        up = np.exp(lw_faces[1:] - lw_nodes)
        down = np.exp(lw_faces[:-1] - lw_nodes)
        diag = (up + down) / (2.0 * h * h) - 0.5 * lam * (lam + 1.0)
        offdiag = -np.exp(lw_faces[1:-1] - 0.5 * (lw_nodes[1:] + lw_nodes[:-1])) / (2.0 * h * h)
        # f = sinh^lam v, and the eigenvector carries sqrt(h w)
        to_kernel = np.exp(lam * _log_sinh(nodes) - 0.5 * lw_nodes) / math.sqrt(h)
    else:
        full = np.linspace(grid.tau_min, grid.tau_max, grid.points)
        h = full[1] - full[0]
        nodes = full[1:-1]
        pot = 0.5 * (lam * lam - 0.25) / np.sinh(nodes) ** 2 + 0.125
        diag = 1.0 / (h * h) + pot
        offdiag = np.full(len(nodes) - 1, -0.5 / (h * h))
        to_kernel = 1.0 / np.sqrt(h * np.sinh(nodes))
    if extra_potential is not None:
        diag = diag + np.asarray(extra_potential(nodes), dtype=float) / unit
    return RadialOperator(lam, diag, offdiag, nodes, to_kernel, h, grid.scheme)


@dataclass
class Eigensystem:
    op: RadialOperator
    energies: np.ndarray
    vectors: np.ndarray
    unit: float


def diagonalize(op: RadialOperator, params: PhysicalParams = NATURAL, energy_cut: float | None = None) -> Eigensystem:
    """Eigenpairs of ``op``; ``energy_cut`` (internal units) limits the range."""
    e, v = eigh_tridiagonal(op.diag, op.offdiag, lapack_driver="stemr")
    if energy_cut is not None:
        keep = e <= energy_cut
        e, v = e[keep], v[:, keep]
    return Eigensystem(op, e, v, params.hbar**2 / (params.mass * params.R**2))


def _interp_rows(op: RadialOperator, vectors: np.ndarray, tau: float) -> np.ndarray:
    """Eigenfunction values at ``tau`` by 4-point Lagrange interpolation.

    The smooth factor (eigenvector times the node conversion stripped of its
    sinh^lam part in the weighted scheme) is interpolated; the singular part is
    reapplied exactly at ``tau``.
    """
    x = op.nodes
    if not x[0] - 0.5 * op.spacing <= tau <= x[-1] + 0.5 * op.spacing:
        raise ValueError(f"tau={tau} outside the grid")
    if op.scheme == "weighted":
        smooth = op.to_kernel / np.exp(op.lam * _log_sinh(x))
        outer = math.exp(op.lam * _log_sinh(tau))
    else:
        smooth = op.to_kernel * np.sqrt(np.sinh(x))
        outer = 1.0 / math.sqrt(math.sinh(tau))
    pos = (tau - x[0]) / op.spacing
    j = int(math.floor(pos))
    j = min(max(j - 1, 0), len(x) - 4)
    idx = np.arange(j, j + 4)
    coef = np.empty(4)
    for a in range(4):
        others = [idx[b] for b in range(4) if b != a]
        coef[a] = np.prod([(pos - o) / (idx[a] - o) for o in others])
    return outer * (coef * smooth[idx]) @ vectors[idx]


def _kernel_from_eigs(es: Eigensystem, tau1: float, tau2: float, beta: float, params: PhysicalParams) -> float:
    r1 = _interp_rows(es.op, es.vectors, tau1)
    r2 = r1 if tau2 == tau1 else _interp_rows(es.op, es.vectors, tau2)
    decay = np.exp(-beta * es.unit * es.energies / params.hbar)
    return float(np.sum(r1 * r2 * decay)) / params.R**2


def grid_kernel(lam: float, tau1: float, tau2: float, beta: float, grid: RadialGrid = RadialGrid(),
                params: PhysicalParams = NATURAL, *, extra_potential: Callable | None = None,
                richardson: bool = False) -> float:
    """Euclidean kernel of the discretised channel operator in the sinh(tau) dtau measure.

    With ``richardson=True`` the grid is also doubled and the two values are
    combined as ``(4 K_2N - K_N)/3``.
    """
    if not beta > 0:
        raise ValueError("beta must be > 0")
    for t in (tau1, tau2):
        if not grid.tau_min < t < grid.tau_max:
            raise ValueError(f"tau={t} outside ({grid.tau_min}, {grid.tau_max})")
    value = _grid_kernel_once(lam, tau1, tau2, beta, grid, params, extra_potential)
    if not richardson:
        return value
    fine = _grid_kernel_once(lam, tau1, tau2, beta, grid.refined(), params, extra_potential)
    return (4.0 * fine - value) / 3.0


# Euclidean times below this (internal units) bypass the mode cache
_BETA_FLOOR = 0.01


@lru_cache(maxsize=16)
def _low_modes(lam, grid, params, extra_potential):
    """Eigenpairs with e^{-beta (E - E_0)} above e^-40 for every beta >= the floor."""
    op = build_radial_operator(lam, grid, params, extra_potential)
    es = diagonalize(op, params)
    keep = es.energies <= es.energies[0] + 40.0 / _BETA_FLOOR
    return Eigensystem(op, es.energies[keep], np.ascontiguousarray(es.vectors[:, keep]), es.unit)


def _grid_kernel_once(lam, tau1, tau2, beta, grid, params, extra_potential):
    internal_beta = beta * params.hbar**2 / (params.mass * params.R**2) / params.hbar
    if internal_beta >= _BETA_FLOOR:
        es = _low_modes(float(lam), grid, params, extra_potential)
    else:
        es = diagonalize(build_radial_operator(lam, grid, params, extra_potential), params)
    return _kernel_from_eigs(es, tau1, tau2, beta, params)


@dataclass
class ConvergenceStudy:
    points: tuple
    values: tuple
    observed_order: float
    extrapolated: float


def grid_convergence_study(lam: float, tau1: float, tau2: float, beta: float,
                           points=(1000, 2000, 4000), tau_max: float = 12.0,
                           params: PhysicalParams = NATURAL) -> ConvergenceStudy:
    """Kernel on successively doubled grids, the observed order and the Richardson value."""
    vals = tuple(
        grid_kernel(lam, tau1, tau2, beta, RadialGrid(tau_max=tau_max, points=n), params) for n in points
    )
    d1, d2 = vals[-3] - vals[-2], vals[-2] - vals[-1]
    order = math.log2(abs(d1 / d2)) if d2 != 0 and d1 != 0 else float("inf")
    extrap = (4.0 * vals[-1] - vals[-2]) / 3.0
    return ConvergenceStudy(tuple(points), vals, order, extrap)


def grid_spectrum(lam: float, grid: RadialGrid = RadialGrid(), params: PhysicalParams = NATURAL,
                  extra_potential: Callable | None = None, count: int | None = None) -> np.ndarray:
    """Lowest eigenvalues (physical energy units) of the discrete channel operator."""
    op = build_radial_operator(lam, grid, params, extra_potential)
    unit = params.hbar**2 / (params.mass * params.R**2)
    if count is None:
        e = eigh_tridiagonal(op.diag, op.offdiag, eigvals_only=True)
    else:
        e = eigh_tridiagonal(op.diag, op.offdiag, eigvals_only=True, select="i", select_range=(0, count - 1))
    return e * unit


def grid_2d_kernel(p1: PseudospherePoint, p2: PseudospherePoint, beta: float, xi: float = 0.0,
                   l_max: int = 40, grid: RadialGrid = RadialGrid(), params: PhysicalParams = NATURAL,
                   *, extra_potential: Callable | None = None, richardson: bool = False,
                   cutoff: float = 1e-14) -> complex:
    """(1/2pi) sum_{|l| <= l_max} e^{il dphi} grid_kernel(|l - xi|).

    Channels are visited outward in |l - xi|; the sum stops once two
    successive channel values drop below ``cutoff`` relative to the largest.
    """
    dphi = principal_angle(p2.phi - p1.phi)
    ls = sorted(range(-l_max, l_max + 1), key=lambda l: (abs(l - xi), l))
    cache = {}
    total = 0j
    biggest = 0.0
    quiet = 0
    contributions = {}
    for l in ls:
        lam = abs(l - xi)
        if lam not in cache:
            cache[lam] = grid_kernel(lam, p1.tau, p2.tau, beta, grid, params,
                                     extra_potential=extra_potential, richardson=richardson)
            g = cache[lam]
            biggest = max(biggest, abs(g))
            quiet = quiet + 1 if abs(g) < cutoff * biggest else 0
        contributions[l] = cache[lam]
        if quiet >= 2:
            break
    # fixed order summation regardless of discovery order
    for l in sorted(contributions):
        total += complex(math.cos(l * dphi), math.sin(l * dphi)) * contributions[l]
    return total / TWO_PI
