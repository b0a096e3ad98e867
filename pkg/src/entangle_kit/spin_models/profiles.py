"""Concurrence along a coupling scan and finite-size scaling of its derivative."""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..bipartite import correlators_from_state, two_site_from_correlators
from ..errors import CapacityError, DiagnosticError
from .free_fermion import free_fermion_correlators
from .model import ED_MAX_SITES, ModelParams, ground_state

RANGE_THRESHOLD = 1e-8
LOG_PREFACTOR = 8 / (3 * np.pi ** 2)
ENGINES = ("ed", "free_fermion")


def concurrences(p, engine="free_fermion", r_max=None):
    """(C(1..r_max), Mz) for the parity-symmetric ground state of ``p``."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    r_max = r_max or p.N // 2
    if engine == "free_fermion":
        tab = free_fermion_correlators(p, r_max=r_max)
        return np.array([two_site_from_correlators(tab.at(r)).C for r in tab.r]), tab.Mz
    if p.N > ED_MAX_SITES:
        raise CapacityError(f"ED engine is limited to {ED_MAX_SITES} sites")
    psi = ground_state(p).ground
    cs = [correlators_from_state(psi, 0, r) for r in range(1, r_max + 1)]
    return np.array([two_site_from_correlators(c).C for c in cs]), cs[0].Mz


@dataclass(frozen=True)
class ProfileRow:
    N: int
    gamma: float
    lam: float
    C1: float
    C2: float
    dC1: float
    R: int
    Mz: float

    FIELDS = ("N", "gamma", "lambda", "C1", "C2", "dC1", "R", "Mz")

    def as_tuple(self):
        return (self.N, self.gamma, self.lam, self.C1, self.C2, self.dC1, self.R, self.Mz)


def _profile_point(args):
    N, lam, gamma, delta, J, boundary, engine, r_max = args
    p = ModelParams.from_lambda(N, lam, gamma, delta, J, boundary)
    c, mz = concurrences(p, engine, r_max)
    above = np.flatnonzero(c > RANGE_THRESHOLD)
    return c[0], c[1] if c.size > 1 else 0.0, int(above[-1] + 1) if above.size else 0, mz


def concurrence_profile(gamma, lambda_grid, N, engine="free_fermion", delta=0.0,
                        boundary="periodic", r_max=None, J=1.0, mapper=map):
    """C(1), C(2), dC(1)/dlambda (central differences on the grid, nan for one point) and range R.

    ``mapper`` evaluates the grid points, e.g. ``executor.map``; results keep
    the grid order.
    """
    lams = np.asarray(lambda_grid, dtype=float)
    if lams.ndim != 1 or lams.size < 1 or np.any(np.diff(lams) <= 0):
        raise ValueError("lambda grid must be non-empty and strictly increasing")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    args = [(N, float(lam), gamma, delta, J, boundary, engine, r_max) for lam in lams]
    data = list(mapper(_profile_point, args))
    c1 = np.array([d[0] for d in data])
    dc1 = np.gradient(c1, lams) if lams.size > 1 else np.full(1, np.nan)
    return [ProfileRow(N, gamma, float(l), float(d[0]), float(d[1]), float(g), d[2], float(d[3]))
            for l, d, g in zip(lams, data, dc1)]


def nn_concurrence(N, lam, gamma=1.0):
    p = ModelParams.from_lambda(N, lam, gamma)
    return concurrences(p, "free_fermion", r_max=1)[0][0]


def nn_derivative(N, lam, gamma=1.0, step=1e-3):
    """dC(1)/dlambda by Richardson-extrapolated central differences."""
    d = lambda s: (nn_concurrence(N, lam + s, gamma) - nn_concurrence(N, lam - s, gamma)) / (2 * s)
    return (4 * d(step / 2) - d(step)) / 3


@dataclass(frozen=True)
class DerivativeMinimum:
    N: int
    lam_m: float
    depth: float      # dC(1)/dlambda at lam_m
    width: float      # distance lam_w - lam_m where the derivative has risen by ``rise``


def derivative_minimum(N, gamma=1.0, bracket=(0.8, 1.2), rise=0.05):
    """Position and value of the minimum of dC(1)/dlambda near the critical point."""
    f = lambda lam: nn_derivative(N, lam, gamma)
    res = minimize_scalar(f, bounds=bracket, method="bounded", options={"xatol": 1e-9})
    lam_m, depth = float(res.x), float(res.fun)
    g = lambda lam: f(lam) - depth - rise
    hi = lam_m + 1e-3
    while g(hi) < 0:
        hi = lam_m + 2 * (hi - lam_m)
        if hi - lam_m > 1:
            raise DiagnosticError("derivative does not recover from its minimum")
    width = brentq(g, lam_m + 1e-6, hi, xtol=1e-12) - lam_m
    return DerivativeMinimum(N, lam_m, depth, float(width))


@dataclass(frozen=True)
class ScalingFit:
    nu: float             # from width ~ N^(-1/nu); nan without widths
    theta: float          # |lam_c - lam_m| ~ N^(-theta)
    prefactor: float      # slope of depth against ln N
    theta_residual: float
    slope_residual: float
    nu_residual: float


def _linfit(x, y):
    coef, res, *_ = np.polyfit(x, y, 1, full=True)
    rms = float(np.sqrt(res[0] / x.size)) if res.size else 0.0
    return coef, rms


def scaling_fit(sizes, lam_m, depth, width=None, lam_c=1.0):
    """Least-squares fits of the minimum drift, the depth and (optionally) the width."""
    sizes = np.asarray(sizes, dtype=float)
    lam_m = np.asarray(lam_m, dtype=float)
    depth = np.asarray(depth, dtype=float)
    if sizes.size < 5 or np.unique(sizes).size < 5:
        raise DiagnosticError("scaling fit needs at least five distinct system sizes")
    if not (lam_m.shape == depth.shape == sizes.shape):
        raise ValueError("sizes, minima and depths must have equal length")
    ln_n = np.log(sizes)
    (t, _), t_res = _linfit(ln_n, np.log(np.abs(lam_c - lam_m)))
    (slope, _), s_res = _linfit(ln_n, depth)
    nu, n_res = np.nan, np.nan
    if width is not None:
        (w, _), n_res = _linfit(ln_n, np.log(np.asarray(width, dtype=float)))
        nu = -1 / w
    return ScalingFit(float(nu), float(-t), float(slope), t_res, s_res, float(n_res))


def scaling_data(sizes, gamma=1.0):
    return [derivative_minimum(int(n), gamma) for n in sizes]
