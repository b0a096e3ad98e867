"""Entanglement dynamics on spin chains.

Single-magnon XX propagation uses the coupling ``J`` of the magnon
dispersion ``exp(4 i J t cos q)``; in terms of the Hamiltonian of
:mod:`entangle_kit.spin_models` this is the XX chain with coupling ``-8 J``.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .bipartite import pairwise_concurrences, shannon_bits, single_site_tangles
from .errors import CapacityError
from .spin_models.model import ED_MAX_SITES, ModelParams, build_hamiltonian

XX_COUPLING_TO_ED = -8.0


@dataclass(frozen=True)
class MagnonAmplitudes:
    w: np.ndarray         # amplitude of the flipped spin on site l = 0..N-1
    sign: int
    source: tuple
    t: float
    J: float
    mode: str

    @property
    def norm(self):
        return float(np.sum(np.abs(self.w) ** 2))


def _ring_offset(d, N):
    return (d + N // 2) % N - N // 2


def bessel_window(N):
    """Largest 4J|t| for which the infinite-chain form keeps sum |w|^2 = 1 to 1e-12 on the ring."""
    return N / 2 - 6 * (N / 2) ** (1 / 3)


def magnon_amplitudes(N, i, j, sign=1, t=0.0, mode="finite", J=1.0):
    """Amplitudes of (sigma^x_i +- sigma^x_j)|0...0>/sqrt2 evolved to time ``t``.

    ``finite`` sums the N momenta exactly.  ``bessel`` uses the infinite-chain
    limit (J_{i-l} and J_{j-l} of 4Jt with Jacobi-Anger phases), with each
    site placed at its shortest ring displacement from each source.  Beyond
    :func:`bessel_window` the two ways round the ring interfere at the
    antipode, so it falls back to the finite sum with a warning.
    """
    if N < 2:
        raise ValueError("need at least two sites")
    i, j = i % N, j % N
    if i == j:
        raise ValueError("source sites must differ")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if mode not in ("finite", "bessel"):
        raise ValueError("mode must be 'finite' or 'bessel'")
    x = 4 * J * t
    if mode == "bessel":
        if abs(x) > bessel_window(N):
            warnings.warn("outside the Bessel validity window; using the finite sum", RuntimeWarning)
            mode = "finite"
    l = np.arange(N)
    if mode == "finite":
        q = 2 * np.pi * np.arange(N) / N
        phase = np.exp(1j * x * np.cos(q)) * (1 + sign * np.exp(1j * q * (j - i)))
        w = np.exp(1j * np.outer(i - l, q)) @ phase / (N * np.sqrt(2))
    else:
        di = _ring_offset(i - l, N)
        # exact limit of the momentum sum; up to the gauge phase i^(i-l) and a
        # conjugated relative phase this is the textbook (-i)^(j-i) form, same |w_l|
        dj = _ring_offset(j - l, N)
        w = (1j ** (di % 4) * jv(di, x) + sign * 1j ** (dj % 4) * jv(dj, x)) / np.sqrt(2)
    return MagnonAmplitudes(w, sign, (i, j), float(t), float(J), mode)


@dataclass(frozen=True)
class PairResult:
    C: float
    S2: float     # bits


def pair_dynamics(amps, n, m):
    """Concurrence 2|w_n w_m| and two-site entropy of the single-magnon state."""
    N = amps.w.size
    if not (0 <= n < N and 0 <= m < N):
        raise IndexError("site outside the chain")
    if n == m:
        raise ValueError("sites must differ")
    wn, wm = amps.w[n], amps.w[m]
    inside = abs(wn) ** 2 + abs(wm) ** 2
    return PairResult(float(min(1.0, 2 * abs(wn * np.conj(wm)))), shannon_bits([1 - inside, inside]))


@dataclass(frozen=True)
class Wavefront:
    distances: np.ndarray
    arrival: np.ndarray   # time of the concurrence maximum at each distance
    velocity: float       # sites per unit time
    offset: float
    residual: float       # rms deviation from the linear fit


def _first_peak(curve):
    """First local maximum reaching half of the curve's largest value."""
    top = curve.max()
    for k in range(1, curve.size - 1):
        if curve[k] >= 0.5 * top and curve[k] >= curve[k - 1] and curve[k] >= curve[k + 1]:
            return k
    return int(np.argmax(curve))


def wavefront(N, distances, t_grid, J=1.0, sign=1):
    """First arrival of C(-x, x) for a pair created at (-1, 1), fitted linearly in x."""
    distances = np.asarray(distances)
    t_grid = np.asarray(t_grid, dtype=float)
    curves = np.zeros((t_grid.size, distances.size))
    for a, t in enumerate(t_grid):
        w = magnon_amplitudes(N, -1, 1, sign, t, "finite", J).w
        curves[a] = 2 * np.abs(w[-distances % N] * w[distances % N])
    arrival = np.array([t_grid[_first_peak(c)] for c in curves.T])
    (slope, offset), res, *_ = np.polyfit(distances, arrival, 1, full=True)
    rms = float(np.sqrt(res[0] / distances.size)) if res.size else 0.0
    return Wavefront(distances, arrival, float(1 / slope), float(offset), rms)


def vacuum(N):
    psi = np.zeros(2 ** N, dtype=np.complex128)
    psi[0] = 1
    return psi


def bell_on_vacuum(N, i, j, sign=1):
    """(sigma^x_i +- sigma^x_j)|0...0> / sqrt2."""
    psi = np.zeros(2 ** N, dtype=np.complex128)
    psi[1 << (N - 1 - i)] += 1 / np.sqrt(2)
    psi[1 << (N - 1 - j)] += sign / np.sqrt(2)
    return psi


@dataclass(frozen=True)
class EvolutionSeries:
    t: np.ndarray
    states: np.ndarray        # (T, 2**N)
    concurrence: np.ndarray   # (T, N, N)
    tau1: np.ndarray          # (T, N)
    norm_drift: float

    @property
    def residual(self):
        """tau1_i - sum_j C_ij^2 per time and site."""
        return self.tau1 - np.sum(self.concurrence ** 2, axis=-1)

    def C(self, r, site=0):
        N = self.tau1.shape[1]
        return self.concurrence[:, site, (site + r) % N]


def ed_evolution(state0, p, t_grid):
    """Exact evolution exp(-i H t)|state0> on a grid, with pairwise and one-site tangles."""
    if p.N > ED_MAX_SITES:
        raise CapacityError(f"time evolution is limited to {ED_MAX_SITES} sites")
    psi0 = np.asarray(state0, dtype=np.complex128)
    if psi0.shape != (2 ** p.N,):
        raise ValueError("initial state does not match the chain length")
    if abs(np.vdot(psi0, psi0).real - 1) > 1e-10:
        raise ValueError("initial state is not normalized")
    E, V = np.linalg.eigh(build_hamiltonian(p).toarray())
    coef = V.T @ psi0
    t_grid = np.asarray(t_grid, dtype=float)
    states = (V @ (coef[:, None] * np.exp(-1j * np.outer(E, t_grid)))).T
    drift = float(np.abs(np.linalg.norm(states, axis=1) - 1).max())
    conc = np.array([pairwise_concurrences(s) for s in states])
    tau1 = np.array([single_site_tangles(s) for s in states])
    return EvolutionSeries(t_grid, states, conc, tau1, drift)


def magnon_from_ed(N, i, j, sign, t_grid, J=1.0):
    """Single-magnon amplitudes from ED of the XX chain matched to coupling ``J``."""
    p = ModelParams(N, 0.0, 0.0, XX_COUPLING_TO_ED * J, 0.0)
    series = ed_evolution(bell_on_vacuum(N, i, j, sign), p, t_grid)
    idx = [1 << (N - 1 - l) for l in range(N)]
    return series.states[:, idx]
