"""Nearest-neighbour spin-1/2 chains in a transverse field, by exact diagonalization.

    H = J sum_<ij> [(1+g)/2 Sx Sx + (1-g)/2 Sy Sy + D Sz Sz] - h sum_i Sz

with ``S = sigma / 2`` and the dimensionless coupling ``lambda = J / (2 h)``.
"""

import warnings
from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import eigsh

from ..bipartite import pairwise_concurrences
from ..errors import CapacityError, DiagnosticError
from ..states import MAX_QUBITS

ED_MAX_SITES = 14
DENSE_MAX_DIM = 1024

# (gamma, delta) per named model; None marks a free parameter
MODELS = {
    "xx": (0.0, 0.0),
    "xy": (None, 0.0),
    "xxx": (0.0, 1.0),
    "xxz": (0.0, None),
    "xyz": (None, None),
    "ising": (1.0, 0.0),
}


@dataclass(frozen=True)
class ModelParams:
    N: int
    gamma: float = 1.0
    delta: float = 0.0
    J: float = 1.0
    h: float = 0.5
    boundary: str = "periodic"

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("need at least two sites")
        if self.boundary not in ("periodic", "open"):
            raise ValueError("boundary must be 'periodic' or 'open'")

    @property
    def lam(self):
        return np.inf if self.h == 0 else self.J / (2 * self.h)

    @classmethod
    def from_lambda(cls, N, lam, gamma=1.0, delta=0.0, J=1.0, boundary="periodic"):
        if lam <= 0:
            raise ValueError("lambda must be positive")
        return cls(N, gamma, delta, J, J / (2 * lam), boundary)

    @classmethod
    def named(cls, model, N, gamma=None, delta=None, **kw):
        g0, d0 = MODELS[model]
        gamma = g0 if g0 is not None else (0.5 if gamma is None else gamma)
        delta = d0 if d0 is not None else (0.0 if delta is None else delta)
        return cls(N, gamma, delta, **kw)

    def with_lambda(self, lam):
        return replace(self, h=self.J / (2 * lam))

    def bonds(self):
        out = [(i, i + 1) for i in range(self.N - 1)]
        if self.boundary == "periodic" and self.N > 2:
            out.append((self.N - 1, 0))
        return out


_SX = sp.csr_matrix(np.array([[0, 1], [1, 0]]) / 2)
_SY = sp.csr_matrix(np.array([[0, -1j], [1j, 0]]) / 2)
_SZ = sp.csr_matrix(np.array([[1, 0], [0, -1]]) / 2)


def site_operator(op, i, N):
    return sp.kron(sp.kron(sp.identity(2 ** i), op), sp.identity(2 ** (N - i - 1)), format="csr")


def build_hamiltonian(p):
    """Sparse Hamiltonian in the sigma_z product basis (real for this family)."""
    if p.N > MAX_QUBITS:
        raise CapacityError(f"{p.N} sites exceeds the bound of {MAX_QUBITS}")
    N = p.N
    ops = {a: [site_operator(o, i, N) for i in range(N)] for a, o in (("x", _SX), ("y", _SY), ("z", _SZ))}
    H = sp.csr_matrix((2 ** N, 2 ** N), dtype=np.complex128)
    cx, cy, cz = p.J * (1 + p.gamma) / 2, p.J * (1 - p.gamma) / 2, p.J * p.delta
    for i, j in p.bonds():
        H = H + cx * ops["x"][i] @ ops["x"][j] + cy * ops["y"][i] @ ops["y"][j]
        if cz:
            H = H + cz * ops["z"][i] @ ops["z"][j]
    for i in range(N):
        H = H - p.h * ops["z"][i]
    return sp.csr_matrix(H.real)


def parity_diagonal(N):
    """Eigenvalues of prod_i sigma_z on the basis states."""
    counts = np.array([bin(k).count("1") for k in range(2 ** N)])
    return 1 - 2 * (counts % 2)


def _lowest(H, k=1):
    if H.shape[0] <= DENSE_MAX_DIM:
        w, v = np.linalg.eigh(H.toarray())
        return w[:k], v[:, :k]
    w, v = eigsh(H, k=k, which="SA", tol=1e-13)
    order = np.argsort(w)
    return w[order], v[:, order]


@dataclass(frozen=True)
class GroundStateBundle:
    params: ModelParams
    even: np.ndarray
    odd: np.ndarray
    E_even: float
    E_odd: float

    @property
    def ground(self):
        return self.even if self.E_even <= self.E_odd else self.odd

    @property
    def gap(self):
        return abs(self.E_even - self.E_odd)

    @property
    def plus(self):
        return (self.even + self.odd) / np.sqrt(2)

    @property
    def minus(self):
        return (self.even - self.odd) / np.sqrt(2)

    @property
    def rho0(self):
        return 0.5 * (np.outer(self.even, self.even.conj()) + np.outer(self.odd, self.odd.conj()))


def ground_state(p):
    """Lowest state in each parity sector; the odd state's sign makes <gs+|Sx_0|gs+> > 0."""
    if p.N > ED_MAX_SITES:
        raise CapacityError(f"exact diagonalization is limited to {ED_MAX_SITES} sites")
    H = build_hamiltonian(p)
    par = parity_diagonal(p.N)
    states, energies = {}, {}
    for sector in (1, -1):
        idx = np.flatnonzero(par == sector)
        w, v = _lowest(H[idx][:, idx], k=2)
        if w.size > 1 and abs(w[1] - w[0]) < 1e-9:
            warnings.warn(f"degenerate lowest level in parity sector {sector:+d}", RuntimeWarning)
        psi = np.zeros(2 ** p.N, dtype=np.complex128)
        psi[idx] = v[:, 0]
        # fix the global phase so the largest amplitude is real positive
        k = np.argmax(np.abs(psi))
        psi *= np.abs(psi[k]) / psi[k]
        states[sector], energies[sector] = psi, float(w[0])
    sx0 = site_operator(_SX, 0, p.N)
    overlap = np.vdot(states[1], sx0 @ states[-1])
    if abs(overlap) > 1e-12:
        states[-1] = states[-1] * np.conj(overlap) / abs(overlap)
    for sector, psi in states.items():
        if np.abs(psi - par * sector * psi).max() > 1e-10:
            raise DiagnosticError("ground state is not a parity eigenstate")
    return GroundStateBundle(p, states[1], states[-1], energies[1], energies[-1])


def factorizing_field(gamma, delta, J, z=2):
    """h_f = (z/2) J sqrt((1 + delta)^2 - (gamma/2)^2), as printed."""
    rad = (1 + delta) ** 2 - (gamma / 2) ** 2
    if rad < 0:
        raise ValueError("negative radicand in the factorizing-field formula")
    return z / 2 * J * np.sqrt(rad)


def factorizing_field_product_state(gamma, delta, J, z=2):
    """Field at which a product state is an exact eigenstate of the Hamiltonian above.

    For anisotropic couplings Jx = J(1+g)/2, Jy = J(1-g)/2, Jz = J D the
    classical condition gives h = (z/2) sqrt((Jx + Jz)(Jy + Jz)).
    """
    jx, jy, jz = J * (1 + gamma) / 2, J * (1 - gamma) / 2, J * delta
    rad = (jx + jz) * (jy + jz)
    if rad < 0:
        raise ValueError("no real factorizing field for these couplings")
    return z / 2 * np.sqrt(rad)


def least_entangled_superposition(bundle):
    """cos(phi) gs^e + sin(phi) gs^o minimizing the largest pairwise concurrence.

    Only a ground state where the two sectors are degenerate; the caller
    should check ``bundle.gap``.
    """
    def worst(phi):
        psi = np.cos(phi) * bundle.even + np.sin(phi) * bundle.odd
        return pairwise_concurrences(psi).max()

    grid = np.linspace(0, np.pi, 33)
    k = int(np.argmin([worst(f) for f in grid]))
    res = minimize_scalar(worst, bounds=(grid[max(k - 1, 0)], grid[min(k + 1, 32)]),
                          method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(res.fun)


@dataclass(frozen=True)
class FactorizationScan:
    h_star: float
    max_concurrence: float
    gap: float            # |E_even - E_odd| at h_star
    h_formula: float
    h_product: float


def find_factorizing_field(N=10, gamma=0.5, delta=0.0, J=1.0, bracket=None):
    """Field where some ground state in the parity-degenerate span is unentangled.

    Scans h, minimizing the largest pairwise concurrence over the span of
    gs^e and gs^o, and refines the best grid point.
    """
    h_prod = factorizing_field_product_state(gamma, delta, J)

    def worst(h):
        return least_entangled_superposition(ground_state(ModelParams(N, gamma, delta, J, h)))[1]

    lo, hi = bracket if bracket else (0.5 * h_prod, 1.5 * h_prod)
    grid = np.linspace(lo, hi, 21)
    k = int(np.argmin([worst(h) for h in grid]))
    res = minimize_scalar(worst, bounds=(grid[max(k - 1, 0)], grid[min(k + 1, 20)]),
                          method="bounded", options={"xatol": 1e-12})
    b = ground_state(ModelParams(N, gamma, delta, J, res.x))
    return FactorizationScan(float(res.x), float(res.fun), b.gap,
                             float(factorizing_field(gamma, delta, J)), float(h_prod))
