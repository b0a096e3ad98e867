"""Spin entanglement of itinerant fermions: free Fermi gas, eta pairing, Hubbard chains.

Fermionic Fock states over ``M`` modes use the bit convention of
:class:`entangle_kit.fermionic.FockState` (mode 0 = most significant bit);
creation operators carry the Jordan-Wigner string of all lower modes.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.optimize import bisect
from scipy.special import j1, spherical_jn

from .bipartite import (
    concurrence_mixed,
    negativity_suite,
    reduced_density,
    shannon_bits,
    two_site_from_correlators,
)
from .errors import DiagnosticError
from .spin_models.free_fermion import free_fermion_correlators
from .spin_models.model import ModelParams

# ---------------------------------------------------------------- Fermi gas


def fermi_f(x, d):
    """f(x) = 2 J1(x)/x for d = 2, 3 j1(x)/x (spherical) for d = 3; f(0) = 1."""
    if d not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-8
    safe = np.where(small, 1.0, x)
    val = 2 * j1(safe) / safe if d == 2 else 3 * spherical_jn(1, safe) / safe
    out = np.where(small, 1.0, val)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class FermiGasPair:
    rho12: np.ndarray
    f: float
    entangled: bool
    ppt: bool
    concurrence: float


def fermi_gas_two_spin_rdm(r, kf, d):
    """Two-spin state of two fermions at distance r in the ideal Fermi gas."""
    if r < 0 or kf <= 0:
        raise ValueError("need r >= 0 and kf > 0")
    f = fermi_f(kf * r, d)
    f2 = f * f
    rho = np.array([
        [1 - f2, 0, 0, 0],
        [0, 1, -f2, 0],
        [0, -f2, 1, 0],
        [0, 0, 0, 1 - f2],
    ], dtype=np.complex128) / (4 - 2 * f2)
    neg = negativity_suite(rho, [0], tol=1e-14)
    return FermiGasPair(rho, float(f), bool(f2 >= 0.5), neg.ppt, concurrence_mixed(rho).C)


def entanglement_distance(d, kf=np.pi, tol=1e-10):
    """Smallest r with f(kf r)^2 = 1/2, by bisection on (0, 2 pi / kf)."""
    g = lambda r: fermi_f(kf * r, d) ** 2 - 0.5
    return bisect(g, 1e-12, 2 * np.pi / kf * 0.999, xtol=tol)


# ---------------------------------------------------------------- Fock space tools


def annihilators(M):
    """Sparse c_k for k = 0..M-1 with the Jordan-Wigner sign of lower modes."""
    z = sp.csr_matrix(np.diag([1.0, -1.0]))
    a = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))   # |1> -> |0>
    out = []
    for k in range(M):
        op = sp.identity(1, format="csr")
        for q in range(M):
            op = sp.kron(op, z if q < k else a if q == k else sp.identity(2), format="csr")
        out.append(op)
    return out


def spinful_modes(L):
    """Mode index of (site, spin) with the order 0up, 0dn, 1up, 1dn, ..."""
    return lambda j, s: 2 * j + s


# ---------------------------------------------------------------- eta pairing


@dataclass(frozen=True)
class EtaPairing:
    O_eta: float
    C_rescaled: float


def eta_pairing(L, N):
    """Off-diagonal order parameter and rescaled concurrence of (eta^+)^N |0>."""
    if not 1 <= N <= L - 1:
        raise ValueError("need 1 <= N <= L - 1")
    o = N * (L - N) / (L * (L - 1))
    c = 2 * o * (1 - np.sqrt((N - 1) * (L - N - 1) / (N * (L - N))))
    return EtaPairing(o, float(c))


def eta_state(L, N):
    """Normalized (eta^+)^N |0> in the 2L-mode Fock space."""
    if L > 6:
        raise ValueError("explicit eta states are built for L <= 6")
    c = annihilators(2 * L)
    mode = spinful_modes(L)
    eta_dag = sum(c[mode(j, 0)].T @ c[mode(j, 1)].T for j in range(L))
    psi = np.zeros(2 ** (2 * L))
    psi[0] = 1.0
    for _ in range(N):
        psi = eta_dag @ psi
    return psi / np.linalg.norm(psi)


def pair_qubits(psi, L):
    """Map a state with only empty or doubly occupied sites to L pseudo-spin qubits."""
    out = np.zeros(2 ** L, dtype=psi.dtype)
    for k in np.flatnonzero(np.abs(psi) > 1e-14):
        bits = [(k >> (2 * L - 1 - m)) & 1 for m in range(2 * L)]
        pairs = bits[0::2]
        if pairs != bits[1::2]:
            raise ValueError("state has singly occupied sites")
        out[int("".join(map(str, pairs)), 2)] = psi[k]
    return out


@dataclass(frozen=True)
class EtaCheck:
    O_eta: float
    concurrence: float


def eta_pairing_explicit(L, N, j=0, k=1):
    """O_eta and the pseudo-spin concurrence of sites j, k from the explicit state."""
    psi = eta_state(L, N)
    c = annihilators(2 * L)
    mode = spinful_modes(L)
    eta_j = c[mode(j, 0)] @ c[mode(j, 1)]
    eta_k = c[mode(k, 0)] @ c[mode(k, 1)]
    o = float(psi @ (eta_j.T @ (eta_k @ psi)))
    q = pair_qubits(psi, L)
    conc = concurrence_mixed(reduced_density(q, sorted((j, k)))).C
    return EtaCheck(o, conc)


# ---------------------------------------------------------------- Hubbard chains


def hubbard_local_entropy(z, u_plus, u_minus, w):
    """Entropy (bits) of the one-site state diag(z, u+, u-, w)."""
    p = np.array([z, u_plus, u_minus, w], dtype=float)
    if np.any(p < -1e-12) or abs(p.sum() - 1) > 1e-10:
        raise ValueError("local weights must be non-negative and sum to one")
    return shannon_bits(np.clip(p, 0, None))


@dataclass(frozen=True)
class LocalWeights:
    z: float
    u_plus: float
    u_minus: float
    w: float

    @property
    def entropy(self):
        return hubbard_local_entropy(self.z, self.u_plus, self.u_minus, self.w)


def extended_hubbard_hamiltonian(L, U, V, t=1.0, boundary="periodic"):
    """Sparse H = -t sum (c^+ c + h.c.) + U sum n_up n_dn + V sum n_i n_j on 2L modes."""
    c = annihilators(2 * L)
    mode = spinful_modes(L)
    n = [[c[mode(j, s)].T @ c[mode(j, s)] for s in (0, 1)] for j in range(L)]
    bonds = [(j, j + 1) for j in range(L - 1)]
    if boundary == "periodic" and L > 2:
        bonds.append((L - 1, 0))
    H = sp.csr_matrix((4 ** L, 4 ** L))
    for i, j in bonds:
        for s in (0, 1):
            hop = c[mode(i, s)].T @ c[mode(j, s)]
            H = H - t * (hop + hop.T)
        H = H + V * (n[i][0] + n[i][1]) @ (n[j][0] + n[j][1])
    for j in range(L):
        H = H + U * n[j][0] @ n[j][1]
    return sp.csr_matrix(H)


def _sector(L, n_up, n_dn):
    idx = []
    for k in range(4 ** L):
        bits = [(k >> (2 * L - 1 - m)) & 1 for m in range(2 * L)]
        if sum(bits[0::2]) == n_up and sum(bits[1::2]) == n_dn:
            idx.append(k)
    return np.array(idx)


def half_filling_weights(L, U, V, t=1.0, boundary="periodic", site=0, degeneracy_tol=1e-9):
    """(z, u+, u-, w) at ``site`` in the half-filled, S^z = 0 ground state.

    A degenerate ground level is replaced by the equal mixture of its states.
    """
    if L % 2:
        raise ValueError("half filling with S^z = 0 needs an even number of sites")
    H = extended_hubbard_hamiltonian(L, U, V, t, boundary)
    idx = _sector(L, L // 2, L // 2)
    E, vecs = np.linalg.eigh(H[idx][:, idx].toarray())
    ground = vecs[:, E < E[0] + degeneracy_tol]
    up = np.array([(k >> (2 * L - 1 - 2 * site)) & 1 for k in idx])
    dn = np.array([(k >> (2 * L - 2 - 2 * site)) & 1 for k in idx])
    prob = np.mean(np.abs(ground) ** 2, axis=1)
    return LocalWeights(
        float(prob[(up == 0) & (dn == 0)].sum()),
        float(prob[(up == 1) & (dn == 0)].sum()),
        float(prob[(up == 0) & (dn == 1)].sum()),
        float(prob[(up == 1) & (dn == 1)].sum()),
    )


def extended_hubbard_scan(U_grid, V_grid, L=6, t=1.0):
    """Local entropy surface S[U, V] at half filling."""
    if L not in (2, 4, 6):
        raise ValueError("the scan supports L in {2, 4, 6}")
    return np.array([[half_filling_weights(L, u, v, t).entropy for v in V_grid] for u in U_grid])


# ---------------------------------------------------------------- tight binding


@dataclass(frozen=True)
class FillingRow:
    n: float
    C1: float


def _magnon_energies(N, J):
    """Zero-field energy of M magnons on the XX ring, M = 0..N.

    The Jordan-Wigner fermions see periodic momenta for odd M and
    antiperiodic momenta for even M.
    """
    out = []
    for m in range(N + 1):
        k = 2 * np.pi * (np.arange(N) + (0.0 if m % 2 else 0.5)) / N
        out.append(np.sort(J / 2 * np.cos(k))[:m].sum())
    return np.array(out)


def tight_binding_halffilling_check(N, fillings, J=1.0):
    """Nearest-neighbour concurrence of the XX ring at the field giving each filling.

    The XX ring is the tight-binding chain; the spin-down density n = M / N
    is selected by a field at the centre of the stability window of M magnons.
    """
    if N % 2:
        raise ValueError("use an even ring; odd rings are frustrated and skip fillings")
    energies = _magnon_energies(N, J)
    rows = []
    for n in fillings:
        m = int(round(n * N))
        if not 0 <= m <= N:
            raise ValueError("filling outside [0, 1]")
        # M magnons are stable for -(E(M+1) - E(M)) <= h <= -(E(M) - E(M-1))
        if m == 0:
            h = -(energies[1] - energies[0]) + J
        elif m == N:
            h = -(energies[N] - energies[N - 1]) - J
        else:
            h = -(energies[m + 1] - energies[m - 1]) / 2
        tab = free_fermion_correlators(ModelParams(N, 0.0, 0.0, J, h), r_max=1)
        if round((0.5 - tab.Mz) * N) != m:
            raise DiagnosticError(f"field {h} does not select {m} magnons")
        rows.append(FillingRow(m / N, two_site_from_correlators(tab.at(1)).C))
    return rows
