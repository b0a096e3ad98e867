"""Transverse XY chain (Delta = 0) solved as a quadratic Majorana form.

With ``a_{2j} = P_j sigma^x_j`` and ``a_{2j+1} = P_j sigma^y_j``
(``P_j`` the string of sigma_z on sites below j):

    sigma^z_j                 = -i a_{2j} a_{2j+1}
    sigma^x_j sigma^x_{j+1}   = -i a_{2j+1} a_{2j+2}
    sigma^y_j sigma^y_{j+1}   =  i a_{2j} a_{2j+3}

The Hamiltonian becomes ``(i/4) a^T A a`` with real antisymmetric ``A``.  A
singular value decomposition of its even-odd block gives the ground-state correlation matrix
``G_pq = <-i a_p a_q>``; string correlators are Pfaffians of blocks of ``G``.
On a ring the bond closing the chain carries the factor ``-Q``, with ``Q``
the parity of the sector, so both sectors are solved and the lower kept.
"""

from dataclasses import dataclass

import numpy as np

from ..bipartite import CorrelatorSet
from ..errors import UnsupportedModelError


def majorana_matrix(p, boundary_sign=1.0):
    """A with H = (i/4) sum_pq A_pq a_p a_q; ``boundary_sign`` scales the ring bond."""
    if p.delta != 0:
        raise UnsupportedModelError("the free-fermion engine needs delta = 0")
    N = p.N
    A = np.zeros((2 * N, 2 * N))
    cx = p.J * (1 + p.gamma) / 8     # coefficient of sigma^x sigma^x
    cy = p.J * (1 - p.gamma) / 8
    for i, j in p.bonds():
        s = boundary_sign if j < i else 1.0
        # a term c (-i a_p a_q) enters as A_pq = -2c
        A[2 * i + 1, (2 * j) % (2 * N)] += -2 * cx * s
        A[2 * i, (2 * j + 1) % (2 * N)] += 2 * cy * s
    for j in range(N):
        A[2 * j, 2 * j + 1] += p.h
    return A - A.T


@dataclass(frozen=True)
class FermionGroundState:
    G: np.ndarray      # <-i a_p a_q>
    energy: float
    parity: int


def _quasi_vacuum(A, parity=None):
    """Lowest state of (i/4) a^T A a, optionally restricted to a parity sector.

    Only even-odd Majorana pairs are coupled, so with ``B = A[even, odd] =
    U diag(e) V^T`` the modes ``U^T a_even`` and ``V^T a_odd`` pair up with
    energies ``e_k``.  The vacuum parity is det(U) det(V) prod_k s_k.
    """
    B = A[0::2, 1::2]
    if max(np.abs(A[0::2, 0::2]).max(), np.abs(A[1::2, 1::2]).max()) > 1e-14:
        raise ValueError("Majorana form is not bipartite")
    U, e, Vt = np.linalg.svd(B)
    s = np.ones_like(e)
    par = int(round(np.linalg.det(U) * np.linalg.det(Vt)))
    if parity is not None and par != parity:
        s[-1] = -1.0                    # the softest mode
        par = -par
    n = B.shape[0]
    G = np.zeros((2 * n, 2 * n))
    G[0::2, 1::2] = (U * s) @ Vt
    G[1::2, 0::2] = -G[0::2, 1::2].T
    return FermionGroundState(G, -0.5 * float(np.sum(s * e)), par)


def solve_chain(p):
    """Ground state of the chain in Majorana form (lowest over parity sectors on a ring)."""
    if p.boundary == "open" or p.N <= 2:
        return _quasi_vacuum(majorana_matrix(p))
    best = None
    for parity in (1, -1):
        gs = _quasi_vacuum(majorana_matrix(p, boundary_sign=-parity), parity)
        if best is None or gs.energy < best.energy - 1e-12:
            best = gs
    return best


@dataclass(frozen=True)
class CorrelatorTable:
    """Spin-1/2 correlators between site ``site`` and ``site + r``."""

    r: np.ndarray
    gxx: np.ndarray
    gyy: np.ndarray
    gzz: np.ndarray
    Mz: float
    Mz_r: np.ndarray      # magnetization at site + r
    energy: float
    parity: int

    def at(self, r):
        k = int(np.flatnonzero(self.r == r)[0])
        return CorrelatorSet(self.gxx[k], self.gyy[k], self.gzz[k], self.Mz, Mz_j=self.Mz_r[k])


def _bipartite_pfaffian(G, idx):
    """Pfaffian of G[idx, idx] when idx alternates even and odd Majoranas.

    Entries within one type vanish, and interleaving makes the Pfaffian
    equal to the determinant of the even-odd block.
    """
    return float(np.linalg.det(G[np.ix_(idx[0::2], idx[1::2])]))


def string_correlators(G, i, r):
    """<sigma^a_i sigma^a_{i+r}> for a = x, y, z from the Majorana correlation matrix."""
    xs = list(range(2 * i + 1, 2 * (i + r) + 1))
    ys = [2 * i]
    for j in range(i, i + r - 1):
        ys += [2 * j + 3, 2 * j + 2]
    ys.append(2 * (i + r) + 1)
    zs = [2 * i, 2 * i + 1, 2 * (i + r), 2 * (i + r) + 1]
    pf = lambda idx: _bipartite_pfaffian(G, idx)
    return pf(xs), (-1) ** r * pf(ys), pf(zs)


def free_fermion_correlators(p, r_max=None, site=0):
    """Correlator table for distances 1..r_max from ``site``.

    On a ring the result is translation invariant; on an open chain it
    depends on ``site``.
    """
    gs = solve_chain(p)
    r_max = min(r_max or p.N // 2, p.N - 1 - site)
    if r_max < 1:
        raise ValueError("no site pairs in range")
    rs = np.arange(1, r_max + 1)
    vals = np.array([string_correlators(gs.G, site, r) for r in rs]) / 4
    mz = np.diag(gs.G[0::2, 1::2]) / 2
    return CorrelatorTable(rs, vals[:, 0], vals[:, 1], vals[:, 2], float(mz[site]),
                           mz[site + rs], gs.energy, gs.parity)
