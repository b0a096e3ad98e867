"""Polynomial SL(2,C) invariants built from the two antilinear combs.

The single-qubit comb is ``sigma_y C``; the two-copy comb is
``sum_mu g_mu sigma_mu . sigma_mu C`` with metric ``g = (-1, 1, 0, 1)``.
Everything here is evaluated on the antilinear tensor
``T[mu_0, ..., mu_{n-1}] = <psi*| sigma_mu0 x ... |psi>``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from ..bipartite import pairwise_concurrences, single_site_tangles
from ..errors import CapacityError
from ..states import antilinear_tensor, as_state, num_qubits, reduced_density

METRIC = np.array([-1.0, 1.0, 0.0, 1.0])
Y = 2


def _require(psi, n):
    psi = as_state(psi)
    if psi.size != 2 ** n:
        raise ValueError(f"expected a {n}-qubit state, got {num_qubits(psi.size)} qubits")
    return psi


def _three_tangle_batch(psi):
    t = antilinear_tensor(psi)
    g = METRIC
    return np.abs(np.einsum("...mnl,m,n,l->...", t * t, g, g, g)) / 3


def three_tangle(psi):
    return float(_three_tangle_batch(_require(psi, 3)))


def n_tangle(psi):
    """|<psi*| sigma_y^{x n} |psi>|^2; identically zero for odd n, so odd n is rejected."""
    psi = as_state(psi)
    n = num_qubits(psi.size)
    if n % 2:
        raise ValueError("the n-tangle vanishes identically for odd n")
    # sigma_y^{x n} maps basis label b to ~b with phase i^{n-2|b|} (|b| = popcount)
    labels = np.arange(psi.size)
    pop = np.array([bin(b).count("1") for b in labels])
    phase = (1j) ** ((n - 2 * pop) % 4)
    value = np.sum(psi[labels ^ (psi.size - 1)] * phase * psi)
    return float(abs(value) ** 2)


def residual_tangle(psi, i):
    """tau_{1,i} - sum_j C_ij^2, the part of qubit i's tangle not stored in pairs."""
    psi = as_state(psi)
    n = num_qubits(psi.size)
    if not 0 <= i < n:
        raise ValueError(f"qubit index {i} out of range")
    c = pairwise_concurrences(psi)
    tau1 = single_site_tangles(psi)[i]
    return float(tau1 - np.sum(c[i] ** 2))


@dataclass(frozen=True)
class FilterResult:
    F1: complex
    F2: complex
    F3: complex

    @property
    def moduli(self):
        return (abs(self.F1), abs(self.F2), abs(self.F3))


def _f2_term(t):
    g = METRIC
    a = t[..., :, :, Y, Y]
    b = t[..., :, Y, :, Y]
    c = t[..., Y, :, Y, :]
    d = t[..., Y, Y, :, :]
    return np.einsum("m,n,l,s,...mn,...ml,...ns,...ls->...", g, g, g, g, a, b, c, d)


def _filters_batch(psi):
    t = antilinear_tensor(psi)
    g = METRIC
    f1 = np.einsum(
        "m,n,l,...mn,...ml,...nl->...", g, g, g,
        t[..., :, :, Y, Y], t[..., :, Y, :, Y], t[..., Y, :, :, Y],
    )
    nb = t.ndim - 4
    lead = tuple(range(nb))
    f2 = np.mean(
        [_f2_term(t.transpose(lead + tuple(nb + p for p in perm)))
         for perm in itertools.permutations(range(4))],
        axis=0,
    )

    def pair(x):
        return np.einsum("m,n,...mn->...", g, g, x * x)

    f3 = 0.5 * pair(t[..., :, :, Y, Y]) * pair(t[..., :, Y, :, Y]) * pair(t[..., Y, :, :, Y])
    return f1, f2, f3


def filters_F4(psi):
    """The three four-qubit filter invariants (degrees 6, 8 and 12)."""
    f1, f2, f3 = _filters_batch(_require(psi, 4))
    return FilterResult(complex(f1), complex(f2), complex(f3))


def bipartitions(n):
    """Nontrivial cuts up to complement: subsets containing qubit 0, except the full set."""
    rest = list(range(1, n))
    out = []
    for size in range(0, n - 1):
        for combo in itertools.combinations(rest, size):
            out.append((0,) + combo)
    return out


@dataclass(frozen=True)
class PurityDistribution:
    values: list
    mean: float
    variance: float
    q_measure: float


def purity_distribution(psi):
    """Purities tr(rho_A^2) over all bipartitions plus the Q-measure (mean one-tangle)."""
    psi = as_state(psi)
    n = num_qubits(psi.size)
    if n > 14:
        raise CapacityError("purity distribution is limited to 14 qubits")
    values = []
    for part in bipartitions(n):
        rest = [k for k in range(n) if k not in part]
        m = psi.reshape((2,) * n).transpose(list(part) + rest).reshape(2 ** len(part), -1)
        s = np.linalg.svd(m, compute_uv=False) ** 2
        values.append((part, float(np.sum(s ** 2))))
    pur = np.array([v for _, v in values])
    q = float(np.mean(single_site_tangles(psi)))
    return PurityDistribution(values, float(pur.mean()), float(pur.var()), q)


def single_site_purities(psi):
    n = num_qubits(len(psi))
    return np.array([np.trace(reduced_density(psi, [k]) @ reduced_density(psi, [k])).real
                     for k in range(n)])
