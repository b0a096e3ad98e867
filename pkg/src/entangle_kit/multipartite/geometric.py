"""Optimization-based measures: geometric measure and localizable entanglement."""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ..bipartite import _concurrence_pure_batch
from ..errors import CapacityError
from ..states import PAULI, as_state, num_qubits, reduced_density


def _contract_others(t, vecs, skip):
    """Contract every axis except ``skip`` with the conjugated product factors."""
    out = t
    for k in reversed(range(len(vecs))):
        if k != skip:
            out = np.tensordot(out, vecs[k].conj(), axes=([k], [0]))
    return out


def max_product_overlap(psi, restarts=8, seed=0, max_iter=500, tol=1e-13):
    """Best |<Phi|psi>|^2 over product states, by alternating single-site updates."""
    if restarts < 1:
        raise ValueError("need at least one restart")
    psi = as_state(psi)
    n = num_qubits(psi.size)
    t = psi.reshape((2,) * n)
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        vecs = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(n)]
        vecs = [v / np.linalg.norm(v) for v in vecs]
        prev = -1.0
        for _ in range(max_iter):
            for k in range(n):
                v = _contract_others(t, vecs, k)
                nv = np.linalg.norm(v)
                if nv > 0:
                    vecs[k] = v / nv
            overlap = nv ** 2
            if abs(overlap - prev) < tol:
                break
            prev = overlap
        best = max(best, overlap)
    return min(best, 1.0)


def geometric_measure(psi, restarts=8, seed=0):
    """E_g = -log2 max_Phi |<Psi|Phi>|^2 over product states (best of restarts)."""
    return float(-np.log2(max_product_overlap(psi, restarts=restarts, seed=seed)))


def _basis(theta, phi):
    """Rows are the two measurement vectors |n>, |n_perp> for Bloch angles (theta, phi)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    return np.array([[c, e * s], [-np.conj(e) * s, c]])


def average_outcome_concurrence(psi, i, j, angles):
    """Average concurrence on (i, j) after projective measurement of all other qubits."""
    n = num_qubits(psi.size)
    others = [k for k in range(n) if k not in (i, j)]
    t = psi.reshape((2,) * n).transpose(others + [i, j])
    for a in range(len(others)):
        b = _basis(angles[2 * a], angles[2 * a + 1]).conj()
        # measure the leading unmeasured axis; the outcome axis is appended at the end
        t = np.moveaxis(np.tensordot(b, t, axes=([1], [a])), 0, a)
    branches = t.reshape(-1, 4)  # unnormalized two-qubit outcome states
    return float(np.sum(_concurrence_pure_batch(branches)))


@dataclass(frozen=True)
class LocalizableResult:
    E_loc: float
    lower_bound: float
    angles: np.ndarray


def correlation_lower_bound(psi, i, j):
    """max over axes of 4 |<S_i^a S_j^b> - <S_i^a><S_j^b>|, i.e. the correlation in sigma units."""
    rho = reduced_density(psi, sorted((i, j)))
    if i > j:
        rho = rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    ri = rho.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
    rj = rho.reshape(2, 2, 2, 2).trace(axis1=0, axis2=2)
    best = 0.0
    for a in (1, 2, 3):
        ma = np.trace(ri @ PAULI[a]).real
        for b in (1, 2, 3):
            mb = np.trace(rj @ PAULI[b]).real
            q = np.trace(rho @ np.kron(PAULI[a], PAULI[b])).real - ma * mb
            best = max(best, abs(q))
    return best


def localizable_entanglement(psi, i, j, restarts=8, seed=0):
    """Localizable concurrence under single-qubit projective measurements.

    Each measured qubit's basis is parametrized by two Bloch angles; the best
    average found over ``restarts`` local optimizations is returned together
    with the correlation-function lower bound.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    psi = as_state(psi)
    n = num_qubits(psi.size)
    if n > 8:
        raise CapacityError("localizable entanglement is limited to 8 qubits")
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError("need two distinct valid qubit indices")
    bound = correlation_lower_bound(psi, i, j)
    m = n - 2
    if m == 0:
        return LocalizableResult(average_outcome_concurrence(psi, i, j, []), bound, np.zeros(0))
    rng = np.random.default_rng(seed)
    fun = lambda x: -average_outcome_concurrence(psi, i, j, x)
    starts = [np.tile([np.pi / 2, 0.0], m)]  # x-basis everywhere
    starts += [np.column_stack([np.arccos(rng.uniform(-1, 1, m)), rng.uniform(0, 2 * np.pi, m)]).ravel()
               for _ in range(restarts - 1)]
    best_val, best_x = -np.inf, starts[0]
    for x0 in starts:
        res = minimize(fun, x0, method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 4000 * m})
        if -res.fun > best_val:
            best_val, best_x = -res.fun, res.x
    return LocalizableResult(float(best_val), bound, best_x)
