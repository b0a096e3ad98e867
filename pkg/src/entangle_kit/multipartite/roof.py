"""Numerical convex roofs (and the concave roof, i.e. entanglement of assistance).

Every size-K pure-state realization of ``rho = sum_i l_i |e_i><e_i|`` is

    sqrt(p_k) |psi_k> = sum_i U_ki sqrt(l_i) |e_i>

for a K x r matrix ``U`` with orthonormal columns.  ``U`` is parametrized
through the Q factor of an unconstrained complex matrix and optimized with
L-BFGS on a smoothed objective, from several random starting points.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ..bipartite import _concurrence_pure_batch, _wootters_batch, one_tangle
from ..states import as_density, ghz_state, num_qubits, partial_trace, reduced_density, w_state
from .invariants import _three_tangle_batch


@dataclass(frozen=True)
class RoofConfig:
    K: int | None = None          # decomposition size; default rank + 2
    mode: str = "minimize"
    restarts: int = 32
    iterations: int = 200
    seed: int = 0

    def estimate(self, rho, measure="concurrence"):
        return convex_roof_estimate(rho, measure, K=self.K, mode=self.mode, restarts=self.restarts,
                                    iterations=self.iterations, seed=self.seed)


@dataclass(frozen=True)
class RoofEstimate:
    value: float
    probabilities: np.ndarray
    states: np.ndarray            # rows are normalized pure states
    mode: str
    restarts: int
    iterations: int
    history: list = field(default_factory=list)

    @property
    def decomposition(self):
        return list(zip(self.probabilities, self.states))

    def reconstruct(self):
        return np.einsum("k,ki,kj->ij", self.probabilities, self.states, self.states.conj())


# pure-state functionals, vectorized over rows of normalized states

def concurrence_measure(psi):
    return _concurrence_pure_batch(psi)


def tangle3_measure(psi):
    return _three_tangle_batch(psi)


def pair_concurrence_measure(i, j):
    """psi -> Wootters concurrence of the (i, j) reduction of psi."""
    def measure(psi):
        return _wootters_batch(reduced_density(psi, [i, j]))
    return measure


MEASURES = {
    "concurrence": concurrence_measure,
    "tau3": tangle3_measure,
}

# smooth surrogates |z| -> sqrt(|z|^2 + eps^2) for the modulus-type measures
_SMOOTH = {
    concurrence_measure: lambda psi, eps: np.sqrt(
        np.abs(2 * (psi[..., 0] * psi[..., 3] - psi[..., 1] * psi[..., 2])) ** 2 + eps ** 2),
    tangle3_measure: lambda psi, eps: np.sqrt(_three_tangle_batch(psi) ** 2 + eps ** 2),
}


def _realization(params, basis, K, r):
    """params (..., 2Kr) -> rows sqrt(p_k) psi_k with shape (..., K, d) and weights p."""
    n = K * r
    z = params[..., :n] + 1j * params[..., n:]
    q, _ = np.linalg.qr(z.reshape(params.shape[:-1] + (K, r)))
    sub = q @ basis
    p = np.einsum("...kd,...kd->...k", sub, sub.conj()).real
    return sub, p


def _objective(params, basis, K, r, measure, sign):
    """Signed decomposition average; vectorized over leading axes of ``params``."""
    sub, p = _realization(params, basis, K, r)
    safe = np.where(p > 1e-300, p, 1.0)
    states = sub / np.sqrt(safe)[..., None]
    vals = measure(states.reshape(-1, states.shape[-1])).reshape(p.shape)
    return sign * np.sum(np.where(p > 1e-300, p * vals, 0.0), axis=-1)


def _value_and_grad(fun, x, h=1e-7):
    """Central-difference gradient, all 2P shifted points evaluated in one batch."""
    shifts = np.concatenate([np.eye(x.size), -np.eye(x.size)]) * h
    vals = fun(np.vstack([x[None, :], x + shifts]))
    m = x.size
    return float(vals[0]), (vals[1:m + 1] - vals[m + 1:]) / (2 * h)


def convex_roof_estimate(rho, measure="concurrence", K=None, mode="minimize",
                         restarts=32, iterations=200, seed=0, smoothing=None):
    """Optimize the average of a pure-state measure over decompositions of ``rho``.

    ``measure`` is a name from :data:`MEASURES` or a callable taking a
    ``(batch, dim)`` array of normalized states.  In ``minimize`` mode the
    result is an upper bound on the convex roof; in ``maximize`` mode it is a
    lower bound on the entanglement of assistance.
    """
    if mode not in ("minimize", "maximize"):
        raise ValueError("mode must be 'minimize' or 'maximize'")
    if restarts < 1:
        raise ValueError("need at least one restart")
    rho = as_density(rho, tol=1e-9)
    num_qubits(rho.shape[0])
    f = MEASURES[measure] if isinstance(measure, str) else measure
    lam, vec = np.linalg.eigh(rho)
    support = lam > 1e-12
    lam, vec = lam[support], vec[:, support]
    r = lam.size
    K = r + 2 if K is None else int(K)
    if K < r:
        raise ValueError(f"K={K} is below the rank {r} of the state")
    basis = np.sqrt(lam)[:, None] * vec.T      # r x d
    sign = 1.0 if mode == "minimize" else -1.0
    if smoothing is None:
        smoothing = (1e-2, 1e-4, 1e-6) if f in _SMOOTH else ()

    rng = np.random.default_rng(seed)
    exact = lambda x: _objective(x, basis, K, r, f, sign)
    best_val, best_x, history = np.inf, None, []
    for _ in range(restarts):
        x = rng.normal(size=2 * K * r)
        for eps in list(smoothing) + [None]:
            if eps is None:
                fun = exact
            else:
                fun = lambda y, eps=eps: _objective(y, basis, K, r, lambda s: _SMOOTH[f](s, eps), sign)
            x = minimize(lambda y: _value_and_grad(fun, y), x, jac=True, method="L-BFGS-B",
                         options={"maxiter": iterations}).x
        val = float(exact(x))
        history.append(sign * val)
        if val < best_val:
            best_val, best_x = val, x
        if mode == "minimize" and best_val < 1e-12:
            break
    sub, p = _realization(best_x, basis, K, r)
    keep = p > 1e-300
    states = sub[keep] / np.sqrt(p[keep])[:, None]
    return RoofEstimate(sign * best_val, p[keep], states, mode, len(history), iterations, history)


def ghz_w_mixture(p):
    g, w = ghz_state(3), w_state(3)
    return p * np.outer(g, g.conj()) + (1 - p) * np.outer(w, w.conj())


@dataclass(frozen=True)
class GhzWRow:
    p: float
    tau1: float
    C_roof: float
    tau3_roof: float


def ghz_w_scan(p_grid, K=6, restarts=8, iterations=200, seed=0):
    """Roofs of the pairwise concurrence and the three-tangle along p GHZ + (1-p) W."""
    rows = []
    for p in p_grid:
        if not 0 <= p <= 1:
            raise ValueError("mixing parameter outside [0, 1]")
        rho = ghz_w_mixture(p)
        tau1 = one_tangle(partial_trace(rho, [0]))
        rho_ab = partial_trace(rho, [0, 1])
        c_roof = convex_roof_estimate(rho_ab, "concurrence", restarts=restarts,
                                      iterations=iterations, seed=seed).value
        t_roof = convex_roof_estimate(rho, "tau3", K=K, restarts=restarts,
                                      iterations=iterations, seed=seed).value
        rows.append(GhzWRow(float(p), tau1, c_roof, t_roof))
    return rows
