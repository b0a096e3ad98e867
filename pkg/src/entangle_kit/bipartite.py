"""Bipartite and pairwise-qubit entanglement measures."""

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentCorrelatorError, ValidationError
from .states import (
    SIGMA_Y,
    _check_subsystem,
    as_density,
    as_state,
    num_qubits,
    reduced_density,
)

YY = np.kron(SIGMA_Y, SIGMA_Y)
EIG_CLAMP = 1e-12
ROUNDOFF = 64 * np.finfo(float).eps


def binary_entropy(x):
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    out = np.zeros_like(x)
    inside = (x > 0) & (x < 1)
    xi = x[inside]
    out[inside] = -xi * np.log2(xi) - (1 - xi) * np.log2(1 - xi)
    return out if out.ndim else float(out)


def shannon_bits(p):
    p = np.asarray(p, dtype=float)
    p = p[p > EIG_CLAMP]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho):
    return shannon_bits(np.linalg.eigvalsh(rho))


@dataclass(frozen=True)
class SchmidtData:
    coefficients: np.ndarray
    left: np.ndarray   # columns: orthonormal states of the subsystem
    right: np.ndarray  # columns: orthonormal states of the complement

    @property
    def rank(self):
        return int(np.count_nonzero(self.coefficients > 1e-10))

    def reconstruct(self):
        return np.einsum("k,ak,bk->ab", self.coefficients, self.left, self.right).reshape(-1)


def _bipartite_matrix(psi, part):
    n = num_qubits(psi.size)
    part = _check_subsystem(part, n)
    if len(part) == n:
        raise ValueError("bipartition needs a proper subset of the qubits")
    rest = [k for k in range(n) if k not in part]
    t = psi.reshape((2,) * n).transpose(part + rest)
    return t.reshape(2 ** len(part), 2 ** len(rest))


def schmidt_decompose(psi, part):
    """Schmidt decomposition across ``part | rest``.

    ``reconstruct()`` returns amplitudes in the permuted order ``part + rest``.
    """
    psi = as_state(psi)
    u, s, vh = np.linalg.svd(_bipartite_matrix(psi, part), full_matrices=False)
    return SchmidtData(s, u, vh.T)


def entanglement_entropy(psi, part):
    """Von Neumann entropy (bits) of the reduced state on ``part``."""
    psi = as_state(psi)
    s = np.linalg.svd(_bipartite_matrix(psi, part), compute_uv=False)
    return shannon_bits(s ** 2)


def one_tangle(rho_a):
    rho_a = np.asarray(rho_a, dtype=np.complex128)
    if rho_a.shape != (2, 2):
        raise ValueError("one-tangle needs a single-qubit density matrix")
    return float(np.clip(4 * np.linalg.det(rho_a).real, 0.0, 1.0))


def entropy_from_tangle(tau1):
    return binary_entropy(0.5 * (1 + np.sqrt(np.clip(1 - tau1, 0, 1))))


def _concurrence_pure_batch(psi):
    # |<psi*| sigma_y sigma_y |psi>| for normalized 2-qubit vectors, batched
    return np.abs(2 * (psi[..., 0] * psi[..., 3] - psi[..., 1] * psi[..., 2]))


def concurrence_pure(psi):
    psi = as_state(psi)
    if psi.size != 4:
        raise ValueError("pure-state concurrence is defined for two qubits")
    return float(_concurrence_pure_batch(psi))


def eof_from_concurrence(c):
    """Wootters entanglement of formation (bits) as a function of the concurrence."""
    return binary_entropy(0.5 * (1 + np.sqrt(np.clip(1 - np.asarray(c) ** 2, 0, 1))))


def _psd_sqrt(rho):
    w, v = np.linalg.eigh(rho)
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


def wootters_lambdas(rho):
    """Non-increasing square roots of the spectrum of rho * rho_tilde (batched).

    Taken as singular values of sqrt(rho) sqrt(rho_tilde), which stays
    accurate for eigenvalues far below machine precision squared.
    """
    s = _psd_sqrt(np.asarray(rho, dtype=np.complex128))
    return np.linalg.svd(s @ YY @ s.conj() @ YY, compute_uv=False)


def _wootters_batch(rho):
    lam = wootters_lambdas(rho)
    return np.maximum(0.0, lam[..., 0] - lam[..., 1:].sum(axis=-1))


@dataclass(frozen=True)
class ConcurrenceResult:
    C: float
    EoF: float


def concurrence_mixed(rho):
    """Wootters concurrence and entanglement of formation of a two-qubit state."""
    try:
        rho = as_density(rho)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    if rho.shape != (4, 4):
        raise ValueError("mixed-state concurrence is defined for two qubits")
    c = float(_wootters_batch(rho))
    return ConcurrenceResult(c, float(eof_from_concurrence(c)))


def two_site_rdm(psi, i, j):
    return reduced_density(psi, sorted((i, j)))


def pairwise_concurrences(psi):
    """Symmetric matrix of Wootters concurrences between every pair of qubits."""
    psi = np.asarray(psi, dtype=np.complex128)
    n = num_qubits(psi.size)
    out = np.zeros((n, n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not pairs:
        return out
    rhos = np.array([reduced_density(psi, [i, j]) for i, j in pairs])
    for (i, j), c in zip(pairs, _wootters_batch(rhos)):
        out[i, j] = out[j, i] = c
    return out


def single_site_tangles(psi):
    psi = np.asarray(psi, dtype=np.complex128)
    n = num_qubits(psi.size)
    return np.array([one_tangle(reduced_density(psi, [k])) for k in range(n)])


@dataclass(frozen=True)
class CorrelatorSet:
    """Two-point data in spin-1/2 units (S = sigma / 2).

    ``Mz`` is the magnetization of the first site; ``Mz_j`` that of the
    second (same as ``Mz`` when omitted, as on a translation-invariant chain).
    """

    gxx: float
    gyy: float
    gzz: float
    Mz: float
    Mx: float = 0.0
    My: float = 0.0
    Mz_j: float | None = None


@dataclass(frozen=True)
class TwoSiteResult:
    rho_ij: np.ndarray
    C: float
    CI: float
    CII: float


def two_site_from_correlators(c, tol=1e-10):
    """Two-site density matrix and concurrence from parity-symmetric correlators.

    Basis ``|00>, |01>, |10>, |11>`` with ``|0>`` spin up.  The state is an
    X matrix, so C = 2 max(0, CI, CII) with CI = |rho_23| - sqrt(rho_11 rho_44)
    and CII = |rho_14| - sqrt(rho_22 rho_33).
    """
    mj = c.Mz if c.Mz_j is None else c.Mz_j
    m, dm = (c.Mz + mj) / 2, (c.Mz - mj) / 2
    a = 0.25 + c.gzz + m
    b = 0.25 + c.gzz - m
    x1 = 0.25 - c.gzz + dm
    x2 = 0.25 - c.gzz - dm
    # populations are differences of O(1) numbers; below this they are roundoff
    a, b, x1, x2 = (0.0 if abs(v) < ROUNDOFF else v for v in (a, b, x1, x2))
    z = c.gxx + c.gyy
    cc = c.gxx - c.gyy
    rho = np.array(
        [[a, 0, 0, cc], [0, x1, z, 0], [0, z, x2, 0], [cc, 0, 0, b]], dtype=np.complex128
    )
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise InconsistentCorrelatorError("correlators give a non-positive two-site state")
    ci = abs(z) - np.sqrt(max(a * b, 0.0))
    cii = abs(cc) - np.sqrt(max(x1 * x2, 0.0))
    return TwoSiteResult(rho, 2 * max(0.0, ci, cii), float(ci), float(cii))


def correlators_from_state(psi, i, j):
    """CorrelatorSet for sites i, j of a pure state."""
    rho = two_site_rdm(psi, i, j)
    s = [np.kron(p, p) / 4 for p in (
        np.array([[0, 1], [1, 0]]), SIGMA_Y, np.diag([1, -1]))]
    g = [np.trace(rho @ op).real for op in s]
    r1 = reduced_density(psi, [i])
    r2 = reduced_density(psi, [j])
    return CorrelatorSet(
        gxx=g[0], gyy=g[1], gzz=g[2],
        Mz=0.5 * (r1[0, 0] - r1[1, 1]).real,
        Mx=r1[0, 1].real, My=-r1[0, 1].imag,
        Mz_j=0.5 * (r2[0, 0] - r2[1, 1]).real,
    )


def partial_transpose(rho, part):
    rho = np.asarray(rho, dtype=np.complex128)
    n = num_qubits(rho.shape[0])
    part = _check_subsystem(part, n)
    t = rho.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for k in part:
        axes[k], axes[n + k] = axes[n + k], axes[k]
    return t.transpose(axes).reshape(rho.shape)


@dataclass(frozen=True)
class NegativityResult:
    ppt: bool
    N: float
    EN: float


def negativity_suite(rho, part, tol=1e-10):
    """PPT test, negativity and logarithmic negativity (base 2)."""
    rho = as_density(rho)
    ev = np.linalg.eigvalsh(partial_transpose(rho, part))
    neg = float(-ev[ev < 0].sum()) + 0.0
    return NegativityResult(bool(ev[0] >= -tol), neg, float(np.log2(2 * neg + 1)))


@dataclass(frozen=True)
class WitnessResult:
    value: float
    flagged: bool


def witness_eval(rho, W, tol=1e-12):
    W = np.asarray(W, dtype=np.complex128)
    rho = np.asarray(rho, dtype=np.complex128)
    if W.shape != rho.shape:
        raise ValueError("witness and state dimensions differ")
    if np.abs(W - W.conj().T).max() > tol:
        raise ValueError("witness must be Hermitian")
    value = float(np.trace(rho @ W).real)
    return WitnessResult(value, value > 0)
