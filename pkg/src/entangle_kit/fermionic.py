"""Entanglement of indistinguishable particles.

Two-fermion states are written ``|omega> = sum_ij omega_ij f_i^+ f_j^+ |0>``
with antisymmetric ``omega`` and ``tr(omega^+ omega) = 1/2``.  For four
modes (two sites with spin) the 6-dim basis is ``|1,2>, |1,3>, |1,4>,
|2,3>, |2,4>, |3,4>`` and the amplitude of ``|i,j>`` (i < j) is
``2 omega_ij``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .bipartite import shannon_bits

PAIR_ORDER = tuple(itertools.combinations(range(4), 2))

# conjugation for the two-fermion space, to be combined with complex conjugation
CONJUGATION = np.array([
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, -1, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
], dtype=float)


def _antisymmetric(omega, tol=1e-12):
    omega = np.asarray(omega, dtype=np.complex128)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise ValueError("omega must be a square matrix")
    scale = max(1.0, np.abs(omega).max())
    if np.abs(omega + omega.T).max() > tol * scale:
        raise ValueError("omega is not antisymmetric")
    return omega


def _normalized(omega, tol=1e-10):
    norm = np.trace(omega.conj().T @ omega).real
    if abs(norm - 0.5) > tol:
        raise ValueError(f"omega must satisfy tr(omega^+ omega) = 1/2, got {norm:.3e}")
    return omega


def pfaffian(omega):
    """Pfaffian by antisymmetric Gaussian elimination with pivoting."""
    a = _antisymmetric(omega).copy()
    n = a.shape[0]
    if n % 2:
        raise ValueError("Pfaffian needs an even-dimensional matrix")
    result = 1.0 + 0j
    for k in range(0, n - 1, 2):
        # bring the largest entry of column k (below the diagonal) to row k+1
        p = k + 1 + int(np.argmax(np.abs(a[k + 1:, k])))
        if p != k + 1:
            a[[k + 1, p]] = a[[p, k + 1]]
            a[:, [k + 1, p]] = a[:, [p, k + 1]]
            result = -result
        pivot = a[k, k + 1]
        if pivot == 0:
            return 0j
        result *= pivot
        if k + 2 < n:
            tau = a[k, k + 2:] / pivot
            # a[i, j] -= tau_i a[k+1, j] - tau_j a[k+1, i], keeps antisymmetry
            u = a[k + 1, k + 2:]
            a[k + 2:, k + 2:] -= np.outer(tau, u) - np.outer(u, tau)
    return complex(result)


def pfaffian_by_definition(omega):
    """Sum over perfect matchings; exponential cost, kept as a reference."""
    a = _antisymmetric(omega)
    n = a.shape[0]
    if n % 2:
        raise ValueError("Pfaffian needs an even-dimensional matrix")

    def rec(idx):
        if not idx:
            return 1.0 + 0j
        first, rest = idx[0], idx[1:]
        total = 0j
        for pos, j in enumerate(rest):
            total += (-1) ** pos * a[first, j] * rec(rest[:pos] + rest[pos + 1:])
        return total

    return complex(rec(tuple(range(n))))


def omega_to_vector(omega):
    """6 amplitudes of a four-mode two-fermion state in the pair basis."""
    omega = _antisymmetric(omega)
    if omega.shape != (4, 4):
        raise ValueError("the pair basis is defined for four modes")
    return np.array([2 * omega[i, j] for i, j in PAIR_ORDER])


def vector_to_omega(psi):
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (6,):
        raise ValueError("expected six pair amplitudes")
    omega = np.zeros((4, 4), dtype=np.complex128)
    for (i, j), amp in zip(PAIR_ORDER, psi):
        omega[i, j], omega[j, i] = amp / 2, -amp / 2
    return omega


def dual(omega):
    """omega~_ij = 1/2 eps^{ijkl} omega*_kl."""
    omega = _antisymmetric(omega)
    if omega.shape != (4, 4):
        raise ValueError("the dual is defined for four modes")
    out = np.zeros((4, 4), dtype=np.complex128)
    for perm in itertools.permutations(range(4)):
        sign = np.linalg.det(np.eye(4)[list(perm)])
        i, j, k, l = perm
        out[i, j] += 0.5 * sign * np.conj(omega[k, l])
    return out


def fermionic_concurrence(omega):
    """8 |pf omega| for two fermions on four modes."""
    omega = _normalized(_antisymmetric(omega))
    if omega.shape != (4, 4):
        raise ValueError("fermionic concurrence needs a 4x4 omega")
    return float(min(1.0, 8 * abs(pfaffian(omega))))


def fermionic_concurrence_dual(omega):
    """|<omega~|omega>|, with <a|b> = 2 tr(a^+ b) for pair amplitudes."""
    omega = _normalized(_antisymmetric(omega))
    return float(abs(2 * np.trace(dual(omega).conj().T @ omega)))


def fermionic_concurrence_mixed(rho):
    """max(0, l1 - l2 - ... - l6) from the spectrum of rho D rho* D."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (6, 6):
        raise ValueError("two-fermion density matrix must be 6x6")
    d = CONJUGATION
    ev = np.linalg.eigvals(rho @ d @ rho.conj() @ d).real
    lam = -np.sort(-np.sqrt(np.where(ev < 1e-12, 0.0, ev)))
    return float(max(0.0, lam[0] - lam[1:].sum()))


@dataclass(frozen=True)
class SlaterNormalForm:
    z: np.ndarray          # pair amplitudes, non-increasing, real and non-negative
    rank: int
    U: np.ndarray          # unitary with U omega U^T block diagonal

    def blocks(self, dim):
        out = np.zeros((dim, dim), dtype=np.complex128)
        for j, z in enumerate(self.z):
            out[2 * j, 2 * j + 1], out[2 * j + 1, 2 * j] = z, -z
        return out


def slater_normal_form(omega, tol=1e-10):
    """Unitary congruence to diag(Z_1, ..., Z_r, 0) with Z_j = [[0, z_j], [-z_j, 0]].

    Each step takes a top singular vector ``a`` of the remainder, pairs it
    with ``b = -omega a* / z`` and deflates ``z (a b^T - b a^T)``.
    """
    omega = _antisymmetric(omega, tol=1e-10)
    dim = omega.shape[0]
    rest = omega.copy()
    cols, zs = [], []
    for _ in range(dim // 2):
        w, v = np.linalg.eigh(rest @ rest.conj().T)
        z = np.sqrt(max(w[-1], 0.0))
        if z <= tol:
            break
        a = v[:, -1]
        b = -(rest @ a.conj()) / z
        rest = rest - z * (np.outer(a, b) - np.outer(b, a))
        cols += [a, b]
        zs.append(z)
    q = np.array(cols).T if cols else np.zeros((dim, 0), dtype=np.complex128)
    if q.shape[1] < dim:
        # orthonormal completion
        u, _, _ = np.linalg.svd(np.eye(dim) - q @ q.conj().T)
        q = np.hstack([q, u[:, :dim - q.shape[1]]])
    zs = np.array(zs)
    return SlaterNormalForm(zs, int(np.count_nonzero(zs > tol)), q.conj().T)


def pfaffian_minor_rank(omega, tol=1e-10):
    """Slater rank from the largest non-vanishing principal Pfaffian minor."""
    omega = _antisymmetric(omega, tol=1e-10)
    dim = omega.shape[0]
    scale = max(np.abs(omega).max(), 1e-300)
    rank = 0
    for r in range(1, dim // 2 + 1):
        if any(abs(pfaffian(omega[np.ix_(c, c)])) > tol * scale ** r
               for c in itertools.combinations(range(dim), 2 * r)):
            rank = r
        else:
            break
    return rank


def _check_antisymmetric_tensor(psi, tol=1e-10):
    psi = np.asarray(psi, dtype=np.complex128)
    scale = max(np.abs(psi).max(), 1e-300)
    for k in range(psi.ndim - 1):
        axes = list(range(psi.ndim))
        axes[k], axes[k + 1] = axes[k + 1], axes[k]
        if np.abs(psi + psi.transpose(axes)).max() > tol * scale:
            raise ValueError("amplitude tensor is not antisymmetric")
    return psi


def slater_rank_one_test(psi, trials=8, seed=0, tol=1e-10):
    """Rank-one test for an M-fermion state by random contraction to two fermions."""
    psi = _check_antisymmetric_tensor(psi)
    m = psi.ndim
    if m < 2:
        raise ValueError("need at least two fermions")
    rng = np.random.default_rng(seed)
    for _ in range(trials if m > 2 else 1):
        omega = psi
        for _ in range(m - 2):
            a = rng.normal(size=psi.shape[0]) + 1j * rng.normal(size=psi.shape[0])
            omega = np.tensordot(omega, a / np.linalg.norm(a), axes=([-1], [0]))
        norm = np.linalg.norm(omega)
        if norm < tol:
            continue
        omega = omega / norm
        for c in itertools.combinations(range(omega.shape[0]), 4):
            if abs(pfaffian(omega[np.ix_(c, c)])) > tol:
                return False
    return True


def antisymmetrize(*modes):
    """Antisymmetric amplitude tensor of f^+(v_1) ... f^+(v_M)|0>, unnormalized."""
    vecs = [np.asarray(v, dtype=np.complex128) for v in modes]
    m, dim = len(vecs), vecs[0].size
    out = np.zeros((dim,) * m, dtype=np.complex128)
    for perm in itertools.permutations(range(m)):
        sign = np.linalg.det(np.eye(m)[list(perm)])
        term = vecs[perm[0]]
        for p in perm[1:]:
            term = np.multiply.outer(term, vecs[p])
        out += sign * term
    return out


@dataclass(frozen=True)
class BosonSchmidt:
    coefficients: np.ndarray
    multiplicities: tuple
    reduced_rank: int
    entangled: bool


def boson_schmidt(omega, tol=1e-8):
    """Schmidt data of a two-boson state with symmetric amplitude matrix.

    The coefficients are the Takagi values (singular values of a symmetric
    matrix).  A degenerate pair can be rewritten as a symmetrized product of
    two orthogonal states, so every group of g equal coefficients counts as
    ceil(g / 2) in the reduced rank.
    """
    omega = np.asarray(omega, dtype=np.complex128)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise ValueError("omega must be a square matrix")
    if np.abs(omega - omega.T).max() > 1e-10 * max(1.0, np.abs(omega).max()):
        raise ValueError("boson amplitudes must be symmetric")
    s = np.linalg.svd(omega, compute_uv=False)
    s = s[s > tol * max(s[0], 1e-300)] if s.size and s[0] > 0 else s[:0]
    s = s / np.linalg.norm(s)
    groups = []
    for val in s:
        if groups and abs(groups[-1][0] - val) <= tol:
            groups[-1][1] += 1
        else:
            groups.append([val, 1])
    mult = tuple(g for _, g in groups)
    reduced = sum(-(-g // 2) for g in mult)
    return BosonSchmidt(s, mult, reduced, reduced > 1)


@dataclass(frozen=True)
class FockState:
    """Fermionic Fock state over ``n_modes`` modes, mode 0 the most significant bit.

    Amplitude ``k`` multiplies ``f^+_{m_1} f^+_{m_2} ... |0>`` with the occupied
    modes of ``k`` in increasing order.
    """

    amplitudes: np.ndarray
    n_modes: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2 ** self.n_modes,):
            raise ValueError("amplitude vector length must be 2**n_modes")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_occupations(cls, n_modes, terms):
        """``terms``: {tuple of occupied modes (any order): amplitude}."""
        amps = np.zeros(2 ** n_modes, dtype=np.complex128)
        for modes, amp in terms.items():
            modes = list(modes)
            if len(set(modes)) != len(modes):
                raise ValueError("Pauli exclusion: repeated mode")
            # sort the creation operators, counting transpositions
            inversions = sum(1 for i in range(len(modes)) for j in range(i + 1, len(modes))
                             if modes[i] > modes[j])
            idx = sum(1 << (n_modes - 1 - m) for m in modes)
            amps[idx] += (-1) ** inversions * amp
        return cls(amps, n_modes)

    @property
    def particle_number(self):
        occ = [bin(k).count("1") for k in np.flatnonzero(np.abs(self.amplitudes) > 1e-14)]
        if not occ:
            raise ValueError("zero state")
        if len(set(occ)) != 1:
            raise ValueError("state does not have a fixed particle number")
        return occ[0]


def _entropy_measure(matrix):
    s = np.linalg.svd(matrix, compute_uv=False)
    return shannon_bits(s ** 2)


PARTICLE_MEASURES = {"entropy": _entropy_measure}


def entanglement_of_particles(state, part, measure="entropy"):
    """Sum over n_A of p_n times the entanglement of the (n_A, N - n_A) projection.

    ``measure`` receives the normalized coefficient matrix between the Fock
    spaces of the modes in ``part`` and of the rest.
    """
    f = PARTICLE_MEASURES[measure] if isinstance(measure, str) else measure
    amps = state.amplitudes
    m = state.n_modes
    norm = np.vdot(amps, amps).real
    if norm < 1e-24:
        raise ValueError("zero-norm state")
    state.particle_number
    part = sorted(int(k) for k in part)
    if not part or part[-1] >= m or part[0] < 0 or len(part) == m:
        raise ValueError("partition must be a proper subset of the modes")
    rest = [k for k in range(m) if k not in part]
    na, nb = len(part), len(rest)
    sectors = {}
    for k in np.flatnonzero(np.abs(amps) > 0):
        bits = [(k >> (m - 1 - q)) & 1 for q in range(m)]
        occ_a = [q for q in part if bits[q]]
        occ_b = [q for q in rest if bits[q]]
        # moving A operators in front of B operators
        sign = (-1) ** sum(1 for b in occ_b for a in occ_a if b < a)
        ia = sum(bits[q] << (na - 1 - i) for i, q in enumerate(part))
        ib = sum(bits[q] << (nb - 1 - i) for i, q in enumerate(rest))
        mat = sectors.setdefault(len(occ_a), np.zeros((2 ** na, 2 ** nb), dtype=np.complex128))
        mat[ia, ib] += sign * amps[k] / np.sqrt(norm)
    total = 0.0
    weights = {}
    for n_a, mat in sorted(sectors.items()):
        p = np.vdot(mat, mat).real
        weights[n_a] = p
        if p > 1e-15:
            total += p * f(mat / np.sqrt(p))
    assert abs(sum(weights.values()) - 1) < 1e-12
    return float(total)
