"""Pure states, density matrices and the two expectation-value primitives.

Conventions used everywhere in the package:

* a state of ``n`` qubits is a complex vector of length ``2**n``;
* qubit 0 is the most significant bit of the basis label, so
  ``psi.reshape((2,) * n)`` has qubit ``k`` on axis ``k``;
* ``|0>`` is the ``sigma_z = +1`` (spin up) eigenstate;
* Pauli words are sequences over ``{0, 1, 2, 3}`` = ``(1, x, y, z)``.

Arrays are never modified in place; all functions return new arrays.
"""

import numpy as np

from .errors import CapacityError

MAX_QUBITS = 16

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

SIGMA_Y = PAULI[2]


def num_qubits(dim):
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise CapacityError(f"{n} qubits exceeds the dense-storage bound of {MAX_QUBITS}")
    return n


def as_state(psi, tol=1e-10):
    """Validate a pure state vector and return it as a complex array."""
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.ndim != 1:
        raise ValueError("a pure state must be a 1d amplitude vector")
    num_qubits(psi.size)
    norm = np.vdot(psi, psi).real
    if abs(norm - 1) > tol:
        raise ValueError(f"state is not normalized (norm^2 = {norm:.3e})")
    return psi


def as_density(rho, tol=1e-10):
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("a density matrix must be square")
    num_qubits(rho.shape[0])
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1) > tol:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def projector(psi):
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def to_density(state):
    """Accept either a state vector or a density matrix."""
    state = np.asarray(state, dtype=np.complex128)
    if state.ndim == 1:
        return projector(as_state(state))
    return as_density(state)


def _check_subsystem(keep, n):
    keep = [int(k) for k in keep]
    if not keep:
        raise ValueError("subsystem must be non-empty")
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise ValueError("subsystem indices must be strictly increasing")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"subsystem {keep} out of range for {n} qubits")
    return keep


def tensor_product(a, b):
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def partial_trace(rho, keep):
    """Reduce ``rho`` to the qubits listed in ``keep`` (kept in increasing order)."""
    rho = np.asarray(rho, dtype=np.complex128)
    n = num_qubits(rho.shape[0])
    keep = _check_subsystem(keep, n)
    traced = [k for k in range(n) if k not in keep]
    t = rho.reshape((2,) * (2 * n))
    order = keep + traced + [n + k for k in keep] + [n + k for k in traced]
    t = t.transpose(order).reshape(2 ** len(keep), 2 ** len(traced), 2 ** len(keep), 2 ** len(traced))
    return np.einsum("ajbj->ab", t)


def reduced_density(psi, keep):
    """Partial trace of a pure state, without forming the full projector."""
    psi = np.asarray(psi, dtype=np.complex128)
    n = num_qubits(psi.shape[-1])
    keep = _check_subsystem(keep, n)
    traced = [k for k in range(n) if k not in keep]
    batch = psi.shape[:-1]
    nb = len(batch)
    t = psi.reshape(batch + (2,) * n)
    t = t.transpose(list(range(nb)) + [nb + k for k in keep + traced])
    m = t.reshape(batch + (2 ** len(keep), 2 ** len(traced)))
    return m @ np.swapaxes(m.conj(), -1, -2)


def pauli_operator(word):
    out = np.ones((1, 1), dtype=np.complex128)
    for w in word:
        out = np.kron(out, PAULI[w])
    return out


def _apply_word(psi, word, n):
    """sigma_word |psi> without building the 2^n x 2^n operator."""
    batch = psi.shape[:-1]
    nb = len(batch)
    t = psi.reshape(batch + (2,) * n)
    for k, w in enumerate(word):
        if w:
            t = np.moveaxis(np.tensordot(PAULI[w], t, axes=([1], [nb + k])), 0, nb + k)
    return t.reshape(psi.shape)


def _check_word(word, n):
    word = [int(w) for w in word]
    if len(word) != n:
        raise ValueError(f"Pauli word of length {len(word)} applied to {n} qubits")
    if any(w not in (0, 1, 2, 3) for w in word):
        raise ValueError("Pauli indices must lie in {0, 1, 2, 3}")
    return word


def pauli_expectation(state, word):
    """tr(rho sigma_word) for a state vector or a density matrix."""
    state = np.asarray(state, dtype=np.complex128)
    n = num_qubits(state.shape[0])
    word = _check_word(word, n)
    if state.ndim == 1:
        return complex(np.vdot(state, _apply_word(state, word, n)))
    return complex(np.trace(state @ pauli_operator(word)))


def antilinear_expectation(psi, word):
    """<psi*| sigma_word |psi>, conjugation taken in the sigma_z basis.

    Bilinear in the amplitudes: multiplying ``psi`` by ``exp(i phi)``
    multiplies the result by ``exp(2 i phi)``.
    """
    psi = np.asarray(psi, dtype=np.complex128)
    n = num_qubits(psi.shape[-1])
    word = _check_word(word, n)
    return np.sum(psi * _apply_word(psi, word, n), axis=-1)


def antilinear_tensor(psi):
    """All ``4**n`` antilinear expectations, indexed ``T[mu_0, ..., mu_{n-1}]``.

    Works on a batch of states with shape ``(..., 2**n)``.
    """
    psi = np.asarray(psi, dtype=np.complex128)
    n = num_qubits(psi.shape[-1])
    batch = psi.shape[:-1]
    nb = len(batch)
    m = np.einsum("...i,...j->...ij", psi, psi).reshape(batch + (2,) * (2 * n))
    for k in range(n):
        # remaining axes: batch, a_k..a_{n-1}, b_k..b_{n-1}, mu_0..mu_{k-1}
        m = np.tensordot(m, PAULI, axes=([nb, nb + n - k], [1, 2]))
    return m


def pauli_tensor(psi):
    """All ``4**n`` linear expectations <psi| sigma_word |psi>, real by construction."""
    psi = np.asarray(psi, dtype=np.complex128)
    n = num_qubits(psi.shape[-1])
    m = np.outer(psi.conj(), psi).reshape((2,) * (2 * n))
    for k in range(n):
        m = np.tensordot(m, PAULI, axes=([0, n - k], [1, 2]))
    return m.real


def random_state(n, seed=None):
    """Haar-random pure state of ``n`` qubits (normalized complex Gaussian)."""
    if n <= 0:
        raise ValueError("number of qubits must be positive")
    num_qubits(2 ** n)
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return psi / np.linalg.norm(psi)


def random_density(n, seed=None, rank=None):
    """Random mixed state from a partial trace of a Gaussian purification."""
    rng = np.random.default_rng(seed)
    d = 2 ** n
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_local_unitary(n, seed=None):
    """Tensor product of ``n`` Haar-random single-qubit unitaries."""
    rng = np.random.default_rng(seed)
    u = np.ones((1, 1), dtype=np.complex128)
    for _ in range(n):
        z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / np.sqrt(2)
        q, r = np.linalg.qr(z)
        q = q * (np.diag(r) / np.abs(np.diag(r)))
        u = np.kron(u, q)
    return u


def basis_state(bits):
    """Computational basis state from a bit string such as ``'0110'``."""
    n = len(bits)
    psi = np.zeros(2 ** n, dtype=np.complex128)
    psi[int(bits, 2)] = 1
    return psi


def from_terms(terms):
    """Normalized superposition from ``{'bitstring': amplitude}``."""
    psi = sum(a * basis_state(b) for b, a in terms.items())
    return psi / np.linalg.norm(psi)


def ghz_state(n):
    return from_terms({"0" * n: 1, "1" * n: 1})


def w_state(n):
    return from_terms({"0" * k + "1" + "0" * (n - k - 1): 1 for k in range(n)})


def bell_state(kind="phi+"):
    table = {
        "phi+": {"00": 1, "11": 1},
        "phi-": {"00": 1, "11": -1},
        "psi+": {"01": 1, "10": 1},
        "psi-": {"01": 1, "10": -1},
    }
    return from_terms(table[kind])


def product_state(*singles):
    out = np.ones(1, dtype=np.complex128)
    for s in singles:
        s = np.asarray(s, dtype=np.complex128)
        out = np.kron(out, s / np.linalg.norm(s))
    return out
