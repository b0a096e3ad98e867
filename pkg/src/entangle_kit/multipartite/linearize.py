"""Translation of antilinear invariants into linear (measurable) correlators.

For an antilinear operator ``O C`` acting on ``c`` copies of every qubit,

    |<psi*|^{(x)c} O |psi>^{(x)c}|^2 = <psi|^{(x)2c} L[O] |psi>^{(x)2c}

with ``L[O]`` a product over qubits of local tensors in the Pauli basis,

    L_{mu, nu} = 4^{-c} s_nu tr(O sigma_mu O^* sigma_nu),

where ``s`` flips the sign of every sigma_y factor (the transpose of a
Pauli word).  For ``O = sigma_y`` this is half the Minkowski metric.
"""

import itertools
import string
from dataclasses import dataclass

import numpy as np

from ..states import PAULI, as_state, num_qubits, pauli_tensor
from .invariants import METRIC

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])

# the H and J blocks exactly as printed for the two-copy comb
PRINTED_H = np.array([[-2, 0, 0, -2], [0, 0, 0, 0], [0, 0, 0, 0], [-2, 0, 0, -2]], dtype=float)
PRINTED_J = np.array([[2, 0, 0, 2], [0, 1, 1, 0], [0, 1, 1, 0], [2, 0, 0, 2]], dtype=float)

_TRANSPOSE_SIGN = np.array([1.0, 1.0, -1.0, 1.0])

COMB_Y = PAULI[2]
COMB_2 = sum(METRIC[m] * np.kron(PAULI[m], PAULI[m]) for m in range(4))


def printed_G():
    """G_{klmn} = d(k+l,3) d(m+n,3) H_mn + d(k,m) d(l,n) J_mn, as printed."""
    g = np.zeros((4,) * 4)
    for k, l, m, n in itertools.product(range(4), repeat=4):
        g[k, l, m, n] = (k + l == 3) * (m + n == 3) * PRINTED_H[m, n] + (k == m) * (l == n) * PRINTED_J[m, n]
    return g


def _word_op(word):
    out = np.ones((1, 1), dtype=np.complex128)
    for w in word:
        out = np.kron(out, PAULI[w])
    return out


def local_linear_tensor(op, copies):
    """Pauli-basis tensor L[mu_1..mu_c, nu_1..nu_c] for one qubit's antilinear factor."""
    out = np.zeros((4,) * (2 * copies))
    for idx in itertools.product(range(4), repeat=2 * copies):
        mu, nu = idx[:copies], idx[copies:]
        sign = np.prod(_TRANSPOSE_SIGN[list(nu)])
        val = np.trace(op @ _word_op(mu) @ op.conj() @ _word_op(nu))
        out[idx] = sign * val.real / 4 ** copies
    return out


@dataclass(frozen=True)
class LinearTranslation:
    """Local factors (one per qubit) of the linear operator on 2c copies."""

    spec: str
    copies: int
    local_ops: tuple      # antilinear factor per qubit, acting on c copies
    tensors: tuple        # matching linear tensors

    def antilinear_value(self, psi):
        """|<psi*|^{(x)c} O |psi>^{(x)c}|^2 by direct evaluation."""
        psi = as_state(psi)
        n = num_qubits(psi.size)
        c = self.copies
        big = np.ones(1, dtype=np.complex128)
        for _ in range(c):
            big = np.kron(big, psi)
        # reorder from (copy, qubit) to (qubit, copy) so each local op acts on a block
        t = big.reshape((2,) * (c * n))
        order = [cp * n + q for q in range(n) for cp in range(c)]
        vec = t.transpose(order).reshape(-1)
        op = np.ones((1, 1), dtype=np.complex128)
        for o in self.local_ops:
            op = np.kron(op, o)
        return float(abs(vec @ op @ vec) ** 2)

    def linear_value(self, psi):
        """<psi|^{(x)2c} L |psi>^{(x)2c} from Pauli expectations of psi alone."""
        psi = as_state(psi)
        n = num_qubits(psi.size)
        r = pauli_tensor(psi)
        letters = iter(string.ascii_letters)
        copies = 2 * self.copies
        # idx[k][q]: Pauli index of copy k on qubit q
        idx = [[next(letters) for _ in range(n)] for _ in range(copies)]
        terms = ["".join(row) for row in idx]
        terms += ["".join(idx[k][q] for k in range(copies)) for q in range(n)]
        expr = ",".join(terms) + "->"
        return float(np.einsum(expr, *([r] * copies), *self.tensors, optimize=True))


def antilinear_to_linear(word_spec):
    """Build the linear counterpart of a product of combs.

    ``word_spec`` has one letter per qubit: ``'y'`` for the single-copy comb
    sigma_y, ``'c'`` for the two-copy comb sigma_mu . sigma^mu.  When any
    ``'c'`` is present every qubit lives on two copies and ``'y'`` becomes
    sigma_y . sigma_y.
    """
    if not word_spec or set(word_spec) - {"y", "c"}:
        raise ValueError("word spec must be a non-empty string over {'y', 'c'}")
    copies = 2 if "c" in word_spec else 1
    ops = []
    for letter in word_spec:
        if letter == "c":
            ops.append(COMB_2)
        else:
            ops.append(COMB_Y if copies == 1 else np.kron(COMB_Y, COMB_Y))
    cache = {}
    tensors = []
    for letter in word_spec:
        if letter not in cache:
            cache[letter] = local_linear_tensor(ops[word_spec.index(letter)], copies)
        tensors.append(cache[letter])
    return LinearTranslation(word_spec, copies, tuple(ops), tuple(tensors))
