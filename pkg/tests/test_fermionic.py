import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from entangle_kit.fermionic import (
    CONJUGATION,
    FockState,
    antisymmetrize,
    boson_schmidt,
    dual,
    entanglement_of_particles,
    fermionic_concurrence,
    fermionic_concurrence_dual,
    fermionic_concurrence_mixed,
    omega_to_vector,
    pfaffian,
    pfaffian_by_definition,
    pfaffian_minor_rank,
    slater_normal_form,
    slater_rank_one_test,
    vector_to_omega,
)
from entangle_kit.states import SIGMA_Y

seeds = st.integers(0, 2**32 - 1)


def random_antisymmetric(dim, seed, complex_=True):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim))
    if complex_:
        a = a + 1j * rng.normal(size=(dim, dim))
    return a - a.T


def random_omega(seed):
    om = random_antisymmetric(4, seed)
    return om / np.sqrt(2 * np.trace(om.conj().T @ om).real)


def unitary(dim, seed):
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / abs(np.diag(r)))


@given(seeds, st.sampled_from([2, 4, 6, 8, 10, 12]))
def test_pfaffian_squared_is_determinant(seed, dim):
    a = random_antisymmetric(dim, seed)
    assert pfaffian(a) ** 2 == pytest.approx(np.linalg.det(a), rel=1e-9)


@given(seeds, st.sampled_from([2, 4, 6]))
def test_pfaffian_matches_definition(seed, dim):
    a = random_antisymmetric(dim, seed)
    assert pfaffian(a) == pytest.approx(pfaffian_by_definition(a), rel=1e-10)


def test_pfaffian_small_cases():
    assert pfaffian(np.array([[0, 2.0], [-2.0, 0]])) == pytest.approx(2)
    with pytest.raises(ValueError):
        pfaffian(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        pfaffian(np.ones((2, 2)))


@given(seeds)
def test_pfaffian_congruence(seed):
    a = random_antisymmetric(6, seed)
    b = np.random.default_rng(seed).normal(size=(6, 6))
    assert pfaffian(b @ a @ b.T) == pytest.approx(np.linalg.det(b) * pfaffian(a), rel=1e-8)


@given(seeds)
def test_concurrence_forms_agree(seed):
    om = random_omega(seed)
    c = fermionic_concurrence(om)
    assert 0 <= c <= 1
    assert fermionic_concurrence_dual(om) == pytest.approx(c, abs=1e-10)
    rho = np.outer(omega_to_vector(om), omega_to_vector(om).conj())
    assert fermionic_concurrence_mixed(rho) == pytest.approx(c, abs=1e-7)


@given(seeds)
def test_concurrence_is_unitary_covariant(seed):
    om = random_omega(seed)
    u = unitary(4, seed + 1)
    assert fermionic_concurrence(u @ om @ u.T) == pytest.approx(fermionic_concurrence(om), abs=1e-10)


def test_vector_round_trip():
    om = random_omega(7)
    v = omega_to_vector(om)
    assert np.linalg.norm(v) == pytest.approx(1)
    assert np.allclose(vector_to_omega(v), om)


def test_conjugation_center_block_is_yy():
    assert np.allclose(CONJUGATION[1:5, 1:5], np.kron(SIGMA_Y, SIGMA_Y))


def test_slater_determinant_has_zero_concurrence():
    om = np.zeros((4, 4))
    om[0, 1], om[1, 0] = 0.5, -0.5
    assert fermionic_concurrence(om) == pytest.approx(0)
    assert fermionic_concurrence(dual(om)) == pytest.approx(0)


def test_maximally_entangled_pair():
    om = np.zeros((4, 4))
    om[0, 3], om[3, 0] = 0.5 / np.sqrt(2), -0.5 / np.sqrt(2)
    om[1, 2], om[2, 1] = 0.5 / np.sqrt(2), -0.5 / np.sqrt(2)
    assert fermionic_concurrence(om) == pytest.approx(1)


@given(seeds, st.sampled_from([4, 5, 6, 8]))
def test_normal_form(seed, dim):
    om = random_antisymmetric(dim, seed)
    nf = slater_normal_form(om)
    assert np.allclose(nf.U @ nf.U.conj().T, np.eye(dim), atol=1e-10)
    assert np.allclose(nf.U @ om @ nf.U.T, nf.blocks(dim), atol=1e-9)
    assert np.all(np.diff(nf.z) <= 1e-12)
    assert nf.rank == dim // 2 == pfaffian_minor_rank(om)


def test_rank_one_two_fermions():
    rng = np.random.default_rng(3)
    a, b = rng.normal(size=6), rng.normal(size=6)
    om = np.outer(a, b) - np.outer(b, a)
    assert slater_normal_form(om).rank == 1
    assert pfaffian_minor_rank(om) == 1
    assert slater_rank_one_test(om)


def test_rank_one_three_fermions():
    rng = np.random.default_rng(4)
    vs = [rng.normal(size=6) for _ in range(3)]
    assert slater_rank_one_test(antisymmetrize(*vs))
    e = np.eye(6)
    ent = antisymmetrize(e[0], e[1], e[2]) + antisymmetrize(e[3], e[4], e[5])
    assert not slater_rank_one_test(ent)


def test_boson_schmidt():
    assert boson_schmidt(np.diag([1.0, 0, 0])).reduced_rank == 1
    # |1>|2> + |2>|1> is a symmetrized product, not entangled
    sym = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)
    res = boson_schmidt(sym)
    assert res.multiplicities == (2,) and not res.entangled
    assert boson_schmidt(np.diag([0.8, 0.6, 0])).entangled
    with pytest.raises(ValueError):
        boson_schmidt(np.array([[0, 1], [0, 0]]))


def test_particles_single_fermion_split_between_sites():
    # one fermion in (a + b)/sqrt2: one ebit of mode entanglement, none of particles
    st_ = FockState.from_occupations(2, {(0,): 1 / np.sqrt(2), (1,): 1 / np.sqrt(2)})
    assert entanglement_of_particles(st_, [0]) == pytest.approx(0, abs=1e-12)


def test_particles_two_site_singlet():
    # modes: 0 = a up, 1 = a down, 2 = b up, 3 = b down
    s = 1 / np.sqrt(2)
    singlet = FockState.from_occupations(4, {(0, 3): s, (1, 2): -s})
    assert entanglement_of_particles(singlet, [0, 1]) == pytest.approx(1)


def test_fock_state_checks():
    with pytest.raises(ValueError):
        FockState.from_occupations(2, {(0, 0): 1})
    mixed_n = FockState.from_occupations(2, {(0,): 1, (0, 1): 1})
    with pytest.raises(ValueError):
        mixed_n.particle_number


def test_creation_order_sign():
    a = FockState.from_occupations(3, {(0, 2): 1}).amplitudes
    b = FockState.from_occupations(3, {(2, 0): 1}).amplitudes
    assert np.allclose(a, -b)


def test_pfaffian_definition_sum_size():
    # (2m - 1)!! terms for 2m x 2m
    a = random_antisymmetric(8, 1, complex_=False)
    assert pfaffian_by_definition(a) == pytest.approx(pfaffian(a), rel=1e-10)
    assert len(list(itertools.permutations(range(3)))) == 6
