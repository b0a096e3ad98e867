import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entangle_kit.bipartite import concurrence_mixed
from entangle_kit.multipartite import (
    MINKOWSKI,
    antilinear_to_linear,
    bipartitions,
    convex_roof_estimate,
    filters_F4,
    geometric_measure,
    ghz_w_mixture,
    local_linear_tensor,
    localizable_entanglement,
    n_tangle,
    purity_distribution,
    residual_tangle,
    three_tangle,
)
from entangle_kit.multipartite.linearize import COMB_2, COMB_Y
from entangle_kit.states import (
    basis_state,
    bell_state,
    from_terms,
    ghz_state,
    product_state,
    random_density,
    random_local_unitary,
    random_state,
    to_density,
    w_state,
)

seeds = st.integers(0, 2**32 - 1)


def test_three_tangle_reference_states():
    assert three_tangle(ghz_state(3)) == pytest.approx(1)
    assert three_tangle(w_state(3)) == pytest.approx(0, abs=1e-12)
    assert three_tangle(product_state([1, 0], [1, 1], [0, 1])) == pytest.approx(0, abs=1e-12)


@given(seeds)
def test_three_tangle_is_ckw_residual(seed):
    psi = random_state(3, seed)
    t = three_tangle(psi)
    for i in range(3):
        assert residual_tangle(psi, i) == pytest.approx(t, abs=1e-8)


@given(seeds)
def test_invariants_under_local_unitaries(seed):
    psi = random_state(4, seed)
    u = random_local_unitary(4, seed + 1)
    a, b = filters_F4(psi).moduli, filters_F4(u @ psi).moduli
    assert np.allclose(a, b, atol=1e-10)
    assert n_tangle(u @ psi) == pytest.approx(n_tangle(psi), abs=1e-10)


def test_filters_vanish_on_products_and_w():
    assert np.allclose(filters_F4(basis_state("0110")).moduli, 0, atol=1e-12)
    assert np.allclose(filters_F4(w_state(4)).moduli, 0, atol=1e-12)


def test_n_tangle():
    assert n_tangle(ghz_state(4)) == pytest.approx(1)
    assert n_tangle(bell_state()) == pytest.approx(1)
    with pytest.raises(ValueError):
        n_tangle(ghz_state(3))


def test_bipartitions_count():
    assert len(bipartitions(4)) == 7
    assert len(bipartitions(5)) == 15


def test_purity_distribution_ghz():
    d = purity_distribution(ghz_state(4))
    assert all(v == pytest.approx(0.5) for _, v in d.values)
    assert d.q_measure == pytest.approx(1)


def test_geometric_measure():
    assert geometric_measure(basis_state("010")) == pytest.approx(0, abs=1e-10)
    assert geometric_measure(ghz_state(3)) == pytest.approx(1, abs=1e-8)
    assert geometric_measure(w_state(3)) == pytest.approx(np.log2(9 / 4), abs=1e-6)


def test_localizable_entanglement_ghz():
    res = localizable_entanglement(ghz_state(3), 0, 2)
    assert res.E_loc == pytest.approx(1, abs=1e-6)
    assert res.E_loc >= res.lower_bound - 1e-9
    with pytest.raises(ValueError):
        localizable_entanglement(ghz_state(3), 1, 1)


@given(seeds)
@settings(max_examples=20)
def test_single_qubit_comb_vanishes(seed):
    psi = random_state(1, seed)
    assert abs(psi @ COMB_Y @ psi) < 1e-12
    pair = np.kron(psi, psi)
    assert abs(pair @ COMB_2 @ pair) < 1e-12


def test_sigma_y_tensor_is_minkowski():
    assert np.allclose(local_linear_tensor(COMB_Y, 1), -0.5 * MINKOWSKI, atol=1e-14)


@given(seeds, st.sampled_from(["y", "yy", "c", "yc", "cc"]))
@settings(max_examples=20)
def test_linear_route_equals_antilinear(seed, spec):
    psi = random_state(len(spec), seed)
    tr = antilinear_to_linear(spec)
    assert tr.linear_value(psi) == pytest.approx(tr.antilinear_value(psi), abs=1e-10)


def test_linear_route_recovers_tangles():
    assert antilinear_to_linear("yy").linear_value(bell_state()) == pytest.approx(1)
    assert antilinear_to_linear("yy").linear_value(basis_state("01")) == pytest.approx(0, abs=1e-12)


def test_bad_word_spec():
    with pytest.raises(ValueError):
        antilinear_to_linear("yx")


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_roof_matches_wootters(seed):
    rho = random_density(2, seed)
    est = convex_roof_estimate(rho, restarts=16, iterations=300)
    assert est.value == pytest.approx(concurrence_mixed(rho).C, abs=1e-4)
    assert np.allclose(est.reconstruct(), rho, atol=1e-10)


def test_roof_of_pure_state_is_its_value():
    psi = random_state(2, 5)
    est = convex_roof_estimate(to_density(psi), restarts=2)
    assert est.value == pytest.approx(concurrence_mixed(to_density(psi)).C, abs=1e-8)


def test_assistance_bounds_roof():
    rho = random_density(2, 3)
    low = convex_roof_estimate(rho, restarts=4).value
    high = convex_roof_estimate(rho, mode="maximize", restarts=4).value
    assert high >= low - 1e-8


def test_ghz_w_mixture_endpoints():
    assert np.allclose(ghz_w_mixture(1), to_density(ghz_state(3)))
    assert np.trace(ghz_w_mixture(0.4)).real == pytest.approx(1)


def test_roof_rejects_bad_mode():
    with pytest.raises(ValueError):
        convex_roof_estimate(np.eye(4) / 4, mode="sideways")


def test_from_terms_normalizes():
    assert np.linalg.norm(from_terms({"00": 3, "11": 4})) == pytest.approx(1)
