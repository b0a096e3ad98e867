import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entangle_kit.errors import DiagnosticError
from entangle_kit.itinerant import (
    entanglement_distance,
    eta_pairing,
    eta_pairing_explicit,
    extended_hubbard_scan,
    fermi_f,
    fermi_gas_two_spin_rdm,
    half_filling_weights,
    hubbard_local_entropy,
    tight_binding_halffilling_check,
)


@pytest.mark.parametrize("d", [2, 3])
def test_fermi_f_limits(d):
    assert fermi_f(0.0, d) == 1.0
    assert fermi_f(1e-9, d) == pytest.approx(1.0)
    assert abs(fermi_f(50.0, d)) < 0.05


@settings(max_examples=30)
@given(st.floats(0.0, 2.0), st.sampled_from([2, 3]))
def test_fermi_gas_state_and_criteria_agree(r, d):
    pair = fermi_gas_two_spin_rdm(r, np.pi, d)
    assert np.trace(pair.rho12).real == pytest.approx(1)
    assert np.linalg.eigvalsh(pair.rho12).min() > -1e-12
    if abs(pair.f ** 2 - 0.5) > 1e-9:
        assert pair.entangled == (not pair.ppt) == (pair.concurrence > 0)


def test_coincident_fermions_form_a_singlet():
    assert fermi_gas_two_spin_rdm(0.0, 1.0, 3).concurrence == pytest.approx(1)


@pytest.mark.parametrize("d", [2, 3])
def test_entanglement_distance_is_the_f_squared_half_point(d):
    r = entanglement_distance(d)
    assert fermi_f(np.pi * r, d) ** 2 == pytest.approx(0.5, abs=1e-9)
    assert fermi_gas_two_spin_rdm(0.99 * r, np.pi, d).entangled
    assert not fermi_gas_two_spin_rdm(1.01 * r, np.pi, d).entangled


def test_fermi_gas_arguments():
    with pytest.raises(ValueError):
        fermi_f(1.0, 1)
    with pytest.raises(ValueError):
        fermi_gas_two_spin_rdm(-1.0, 1.0, 3)


@pytest.mark.parametrize("L, N", [(2, 1), (4, 1), (4, 2), (5, 2), (6, 3)])
def test_eta_closed_form_matches_explicit_state(L, N):
    closed = eta_pairing(L, N)
    explicit = eta_pairing_explicit(L, N)
    assert explicit.O_eta == pytest.approx(closed.O_eta, abs=1e-12)
    assert explicit.concurrence == pytest.approx(closed.C_rescaled, abs=1e-10)


def test_eta_rescaled_concurrence_scales_as_inverse_length():
    prods = [eta_pairing(L, L // 2).C_rescaled * L for L in (10, 100, 1000, 10000)]
    assert np.all(np.diff(prods) < 0)
    assert prods[-1] == pytest.approx(1, abs=1e-3)
    with pytest.raises(ValueError):
        eta_pairing(4, 4)


def test_local_entropy_values():
    assert hubbard_local_entropy(0.25, 0.25, 0.25, 0.25) == pytest.approx(2)
    assert hubbard_local_entropy(0, 0.5, 0.5, 0) == pytest.approx(1)
    assert hubbard_local_entropy(1, 0, 0, 0) == pytest.approx(0)


@pytest.mark.parametrize("U", [0.0, 1.0, 4.0, 10.0])
def test_hubbard_dimer_double_occupancy(U):
    w = half_filling_weights(2, U, 0.0)
    assert w.w == pytest.approx(0.25 * (1 - U / np.sqrt(U ** 2 + 16)), abs=1e-10)
    assert w.z + w.u_plus + w.u_minus + w.w == pytest.approx(1)


def test_hubbard_strong_coupling_freezes_charge():
    w = half_filling_weights(4, 200.0, 0.0)
    assert (w.z, w.w) == pytest.approx((0, 0), abs=1e-3)
    assert w.u_plus == pytest.approx(0.5, abs=1e-3)


def test_hubbard_entropy_surface_peaks_at_free_point():
    U = np.array([-4.0, -1.0, 0.0, 1.0, 4.0])
    s = extended_hubbard_scan(U, [0.0], L=4)[:, 0]
    assert s[2] == pytest.approx(2)
    assert np.argmax(s) == 2
    assert np.allclose(s, s[::-1], atol=1e-9)


def test_hubbard_rejects_odd_length():
    with pytest.raises(ValueError):
        half_filling_weights(3, 1.0, 0.0)


def test_tight_binding_filling_symmetry():
    fill = [k / 12 for k in range(13)]
    rows = tight_binding_halffilling_check(12, fill)
    c = np.array([r.C1 for r in rows])
    assert np.allclose(c, c[::-1], atol=1e-12)
    assert np.argmax(c) == 6
    assert c[0] == pytest.approx(0, abs=1e-12)


def test_tight_binding_requires_even_ring():
    with pytest.raises(ValueError):
        tight_binding_halffilling_check(7, [0.5])
    assert issubclass(DiagnosticError, RuntimeError)
