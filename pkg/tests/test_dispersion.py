"""Determinant values, spatial exponents and their cross-consistency."""
import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import MHD_MODELS, bounded, model_state_pairs, states, wavevectors
from mhdlab.dispersion import (
    boundary_matrix,
    dispersion_eval,
    lambda_minus,
    lambda_plus,
    normal_velocity_amplitude,
)
from mhdlab.domain import BasicState, ModelKind, Wavevector, alfven_speed, w_pair
from mhdlab.errors import BranchPointError, ResonanceError, UnsupportedModelError

OM = Wavevector(1.0, 0.0)


def complex_s(re_lo=-1.5, re_hi=1.5):
    return st.builds(complex, bounded(re_lo, re_hi), bounded(-1.5, 1.5))


def smooth_point(model, state, omega, s):
    """True when s is comfortably away from the radical's branch structure."""
    if model is ModelKind.CompressibleEuler:
        rad = 1 + (s / state.c_hat) ** 2
    elif model is ModelKind.CompressibleMHD:
        wp, _ = w_pair(state, omega)
        alpha = state.c_hat**2 + alfven_speed(state) ** 2
        beta = state.c_hat**2 * wp * wp / state.rho_hat
        D = alpha * s * s + beta
        if abs(D) <= 0.05 * (alpha * abs(s) ** 2 + beta):
            return False
        rad = 1 + s * s / alpha if beta == 0 else 1 + s**4 / D
    else:
        return True
    rad = complex(rad)
    if abs(rad) < 0.05:
        return False
    # principal-branch cut: conjugation and smoothness arguments fail there
    return not (rad.real < 0 and abs(rad.imag) <= 1e-9 * abs(rad))


# ---------------------------------------------------------------- exponents


def test_flow_side_exponent_closed_forms():
    st0 = BasicState(c_hat=2.0)
    assert lambda_plus(ModelKind.CompressibleEuler, st0, OM, 0.0) == -1.0
    st1 = BasicState(H_plasma=(1.0, 0.0), H_vacuum=(1.0, 0.0))
    assert lambda_plus(ModelKind.CompressibleMHD, st1, OM, 0.0) == -1.0
    assert lambda_plus(ModelKind.IncompressibleMHD, st1, OM, 0.7 + 0.2j) == -1.0
    assert lambda_plus(ModelKind.IncompressibleEuler, BasicState(), OM, 5.0) == -1.0


@given(states(model=ModelKind.CompressibleEuler), complex_s())
def test_flow_side_exponent_has_nonpositive_real_part(state, s):
    lam = lambda_plus(ModelKind.CompressibleEuler, state, OM, s)
    assert lam.real <= 0.0


@given(states(), wavevectors(), complex_s())
def test_magnetic_flow_side_exponent_has_nonpositive_real_part(state, omega, s):
    try:
        lam = lambda_plus(ModelKind.CompressibleMHD, state, omega, s)
    except BranchPointError:
        assume(False)
    assert lam.real <= 0.0


def test_flow_side_exponent_reports_branch_point():
    state = BasicState(H_plasma=(1.0, 0.0), H_vacuum=(0.0, 0.0), c_hat=1.0)
    # (c^2 + cA^2) s^2 + c^2 wp^2 / rho = 0 at s = i wp c / sqrt(rho (c^2+cA^2))
    s = 1j * 1.0 / math.sqrt(2.0)
    with pytest.raises(BranchPointError):
        lambda_plus(ModelKind.CompressibleMHD, state, OM, s)


def test_vacuum_side_exponent_and_euler_rejection():
    assert lambda_minus(ModelKind.IncompressibleMHD) == 1.0
    assert lambda_minus(ModelKind.CompressibleMHD) == 1.0
    with pytest.raises(UnsupportedModelError):
        lambda_minus(ModelKind.CompressibleEuler)


# -------------------------------------------------------- amplitude relation


def test_normal_velocity_worked_values():
    assert normal_velocity_amplitude(ModelKind.IncompressibleEuler, BasicState(), OM, 2.0, 1.0) == 0.5
    with pytest.raises(ResonanceError):
        normal_velocity_amplitude(ModelKind.CompressibleEuler, BasicState(), OM, 0.0, 1.0)
    # 1/s pole: magnitude blows up as s -> 0+
    tiny = normal_velocity_amplitude(ModelKind.CompressibleEuler, BasicState(), OM, 1e-12, 1.0)
    assert abs(tiny) > 1e11
    state = BasicState(H_plasma=(1.0, 0.0), H_vacuum=(0.0, 1.0))
    with pytest.raises(ResonanceError):
        normal_velocity_amplitude(ModelKind.IncompressibleMHD, state, OM, 1j, 1.0)


@given(states(), wavevectors(), complex_s(), st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False))
def test_normal_velocity_is_linear_in_pressure(state, omega, s, q):
    assume(abs(s) > 0.05)
    try:
        base = normal_velocity_amplitude(ModelKind.CompressibleMHD, state, omega, s, 1.0)
        val = normal_velocity_amplitude(ModelKind.CompressibleMHD, state, omega, s, q)
    except (ResonanceError, BranchPointError):
        assume(False)
    assert cmath.isclose(val, q * base, rel_tol=1e-12, abs_tol=1e-12)


# ------------------------------------------------------------- determinants


def test_determinant_worked_values():
    dv = dispersion_eval(ModelKind.IncompressibleEuler, BasicState(a_hat=1.0), OM, 0.1, 100)
    assert abs(dv.value) < 1e-14
    assert dv.jacobian_ds == pytest.approx(20.0)
    quiet = BasicState(H_plasma=(1.0, 0.0), H_vacuum=(1.0, 0.0))
    perp = Wavevector(0.0, 1.0)  # orthogonal to both fields: wp = wm = 0
    dv2 = dispersion_eval(ModelKind.IncompressibleMHD, quiet, perp, 0.3, 7)
    assert dv2.value == pytest.approx(0.189, rel=1e-12)


@given(states(collinear=True), complex_s())
def test_aligned_fields_reduce_determinant_to_scalar_form(state, s):
    """With both field projections zero the 3x3 determinant factors as
    rho * s * (scalar dispersion function with combined sound speed)."""
    hp = math.hypot(*state.H_plasma)
    assume(hp > 1e-6)
    ux, uy = state.H_plasma[0] / hp, state.H_plasma[1] / hp
    perp = Wavevector(-uy, ux)
    alpha = state.c_hat**2 + hp * hp / state.rho_hat
    scalar = 7 * s * s - state.a0_hat * s - (state.a_hat / state.rho_hat) * cmath.sqrt(1 + s * s / alpha)
    try:
        full = dispersion_eval(ModelKind.CompressibleMHD, state, perp, s, 7).value
    except BranchPointError:
        assume(False)
    expected = state.rho_hat * s * scalar
    assert cmath.isclose(full, expected, rel_tol=1e-12, abs_tol=1e-12)


@given(model_state_pairs(), wavevectors(), complex_s(), st.integers(min_value=1, max_value=10**4))
def test_jacobian_matches_finite_differences(pair, omega, s, n):
    model, state = pair
    assume(smooth_point(model, state, omega, s))
    h = 1e-6 * (1.0 + abs(s))
    assume(smooth_point(model, state, omega, s + h) and smooth_point(model, state, omega, s - h))
    dv = dispersion_eval(model, state, omega, s, n)
    fp = dispersion_eval(model, state, omega, s + h, n).value
    fm = dispersion_eval(model, state, omega, s - h, n).value
    fd = (fp - fm) / (2.0 * h)
    scale = max(abs(dv.jacobian_ds), abs(fd))
    assume(scale > 1e-6)  # away from critical points the test is meaningful
    assert abs(dv.jacobian_ds - fd) <= 2e-6 * scale


@given(states(), bounded(0.25, 4.0), wavevectors(), complex_s(), st.integers(min_value=1, max_value=1000))
def test_determinant_depends_only_on_field_projections(state, stretch, omega, s, n):
    scaled = Wavevector(stretch * omega.omega2, stretch * omega.omega3)
    try:
        a = dispersion_eval(ModelKind.CompressibleMHD, state, omega, s, n).value
        b = dispersion_eval(ModelKind.CompressibleMHD, state, scaled, s, n).value
    except BranchPointError:
        assume(False)
    assert cmath.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)


def test_determinant_matches_under_projection_preserving_reflection():
    # Collinear fields: reflecting the direction across the field axis
    # preserves both projections, so the determinant cannot change.
    state = BasicState(H_plasma=(1.3, 0.0), H_vacuum=(-0.7, 0.0), a_hat=0.4, a0_hat=0.2, a1_hat=0.1)
    om_up = Wavevector(0.6, 0.8)
    om_dn = Wavevector(0.6, -0.8)
    for model in MHD_MODELS:
        a = dispersion_eval(model, state, om_up, 0.37 + 0.21j, 50).value
        b = dispersion_eval(model, state, om_dn, 0.37 + 0.21j, 50).value
        assert cmath.isclose(a, b, rel_tol=1e-12)


@given(model_state_pairs(), wavevectors(), complex_s(), st.integers(min_value=1, max_value=1000))
def test_real_coefficient_determinants_commute_with_conjugation(pair, omega, s, n):
    model, state = pair
    if model.is_mhd:
        state = state.replace(a1_hat=0.0)
    assume(smooth_point(model, state, omega, s))
    direct = dispersion_eval(model, state, omega, s.conjugate(), n).value
    mirrored = dispersion_eval(model, state, omega, s, n).value.conjugate()
    assert cmath.isclose(direct, mirrored, rel_tol=1e-12, abs_tol=1e-12)


@given(states(), wavevectors(), complex_s(), st.integers(min_value=1, max_value=1000))
def test_large_sound_speed_recovers_incompressible_determinant(state, omega, s, n):
    stiff = state.replace(c_hat=1e6)
    wp, _ = w_pair(state, omega)
    # the limit is not uniform at the leading-order resonance s^2 = -wp^2/rho
    assume(abs(s * s + wp * wp / state.rho_hat) > 1e-3)
    comp = dispersion_eval(ModelKind.CompressibleMHD, stiff, omega, s, n).value
    inc = dispersion_eval(ModelKind.IncompressibleMHD, stiff, omega, s, n).value
    assert abs(comp - inc) <= 1e-4 * max(1.0, abs(inc))


@given(states(model=ModelKind.CompressibleEuler), complex_s(), st.integers(min_value=1, max_value=1000))
def test_large_sound_speed_recovers_incompressible_euler(state, s, n):
    stiff = state.replace(c_hat=1e6)
    comp = dispersion_eval(ModelKind.CompressibleEuler, stiff, OM, s, n).value
    inc = dispersion_eval(ModelKind.IncompressibleEuler, stiff, OM, s, n).value
    assert abs(comp - inc) <= 1e-4 * max(1.0, abs(inc))


# ---------------------------------------------------------- boundary matrix


def test_boundary_matrix_entries_euler():
    state = BasicState(a_hat=0.8, a0_hat=0.3)
    n, s = 12, 0.25
    mat = boundary_matrix(ModelKind.IncompressibleEuler, state, OM, s, n)
    assert mat.shape == (2, 2)
    assert mat[0, 0] == pytest.approx(n * s - 0.3)
    assert mat[0, 1] == pytest.approx(1.0 / s)
    assert mat[1, 0] == pytest.approx(0.8)
    assert mat[1, 1] == pytest.approx(1.0)


def test_boundary_matrix_third_row_magnetic():
    state = BasicState(H_plasma=(1.0, 0.0), H_vacuum=(0.6, 0.8), a1_hat=0.5)
    omega = Wavevector(1.0, 0.0)
    n = 9
    mat = boundary_matrix(ModelKind.IncompressibleMHD, state, omega, 0.4, n)
    wm = 0.6
    assert mat.shape == (3, 3)
    assert mat[2, 0] == pytest.approx(0.5 + 1j * n * wm)
    assert mat[2, 1] == 0.0
    assert mat[2, 2] == pytest.approx(-9.0)


@given(model_state_pairs(), wavevectors(), complex_s(), st.integers(min_value=1, max_value=500))
def test_matrix_determinant_proportional_to_dispersion(pair, omega, s, n):
    model, state = pair
    assume(abs(s) > 0.05)
    try:
        mat = boundary_matrix(model, state, omega, s, n)
        dv = dispersion_eval(model, state, omega, s, n)
    except (ResonanceError, BranchPointError):
        assume(False)
    det = complex(np.linalg.det(mat))
    if model.is_mhd:
        wp, _ = w_pair(state, omega)
        prefactor = -n / (state.rho_hat * s * s + wp * wp)
    else:
        prefactor = 1.0 / s
    assert cmath.isclose(det, prefactor * dv.value, rel_tol=1e-9, abs_tol=1e-9 * abs(prefactor))
