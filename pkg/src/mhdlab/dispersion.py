"""Interface determinants, spatial exponents and amplitude relations.

All operations work at unit tangential wavevector: the stored Wavevector is
normalized internally and only its direction matters. Complex square roots
take the principal branch (Re sqrt >= 0) throughout, so the flow-side
exponent -sqrt(...) automatically has nonpositive real part.

Model determinants (s is the frequency per unit mode index n):

  IncompressibleEuler   n s^2 - a0 s - a/rho
  CompressibleEuler     n s^2 - a0 s - (a/rho) sqrt(1 + (s/c)^2)
  IncompressibleMHD     (n s - a0) P + s (n wm^2 - (a + i wm a1))
  CompressibleMHD       (n s - a0) P + s (n wm^2 - (a + i wm a1)) g(s)

with P = rho s^2 + wp^2, wp/wm the plasma/vacuum field projections onto the
unit wavevector, g(s) = sqrt(1 + s^4 / D), D = (c^2 + cA^2) s^2 + c^2 wp^2/rho
and cA the Alfven speed. The incompressible forms are the exact pointwise
c -> infinity limits of the compressible ones and reduce to the familiar
density-scaled displays at rho = 1.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .domain import BasicState, ModelKind, Wavevector, alfven_speed, require_valid, w_pair
from .errors import BranchPointError, ResonanceError, UnsupportedModelError

# Relative threshold below which the g(s) radicand denominator counts as a
# genuine branch-point hit (only reachable when wp != 0).
_BRANCH_TOL = 1e-12


@dataclass(frozen=True)
class DeterminantValue:
    """Determinant value and its analytic s-derivative, for Newton steps."""

    value: complex
    jacobian_ds: complex


def _coeffs(state: BasicState, omega: Wavevector):
    """Shared shorthand: (wp, wm, c1, alpha, beta) for the given direction."""
    wp, wm = w_pair(state, omega)
    c1 = state.a_hat + 1j * wm * state.a1_hat
    cA = alfven_speed(state)
    alpha = state.c_hat**2 + cA**2
    beta = state.c_hat**2 * wp * wp / state.rho_hat
    return wp, wm, c1, alpha, beta


def _g_and_dg(state: BasicState, omega: Wavevector, s: complex):
    """Radical factor g(s) = sqrt(1 + s^4/D) and dg/ds, principal branch.

    For wp = 0 the ratio s^4/D reduces analytically to s^2/alpha, which keeps
    the neutral frequency s = 0 regular (the apparent 0/0 there is removable).
    """
    _, _, _, alpha, beta = _coeffs(state, omega)
    if beta == 0.0:
        ratio = s * s / alpha
        g = cmath.sqrt(1.0 + ratio)
        if g == 0:
            raise BranchPointError(f"radical factor vanishes at s={s!r}")
        dg = s / (alpha * g)
        return g, dg
    D = alpha * s * s + beta
    scale = alpha * abs(s) ** 2 + beta
    if abs(D) <= _BRANCH_TOL * scale:
        raise BranchPointError(
            f"branch point of the spatial exponent: (c^2+cA^2)s^2 + c^2 wp^2/rho = 0 at s={s!r}"
        )
    g = cmath.sqrt(1.0 + s**4 / D)
    if g == 0:
        raise BranchPointError(f"radical factor vanishes at s={s!r}")
    # two divisions by D, not one by D^2: D^2 can underflow for tiny beta
    dg = (s**3 / D) * ((alpha * s * s + 2.0 * beta) / D) / g
    return g, dg


def lambda_plus(model: ModelKind, state: BasicState, omega: Wavevector, s: complex) -> complex:
    """Flow-side spatial exponent of the decaying mode, at unit wavevector."""
    require_valid(model, state)
    s = complex(s)
    if not model.is_compressible:
        return complex(-1.0)
    if model is ModelKind.CompressibleEuler:
        return -cmath.sqrt(1.0 + (s / state.c_hat) ** 2)
    g, _ = _g_and_dg(state, omega, s)
    return -g


def lambda_minus(model: ModelKind) -> complex:
    """Vacuum-side spatial exponent (+1); Euler models have no vacuum side."""
    if not model.is_mhd:
        raise UnsupportedModelError(f"{model.value} has no vacuum potential")
    return complex(1.0)


def normal_velocity_amplitude(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    s: complex,
    q_amp: complex,
) -> complex:
    """Normal velocity amplitude v1 induced by a pressure amplitude q.

    Per model: q/(rho s); (q/(rho s)) sqrt(1+(s/c)^2); q s/(rho s^2 + wp^2);
    q s g(s)/(rho s^2 + wp^2).
    """
    require_valid(model, state)
    s = complex(s)
    rho = state.rho_hat
    if not model.is_mhd:
        if s == 0:
            raise ResonanceError("normal velocity diverges at s = 0 (1/s pole)")
        if model is ModelKind.IncompressibleEuler:
            return q_amp / (rho * s)
        return q_amp * cmath.sqrt(1.0 + (s / state.c_hat) ** 2) / (rho * s)
    wp, _ = w_pair(state, omega)
    denom = rho * s * s + wp * wp
    scale = rho * abs(s) ** 2 + wp * wp
    if scale == 0.0 or abs(denom) <= 1e-13 * scale:
        raise ResonanceError(
            f"pressure-velocity coupling resonance: rho s^2 + wp^2 = 0 at s={s!r}"
        )
    if model is ModelKind.IncompressibleMHD:
        return q_amp * s / denom
    g, _ = _g_and_dg(state, omega, s)
    return q_amp * s * g / denom


def dispersion_eval(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    s: complex,
    n: int,
) -> DeterminantValue:
    """Evaluate the model's interface determinant and its s-derivative."""
    require_valid(model, state)
    if n < 1:
        raise ValueError(f"mode index must be >= 1, got {n}")
    s = complex(s)
    a, a0 = state.a_hat, state.a0_hat
    rho = state.rho_hat
    if model is ModelKind.IncompressibleEuler:
        value = n * s * s - a0 * s - a / rho
        return DeterminantValue(value, 2.0 * n * s - a0)
    if model is ModelKind.CompressibleEuler:
        g = cmath.sqrt(1.0 + (s / state.c_hat) ** 2)
        if g == 0:
            raise BranchPointError(f"spatial-exponent turning point at s={s!r}")
        K = a / rho
        value = n * s * s - a0 * s - K * g
        jac = 2.0 * n * s - a0 - K * s / (state.c_hat**2 * g)
        return DeterminantValue(value, jac)
    wp, wm, c1, _, _ = _coeffs(state, omega)
    P = rho * s * s + wp * wp
    A = (n * s - a0) * P
    dA = n * P + (n * s - a0) * 2.0 * rho * s
    Bc = n * wm * wm - c1
    if model is ModelKind.IncompressibleMHD:
        return DeterminantValue(A + s * Bc, dA + Bc)
    g, dg = _g_and_dg(state, omega, s)
    value = A + s * Bc * g
    jac = dA + Bc * g + s * Bc * dg
    return DeterminantValue(value, jac)


def dispersion_scale(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    s: complex,
    n: int,
) -> float:
    """Termwise magnitude of the determinant at s, for relative residuals."""
    s = complex(s)
    a, a0 = state.a_hat, state.a0_hat
    rho = state.rho_hat
    if not model.is_mhd:
        if model is ModelKind.CompressibleEuler:
            gmag = abs(cmath.sqrt(1.0 + (s / state.c_hat) ** 2))
        else:
            gmag = 1.0
        return max(n * abs(s) ** 2 + abs(a0 * s) + abs(a / rho) * gmag, 1e-300)
    wp, wm, c1, _, _ = _coeffs(state, omega)
    Pmag = rho * abs(s) ** 2 + wp * wp
    if model is ModelKind.CompressibleMHD:
        gmag = abs(_g_and_dg(state, omega, s)[0])
    else:
        gmag = 1.0
    scale = (
        n * abs(s) * Pmag
        + abs(a0) * Pmag
        + abs(s) * (n * wm * wm + abs(c1)) * gmag
    )
    return max(scale, 1e-300)


def boundary_matrix(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    s: complex,
    n: int,
) -> np.ndarray:
    """Interface matrix in the unknowns (phi, q[, xi]).

    The determinant of the returned matrix is proportional to
    ``dispersion_eval`` (prefactor 1/s for Euler models, -n/P for magnetic
    ones). Sign convention: the pressure column is oriented so that the
    determinant reproduces the dispersion function with positive sign; the
    amplitude (solvability) system carries that column with opposite sign,
    since the pressure enters the kinematic row as -v1(q). Mode construction
    restores the physical sign before extracting nullspaces.
    """
    require_valid(model, state)
    s = complex(s)
    a, a0 = state.a_hat, state.a0_hat
    rho = state.rho_hat
    if not model.is_mhd:
        if s == 0:
            raise ResonanceError("kinematic coupling diverges at s = 0")
        if model is ModelKind.CompressibleEuler:
            g = cmath.sqrt(1.0 + (s / state.c_hat) ** 2)
        else:
            g = 1.0
        return np.array(
            [[n * s - a0, g / (rho * s)], [a, 1.0]], dtype=complex
        )
    wp, wm, _, _, _ = _coeffs(state, omega)
    P = rho * s * s + wp * wp
    scale = rho * abs(s) ** 2 + wp * wp
    if scale == 0.0 or abs(P) <= 1e-13 * scale:
        raise ResonanceError(
            f"pressure-velocity coupling resonance: rho s^2 + wp^2 = 0 at s={s!r}"
        )
    if model is ModelKind.CompressibleMHD:
        g = _g_and_dg(state, omega, s)[0]
    else:
        g = 1.0
    return np.array(
        [
            [n * s - a0, s * g / P, 0.0],
            [a, 1.0, 1j * n * wm],
            [state.a1_hat + 1j * n * wm, 0.0, -float(n)],
        ],
        dtype=complex,
    )
