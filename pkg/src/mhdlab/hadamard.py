"""Explicit exponential solutions and their finite-difference verification.

A mode is the separable solution amp * exp{n(s t + lambda x1 + i tau)},
tau the tangential phase along the unit direction of omega. build_mode
extracts the interface amplitudes from the nullspace of the boundary
system and reconstructs every interior amplitude from the bulk equations;
pde_residual_fd then re-checks the whole construction with second-order
finite differences that know nothing about the algebra.

All residuals are reported relative to the size of the equation's terms,
which makes them invariant under the mode's global growth factor; the
factor exp(n Re s t) is therefore projected out of the sampled arrays
before differencing, so the check cannot overflow by design.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .dispersion import boundary_matrix, lambda_plus
from .domain import BasicState, HadamardMode, ModeRoot, ModelKind, Wavevector, require_valid, w_pair
from .errors import GridError, NotARootError, ResonanceError
from .roots import dominant_root, solve_dispersion

NULLSPACE_TOLERANCE = 1e-8
TRUNCATION_EPSILON = 1e-16
OVERFLOW_EXPONENT = 700.0

MHD_FIELD_NAMES = ("q", "v1", "v2", "v3", "H1", "H2", "H3", "xi", "phi")
EULER_FIELD_NAMES = ("q", "v1", "v2", "v3", "phi")


@dataclass(frozen=True)
class GridSpec:
    """Tensor grid for one mode: two half-space depths and one wavelength.

    points_per_direction is (plasma x1 points, vacuum x1 points, tangential
    points); the tangential direction is sampled periodically, without a
    duplicated endpoint.
    """

    x1_extent_plus: float
    x1_extent_minus: float
    points_per_direction: tuple
    tangential_period: float

    def __post_init__(self):
        if not (self.x1_extent_plus > 0 and self.x1_extent_minus > 0):
            raise GridError("half-space extents must be positive")
        if self.tangential_period <= 0:
            raise GridError("tangential period must be positive")
        mp, mm, mt = self.points_per_direction
        if min(mp, mm) < 4 or mt < 4:
            raise GridError("need at least 4 points per direction")

    def refined(self) -> "GridSpec":
        """Same extents with every spacing halved."""
        mp, mm, mt = self.points_per_direction
        return GridSpec(
            self.x1_extent_plus,
            self.x1_extent_minus,
            (2 * mp - 1, 2 * mm - 1, 2 * mt),
            self.tangential_period,
        )


@dataclass(frozen=True)
class FieldSample:
    """Sampled mode fields on a GridSpec at one time.

    When log_magnitude is set the arrays hold natural logs of |field|
    (the raw values would overflow double precision).
    """

    t: float
    x1_plasma: np.ndarray
    x1_vacuum: np.ndarray | None
    tangent: np.ndarray
    plasma: dict
    vacuum: dict
    interface: dict
    log_magnitude: bool


@dataclass(frozen=True)
class ResidualReport:
    """Relative sup-norm residuals of every equation of the model."""

    interior: dict
    boundary: dict
    spacings: tuple  # (h1 plasma, h1 vacuum or nan, h tangential, dt)

    def worst_interior(self) -> float:
        return max(self.interior.values())

    def worst_boundary(self) -> float:
        return max(self.boundary.values())


@dataclass(frozen=True)
class GrowthEntry:
    """Sup-norm amplification of the dominant admissible mode at index n."""

    n: int
    log_ratio: float
    ratio: float
    admissible_found: bool


@dataclass(frozen=True)
class FluxIdentityReport:
    """Both sides of the interface energy-flux identity and their gap."""

    max_discrepancy: float
    tolerance: float
    passed: bool


def _unit(omega: Wavevector):
    return omega.unit()


def _grad_symbol(lam: complex, omega: Wavevector):
    o2, o3 = _unit(omega)
    return np.array([lam, 1j * o2, 1j * o3], dtype=complex)


def build_mode(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    root: ModeRoot,
) -> HadamardMode:
    """Assemble the full amplitude vector of one exponential solution."""
    require_valid(model, state)
    if not (root.admissible or root.neutral):
        raise NotARootError("mode construction needs an admissible or neutral root")
    s, n = root.s, root.n
    if root.neutral and not model.is_mhd:
        raise ResonanceError("the neutral frequency has no fluid mode (1/s pole)")
    mat = boundary_matrix(model, state, omega, s, n)
    # boundary_matrix orients the pressure column for the determinant
    # identity; the solvability system carries -v1(q), so flip that column
    phys = mat.copy()
    phys[:, 1] = -phys[:, 1]
    svals = np.linalg.svd(phys, compute_uv=False)
    if svals[-1] > NULLSPACE_TOLERANCE * max(1.0, svals[0]):
        raise NotARootError(
            f"boundary system is numerically full rank at s={s!r} "
            f"(sigma_min={svals[-1]:.3e}, sigma_max={svals[0]:.3e})"
        )
    null = np.linalg.svd(phys)[2][-1].conj()
    if abs(null[0]) > 1e-8 * np.linalg.norm(null):
        null = null / null[0]
        normalization = "phi_unit"
    else:
        null = null / np.linalg.norm(null)
        normalization = "euclidean"
    phi_amp = complex(null[0])
    q_amp = complex(null[1])
    rho = state.rho_hat
    lam = lambda_plus(model, state, omega, s)
    grad = _grad_symbol(lam, omega)

    if not model.is_mhd:
        v = -grad * q_amp / (rho * s)
        amps = (q_amp, v[0], v[1], v[2], phi_amp)
        names = EULER_FIELD_NAMES
    else:
        xi_amp = complex(null[2])
        wp, _ = w_pair(state, omega)
        if root.neutral:
            # at s = 0 the momentum balance alone fixes the magnetic
            # amplitude and forces the velocity to vanish
            v = np.zeros(3, dtype=complex)
            H = grad * q_amp / (1j * wp)
        elif model is ModelKind.IncompressibleMHD:
            P = rho * s * s + wp * wp
            v = -s * grad * q_amp / P
            H = 1j * wp * v / s
        else:
            Hhat = np.array([0.0, state.H_plasma[0], state.H_plasma[1]], dtype=complex)
            P = rho * s * s + wp * wp
            div_amp = -(lam * lam - 1.0) * q_amp / (rho * s)
            v = -(s * grad * q_amp + 1j * wp * Hhat * div_amp) / P
            H = (1j * wp * v - Hhat * div_amp) / s
        amps = (q_amp, v[0], v[1], v[2], H[0], H[1], H[2], xi_amp, phi_amp)
        names = MHD_FIELD_NAMES
    return HadamardMode(
        root=root,
        amplitudes=tuple(complex(a) for a in amps),
        names=names,
        normalization=normalization,
        model=model,
        state=state,
        omega=omega,
    )


def _mode_lambda_plus(mode: HadamardMode) -> complex:
    lam = mode.root.lambda_plus
    if lam != lam:  # stored as nan on hand-built roots; recompute
        lam = lambda_plus(mode.model, mode.state, mode.omega, mode.root.s)
    return lam


def grid_for_mode(mode: HadamardMode, points_per_direction=(256, 256, 16)) -> GridSpec:
    """Depths from the decay rates: L = min(40/(n|Re lambda|), 20/|omega|)."""
    n = mode.root.n
    lam_p = _mode_lambda_plus(mode)
    cap = 20.0 / mode.omega.norm
    rate_p = n * abs(lam_p.real)
    if rate_p == 0:
        raise GridError("plasma-side mode does not decay; cannot truncate the half-space")
    L_plus = min(40.0 / rate_p, cap)
    if math.exp(-rate_p * L_plus) > TRUNCATION_EPSILON:
        raise GridError(
            f"plasma truncation too lossy at n={n}: depth {L_plus:.3g} keeps "
            f"exp({-rate_p * L_plus:.3g}); increase n or relax the cap"
        )
    if mode.model.is_mhd:
        rate_m = n * 1.0  # vacuum exponent is +1
        L_minus = min(40.0 / rate_m, cap)
        if math.exp(-rate_m * L_minus) > TRUNCATION_EPSILON:
            raise GridError(f"vacuum truncation too lossy at n={n}")
    else:
        L_minus = L_plus
    period = 2.0 * math.pi / n
    return GridSpec(L_plus, L_minus, tuple(points_per_direction), period)


def _sample_arrays(mode: HadamardMode, grid: GridSpec, t: float, normalized: bool):
    """Complex field arrays; growth factor split off as a log magnitude."""
    s, n = mode.root.s, mode.root.n
    lam_p = _mode_lambda_plus(mode)
    mp, mm, mt = grid.points_per_direction
    x1p = np.linspace(0.0, grid.x1_extent_plus, mp)
    tau = np.arange(mt) * (grid.tangential_period / mt)
    # phase/time factor with the pure growth exp(n Re s t) kept separate
    log_growth = n * s.real * t
    tfac = cmath.exp(1j * n * s.imag * t)
    phase = np.exp(1j * n * tau)[None, :]
    decay_p = np.exp(n * lam_p * x1p)[:, None]
    plasma = {}
    for name in mode.names:
        if name in ("xi", "phi"):
            continue
        plasma[name] = mode.amplitude(name) * tfac * decay_p * phase
    interface = {
        "phi": mode.amplitude("phi") * tfac * np.exp(1j * n * tau),
        "q": mode.amplitude("q") * tfac * np.exp(1j * n * tau),
        "v1": mode.amplitude("v1") * tfac * np.exp(1j * n * tau),
    }
    vacuum = {}
    x1m = None
    if mode.model.is_mhd:
        x1m = np.linspace(-grid.x1_extent_minus, 0.0, mm)
        decay_m = np.exp(n * 1.0 * x1m)[:, None]
        vacuum["xi"] = mode.amplitude("xi") * tfac * decay_m * phase
    if not normalized:
        scale = math.exp(log_growth) if abs(log_growth) <= OVERFLOW_EXPONENT else None
        if scale is None:
            return x1p, x1m, tau, plasma, vacuum, interface, log_growth, True
        plasma = {k: v * scale for k, v in plasma.items()}
        vacuum = {k: v * scale for k, v in vacuum.items()}
        interface = {k: v * scale for k, v in interface.items()}
        return x1p, x1m, tau, plasma, vacuum, interface, 0.0, False
    return x1p, x1m, tau, plasma, vacuum, interface, log_growth, False


def evaluate_field(mode: HadamardMode, grid: GridSpec, t: float) -> FieldSample:
    """Pointwise mode evaluation; switches to log magnitudes on overflow."""
    _check_truncation(mode, grid)
    x1p, x1m, tau, plasma, vacuum, interface, log_growth, overflow = _sample_arrays(
        mode, grid, t, normalized=False
    )
    if overflow:
        def to_log(block):
            out = {}
            for k, v in block.items():
                mag = np.abs(v)
                out[k] = np.where(mag > 0, np.log(np.where(mag > 0, mag, 1.0)), -math.inf)
                out[k] = out[k] + log_growth
            return out

        return FieldSample(
            t=t,
            x1_plasma=x1p,
            x1_vacuum=x1m,
            tangent=tau,
            plasma=to_log(plasma),
            vacuum=to_log(vacuum),
            interface=to_log(interface),
            log_magnitude=True,
        )
    return FieldSample(
        t=t,
        x1_plasma=x1p,
        x1_vacuum=x1m,
        tangent=tau,
        plasma=plasma,
        vacuum=vacuum,
        interface=interface,
        log_magnitude=False,
    )


def _check_truncation(mode: HadamardMode, grid: GridSpec) -> None:
    n = mode.root.n
    lam_p = _mode_lambda_plus(mode)
    if math.exp(n * lam_p.real * grid.x1_extent_plus) > TRUNCATION_EPSILON:
        raise GridError("plasma half-space truncated before the mode has decayed")
    if mode.model.is_mhd and math.exp(-n * grid.x1_extent_minus) > TRUNCATION_EPSILON:
        raise GridError("vacuum half-space truncated before the mode has decayed")


def _d1(arr: np.ndarray, h: float) -> np.ndarray:
    return np.gradient(arr, h, axis=0, edge_order=2)


def _d2_edge(arr: np.ndarray, h: float) -> np.ndarray:
    """Second derivative in x1, O(h^2) including one-sided rows."""
    out = np.empty_like(arr)
    out[1:-1] = (arr[2:] - 2.0 * arr[1:-1] + arr[:-2]) / (h * h)
    out[0] = (2.0 * arr[0] - 5.0 * arr[1] + 4.0 * arr[2] - arr[3]) / (h * h)
    out[-1] = (2.0 * arr[-1] - 5.0 * arr[-2] + 4.0 * arr[-3] - arr[-4]) / (h * h)
    return out


def _dtau(arr: np.ndarray, h: float) -> np.ndarray:
    return (np.roll(arr, -1, axis=1) - np.roll(arr, 1, axis=1)) / (2.0 * h)


def _dtau2(arr: np.ndarray, h: float) -> np.ndarray:
    return (np.roll(arr, -1, axis=1) - 2.0 * arr + np.roll(arr, 1, axis=1)) / (h * h)


def _sup(arr) -> float:
    return float(np.max(np.abs(arr)))


def _rel(residual, *scales) -> float:
    """Sup of the residual against the largest analytic term magnitude.

    The yardstick is grid independent on purpose: equations whose exact
    terms cancel almost completely (stiff balances at large n) would
    otherwise be normalized by their own differencing error, which hides
    the h^2 convergence of the numerator.
    """
    scale = max((abs(x) for x in scales), default=0.0)
    return _sup(residual) / max(scale, 1e-300)


def pde_residual_fd(mode: HadamardMode, grid: GridSpec, t: float) -> ResidualReport:
    """Second-order FD residuals of every equation, relative sup norms.

    x1 derivatives are one-sided at the interface rows; the tangential
    direction wraps periodically; time uses a centered difference with
    dt equal to the tangential spacing. Boundary conditions involve no
    differencing and must vanish at machine precision.
    """
    _check_truncation(mode, grid)
    mp, mm, mt = grid.points_per_direction
    if mt < 8:
        raise GridError(
            f"{mt} tangential points resolve less than 8 points per wavelength; refine the grid"
        )
    n = mode.root.n
    s = mode.root.s
    lam_p = _mode_lambda_plus(mode)
    h1p = grid.x1_extent_plus / (mp - 1)
    htau = grid.tangential_period / mt
    if abs(lam_p.imag) > 0:
        ppw = 2.0 * math.pi / (n * abs(lam_p.imag) * h1p)
        if ppw < 8:
            raise GridError(
                f"plasma x1 oscillation resolved by {ppw:.2f} < 8 points per wavelength"
            )
    dt = htau
    x1p, x1m, tau, plasma, vacuum, interface, _, _ = _sample_arrays(
        mode, grid, t, normalized=True
    )
    state, omega = mode.state, mode.omega
    rho, c = state.rho_hat, state.c_hat
    o2, o3 = omega.unit()
    wp, wm = w_pair(state, omega)

    def Dt(arr):
        fw = cmath.exp(n * s * dt)
        bw = cmath.exp(-n * s * dt)
        return (arr * fw - arr * bw) / (2.0 * dt)

    def D2(arr):
        return o2 * _dtau(arr, htau)

    def D3(arr):
        return o3 * _dtau(arr, htau)

    q = plasma["q"]
    v = [plasma["v1"], plasma["v2"], plasma["v3"]]
    grad_q = [_d1(q, h1p), D2(q), D3(q)]
    div_v = _d1(v[0], h1p) + D2(v[1]) + D3(v[2])

    # analytic per-term magnitudes; arrays are normalized to the amplitude
    # scale, so |amp| is the exact sup of every sampled field
    aq = abs(mode.amplitude("q"))
    av = [abs(mode.amplitude(f"v{i + 1}")) for i in range(3)]
    gmag = (abs(lam_p), abs(o2), abs(o3))
    div_scales = tuple(n * gmag[i] * av[i] for i in range(3))
    interior = {}
    if mode.model.is_mhd:
        H = [plasma["H1"], plasma["H2"], plasma["H3"]]
        aH = [abs(mode.amplitude(f"H{i + 1}")) for i in range(3)]
        Hhat = (0.0, state.H_plasma[0], state.H_plasma[1])
        if mode.model is ModelKind.CompressibleMHD and not mode.root.neutral:
            div_amp = abs((lam_p * lam_p - 1.0) * mode.amplitude("q") / (rho * s))
        else:
            div_amp = 0.0

        def ell_plus(arr):
            return wp * _dtau(arr, htau)

        for i in range(3):
            res = rho * Dt(v[i]) - ell_plus(H[i]) + grad_q[i]
            interior[f"momentum_{i + 1}"] = _rel(
                res, rho * n * s * av[i], n * wp * aH[i], n * gmag[i] * aq
            )
        if mode.model is ModelKind.CompressibleMHD:
            for i in range(3):
                res = Dt(H[i]) - ell_plus(v[i]) + Hhat[i] * div_v
                interior[f"induction_{i + 1}"] = _rel(
                    res,
                    n * s * aH[i],
                    n * wp * av[i],
                    Hhat[i] * n * div_amp,
                    Hhat[i] * max(div_scales),
                )
            tot = q - Hhat[1] * H[1] - Hhat[2] * H[2]
            res = Dt(tot) + rho * c * c * div_v
            tot_amp = abs(
                mode.amplitude("q")
                - Hhat[1] * mode.amplitude("H2")
                - Hhat[2] * mode.amplitude("H3")
            )
            interior["continuity"] = _rel(
                res, n * s * tot_amp, rho * c * c * n * div_amp, rho * c * c * max(div_scales)
            )
        else:
            for i in range(3):
                res = Dt(H[i]) - ell_plus(v[i])
                interior[f"induction_{i + 1}"] = _rel(res, n * s * aH[i], n * wp * av[i])
            interior["divergence"] = _rel(div_v, *div_scales)
        div_H = _d1(H[0], h1p) + D2(H[1]) + D3(H[2])
        interior["magnetic_divergence"] = _rel(
            div_H, *(n * gmag[i] * aH[i] for i in range(3))
        )
        xi = vacuum["xi"]
        axi = abs(mode.amplitude("xi"))
        h1m = grid.x1_extent_minus / (mm - 1)
        lap = _d2_edge(xi, h1m) + _dtau2(xi, htau)
        interior["vacuum_laplace"] = _rel(lap, n * n * axi)
    else:
        for i in range(3):
            res = rho * Dt(v[i]) + grad_q[i]
            interior[f"momentum_{i + 1}"] = _rel(
                res, rho * n * s * av[i], n * gmag[i] * aq
            )
        if mode.model is ModelKind.CompressibleEuler:
            res = Dt(q) + rho * c * c * div_v
            interior["continuity"] = _rel(
                res, n * s * aq, rho * c * c * max(div_scales)
            )
        else:
            interior["divergence"] = _rel(div_v, *div_scales)

    # boundary conditions: purely algebraic in the amplitudes
    a, a0, a1 = state.a_hat, state.a0_hat, state.a1_hat
    phi = mode.amplitude("phi")
    q0 = mode.amplitude("q")
    v10 = mode.amplitude("v1")
    boundary = {}
    kin = n * s * phi - v10 - a0 * phi
    boundary["kinematic"] = abs(kin) / max(abs(n * s * phi), abs(v10), abs(a0 * phi), 1e-300)
    if mode.model.is_mhd:
        xi0 = mode.amplitude("xi")
        pres = q0 - 1j * n * wm * xi0 - a * phi
        boundary["pressure"] = abs(pres) / max(
            abs(q0), abs(n * wm * xi0), abs(a * phi), 1e-300
        )
        vac = n * xi0 - (a1 + 1j * n * wm) * phi
        boundary["vacuum_neumann"] = abs(vac) / max(
            abs(n * xi0), abs((a1 + 1j * n * wm) * phi), 1e-300
        )
    else:
        pres = q0 - a * phi
        boundary["pressure"] = abs(pres) / max(abs(q0), abs(a * phi), 1e-300)
    h1m_out = grid.x1_extent_minus / (mm - 1) if mode.model.is_mhd else math.nan
    return ResidualReport(
        interior=interior,
        boundary=boundary,
        spacings=(h1p, h1m_out, htau, dt),
    )


def growth_ratio(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    n_list,
    t: float,
):
    """Sup-norm amplification factors of the dominant mode per index n.

    The ratio of sup norms between times t and 0 for one exponential mode
    is exactly exp(n Re s t); log_ratio carries that value even when the
    ratio itself overflows (ratio is then inf).
    """
    ns = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n_list must be strictly increasing")
    out = []
    for n in ns:
        top = dominant_root(solve_dispersion(model, state, omega, n))
        if top is None:
            out.append(GrowthEntry(n=n, log_ratio=0.0, ratio=1.0, admissible_found=False))
            continue
        log_ratio = n * top.s.real * t
        ratio = math.exp(log_ratio) if log_ratio <= OVERFLOW_EXPONENT else math.inf
        out.append(GrowthEntry(n=n, log_ratio=log_ratio, ratio=ratio, admissible_found=True))
    return out


def boundary_flux_check(mode: HadamardMode, t: float, samples: int = 256) -> FluxIdentityReport:
    """Interface identity -q v1 = j phi v1 - (Hv . grad xi) v1 with j = -a.

    Both sides are evaluated pointwise (real parts) over one tangential
    period; the common growth factor cancels in the relative gap.
    """
    if not mode.model.is_mhd:
        raise ResonanceError("the flux identity involves the vacuum field")
    n, s = mode.root.n, mode.root.s
    state = mode.state
    _, wm = w_pair(state, mode.omega)
    tau = np.arange(samples) * (2.0 * math.pi / (n * samples))
    phase = np.exp(1j * (n * tau + n * s.imag * t))
    q = np.real(mode.amplitude("q") * phase)
    v1 = np.real(mode.amplitude("v1") * phase)
    phi = np.real(mode.amplitude("phi") * phase)
    # tangential vacuum-field trace: Hv . grad xi = i n wm xi at x1 = 0
    hcal = np.real(1j * n * wm * mode.amplitude("xi") * phase)
    lhs = -q * v1
    rhs = -state.a_hat * phi * v1 - hcal * v1
    scale = max(_sup(q * v1), _sup(state.a_hat * phi * v1), _sup(hcal * v1), 1e-300)
    gap = _sup(lhs - rhs) / scale
    return FluxIdentityReport(max_discrepancy=gap, tolerance=1e-10, passed=gap <= 1e-10)


def perturbed_mode(mode: HadamardMode, name: str, factor: complex) -> HadamardMode:
    """Copy of the mode with one amplitude scaled; for sensitivity checks."""
    idx = mode.names.index(name)
    amps = list(mode.amplitudes)
    amps[idx] = amps[idx] * factor
    return replace(mode, amplitudes=tuple(amps))
