"""Root finding, asymptotic expansions and growth-rate scaling fits.

Strategy: every determinant is either polynomial in s (incompressible
models) or becomes polynomial after clearing its single square root.
Candidates come from the companion matrix of that polynomial, get polished
by Newton iteration on the original determinant, and survive only if the
relative residual of the ORIGINAL (unsquared) equation is below
RESIDUAL_TOLERANCE. Squaring can only add spurious roots, never lose real
ones, so the filter is sound.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dispersion import _coeffs, _g_and_dg, dispersion_eval, dispersion_scale, lambda_minus, lambda_plus
from .domain import BasicState, ModeRoot, ModelKind, ScalingFit, Wavevector, require_valid, w_pair
from .errors import BranchPointError, ConvergenceError, DomainError, FitError

RESIDUAL_TOLERANCE = 1e-10
MAX_ITERATIONS = 100

# Newton stops when |step| < _STEP_TOL * (1 + |s|); candidates closer than
# _DEDUPE_TOL * (1 + |s|) are considered the same root.
_STEP_TOL = 1e-14
_DEDUPE_TOL = 1e-9


@dataclass(frozen=True)
class AsymptoticRoot:
    """Coefficients of the frequency series s = s0 + s1/sqrt(n) + s2/n + s3/n^{3/2}.

    s3 is the first coefficient beyond the displayed expansions; it is
    retained so that the truncated series meets the advertised
    O(n^{-3/2}) residual budget even when a0 != 0.
    """

    s0: complex
    s1: complex
    s2: complex
    s3: complex = 0j

    def evaluate(self, n: int) -> complex:
        rt = math.sqrt(n)
        return self.s0 + self.s1 / rt + self.s2 / n + self.s3 / (n * rt)


@dataclass(frozen=True)
class S0Report:
    """Outcome of the imaginary-axis scan of the leading-order frequency."""

    max_re_s0: float
    per_sample: tuple
    tolerance: float
    passed: bool
    failures: tuple = ()


def newton_refine(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    s: complex,
    n: int,
    *,
    raise_on_fail: bool = True,
) -> complex:
    """Polish a root candidate by Newton iteration on the determinant."""
    s = complex(s)
    best = s
    best_res = math.inf
    for _ in range(MAX_ITERATIONS):
        try:
            dv = dispersion_eval(model, state, omega, s, n)
        except BranchPointError:
            break
        res = abs(dv.value) / dispersion_scale(model, state, omega, s, n)
        if res < best_res:
            best, best_res = s, res
        if dv.jacobian_ds == 0:
            break
        step = dv.value / dv.jacobian_ds
        s = s - step
        if abs(step) < _STEP_TOL * (1.0 + abs(s)):
            try:
                final = dispersion_eval(model, state, omega, s, n)
            except BranchPointError:
                break
            res = abs(final.value) / dispersion_scale(model, state, omega, s, n)
            if res < best_res:
                best, best_res = s, res
            return best
    if raise_on_fail and best_res > RESIDUAL_TOLERANCE:
        raise ConvergenceError(
            f"Newton did not converge within {MAX_ITERATIONS} iterations",
            best_iterate=best,
            best_residual=best_res,
        )
    return best


def _strip_leading(coeffs: np.ndarray) -> np.ndarray:
    lead = np.max(np.abs(coeffs))
    if lead == 0:
        return coeffs[-1:]
    keep = np.abs(coeffs) > 1e-300 * lead
    first = int(np.argmax(keep))
    return coeffs[first:]


def _poly_candidates(coeffs) -> list:
    """Companion-matrix roots, with exact s = 0 factors deflated first."""
    c = _strip_leading(np.asarray(coeffs, dtype=complex))
    out = []
    while len(c) > 1 and c[-1] == 0:
        out.append(0j)
        c = c[:-1]
    if len(c) > 1:
        out.extend(np.roots(c).tolist())
    return out


def _dispersion_polynomial(model: ModelKind, state: BasicState, omega: Wavevector, n: int):
    """Polynomial whose root set contains every root of the determinant."""
    a, a0, rho = state.a_hat, state.a0_hat, state.rho_hat
    if model is ModelKind.IncompressibleEuler:
        return np.array([n, -a0, -a / rho], dtype=complex)
    if model is ModelKind.CompressibleEuler:
        if a == 0:
            return np.array([n, -a0, 0.0], dtype=complex)
        K = a / rho
        # (ns^2 - a0 s)^2 = K^2 (1 + (s/c)^2)
        return np.array(
            [n * n, -2.0 * n * a0, a0 * a0 - (K / state.c_hat) ** 2, 0.0, -K * K],
            dtype=complex,
        )
    wp, wm, c1, alpha, beta = _coeffs(state, omega)
    P = np.array([rho, 0.0, wp * wp], dtype=complex)
    A = np.polymul(np.array([n, -a0], dtype=complex), P)
    if model is ModelKind.IncompressibleMHD:
        # A + s(n wm^2 - c1) stays cubic
        quad = np.zeros(4, dtype=complex)
        quad[2] = n * wm * wm - c1
        return np.polyadd(A, quad)
    Bc = n * wm * wm - c1
    if Bc == 0:
        return A
    D = np.array([alpha, 0.0, beta], dtype=complex)
    # A^2 D = B^2 (D + s^4) with B = Bc s
    lhs = np.polymul(np.polymul(A, A), D)
    B2 = np.array([Bc * Bc, 0.0, 0.0], dtype=complex)
    rhs = np.polyadd(np.polymul(B2, D), np.polymul(B2, np.array([1.0, 0, 0, 0, 0], dtype=complex)))
    return np.polysub(lhs, rhs)


def _finish_root(model, state, omega, s, n) -> ModeRoot | None:
    try:
        value = dispersion_eval(model, state, omega, s, n).value
    except BranchPointError:
        return None
    residual = abs(value) / dispersion_scale(model, state, omega, s, n)
    if residual > RESIDUAL_TOLERANCE:
        return None
    try:
        lp = lambda_plus(model, state, omega, s)
    except BranchPointError:
        lp = complex(math.nan, math.nan)
    lm = lambda_minus(model) if model.is_mhd else complex(math.nan, math.nan)
    neutral = s == 0
    admissible = (
        not neutral
        and s.real > 0.0
        and lp.real < 0.0
        and (not model.is_mhd or lm.real > 0.0)
    )
    return ModeRoot(
        s=s,
        lambda_plus=lp,
        lambda_minus=lm,
        residual=residual,
        admissible=admissible,
        n=n,
        neutral=neutral,
    )


def root_sort_key(root: ModeRoot):
    s = root.s
    return (-s.real, -abs(s.imag), s.real, s.imag)


def solve_dispersion(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    n: int,
) -> list:
    """All residual-verified roots of the determinant, most unstable first."""
    require_valid(model, state)
    if n < 1:
        raise ValueError(f"mode index must be >= 1, got {n}")
    candidates = _poly_candidates(_dispersion_polynomial(model, state, omega, n))
    if model is ModelKind.CompressibleMHD:
        # Asymptotic seeds guard against conditioning loss in the squared
        # polynomial at large n.
        for fam in asymptotic_root(model, state, omega):
            candidates.append(fam.evaluate(n))
    roots: list[ModeRoot] = []
    for cand in candidates:
        s = cand if cand == 0 else newton_refine(model, state, omega, cand, n, raise_on_fail=False)
        made = _finish_root(model, state, omega, s, n)
        if made is None:
            continue
        dup = next(
            (i for i, r in enumerate(roots) if abs(r.s - made.s) <= _DEDUPE_TOL * (1.0 + abs(made.s))),
            None,
        )
        if dup is None:
            roots.append(made)
        elif made.residual < roots[dup].residual:
            roots[dup] = made
    roots.sort(key=root_sort_key)
    return roots


def dominant_root(roots) -> ModeRoot | None:
    """Admissible root with the largest growth rate, or None."""
    adm = [r for r in roots if r.admissible]
    return min(adm, key=root_sort_key) if adm else None


def _phi_and_dphi(state: BasicState, omega: Wavevector, s: complex, compressible: bool):
    """Leading-order symbol rho s^2 + wp^2 + wm^2 g(s) and its derivative."""
    wp, wm, _, _, _ = _coeffs(state, omega)
    rho = state.rho_hat
    if not compressible:
        return rho * s * s + wp * wp + wm * wm, 2.0 * rho * s
    g, dg = _g_and_dg(state, omega, s)
    return rho * s * s + wp * wp + wm * wm * g, 2.0 * rho * s + wm * wm * dg


def _phi_scale(state: BasicState, omega: Wavevector, s: complex, compressible: bool) -> float:
    wp, wm, _, _, _ = _coeffs(state, omega)
    gmag = abs(_g_and_dg(state, omega, s)[0]) if compressible else 1.0
    return max(state.rho_hat * abs(s) ** 2 + wp * wp + wm * wm * gmag, 1e-300)


def _s0_candidates(state: BasicState, omega: Wavevector, compressible: bool) -> list:
    """Nonzero roots of the leading-order symbol, residual filtered."""
    wp, wm, _, alpha, beta = _coeffs(state, omega)
    rho = state.rho_hat
    if wp == 0 and wm == 0:
        return []
    if not compressible:
        y = math.sqrt((wp * wp + wm * wm) / rho)
        return [complex(0.0, y), complex(0.0, -y)]
    if wm == 0:
        y = abs(wp) / math.sqrt(rho)
        return [complex(0.0, y), complex(0.0, -y)]
    # Clear the radical: (rho u + wp^2)^2 (alpha u + beta) = wm^4 (alpha u + beta + u^2), u = s^2
    cubic = np.array(
        [
            rho * rho * alpha,
            rho * rho * beta + 2.0 * rho * wp * wp * alpha - wm**4,
            2.0 * rho * wp * wp * beta + (wp**4 - wm**4) * alpha,
            (wp**4 - wm**4) * beta,
        ],
        dtype=complex,
    )
    out = []
    for u in _poly_candidates(cubic):
        if u == 0:
            continue
        root_u = cmath.sqrt(u)
        for s in (root_u, -root_u):
            try:
                phi, _ = _phi_and_dphi(state, omega, s, True)
            except BranchPointError:
                continue
            if abs(phi) <= 1e-8 * _phi_scale(state, omega, s, True):
                out.append(s)
    return out


def asymptotic_root(model: ModelKind, state: BasicState, omega: Wavevector) -> list:
    """Frequency series families for large n, one entry per root branch.

    W = wp^2 + wm^2 selects the regime: W = 0 with a > 0 gives the
    sqrt(a/rho)/sqrt(n) branch, W = 0 with a = 0 gives the exact a0/n
    branch, W != 0 gives oscillatory leading order with an O(1/n) real
    part. Regimes with no growing branch return an empty list.
    """
    require_valid(model, state)
    wp, wm = w_pair(state, omega)
    a, a0, rho = state.a_hat, state.a0_hat, state.rho_hat
    if wp == 0 and wm == 0:
        if a == 0:
            return [AsymptoticRoot(0j, 0j, complex(a0), 0j)] if a0 != 0 else []
        if a < 0:
            return []
        K = a / rho
        s1 = math.sqrt(K)
        s2 = a0 / 2.0
        if model.is_compressible:
            _, _, _, alpha, _ = _coeffs(state, omega)
            curv = K * K / (2.0 * alpha)
        else:
            curv = 0.0
        s3 = (a0 * s2 - s2 * s2 + curv) / (2.0 * s1)
        return [AsymptoticRoot(0j, complex(s1), complex(s2), complex(s3))]
    compressible = model is ModelKind.CompressibleMHD
    _, _, c1, _, _ = _coeffs(state, omega)
    families = []
    for s0 in _s0_candidates(state, omega, compressible):
        try:
            _, dphi = _phi_and_dphi(state, omega, s0, compressible)
            g0 = _g_and_dg(state, omega, s0)[0] if compressible else 1.0
        except BranchPointError:
            continue
        if abs(dphi) <= 1e-12 * max(1.0, rho * abs(s0)):
            continue
        P0 = rho * s0 * s0 + wp * wp
        s2 = (a0 * P0 / s0 + c1 * g0) / dphi
        families.append(AsymptoticRoot(s0, 0j, s2, 0j))
    families.sort(key=lambda f: (-f.s0.imag, f.s2.real))
    return families


def fit_scaling(
    model: ModelKind,
    state: BasicState,
    omega: Wavevector,
    n_grid,
) -> ScalingFit:
    """OLS fit of log(max admissible Re s) against log n: Re s ~ C n^{-p}."""
    ns = [int(n) for n in n_grid]
    if any(b <= a for a, b in zip(ns, ns[1:])) or not ns:
        raise ValueError("n_grid must be strictly increasing")
    if ns[0] < 1 or ns[-1] < 10 * ns[0]:
        raise ValueError("n_grid must start at n >= 1 and span at least one decade")
    growth = []
    failing = []
    for n in ns:
        best = dominant_root(solve_dispersion(model, state, omega, n))
        if best is None:
            failing.append(n)
        else:
            growth.append(best.s.real)
    if failing:
        raise FitError(
            f"no admissible root at n = {failing}", failing_n=tuple(failing)
        )
    logn = np.log(np.array(ns, dtype=float))
    logg = np.log(np.array(growth))
    slope, intercept = np.polyfit(logn, logg, 1)
    resid = logg - (slope * logn + intercept)
    return ScalingFit(
        exponent=float(-slope),
        coefficient=float(math.exp(intercept)),
        n_range=(ns[0], ns[-1]),
        rms_log_error=float(np.sqrt(np.mean(resid**2))),
    )


def scan_s0(state: BasicState, omega_samples, tolerance: float) -> S0Report:
    """Scan the leading-order symbol for roots with positive real part.

    The well-posedness argument needs every leading-order frequency on the
    closed left half plane; this gathers numerical evidence over a batch of
    directions and reports the worst real part found.
    """
    samples = list(omega_samples)
    if not samples:
        raise ValueError("need at least one direction sample")
    per_sample = []
    failures = []
    for idx, omega in enumerate(samples):
        wp, wm = w_pair(state, omega)
        if wp == 0 and wm == 0:
            raise DomainError(
                "leading-order scan needs wp or wm nonzero (direction not orthogonal to both fields)"
            )
        try:
            roots = _s0_candidates(state, omega, True)
        except np.linalg.LinAlgError as exc:
            failures.append(f"sample {idx}: polynomial solve failed ({exc})")
            per_sample.append(math.nan)
            continue
        per_sample.append(max((s.real for s in roots), default=0.0))
    finite = [v for v in per_sample if not math.isnan(v)]
    worst = max(finite) if finite else math.nan
    passed = bool(finite) and not failures and worst <= tolerance
    return S0Report(
        max_re_s0=worst,
        per_sample=tuple(per_sample),
        tolerance=float(tolerance),
        passed=passed,
        failures=tuple(failures),
    )
