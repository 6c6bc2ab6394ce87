"""Frozen-state stability verdicts and parameter sweeps.

The trichotomy implemented here: with both tangential fields collinear (an
empty condition for the purely fluid models) a positive interface
coefficient a > 0 produces frequencies growing like sqrt(n), i.e. genuine
ill-posedness; a = 0 with a0 > 0 leaves only the n-independent exponential
growth exp(a0 t); everything else shows no high-frequency growth at all.
The numeric path must reproduce the algebraic verdict or fail loudly.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .domain import BasicState, Classification, ModelKind, Verdict, Wavevector, require_valid
from .errors import ConfigError, ConflictError, FitError
from .roots import fit_scaling

COLLINEARITY_REL_TOL = 1e-9

# |a| at or below this relative threshold is treated as the exact a = 0 case
_A_ZERO_REL_TOL = 1e-12

_AXIS_SETTERS = {
    "rho_hat": lambda st, v: st.replace(rho_hat=v),
    "c_hat": lambda st, v: st.replace(c_hat=v),
    "a_hat": lambda st, v: st.replace(a_hat=v),
    "a0_hat": lambda st, v: st.replace(a0_hat=v),
    "a1_hat": lambda st, v: st.replace(a1_hat=v),
    "H_plasma_2": lambda st, v: st.replace(H_plasma=(v, st.H_plasma[1])),
    "H_plasma_3": lambda st, v: st.replace(H_plasma=(st.H_plasma[0], v)),
    "H_vacuum_2": lambda st, v: st.replace(H_vacuum=(v, st.H_vacuum[1])),
    "H_vacuum_3": lambda st, v: st.replace(H_vacuum=(st.H_vacuum[0], v)),
}


def is_collinear(state: BasicState, rel_tol: float = COLLINEARITY_REL_TOL) -> bool:
    """Cross-product collinearity test; zero fields count as collinear."""
    if rel_tol < 0:
        raise ValueError("rel_tol must be >= 0")
    hp2, hp3 = state.H_plasma
    hv2, hv3 = state.H_vacuum
    cross = hp2 * hv3 - hp3 * hv2
    scale = max(1.0, math.hypot(hp2, hp3) * math.hypot(hv2, hv3))
    return abs(cross) <= rel_tol * scale


def _a_is_zero(state: BasicState) -> bool:
    a = state.a_hat
    if a == 0.0:
        return True
    if abs(a) <= _A_ZERO_REL_TOL * (1.0 + abs(a)):
        warnings.warn(
            f"a_hat={a!r} is below the zero-detection threshold; "
            "classifying as the a = 0 case",
            stacklevel=3,
        )
        return True
    return False


def _witness_direction(state: BasicState) -> Wavevector:
    """Unit direction orthogonal to the shared field axis ((1,0) if none)."""
    for vec in (state.H_plasma, state.H_vacuum):
        mag = math.hypot(*vec)
        if mag > 0:
            return Wavevector(-vec[1] / mag, vec[0] / mag)
    return Wavevector(1.0, 0.0)


def classify_frozen(
    model: ModelKind,
    state: BasicState,
    rel_tol: float = COLLINEARITY_REL_TOL,
) -> Classification:
    """Algebraic stability verdict for one frozen state."""
    require_valid(model, state)
    collinear = is_collinear(state, rel_tol) if model.is_mhd else True
    a_zero = _a_is_zero(state)
    rt_sign_ok = (not a_zero) and state.a_hat < 0.0
    if collinear and not a_zero and state.a_hat > 0.0:
        verdict = Verdict.IllPosed
    elif collinear and a_zero and state.a0_hat > 0.0:
        verdict = Verdict.ExponentiallyUnstable
    else:
        verdict = Verdict.NoHadamardGrowth
    witness = None
    if model.is_mhd and verdict is Verdict.IllPosed:
        witness = _witness_direction(state)
    return Classification(
        verdict=verdict,
        collinear=collinear,
        rt_sign_ok=rt_sign_ok,
        witness=witness,
    )


def numeric_classify(
    model: ModelKind,
    state: BasicState,
    n_grid,
    omega_samples,
    rel_tol: float = COLLINEARITY_REL_TOL,
) -> Classification:
    """Scaling-law confirmation of classify_frozen.

    Fits Re s against n for every sampled direction (plus the orthogonal
    witness direction when the fields are collinear). An exponent near 1/2
    with positive coefficient signals sqrt(n) frequency growth; that numeric
    finding must match the algebraic verdict exactly, otherwise a conflict
    error carrying all evidence is raised.
    """
    analytic = classify_frozen(model, state, rel_tol)
    directions = list(omega_samples)
    if model.is_mhd and analytic.collinear:
        directions.append(_witness_direction(state))
    if not directions:
        directions.append(Wavevector(1.0, 0.0))
    fits = []
    for omega in directions:
        try:
            fits.append(fit_scaling(model, state, omega, n_grid))
        except FitError:
            continue
    matching = [f for f in fits if abs(f.exponent - 0.5) <= 0.05 and f.coefficient > 0]
    numeric_illposed = bool(matching)
    if numeric_illposed != (analytic.verdict is Verdict.IllPosed):
        raise ConflictError(
            "numeric scaling disagrees with the algebraic verdict: "
            f"analytic={analytic.verdict.value}, numeric_illposed={numeric_illposed}, "
            f"fits={[(f.exponent, f.coefficient) for f in fits]}",
            analytic=analytic,
            fits=tuple(fits),
        )
    if matching:
        evidence = min(matching, key=lambda f: f.rms_log_error)
    elif fits:
        evidence = min(fits, key=lambda f: f.rms_log_error)
    else:
        evidence = None
    return Classification(
        verdict=analytic.verdict,
        collinear=analytic.collinear,
        rt_sign_ok=analytic.rt_sign_ok,
        witness=analytic.witness,
        evidence=evidence,
    )


@dataclass(frozen=True)
class SweepSpec:
    """Cartesian grid over BasicState fields, row-major in axis order."""

    base: BasicState
    axes: tuple  # ((field_name, (value, ...)), ...)
    max_points: int = 100_000

    def __post_init__(self):
        names = [name for name, _ in self.axes]
        unknown = [n for n in names if n not in _AXIS_SETTERS]
        if unknown:
            raise ConfigError(f"unknown sweep axes: {unknown}; valid: {sorted(_AXIS_SETTERS)}")
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate sweep axes in {names}")
        total = 1
        for _, values in self.axes:
            total *= len(values)
        if total > self.max_points:
            raise ConfigError(f"sweep has {total} points, exceeding max_points={self.max_points}")

    def points(self):
        """States in row-major order (last axis varies fastest)."""
        def rec(state, axes):
            if not axes:
                yield state
                return
            (name, values), rest = axes[0], axes[1:]
            setter = _AXIS_SETTERS[name]
            for v in values:
                yield from rec(setter(state, v), rest)

        yield from rec(self.base, tuple(self.axes))


def sweep(
    model: ModelKind,
    grid: SweepSpec,
    rel_tol: float = COLLINEARITY_REL_TOL,
    jobs: int = 1,
):
    """classify_frozen over every grid point, in deterministic grid order."""
    states = list(grid.points())
    if jobs <= 1:
        return [(st, classify_frozen(model, st, rel_tol)) for st in states]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(lambda st: classify_frozen(model, st, rel_tol), states))
    return list(zip(states, results))
