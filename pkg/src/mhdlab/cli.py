"""Command-line front end: classify, roots, sweep, hadamard, green.

Output contract: every CSV has a one-line header, floats are serialized
with 17 significant digits (round-trip exact for doubles), booleans as
true/false. Sweeps are emitted in row-major axis order no matter how many
worker threads computed them, so identical inputs give byte-identical
files. Exit codes: 0 success, 1 configuration or domain errors, 2
analytic/numeric verdict conflict, 3 partial output after solver errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .classifier import SweepSpec, classify_frozen, numeric_classify, sweep
from .config import Config, load_config, parse_bool
from .domain import ModelKind, Wavevector
from .errors import ConfigError, ConflictError, DomainError, GridError, NotARootError
from .hadamard import (
    build_mode,
    evaluate_field,
    grid_for_mode,
    growth_ratio,
    pde_residual_fd,
)
from .roots import dominant_root, solve_dispersion
from .vacuum_green import green_identity_check

DEFAULT_N_GRID = (100, 1000, 10000)

ROOTS_COLUMNS = (
    "n",
    "omega2",
    "omega3",
    "re_s",
    "im_s",
    "re_lambda_plus",
    "im_lambda_plus",
    "re_lambda_minus",
    "im_lambda_minus",
    "residual",
    "admissible",
    "neutral",
)


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    x = float(value)
    if x == 0.0:
        x = 0.0  # canonicalize the sign of zero
    return f"{x:.17g}"


def _omega_from(args, cfg: Config, section: str) -> Wavevector:
    if getattr(args, "omega", None) is not None:
        return Wavevector(args.omega[0], args.omega[1])
    sec = cfg.section(section)
    return Wavevector(float(sec.get("omega2", 1.0)), float(sec.get("omega3", 0.0)))


def cmd_classify(args) -> int:
    cfg = load_config(args.config)
    numeric = args.numeric or parse_bool(
        cfg.section("classify").get("numeric", "false"), "[classify] numeric"
    )
    result = classify_frozen(cfg.model, cfg.state)
    print(f"verdict: {result.verdict.value}")
    print(f"collinear: {fmt(result.collinear)}")
    print(f"rt_sign_ok: {fmt(result.rt_sign_ok)}")
    if result.witness is not None:
        print(f"witness: {fmt(result.witness.omega2)} {fmt(result.witness.omega3)}")
    if numeric:
        confirmed = numeric_classify(
            cfg.model, cfg.state, list(DEFAULT_N_GRID), [Wavevector(1.0, 0.0)]
        )
        print(f"numeric_verdict: {confirmed.verdict.value}")
        if confirmed.evidence is not None:
            print(f"fitted_exponent: {fmt(confirmed.evidence.exponent)}")
            print(f"fitted_coefficient: {fmt(confirmed.evidence.coefficient)}")
    return 0


def cmd_roots(args) -> int:
    cfg = load_config(args.config)
    sec = cfg.section("roots")
    if args.n is not None:
        n_values = list(args.n)
    elif "n" in sec:
        n_values = [int(tok) for tok in sec["n"].split(",")]
    else:
        n_values = list(DEFAULT_N_GRID)
    omega = _omega_from(args, cfg, "roots")
    lines = [",".join(ROOTS_COLUMNS)]
    status = 0
    for n in n_values:
        try:
            roots = solve_dispersion(cfg.model, cfg.state, omega, n)
        except (DomainError, ValueError, RuntimeError) as exc:
            lines.append(f"# error: n={n} {type(exc).__name__}: {exc}")
            status = 3
            continue
        for root in roots:
            lines.append(
                ",".join(
                    (
                        str(n),
                        fmt(omega.omega2),
                        fmt(omega.omega3),
                        fmt(root.s.real),
                        fmt(root.s.imag),
                        fmt(root.lambda_plus.real),
                        fmt(root.lambda_plus.imag),
                        fmt(root.lambda_minus.real),
                        fmt(root.lambda_minus.imag),
                        fmt(root.residual),
                        fmt(root.admissible),
                        fmt(root.neutral),
                    )
                )
            )
    _write_lines(lines, args.out)
    return status


def _parse_grid_spec(spec: str):
    axes = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ConfigError(f"grid axis '{chunk}' must look like name=lo:hi:count")
        name, _, body = chunk.partition("=")
        name = name.strip()
        body = body.strip()
        if ":" in body:
            parts = body.split(":")
            if len(parts) != 3:
                raise ConfigError(f"grid axis '{chunk}': expected lo:hi:count")
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ConfigError(f"grid axis '{name}': count must be positive")
            values = tuple(float(v) for v in np.linspace(lo, hi, count))
        else:
            values = tuple(float(tok) for tok in body.split(","))
        axes.append((name, values))
    if not axes:
        raise ConfigError("empty grid specification")
    return tuple(axes)


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    sec = cfg.section("sweep")
    grid_spec = args.grid or sec.get("grid")
    if not grid_spec:
        raise ConfigError("no sweep grid given (use --grid or [sweep] grid)")
    axes = _parse_grid_spec(grid_spec)
    jobs = _resolve_jobs(args.jobs, sec)
    numeric = args.numeric or parse_bool(sec.get("numeric", "false"), "[sweep] numeric")
    kwargs = {}
    if "max_points" in sec:
        kwargs["max_points"] = int(sec["max_points"])
    spec = SweepSpec(base=cfg.state, axes=axes, **kwargs)
    results = sweep(cfg.model, spec, jobs=jobs)
    axis_names = [name for name, _ in axes]
    header = list(axis_names) + ["verdict", "collinear"]
    if "a_hat" not in axis_names:
        header.append("a_hat")
    if numeric:
        header.append("fitted_exponent")
    lines = [",".join(header)]
    for state, outcome in results:
        row = [fmt(_axis_value(state, name)) for name in axis_names]
        row += [outcome.verdict.value, fmt(outcome.collinear)]
        if "a_hat" not in axis_names:
            row.append(fmt(state.a_hat))
        if numeric:
            confirmed = numeric_classify(
                cfg.model, state, list(DEFAULT_N_GRID), [Wavevector(1.0, 0.0)]
            )
            exp = confirmed.evidence.exponent if confirmed.evidence else math.nan
            row.append(fmt(exp))
        lines.append(",".join(row))
    _write_lines(lines, args.out)
    return 0


def _axis_value(state, name):
    if name == "H_plasma_2":
        return state.H_plasma[0]
    if name == "H_plasma_3":
        return state.H_plasma[1]
    if name == "H_vacuum_2":
        return state.H_vacuum[0]
    if name == "H_vacuum_3":
        return state.H_vacuum[1]
    return getattr(state, name)


def _resolve_jobs(flag_value, sec) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("MHDLAB_JOBS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"MHDLAB_JOBS must be an integer, got '{env}'")
    if "jobs" in sec:
        return int(sec["jobs"])
    return 1


def cmd_hadamard(args) -> int:
    cfg = load_config(args.config)
    sec = cfg.section("hadamard")
    n_list = list(args.n_list) if args.n_list else (
        [int(tok) for tok in sec["n_list"].split(",")] if "n_list" in sec else [25, 100, 400]
    )
    t = args.t if args.t is not None else float(sec.get("t", 1.0))
    dump_fields = args.dump_fields or parse_bool(
        sec.get("dump_fields", "false"), "[hadamard] dump_fields"
    )
    omega = _omega_from(args, cfg, "hadamard")
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output directory not writable: {out_dir} ({exc})")

    entries = growth_ratio(cfg.model, cfg.state, omega, n_list, t)
    growth_lines = ["n,log_ratio,ratio,admissible"]
    for e in entries:
        growth_lines.append(
            f"{e.n},{fmt(e.log_ratio)},{fmt(e.ratio)},{fmt(e.admissible_found)}"
        )
    (out_dir / "growth.csv").write_text("\n".join(growth_lines) + "\n")

    mode_n = n_list[0]
    try:
        root = dominant_root(solve_dispersion(cfg.model, cfg.state, omega, mode_n))
        if root is None:
            raise NotARootError(f"no admissible mode at n={mode_n}")
        mode = build_mode(cfg.model, cfg.state, omega, root)
    except (DomainError, NotARootError) as exc:
        print(f"note: skipping field dump and residuals: {exc}", file=sys.stderr)
        return 0
    grid = grid_for_mode(mode)
    report = pde_residual_fd(mode, grid, t)
    with (out_dir / "residuals.jsonl").open("w") as fh:
        for name, value in report.interior.items():
            fh.write(json.dumps({"block": "interior", "equation": name, "value": value}) + "\n")
        for name, value in report.boundary.items():
            fh.write(json.dumps({"block": "boundary", "condition": name, "value": value}) + "\n")
        fh.write(
            json.dumps(
                {
                    "block": "grid",
                    "spacings": list(report.spacings),
                    "n": mode_n,
                    "t": t,
                }
            )
            + "\n"
        )
    if dump_fields:
        _dump_fields(mode, grid, t, out_dir)
    return 0


def _dump_fields(mode, grid, t, out_dir: Path) -> None:
    sample = evaluate_field(mode, grid, t)
    suffix = "_log" if sample.log_magnitude else ""

    def block_to_csv(x1, block, path):
        names = sorted(block)
        lines = [",".join(["x1", "x2"] + [name + suffix for name in names])]
        for i, xv in enumerate(x1):
            for j, tv in enumerate(sample.tangent):
                vals = [fmt(xv), fmt(tv)]
                for name in names:
                    cell = block[name][i, j]
                    vals.append(fmt(cell if sample.log_magnitude else cell.real))
                lines.append(",".join(vals))
        path.write_text("\n".join(lines) + "\n")

    block_to_csv(sample.x1_plasma, sample.plasma, out_dir / "fields_plasma.csv")
    if sample.x1_vacuum is not None and sample.vacuum:
        block_to_csv(sample.x1_vacuum, sample.vacuum, out_dir / "fields_vacuum.csv")


def cmd_green(args) -> int:
    result = green_identity_check(args.k, args.points)
    print(f"lhs = {fmt(result.lhs)}")
    print(f"rhs = {fmt(result.rhs)}")
    print(f"relative_gap = {fmt(result.relative_gap)}")
    return 0


def _write_lines(lines, out) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mhdlab",
        description="Stability toolkit for plasma-vacuum interface models",
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="seed for randomized sweeps (reproducibility)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="well-posedness verdict for one state")
    p.add_argument("config")
    p.add_argument("--numeric", action="store_true", help="confirm with scaling fits")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("roots", help="dispersion roots as CSV")
    p.add_argument("config")
    p.add_argument("--n", type=int, nargs="+", help="mode indices (default 100 1000 10000)")
    p.add_argument("--omega", type=float, nargs=2, metavar=("O2", "O3"))
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("sweep", help="stability map over a parameter grid")
    p.add_argument("config")
    p.add_argument("--grid", help="axes, e.g. 'a_hat=-2:2:11;a0_hat=0:1:5'")
    p.add_argument("--jobs", type=int, help="worker threads (default MHDLAB_JOBS or 1)")
    p.add_argument("--numeric", action="store_true", help="attach fitted exponents")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hadamard", help="mode growth table, residuals, field dumps")
    p.add_argument("config")
    p.add_argument("--n-list", type=int, nargs="+", dest="n_list")
    p.add_argument("--t", type=float, help="evaluation time (default 1)")
    p.add_argument("--omega", type=float, nargs=2, metavar=("O2", "O3"))
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--dump-fields", action="store_true", dest="dump_fields")
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("green", help="strip energy identity check")
    p.add_argument("--k", type=float, default=2.0 * math.pi)
    p.add_argument("--points", type=int, default=256)
    p.set_defaults(func=cmd_green)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConflictError as exc:
        print(f"conflict: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, DomainError, GridError, NotARootError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
