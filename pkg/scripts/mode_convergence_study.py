#!/usr/bin/env python3
"""Grid-refinement study of the FD residuals of one constructed mode.

Builds the dominant admissible mode of a compressible MHD state, then runs
pde_residual_fd on a ladder of grids obtained by repeated spacing halving.
Interior residuals should shrink by about 4x per level (second order);
boundary residuals stay at machine precision on every level because the
boundary conditions involve no differencing. Residuals that sit at roundoff
already on the coarsest grid are reported without an order.

Usage:
    python3 scripts/mode_convergence_study.py
    python3 scripts/mode_convergence_study.py --n 100 --levels 4 --out conv.csv
"""

import argparse
import csv
import math
import sys

from mhdlab.domain import BasicState, ModelKind, Wavevector
from mhdlab.hadamard import build_mode, grid_for_mode, pde_residual_fd
from mhdlab.roots import dominant_root, solve_dispersion

ROUNDOFF_FLOOR = 1e-13


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=25, help="mode index")
    ap.add_argument("--omega", type=float, nargs=2, default=[0.6, 0.8],
                    metavar=("O2", "O3"))
    ap.add_argument("--a-hat", type=float, default=1.0)
    ap.add_argument("--levels", type=int, default=3, help="number of refinements")
    ap.add_argument("--base-points", type=int, default=64)
    ap.add_argument("--t", type=float, default=0.0, help="evaluation time")
    ap.add_argument("--out", default="-", help="CSV path, - for stdout")
    args = ap.parse_args(argv)

    state = BasicState(a_hat=args.a_hat, a0_hat=0.2, a1_hat=0.7, c_hat=2.0,
                       H_plasma=(1.0, 0.0), H_vacuum=(2.0, 0.0))
    omega = Wavevector(*args.omega)
    model = ModelKind.CompressibleMHD
    root = dominant_root(solve_dispersion(model, state, omega, args.n))
    if root is None:
        print("no admissible root for this state and direction", file=sys.stderr)
        return 1
    mode = build_mode(model, state, omega, root)
    print(f"n={args.n}  s={root.s:.6g}  lambda+={root.lambda_plus:.6g}")

    grid = grid_for_mode(mode, (args.base_points, args.base_points, 8))
    reports = []
    for _ in range(args.levels + 1):
        reports.append(pde_residual_fd(mode, grid, args.t))
        grid = grid.refined()

    rows = []
    for equation in reports[0].interior:
        values = [rep.interior[equation] for rep in reports]
        for level, value in enumerate(values):
            if level == 0 or max(values[level - 1], value) < ROUNDOFF_FLOOR:
                order = ""
            else:
                order = f"{math.log2(values[level - 1] / value):.3f}"
            rows.append((equation, level, f"{value:.6e}", order))

    stream = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(stream)
    writer.writerow(["equation", "level", "residual", "order"])
    writer.writerows(rows)
    if stream is not sys.stdout:
        stream.close()
        print(f"wrote {len(rows)} rows to {args.out}")

    worst_boundary = max(rep.worst_boundary() for rep in reports)
    print(f"\nworst boundary residual over all levels: {worst_boundary:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
