"""M and the Bel diagnostics over the (r, phi_d) plane.

    python3 scripts/heatmaps.py --out runs/heatmaps --omega-ratio 0.5
    python3 scripts/heatmaps.py --out runs/heatmaps_1 --omega-ratio 1.0

Writes sweep.csv plus one heatmap_<quantity>.csv per quantity (rows = r,
columns = phi_d), and heatmap_m_value.png if matplotlib is installed.
"""

import argparse
import math
from pathlib import Path

import numpy as np

import _plotting
from qmpemba.files import emit_panels, emit_table
from qmpemba.scenario import SWEEP_COLUMNS, Axis, ScenarioConfig, SweepSpec, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="runs/heatmaps")
    ap.add_argument("--omega-ratio", type=float, default=0.5)
    ap.add_argument("--delta0", type=float, default=1.0)
    ap.add_argument("--r-steps", type=int, default=49)
    ap.add_argument("--phi-steps", type=int, default=41)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    fixed = ScenarioConfig(delta0=args.delta0, omega_ratio=args.omega_ratio)
    spec = SweepSpec(
        axis1=Axis("r", 0.0, 1.2, args.r_steps),
        axis2=Axis("phi_d", 0.0, 0.2 * math.pi, args.phi_steps),
        fixed=fixed,
    )
    table = run_sweep(spec, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_table(table, out / "sweep.csv", ["r", "phi_d", *SWEEP_COLUMNS])
    emit_panels(table, spec.axes, out)

    grid = np.array([np.nan if row["m_value"] is None else row["m_value"] for row in table])
    grid = grid.reshape(args.r_steps, args.phi_steps)
    i, j = np.unravel_index(np.nanargmax(grid), grid.shape)
    print(f"max M = {grid[i, j]:.4f} at r = {spec.axis1.values[i]:.3f}, "
          f"phi_d/pi = {spec.axis2.values[j] / math.pi:.4f}")
    print(f"fraction of grid with M > 0: {np.mean(grid > 0):.3f}")

    if _plotting.available():
        plt = _plotting.plt
        fig, ax = plt.subplots(figsize=(5, 4))
        mesh = ax.pcolormesh(spec.axis2.values / math.pi, spec.axis1.values, grid, shading="nearest")
        ax.set_xlabel(r"$\phi_d/\pi$")
        ax.set_ylabel("r")
        ax.set_title(rf"$M$, $\Omega/\Delta_0$ = {args.omega_ratio:g}, $\Delta_0/\gamma_0$ = {args.delta0:g}")
        fig.colorbar(mesh)
        fig.tight_layout()
        fig.savefig(out / "heatmap_m_value.png", dpi=150)


if __name__ == "__main__":
    main()
