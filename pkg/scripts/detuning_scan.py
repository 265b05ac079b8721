"""Where along Delta0/gamma0 does the highlighted squeezed point show an effect?

For each detuning, runs r = 0 and r = 0.98, phi_d = 0.025 pi at
Omega/Delta0 in {0.5, 1.0} and prints M and crossing counts.

    python3 scripts/detuning_scan.py --out runs/detuning
"""

import argparse
import math
from pathlib import Path

import numpy as np

from qmpemba.files import emit_table
from qmpemba.scenario import ScenarioConfig, run_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="runs/detuning")
    ap.add_argument("--delta0", type=float, nargs="*",
                    default=[0.1, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 1.0, 2.0, 5.0])
    ap.add_argument("--r", type=float, default=0.98)
    ap.add_argument("--phi-d", type=float, default=0.025, help="drive phase in units of pi")
    args = ap.parse_args()

    rows = []
    for delta0 in args.delta0:
        row = {"delta0": delta0}
        for ratio in (0.5, 1.0):
            for r in (0.0, args.r):
                cfg = ScenarioConfig(delta0=delta0, omega_ratio=ratio, r=r, phi_d=args.phi_d * math.pi)
                rep = run_scenario(cfg).report
                tag = f"r{r:g}_ratio{ratio:g}"
                row[f"M_{tag}"] = rep.m_value
                row[f"crossings_{tag}"] = len(rep.crossings)
        rows.append(row)
        print("  ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in row.items()))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_table(rows, out / "detuning_scan.csv")
    hits = [row["delta0"] for row in rows
            if min(row[f"M_r{args.r:g}_ratio0.5"], row[f"M_r{args.r:g}_ratio1"]) > 0.05]
    print(f"detunings with M > 0.05 at both drive strengths: {hits or 'none'}")
    print(f"max M(r=0) over the scan: {np.max([row['M_r0_ratio1'] for row in rows] + [row['M_r0_ratio0.5'] for row in rows]):.3g}")


if __name__ == "__main__":
    main()
