"""M alongside I_B^lambda, I_B^hot and I_B^cold along r at fixed drive phase.

    python3 scripts/sync_sweep.py --out runs/sync --phi-d 0.075
"""

import argparse
import math
from pathlib import Path

import _plotting
from qmpemba.files import emit_table
from qmpemba.scenario import SWEEP_COLUMNS, Axis, ScenarioConfig, SweepSpec, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="runs/sync")
    ap.add_argument("--phi-d", type=float, default=0.075, help="drive phase in units of pi")
    ap.add_argument("--omega-ratio", type=float, default=1.0)
    ap.add_argument("--delta0", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=121)
    args = ap.parse_args()

    fixed = ScenarioConfig(delta0=args.delta0, omega_ratio=args.omega_ratio, phi_d=args.phi_d * math.pi)
    table = run_sweep(SweepSpec(axis1=Axis("r", 0.0, 1.2, args.steps), fixed=fixed))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_table(table, out / "sync.csv", ["r", *SWEEP_COLUMNS])

    ok = [row for row in table if row["m_value"] is not None]
    best = max(ok, key=lambda row: row["m_value"])
    print(f"max M = {best['m_value']:.4f} at r = {best['r']:.3f}: I_B^hot = {best['i_b_hot']:.3f}, "
          f"I_B^cold = {best['i_b_cold']:.3f}, I_B^lambda = {best['i_b_lambda']:.3f}, verdict = {best['verdict']}")

    if _plotting.available():
        plt = _plotting.plt
        r = [row["r"] for row in ok]
        fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(5, 5))
        top.plot(r, [row["m_value"] for row in ok], "k")
        top.set_ylabel("M")
        for key, label in (("i_b_lambda", r"$I_B^\lambda$"), ("i_b_hot", r"$I_B^{hot}$"),
                           ("i_b_cold", r"$I_B^{cold}$")):
            bottom.plot(r, [row[key] for row in ok], label=label)
        bottom.set_xlabel("r")
        bottom.set_ylabel("Bel")
        bottom.legend()
        fig.tight_layout()
        fig.savefig(out / "sync.png", dpi=150)


if __name__ == "__main__":
    main()
