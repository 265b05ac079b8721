"""Command-line entry point: ``qmpemba {scenario,sweep,spectrum,selftest}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import selftest
from .analysis import coefficients, decay_ratio_bels
from .errors import ConfigError, MpembaError
from .files import (
    config_to_dict,
    emit_curves,
    emit_panels,
    emit_table,
    load_config,
    parse_axis,
    write_report,
)
from .scenario import SWEEP_COLUMNS, SweepSpec, prepare_states, run_scenario, run_sweep

log = logging.getLogger("qmpemba")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


def _overrides(pairs: list[str]) -> dict[str, str]:
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _config(args):
    return load_config(args.config, _overrides(args.set))


def cmd_scenario(args) -> int:
    cfg = _config(args)
    result = run_scenario(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_curves(result, out / "curves.csv")
    write_report(result, out / "report.json")
    if args.panels:
        t = result.config.gamma0 * result.times
        emit_table(
            [{"gamma0_t": a, "B_cold": b, "B_hot": c}
             for a, b, c in zip(t, result.curve_cold.values, result.curve_hot.values)],
            out / "panel_distance.csv",
        )
    rep = result.report
    print(f"M = {rep.m_value:.6f}  crossings = {len(rep.crossings)}  verdict = {rep.verdict}")
    print(f"I_B^lambda = {rep.i_b_lambda:.4f}  I_B^hot = {rep.i_b_hot:.4f}  I_B^cold = {rep.i_b_cold:.4f}")
    print(f"wrote {out / 'curves.csv'} and {out / 'report.json'}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config(args)
    spec = SweepSpec(
        axis1=parse_axis(args.axis1),
        axis2=parse_axis(args.axis2) if args.axis2 else None,
        fixed=cfg,
    )
    table = run_sweep(spec, jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    columns = [a.name for a in spec.axes] + list(SWEEP_COLUMNS)
    emit_table(table, out / "sweep.csv", columns)
    if args.panels:
        emit_panels(table, spec.axes, out)
    failed = sum(row["error"] is not None for row in table)
    best = max((row for row in table if row["m_value"] is not None),
               key=lambda row: row["m_value"], default=None)
    print(f"{len(table)} points, {failed} failed; wrote {out / 'sweep.csv'}")
    if best is not None:
        where = ", ".join(f"{a.name}={best[a.name]:.6g}" for a in spec.axes)
        print(f"max M = {best['m_value']:.6f} at {where}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    cfg = _config(args)
    rho_hot, rho_cold, decomp, target = prepare_states(cfg)
    g_hot = coefficients(decomp, rho_hot)
    g_cold = coefficients(decomp, rho_cold)
    pairs = lambda z: [[float(v.real), float(v.imag)] for v in z]  # noqa: E731
    payload = {
        "config": config_to_dict(cfg),
        "eigenvalues": pairs(decomp.eigenvalues),
        "gamma_hot": pairs(g_hot.gammas),
        "gamma_cold": pairs(g_cold.gammas),
        "abs_gamma_hot": [float(x) for x in g_hot.magnitudes],
        "abs_gamma_cold": [float(x) for x in g_cold.magnitudes],
        "i_b_lambda": decay_ratio_bels(decomp),
        "steady_state": np.real_if_close(target).real.tolist(),
        "completeness_residual": decomp.completeness_residual(),
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run(seed=args.seed)
    return EXIT_OK if all(v is None for v in results.values()) else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qmpemba",
        description="Quantum Mpemba effect of a driven qubit in a squeezed thermal bath.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_config(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config value (repeatable)")

    p = sub.add_parser("scenario", help="one hot/cold cooling run")
    with_config(p)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--panels", action="store_true", help="also write per-panel data files")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("sweep", help="grid of scenarios")
    with_config(p)
    p.add_argument("--axis1", required=True, help="name:min:max:steps, e.g. r:0:1.2:60")
    p.add_argument("--axis2", help="optional second axis, e.g. phi_d:0:0.2pi:40")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--panels", action="store_true", help="also write per-quantity grid files")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", help="eigenvalues and mode populations as JSON")
    with_config(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("selftest", help="analytic-oracle and invariant checks")
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MpembaError, np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
