"""Flat key-value config files, CSV tables and JSON reports.

Config format: one ``key = value`` per line, ``#`` starts a comment, blank
lines are ignored. Keys are the :class:`~qmpemba.scenario.ScenarioConfig`
field names. Angles may be written as multiples of pi (``0.025pi``).
"""

from __future__ import annotations

import csv
import json
import math
import re
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConfigError
from .scenario import CONFIG_KEYS, Axis, ScenarioConfig, ScenarioResult

_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*$")

INT_KEYS = {"grid_points"}
STR_KEYS = {"norm_mode", "hamiltonian_mode"}


def parse_number(text: str) -> float:
    """Float literal, optionally suffixed by ``pi`` (``0.2pi``, ``0.2*pi``, ``pi``)."""
    m = _PI_RE.match(text)
    if m:
        coef = float(m.group(1)) if m.group(1) else 1.0
        return coef * math.pi
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def read_config_file(path) -> dict[str, str]:
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    out: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in out:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def config_from_mapping(values: Mapping[str, str]) -> ScenarioConfig:
    kwargs: dict = {}
    for key, text in values.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if key in STR_KEYS:
            kwargs[key] = text
        elif key in INT_KEYS:
            try:
                kwargs[key] = int(text)
            except ValueError:
                raise ConfigError(f"{key} must be an integer, got {text!r}") from None
        elif text.lower() == "none":
            kwargs[key] = None
        else:
            kwargs[key] = parse_number(text)
    # an explicit absolute drive overrides the default ratio
    if "omega" in kwargs and kwargs["omega"] is not None and "omega_ratio" not in kwargs:
        kwargs["omega_ratio"] = None
    return ScenarioConfig(**kwargs)


def load_config(path=None, overrides: Mapping[str, str] | None = None) -> ScenarioConfig:
    values = read_config_file(path) if path is not None else {}
    values.update(overrides or {})
    return config_from_mapping(values)


def parse_axis(text: str) -> Axis:
    """``name:min:max:steps`` such as ``r:0:1.2:60`` or ``phi_d:0:0.2pi:40``."""
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"axis must look like name:min:max:steps, got {text!r}")
    name, lo, hi, steps = parts
    try:
        n = int(steps)
    except ValueError:
        raise ConfigError(f"axis steps must be an integer, got {steps!r}") from None
    return Axis(name=name.strip(), min=parse_number(lo), max=parse_number(hi), steps=n)


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def emit_csv(header: Sequence[str], rows: Iterable[Sequence], path) -> Path:
    """Write an RFC-4180 CSV with a header row and round-trip-exact floats."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_cell(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def emit_table(table: Sequence[Mapping], path, columns: Sequence[str] | None = None) -> Path:
    if columns is None:
        columns = list(table[0].keys()) if table else []
    return emit_csv(columns, ([row.get(c) for c in columns] for row in table), path)


def emit_curves(result: ScenarioResult, path) -> Path:
    g0 = result.config.gamma0
    rows = zip(g0 * result.times, result.curve_cold.values, result.curve_hot.values)
    return emit_csv(("gamma0_t", "B_cold", "B_hot"), rows, path)


def config_to_dict(cfg: ScenarioConfig) -> dict:
    return {k: getattr(cfg, k) for k in CONFIG_KEYS}


def write_report(result: ScenarioResult, path) -> Path:
    path = Path(path)
    payload = result.report.to_dict()
    payload["config"] = config_to_dict(result.config)
    try:
        path.write_text(json.dumps(payload, indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def emit_panels(table: Sequence[Mapping], axes: Sequence[Axis], outdir) -> list[Path]:
    """One file per quantity: 1-axis columns, or 2-axis grids (rows = axis1)."""
    outdir = Path(outdir)
    written = []
    quantities = ("m_value", "i_b_lambda", "i_b_hot", "i_b_cold")
    if len(axes) == 1:
        name = axes[0].name
        for q in quantities:
            written.append(emit_csv((name, q), ((row[name], row[q]) for row in table),
                                    outdir / f"panel_{q}.csv"))
        return written
    a1, a2 = axes
    n2 = int(a2.steps)
    for q in quantities:
        header = [f"{a1.name}\\{a2.name}"] + [format_cell(float(v)) for v in a2.values]
        rows = []
        for i, v1 in enumerate(a1.values):
            chunk = table[i * n2:(i + 1) * n2]
            rows.append([float(v1)] + [row[q] for row in chunk])
        written.append(emit_csv(header, rows, outdir / f"heatmap_{q}.csv"))
    return written
