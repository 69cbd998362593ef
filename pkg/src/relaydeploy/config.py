"""INI-style plan files.

Every section is optional and every key falls back to the desk-scale default::

    [plan]
    network_sizes = 20, 30
    repetitions = 8
    base_seed = 0

    [grid]
    dims = 10, 10, 3
    spacing_m = 100
    comm_range_m = 141.42135623730951

    [layout]
    bs = 4 4 0
    chs = 3 3 0; 5 5 0; 3 5 1; 5 3 1; 4 4 2; 2 4 0; 6 4 0; 4 2 2; 4 6 2

Unknown sections or keys are rejected so typos do not pass silently.
"""
from __future__ import annotations

import configparser
from dataclasses import fields, replace
from pathlib import Path

from .deployment import GridSpec, SeedLayout
from .energy import EnergyParams
from .errors import ConfigurationError, RelayDeployError
from .harness import DEFAULT_GRID, DEFAULT_LAYOUT, ExperimentPlan
from .optimizers import ABCParams, DEParams, GSAParams

_PLAN_KEYS = {
    "network_sizes": "ints", "repetitions": "int", "traffic_levels": "floats",
    "optimizer_kinds": "words", "base_seed": "int", "scale_factor": "float",
    "generations": "int", "population_per_node": "int", "report_traffic": "float",
    "significance": "str", "record_wall_time": "bool", "workers": "int",
}
_OBJECTIVE_KEYS = {
    "n_candidates": "int", "penalty_beta": "float", "lambda2_floor": "float",
    "lambda2_max": "optfloat", "delta_mu": "float",
}
_PARAM_SECTIONS = {"energy": EnergyParams, "de": DEParams, "gsa": GSAParams, "abc": ABCParams}


def _vertex(text: str) -> tuple:
    parts = text.replace(",", " ").split()
    if len(parts) != 3:
        raise ConfigurationError(f"grid vertex needs three integers, got {text!r}")
    return tuple(int(p) for p in parts)


def _convert(kind: str, raw: str, where: str):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "optfloat":
            return None if raw.strip().lower() in ("", "none", "off") else float(raw)
        if kind == "ints":
            return tuple(int(x) for x in raw.replace(",", " ").split())
        if kind == "floats":
            return tuple(float(x) for x in raw.replace(",", " ").split())
        if kind == "words":
            return tuple(x for x in raw.replace(",", " ").split())
        if kind == "bool":
            low = raw.strip().lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        return raw.strip()
    except ValueError:
        raise ConfigurationError(f"{where}: cannot read {raw!r} as {kind}") from None


def _section(cp, name: str, spec: dict) -> dict:
    if not cp.has_section(name):
        return {}
    out = {}
    for key, raw in cp.items(name):
        if key not in spec:
            raise ConfigurationError(f"[{name}] unknown key {key!r}")
        out[key] = _convert(spec[key], raw, f"[{name}] {key}")
    return out


def _param_spec(cls) -> dict:
    spec = {}
    for f in fields(cls):
        spec[f.name] = "optint" if f.name == "limit" else ("int" if f.type in ("int",) else "float")
    return spec


def _params(cp, name: str, cls):
    if not cp.has_section(name):
        return cls()
    values = {}
    spec = _param_spec(cls)
    for key, raw in cp.items(name):
        if key not in spec:
            raise ConfigurationError(f"[{name}] unknown key {key!r}")
        if spec[key] == "optint":
            values[key] = None if raw.strip().lower() in ("", "none") else _convert("int", raw, key)
        else:
            values[key] = _convert(spec[key], raw, f"[{name}] {key}")
    try:
        return cls(**values)
    except RelayDeployError as exc:
        raise ConfigurationError(f"[{name}] {exc}") from None


def _grid(cp) -> GridSpec:
    if not cp.has_section("grid"):
        return DEFAULT_GRID
    vals = _section(cp, "grid", {"dims": "ints", "spacing_m": "float", "comm_range_m": "float"})
    try:
        return replace(DEFAULT_GRID, **vals)
    except RelayDeployError as exc:
        raise ConfigurationError(f"[grid] {exc}") from None


def _layout(cp) -> SeedLayout:
    if not cp.has_section("layout"):
        return DEFAULT_LAYOUT
    vals = _section(cp, "layout", {"bs": "str", "chs": "str"})
    bs = _vertex(vals["bs"]) if "bs" in vals else DEFAULT_LAYOUT.bs
    if "chs" in vals:
        chs = tuple(_vertex(c) for c in vals["chs"].split(";") if c.strip())
    else:
        chs = DEFAULT_LAYOUT.chs
    try:
        return SeedLayout(bs, chs)
    except RelayDeployError as exc:
        raise ConfigurationError(f"[layout] {exc}") from None


def parse_plan(text: str, **overrides) -> ExperimentPlan:
    """Build an :class:`ExperimentPlan` from INI text; ``overrides`` win over the file."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed plan file: {exc}") from None
    known = {"plan", "objective", "grid", "layout", *_PARAM_SECTIONS}
    extra = set(cp.sections()) - known
    if extra:
        raise ConfigurationError(f"unknown section(s): {', '.join(sorted(extra))}")
    kwargs = _section(cp, "plan", _PLAN_KEYS)
    kwargs.update(_section(cp, "objective", _OBJECTIVE_KEYS))
    kwargs["grid"] = _grid(cp)
    kwargs["layout"] = _layout(cp)
    for name, cls in _PARAM_SECTIONS.items():
        kwargs[name] = _params(cp, name, cls)
    kwargs.update(overrides)
    try:
        return ExperimentPlan(**kwargs)
    except RelayDeployError as exc:
        raise ConfigurationError(str(exc)) from None


def load_plan(path, **overrides) -> ExperimentPlan:
    return parse_plan(Path(path).read_text(encoding="utf-8"), **overrides)


def parse_layout(text: str) -> tuple:
    """(grid, layout) from a file holding only ``[grid]`` and ``[layout]``."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed layout file: {exc}") from None
    extra = set(cp.sections()) - {"grid", "layout"}
    if extra:
        raise ConfigurationError(f"unknown section(s): {', '.join(sorted(extra))}")
    return _grid(cp), _layout(cp)
