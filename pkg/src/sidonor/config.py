"""Run configuration: JSON file + command-line overrides.

Every physical quantity in the config is a string with an explicit unit
("10 nm", "0.5 V", "0.04 eV", "1e4 Hz"); bare numbers are rejected for
dimensioned fields so CGS/SI mixups cannot slip in.  Dimensionless entries
(alpha_a, beta grid, target) are plain numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_CONSTANTS, MaterialParams
from .electrostatics import GateGeometry
from .error_budget import DEFAULT_LINE_WIDTH, PlacementError


class ConfigError(Exception):
    """Invalid or missing configuration entry; ``field`` names the culprit."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


_UNITS = {
    "length": {"m": 1.0, "nm": 1e-9, "um": 1e-6, "A": 1e-10},
    "voltage": {"V": 1.0, "mV": 1e-3},
    "energy": {"J": 1.0, "eV": DEFAULT_CONSTANTS.e, "meV": 1e-3 * DEFAULT_CONSTANTS.e},
    "frequency": {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6},
    "field": {"T": 1.0, "mT": 1e-3},
    "density": {"m^-3": 1.0, "cm^-3": 1e6},
    "mass": {"kg": 1.0},
}


def parse_quantity(value, kind: str, field_name: str) -> float:
    """Parse "<number> <unit>" into SI; rejects bare numbers for dimensioned kinds."""
    units = _UNITS[kind]
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        raise ConfigError(
            field_name,
            f"unit required; write e.g. \"{value} {next(iter(units))}\"",
        )
    if not isinstance(value, str):
        raise ConfigError(field_name, f"expected a quantity string, got {value!r}")
    parts = value.split()
    if len(parts) != 2:
        raise ConfigError(field_name, f"expected \"<number> <unit>\", got {value!r}")
    num, unit = parts
    if unit not in units:
        raise ConfigError(
            field_name, f"unknown unit {unit!r}; allowed: {sorted(units)}"
        )
    try:
        return float(num) * units[unit]
    except ValueError:
        raise ConfigError(field_name, f"bad number {num!r}") from None


def parse_number(value, field_name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field_name, f"expected a plain number, got {value!r}")
    return float(value)


def _grid(section: dict, field_name: str, kind: str | None) -> list[float]:
    """Grid entry: {"values": [...]} or {"start": ..., "stop": ..., "points": n}."""
    def one(v, name):
        return parse_quantity(v, kind, name) if kind else parse_number(v, name)

    if "values" in section:
        vals = section["values"]
        if not isinstance(vals, list) or not vals:
            raise ConfigError(f"{field_name}.values", "expected a non-empty list")
        return [one(v, f"{field_name}.values[{i}]") for i, v in enumerate(vals)]
    for key in ("start", "stop", "points"):
        if key not in section:
            raise ConfigError(f"{field_name}.{key}", "required for a grid")
    n = section["points"]
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"{field_name}.points", "must be a positive integer")
    lo = one(section["start"], f"{field_name}.start")
    hi = one(section["stop"], f"{field_name}.stop")
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


@dataclass
class RunConfig:
    material: MaterialParams = field(default_factory=MaterialParams)
    gate: GateGeometry | None = None
    voltages: list[float] = field(default_factory=lambda: [0.0, 0.5, 1.0])
    placement: PlacementError = field(default_factory=lambda: PlacementError(dx=1e-9, dz=1e-9))
    target: float = 0.01
    line_width: float = DEFAULT_LINE_WIDTH
    nulling_ranges: dict | None = None
    alpha_a: float = 0.3
    alpha_b: float = 0.4
    beta_grid: list[float] = field(default_factory=lambda: list(np.linspace(0.2, 3.0, 401)))
    mu_mode: str = "slaved"
    mu_fixed: float = 0.0


def set_by_path(data: dict, assignment: str):
    """Apply one ``--set a.b.c=value`` override; value parsed as JSON if possible."""
    if "=" not in assignment:
        raise ConfigError("--set", f"expected key=value, got {assignment!r}")
    path, raw = assignment.split("=", 1)
    keys = path.strip().split(".")
    if not all(keys):
        raise ConfigError("--set", f"bad key path {path!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    node = data
    for k in keys[:-1]:
        node = node.setdefault(k, {})
        if not isinstance(node, dict):
            raise ConfigError(path, "path collides with a non-object entry")
    node[keys[-1]] = value


def load_config(path: str | None, overrides: list[str] | None = None) -> RunConfig:
    data: dict = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise ConfigError("--config", f"file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError("--config", f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(data, dict):
            raise ConfigError("--config", "top level must be a JSON object")
    for assignment in overrides or []:
        set_by_path(data, assignment)
    return build_run_config(data)


def build_run_config(data: dict) -> RunConfig:
    cfg = RunConfig()

    mat = data.get("material", {})
    if not isinstance(mat, dict):
        raise ConfigError("material", "must be an object")
    mat_kwargs = {}
    for key, kind in (
        ("a_star", "length"),
        ("psi0_sq", "density"),
        ("Delta_E", "energy"),
        ("delta_E", "energy"),
        ("m_star", "mass"),
    ):
        if key in mat:
            mat_kwargs[key] = parse_quantity(mat[key], kind, f"material.{key}")
    if "eps_r" in mat:
        mat_kwargs["eps_r"] = parse_number(mat["eps_r"], "material.eps_r")
    cfg.material = MaterialParams(**mat_kwargs)

    if "gate" in data:
        g = data["gate"]
        if not isinstance(g, dict):
            raise ConfigError("gate", "must be an object")
        if "kind" not in g:
            raise ConfigError("gate.kind", "required")
        kwargs = {"kind": g["kind"]}
        for key in ("a", "c", "D"):
            if key in g:
                kwargs[key] = parse_quantity(g[key], "length", f"gate.{key}")
        try:
            cfg.gate = GateGeometry(**kwargs)
        except (TypeError, ValueError) as exc:
            raise ConfigError("gate", str(exc)) from None

    if "voltage" in data:
        cfg.voltages = _grid(data["voltage"], "voltage", "voltage")

    if "placement" in data:
        p = data["placement"]
        cfg.placement = PlacementError(
            dx=parse_quantity(p.get("dx", "0 nm"), "length", "placement.dx"),
            dz=parse_quantity(p.get("dz", "0 nm"), "length", "placement.dz"),
        )

    eb = data.get("error_budget", {})
    if "target" in eb:
        cfg.target = parse_number(eb["target"], "error_budget.target")
    if "line_width" in eb:
        cfg.line_width = parse_quantity(eb["line_width"], "frequency", "error_budget.line_width")
    if "ranges" in eb:
        ranges = {}
        for key, kind in (("a", "length"), ("c", "length"), ("V", "voltage")):
            if key not in eb["ranges"]:
                raise ConfigError(f"error_budget.ranges.{key}", "required")
            pair = eb["ranges"][key]
            if not isinstance(pair, list) or len(pair) != 2:
                raise ConfigError(
                    f"error_budget.ranges.{key}", "expected [low, high]"
                )
            ranges[key] = (
                parse_quantity(pair[0], kind, f"error_budget.ranges.{key}[0]"),
                parse_quantity(pair[1], kind, f"error_budget.ranges.{key}[1]"),
            )
        cfg.nulling_ranges = ranges

    spin = data.get("spin", {})
    if "alpha_a" in spin:
        cfg.alpha_a = parse_number(spin["alpha_a"], "spin.alpha_a")
    if "alpha_b" in spin:
        cfg.alpha_b = parse_number(spin["alpha_b"], "spin.alpha_b")
    if "beta" in spin:
        cfg.beta_grid = _grid(spin["beta"], "spin.beta", None)
    if "mu" in spin:
        mu = spin["mu"]
        if mu == "slaved":
            cfg.mu_mode = "slaved"
        else:
            cfg.mu_mode = "fixed"
            cfg.mu_fixed = parse_number(mu, "spin.mu")

    return cfg
