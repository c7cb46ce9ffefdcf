"""Run configuration: a flat key registry, file parsing, flag overrides.

Config files are line oriented, one ``key = value`` per line, with ``#``
comments and blank lines ignored. Flags arrive as ``key=value`` strings
and win over file values, which win over the documented defaults. Keys
outside the registry are rejected, and every run keeps its fully
resolved configuration (defaults included) for embedding in artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import ConfigError

SUBCOMMANDS = ("electron", "epr", "sterngerlach", "budget")


@dataclass(frozen=True)
class Option:
    key: str
    kind: str                      # int | float | str | vec3 | angles4
    default: Any
    choices: tuple | None = None
    help: str = ""


_OPTIONS = [
    Option("subcommand", "str", None, choices=SUBCOMMANDS),
    Option("seed", "int", 12345, help="random seed for every sampled quantity"),
    Option("out", "str", "out", help="output directory for artifacts"),
    Option("format", "str", "csv", choices=("csv", "json"),
           help="tabular artifact format; reports are always JSON"),

    Option("electron.rho0", "float", 1.0, help="mass-density amplitude"),
    Option("electron.u", "float", 1.0, help="mechanical velocity"),
    Option("electron.helicity", "str", "+", choices=("+", "-")),
    Option("electron.zmin", "float", 0.0),
    Option("electron.zmax", "float", 2.0 * math.pi,
           help="one wavelength at the default parameters"),
    Option("electron.points", "int", 256),
    Option("electron.t", "float", 0.0),
    Option("electron.units", "str", "atomic", choices=("atomic", "si")),
    Option("electron.field_split", "float", 0.5,
           help="fraction of the field energy carried by E"),

    Option("epr.mode", "str", "curve", choices=("curve", "chsh", "singles")),
    Option("epr.phi1_deg", "float", 0.0, help="reference analyzer angle"),
    Option("epr.delta_deg", "float", 0.0, help="source phase difference"),
    Option("epr.step_deg", "float", 1.0, help="curve resolution"),
    Option("epr.angles_deg", "angles4", (0.0, 45.0, 22.5, 67.5),
           help="phi1, phi1', phi2, phi2' for the CHSH run"),
    Option("epr.angle_deg", "float", 0.0, help="analyzer angle for singles"),
    Option("epr.n", "int", 1_000_000, help="Monte Carlo trials"),
    Option("epr.workers", "int", 1),

    Option("sterngerlach.kappa", "float", 1.0, help="torque coupling"),
    Option("sterngerlach.u", "vec3", (0.0, 0.0, 1.0), help="electron velocity"),
    Option("sterngerlach.bdir", "vec3", (1.0, 0.0, 0.0), help="field direction"),
    Option("sterngerlach.brate", "float", 1.0, help="field ramp rate dB/dt"),
    Option("sterngerlach.duration", "float", 1.0),
    Option("sterngerlach.dt", "float", 1e-3),
    Option("sterngerlach.ramp", "str", "linear", choices=("linear", "cosine")),
    Option("sterngerlach.es0", "vec3", (0.0, 0.0, 1.0), help="initial spin direction"),
    Option("sterngerlach.threshold", "float", 0.99),
    Option("sterngerlach.record_every", "int", 1),

    Option("budget.band_energy_mev", "float", 80.0),
    Option("budget.resolution_pm", "float", 20.0),
    Option("budget.feature_pm", "float", 30.0),
    Option("budget.error_pm", "float", 0.1),
    Option("budget.convention", "float", 0.5, choices=(0.5, 1.0)),
]

REGISTRY = {opt.key: opt for opt in _OPTIONS}


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved batch run."""

    subcommand: str
    seed: int
    out: str
    format: str
    params: dict

    def resolved(self) -> dict:
        """Flat view of everything this run will use, defaults included."""
        flat = {
            "subcommand": self.subcommand,
            "seed": self.seed,
            "out": self.out,
            "format": self.format,
        }
        for key in sorted(self.params):
            flat[key] = self.params[key]
        return flat


def _parse_value(opt: Option, raw: Any, where: str) -> Any:
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    try:
        if opt.kind == "int":
            value: Any = int(text)
        elif opt.kind == "float":
            value = float(text)
        elif opt.kind == "str":
            value = text
        elif opt.kind == "vec3":
            parts = [float(p) for p in text.split(",")]
            if len(parts) != 3:
                raise ValueError(f"expected 3 components, got {len(parts)}")
            value = tuple(parts)
        elif opt.kind == "angles4":
            parts = [float(p) for p in text.split(",")]
            if len(parts) != 4:
                raise ValueError(f"expected 4 angles, got {len(parts)}")
            value = tuple(parts)
        else:  # pragma: no cover - registry is static
            raise ValueError(f"unknown kind {opt.kind}")
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for '{opt.key}': {exc}") from None
    if opt.choices is not None and value not in opt.choices:
        raise ConfigError(
            f"{where}: '{opt.key}' must be one of {list(opt.choices)}, got {value!r}")
    return value


def _assign(resolved: dict, key: str, raw: Any, where: str):
    opt = REGISTRY.get(key)
    if opt is None:
        raise ConfigError(f"{where}: unknown key '{key}'")
    resolved[key] = _parse_value(opt, raw, where)


def parse_config(file_text: str, overrides: Sequence[str] = ()) -> RunConfig:
    """Resolve defaults, then the config file, then override flags."""
    resolved = {opt.key: opt.default for opt in _OPTIONS}

    for lineno, line in enumerate(file_text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, sep, raw = stripped.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        _assign(resolved, key.strip(), raw, f"line {lineno}")

    for item in overrides:
        key, sep, raw = str(item).partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"override: expected 'key=value', got {item!r}")
        _assign(resolved, key.strip(), raw, "override")

    subcommand = resolved["subcommand"]
    if subcommand is None:
        raise ConfigError("no subcommand selected")

    prefix = subcommand + "."
    params = {k: v for k, v in resolved.items() if k.startswith(prefix)}
    return RunConfig(
        subcommand=subcommand,
        seed=resolved["seed"],
        out=resolved["out"],
        format=resolved["format"],
        params=params,
    )
