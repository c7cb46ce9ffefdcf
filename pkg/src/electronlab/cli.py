"""Batch command-line front end.

Four subcommands (electron, epr, sterngerlach, budget) read a config
file plus flag overrides, run the corresponding physics module, and
write CSV/JSON artifacts into the output directory. Angles cross the
boundary in degrees and are converted to radians internally. Every
artifact embeds the resolved configuration and the tool version, and
identical configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__, epr_model, spin_dynamics
from .config import RunConfig, parse_config
from .constants import COHESIVE_POTENTIAL_EV, UNIT_SYSTEMS
from .electron_model import PROFILE_COLUMNS, PlaneWaveElectron, profile_rows
from .errors import ConfigError, ElectronLabError
from .uncertainty import budget_report


def _fmt(value) -> str:
    """Fixed 17-significant-digit float formatting; round-trip exact."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (tuple, list)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def _meta(config: RunConfig) -> dict:
    return {"version": __version__, "config": config.resolved()}


def _write_json(path: Path, payload: dict):
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n",
                    encoding="utf-8")
    print(f"wrote {path}")


def _write_csv(path: Path, columns, rows, config: RunConfig):
    lines = [f"# version = {__version__}"]
    for key, value in config.resolved().items():
        lines.append(f"# {key} = {_fmt(value)}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def _write_table(path: Path, name: str, columns, rows, config: RunConfig):
    """Tabular artifact in the configured format (CSV gets a JSON mirror)."""
    payload = {**_meta(config), "columns": list(columns), "rows": rows}
    if config.format == "csv":
        _write_csv(path / f"{name}.csv", columns, rows, config)
    _write_json(path / f"{name}.json", payload)


def _out_dir(config: RunConfig) -> Path:
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _run_electron(config: RunConfig, out: Path) -> int:
    p = config.params
    points = p["electron.points"]
    if points < 1:
        raise ConfigError(f"electron.points must be >= 1, got {points}")
    zmin, zmax = p["electron.zmin"], p["electron.zmax"]
    if points > 1 and zmax <= zmin:
        raise ConfigError(f"electron.zmax must exceed electron.zmin, got {zmax} <= {zmin}")
    electron = PlaneWaveElectron(
        rho0=p["electron.rho0"],
        u=p["electron.u"],
        helicity="plus" if p["electron.helicity"] == "+" else "minus",
        units=UNIT_SYSTEMS[p["electron.units"]],
        field_split=p["electron.field_split"],
    )
    if points == 1:
        zs = [zmin]
    else:
        step = (zmax - zmin) / (points - 1)
        zs = [zmin + i * step for i in range(points)]
    rows = profile_rows(electron, zs, t=p["electron.t"])

    payload = {**_meta(config),
               "wavelength": electron.wavelength,
               "nu": electron.nu,
               "E0": electron.E0,
               "H0": electron.H0,
               "cohesive_potential_ev": COHESIVE_POTENTIAL_EV,
               "columns": list(PROFILE_COLUMNS),
               "rows": rows}
    if config.format == "csv":
        _write_csv(out / "electron_profile.csv", PROFILE_COLUMNS, rows, config)
    _write_json(out / "electron_profile.json", payload)
    print(f"electron profile: {len(rows)} samples, wavelength = {_fmt(electron.wavelength)}")
    return 0


def _run_epr(config: RunConfig, out: Path) -> int:
    p = config.params
    mode = p["epr.mode"]
    delta = math.radians(p["epr.delta_deg"])

    if mode == "curve":
        phi1 = math.radians(p["epr.phi1_deg"])
        step = p["epr.step_deg"]
        if step <= 0.0:
            raise ConfigError(f"epr.step_deg must be positive, got {step}")
        rows = []
        count = int(round(360.0 / step))
        for i in range(count):
            phi_deg = i * step
            pair = epr_model.AnalyzerPair(phi1, phi1 + math.radians(phi_deg), delta)
            rows.append({"phi_deg": phi_deg, "E": epr_model.expectation(pair)})
        _write_table(out, "epr_curve", ("phi_deg", "E"), rows, config)
        print(f"correlation curve: {len(rows)} settings")
        return 0

    if mode == "chsh":
        degs = p["epr.angles_deg"]
        settings = epr_model.ChshSettings(*(math.radians(d) for d in degs))
        pairs = [(settings.phi1, settings.phi2), (settings.phi1, settings.phi2p),
                 (settings.phi1p, settings.phi2), (settings.phi1p, settings.phi2p)]
        e_matrix = [
            [epr_model.expectation(epr_model.AnalyzerPair(a, b, delta)) for a, b in pairs[:2]],
            [epr_model.expectation(epr_model.AnalyzerPair(a, b, delta)) for a, b in pairs[2:]],
        ]
        s = epr_model.chsh_sum(settings, delta)
        payload = {**_meta(config),
                   "settings_deg": list(degs),
                   "E_matrix": e_matrix,
                   "S": s}
        _write_json(out / "epr_chsh.json", payload)
        print(f"CHSH sum S = {_fmt(s)}")
        return 0

    # singles
    n = p["epr.n"]
    hits, rate = epr_model.monte_carlo_singles(
        math.radians(p["epr.angle_deg"]), side="A", delta=delta,
        n=n, seed=config.seed, workers=p["epr.workers"])
    stderr = math.sqrt(rate * (1.0 - rate) / n)
    payload = {**_meta(config),
               "angle_deg": p["epr.angle_deg"],
               "n": n,
               "hits": hits,
               "rate": rate,
               "stderr": stderr}
    _write_json(out / "epr_singles.json", payload)
    print(f"singles rate = {_fmt(rate)} ({hits}/{n})")
    return 0


def _run_sterngerlach(config: RunConfig, out: Path) -> int:
    p = config.params
    duration = p["sterngerlach.duration"]
    rate = p["sterngerlach.brate"]
    b_dir = p["sterngerlach.bdir"]
    if p["sterngerlach.ramp"] == "linear":
        ramp = spin_dynamics.linear_ramp(rate, duration, b_dir)
    else:
        # same net field change as the linear ramp at this rate
        ramp = spin_dynamics.cosine_ramp(rate * duration, duration, b_dir)
    params = spin_dynamics.LLParams(
        kappa=p["sterngerlach.kappa"], u=p["sterngerlach.u"], dt=p["sterngerlach.dt"])
    state0 = spin_dynamics.SpinState.from_vector(p["sterngerlach.es0"])
    trajectory = spin_dynamics.integrate(
        state0, ramp, params, record_every=p["sterngerlach.record_every"])

    rows = []
    for t, state in trajectory:
        ex, ey, ez = state.e_s
        rows.append({"t": t, "ex": ex, "ey": ey, "ez": ez,
                     "dot_B": ex * ramp.b_dir[0] + ey * ramp.b_dir[1] + ez * ramp.b_dir[2]})
    _write_table(out, "sterngerlach_trajectory", ("t", "ex", "ey", "ez", "dot_B"),
                 rows, config)

    threshold = p["sterngerlach.threshold"]
    final = trajectory[-1][1]
    label = spin_dynamics.classify_deflection(final, ramp.b_dir, threshold)
    payload = {**_meta(config),
               "classification": label,
               "kappa": params.kappa,
               "ramp": {"shape": p["sterngerlach.ramp"],
                        "b_dir": list(ramp.b_dir),
                        "rate": rate,
                        "duration": duration,
                        "dt": params.dt},
               "threshold": threshold,
               "final": {"t": trajectory[-1][0],
                         "e_s": list(final.e_s),
                         "dot_B": rows[-1]["dot_B"]}}
    _write_json(out / "sterngerlach_summary.json", payload)
    print(f"deflection: {label} (e_s . B = {_fmt(rows[-1]['dot_B'])})")
    return 0


def _run_budget(config: RunConfig, out: Path) -> int:
    p = config.params
    budget = budget_report(
        band_energy_ev=p["budget.band_energy_mev"] / 1000.0,
        lateral_resolution_pm=p["budget.resolution_pm"],
        feature_height_pm=p["budget.feature_pm"],
        height_error_pm=p["budget.error_pm"],
        convention_factor=p["budget.convention"],
    )
    fields = budget.as_dict()
    width = max(len(k) for k in fields)
    for key, value in fields.items():
        print(f"{key:<{width}}  {_fmt(value)}")
    _write_json(out / "budget.json", {**_meta(config), "budget": fields})
    return 0


_RUNNERS = {
    "electron": _run_electron,
    "epr": _run_epr,
    "sterngerlach": _run_sterngerlach,
    "budget": _run_budget,
}


def run(config: RunConfig) -> int:
    """Dispatch one resolved configuration and write its artifacts."""
    return _RUNNERS[config.subcommand](config, _out_dir(config))


# argparse dest -> (config key, flag name); one table per subcommand
_FLAG_MAPS = {
    "electron": {
        "rho0": "electron.rho0", "u": "electron.u", "helicity": "electron.helicity",
        "zmin": "electron.zmin", "zmax": "electron.zmax", "points": "electron.points",
        "t": "electron.t", "units": "electron.units", "field_split": "electron.field_split",
    },
    "epr": {
        "mode": "epr.mode", "angles": "epr.angles_deg", "angle": "epr.angle_deg",
        "n": "epr.n", "phi1_deg": "epr.phi1_deg", "delta_deg": "epr.delta_deg",
        "step_deg": "epr.step_deg", "workers": "epr.workers",
    },
    "sterngerlach": {
        "kappa": "sterngerlach.kappa", "u": "sterngerlach.u", "bdir": "sterngerlach.bdir",
        "brate": "sterngerlach.brate", "duration": "sterngerlach.duration",
        "dt": "sterngerlach.dt", "ramp": "sterngerlach.ramp", "es0": "sterngerlach.es0",
        "threshold": "sterngerlach.threshold", "record_every": "sterngerlach.record_every",
    },
    "budget": {
        "band_energy_mev": "budget.band_energy_mev", "resolution_pm": "budget.resolution_pm",
        "feature_pm": "budget.feature_pm", "error_pm": "budget.error_pm",
        "convention": "budget.convention",
    },
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--config", default=None, help="key = value config file")

    parser = argparse.ArgumentParser(
        prog="electronlab",
        description="Batch runner for the extended-electron laboratory.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    electron = sub.add_parser("electron", parents=[common],
                              help="density/energy/wavefunction profiles")
    electron.add_argument("--rho0", type=float)
    electron.add_argument("--u", type=float)
    electron.add_argument("--helicity", choices=("+", "-"))
    electron.add_argument("--zmin", type=float)
    electron.add_argument("--zmax", type=float)
    electron.add_argument("--points", type=int)
    electron.add_argument("--t", type=float)
    electron.add_argument("--units", choices=("atomic", "si"))
    electron.add_argument("--field-split", dest="field_split", type=float)

    epr = sub.add_parser("epr", parents=[common],
                         help="correlation curve, CHSH report, singles sampling")
    group = epr.add_mutually_exclusive_group()
    group.add_argument("--curve", dest="mode", action="store_const", const="curve")
    group.add_argument("--chsh", dest="mode", action="store_const", const="chsh")
    group.add_argument("--singles", dest="mode", action="store_const", const="singles")
    epr.add_argument("--angles", help="phi1,phi1',phi2,phi2' in degrees")
    epr.add_argument("--angle", type=float, help="singles analyzer angle in degrees")
    epr.add_argument("--n", type=int, help="Monte Carlo trials")
    epr.add_argument("--phi1-deg", dest="phi1_deg", type=float)
    epr.add_argument("--delta-deg", dest="delta_deg", type=float)
    epr.add_argument("--step-deg", dest="step_deg", type=float)
    epr.add_argument("--workers", type=int)

    sg = sub.add_parser("sterngerlach", parents=[common],
                        help="spin trajectory in a ramping field")
    sg.add_argument("--kappa", type=float)
    sg.add_argument("--u", help="velocity vector ux,uy,uz")
    sg.add_argument("--bdir", help="field direction x,y,z")
    sg.add_argument("--brate", type=float, help="ramp rate dB/dt")
    sg.add_argument("--duration", type=float)
    sg.add_argument("--dt", type=float)
    sg.add_argument("--ramp", choices=("linear", "cosine"))
    sg.add_argument("--es0", help="initial spin direction x,y,z")
    sg.add_argument("--threshold", type=float)
    sg.add_argument("--record-every", dest="record_every", type=int)

    budget = sub.add_parser("budget", parents=[common],
                            help="measurement uncertainty budget")
    budget.add_argument("--band-energy-mev", dest="band_energy_mev", type=float)
    budget.add_argument("--resolution-pm", dest="resolution_pm", type=float)
    budget.add_argument("--feature-pm", dest="feature_pm", type=float)
    budget.add_argument("--error-pm", dest="error_pm", type=float)
    budget.add_argument("--convention", type=float, choices=(0.5, 1.0))

    return parser


def _collect_overrides(args: argparse.Namespace) -> list[str]:
    overrides = [f"subcommand={args.subcommand}"]
    for dest, key in (("seed", "seed"), ("out", "out"), ("format", "format")):
        value = getattr(args, dest)
        if value is not None:
            overrides.append(f"{key}={value}")
    for dest, key in _FLAG_MAPS[args.subcommand].items():
        value = getattr(args, dest, None)
        if value is not None:
            overrides.append(f"{key}={value}")
    return overrides


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
        config = parse_config(file_text, _collect_overrides(args))
        return run(config)
    except ElectronLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
