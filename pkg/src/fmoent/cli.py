"""Command-line front end: parameter scans, CSV emission, config loading.

Scans evaluate one observable over a grid of up to two swept axes and write
RFC-4180-style CSV (header row first, 12 significant digits, '\\n' line
endings).  Identical inputs produce byte-identical output.

Subcommands: ``scan`` (general observable scans), ``table`` (the exciton
energy/amplitude table) and ``check`` (closed-form amplitude against the
numerical integrator, printing the maximum error).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .entanglement import (
    WStateParams,
    XStateParams,
    global_entanglement,
    meyer_wallach_closed,
    meyer_wallach_numeric,
    w_state_exciton_rho,
    w_state_reservoir_rho,
    x_state_register,
)
from .fidelity import f_ghz_split, f_ghz_teleport, f_w_split, f_w_teleport
from .fmo import build_hamiltonian, dataset, exciton_table, load_site_energies
from .reservoir import (
    CM1_TO_RAD_PER_PS,
    ReservoirParams,
    amplitude,
    amplitude_ode_oracle,
    damping,
    population_difference,
)

__all__ = [
    "ConfigError",
    "AxisSpec",
    "ScanSpec",
    "ScanResult",
    "load_config",
    "run_scan",
    "emit_csv",
    "main",
]

OBSERVABLES = (
    "delta_p",
    "e_exciton",
    "e_reservoir",
    "q_closed",
    "q_numeric",
    "f_ghz_tele",
    "f_w_tele",
    "f_ghz_split",
    "f_w_split",
    "exciton_table",
    "u_amplitude",
)

AXIS_NAMES = ("t", "gamma0", "half_width", "delta", "b", "n")

_AXIS_LABELS = {
    "t": "t_ps",
    "gamma0": "gamma0_cm1",
    "half_width": "half_width_cm1",
    "delta": "delta_cm1",
    "b": "b",
    "n": "n",
}

_VALUE_COLUMNS = {
    "delta_p": ["delta_p"],
    "u_amplitude": ["u_re", "u_im", "u_abs2"],
    "e_exciton": ["e_exciton"],
    "e_reservoir": ["e_reservoir"],
    "q_closed": ["q"],
    "q_numeric": ["q"],
    "f_ghz_tele": ["p_damp", "fidelity"],
    "f_w_tele": ["p_damp", "fidelity"],
    "f_ghz_split": ["p_damp", "fidelity"],
    "f_w_split": ["p_damp", "fidelity"],
}

# parameters each observable consumes (beyond what is swept)
_NEEDED = {
    "delta_p": ("gamma0", "half_width", "delta", "t"),
    "u_amplitude": ("gamma0", "half_width", "delta", "t"),
    "e_exciton": ("gamma0", "half_width", "delta", "t", "n"),
    "e_reservoir": ("gamma0", "half_width", "delta", "t", "n"),
    "q_closed": ("gamma0", "half_width", "delta", "t", "b"),
    "q_numeric": ("gamma0", "half_width", "delta", "t", "b"),
    "f_ghz_tele": ("gamma0", "half_width", "delta", "t", "n"),
    "f_ghz_split": ("gamma0", "half_width", "delta", "t", "n"),
    "f_w_tele": ("gamma0", "half_width", "delta", "t"),
    "f_w_split": ("gamma0", "half_width", "delta", "t"),
    "exciton_table": (),
}

_DEFAULTS = {"delta": 0.0, "n": 4.0}

_CONFIG_KEYS = (
    "observable",
    "axis1",
    "axis2",
    "gamma0",
    "half_width",
    "delta",
    "a",
    "b",
    "n",
    "t",
    "dataset",
    "output",
)

_NUMERIC_KEYS = ("gamma0", "half_width", "delta", "a", "b", "n", "t")


class ConfigError(ValueError):
    """Raised for malformed scan configurations."""


@dataclass(frozen=True)
class AxisSpec:
    """One swept axis: ``steps`` evenly spaced values from start to stop."""

    name: str
    start: float
    stop: float
    steps: int

    def values(self) -> np.ndarray:
        if self.name not in AXIS_NAMES:
            raise ConfigError(f"axis: unknown axis name {self.name!r}; use one of {AXIS_NAMES}")
        if self.steps < 2:
            raise ConfigError(f"axis {self.name}: steps must be >= 2, got {self.steps}")
        grid = np.linspace(self.start, self.stop, self.steps)
        if self.name == "n":
            rounded = np.round(grid)
            if np.abs(grid - rounded).max() > 1e-9:
                raise ConfigError(f"axis n: values must be integers, got {grid.tolist()}")
            return rounded
        return grid


@dataclass(frozen=True)
class ScanSpec:
    """Observable plus swept axes, fixed parameter values and dataset name."""

    observable: str
    axes: tuple[AxisSpec, ...] = ()
    fixed: dict[str, float] = field(default_factory=dict)
    dataset: str = "reng"


@dataclass(frozen=True)
class ScanResult:
    header: list[str]
    rows: list[list[float]]


def _parse_axis(key: str, text: str) -> AxisSpec:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"{key}: expected 'name:min:max:steps', got {text!r}")
    name = parts[0].strip()
    if name not in AXIS_NAMES:
        raise ConfigError(f"{key}: unknown axis name {name!r}; use one of {AXIS_NAMES}")
    try:
        start = float(parts[1])
        stop = float(parts[2])
    except ValueError:
        raise ConfigError(f"{key}: min/max must be numbers in {text!r}") from None
    try:
        steps = int(parts[3])
    except ValueError:
        raise ConfigError(f"{key}: steps must be an integer in {text!r}") from None
    if steps < 2:
        raise ConfigError(f"{key}: steps must be >= 2, got {steps}")
    return AxisSpec(name=name, start=start, stop=stop, steps=steps)


def parse_config_file(path) -> dict[str, str]:
    """Parse ``key = value`` lines ('#' comments); unknown keys are errors."""
    path = Path(path)
    out: dict[str, str] = {}
    for lineno, raw_line in enumerate(path.read_text().splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw_line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"{path}:{lineno}: empty value for key {key!r}")
        out[key] = value
    return out


def build_scan_spec(mapping: dict[str, str]) -> ScanSpec:
    """Turn a flat key/value mapping (config or flags) into a ScanSpec."""
    unknown = sorted(set(mapping) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(unknown)}")
    observable = mapping.get("observable")
    if observable is None:
        raise ConfigError("observable: missing required key")
    axes = []
    for key in ("axis1", "axis2"):
        if key in mapping:
            axes.append(_parse_axis(key, mapping[key]))
    if len(axes) == 2 and axes[0].name == axes[1].name:
        raise ConfigError(f"axis2: duplicates axis1 ({axes[0].name!r})")
    fixed: dict[str, float] = {}
    for key in _NUMERIC_KEYS:
        if key in mapping:
            try:
                fixed[key] = float(mapping[key])
            except ValueError:
                raise ConfigError(f"{key}: expected a number, got {mapping[key]!r}") from None
    return ScanSpec(
        observable=observable,
        axes=tuple(axes),
        fixed=fixed,
        dataset=mapping.get("dataset", "reng"),
    )


def load_config(path) -> ScanSpec:
    """Load a scan configuration file into a ScanSpec."""
    return build_scan_spec(parse_config_file(path))


def _resolve_ab(point: dict[str, float], b_is_swept: bool) -> tuple[float, float]:
    b = float(point["b"])
    if "a" in point:
        if b_is_swept:
            raise ValueError("a: cannot be fixed while sweeping b (a is derived as sqrt(1 - b^2))")
        return float(point["a"]), b
    if not 0.0 <= b <= 1.0:
        raise ValueError(f"b: must lie in [0, 1] when a is derived, got {b}")
    return math.sqrt(1.0 - b * b), b


def _point_reservoir(point: dict[str, float]) -> ReservoirParams:
    return ReservoirParams.from_half_width(
        gamma0=point["gamma0"], half_width=point["half_width"], delta=point["delta"]
    )


def _point_parties(point: dict[str, float]) -> int:
    n = point["n"]
    if abs(n - round(n)) > 1e-9:
        raise ValueError(f"n: must be an integer, got {n}")
    return int(round(n))


def _evaluate_point(observable: str, point: dict[str, float], b_is_swept: bool) -> list[float]:
    res = _point_reservoir(point)
    t = point["t"]
    if observable == "delta_p":
        return [float(population_difference(res, t))]
    if observable == "u_amplitude":
        u = amplitude(res, t)
        return [u.real, u.imag, abs(u) ** 2]
    if observable in ("e_exciton", "e_reservoir"):
        n = _point_parties(point)
        params = WStateParams(u=amplitude(res, t), n_qubits=n)
        rho = w_state_exciton_rho(params) if observable == "e_exciton" else w_state_reservoir_rho(params)
        return [global_entanglement(rho, n)]
    if observable in ("q_closed", "q_numeric"):
        a, b = _resolve_ab(point, b_is_swept)
        u = amplitude(res, t)
        if observable == "q_closed":
            return [meyer_wallach_closed(a, b, u)]
        psi = x_state_register(XStateParams(a=a, b=b, u1=u, u2=u))
        return [meyer_wallach_numeric(psi)]
    p = damping(res, t)
    if observable == "f_ghz_tele":
        return [p, f_ghz_teleport(p, _point_parties(point))]
    if observable == "f_ghz_split":
        return [p, f_ghz_split(p, _point_parties(point))]
    if observable == "f_w_tele":
        return [p, f_w_teleport(p)]
    if observable == "f_w_split":
        return [p, f_w_split(p)]
    raise ValueError(f"observable: unknown value {observable!r}")


def _resolve_dataset(name_or_path: str):
    """Builtin dataset name, or a path to a site-energy table file."""
    try:
        return dataset(name_or_path)
    except ValueError:
        if Path(name_or_path).is_file():
            return load_site_energies(name_or_path)
        raise ValueError(
            f"dataset: {name_or_path!r} is neither a builtin name nor a readable file"
        ) from None


def _exciton_table_result(spec: ScanSpec) -> ScanResult:
    table = exciton_table(build_hamiltonian(_resolve_dataset(spec.dataset)))
    header = ["energy_cm1"] + [f"bchl{i}" for i in range(1, 8)]
    rows = [
        [float(table.energies[k])] + [float(v) for v in table.amplitudes[:, k]]
        for k in range(len(table.energies))
    ]
    return ScanResult(header=header, rows=rows)


def run_scan(spec: ScanSpec) -> ScanResult:
    """Evaluate the observable over the grid; the first axis varies slowest."""
    if spec.observable not in OBSERVABLES:
        raise ValueError(f"observable: unknown value {spec.observable!r}")
    if spec.observable == "exciton_table":
        if spec.axes:
            raise ValueError("axis1: exciton_table takes no axes")
        return _exciton_table_result(spec)

    if len(spec.axes) > 2:
        raise ValueError("axes: at most two axes may be swept")
    axis_names = [axis.name for axis in spec.axes]
    if len(set(axis_names)) != len(axis_names):
        raise ValueError("axis2: duplicates axis1")
    for name in axis_names:
        if name in spec.fixed:
            raise ValueError(f"{name}: given both as an axis and a fixed value")

    needed = _NEEDED[spec.observable]
    for name in needed:
        if name not in axis_names and name not in spec.fixed and name not in _DEFAULTS:
            raise ValueError(f"{name}: missing value for observable {spec.observable!r}")

    base: dict[str, float] = {}
    for name in needed:
        if name in spec.fixed:
            base[name] = spec.fixed[name]
        elif name not in axis_names:
            base[name] = _DEFAULTS[name]
    if "a" in spec.fixed:
        base["a"] = spec.fixed["a"]

    grids = [axis.values() for axis in spec.axes]
    b_is_swept = "b" in axis_names

    header = [_AXIS_LABELS[name] for name in axis_names] + _VALUE_COLUMNS[spec.observable]
    rows: list[list[float]] = []
    if not spec.axes:
        rows.append(_evaluate_point(spec.observable, base, b_is_swept))
        return ScanResult(header=header, rows=rows)

    if len(spec.axes) == 1:
        for v0 in grids[0]:
            point = dict(base)
            point[axis_names[0]] = float(v0)
            rows.append([float(v0)] + _evaluate_point(spec.observable, point, b_is_swept))
    else:
        for v0 in grids[0]:
            for v1 in grids[1]:
                point = dict(base)
                point[axis_names[0]] = float(v0)
                point[axis_names[1]] = float(v1)
                rows.append(
                    [float(v0), float(v1)]
                    + _evaluate_point(spec.observable, point, b_is_swept)
                )
    return ScanResult(header=header, rows=rows)


def _format_csv(result: ScanResult) -> str:
    lines = [",".join(result.header)]
    for row in result.rows:
        lines.append(",".join(format(value, ".12g") for value in row))
    return "\n".join(lines) + "\n"


def emit_csv(result: ScanResult, destination=None) -> None:
    """Write a scan result as CSV to a path, or stdout when destination is
    None or '-'."""
    text = _format_csv(result)
    if destination is None or destination == "-":
        sys.stdout.write(text)
    else:
        Path(destination).write_text(text)


def _merge_flags(args: argparse.Namespace) -> dict[str, str]:
    raw: dict[str, str] = {}
    if args.config is not None:
        raw.update(parse_config_file(args.config))
    for key in ("observable", "axis1", "axis2", "dataset", "output"):
        value = getattr(args, key)
        if value is not None:
            raw[key] = value
    for key in ("gamma0", "half_width", "delta", "a", "b", "t"):
        value = getattr(args, key)
        if value is not None:
            raw[key] = repr(value)
    if args.n is not None:
        raw["n"] = str(args.n)
    return raw


def _run_scan_command(args: argparse.Namespace) -> int:
    raw = _merge_flags(args)
    spec = build_scan_spec(raw)
    result = run_scan(spec)
    emit_csv(result, raw.get("output"))
    return 0


def _run_table_command(args: argparse.Namespace) -> int:
    spec = ScanSpec(observable="exciton_table", dataset=args.dataset or "reng")
    emit_csv(run_scan(spec), args.output)
    return 0


def _run_check_command(args: argparse.Namespace) -> int:
    step = args.step
    if not step > 0.0:
        raise ValueError(f"step: must be positive, got {step}")
    if not args.t_max > 0.0:
        raise ValueError(f"t-max: must be positive, got {args.t_max}")
    grid = np.arange(0.0, args.t_max + step / 2.0, step)
    worst = 0.0
    for gamma0 in (10.0, 1000.0):
        for half_width in (20.0, 40.0):
            for delta in (0.0, 100.0):
                params = ReservoirParams.from_half_width(gamma0, half_width, delta)
                analytic = amplitude(params, grid)
                integrated = amplitude_ode_oracle(params, grid, max_step=step)
                err = float(np.abs(analytic - integrated).max())
                worst = max(worst, err)
                print(
                    f"gamma0={gamma0:g} half_width={half_width:g} delta={delta:g} cm^-1: "
                    f"max|u_analytic - u_ode| = {err:.3e}"
                )
    print(f"overall max error over t in [0, {args.t_max:g}] ps: {worst:.3e}")
    if worst >= 1e-6:
        print(f"fmoent: amplitude check failed (max error {worst:.3e} >= 1e-6)", file=sys.stderr)
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmoent",
        description="Exciton entanglement and fidelity dynamics of the FMO complex.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=(
            f"fmoent {__version__} "
            f"(cm^-1 to rad/ps conversion: {CM1_TO_RAD_PER_PS!r})"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="evaluate an observable over a parameter grid")
    scan.add_argument("--config", help="key = value configuration file; flags win on conflict")
    scan.add_argument("--observable", choices=OBSERVABLES, help="quantity to evaluate")
    scan.add_argument("--axis1", help="outer sweep, 'name:min:max:steps'")
    scan.add_argument("--axis2", help="inner sweep, 'name:min:max:steps'")
    scan.add_argument("--gamma0", type=float, help="reservoir strength (cm^-1)")
    scan.add_argument("--half-width", type=float, help="Lorentzian half width (cm^-1)")
    scan.add_argument("--delta", type=float, help="peak detuning (cm^-1), default 0")
    scan.add_argument("--a", type=float, help="ground-pair coefficient (default sqrt(1-b^2))")
    scan.add_argument("--b", type=float, help="excited-pair coefficient")
    scan.add_argument("--n", type=int, help="qubit/party count, default 4")
    scan.add_argument("--t", type=float, help="time (ps) when not swept")
    scan.add_argument("--dataset", help="site-energy dataset (reng, lorenExpt, wend)")
    scan.add_argument("--output", help="CSV destination path, '-' for stdout")

    table = sub.add_parser("table", help="print the exciton energy/amplitude table")
    table.add_argument("--dataset", help="site-energy dataset (default reng)")
    table.add_argument("--output", help="CSV destination path, '-' for stdout")

    check = sub.add_parser(
        "check", help="compare the closed-form amplitude against the ODE integrator"
    )
    check.add_argument("--t-max", type=float, default=2.0, help="time horizon (ps)")
    check.add_argument("--step", type=float, default=1e-4, help="integration step (ps)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "scan":
            return _run_scan_command(args)
        if args.command == "table":
            return _run_table_command(args)
        return _run_check_command(args)
    except (ValueError, OSError) as exc:
        print(f"fmoent: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
