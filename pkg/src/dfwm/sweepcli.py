"""Command-line front end: config parsing, parameter sweeps, CSV output.

Config files are flat ``key = value [unit]`` documents; unset keys fall back
to the reference parameter set (rubidium-like atom, detuning 50 Gamma,
3 cm cell, see ``DEFAULTS``).  Sweeps evaluate one row per grid point with
both quadrature and intensity-difference squeezing columns; rows at or above
the phase-conjugate gain threshold are flagged rather than aborted.
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import atomvapor, fwmcoupling, quantumnoise
from .constants import MASS_RB87
from .errors import ConfigError, IntegrationConvergenceError, PhysicsDomainError
from .fwmcoupling import CouplingStrength, Geometry
from .quantumnoise import Detection, DetectionConfig, LossChannel

GAMMA_DEFAULT = 2 * np.pi * 6e6

#: Reference parameters: rates as fractions of gamma, intensities in W/cm^2.
DEFAULTS = {
    "gamma": GAMMA_DEFAULT,
    "gamma_13": 1.0 * GAMMA_DEFAULT,
    "gamma_14": 1.0 * GAMMA_DEFAULT,
    "gamma_23": 0.1 * GAMMA_DEFAULT,
    "gamma_24": 2 * np.pi * 30e3,
    "dipole_31": 1.1e-29,
    "density": 1e16,
    "mass": MASS_RB87,
    "lambda": 780e-9,
    "delta": 50 * GAMMA_DEFAULT,
    "pump_intensity": 8.0e4,     # 8 W/cm^2 in W/m^2
    "length": 0.03,
    "temperature": 383.15,
    "geometry": "pc",
    "theta": 0.0,
    "eta": 0.7,
    "gamma_seed": 1e6,
    "detection": "quadrature",
    "phase_f": 3 * np.pi / 2,
    "phase_b": 0.0,
    "sweep_axis": "pump_intensity",
    "grid_points": 101,
    "doppler": False,
    "out": "dfwm_sweep.csv",
}

W_PER_CM2 = 1e4

COLUMNS = ("axis_value", "coupling_magnitude_l", "gain", "mq_optimal_db",
           "mq_phase_db", "mid_db", "above_threshold", "expansion_valid")

AXES = ("pump_intensity", "eta", "coupling_l", "homodyne_phase")

# grids for the two axes that have no range keys
COUPLING_L_SPAN = {"pc": (1e-3, np.pi / 2 - 1e-3), "forward": (1e-3, 3.0)}
PHASE_SPAN = (0.0, 2 * np.pi)

# sweep-grade Doppler quadrature: trend accuracy at tractable node counts.
# The doubling metric trails the true error here (narrow saturated velocity
# classes), so accepting at 1e-2 leaves the averaged susceptibility good to
# ~1e-3 relative or better across the preset decoherence range.
SWEEP_DOPPLER = {"initial_nodes": 1 << 18, "tol": 1e-2, "max_nodes": 1 << 23}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved sweep description (intensities in W/m^2, angles in rad)."""

    gamma: float
    gamma_13: float
    gamma_14: float
    gamma_23: float
    gamma_24: float
    dipole_31: float
    density: float
    mass: float
    wavelength: float
    delta: float
    pump_intensity: float
    pump_intensity_range: tuple | None
    length: float
    temperature: float
    geometry: Geometry
    theta: float
    eta: float
    eta_range: tuple | None
    gamma_seed: float
    detection: Detection
    phase_f: float
    phase_b: float
    sweep_axis: str
    grid_points: int
    doppler: bool
    out: str
    fixed_coupling_l: float | None = None   # presets only: bypass the vapor model

    def atom(self) -> atomvapor.AtomModel:
        # half-branch coherences: the convention of the closed-form expressions
        return atomvapor.AtomModel.from_branch_rates(
            self.gamma_13, self.gamma_14, self.gamma_23, self.gamma_24,
            dipole_31=self.dipole_31, density=self.density, mass=self.mass,
            coherences="half-branch")

    def drive(self, pump_intensity=None) -> atomvapor.DriveConfig:
        return atomvapor.DriveConfig(
            delta_1=self.delta, delta_2=self.delta,
            pump_intensity=self.pump_intensity if pump_intensity is None else pump_intensity,
            wavelength=self.wavelength, length=self.length,
            temperature=self.temperature)


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

_RATE_KEYS = ("gamma", "gamma_13", "gamma_14", "gamma_23", "gamma_24", "delta")
_UNITS = {
    # key -> {unit: factor to SI}; None marks gamma-relative values
    "rate": {"rad/s": 1.0, "Gamma": None},
    "dipole_31": {"C*m": 1.0, "C.m": 1.0},
    "density": {"1/m^3": 1.0, "m^-3": 1.0},
    "mass": {"kg": 1.0, "amu": 1.66053906660e-27},
    "lambda": {"m": 1.0, "nm": 1e-9},
    "pump_intensity": {"W/cm^2": W_PER_CM2, "W/m^2": 1.0},
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3},
    "temperature": {"K": 1.0},
    "theta": {"rad": 1.0, "mrad": 1e-3},
    "phase": {"rad": 1.0, "deg": np.pi / 180},
}
_DIMENSIONLESS = ("eta", "gamma_seed", "grid_points")
_CHOICES = {
    "geometry": ("pc", "forward"),
    "detection": ("quadrature", "intensity_difference"),
    "sweep_axis": AXES,
    "doppler": ("on", "off"),
}
_RANGE_KEYS = ("pump_intensity_range", "eta_range")

_KNOWN_KEYS = set(_RATE_KEYS) | set(_DIMENSIONLESS) | set(_CHOICES) | set(_RANGE_KEYS) | {
    "dipole_31", "density", "mass", "lambda", "pump_intensity", "length",
    "temperature", "theta", "phase_f", "phase_b", "out"}


def _unit_table(key: str):
    if key in _RATE_KEYS:
        return _UNITS["rate"]
    if key in ("phase_f", "phase_b"):
        return _UNITS["phase"]
    return _UNITS.get(key)


def _parse_number(text: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"invalid number {text!r}", line)


def _parse_scalar(key: str, text: str, line: int):
    """Value with mandatory unit for dimensioned keys; returns (value, gamma_relative)."""
    parts = text.split()
    table = _unit_table(key)
    if table is None:  # dimensionless numeric
        if len(parts) != 1:
            raise ConfigError(f"key {key!r} takes a bare number", line)
        return _parse_number(parts[0], line), False
    if len(parts) != 2:
        raise ConfigError(
            f"key {key!r} requires a unit, one of {sorted(table)}", line)
    value = _parse_number(parts[0], line)
    unit = parts[1]
    if unit not in table:
        raise ConfigError(f"unknown unit {unit!r} for {key!r}; "
                          f"expected one of {sorted(table)}", line)
    factor = table[unit]
    if factor is None:  # gamma-relative
        return value, True
    return value * factor, False


def _parse_range(key: str, text: str, line: int):
    parts = text.split()
    span, rest = parts[0], parts[1:]
    if ":" not in span:
        raise ConfigError(f"range {key!r} must be written lo:hi", line)
    lo_s, _, hi_s = span.partition(":")
    base = key[:-len("_range")]
    table = _unit_table(base)
    factor = 1.0
    if table is not None:
        if len(rest) != 1:
            raise ConfigError(f"range {key!r} requires a unit", line)
        if rest[0] not in table:
            raise ConfigError(f"unknown unit {rest[0]!r} for {key!r}", line)
        factor = table[rest[0]]
    elif rest:
        raise ConfigError(f"range {key!r} takes no unit", line)
    lo = _parse_number(lo_s, line) * factor
    hi = _parse_number(hi_s, line) * factor
    if not lo < hi:
        raise ConfigError(f"range {key!r} must be strictly increasing", line)
    return lo, hi


def parse_config(text: str) -> RunConfig:
    """Parse a flat key = value document into a validated RunConfig."""
    raw = {}
    lines = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError("expected key = value", lineno)
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in raw:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        raw[key] = value
        lines[key] = lineno

    values = dict(DEFAULTS)
    gamma_relative = []

    for key, value in raw.items():
        line = lines[key]
        if key in _CHOICES:
            if value not in _CHOICES[key]:
                raise ConfigError(
                    f"{key!r} must be one of {_CHOICES[key]}", line)
            values[key] = value == "on" if key == "doppler" else value
        elif key == "out":
            values[key] = value
        elif key in _RANGE_KEYS:
            values[key] = _parse_range(key, value, line)
        else:
            number, relative = _parse_scalar(key, value, line)
            if relative:
                if key == "gamma":
                    raise ConfigError("gamma itself cannot be Gamma-relative", line)
                gamma_relative.append((key, number, line))
                continue
            values[key] = number

    for key, number, line in gamma_relative:
        values[key] = number * values["gamma"]

    # validation beyond parsing
    def err(key, message):
        raise ConfigError(message, lines.get(key))

    if not 0 <= values["eta"] <= 1:
        err("eta", "eta must lie in [0, 1]")
    eta_range = values.get("eta_range")
    if eta_range is not None and not (0 <= eta_range[0] and eta_range[1] <= 1):
        err("eta_range", "eta_range must lie within [0, 1]")
    pump_range = values.get("pump_intensity_range")
    if pump_range is not None and pump_range[0] < 0:
        err("pump_intensity_range", "pump intensities must be non-negative")
    if values["gamma_seed"] < 0:
        err("gamma_seed", "gamma_seed must be non-negative")
    grid_points = values["grid_points"]
    if grid_points != int(grid_points) or int(grid_points) < 2:
        err("grid_points", "grid_points must be an integer >= 2")
    axis = values["sweep_axis"]
    if axis == "pump_intensity" and pump_range is None:
        values["pump_intensity_range"] = (0.5 * W_PER_CM2, 50.0 * W_PER_CM2)
    if axis == "eta" and eta_range is None:
        values["eta_range"] = (0.0, 1.0)

    try:
        return RunConfig(
            gamma=values["gamma"], gamma_13=values["gamma_13"],
            gamma_14=values["gamma_14"], gamma_23=values["gamma_23"],
            gamma_24=values["gamma_24"], dipole_31=values["dipole_31"],
            density=values["density"], mass=values["mass"],
            wavelength=values["lambda"], delta=values["delta"],
            pump_intensity=values["pump_intensity"],
            pump_intensity_range=values.get("pump_intensity_range"),
            length=values["length"], temperature=values["temperature"],
            geometry=Geometry(values["geometry"]), theta=values["theta"],
            eta=values["eta"], eta_range=values.get("eta_range"),
            gamma_seed=values["gamma_seed"],
            detection=Detection(values["detection"]),
            phase_f=values["phase_f"], phase_b=values["phase_b"],
            sweep_axis=axis, grid_points=int(grid_points),
            doppler=values["doppler"], out=values["out"],
        )
    except PhysicsDomainError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# sweep engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepTable:
    columns: tuple
    rows: list


def _golden_section(f, lo: float, hi: float, tol: float = 1e-6) -> float:
    """Minimize a unimodal scalar function on [lo, hi] to the given x-tolerance."""
    inv_phi = (np.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (a + b) / 2


def optimal_phase_quadrature_db(transform, coupling) -> float:
    """Quadrature squeezing at the detector phase that minimizes the noise.

    Golden-section search over the phase combination the variance depends on
    (difference for phase conjugation, sum for forward).  The variance is
    sinusoidal in that phase, so the minimum sits at one of the two critical
    phases 3 pi/2 or pi/2 shifted by the coupling phase; both half-period
    brackets are searched and the deeper minimum wins.
    """
    def variance_at(d):
        det = DetectionConfig(Detection.JOINT_QUADRATURE, theta_f=d, theta_b=0.0)
        return quantumnoise.joint_quadrature_variance(transform, det)

    best = np.inf
    for center in (3 * np.pi / 2 + np.angle(coupling.phase),
                   np.pi / 2 + np.angle(coupling.phase)):
        d = _golden_section(variance_at, center - np.pi / 2, center + np.pi / 2)
        best = min(best, variance_at(d))
    return float(10 * np.log10(best / quantumnoise.JOINT_QUADRATURE_SHOT))


def _susceptibility_for(cfg: RunConfig, pump_intensity: float):
    atom = cfg.atom()
    drive = cfg.drive(pump_intensity)
    if cfg.doppler:
        return atomvapor.doppler_average(atom, drive, **SWEEP_DOPPLER)
    return atomvapor.susceptibility(atom, drive)


def _coupling_for(cfg: RunConfig, susc, pump_intensity: float) -> CouplingStrength:
    drive = cfg.drive(pump_intensity)
    if cfg.geometry is Geometry.PHASE_CONJUGATE:
        return fwmcoupling.coupling_pc(susc, drive)
    geom = fwmcoupling.GeometryConfig(Geometry.FORWARD, theta=cfg.theta,
                                      length=cfg.length)
    return fwmcoupling.coupling_ffwm(susc, drive, geom)


def _scaled_coupling(ref: CouplingStrength, scale: float) -> CouplingStrength:
    # chi_nl, hence the coupling, is first-order in the pump intensity
    return CouplingStrength(value=ref.value * scale,
                            magnitude_l=ref.magnitude_l * scale,
                            geometry=ref.geometry)


def _evaluate_point(cfg: RunConfig, coupling: CouplingStrength, eta: float,
                    axis_value: float, phase_f: float, phase_b: float,
                    expansion_valid: bool) -> tuple:
    """One table row.

    Rows at or above the phase-conjugate threshold are flagged, and their
    columns carry the periodic continuation of the closed forms (the sec/tan
    solutions repeat with period pi in |kappa|L); they describe the formulas,
    not a physical below-threshold device.
    """
    above = not coupling.below_threshold
    loss = LossChannel(eta, eta)
    if coupling.geometry is Geometry.PHASE_CONJUGATE:
        gain = float(1 / np.cos(coupling.magnitude_l) ** 2)
    else:
        gain = float(np.cosh(coupling.magnitude_l) ** 2)
    transform = quantumnoise.apply_loss(
        quantumnoise._mode_transform_periodic(coupling), loss)
    mq_opt = optimal_phase_quadrature_db(transform, coupling)
    det = DetectionConfig(Detection.JOINT_QUADRATURE,
                          theta_f=phase_f, theta_b=phase_b)
    mq = quantumnoise.quadrature_squeezing_db(transform, det).squeezing_db
    det_id = DetectionConfig(Detection.INTENSITY_DIFFERENCE,
                             seed_photons=cfg.gamma_seed)
    mid = quantumnoise.intensity_diff_squeezing_db(coupling, loss, det_id).squeezing_db
    return (axis_value, coupling.magnitude_l, gain, mq_opt, mq, mid,
            above, expansion_valid)


def run_sweep(cfg: RunConfig, threads: int = 1) -> SweepTable:
    """Evaluate the configured sweep; one row per grid point.

    Rows at or above the phase-conjugate threshold carry NaN squeezing
    columns and a raised flag.  Raises PhysicsDomainError when every grid
    point is above threshold.
    """
    n = cfg.grid_points
    jobs = []

    if cfg.sweep_axis == "pump_intensity":
        if cfg.fixed_coupling_l is not None:
            raise PhysicsDomainError(
                "a fixed coupling cannot be swept against pump intensity")
        lo, hi = cfg.pump_intensity_range
        grid = np.linspace(lo, hi, n)
        ref_ip = float(grid[-1])
        susc_ref = _susceptibility_for(cfg, ref_ip)
        coupling_ref = _coupling_for(cfg, susc_ref, ref_ip)
        for ip in grid:
            coupling = _scaled_coupling(coupling_ref, float(ip) / ref_ip)
            jobs.append((coupling, cfg.eta, float(ip) / W_PER_CM2, cfg.phase_f,
                         cfg.phase_b, bool(ip < susc_ref.i_sat)))
    elif cfg.sweep_axis == "eta":
        lo, hi = cfg.eta_range
        grid = np.linspace(lo, hi, n)
        if cfg.fixed_coupling_l is not None:
            coupling = CouplingStrength.from_magnitude(
                cfg.geometry, cfg.fixed_coupling_l)
            valid = True
        else:
            susc = _susceptibility_for(cfg, cfg.pump_intensity)
            coupling = _coupling_for(cfg, susc, cfg.pump_intensity)
            valid = susc.expansion_valid
        for eta in grid:
            jobs.append((coupling, float(eta), float(eta), cfg.phase_f,
                         cfg.phase_b, valid))
    elif cfg.sweep_axis == "coupling_l":
        lo, hi = COUPLING_L_SPAN[cfg.geometry.value]
        for cl in np.linspace(lo, hi, n):
            coupling = CouplingStrength.from_magnitude(cfg.geometry, float(cl))
            jobs.append((coupling, cfg.eta, float(cl), cfg.phase_f,
                         cfg.phase_b, True))
    elif cfg.sweep_axis == "homodyne_phase":
        if cfg.fixed_coupling_l is not None:
            coupling = CouplingStrength.from_magnitude(
                cfg.geometry, cfg.fixed_coupling_l)
            valid = True
        else:
            susc = _susceptibility_for(cfg, cfg.pump_intensity)
            coupling = _coupling_for(cfg, susc, cfg.pump_intensity)
            valid = susc.expansion_valid
        for d in np.linspace(*PHASE_SPAN, n):
            # swept value is the phase combination: theta_f - theta_b (pc)
            # or theta_f + theta_b (forward), applied via theta_f
            jobs.append((coupling, cfg.eta, float(d), float(d), 0.0, valid))
    else:
        raise PhysicsDomainError(f"unknown sweep axis {cfg.sweep_axis!r}")

    def worker(job):
        coupling, eta, axis_value, phase_f, phase_b, valid = job
        return _evaluate_point(cfg, coupling, eta, axis_value, phase_f,
                               phase_b, valid)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(worker, jobs))
    else:
        rows = [worker(job) for job in jobs]

    if rows and all(row[6] for row in rows):
        raise PhysicsDomainError("all grid points are above the gain threshold")
    return SweepTable(columns=COLUMNS, rows=rows)


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return f"{value:.12g}"


def emit_csv(table: SweepTable, path) -> None:
    """UTF-8, RFC-4180 quoting, floats at 12 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow(_format_cell(v) for v in row)


def read_csv(path) -> SweepTable:
    """Read back an emitted table (floats and flags restored)."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        columns = tuple(next(reader))
        rows = []
        for row in reader:
            parsed = []
            for cell in row:
                if cell in ("true", "false"):
                    parsed.append(cell == "true")
                else:
                    parsed.append(float(cell))
            rows.append(tuple(parsed))
    return SweepTable(columns=columns, rows=rows)


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

def _base_config(**overrides) -> RunConfig:
    cfg = parse_config("")
    return replace(cfg, **overrides)


def preset_tables(name: str) -> list:
    """Materialize a figure preset as (filename, SweepTable) pairs.

    fig2: lossless phase sweeps at fixed |kappa|L of pi/6 and pi/3.
    fig3a/fig3b: transmission sweeps at 1 W/cm^2 (the reference 8 W/cm^2 is
    above the gain threshold for the Doppler-averaged phase-conjugate
    coupling at the reference density).
    fig4a-d: pump-intensity sweeps at eta = 0.7, one file per decoherence
    rate; a/b are the phase-conjugate geometry, c/d forward.
    """
    if name == "fig2":
        out = []
        for tag, cl in (("pi6", np.pi / 6), ("pi3", np.pi / 3)):
            cfg = _base_config(sweep_axis="homodyne_phase", grid_points=361,
                               eta=1.0, fixed_coupling_l=float(cl),
                               geometry=Geometry.PHASE_CONJUGATE)
            out.append((f"fig2_kl_{tag}.csv", run_sweep(cfg)))
        return out
    if name in ("fig3a", "fig3b"):
        geometry = Geometry.PHASE_CONJUGATE if name == "fig3a" else Geometry.FORWARD
        cfg = _base_config(sweep_axis="eta", grid_points=101,
                           eta_range=(0.0, 1.0), geometry=geometry,
                           doppler=True, pump_intensity=1.0 * W_PER_CM2)
        return [(f"{name}_eta_sweep.csv", run_sweep(cfg))]
    if name in ("fig4a", "fig4b", "fig4c", "fig4d"):
        geometry = (Geometry.PHASE_CONJUGATE if name in ("fig4a", "fig4b")
                    else Geometry.FORWARD)
        detection = (Detection.JOINT_QUADRATURE if name in ("fig4a", "fig4c")
                     else Detection.INTENSITY_DIFFERENCE)
        out = []
        for frac in (0.5, 0.2, 0.1, 0.05):
            cfg = _base_config(sweep_axis="pump_intensity", grid_points=100,
                               pump_intensity_range=(0.5 * W_PER_CM2, 50.0 * W_PER_CM2),
                               geometry=geometry, detection=detection,
                               eta=0.7, doppler=True,
                               gamma_23=frac * GAMMA_DEFAULT)
            tag = f"{frac:g}".replace(".", "p")
            out.append((f"{name}_g23_{tag}gamma.csv", run_sweep(cfg)))
        return out
    raise ConfigError(f"unknown preset {name!r}")


PRESETS = ("fig2", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig4d")


def write_preset(name: str, out_dir) -> list:
    out_dir = Path(out_dir)
    written = []
    for filename, table in preset_tables(name):
        path = out_dir / filename
        emit_csv(table, path)
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

EXIT_CONFIG_ERROR = 2
EXIT_PHYSICS_ERROR = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfwm",
        description="Squeezing sweeps for degenerate four-wave mixing")
    parser.add_argument("--threads", type=int, default=1,
                        help="concurrent grid-point evaluation")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any stochastic verification tooling")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the sweep described by a config file")
    run.add_argument("config")
    val = sub.add_parser("validate", help="parse and validate a config file")
    val.add_argument("config")
    pre = sub.add_parser("preset", help="emit a stored figure preset")
    pre.add_argument("name", choices=PRESETS)
    pre.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    np.random.seed(args.seed % (2 ** 32))  # inert for sweeps; reproducibility hook
    try:
        if args.command in ("run", "validate"):
            try:
                text = Path(args.config).read_text(encoding="utf-8")
            except OSError as exc:
                print(f"config error: {exc}", file=sys.stderr)
                return EXIT_CONFIG_ERROR
            cfg = parse_config(text)
            if args.command == "validate":
                print(f"{args.config}: OK")
                return 0
            table = run_sweep(cfg, threads=args.threads)
            emit_csv(table, cfg.out)
            print(f"wrote {len(table.rows)} rows to {cfg.out}")
            return 0
        written = write_preset(args.name, args.out)
        for path in written:
            print(f"wrote {path}")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (PhysicsDomainError, IntegrationConvergenceError) as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS_ERROR


if __name__ == "__main__":
    sys.exit(main())
