"""Command-line front end: every experiment as a reproducible subcommand.

Each run resolves its options (command line > config file > defaults) into a
flat key=value RunConfig, validates it, computes, and writes artifacts into
--outdir: delimited CSV data, quick-look PNGs, the resolved config as
run.cfg, and manifest.json with versions, wall time and output checksums.
Reissuing a run from run.cfg (or the manifest's config echo) reproduces the
CSV outputs byte for byte.

Exit codes: 0 success, 2 configuration error, 3 numerical failure (for
example a requested orbit that does not exist at the given kappa).
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import classical, correspondence, floquet, output, plots, spin
from .classical import CATALOG_LABELS, KickedTopParams

_EXIT_OK = 0
_EXIT_CONFIG = 2
_EXIT_NUMERICAL = 3

_NUMERICAL_ERRORS = (
    classical.NoRoot,
    classical.OrbitClosureError,
    correspondence.NoFiniteJ,
    np.linalg.LinAlgError,
)


class ConfigError(Exception):
    """A flag or config value that cannot be used."""


# ---------------------------------------------------------------------------
# value converters (config values live as strings; these give them types)

def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def _pos_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise ConfigError(f"not an integer: {text!r}") from None
    if val < 1:
        raise ConfigError(f"must be >= 1, got {val}")
    return val


def _nonneg_int(text: str) -> int:
    val = _pos_int(text) if text.strip() != "0" else 0
    return val


def _half_integer(text: str) -> float:
    val = _float(text)
    if val <= 0 or abs(2.0 * val - round(2.0 * val)) > 1e-9:
        raise ConfigError(f"j must be a positive half-integer, got {text}")
    return val


def _orbit_label(text: str) -> str:
    label = text.upper()
    if label not in CATALOG_LABELS:
        raise ConfigError(f"unknown orbit {text!r}; choose from {', '.join(CATALOG_LABELS)}")
    return label


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _value_range(text: str) -> np.ndarray:
    """Range syntax: 'v' | 'start:end' (inclusive, step 1) | 'start:end:count'."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 2:
            lo, hi = float(parts[0]), float(parts[1])
            if hi < lo:
                raise ConfigError(f"empty range {text!r}")
            return lo + np.arange(int(math.floor(hi - lo + 1e-9)) + 1, dtype=float)
        if len(parts) == 3:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 2 or hi <= lo:
                raise ConfigError(f"range {text!r} needs end > start and count >= 2")
            return np.linspace(lo, hi, count)
    except ValueError:
        raise ConfigError(f"bad range syntax {text!r}; use start:end:count") from None
    raise ConfigError(f"bad range syntax {text!r}; use start:end:count")


def _scan_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"scan range {text!r} must be start:end:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad scan range {text!r}") from None
    if hi <= lo or count < 2:
        raise ConfigError(f"scan range {text!r} needs end > start and count >= 2")
    return lo, hi, count


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise ConfigError(f"bad integer list {text!r}") from None
    if not vals:
        raise ConfigError("empty kick list")
    return vals


def _resolution(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"resolution {text!r} must be n_theta,n_phi")
    return _pos_int(parts[0]), _pos_int(parts[1])


# ---------------------------------------------------------------------------
# option declarations per subcommand

@dataclass(frozen=True)
class Opt:
    name: str
    convert: object
    default: str | None = None  # None + required=False means optional
    required: bool = False
    flag: bool = False  # boolean option rendered as --name/--no-name
    help: str = ""


_COMMON = [
    Opt("outdir", str, default=".", help="output directory"),
    Opt("p", _float, default=f"{math.pi / 2:.17g}", help="rotation angle (radians)"),
    Opt("tau", _float, default="1", help="kick period"),
    Opt("plot", _bool, default="1", flag=True, help="render quick-look PNGs"),
    Opt("threads", _pos_int, default="1",
        help=f"scan workers (env {correspondence.THREAD_ENV_VAR} overrides)"),
]

OPTIONS: dict[str, list[Opt]] = {
    "phase-portrait": _COMMON + [
        Opt("kappa", _float, required=True, help="twist strength"),
        Opt("n-init", _pos_int, default="1360", help="ensemble size"),
        Opt("kicks", _pos_int, default="150", help="kicks per trajectory"),
        Opt("seed", _nonneg_int, default="0", help="lattice rotation seed"),
    ],
    "bifurcation": _COMMON + [
        Opt("orbit", _orbit_label, required=True, help="catalog orbit label"),
        Opt("kappa-range", _scan_range, required=True, help="start:end:count grid"),
    ],
    "catalog": _COMMON + [
        Opt("kappa", _float, required=True, help="twist strength"),
    ],
    "husimi": _COMMON + [
        Opt("j", _half_integer, required=True, help="spin size"),
        Opt("kappa", _float, required=True, help="twist strength"),
        Opt("orbit", _orbit_label, help="start at this orbit's first point"),
        Opt("theta", _float, help="start colatitude (ignored with --orbit)"),
        Opt("phi", _float, default="0", help="start azimuth"),
        Opt("kick-list", _int_list, help="snapshot kicks, e.g. 0,1,2,4,8"),
        Opt("average", _pos_int, help="time-average over this many kicks instead"),
        Opt("resolution", _resolution, help="grid n_theta,n_phi (default by j)"),
        Opt("binary", _bool, default="1", flag=True, help="also write .bin grids"),
    ],
    "survival": _COMMON + [
        Opt("j", _half_integer, required=True, help="spin size"),
        Opt("kappa", _float, required=True, help="twist strength"),
        Opt("L", _pos_int, default="200", help="terms in the time average"),
        Opt("orbit", _orbit_label, help="catalog orbit (period from catalog)"),
        Opt("theta", _float, help="fixed-point colatitude (ignored with --orbit)"),
        Opt("phi", _float, default="0", help="fixed-point azimuth"),
        Opt("per-kick", _bool, default="1", flag=True, help="retain per-term values"),
    ],
    "heatmap": _COMMON + [
        Opt("orbit", _orbit_label, required=True, help="catalog orbit label"),
        Opt("j", _value_range, required=True, help="j grid, e.g. 1:50"),
        Opt("kappa", _value_range, required=True, help="kappa grid, e.g. 2.05:5:60"),
        Opt("L", _pos_int, default="50", help="terms in the time average"),
        Opt("threshold", _float, help="orthogonality-curve overlap threshold"),
    ],
    "criteria": _COMMON + [
        Opt("orbit", _orbit_label, required=True, help="catalog orbit label"),
        Opt("kappa", _float, required=True, help="twist strength"),
        Opt("j", _half_integer, required=True, help="spin size to audit"),
        Opt("epsilon", _float, help="overlap threshold (default by family)"),
        Opt("partners", _bool, default="1", flag=True,
            help="include symmetry-partner orbits (criterion 2)"),
    ],
    "find-orbits": _COMMON + [
        Opt("period", _pos_int, required=True, help="orbit period to search"),
        Opt("kappa", _float, required=True, help="twist strength"),
        Opt("grid", _pos_int, default="24", help="seed grid size per axis"),
        Opt("tol", _float, default="1e-12", help="Newton convergence tolerance"),
        Opt("max-iter", _pos_int, default="60", help="Newton iteration cap"),
    ],
}


@dataclass
class RunConfig:
    """Resolved options of one run, serializable as flat key=value text."""

    command: str
    options: dict[str, str]

    def to_text(self) -> str:
        lines = [f"command = {self.command}"]
        lines.extend(f"{key} = {val}" for key, val in self.options.items())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        command = None
        options: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"config line {lineno}: expected key = value, got {raw!r}")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "command":
                command = val
            else:
                options[key] = val
        if command is None:
            raise ConfigError("config file lacks a 'command' line")
        return cls(command=command, options=options)

    def value(self, name: str):
        spec = next(o for o in OPTIONS[self.command] if o.name == name)
        raw = self.options.get(name)
        if raw is None:
            return None
        return spec.convert(raw)


def resolve_config(command: str, cli_values: dict[str, str | None],
                   config_path: str | None) -> RunConfig:
    """Merge defaults, config file and command line into one RunConfig."""
    specs = OPTIONS[command]
    known = {o.name for o in specs}
    from_file: dict[str, str] = {}
    if config_path:
        try:
            text = Path(config_path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        file_cfg = RunConfig.from_text(text)
        if file_cfg.command != command:
            raise ConfigError(
                f"config file is for {file_cfg.command!r}, not {command!r}"
            )
        unknown = set(file_cfg.options) - known
        if unknown:
            raise ConfigError(f"config file has unknown keys: {', '.join(sorted(unknown))}")
        from_file = file_cfg.options

    options: dict[str, str] = {}
    for spec in specs:
        val = cli_values.get(spec.name)
        if val is None:
            val = from_file.get(spec.name)
        if val is None:
            val = spec.default
        if val is None:
            if spec.required:
                raise ConfigError(f"missing required option --{spec.name}")
            continue
        options[spec.name] = val
    return RunConfig(command=command, options=options)


def validate_config(config: RunConfig) -> list[str]:
    """Range checks and feasibility notes.  Lines starting with 'error:' are
    fatal; 'warning:'/'note:' lines are informational."""
    diags: list[str] = []
    vals: dict[str, object] = {}
    for spec in OPTIONS[config.command]:
        raw = config.options.get(spec.name)
        if raw is None:
            continue
        try:
            vals[spec.name] = spec.convert(raw)
        except ConfigError as exc:
            diags.append(f"error: --{spec.name}: {exc}")
    if diags:
        return diags

    def kappas_of_interest() -> np.ndarray:
        if "kappa" in vals:
            v = vals["kappa"]
            if isinstance(v, np.ndarray):
                return v
            return np.array([float(v)])
        if "kappa-range" in vals:
            lo, hi, _ = vals["kappa-range"]
            return np.array([lo, hi])
        return np.array([])

    for kappa in kappas_of_interest():
        if kappa < 0:
            diags.append(f"error: kappa must be >= 0, got {kappa:g}")
    if "L" in vals and vals["L"] < 1:
        diags.append("error: L must be >= 1")
    if config.command == "husimi":
        if ("kick-list" in vals) == ("average" in vals):
            diags.append("error: choose exactly one of --kick-list and --average")
        if "orbit" not in vals and "theta" not in vals:
            diags.append("error: need --orbit or --theta to place the initial state")
        kl = vals.get("kick-list")
        if kl is not None and (min(kl) < 0 or sorted(kl) != kl):
            diags.append("error: --kick-list must be sorted nonnegative integers")
    if config.command == "survival" and "orbit" not in vals and "theta" not in vals:
        diags.append("error: need --orbit or --theta to place the initial state")

    orbit = vals.get("orbit")
    if orbit is not None and not diags:
        ks = kappas_of_interest()
        for kappa in sorted({float(ks.min()), float(ks.max())} if ks.size else set()):
            info = classical.catalog_existence(KickedTopParams(kappa=kappa))[orbit]
            if not info["exists"]:
                diags.append(
                    f"warning: orbit {orbit} does not exist at kappa = {kappa:g} "
                    f"({info['reason']})"
                )

    if config.command == "heatmap" and "j" in vals:
        js = vals["j"]
        for j in js:
            if abs(2.0 * j - round(2.0 * j)) > 1e-9:
                diags.append(f"error: heatmap j grid entry {j:g} is not a half-integer")
                break
        else:
            if any(abs(j - round(j)) > 1e-9 for j in js):
                diags.append("note: half-integer j entries in the grid (scans conventionally use integers)")

    j_max = 0.0
    for key in ("j",):
        v = vals.get(key)
        if v is None:
            continue
        j_max = float(np.max(np.atleast_1d(v)))
    if j_max > 0:
        dim = int(round(2 * j_max)) + 1
        mem_mb = 3 * 16 * dim * dim / 1e6
        diags.append(f"note: largest spin j = {j_max:g} -> {dim}x{dim} complex "
                     f"matrices, ~{mem_mb:.0f} MB working set")
    return diags


# ---------------------------------------------------------------------------
# subcommand bodies: take typed values, write artifacts, return stdout lines


def _params(vals) -> KickedTopParams:
    return KickedTopParams(kappa=float(vals["kappa"]), p=vals["p"], tau=vals["tau"])


def _need_orbit(label: str, params: KickedTopParams):
    orbit = classical.resolve_orbit(label, params)
    if orbit is None:
        info = classical.catalog_existence(params)[label]
        raise classical.NoRoot(f"orbit {label} at kappa = {params.kappa:g}: {info['reason']}")
    return orbit


def _start_point(vals, params: KickedTopParams):
    if vals.get("orbit") is not None:
        orbit = _need_orbit(vals["orbit"], params)
        return orbit.points[0], orbit
    if vals.get("theta") is None:
        raise ConfigError("need --orbit or --theta")
    return spin.SphericalPoint(vals["theta"], vals.get("phi", 0.0)), None


def _cmd_phase_portrait(vals, outdir: Path, track) -> list[str]:
    params = _params(vals)
    samples = classical.stroboscopic_ensemble(
        vals["n-init"], vals["kicks"], params, seed=vals["seed"]
    )
    csv = track(output.write_ensemble_csv(
        outdir / "ensemble.csv", samples, params, vals["n-init"], vals["kicks"], vals["seed"]
    ))
    if vals["plot"]:
        track(plots.plot_phase_portrait(samples, outdir / "portrait.png", kappa=params.kappa))
    return [f"wrote {samples.shape[0]} stroboscopic samples to {csv}"]


def _cmd_bifurcation(vals, outdir: Path, track) -> list[str]:
    lo, hi, count = vals["kappa-range"]
    params = KickedTopParams(kappa=max(lo, 0.0), p=vals["p"], tau=vals["tau"])
    scan = classical.bifurcation_scan(vals["orbit"], (lo, hi), count, params)
    track(output.write_scan_csv(outdir / "scan.csv", scan))
    if vals["plot"]:
        track(plots.plot_bifurcation(scan, outdir / "bifurcation.png"))
    if scan.crossing is None:
        return [f"{scan.label}: no stability crossing inside [{lo:g}, {hi:g}]"]
    return [f"{scan.label}: loses stability at kappa = {scan.crossing:.6f}"]


def _cmd_catalog(vals, outdir: Path, track) -> list[str]:
    params = _params(vals)
    orbits = classical.orbit_catalog(params)
    existence = classical.catalog_existence(params)
    track(output.write_catalog_csv(outdir / "catalog.csv", orbits, existence, params))
    if vals["plot"]:
        track(plots.plot_orbit_points(orbits, outdir / "catalog.png", kappa=params.kappa))
    present = ", ".join(o.label for o in orbits)
    return [f"{len(orbits)} catalog orbits exist at kappa = {params.kappa:g}: {present}"]


def _cmd_husimi(vals, outdir: Path, track) -> list[str]:
    params = _params(vals)
    start, _ = _start_point(vals, params)
    j = vals["j"]
    res = vals.get("resolution")
    lines = []
    if vals.get("average") is not None:
        grid = floquet.husimi_time_average(start, j, params, vals["average"], res)
        track(output.write_husimi_csv(outdir / "husimi_avg.csv", grid))
        if vals["binary"]:
            track(output.write_husimi_binary(outdir / "husimi_avg.bin", grid))
        if vals["plot"]:
            track(plots.plot_husimi(grid, outdir / "husimi_avg.png",
                                    title=f"mean over {vals['average']} kicks, j={j:g}"))
        lines.append(f"time-averaged Husimi over {vals['average']} kicks; "
                     f"integral = {grid.integrate():.9f}")
    else:
        kicks = vals["kick-list"]
        grids = floquet.husimi_timeseries(start, j, params, kicks, res)
        for kick, grid in zip(kicks, grids):
            stem = f"husimi_kick_{kick:04d}"
            track(output.write_husimi_csv(outdir / f"{stem}.csv", grid))
            if vals["binary"]:
                track(output.write_husimi_binary(outdir / f"{stem}.bin", grid))
            if vals["plot"]:
                track(plots.plot_husimi(grid, outdir / f"{stem}.png",
                                        title=f"kick {kick}, j={j:g}"))
            peak = grid.peak()
            lines.append(f"kick {kick}: Q peak at theta={peak.theta:.4f}, phi={peak.phi:.4f}")
    return lines


def _cmd_survival(vals, outdir: Path, track) -> list[str]:
    params = _params(vals)
    start, orbit = _start_point(vals, params)
    j, L = vals["j"], vals["L"]
    if orbit is not None:
        result = floquet.survival_period_n(orbit, j, params, L, keep_per_kick=vals["per-kick"])
    else:
        result = floquet.survival_fixed_point(start, j, params, L,
                                              keep_per_kick=vals["per-kick"])
    track(output.write_survival_csv(outdir / "survival.csv", result))
    if vals["plot"] and result.per_kick is not None:
        track(plots.plot_survival_series([result], outdir / "survival.png"))
    return [f"{result.label}: S = {result.S:.9f} (j={j:g}, kappa={params.kappa:g}, "
            f"period={result.period}, L={L})"]


def _cmd_heatmap(vals, outdir: Path, track) -> list[str]:
    base = KickedTopParams(kappa=float(vals["kappa"][0]), p=vals["p"], tau=vals["tau"])
    grid = correspondence.survival_heatmap(
        vals["orbit"], vals["j"], vals["kappa"], L=vals["L"],
        threshold=vals.get("threshold"), n_threads=vals["threads"], base_params=base,
    )
    track(output.write_grid_csv(outdir / "heatmap.csv", grid))
    track(output.write_curve_csv(outdir / "curve.csv", grid))
    if vals["plot"]:
        track(plots.plot_survival_grid(grid, outdir / "heatmap.png"))
    done = int(np.isfinite(grid.S).sum())
    return [f"{grid.label}: {done}/{grid.S.size} cells computed "
            f"({grid.S.size - done} missing), threshold {grid.threshold:g}"]


def _cmd_criteria(vals, outdir: Path, track) -> list[str]:
    params = _params(vals)
    orbit = _need_orbit(vals["orbit"], params)
    partners = (correspondence.catalog_partners(vals["orbit"], params)
                if vals["partners"] else [])
    epsilon = vals.get("epsilon")
    if epsilon is None:
        epsilon = correspondence.default_threshold(vals["orbit"])
    report = correspondence.criteria_report(orbit, partners, vals["j"], epsilon)
    track(output.write_criteria_csv(outdir / "criteria.csv", report))
    if vals["plot"]:
        track(plots.plot_criteria(report, outdir / "criteria.png"))
    try:
        j_min = f"{correspondence.min_j_for_orthogonality(orbit, partners, epsilon):g}"
    except correspondence.NoFiniteJ:
        j_min = "unbounded (coincident points)"
    partner_names = ", ".join(p.label for p in partners) if partners else "none"
    verdict = "satisfied" if report.satisfied else "violated"
    return [
        f"{report.label} at j = {report.j:g}: criteria {verdict} "
        f"(max off-diagonal overlap {report.max_offdiagonal():.3e}, eps = {epsilon:g})",
        f"symmetry partners: {partner_names}",
        f"minimum j for overlap <= {epsilon:g}: {j_min}",
    ]


def _cmd_find_orbits(vals, outdir: Path, track) -> list[str]:
    params = _params(vals)
    result = classical.find_periodic_orbits(
        vals["period"], params, vals["grid"],
        tol=vals["tol"], max_iter=vals["max-iter"],
    )
    track(output.write_orbits_csv(outdir / "orbits.csv", result, vals["period"], params))
    if vals["plot"]:
        track(plots.plot_orbit_points(result.orbits, outdir / "orbits.png",
                                      kappa=params.kappa))
    lines = [f"{len(result.orbits)} distinct period-{vals['period']} orbits "
             f"({result.n_converged}/{result.n_seeds} seeds converged)"]
    for oi, orbit in enumerate(result.orbits):
        pt = orbit.points[0]
        lines.append(f"  {orbit.label}-{oi}: start ({pt.x:+.6f}, {pt.y:+.6f}, {pt.z:+.6f}), "
                     f"max|lambda| = {orbit.max_abs_eigenvalue():.6f}")
    return lines


_HANDLERS = {
    "phase-portrait": _cmd_phase_portrait,
    "bifurcation": _cmd_bifurcation,
    "catalog": _cmd_catalog,
    "husimi": _cmd_husimi,
    "survival": _cmd_survival,
    "heatmap": _cmd_heatmap,
    "criteria": _cmd_criteria,
    "find-orbits": _cmd_find_orbits,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kickedtop",
        description="Kicked-top laboratory: classical orbits, Floquet dynamics, "
                    "coherent-state orthogonality criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, specs in OPTIONS.items():
        p = sub.add_parser(command, help=f"{command} experiment")
        p.add_argument("--config", help="flat key=value config file with defaults")
        for spec in specs:
            dest = spec.name.replace("-", "_")
            if spec.flag:
                p.add_argument(f"--{spec.name}", dest=dest, default=None,
                               action=argparse.BooleanOptionalAction, help=spec.help)
            else:
                p.add_argument(f"--{spec.name}", dest=dest, default=None,
                               metavar="V", help=spec.help)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    command = ns.command

    cli_values: dict[str, str | None] = {}
    for spec in OPTIONS[command]:
        raw = getattr(ns, spec.name.replace("-", "_"))
        if raw is None:
            cli_values[spec.name] = None
        elif spec.flag:
            cli_values[spec.name] = "1" if raw else "0"
        else:
            cli_values[spec.name] = str(raw)

    try:
        config = resolve_config(command, cli_values, ns.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG

    diags = validate_config(config)
    fatal = False
    for diag in diags:
        print(diag, file=sys.stderr)
        fatal = fatal or diag.startswith("error:")
    if fatal:
        return _EXIT_CONFIG

    vals = {name: config.value(name) for name in config.options}
    outdir = Path(vals["outdir"])
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"config error: cannot create outdir: {exc}", file=sys.stderr)
        return _EXIT_CONFIG

    created: list[Path] = []

    def track(path) -> Path:
        created.append(Path(path))
        return Path(path)

    start = time.monotonic()
    try:
        lines = _HANDLERS[command](vals, outdir, track)
    except (ConfigError, ValueError) as exc:
        _cleanup(created)
        print(f"config error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        _cleanup(created)
        print(f"numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL
    wall = time.monotonic() - start

    cfg_path = outdir / "run.cfg"
    cfg_path.write_text(config.to_text())
    created.append(cfg_path)
    output.write_manifest(outdir / "manifest.json", command, config.to_text(),
                          created, wall)
    for line in lines:
        print(line)
    return _EXIT_OK


def _cleanup(paths: list[Path]) -> None:
    for p in paths:
        try:
            p.unlink(missing_ok=True)
        except OSError:
            pass


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
