"""Artifact serialization: delimited text, a dense Husimi binary, manifests.

Every CSV starts with '#' comment lines carrying run metadata and a
'# columns:' line naming the fields; floats are written with 17 significant
digits so parsing them back reproduces the doubles bit-for-bit.  The Husimi
binary layout is a fixed 64-byte little-endian header followed by the node,
weight and value arrays as float64.
"""

from __future__ import annotations

import hashlib
import json
import math
import platform
import struct
import time
from pathlib import Path

import numpy as np

from .classical import BifurcationScan, KickedTopParams, OrbitSearchResult, PeriodicOrbit
from .correspondence import CriteriaReport, SurvivalGrid
from .floquet import SurvivalResult
from .spin import HusimiGrid

HUSIMI_MAGIC = b"KTHUSIMI"
HUSIMI_VERSION = 1
HUSIMI_ENDIAN_TAG = 0x01020304
_HEADER = struct.Struct("<8sII3Q24x")  # magic, version, endian tag, 2j, n_theta, n_phi
assert _HEADER.size == 64


def fmt(value) -> str:
    """Serialize one cell; floats carry 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _write_csv(path, comments: list[str], columns: list[str], rows) -> Path:
    path = Path(path)
    with open(path, "w", newline="\n") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(f"# columns: {','.join(columns)}\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
    return path


def read_csv(path) -> tuple[list[str], np.ndarray]:
    """Comment lines and the numeric payload of one of our CSV files.

    Non-numeric cells (labels, point sources) come back as NaN; use the
    per-writer readers below when the strings matter.
    """
    comments = []
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line[1:].strip())
                continue
            cells = []
            for cell in line.split(","):
                try:
                    cells.append(float(cell))
                except ValueError:
                    cells.append(math.nan)
            rows.append(cells)
    return comments, np.array(rows)


def write_ensemble_csv(path, samples: np.ndarray, params: KickedTopParams,
                       n_initial: int, n_kicks: int, seed: int) -> Path:
    comments = [
        f"kappa: {fmt(params.kappa)}",
        f"p: {fmt(params.p)}",
        f"tau: {fmt(params.tau)}",
        f"n_initial: {n_initial}",
        f"n_kicks: {n_kicks}",
        f"seed: {seed}",
    ]
    return _write_csv(path, comments, ["theta", "phi"], samples)


def write_scan_csv(path, scan: BifurcationScan) -> Path:
    comments = [f"orbit: {scan.label}"]
    if scan.crossing is not None:
        comments.append(f"crossing_kappa: {fmt(scan.crossing)}")
    else:
        comments.append("crossing_kappa: none")
    rows = zip(scan.kappa_values, scan.max_abs_eigenvalue, scan.exists.astype(int))
    return _write_csv(path, comments, ["kappa", "max_abs_eigenvalue", "exists"], rows)


def write_catalog_csv(path, orbits: list[PeriodicOrbit], existence: dict,
                      params: KickedTopParams) -> Path:
    comments = [f"kappa: {fmt(params.kappa)}"]
    for label, info in existence.items():
        if not info["exists"]:
            comments.append(f"missing: {label} ({info['reason']})")
    rows = []
    for orbit in orbits:
        maxeig = orbit.max_abs_eigenvalue() if orbit.stability_eigenvalues is not None else math.nan
        stable = orbit.is_stable if orbit.is_stable is not None else math.nan
        for idx, pt in enumerate(orbit.points):
            rows.append([orbit.label, orbit.period, idx, pt.x, pt.y, pt.z, maxeig, stable])
    cols = ["label", "period", "point_index", "x", "y", "z", "max_abs_eigenvalue", "is_stable"]
    return _write_csv(path, comments, cols, rows)


def write_survival_csv(path, results) -> Path:
    """One row per SurvivalResult; per-kick values appended as extra columns."""
    if isinstance(results, SurvivalResult):
        results = [results]
    n_per = {0 if r.per_kick is None else len(r.per_kick) for r in results}
    if len(n_per) != 1:
        raise ValueError("mixed per-kick lengths cannot share one CSV")
    width = n_per.pop()
    comments = ["survival sampled once per orbit period; term l is kick period*l"]
    comments.extend(f"period[{r.label}]: {r.period}" for r in results)
    cols = ["label", "j", "kappa", "L", "S"] + [f"per_kick_{i + 1}" for i in range(width)]
    rows = []
    for r in results:
        row = [r.label, r.j, r.kappa, r.L, r.S]
        if width:
            row.extend(r.per_kick)
        rows.append(row)
    return _write_csv(path, comments, cols, rows)


def write_grid_csv(path, grid: SurvivalGrid) -> Path:
    comments = [
        f"orbit: {grid.label}",
        f"L: {grid.L}",
        f"bifurcation_kappa: {fmt(grid.classical_bifurcation_kappa)}"
        if grid.classical_bifurcation_kappa is not None
        else "bifurcation_kappa: none",
        f"threshold: {fmt(grid.threshold)}",
        "missing cells (orbit absent) hold nan",
    ]
    rows = []
    for ji, j in enumerate(grid.j_values):
        for ki, kappa in enumerate(grid.kappa_values):
            rows.append([j, kappa, grid.S[ji, ki]])
    return _write_csv(path, comments, ["j", "kappa", "S"], rows)


def write_curve_csv(path, grid: SurvivalGrid) -> Path:
    comments = [
        f"orbit: {grid.label}",
        f"threshold: {fmt(grid.threshold)}",
        "j_min: smallest j with all pairwise coherent-state overlaps <= threshold",
    ]
    rows = zip(grid.kappa_values, grid.orthogonality_curve)
    return _write_csv(path, comments, ["kappa", "j_min"], rows)


def write_criteria_csv(path, report: CriteriaReport) -> Path:
    comments = [
        f"orbit: {report.label}",
        f"j: {fmt(report.j)}",
        f"epsilon: {fmt(report.epsilon)}",
        f"satisfied: {1 if report.satisfied else 0}",
        f"max_offdiagonal: {fmt(report.max_offdiagonal())}",
    ]
    rows = []
    n = len(report.point_sources)
    for a in range(n):
        for b in range(a + 1, n):
            rows.append([report.point_sources[a], report.point_sources[b],
                         report.pairwise_overlaps[a, b]])
    return _write_csv(path, comments, ["point_a", "point_b", "overlap"], rows)


def write_orbits_csv(path, result: OrbitSearchResult, period: int,
                     params: KickedTopParams) -> Path:
    comments = [
        f"kappa: {fmt(params.kappa)}",
        f"period: {period}",
        f"seeds: {result.n_seeds}",
        f"converged: {result.n_converged}",
        f"failed: {result.n_failed}",
        f"distinct_orbits: {len(result.orbits)}",
    ]
    rows = []
    for oi, orbit in enumerate(result.orbits):
        maxeig = orbit.max_abs_eigenvalue() if orbit.stability_eigenvalues is not None else math.nan
        stable = orbit.is_stable if orbit.is_stable is not None else math.nan
        for idx, pt in enumerate(orbit.points):
            rows.append([f"{orbit.label}-{oi}", orbit.period, idx,
                         pt.x, pt.y, pt.z, maxeig, stable])
    cols = ["label", "period", "point_index", "x", "y", "z", "max_abs_eigenvalue", "is_stable"]
    return _write_csv(path, comments, cols, rows)


def write_husimi_csv(path, grid: HusimiGrid) -> Path:
    comments = [
        f"j: {fmt(grid.j)}",
        f"n_theta: {grid.theta_nodes.size}",
        f"n_phi: {grid.phi_nodes.size}",
        f"integral: {fmt(grid.integrate())}",
    ]
    rows = (
        (grid.theta_nodes[t], grid.phi_nodes[p], grid.values[t, p])
        for t in range(grid.theta_nodes.size)
        for p in range(grid.phi_nodes.size)
    )
    return _write_csv(path, comments, ["theta", "phi", "Q"], rows)


def write_husimi_binary(path, grid: HusimiGrid) -> Path:
    """Dense grid dump: 64-byte header, then nodes, weights and values."""
    path = Path(path)
    two_j = int(round(2.0 * grid.j))
    header = _HEADER.pack(
        HUSIMI_MAGIC,
        HUSIMI_VERSION,
        HUSIMI_ENDIAN_TAG,
        two_j,
        grid.theta_nodes.size,
        grid.phi_nodes.size,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        for arr in (grid.theta_nodes, grid.theta_weights, grid.phi_nodes, grid.values):
            fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())
    return path


def read_husimi_binary(path) -> HusimiGrid:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated header")
    magic, version, endian_tag, two_j, n_theta, n_phi = _HEADER.unpack_from(raw)
    if magic != HUSIMI_MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}")
    if version != HUSIMI_VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    if endian_tag != HUSIMI_ENDIAN_TAG:
        raise ValueError(f"{path}: endianness tag mismatch")
    expected = _HEADER.size + 8 * (2 * n_theta + n_phi + n_theta * n_phi)
    if len(raw) != expected:
        raise ValueError(f"{path}: payload size {len(raw)} does not match header")
    off = _HEADER.size
    def take(count):
        nonlocal off
        arr = np.frombuffer(raw, dtype="<f8", count=count, offset=off).astype(float)
        off += 8 * count
        return arr
    theta = take(n_theta)
    weights = take(n_theta)
    phi = take(n_phi)
    values = take(n_theta * n_phi).reshape(n_theta, n_phi)
    return HusimiGrid(j=two_j / 2.0, theta_nodes=theta, phi_nodes=phi,
                      theta_weights=weights, values=values)


def sha256_of(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def collect_versions() -> dict[str, str]:
    import matplotlib
    import scipy

    from . import __version__

    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "matplotlib": matplotlib.__version__,
        "kickedtop": __version__,
    }


def write_manifest(path, command: str, config_text: str, output_paths,
                   wall_time_s: float, notes: list[str] | None = None) -> Path:
    """Run record: config echo, package versions, wall time, output checksums."""
    path = Path(path)
    outputs = []
    for p in output_paths:
        p = Path(p)
        outputs.append({
            "file": p.name,
            "bytes": p.stat().st_size,
            "sha256": sha256_of(p),
        })
    doc = {
        "command": command,
        "config": config_text,
        "versions": collect_versions(),
        "wall_time_s": round(wall_time_s, 3),
        "finished_unix": int(time.time()),
        "outputs": outputs,
    }
    if notes:
        doc["notes"] = notes
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=False)
        fh.write("\n")
    return path
