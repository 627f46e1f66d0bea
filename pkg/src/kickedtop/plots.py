"""Quick-look figure rendering for the command-line report path.

Each helper takes a result object and a target path and writes a single PNG
next to the delimited output.  These are working plots for sanity checking
runs, not publication figures; styling is deliberately plain.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .classical import BifurcationScan, PeriodicOrbit
from .correspondence import CriteriaReport, SurvivalGrid
from .floquet import SurvivalResult
from .spin import HusimiGrid

_DPI = 150


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_phase_portrait(samples: np.ndarray, path, kappa: float | None = None) -> Path:
    """Stroboscopic ensemble in (phi, cos theta) coordinates."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.scatter(samples[:, 1], np.cos(samples[:, 0]), s=0.05, c="k", alpha=0.5, linewidths=0)
    ax.set_xlim(-math.pi, math.pi)
    ax.set_ylim(-1, 1)
    ax.set_xlabel(r"$\phi$")
    ax.set_ylabel(r"$\cos\theta$")
    if kappa is not None:
        ax.set_title(f"stroboscopic map, kappa = {kappa:g}")
    return _save(fig, path)


def plot_bifurcation(scan: BifurcationScan, path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(scan.kappa_values, scan.max_abs_eigenvalue, "k-", lw=1)
    ax.axhline(1.0, color="0.6", lw=0.8, ls=":")
    if scan.crossing is not None:
        ax.axvline(scan.crossing, color="r", lw=0.8, ls="--",
                   label=f"crossing {scan.crossing:.6f}")
        ax.legend(loc="best", fontsize=8)
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel(r"max $|\lambda|$")
    ax.set_title(scan.label)
    return _save(fig, path)


def plot_orbit_points(orbits: list[PeriodicOrbit], path, kappa: float | None = None) -> Path:
    """Catalog or search output as labeled points in (phi, cos theta)."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for orbit in orbits:
        th = np.array([pt.angles() for pt in orbit.points])
        stable = orbit.is_stable
        color = "tab:blue" if stable else ("tab:red" if stable is not None else "0.4")
        marker = "o" if orbit.period == 1 else "s"
        ax.scatter(th[:, 1], np.cos(th[:, 0]), s=36, c=color, marker=marker,
                   edgecolors="k", linewidths=0.5, zorder=3)
        ax.annotate(orbit.label, (th[0, 1], math.cos(th[0, 0])),
                    textcoords="offset points", xytext=(5, 5), fontsize=7)
    ax.set_xlim(-math.pi, math.pi)
    ax.set_ylim(-1.05, 1.05)
    ax.set_xlabel(r"$\phi$")
    ax.set_ylabel(r"$\cos\theta$")
    title = "periodic points (blue stable, red unstable)"
    if kappa is not None:
        title += f", kappa = {kappa:g}"
    ax.set_title(title, fontsize=9)
    return _save(fig, path)


def plot_husimi(grid: HusimiGrid, path, title: str | None = None) -> Path:
    """Husimi density on an equal-area (phi, cos theta) rectangle."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    u = np.cos(grid.theta_nodes)  # descending for theta ascending
    order = np.argsort(u)
    mesh = ax.pcolormesh(grid.phi_nodes, u[order], grid.values[order], shading="nearest",
                         cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=r"$Q(\theta,\phi)$")
    ax.set_xlabel(r"$\phi$")
    ax.set_ylabel(r"$\cos\theta$")
    if title:
        ax.set_title(title, fontsize=9)
    return _save(fig, path)


def plot_survival_series(results: list[SurvivalResult], path) -> Path:
    """Per-revolution survival traces (requires per_kick retention)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for r in results:
        if r.per_kick is None:
            continue
        steps = r.period * np.arange(1, r.L + 1)
        ax.plot(steps, r.per_kick, lw=0.9,
                label=f"{r.label}, j={r.j:g}, S={r.S:.3f}")
    ax.set_xlabel("kick")
    ax.set_ylabel(r"$|\langle\psi_0|\psi\rangle|^2$")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="best", fontsize=8)
    return _save(fig, path)


def plot_survival_grid(grid: SurvivalGrid, path) -> Path:
    """Heatmap of S over (kappa, j) or a slice of S versus kappa."""
    if grid.j_values.size == 1:
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(grid.kappa_values, grid.S[0], "k.-", lw=0.9, ms=3)
        ax.set_xlabel(r"$\kappa$")
        ax.set_ylabel("S")
        ax.set_ylim(-0.02, 1.02)
        ax.set_title(f"{grid.label}, j = {grid.j_values[0]:g}, L = {grid.L}", fontsize=9)
        if grid.classical_bifurcation_kappa is not None:
            ax.axvline(grid.classical_bifurcation_kappa, color="r", ls="--", lw=0.8)
        return _save(fig, path)

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    s = np.ma.masked_invalid(grid.S)
    mesh = ax.pcolormesh(grid.kappa_values, grid.j_values, s, shading="nearest",
                         cmap="magma", vmin=0.0, vmax=1.0)
    fig.colorbar(mesh, ax=ax, label="S")
    curve = grid.orthogonality_curve
    good = np.isfinite(curve)
    if good.any():
        ax.plot(grid.kappa_values[good], curve[good], "c--", lw=1.2,
                label=f"j_min at {grid.threshold:g}")
        ax.legend(loc="best", fontsize=8)
    if grid.classical_bifurcation_kappa is not None:
        ax.axvline(grid.classical_bifurcation_kappa, color="w", ls="--", lw=0.8)
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel("j")
    ax.set_title(f"{grid.label}, L = {grid.L}", fontsize=9)
    return _save(fig, path)


def plot_criteria(report: CriteriaReport, path) -> Path:
    """Pairwise overlap matrix with the threshold marked in the title."""
    fig, ax = plt.subplots(figsize=(5, 4.5))
    n = len(report.point_sources)
    floor = report.epsilon * 1e-4
    img = ax.imshow(np.maximum(report.pairwise_overlaps, floor),
                    norm=matplotlib.colors.LogNorm(vmin=floor, vmax=1.0),
                    cmap="cividis")
    fig.colorbar(img, ax=ax, label="|overlap|")
    ax.set_xticks(range(n), report.point_sources, rotation=90, fontsize=7)
    ax.set_yticks(range(n), report.point_sources, fontsize=7)
    verdict = "satisfied" if report.satisfied else "violated"
    ax.set_title(f"{report.label}, j = {report.j:g}: eps = {report.epsilon:g} {verdict}",
                 fontsize=9)
    return _save(fig, path)
