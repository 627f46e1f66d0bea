"""Orthogonality criteria linking classical orbits to quantum distinguishability.

A period-n orbit supports clean quantum-classical correspondence only when
the coherent states on its points are mutually near-orthogonal (criterion 1)
and also near-orthogonal to the coherent states on its symmetry partners
(criterion 2).  With the overlap law |<a|b>| = [cos(chi/2)]^(2j) both reduce
to a single geometric quantity: the smallest great-circle angle chi_min over
all point pairs, which yields a closed-form minimum j for any overlap
threshold.

The survival scans assemble (j, kappa) grids of time-averaged survival
probability for one orbit family, annotated with the classical bifurcation
point and the per-kappa minimum-j orthogonality curve; these are the data
behind the bifurcation-signature heatmaps and slices.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classical import (
    KNOWN_BIFURCATIONS,
    KickedTopParams,
    PeriodicOrbit,
    orbit_catalog,
    resolve_orbit,
    rotate_x_pi,
)
from .floquet import survival_period_n
from .spin import as_point, great_circle_angle, overlap_analytic

THREAD_ENV_VAR = "KICKEDTOP_THREADS"

_MIN_J = 0.5


class NoFiniteJ(Exception):
    """Two distinct points coincide, so no spin size separates them."""


@dataclass
class CriteriaReport:
    """Pairwise overlap audit for one orbit and its symmetry partners."""

    label: str
    j: float
    epsilon: float
    point_sources: list[str]
    points: list
    pairwise_overlaps: np.ndarray
    satisfied: bool

    def max_offdiagonal(self) -> float:
        n = self.pairwise_overlaps.shape[0]
        if n < 2:
            return 0.0
        mask = ~np.eye(n, dtype=bool)
        return float(self.pairwise_overlaps[mask].max())


def assemble_points(orbit: PeriodicOrbit, symmetry_partners=()) -> tuple[list, list[str]]:
    """Orbit points followed by partner-orbit points, with source labels."""
    points = []
    sources = []
    for idx, pt in enumerate(orbit.points):
        points.append(as_point(pt))
        sources.append(f"{orbit.label}[{idx}]")
    for partner in symmetry_partners:
        for idx, pt in enumerate(partner.points):
            points.append(as_point(pt))
            sources.append(f"{partner.label}[{idx}]")
    return points, sources


def criteria_report(
    orbit: PeriodicOrbit,
    symmetry_partners,
    j: float,
    epsilon: float,
) -> CriteriaReport:
    """Overlap matrix over orbit + partner points; satisfied iff all
    off-diagonal magnitudes are at most epsilon."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    points, sources = assemble_points(orbit, symmetry_partners)
    n = len(points)
    overlaps = np.eye(n)
    for a in range(n):
        for b in range(a + 1, n):
            overlaps[a, b] = overlaps[b, a] = overlap_analytic(points[a], points[b], j)
    mask = ~np.eye(n, dtype=bool)
    satisfied = bool(n < 2 or overlaps[mask].max() <= epsilon)
    return CriteriaReport(
        label=orbit.label,
        j=j,
        epsilon=epsilon,
        point_sources=sources,
        points=points,
        pairwise_overlaps=overlaps,
        satisfied=satisfied,
    )


def minimum_pair_angle(orbit: PeriodicOrbit, symmetry_partners=()) -> float:
    """Smallest great-circle angle over all distinct point pairs."""
    points, _ = assemble_points(orbit, symmetry_partners)
    if len(points) < 2:
        return math.pi  # a lone point imposes no constraint
    chi_min = math.pi
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            chi_min = min(chi_min, great_circle_angle(points[a], points[b]))
    return chi_min


def min_j_for_orthogonality(
    orbit: PeriodicOrbit,
    symmetry_partners=(),
    epsilon: float = 1e-10,
) -> float:
    """Smallest half-integer j with all pairwise overlaps at most epsilon.

    The binding pair is the one at the smallest angle chi_min, so
    j_min = ln(eps) / (2 ln cos(chi_min/2)) rounded up to a half-integer;
    the result is nudged so it agrees exactly with a direct search over j.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    chi_min = minimum_pair_angle(orbit, symmetry_partners)
    c = math.cos(0.5 * chi_min)
    if c >= 1.0:
        raise NoFiniteJ(
            f"orbit {orbit.label}: two distinct points coincide; "
            "no finite j satisfies the criteria"
        )
    if c <= 0.0:
        return _MIN_J

    def overlap_at(j: float) -> float:
        return c ** int(round(2.0 * j))

    raw = math.log(epsilon) / (2.0 * math.log(c))
    j_min = max(_MIN_J, 0.5 * math.ceil(2.0 * raw))
    while overlap_at(j_min) > epsilon:
        j_min += 0.5
    while j_min > _MIN_J and overlap_at(j_min - 0.5) <= epsilon:
        j_min -= 0.5
    return j_min


def catalog_partners(label: str, params: KickedTopParams) -> list[PeriodicOrbit]:
    """Symmetry-partner orbits of a catalog orbit under the x-axis half-turn.

    The half-turn about x commutes with the squared map, so it sends orbit
    points to orbit points; partners are the other catalog orbits hit by the
    images (FP1 <-> FP2, P2A <-> {FP3, FP4}, P2B-P2E in pairs, P4 to itself
    hence no partners).
    """
    orbit = resolve_orbit(label, params, with_stability=False)
    if orbit is None:
        return []
    images = [rotate_x_pi(pt).as_array() for pt in orbit.points]
    partners = []
    for other in orbit_catalog(params, with_stability=False):
        if other.label == label:
            continue
        pts = np.array([pt.as_array() for pt in other.points])
        if any(np.min(np.linalg.norm(pts - img, axis=1)) < 1e-10 for img in images):
            partners.append(other)
    return partners


@dataclass
class SurvivalGrid:
    """Survival probability over a (j, kappa) grid for one orbit family.

    S has shape (len(j_values), len(kappa_values)); cells where the orbit
    does not exist hold NaN.  orthogonality_curve gives, per kappa, the
    minimum j at which orbit + partner coherent states all overlap below
    `threshold` (NaN where the orbit is missing, inf where points coincide).
    """

    label: str
    j_values: np.ndarray
    kappa_values: np.ndarray
    S: np.ndarray
    L: int
    classical_bifurcation_kappa: float | None
    orthogonality_curve: np.ndarray
    threshold: float

    def __post_init__(self):
        self.j_values = np.asarray(self.j_values, dtype=float)
        self.kappa_values = np.asarray(self.kappa_values, dtype=float)
        if self.S.shape != (self.j_values.size, self.kappa_values.size):
            raise ValueError(
                f"S shape {self.S.shape} does not match grid "
                f"({self.j_values.size}, {self.kappa_values.size})"
            )


def default_threshold(label: str) -> float:
    """Orthogonality-curve threshold: 1e-8 for P4 scans, 1e-10 otherwise."""
    return 1e-8 if label.upper().startswith("P4") else 1e-10


def thread_count(requested: int | None = None) -> int:
    """Worker count for scan loops; the environment variable wins."""
    env = os.environ.get(THREAD_ENV_VAR)
    if env is not None:
        n = int(env)
        if n < 1:
            raise ValueError(f"{THREAD_ENV_VAR} must be a positive integer")
        return n
    return max(1, requested or 1)


def survival_heatmap(
    orbit_label: str,
    j_values,
    kappa_values,
    L: int = 50,
    threshold: float | None = None,
    n_threads: int | None = None,
    base_params: KickedTopParams | None = None,
) -> SurvivalGrid:
    """Time-averaged survival on a (j, kappa) grid for one catalog family.

    The orbit is re-resolved at every kappa (its points move with kappa);
    grid cells where it does not exist are NaN, never fabricated.  Work is
    ordered j-outer so the cached rotation factor is reused across kappa.
    """
    j_vals = np.atleast_1d(np.asarray(j_values, dtype=float))
    k_vals = np.atleast_1d(np.asarray(kappa_values, dtype=float))
    if j_vals.size == 0 or k_vals.size == 0:
        raise ValueError("grid axes must be nonempty")
    if threshold is None:
        threshold = default_threshold(orbit_label)
    if base_params is None:
        base_params = KickedTopParams(kappa=float(k_vals[0]))

    orbits: list[PeriodicOrbit | None] = []
    params_at: list[KickedTopParams] = []
    curve = np.full(k_vals.size, np.nan)
    for ki, kappa in enumerate(k_vals):
        params = KickedTopParams(kappa=float(kappa), p=base_params.p, tau=base_params.tau)
        params_at.append(params)
        orbit = resolve_orbit(orbit_label, params, with_stability=False)
        orbits.append(orbit)
        if orbit is None:
            continue
        try:
            curve[ki] = min_j_for_orthogonality(
                orbit, catalog_partners(orbit_label, params), threshold
            )
        except NoFiniteJ:
            curve[ki] = np.inf

    s = np.full((j_vals.size, k_vals.size), np.nan)
    workers = thread_count(n_threads)

    def cell(args) -> None:
        ji, ki = args
        orbit = orbits[ki]
        if orbit is None:
            return
        s[ji, ki] = survival_period_n(orbit, float(j_vals[ji]), params_at[ki], L).S

    tasks = [(ji, ki) for ji in range(j_vals.size) for ki in range(k_vals.size)]
    if workers == 1:
        for t in tasks:
            cell(t)
    else:
        # Prime the per-j rotation cache serially so threads only read it.
        for ji in range(j_vals.size):
            for ki in range(k_vals.size):
                if orbits[ki] is not None:
                    cell((ji, ki))
                    break
        pending = [t for t in tasks if np.isnan(s[t[0], t[1]]) and orbits[t[1]] is not None]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(cell, pending))

    return SurvivalGrid(
        label=orbit_label,
        j_values=j_vals,
        kappa_values=k_vals,
        S=s,
        L=L,
        classical_bifurcation_kappa=KNOWN_BIFURCATIONS.get(orbit_label),
        orthogonality_curve=curve,
        threshold=threshold,
    )


def survival_slice(
    orbit_label: str,
    j_fixed: float,
    kappa_values,
    L: int = 200,
    threshold: float | None = None,
    n_threads: int | None = None,
    base_params: KickedTopParams | None = None,
) -> SurvivalGrid:
    """S versus kappa at one fixed j (a 1 x K grid with annotations)."""
    return survival_heatmap(
        orbit_label,
        [j_fixed],
        kappa_values,
        L=L,
        threshold=threshold,
        n_threads=n_threads,
        base_params=base_params,
    )
