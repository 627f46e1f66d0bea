"""Numerical laboratory for the kicked top.

Classical stroboscopic map, periodic-orbit catalog and bifurcations; quantum
Floquet dynamics with spin coherent states, Husimi distributions and survival
probabilities; and the coherent-state orthogonality criteria that tie the
two descriptions together.
"""

__version__ = "0.1.0"

from .classical import (
    CATALOG_LABELS,
    KNOWN_BIFURCATIONS,
    BifurcationScan,
    ClassicalState,
    KickedTopParams,
    NoRoot,
    OrbitClosureError,
    OrbitSearchResult,
    PeriodicOrbit,
    bifurcation_scan,
    catalog_existence,
    fibonacci_sphere,
    find_periodic_orbits,
    jacobian,
    orbit_catalog,
    orbit_stability,
    resolve_orbit,
    rotate_x_pi,
    solve_x0,
    sphere_seed_grid,
    step,
    stroboscopic_ensemble,
    trajectory,
)
from .correspondence import (
    CriteriaReport,
    NoFiniteJ,
    SurvivalGrid,
    catalog_partners,
    criteria_report,
    min_j_for_orthogonality,
    survival_heatmap,
    survival_slice,
)
from .floquet import (
    FloquetOperator,
    SurvivalResult,
    build_floquet,
    clear_rotation_cache,
    evolve,
    floquet_eigenstates,
    husimi_time_average,
    husimi_timeseries,
    matrix_power,
    survival_fixed_point,
    survival_period_n,
)
from .spin import (
    HusimiGrid,
    SphericalPoint,
    SpinState,
    angular_momentum_operators,
    expectation,
    husimi,
    overlap_analytic,
    overlap_numeric,
    spin_coherent_state,
    uncertainty,
)

__all__ = [name for name in dir() if not name.startswith("_")]
