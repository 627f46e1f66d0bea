"""Classical kicked-top map, periodic-orbit catalog, stability and bifurcations.

The classical dynamics lives on the unit sphere.  One kick period combines a
rotation by ``p`` about the y axis with a torsional twist of strength
``kappa`` about the z axis.  For ``p = pi/2`` the stroboscopic map has the
closed form

    X' = Z cos(kappa X) + Y sin(kappa X)
    Y' = -Z sin(kappa X) + Y cos(kappa X)
    Z' = -X

which is what this module implements, together with the analytic catalog of
fixed points and low-period orbits, Jacobian stability spectra, bifurcation
scans and a Newton-based orbit search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

#: Labels of the analytic orbit catalog, in canonical order.
CATALOG_LABELS = ("FP1", "FP2", "FP3", "FP4", "P2A", "P2B", "P2C", "P2D", "P2E", "P4")

#: Parameter values where catalog orbits lose stability.  The first three
#: families have closed-form thresholds; the P2B-P2E value comes from a
#: numerical scan of the period-2 Jacobian (see bifurcation_scan tests).
KNOWN_BIFURCATIONS = {
    "FP1": 2.0,
    "FP2": 2.0,
    "FP3": math.sqrt(2.0) * math.pi,
    "FP4": math.sqrt(2.0) * math.pi,
    "P2A": math.sqrt(2.0) * math.pi,
    "P2B": 4.8725,
    "P2C": 4.8725,
    "P2D": 4.8725,
    "P2E": 4.8725,
    "P4": math.pi,
}

#: |lambda| <= 1 + STABILITY_TOL counts as stable; the neutral unit
#: eigenvalue is always present and must not flip under roundoff.
STABILITY_TOL = 1e-9

_NORM_DRIFT_TOL = 1e-12


class NoRoot(Exception):
    """Raised when the fixed-point normalization condition has no root."""


class OrbitClosureError(Exception):
    """Raised when a claimed periodic orbit does not close under the map."""


@dataclass(frozen=True)
class ClassicalState:
    """Unit vector (X, Y, Z) = <J>/j on the sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        r2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(r2 - 1.0) > _NORM_DRIFT_TOL:
            raise ValueError(f"state ({self.x}, {self.y}, {self.z}) is not on the unit sphere")

    @classmethod
    def from_vector(cls, vec) -> "ClassicalState":
        """Build a state from any nonzero 3-vector, normalizing it."""
        v = np.asarray(vec, dtype=float)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v[0] / n, v[1] / n, v[2] / n)

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "ClassicalState":
        st = math.sin(theta)
        return cls.from_vector((st * math.cos(phi), st * math.sin(phi), math.cos(theta)))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def angles(self) -> tuple[float, float]:
        """Polar angles (theta in [0, pi], phi in (-pi, pi]); phi = 0 at the poles."""
        theta = math.acos(min(1.0, max(-1.0, self.z)))
        if abs(self.x) < 1e-300 and abs(self.y) < 1e-300:
            return theta, 0.0
        phi = math.atan2(self.y, self.x)
        if phi <= -math.pi:
            phi += TWO_PI
        return theta, phi


@dataclass(frozen=True)
class KickedTopParams:
    """Map parameters: twist strength kappa, rotation angle p, kick period tau."""

    kappa: float
    p: float = HALF_PI
    tau: float = 1.0

    def __post_init__(self):
        if self.kappa < 0.0:
            raise ValueError("kappa must be >= 0")
        if self.tau <= 0.0:
            raise ValueError("tau must be > 0")

    def require_quarter_turn(self):
        """The classical closed form is derived for p = pi/2 only."""
        if self.p != HALF_PI:
            raise ValueError(f"classical map requires p = pi/2, got p = {self.p}")


@dataclass
class PeriodicOrbit:
    """Ordered cycle of the map with its linear stability spectrum."""

    points: list[ClassicalState]
    period: int
    label: str = "NUMERIC"
    stability_eigenvalues: np.ndarray | None = None
    is_stable: bool | None = None

    def max_abs_eigenvalue(self) -> float:
        if self.stability_eigenvalues is None:
            raise ValueError("orbit stability has not been computed")
        return float(np.max(np.abs(self.stability_eigenvalues)))


@dataclass
class BifurcationScan:
    """max|lambda| of an orbit over a kappa grid, with the |lambda|=1 crossing."""

    label: str
    kappa_values: np.ndarray
    max_abs_eigenvalue: np.ndarray
    exists: np.ndarray
    crossing: float | None = None

    def missing_ranges(self) -> list[tuple[float, float]]:
        """Contiguous kappa subranges where the orbit does not exist."""
        ranges = []
        start = None
        for k, ok in zip(self.kappa_values, self.exists):
            if not ok and start is None:
                start = k
            elif ok and start is not None:
                ranges.append((float(start), float(k)))
                start = None
        if start is not None:
            ranges.append((float(start), float(self.kappa_values[-1])))
        return ranges


@dataclass
class OrbitSearchResult:
    """Outcome of a seeded Newton search for period-n orbits."""

    orbits: list[PeriodicOrbit]
    n_seeds: int
    n_converged: int
    n_failed: int


def _step_xyz(xyz: np.ndarray, kappa: float) -> np.ndarray:
    """Vectorized map on an (..., 3) array; does not renormalize."""
    x, y, z = xyz[..., 0], xyz[..., 1], xyz[..., 2]
    c = np.cos(kappa * x)
    s = np.sin(kappa * x)
    return np.stack([z * c + y * s, -z * s + y * c, -x], axis=-1)


def step(state: ClassicalState, params: KickedTopParams) -> ClassicalState:
    """Apply one kick period of the classical map (p = pi/2 closed form)."""
    params.require_quarter_turn()
    out = _step_xyz(state.as_array(), params.kappa)
    r2 = float(out @ out)
    if abs(r2 - 1.0) > _NORM_DRIFT_TOL:
        out = out / math.sqrt(r2)
    return ClassicalState(float(out[0]), float(out[1]), float(out[2]))


def trajectory(state: ClassicalState, params: KickedTopParams, n_kicks: int) -> list[ClassicalState]:
    """Iterate the map; returns n_kicks + 1 states starting with the input."""
    if n_kicks < 0:
        raise ValueError("n_kicks must be >= 0")
    out = [state]
    for _ in range(n_kicks):
        out.append(step(out[-1], params))
    return out


def jacobian(state: ClassicalState, params: KickedTopParams) -> np.ndarray:
    """Analytic Jacobian of the p = pi/2 map at the given state.

    Rows are gradients of (X', Y', Z'); the kappa-dependent entries come from
    differentiating the twist angle kappa*X through the trig factors.
    """
    params.require_quarter_turn()
    k = params.kappa
    c = math.cos(k * state.x)
    s = math.sin(k * state.x)
    return np.array([
        [k * (state.y * c - state.z * s), s, c],
        [-k * (state.z * c + state.y * s), c, -s],
        [-1.0, 0.0, 0.0],
    ])


def _check_closure(points: list[ClassicalState], params: KickedTopParams, tol: float = 1e-10):
    n = len(points)
    for i in range(n):
        image = step(points[i], params).as_array()
        target = points[(i + 1) % n].as_array()
        err = float(np.max(np.abs(image - target)))
        if err > tol:
            raise OrbitClosureError(
                f"point {i} maps {err:.3e} away from point {(i + 1) % n} (tol {tol:.1e})"
            )


def orbit_stability(orbit: PeriodicOrbit, params: KickedTopParams) -> np.ndarray:
    """Eigenvalues of the Jacobian of F^n along the orbit.

    The ordered product J(points[n-1]) ... J(points[0]) is the linearization
    of the n-fold map at points[0].  Fills the orbit's stability fields and
    returns the eigenvalues sorted by decreasing modulus.
    """
    _check_closure(orbit.points, params)
    m = np.eye(3)
    for pt in orbit.points:
        m = jacobian(pt, params) @ m
    eig = np.linalg.eigvals(m)
    eig = eig[np.argsort(-np.abs(eig))]
    orbit.stability_eigenvalues = eig
    orbit.is_stable = bool(np.all(np.abs(eig) <= 1.0 + STABILITY_TOL))
    return eig


def solve_x0(kappa: float) -> float:
    """Positive root of the fixed-point normalization condition.

    Solves 2 x0^2 + [x0 sin(kappa x0)]^2 / [1 - cos(kappa x0)]^2 = 1 for the
    smallest positive root, the branch that grows continuously out of x0 = 0
    at kappa = 2.  The residual is evaluated in the equivalent half-angle
    form 2 x^2 + [x cot(kappa x / 2)]^2 - 1, which stays finite as x -> 0
    where 1 - cos underflows.  Uses a 1024-subinterval sign-change scan on
    (0, 1/sqrt(2)] followed by bisection; the returned residual is < 1e-12.
    """
    if kappa <= 2.0:
        raise NoRoot(f"normalization condition has no nontrivial root for kappa = {kappa} <= 2")

    def g(x: float) -> float:
        half = 0.5 * kappa * x
        s = math.sin(half)
        if s == 0.0:
            return math.inf
        t = x * math.cos(half) / s
        return 2.0 * x * x + t * t - 1.0

    lo, hi = 1e-12, 1.0 / math.sqrt(2.0)
    grid = np.linspace(lo, hi, 1025)
    vals = [g(x) for x in grid]
    bracket = None
    for i in range(1024):
        if vals[i] == 0.0:
            bracket = (grid[i], grid[i])
            break
        if vals[i] * vals[i + 1] <= 0.0:
            bracket = (grid[i], grid[i + 1])
            break
    if bracket is None:
        raise NoRoot(f"no sign change found on (0, 1/sqrt(2)] for kappa = {kappa}")

    a, b = bracket
    fa = g(a)
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        fm = g(mid)
        if fm == 0.0:
            a = b = mid
            break
        if fa * fm < 0.0:
            b = mid
        else:
            a, fa = mid, fm
    x0 = float(0.5 * (a + b))
    if abs(g(x0)) > 1e-12:
        raise NoRoot(f"bisection stalled at residual {g(x0):.3e} for kappa = {kappa}")
    return x0


def _catalog_points(label: str, kappa: float) -> list[ClassicalState] | None:
    """Analytic points for one catalog entry, or None where it does not exist."""
    if label == "FP1":
        return [ClassicalState(0.0, 1.0, 0.0)]
    if label == "FP2":
        return [ClassicalState(0.0, -1.0, 0.0)]
    if label == "P4":
        return [
            ClassicalState(1.0, 0.0, 0.0),
            ClassicalState(0.0, 0.0, -1.0),
            ClassicalState(-1.0, 0.0, 0.0),
            ClassicalState(0.0, 0.0, 1.0),
        ]
    if label in ("FP3", "FP4", "P2A"):
        try:
            x0 = solve_x0(kappa)
        except NoRoot:
            return None
        y0 = x0 * math.sin(kappa * x0) / (1.0 - math.cos(kappa * x0))
        mk = ClassicalState.from_vector
        if label == "FP3":
            return [mk((x0, y0, -x0))]
        if label == "FP4":
            return [mk((-x0, y0, x0))]
        return [mk((x0, -y0, x0)), mk((-x0, -y0, -x0))]
    if label in ("P2B", "P2C", "P2D", "P2E"):
        a = math.pi / kappa
        w2 = 1.0 - 2.0 * a * a
        if w2 < 0.0:
            return None
        w = math.sqrt(w2)
        mk = ClassicalState.from_vector
        if label == "P2B":
            return [mk((a, w, a)), mk((-a, -w, -a))]
        if label == "P2C":
            return [mk((-a, w, a)), mk((-a, -w, a))]
        if label == "P2D":
            return [mk((a, w, -a)), mk((a, -w, -a))]
        return [mk((a, -w, a)), mk((-a, w, -a))]
    raise ValueError(f"unknown catalog label {label!r}")


def catalog_existence(params: KickedTopParams) -> dict[str, dict]:
    """Existence report for every catalog label at the given parameters."""
    kappa = params.kappa
    sqrt2pi = math.sqrt(2.0) * math.pi
    report = {}
    for label in CATALOG_LABELS:
        if label in ("FP1", "FP2", "P4"):
            report[label] = {"exists": True, "reason": "exists at all kappa"}
        elif label in ("FP3", "FP4", "P2A"):
            ok = kappa > 2.0
            reason = "exists for kappa > 2" if ok else f"requires kappa > 2, got {kappa}"
            report[label] = {"exists": ok, "reason": reason}
        else:
            ok = kappa >= sqrt2pi
            reason = (
                "exists for kappa >= sqrt(2)*pi"
                if ok
                else f"requires kappa >= sqrt(2)*pi ~ {sqrt2pi:.4f}, got {kappa}"
            )
            report[label] = {"exists": ok, "reason": reason}
    return report


def resolve_orbit(label: str, params: KickedTopParams, with_stability: bool = True) -> PeriodicOrbit | None:
    """Build one catalog orbit at the given parameters, or None if absent."""
    params.require_quarter_turn()
    points = _catalog_points(label, params.kappa)
    if points is None:
        return None
    orbit = PeriodicOrbit(points=points, period=len(points), label=label)
    if with_stability:
        orbit_stability(orbit, params)
    return orbit


def orbit_catalog(params: KickedTopParams, with_stability: bool = True) -> list[PeriodicOrbit]:
    """All catalog orbits that exist at the given parameters."""
    orbits = []
    for label in CATALOG_LABELS:
        orbit = resolve_orbit(label, params, with_stability=with_stability)
        if orbit is not None:
            orbits.append(orbit)
    return orbits


def _max_abs_eig(label: str, kappa: float, params: KickedTopParams) -> float | None:
    orbit = resolve_orbit(label, KickedTopParams(kappa, params.p, params.tau))
    if orbit is None:
        return None
    return orbit.max_abs_eigenvalue()


def bifurcation_scan(
    orbit_label: str,
    kappa_range: tuple[float, float],
    n_points: int,
    params: KickedTopParams | None = None,
) -> BifurcationScan:
    """Scan max|lambda| over a kappa grid and locate the loss of stability.

    The crossing is where max|lambda| first exceeds 1 + STABILITY_TOL; on the
    stable side the spectrum sits on the unit circle to roundoff, so the
    tolerance keeps the bracketing test from flipping on noise.  The bracket
    is refined by bisection to |delta kappa| < 1e-6.
    """
    if params is None:
        params = KickedTopParams(kappa=0.0)
    lo, hi = kappa_range
    if not (hi > lo and n_points >= 2):
        raise ValueError("need kappa_range with hi > lo and n_points >= 2")
    kappas = np.linspace(lo, hi, n_points)
    maxeig = np.full(n_points, np.nan)
    exists = np.zeros(n_points, dtype=bool)
    for i, k in enumerate(kappas):
        val = _max_abs_eig(orbit_label, float(k), params)
        if val is not None:
            exists[i] = True
            maxeig[i] = val

    def unstable(k: float) -> bool | None:
        val = _max_abs_eig(orbit_label, k, params)
        if val is None:
            return None
        return val > 1.0 + STABILITY_TOL

    crossing = None
    for i in range(n_points - 1):
        if not (exists[i] and exists[i + 1]):
            continue
        ui = maxeig[i] > 1.0 + STABILITY_TOL
        uj = maxeig[i + 1] > 1.0 + STABILITY_TOL
        if ui != uj:
            a, b = float(kappas[i]), float(kappas[i + 1])
            ua = ui
            while b - a > 1e-6:
                mid = 0.5 * (a + b)
                um = unstable(mid)
                if um is None:
                    break
                if um == ua:
                    a = mid
                else:
                    b = mid
            crossing = 0.5 * (a + b)
            break
    return BifurcationScan(
        label=orbit_label,
        kappa_values=kappas,
        max_abs_eigenvalue=maxeig,
        exists=exists,
        crossing=crossing,
    )


def rotate_x_pi(state: ClassicalState) -> ClassicalState:
    """Rotation by pi about the x axis, the symmetry of the squared map."""
    return ClassicalState(state.x, -state.y, -state.z)


def fibonacci_sphere(n: int, seed: int = 0) -> np.ndarray:
    """Deterministic quasi-uniform covering of the sphere, (n, 3) array.

    Fibonacci lattice; the seed rigidly rotates the lattice about z so that
    distinct seeds give distinct (still deterministic) coverings.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    i = np.arange(n)
    z = 1.0 - 2.0 * (i + 0.5) / n
    golden = math.pi * (3.0 - math.sqrt(5.0))
    offset = float(np.random.RandomState(seed).uniform(0.0, TWO_PI))
    phi = i * golden + offset
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    pts = np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=-1)
    return pts / np.linalg.norm(pts, axis=-1, keepdims=True)


def stroboscopic_ensemble(
    n_initial: int,
    n_kicks: int,
    params: KickedTopParams,
    seed: int = 0,
) -> np.ndarray:
    """Kick-by-kick polar samples of an ensemble, for phase portraits.

    Evolves a Fibonacci-lattice ensemble and records (theta, phi) after each
    kick, giving n_initial * n_kicks rows of (theta, phi).  The initial
    points themselves are not emitted.
    """
    params.require_quarter_turn()
    if n_initial < 1:
        raise ValueError("need n_initial >= 1")
    if n_kicks < 0:
        raise ValueError("need n_kicks >= 0")
    xyz = fibonacci_sphere(n_initial, seed=seed)
    out = np.empty((n_initial * n_kicks, 2))
    for k in range(n_kicks):
        xyz = _step_xyz(xyz, params.kappa)
        nrm = np.linalg.norm(xyz, axis=-1, keepdims=True)
        drift = np.abs(nrm * nrm - 1.0) > _NORM_DRIFT_TOL
        if np.any(drift):
            xyz = np.where(drift, xyz / nrm, xyz)
        theta = np.arccos(np.clip(xyz[:, 2], -1.0, 1.0))
        phi = np.arctan2(xyz[:, 1], xyz[:, 0])
        phi = np.where(phi <= -math.pi, phi + TWO_PI, phi)
        out[k * n_initial:(k + 1) * n_initial, 0] = theta
        out[k * n_initial:(k + 1) * n_initial, 1] = phi
    return out


def sphere_seed_grid(n_theta: int, n_phi: int) -> np.ndarray:
    """Latitude-longitude seed grid (poles excluded), (n_theta * n_phi, 3)."""
    thetas = (np.arange(n_theta) + 0.5) * math.pi / n_theta
    phis = np.arange(n_phi) * TWO_PI / n_phi - math.pi
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    st = np.sin(tt)
    pts = np.stack([st * np.cos(pp), st * np.sin(pp), np.cos(tt)], axis=-1)
    return pts.reshape(-1, 3)


def _tangent_basis(v: np.ndarray) -> np.ndarray:
    """Two orthonormal vectors spanning the tangent plane at unit vector v."""
    a = np.array([1.0, 0.0, 0.0]) if abs(v[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    t1 = np.cross(v, a)
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(v, t1)
    return np.stack([t1, t2], axis=-1)


def _newton_orbit_point(
    seed: np.ndarray, period: int, params: KickedTopParams, tol: float, max_iter: int
) -> np.ndarray | None:
    """Newton iteration for a fixed point of F^period, on the sphere.

    The update is solved in the 2D tangent plane, which removes the neutral
    radial direction from the linear system.
    """
    kappa = params.kappa
    s = np.asarray(seed, dtype=float)
    s = s / np.linalg.norm(s)
    for _ in range(max_iter):
        pt = s
        m = np.eye(3)
        for _ in range(period):
            st = ClassicalState.from_vector(pt)
            m = jacobian(st, params) @ m
            pt = _step_xyz(pt, kappa)
        g = pt - s
        if np.max(np.abs(g)) < tol:
            return s
        t = _tangent_basis(s)
        a = t.T @ (m - np.eye(3)) @ t
        try:
            du = np.linalg.solve(a, -(t.T @ g))
        except np.linalg.LinAlgError:
            return None
        nrm = np.linalg.norm(du)
        if nrm > 0.5:
            du *= 0.5 / nrm
        s = s + t @ du
        s /= np.linalg.norm(s)
    return None


def find_periodic_orbits(
    period: int,
    params: KickedTopParams,
    seed_grid,
    tol: float = 1e-12,
    max_iter: int = 60,
    dedup_tol: float = 1e-6,
) -> OrbitSearchResult:
    """Newton search for period-n orbits from a grid of seeds.

    Converged roots are deduplicated against already-found orbits (any point
    within dedup_tol of any cycle point counts as the same orbit, which also
    absorbs cyclic shifts), and roots that already close at a proper divisor
    of the period are dropped.  Per-seed failures are silent; the result
    carries the converged/failed counts.
    """
    params.require_quarter_turn()
    if period < 1:
        raise ValueError("period must be >= 1")
    if isinstance(seed_grid, int):
        seeds = sphere_seed_grid(seed_grid, seed_grid)
    elif isinstance(seed_grid, tuple) and len(seed_grid) == 2:
        seeds = sphere_seed_grid(*seed_grid)
    else:
        seeds = np.asarray(seed_grid, dtype=float).reshape(-1, 3)

    divisors = [d for d in range(1, period) if period % d == 0]
    orbits: list[PeriodicOrbit] = []
    n_conv = 0
    n_fail = 0
    for seed in seeds:
        root = _newton_orbit_point(seed, period, params, tol, max_iter)
        if root is None:
            n_fail += 1
            continue
        n_conv += 1
        lower = False
        for d in divisors:
            pt = root.copy()
            for _ in range(d):
                pt = _step_xyz(pt, params.kappa)
            if np.max(np.abs(pt - root)) < 1e-9:
                lower = True
                break
        if lower:
            continue
        cycle = [root.copy()]
        for _ in range(period - 1):
            cycle.append(_step_xyz(cycle[-1], params.kappa))
        dup = False
        for other in orbits:
            pts = np.array([q.as_array() for q in other.points])
            if np.min(np.max(np.abs(pts - root), axis=1)) < dedup_tol:
                dup = True
                break
        if dup:
            continue
        start = min(range(period), key=lambda i: tuple(np.round(cycle[i], 9)))
        cycle = cycle[start:] + cycle[:start]
        orbit = PeriodicOrbit(
            points=[ClassicalState.from_vector(p) for p in cycle],
            period=period,
            label="NUMERIC",
        )
        orbit_stability(orbit, params)
        orbits.append(orbit)
    return OrbitSearchResult(orbits=orbits, n_seeds=len(seeds), n_converged=n_conv, n_failed=n_fail)
