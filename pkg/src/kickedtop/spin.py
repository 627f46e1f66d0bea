"""Angular-momentum algebra, spin coherent states, overlaps and Husimi maps.

States of a spin j live in the 2j+1 dimensional |j,m> basis with m ordered
j, j-1, ..., -j (index 0 is the stretched state |j,j>).  hbar = 1 throughout.

A spin coherent state (SCS) centered at sphere direction (theta, phi) is
R(theta, phi)|j,j> with R = exp[i theta (Jx sin phi - Jy cos phi)].  In the
m-basis this has the closed form

    amp_k = sqrt(C(2j, k)) cos(theta/2)^(2j-k) sin(theta/2)^k e^(i k phi)

with k = j - m, which is what `spin_coherent_state` evaluates (in log space,
so it scales to j of a few thousand).  The matrix-exponential construction
is kept as `spin_coherent_state_rotation` and pins the phase convention: the
m = j amplitude is real and nonnegative for theta < pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh
from scipy.special import gammaln, roots_legendre

_NORM_TOL = 1e-12


def _check_j(j: float) -> int:
    """Validate that 2j is a nonnegative integer; returns 2j as int."""
    two_j = 2.0 * j
    if two_j < 0 or abs(two_j - round(two_j)) > 1e-9:
        raise ValueError(f"j must be a nonnegative half-integer, got {j}")
    return int(round(two_j))


def m_values(j: float) -> np.ndarray:
    """m = j, j-1, ..., -j matching the amplitude index order."""
    two_j = _check_j(j)
    return j - np.arange(two_j + 1)


@dataclass
class SpinState:
    """Normalized amplitude vector in the |j,m> basis, m descending from j."""

    j: float
    amplitudes: np.ndarray

    def __post_init__(self):
        two_j = _check_j(self.j)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (two_j + 1,):
            raise ValueError(
                f"amplitude vector has shape {self.amplitudes.shape}, expected ({two_j + 1},)"
            )
        nrm = float(np.linalg.norm(self.amplitudes))
        if abs(nrm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm {nrm} deviates from 1 beyond {_NORM_TOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


def _bare_state(j: float, amplitudes: np.ndarray) -> SpinState:
    """Wrap amplitudes without the construction checks (internal use)."""
    st = object.__new__(SpinState)
    st.j = j
    st.amplitudes = amplitudes
    return st


@dataclass(frozen=True)
class SphericalPoint:
    """Direction on the sphere: theta in [0, pi], phi in (-pi, pi]."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = self.theta, self.phi
        if not -1e-12 <= theta <= math.pi + 1e-12:
            raise ValueError(f"theta = {theta} outside [0, pi]")
        theta = min(math.pi, max(0.0, theta))
        if theta == 0.0 or theta == math.pi:
            phi = 0.0  # canonical azimuth at the poles
        else:
            phi = math.remainder(phi, 2.0 * math.pi)
            if phi <= -math.pi:
                phi += 2.0 * math.pi
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_cartesian(cls, vec) -> "SphericalPoint":
        v = np.asarray(vec, dtype=float)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise ValueError("zero vector has no direction")
        theta = math.acos(min(1.0, max(-1.0, v[2] / n)))
        phi = math.atan2(v[1], v[0])
        return cls(theta, phi)

    def to_cartesian(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])


def as_point(point) -> SphericalPoint:
    """Coerce a SphericalPoint, a classical state, or a 3-vector to a point."""
    if isinstance(point, SphericalPoint):
        return point
    if hasattr(point, "as_array"):
        return SphericalPoint.from_cartesian(point.as_array())
    arr = np.asarray(point, dtype=float)
    if arr.shape == (2,):
        return SphericalPoint(float(arr[0]), float(arr[1]))
    if arr.shape == (3,):
        return SphericalPoint.from_cartesian(arr)
    raise ValueError(f"cannot interpret {point!r} as a sphere direction")


def great_circle_angle(point_a, point_b) -> float:
    """Angle between two directions on the unit sphere, in [0, pi]."""
    u = as_point(point_a).to_cartesian()
    v = as_point(point_b).to_cartesian()
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(u @ v))


def ladder_coefficients(j: float) -> np.ndarray:
    """Raising coefficients sqrt(j(j+1) - m(m+1)) for m = j-1, ..., -j.

    Entry k couples basis indices k and k-1 (J+ maps index k to k-1).
    """
    m = m_values(j)[1:]
    return np.sqrt(j * (j + 1.0) - m * (m + 1.0))


def angular_momentum_operators(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense (Jx, Jy, Jz) in the |j,m> basis, m descending."""
    two_j = _check_j(j)
    n = two_j + 1
    jz = np.diag(m_values(j)).astype(complex)
    jp = np.zeros((n, n), dtype=complex)
    if n > 1:
        r = ladder_coefficients(j)
        jp[np.arange(n - 1), np.arange(1, n)] = r
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    return jx, jy, jz


def expectation(state: SpinState) -> np.ndarray:
    """(<Jx>, <Jy>, <Jz>) without materializing the dense operators."""
    psi = state.amplitudes
    m = m_values(state.j)
    jz = float(np.sum(m * np.abs(psi) ** 2))
    if psi.shape[0] > 1:
        r = ladder_coefficients(state.j)
        jplus = complex(np.sum(np.conj(psi[:-1]) * r * psi[1:]))
    else:
        jplus = 0.0 + 0.0j
    return np.array([jplus.real, jplus.imag, jz])


def uncertainty(state: SpinState) -> float:
    """(<J^2> - <J>^2) / j^2; equals 1/j for a coherent state."""
    j = state.j
    ev = expectation(state)
    return (j * (j + 1.0) - float(ev @ ev)) / (j * j)


def _log_binom(n: int) -> np.ndarray:
    k = np.arange(n + 1)
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


def spin_coherent_state(j: float, point) -> SpinState:
    """SCS centered at the given direction, via the binomial closed form."""
    two_j = _check_j(j)
    pt = as_point(point)
    half = 0.5 * pt.theta
    k = np.arange(two_j + 1)
    if pt.theta == 0.0:
        amps = np.zeros(two_j + 1, dtype=complex)
        amps[0] = 1.0
    elif pt.theta == math.pi:
        amps = np.zeros(two_j + 1, dtype=complex)
        amps[-1] = 1.0
    else:
        log_mag = 0.5 * _log_binom(two_j) + (two_j - k) * math.log(math.cos(half)) + k * math.log(
            math.sin(half)
        )
        amps = np.exp(log_mag + 1j * k * pt.phi)
    nrm = float(np.linalg.norm(amps))
    if abs(nrm - 1.0) > 1e-14:
        amps = amps / nrm
    return SpinState(j, amps)


def rotation_to_direction(j: float, point) -> np.ndarray:
    """Unitary R(theta, phi) = exp[i theta (Jx sin phi - Jy cos phi)].

    Built from the eigendecomposition of the Hermitian generator; O(n^3), so
    meant for moderate j and as the convention oracle for the closed form.
    """
    pt = as_point(point)
    jx, jy, _ = angular_momentum_operators(j)
    h = pt.theta * (jx * math.sin(pt.phi) - jy * math.cos(pt.phi))
    lam, v = eigh(h)
    return (v * np.exp(1j * lam)) @ v.conj().T


def spin_coherent_state_rotation(j: float, point) -> SpinState:
    """SCS via the rotation operator applied to |j,j>; the slow oracle route."""
    r = rotation_to_direction(j, point)
    return SpinState(j, r[:, 0].copy())


def overlap_analytic(point_a, point_b, j: float) -> float:
    """|<a|b>| = [cos(chi/2)]^(2j) with chi the great-circle angle."""
    two_j = _check_j(j)
    chi = great_circle_angle(point_a, point_b)
    if chi >= math.pi:  # antipodal; cos(pi/2) would leave roundoff dust
        return 0.0
    c = math.cos(0.5 * chi)
    if c <= 0.0:
        return 0.0
    return c ** two_j


def overlap_numeric(state_a: SpinState, state_b: SpinState) -> complex:
    """Inner product <a|b> of two states of the same j."""
    if state_a.j != state_b.j:
        raise ValueError(f"spin mismatch: j = {state_a.j} vs {state_b.j}")
    return complex(np.vdot(state_a.amplitudes, state_b.amplitudes))


@dataclass
class HusimiGrid:
    """Q(theta, phi) on a Gauss-Legendre (in cos theta) x uniform-phi grid."""

    j: float
    theta_nodes: np.ndarray
    phi_nodes: np.ndarray
    theta_weights: np.ndarray
    values: np.ndarray

    def integrate(self) -> float:
        """Integral of Q over the sphere (exact for the quadrature degree)."""
        dphi = 2.0 * math.pi / self.phi_nodes.size
        return float(self.theta_weights @ self.values.sum(axis=1) * dphi)

    def peak(self) -> SphericalPoint:
        """Grid node where Q is largest."""
        it, ip = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return SphericalPoint(float(self.theta_nodes[it]), float(self.phi_nodes[ip]))


def default_husimi_resolution(j: float) -> tuple[int, int]:
    n_theta = max(64, _check_j(j) + 2)
    return n_theta, 2 * n_theta


def _husimi_nodes(j: float, resolution: tuple[int, int] | None):
    n_theta, n_phi = resolution if resolution is not None else default_husimi_resolution(j)
    if n_theta < 1 or n_phi < 1:
        raise ValueError("grid resolution must be positive")
    u, w = roots_legendre(n_theta)
    order = np.argsort(-u)  # cos(theta) descending <-> theta ascending
    theta = np.arccos(u[order])
    weights = w[order]
    phi = -math.pi + 2.0 * math.pi * (np.arange(n_phi) + 1.0) / n_phi
    return theta, phi, weights


def _coherent_magnitudes(j: float, theta: np.ndarray) -> np.ndarray:
    """Real magnitude part of SCS amplitudes for a batch of theta values.

    Row t holds sqrt(C(2j,k)) cos(theta_t/2)^(2j-k) sin(theta_t/2)^k.
    """
    two_j = _check_j(j)
    k = np.arange(two_j + 1)
    half = 0.5 * np.asarray(theta, dtype=float)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_c = np.log(np.cos(half))
        log_s = np.log(np.sin(half))
        # 0 * (-inf) at the poles means "power of zero taken zero times": 0
        term_c = np.where((two_j - k)[None, :] == 0, 0.0, (two_j - k)[None, :] * log_c)
        term_s = np.where(k[None, :] == 0, 0.0, k[None, :] * log_s)
    return np.exp(0.5 * _log_binom(two_j)[None, :] + term_c + term_s)


def husimi(state_or_density, resolution: tuple[int, int] | None = None) -> HusimiGrid:
    """Husimi distribution Q = (2j+1)/(4 pi) <theta,phi|rho|theta,phi>.

    Accepts a pure SpinState or a square density matrix (unit trace).  The
    default resolution integrates Q to unity at machine precision for the
    band limit set by j.
    """
    if isinstance(state_or_density, SpinState):
        state = state_or_density
        nrm = float(np.linalg.norm(state.amplitudes))
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"state norm {nrm} is not 1")
        j = state.j
        rho = None
        psi = state.amplitudes
    else:
        rho = np.asarray(state_or_density, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError("density operator must be a square matrix")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"density operator trace {tr} is not 1")
        j = 0.5 * (rho.shape[0] - 1)
        psi = None

    theta, phi, weights = _husimi_nodes(j, resolution)
    two_j = _check_j(j)
    k = np.arange(two_j + 1)
    mag = _coherent_magnitudes(j, theta)
    phase = np.exp(-1j * np.outer(k, phi))
    prefactor = (two_j + 1.0) / (4.0 * math.pi)
    if psi is not None:
        inner = (mag * psi[None, :]) @ phase
        q = prefactor * np.abs(inner) ** 2
    else:
        q = np.empty((theta.size, phi.size))
        bra_phase = phase.conj().T  # (n_phi, dim), entries e^{+i k phi}
        for t in range(theta.size):
            c = bra_phase * mag[t][None, :]  # SCS kets at fixed theta
            q[t] = prefactor * np.real(np.einsum("pk,kl,pl->p", c.conj(), rho, c))
    return HusimiGrid(j=j, theta_nodes=theta, phi_nodes=phi, theta_weights=weights, values=q)
