"""Floquet operator assembly, stroboscopic evolution, survival, Husimi series."""

import math

import numpy as np
import pytest

import kickedtop as kt
import kickedtop.floquet as fq
from _oracles import expm_floquet, ladder_operators, scs_expm, wigner_d

from scipy.linalg import expm

HALF_PI = math.pi / 2


def params(kappa, **kw):
    return kt.KickedTopParams(kappa, **kw)


def cap_mass(grid, center_xyz, radius=0.5):
    """Husimi mass within an angular cap around a direction."""
    tt, pp = np.meshgrid(grid.theta_nodes, grid.phi_nodes, indexing="ij")
    xyz = np.stack([np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1)
    ang = np.arccos(np.clip(xyz @ np.asarray(center_xyz), -1.0, 1.0))
    w2d = grid.theta_weights[:, None] * (2.0 * math.pi / grid.phi_nodes.size)
    return float((grid.values * w2d)[ang < radius].sum())


# ---------------------------------------------------------------- rotation factor

def test_wigner_oracle_self_check():
    # the factorial-sum oracle reduces to the textbook 2x2 at j = 1/2
    beta = 0.83
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    np.testing.assert_allclose(wigner_d(0.5, beta), [[c, -s], [s, c]], atol=1e-15)


def test_y_rotation_matches_wigner_closed_form():
    for j in (0.5, 1.0, 1.5, 3.0, 5.5):
        for beta in (0.3, HALF_PI, 2.9):
            np.testing.assert_allclose(
                fq.y_rotation(j, beta), wigner_d(j, beta), atol=1e-12
            )


def test_y_rotation_matches_expm():
    for j in (5.0, 12.5, 20.0):
        _, jy, _ = ladder_operators(j)
        np.testing.assert_allclose(
            fq.y_rotation(j, HALF_PI), expm(-1j * HALF_PI * jy), atol=1e-12
        )


def test_rotation_cache_reused_and_immutable():
    fq.clear_rotation_cache()
    u1 = kt.build_floquet(6, params(1.5))
    w = fq._rotation_cache[(12, HALF_PI)]
    kt.build_floquet(6, params(4.0))  # same (j, p), different kappa
    assert fq._rotation_cache[(12, HALF_PI)] is w
    assert not w.flags.writeable
    fq.clear_rotation_cache()
    assert (12, HALF_PI) not in fq._rotation_cache
    # the kappa sweep changed only the diagonal factor
    np.testing.assert_allclose(np.abs(u1.matrix), np.abs(w), atol=1e-14)


# ---------------------------------------------------------------- floquet operator

def test_build_floquet_matches_expm_oracle():
    for j in (2.0, 10.0, 12.5):
        for kappa in (1.5, 3.3):
            mine = kt.build_floquet(j, params(kappa)).matrix
            ref = expm_floquet(j, kappa)
            np.testing.assert_allclose(mine, ref, atol=1e-12)


def test_floquet_tau_scaling():
    # kappa enters only through kappa/(2 j tau)
    a = kt.build_floquet(7, params(3.0, tau=2.0)).matrix
    b = kt.build_floquet(7, params(1.5, tau=1.0)).matrix
    np.testing.assert_allclose(a, b, atol=1e-15)


def test_floquet_unitarity_moderate_sizes():
    for j in (10.0, 100.0, 500.0):
        u = kt.build_floquet(j, params(3.0)).matrix
        dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        assert dev < 1e-10, (j, dev)
    fq.clear_rotation_cache()


def test_build_floquet_rejects_j_zero():
    with pytest.raises(ValueError):
        kt.build_floquet(0.0, params(2.0))


def test_matrix_power_matches_repeated_application():
    u = kt.build_floquet(5, params(2.5)).matrix
    assert kt.matrix_power(u, 1) is u
    acc = np.eye(u.shape[0], dtype=complex)
    for n in range(1, 8):
        acc = acc @ u
        np.testing.assert_allclose(kt.matrix_power(u, n), acc, atol=1e-12)
    with pytest.raises(ValueError):
        kt.matrix_power(u, 0)


def test_evolve_shapes_and_norms():
    st = kt.spin_coherent_state(9, kt.SphericalPoint(1.0, 0.3))
    u = kt.build_floquet(9, params(3.0))
    out = kt.evolve(st, u, 25)
    assert len(out) == 26
    assert out[0] is st
    for s in out:
        assert abs(np.linalg.norm(s.amplitudes) - 1.0) < 1e-12


def test_evolve_validation():
    st = kt.spin_coherent_state(3, kt.SphericalPoint(1.0, 0.0))
    u = kt.build_floquet(4, params(1.0))
    with pytest.raises(ValueError):
        kt.evolve(st, u, 5)
    with pytest.raises(ValueError):
        kt.evolve(kt.spin_coherent_state(4, (0, 1, 0)), u, -1)


# ---------------------------------------------------------------- survival

def test_survival_fixed_point_matches_expm_oracle():
    j, kappa, L = 10.0, 1.5, 8
    res = kt.survival_fixed_point((0.0, 1.0, 0.0), j, params(kappa), L=L, keep_per_kick=True)
    u = expm_floquet(j, kappa)
    psi0 = scs_expm(j, HALF_PI, HALF_PI)
    psi = psi0
    for idx in range(L):
        psi = u @ psi
        assert res.per_kick[idx] == pytest.approx(abs(np.vdot(psi0, psi)) ** 2, abs=1e-12)


def test_survival_per_kick_mean_is_s():
    res = kt.survival_fixed_point((0.0, 1.0, 0.0), 8, params(2.2), L=37, keep_per_kick=True)
    assert res.per_kick.shape == (37,)
    assert res.S == res.per_kick.mean()


def test_survival_per_kick_absent_by_default():
    res = kt.survival_fixed_point((0.0, 1.0, 0.0), 8, params(2.2), L=5)
    assert res.per_kick is None


def test_survival_period_n_reduces_to_fixed_point():
    pr = params(1.5)
    orbit = kt.resolve_orbit("FP1", pr)
    a = kt.survival_period_n(orbit, 12, pr, L=20, keep_per_kick=True)
    b = kt.survival_fixed_point(orbit.points[0], 12, pr, L=20, keep_per_kick=True)
    assert a.S == b.S
    assert np.array_equal(a.per_kick, b.per_kick)
    assert a.label == "FP1" and a.period == 1


def test_survival_period_n_samples_whole_revolutions():
    # orbit-period sampling must agree with the expm oracle for U^4
    pr = params(1.5)
    orbit = kt.resolve_orbit("P4", pr)
    res = kt.survival_period_n(orbit, 6, pr, L=12, keep_per_kick=True)
    u4 = np.linalg.matrix_power(expm_floquet(6, 1.5), 4)
    pt = orbit.points[0].angles()
    psi0 = scs_expm(6, pt[0], pt[1])
    psi = psi0
    for idx in range(12):
        psi = u4 @ psi
        assert res.per_kick[idx] == pytest.approx(abs(np.vdot(psi0, psi)) ** 2, abs=1e-12)


def test_survival_p4_reference_value():
    pr = params(1.5)
    res = kt.survival_period_n(kt.resolve_orbit("P4", pr), 20, pr, L=50)
    assert res.S == pytest.approx(0.47080308852525204, abs=1e-12)


def test_survival_validation():
    with pytest.raises(ValueError):
        kt.survival_fixed_point((0, 1, 0), 5, params(1.0), L=0)


# ---------------------------------------------------------------- husimi dynamics

def test_husimi_timeseries_kick_zero_is_initial_state():
    start = kt.SphericalPoint(1.1, 0.4)
    series = kt.husimi_timeseries(start, 8, params(2.0), [0])
    direct = kt.husimi(kt.spin_coherent_state(8, start))
    np.testing.assert_allclose(series[0].values, direct.values, atol=1e-13)


def test_husimi_timeseries_validation():
    with pytest.raises(ValueError):
        kt.husimi_timeseries((1, 0, 0), 5, params(1.5), [])
    with pytest.raises(ValueError):
        kt.husimi_timeseries((1, 0, 0), 5, params(1.5), [3, 1])
    with pytest.raises(ValueError):
        kt.husimi_timeseries((1, 0, 0), 5, params(1.5), [-1, 2])


def test_husimi_timeseries_peak_cycles_with_p4_at_j20():
    pr = params(1.5)
    cycle = [q.as_array() for q in kt.resolve_orbit("P4", pr).points]
    series = kt.husimi_timeseries((1.0, 0.0, 0.0), 20, pr, list(range(9)))
    for k, grid in enumerate(series):
        expected = cycle[k % 4]
        peak = grid.peak().to_cartesian()
        ang = math.acos(min(1.0, max(-1.0, float(peak @ expected))))
        assert ang < 0.1, (k, ang)


def test_husimi_timeseries_j6_delocalizes_where_j20_does_not():
    pr = params(1.5)
    cycle = [q.as_array() for q in kt.resolve_orbit("P4", pr).points]
    target = cycle[8 % 4]
    mass6 = cap_mass(kt.husimi_timeseries((1, 0, 0), 6, pr, [8])[0], target)
    mass20 = cap_mass(kt.husimi_timeseries((1, 0, 0), 20, pr, [8])[0], target)
    assert mass20 > 0.55
    assert mass6 < 0.35


def test_husimi_time_average_of_eigenstate_is_stationary():
    pr = params(2.0)
    u = kt.build_floquet(6, pr)
    _, vecs = kt.floquet_eigenstates(u)
    est = kt.SpinState(6, vecs[:, 3])
    avg = kt.husimi_time_average(est, 6, pr, 7)
    single = kt.husimi(est)
    np.testing.assert_allclose(avg.values, single.values, atol=1e-12)


def test_husimi_time_average_concentration_split():
    fp1 = kt.SphericalPoint(HALF_PI, HALF_PI)
    masses = {}
    for kappa in (2.5, 6.0):
        pr = params(kappa)
        grid = kt.husimi_time_average(fp1, 25, pr, 100)
        assert grid.integrate() == pytest.approx(1.0, abs=1e-6)
        cat = {o.label: o for o in kt.orbit_catalog(pr, with_stability=False)}
        region = [cat[l].points[0].as_array() for l in ("FP1", "FP3", "FP4") if l in cat]
        masses[kappa] = sum(cap_mass(grid, c) for c in region)
    # kappa=2.5 stays caught in the FP1/FP3/FP4 island chain; kappa=6 spreads
    assert masses[2.5] > 0.8
    assert masses[6.0] < 0.35


def test_husimi_time_average_validation():
    with pytest.raises(ValueError):
        kt.husimi_time_average((0, 1, 0), 5, params(2.0), 0)


# ---------------------------------------------------------------- spectral checks

def test_eigenstate_resynthesis():
    u = kt.build_floquet(10, params(3.0))
    phases, vecs = kt.floquet_eigenstates(u)
    assert np.all(phases > -math.pi) and np.all(phases <= math.pi)
    resynth = (vecs * np.exp(1j * phases)) @ vecs.conj().T
    assert np.max(np.abs(resynth - u.matrix)) < 1e-9
    np.testing.assert_allclose(vecs.conj().T @ vecs, np.eye(21), atol=1e-12)


def test_squared_floquet_commutes_with_x_flip_at_integer_j():
    for j in (7.0, 12.0):
        u = kt.build_floquet(j, params(3.0)).matrix
        jx, _, _ = ladder_operators(j)
        rx = expm(-1j * math.pi * jx)
        u2 = u @ u
        assert np.max(np.abs(u2 @ rx - rx @ u2)) < 1e-10


def test_squared_floquet_symmetry_is_projective_at_half_integer_j():
    # The pi rotation squares to -1 in half-integer representations; the
    # commutator is genuinely O(1) there, and only integer j satisfies the
    # classical symmetry verbatim.
    j = 15.5
    u = kt.build_floquet(j, params(3.0)).matrix
    jx, _, _ = ladder_operators(j)
    rx = expm(-1j * math.pi * jx)
    u2 = u @ u
    assert np.max(np.abs(u2 @ rx - rx @ u2)) > 0.1


# ---------------------------------------------------------------- correspondence limits

def test_classical_limit_one_kick_heisenberg():
    j, kappa = 200.0, 1.5
    pr = params(kappa)
    u = kt.build_floquet(j, pr)
    rng = np.random.default_rng(17)
    v = rng.normal(size=(20, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    for row in v:
        st = kt.spin_coherent_state(j, row)
        evolved = kt.evolve(st, u, 1)[-1]
        quantum = kt.expectation(evolved) / j
        classical = kt.step(kt.ClassicalState.from_vector(row), pr).as_array()
        assert np.max(np.abs(quantum - classical)) < 0.02
    fq.clear_rotation_cache()


def test_deep_quantum_tunneling_j2():
    pr = params(1.5)
    u = kt.build_floquet(2, pr)
    psi0 = kt.spin_coherent_state(2, (0.0, 1.0, 0.0))
    mirror = kt.spin_coherent_state(2, (0.0, -1.0, 0.0)).amplitudes
    probs = [
        abs(np.vdot(mirror, s.amplitudes)) ** 2 for s in kt.evolve(psi0, u, 200)[1:]
    ]
    peak = int(np.argmax(probs))
    assert probs[peak] > 0.99
    assert 100 <= peak + 1 <= 130  # probability transfer completes near kick 113


def test_no_tunneling_at_j10_within_200_kicks():
    pr = params(1.5)
    u = kt.build_floquet(10, pr)
    psi0 = kt.spin_coherent_state(10, (0.0, 1.0, 0.0))
    mirror = kt.spin_coherent_state(10, (0.0, -1.0, 0.0)).amplitudes
    worst = max(
        abs(np.vdot(mirror, s.amplitudes)) ** 2 for s in kt.evolve(psi0, u, 200)[1:]
    )
    assert worst < 1e-6
