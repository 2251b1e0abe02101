import numpy as np
import pytest

from replicube import equilibria, flow


def test_face_orbit_stays_on_face_exactly():
    traj = flow.integrate(-5.0, (0.0, 0.4, 0.7), 20.0)
    assert np.all(traj.states[:, 0] == 0.0)
    traj = flow.integrate(2.0, (0.3, 1.0, 0.7), 20.0)
    assert np.all(traj.states[:, 1] == 1.0)


def test_equilibria_are_fixed_points_of_the_flow():
    # vertices are bitwise fixed, stable interior points stay put for a
    # long horizon, unstable ones only until roundoff is amplified
    for mu in (-20.0, 0.0, 5.0):
        p = equilibria.equilibrium_location("v7", mu)
        traj = flow.integrate(mu, p, 100.0)
        assert np.max(np.abs(traj.states - p)) == 0.0
    p = equilibria.interior_location(-20.0)
    traj = flow.integrate(-20.0, p, 100.0)
    assert np.max(np.abs(traj.states - p)) < 1e-8
    p = equilibria.interior_location(0.0)
    traj = flow.integrate(0.0, p, 10.0)
    assert np.max(np.abs(traj.states - p)) < 1e-8


def test_states_stay_in_cube():
    rng = np.random.default_rng(7)
    for _ in range(5):
        mu = rng.uniform(-30.0, 10.0)
        p0 = rng.uniform(0.05, 0.95, 3)
        traj = flow.integrate(mu, p0, 300.0)
        assert traj.states.min() >= 0.0 and traj.states.max() <= 1.0


def test_global_attraction_case():
    traj = flow.integrate(-20.0, (0.02, 0.03, 0.05), 200.0)
    o = equilibria.interior_location(-20.0)
    assert np.linalg.norm(traj.final - o) < 1e-4


def test_time_reversal_consistency():
    # the strong stable rate (about -7.9) is amplified when integrating
    # back, so the round trip is only testable over a short horizon
    p0 = np.array([0.3, 0.4, 0.5])
    fwd = flow.integrate(-20.0, p0, 2.0, rel_tol=1e-11, abs_tol=1e-14)
    back = flow.integrate(-20.0, fwd.final, -2.0, rel_tol=1e-11, abs_tol=1e-14)
    assert np.linalg.norm(back.final - p0) < 1e-5


def test_tolerance_halving_converges():
    p0 = (0.3, 0.4, 0.5)
    coarse = flow.integrate(3.6, p0, 20.0, rel_tol=1e-8, abs_tol=1e-11)
    fine = flow.integrate(3.6, p0, 20.0, rel_tol=1e-10, abs_tol=1e-13)
    assert np.linalg.norm(coarse.final - fine.final) < 1e-5


def test_tangent_frame_stays_orthonormal():
    _, logs = flow.integrate_with_tangents(0.0, (0.3, 0.3, 0.3), np.eye(3),
                                           5.0, renorm_dt=0.5)
    assert logs.shape == (10, 3)
    assert np.all(np.isfinite(logs))


def test_tangent_growth_at_equilibrium_matches_eigenvalues():
    mu = -31.0   # fully real spectrum at the interior point
    o = equilibria.interior_location(mu)
    ed = equilibria.eigen_analysis(mu, o)
    frame0, _ = np.linalg.qr(np.real(ed.eigenvectors))
    _, logs = flow.integrate_with_tangents(mu, o, frame0, 20.0, renorm_dt=0.5)
    rates = logs[-10:].mean(axis=0) / 0.5
    expected = np.sort(ed.eigenvalues.real)[::-1]
    assert np.max(np.abs(np.sort(rates)[::-1] - expected)) < 1e-3


def test_frame_must_be_orthonormal():
    with pytest.raises(ValueError):
        flow.integrate_with_tangents(0.0, (0.3, 0.3, 0.3),
                                     np.ones((3, 3)), 1.0)


def test_omega_limit_equilibrium():
    rep = flow.classify_omega_limit(-20.0, (0.3, 0.4, 0.5))
    assert rep.verdict == "equilibrium" and rep.equilibrium == "O"


def test_omega_limit_periodic():
    rep = flow.classify_omega_limit(-14.0, (0.3, 0.3, 0.3))
    assert rep.verdict == "periodic"
    assert rep.period > 0 and rep.amplitude > 0.01
    assert rep.evidence["return_time_rel_var"] < 1e-4


def test_invariance_violation_detected():
    # a start far outside the cube must error out, never get clamped
    with pytest.raises((flow.InvarianceError, RuntimeError)):
        flow.integrate(0.0, (1.5, 0.5, 0.5), 1.0)
