import numpy as np
import pytest

from replicube import equilibria, flow, lyapunov


def test_initial_condition_scheme():
    for mu, off in [(-30.5, (0.001, 0.0, -0.001)),
                    (0.0, (0.0, 0.0, 0.001)),
                    (9.8, (0.001, 0.001, 0.0))]:
        o = equilibria.interior_location(mu)
        p = lyapunov.initial_condition(mu)
        assert np.allclose(p - o, off, atol=1e-15)
        assert np.all(p > 0) and np.all(p < 1)


def test_signature_rules():
    assert lyapunov.signature_of([-1.0, -0.2, -0.01]) == "(-,-,-)"
    assert lyapunov.signature_of([0.004, -0.2, -1.0]) == "(-,-,0)"
    assert lyapunov.signature_of([0.02, 0.001, -1.0]) == "(-,0,+)"


def test_spectrum_argument_validation():
    with pytest.raises(ValueError):
        lyapunov.spectrum(0.0, T=10.0, discard_T=20.0)
    with pytest.raises(ValueError):
        lyapunov.spectrum(0.0, renorm_dt=-1.0)


def test_exponents_at_equilibrium_attractor():
    # orbit falls onto the interior point; exponents converge to the
    # real parts of its eigenvalues
    spec = lyapunov.spectrum(-20.0, T=5000.0)
    o = equilibria.interior_location(-20.0)
    ed = equilibria.eigen_analysis(-20.0, o)
    expected = np.sort(ed.eigenvalues.real)[::-1]
    assert np.max(np.abs(spec.exponents - expected)) < 1e-3
    assert spec.signature == "(-,-,-)"


def test_zero_exponent_on_periodic_orbit():
    spec = lyapunov.spectrum(-14.0, T=1e4)
    assert abs(spec.exponents[0]) <= lyapunov.THRESHOLD
    assert spec.signature == "(-,-,0)"


def test_trace_identity():
    for mu in (-14.0, 3.6):
        spec = lyapunov.spectrum(mu, T=5000.0)
        assert abs(spec.exponents.sum() - spec.divergence_avg) < 1e-2


def test_renorm_dt_robustness():
    a = lyapunov.spectrum(0.0, T=4000.0, renorm_dt=0.5)
    b = lyapunov.spectrum(0.0, T=4000.0, renorm_dt=1.0)
    assert np.max(np.abs(a.exponents - b.exponents)) < 2e-3


def test_agrees_with_adaptive_tangent_integration():
    # same orbit, two code paths: the fixed-step kernel and the
    # adaptive variational integrator
    mu, T = -14.0, 1500.0
    p0 = lyapunov.initial_condition(mu)
    spec = lyapunov.spectrum(mu, p0=p0, T=T, discard_T=200.0)
    _, logs = flow.integrate_with_tangents(mu, p0, np.eye(3), T,
                                           renorm_dt=0.5, rel_tol=1e-10,
                                           abs_tol=1e-13)
    skip = int(200.0 / 0.5)
    les = np.sort(logs[skip:].sum(axis=0) / (T - 200.0))[::-1]
    assert np.max(np.abs(les - spec.exponents)) < 2e-3


def test_sweep_orders_and_flags():
    rows, intervals = lyapunov.sweep(-20.0, -16.0, 3, T=2000.0)
    assert len(rows) == 3
    sigs = [r.signature for r in rows]
    assert sigs[0] == "(-,-,-)"        # below the first Hopf value
    assert sigs[-1] == "(-,-,0)"       # cycle regime
    assert intervals == []             # no positive exponent down here


def test_estimate_requires_sign_change():
    with pytest.raises(ValueError):
        lyapunov.estimate_mu_SA(bracket=(-5.0, 0.0), tol=0.1, T=2000.0,
                                coarse_step=0.5)
