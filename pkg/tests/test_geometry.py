import numpy as np
import pytest

from replicube import equilibria, flow, geometry


def test_shilnikov_report_inside_window():
    for mu in (0.0, 3.6):
        rep = geometry.shilnikov_condition(mu)
        assert rep["ordering_ok"] and rep["ratio_ok"]
        assert 2 * rep["lambda_u"] < rep["lambda_s"]


def test_shilnikov_rejects_stable_node_regime():
    with pytest.raises(ValueError):
        geometry.shilnikov_condition(-25.0)


def test_trace_unstable_empty_when_attracting():
    assert geometry.trace_unstable(-20.0) == []


def test_trace_unstable_lands_on_cycle():
    traces = geometry.trace_unstable(-17.5, n_seeds=4, t_end=400.0)
    assert len(traces) == 4
    for tr in traces:
        # not an equilibrium: the late window keeps oscillating
        assert tr.verdict == "wandering"
        tail = tr.trajectory.states[-400:]
        assert np.max(np.ptp(tail, axis=0)) > 0.01


def test_trace_stable_regime_patterns():
    verdicts = sorted(t.verdict for t in geometry.trace_stable(-20.0))
    assert verdicts == ["v3", "v6"]
    verdicts = sorted(t.verdict for t in geometry.trace_stable(0.0))
    assert verdicts == ["v6", "v6"]


def test_seed_radius_halving_keeps_verdicts():
    base = geometry.heteroclinic_probe(-20.0, "v3", "O", t_end=60.0)
    old = geometry.SEED_RADIUS
    try:
        geometry.SEED_RADIUS = old / 2
        halved = geometry.heteroclinic_probe(-20.0, "v3", "O", t_end=60.0)
    finally:
        geometry.SEED_RADIUS = old
    assert base["hit"] == halved["hit"] is True


def test_heteroclinic_miss_is_bounded_away():
    rep = geometry.heteroclinic_probe(-20.0, "v3", "v8", t_end=60.0)
    assert not rep["hit"]
    assert rep["min_distance"] > 0.1


def test_heteroclinic_unknown_names():
    with pytest.raises(KeyError):
        geometry.heteroclinic_probe(0.0, "v9", "O")


def test_homoclinic_needs_saddle_focus():
    with pytest.raises(ValueError):
        geometry.homoclinic_proximity(-25.0)


def test_poincare_returns_on_section_and_in_cube():
    smap = geometry.poincare_map(-14.0, n_returns=6, t_max=300.0,
                                 discard=100.0)
    point, normal = smap.point, smap.normal
    for p in smap.returns:
        assert abs((p - point) @ normal) < 1e-8
        assert np.all(p >= -1e-8) and np.all(p <= 1 + 1e-8)
    assert np.all(np.diff(smap.times) > 0)


def test_poincare_fixed_point_matches_cycle_period():
    smap = geometry.poincare_map(-14.0, n_returns=6, t_max=400.0,
                                 discard=200.0)
    rts = smap.return_times
    assert np.var(rts) / np.mean(rts) ** 2 < 1e-3
    rep = flow.classify_omega_limit(-14.0, (0.3, 0.3, 0.3))
    assert rep.verdict == "periodic"
    assert abs(np.mean(rts) - rep.period) / rep.period < 0.01


def test_poincare_too_few_returns():
    with pytest.raises(RuntimeError):
        geometry.poincare_map(-14.0, n_returns=500, t_max=50.0)
