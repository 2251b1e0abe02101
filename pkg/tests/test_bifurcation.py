import numpy as np
import pytest

from replicube import bifurcation, core


@pytest.fixture(scope="module")
def full_scan():
    return bifurcation.scan(-32.0, 10.0, step=0.01)


def test_transcritical_values_exact(full_scan):
    found = sorted(e.mu_star for e in full_scan if e.kind == "transcritical")
    expected = sorted(bifurcation.TRANSCRITICAL_VALUES)
    assert len(found) == len(expected)
    for f, e in zip(found, expected):
        assert abs(f - e) < 1e-6


def test_hopf_and_belyakov_roots(full_scan):
    hopfs = sorted(e.mu_star for e in full_scan if e.kind == "hopf")
    assert len(hopfs) == 2
    assert abs(hopfs[0] - (-18.1623)) < 5e-4
    assert abs(hopfs[1] - 9.5055) < 5e-4
    bel_o = [e.mu_star for e in full_scan
             if e.kind == "belyakov" and e.equilibrium == "O"]
    assert len(bel_o) == 1
    assert abs(bel_o[0] - (-30.5550)) < 5e-4


def test_face_focus_transitions(full_scan):
    b2 = sorted(e.mu_star for e in full_scan
                if e.kind == "belyakov" and e.equilibrium == "B2")
    # the lower transition parameter is an exact integer root
    assert abs(b2[0] - (-22.0)) < 1e-7
    b3 = sorted(e.mu_star for e in full_scan
                if e.kind == "belyakov" and e.equilibrium == "B3")
    assert abs(b3[0] - (-14.2873222)) < 1e-6


def test_refine_transcritical_bracket():
    ev = bifurcation.BifurcationEvent("transcritical", "A1", np.nan,
                                      (-12.004, -11.996), 0.0, 0.0)
    assert abs(bifurcation.refine(ev, tol=1e-10) - (-12.0)) < 1e-9


def test_refine_rejects_bad_bracket():
    ev = bifurcation.BifurcationEvent("hopf", "O", np.nan, (0.0, 1.0),
                                      0.0, 0.0)
    with pytest.raises(ValueError):
        bifurcation.refine(ev)


def test_hopf_transversality():
    mu1, mu2 = bifurcation.hopf_values()
    assert abs(bifurcation.hopf_transversality(mu1)) >= 1e-3
    assert abs(bifurcation.hopf_transversality(mu2)) >= 1e-3


def test_classify_case_representatives():
    reps = {
        "I.1": -30.8, "I.2": -20.0, "I.3": -18.0, "II": -15.0, "III": -10.0,
        "IV": -7.0, "V": 0.0, "VI": 3.6, "VII.1": 9.0, "VII.2": 9.8,
    }
    for label, mu in reps.items():
        assert bifurcation.classify_case(mu) == label


def test_classify_case_constant_between_events():
    bounds = bifurcation.case_boundaries()
    for lo, hi, label in zip([core.MU_MIN] + bounds, bounds + [core.MU_MAX],
                             bifurcation.CASE_LABELS):
        for frac in (0.05, 0.5, 0.95):
            mu = lo + frac * (hi - lo)
            assert bifurcation.classify_case(mu) == label


def test_classify_case_boundary_errors():
    with pytest.raises(ValueError):
        bifurcation.classify_case(-12.0)
    with pytest.raises(ValueError):
        bifurcation.classify_case(core.MU_MIN)


def test_scan_rejects_bad_step():
    with pytest.raises(ValueError):
        bifurcation.scan(0.0, 1.0, step=0.0)


def test_hopf_cycle_born_inside_window():
    mu1, _ = bifurcation.hopf_values()
    cycle = bifurcation.hopf_cycle_check(mu1, side=0.1, horizon=2000.0)
    assert cycle is not None
    assert 0.0 < cycle["amplitude"] < 0.3
    assert cycle["period"] > 0.0


def test_no_cycle_below_first_hopf():
    mu1, _ = bifurcation.hopf_values()
    assert bifurcation.hopf_cycle_check(mu1, side=-0.5, horizon=2000.0) is None
