"""Codimension-one events of the cube family along its parameter.

Three kinds of events are tracked:

* transcritical: a boundary equilibrium collides with another rest
  point while crossing a face of the cube, detected through the signed
  margin of its exit coordinate (the margin is linear-fractional in mu
  and vanishes exactly at the collision);
* hopf: the complex pair of the interior equilibrium crosses the
  imaginary axis;
* belyakov: an eigenvalue pair switches between real and complex at
  fixed real-part sign, detected through the sign of the relevant
  discriminant (characteristic-cubic discriminant for the interior
  point, the in-face radicand for B1/B2/B3).

Each detection carries a sign-change bracket from the scan grid and is
refined by root bracketing.  A case classifier labels any parameter by
the sub-interval of the bifurcation ledger it falls into.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from . import equilibria, flow
from .core import MU_MIN, MU_MAX, cube_jacobian

# exact parameter values of the six transcritical collisions, with the
# colliding pair
TRANSCRITICAL_VALUES = {
    -122.0 / 7.0: ("B3", "A4"),
    -12.0: ("A1", "v4"),
    -8.0: ("A4", "v3"),
    -6.0: ("B2", "A2"),
    110.0 / 31.0: ("B1", "A2"),
    8.0: ("A2", "v2"),
}


@dataclass
class BifurcationEvent:
    kind: str                   # transcritical | hopf | belyakov
    equilibrium: str
    mu_star: float
    bracket: tuple
    test_left: float
    test_right: float


CASE_LABELS = ["I.1", "I.2", "I.3", "II", "III", "IV", "V", "VI",
               "VII.1", "VII.2"]


def _boundary_margin(name):
    """Signed margin of the tracked equilibrium's exit coordinate.

    Positive while the equilibrium is inside the cube, zero exactly at
    its transcritical collision.
    """
    coord, flip = {"A1": (0, False), "A2": (0, False), "A4": (0, False),
                   "B1": (2, True), "B2": (1, False), "B3": (1, True)}[name]

    def margin(mu):
        v = equilibria.equilibrium_location(name, mu)[coord]
        return 1.0 - v if flip else v
    return margin


def hopf_test(mu):
    """Largest real part of the complex pair at the interior point.

    NaN when the spectrum is fully real (no pair to cross).
    """
    vals = np.linalg.eigvals(cube_jacobian(mu, equilibria.interior_location(mu)))
    cplx = vals[np.abs(vals.imag) > 1e-12]
    if len(cplx) == 0:
        return np.nan
    return float(cplx.real.max())


def interior_discriminant(mu):
    """Discriminant of the characteristic cubic at the interior point;
    negative means a complex pair."""
    c = np.poly(cube_jacobian(mu, equilibria.interior_location(mu)))
    a, b, cc, d = c
    return (18.0 * a * b * cc * d - 4.0 * b ** 3 * d + b ** 2 * cc ** 2
            - 4.0 * a * cc ** 3 - 27.0 * a ** 2 * d ** 2)


def _test_functions():
    tests = []
    for name in ("A1", "A2", "A4", "B1", "B2", "B3"):
        tests.append(("transcritical", name, _boundary_margin(name)))
    tests.append(("hopf", "O", hopf_test))
    tests.append(("belyakov", "O", interior_discriminant))
    for name in ("B1", "B2", "B3"):
        tests.append(("belyakov", name,
                      lambda mu, n=name: equilibria.face_radicand(n, mu)))
    return tests


def refine(event, tol=1e-8):
    """Sharpen an event's parameter by bracketed root finding."""
    kind, name = event.kind, event.equilibrium
    fn = dict((("transcritical", n), _boundary_margin(n))
              for n in ("A1", "A2", "A4", "B1", "B2", "B3"))
    fn[("hopf", "O")] = hopf_test
    fn[("belyakov", "O")] = interior_discriminant
    for n in ("B1", "B2", "B3"):
        fn[("belyakov", n)] = lambda mu, n=n: equilibria.face_radicand(n, mu)
    f = fn[(kind, name)]
    a, b = event.bracket
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return float(a)
    if fb == 0.0:
        return float(b)
    if not (np.isfinite(fa) and np.isfinite(fb) and fa * fb < 0):
        raise ValueError(f"bracket {event.bracket} does not straddle a "
                         f"sign change for {kind}/{name}")
    return float(brentq(f, a, b, xtol=tol))


def scan(mu_lo=MU_MIN, mu_hi=MU_MAX, step=0.01, tol=1e-8):
    """Detect every event on [mu_lo, mu_hi] on a grid of the given step.

    Each sign change of a test function between consecutive grid points
    yields one refined BifurcationEvent.  Events of one equilibrium
    closer together than the step would merge; with the default step no
    pair of events of this family is at risk.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    mus = np.arange(mu_lo, mu_hi + 0.5 * step, step)
    mus[-1] = min(mus[-1], mu_hi)
    events = []
    for kind, name, f in _test_functions():
        vals = np.array([f(m) for m in mus])
        for i in range(len(mus) - 1):
            a, b = vals[i], vals[i + 1]
            if not (np.isfinite(a) and np.isfinite(b)):
                continue
            if a == 0.0:   # grid point exactly on the root
                a = -b
            if a * b < 0:
                ev = BifurcationEvent(kind, name, np.nan,
                                      (float(mus[i]), float(mus[i + 1])),
                                      float(a), float(b))
                ev.mu_star = refine(ev, tol=tol)
                events.append(ev)
    events.sort(key=lambda e: e.mu_star)
    return events


def hopf_transversality(mu_star, h=1e-5):
    """Parameter derivative of the pair's real part across a Hopf root."""
    return (hopf_test(mu_star + h) - hopf_test(mu_star - h)) / (2.0 * h)


@lru_cache(maxsize=None)
def hopf_values(tol=1e-10):
    """The two Hopf roots of the interior equilibrium.

    The upper bracket stops short of 10 because the pair's real part
    also vanishes in the degenerate limit at the parameter endpoint.
    """
    mu1 = brentq(hopf_test, -20.0, -17.0, xtol=tol)
    mu2 = brentq(hopf_test, 9.0, 9.9, xtol=tol)
    return float(mu1), float(mu2)


@lru_cache(maxsize=None)
def belyakov_value(tol=1e-10):
    """Node-to-focus transition of the interior equilibrium."""
    return float(brentq(interior_discriminant, -31.0, -30.0, xtol=tol))


def case_boundaries():
    """Ordered interior boundaries of the ten classification cases."""
    mu1, mu2 = hopf_values()
    return [belyakov_value(), mu1, -122.0 / 7.0, -12.0, -8.0, -6.0,
            110.0 / 31.0, 8.0, mu2]


def classify_case(mu, boundary_tol=1e-9):
    """Label of the open parameter sub-interval containing mu."""
    if not MU_MIN < mu < MU_MAX:
        raise ValueError(f"mu={mu} outside the open analysis range")
    bounds = case_boundaries()
    for b in bounds:
        if abs(mu - b) <= boundary_tol:
            raise ValueError(f"mu={mu} sits on a case boundary ({b!r})")
    idx = int(np.searchsorted(bounds, mu))
    return CASE_LABELS[idx]


def hopf_cycle_check(mu_hopf, side, horizon=3000.0):
    """Probe for the attracting cycle born at a Hopf root.

    Integrates from the interior equilibrium plus a small offset at
    parameter mu_hopf + side.  Returns {"amplitude", "period"} when an
    attracting closed orbit is found, None when the orbit settles back
    on the equilibrium, and raises when the horizon is too short to
    decide.
    """
    mu = mu_hopf + side
    p0 = equilibria.interior_location(mu) + np.array([0.0, 0.0, 1e-3])
    report = flow.classify_omega_limit(mu, p0, horizon=horizon)
    if report.verdict == "periodic":
        return {"amplitude": report.amplitude, "period": report.period}
    if report.verdict == "equilibrium" and report.equilibrium == "O":
        return None
    raise RuntimeError(f"undetermined at mu={mu} within horizon {horizon}: "
                       f"{report}")
