"""Trajectory integration for the cube family.

Wraps an embedded Runge-Kutta 5(4) pair (Dormand-Prince, adaptive step,
dense output) around the reduced field.  The six faces of the cube are
invariant by construction: a coordinate that is exactly 0 or 1 has a
derivative computed as exactly 0.0, so face orbits stay on their face
bitwise.  Interior overshoot beyond the cube is clamped only when it is
below tol_box = 1e-9; anything larger raises, since it signals a
misconfigured integrator rather than roundoff.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import equilibria
from .core import cube_vector_field, cube_jacobian

TOL_BOX = 1e-9


class InvarianceError(RuntimeError):
    """A state left the cube by more than the clamping tolerance."""


@dataclass
class Trajectory:
    mu: float
    times: np.ndarray
    states: np.ndarray          # shape (n, 3)
    n_steps: int = 0
    max_overshoot: float = 0.0
    sol: object = field(default=None, repr=False)   # dense-output interpolant

    def __len__(self):
        return len(self.times)

    @property
    def final(self):
        return self.states[-1]

    def at(self, t):
        return np.clip(self.sol(t), 0.0, 1.0)


@dataclass
class OmegaLimitReport:
    verdict: str                # "equilibrium", "periodic", "aperiodic/undetermined"
    equilibrium: str | None = None
    period: float | None = None
    amplitude: float | None = None
    evidence: dict = field(default_factory=dict)


def _rhs(t, p, mu):
    return cube_vector_field(mu, p)


def _jac(t, p, mu):
    return cube_jacobian(mu, p)


def integrate(mu, p0, t_end, rel_tol=1e-9, abs_tol=1e-12, n_samples=2001,
              dense=True):
    """Integrate the reduced field from p0 over [0, t_end].

    Negative t_end integrates backward.  Returns a Trajectory sampled at
    n_samples equispaced times, carrying the dense interpolant.
    """
    p0 = np.asarray(p0, dtype=float)
    sol = solve_ivp(_rhs, (0.0, t_end), p0, args=(mu,), method="RK45",
                    rtol=rel_tol, atol=abs_tol, dense_output=dense)
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    ts = np.linspace(0.0, t_end, n_samples)
    states = (sol.sol(ts).T if dense else sol.y.T)
    if not dense:
        ts = sol.t
    overshoot = max(float(np.max(states) - 1.0), float(-np.min(states)), 0.0)
    if overshoot > TOL_BOX:
        raise InvarianceError(
            f"state left the cube by {overshoot:.2e} (mu={mu})")
    states = np.clip(states, 0.0, 1.0)
    # pin faces exactly: coordinates that start on a face stay there
    for k in range(3):
        if p0[k] == 0.0:
            states[:, k] = 0.0
        elif p0[k] == 1.0:
            states[:, k] = 1.0
    return Trajectory(mu, ts, states, n_steps=sol.t.size,
                      max_overshoot=overshoot, sol=sol.sol if dense else None)


def _variational_rhs(t, s, mu):
    out = np.empty(12)
    out[:3] = cube_vector_field(mu, s[:3])
    j = cube_jacobian(mu, s[:3])
    out[3:] = (j @ s[3:].reshape(3, 3)).ravel()
    return out


def integrate_with_tangents(mu, p0, frame0, t_end, renorm_dt=0.5,
                            rel_tol=1e-9, abs_tol=1e-12):
    """Base flow plus tangent frame with periodic re-orthonormalization.

    frame0 columns must be orthonormal.  Every renorm_dt the frame is
    re-orthonormalized by Gram-Schmidt and the three scaling norms are
    logged.  Returns (Trajectory, log_norms) where log_norms has one row
    of three log growth factors per renormalization step.
    """
    frame = np.asarray(frame0, dtype=float).copy()
    if np.max(np.abs(frame.T @ frame - np.eye(3))) > 1e-10:
        raise ValueError("frame0 must be orthonormal")
    p = np.asarray(p0, dtype=float).copy()
    n_chunks = int(round(abs(t_end) / renorm_dt))
    sign = 1.0 if t_end >= 0 else -1.0
    times = [0.0]
    states = [p.copy()]
    logs = []
    t = 0.0
    for _ in range(n_chunks):
        s0 = np.concatenate([p, frame.ravel()])
        sol = solve_ivp(_variational_rhs, (0.0, sign * renorm_dt), s0,
                        args=(mu,), method="RK45", rtol=rel_tol, atol=abs_tol)
        if not sol.success:
            raise RuntimeError(f"variational integration failed: {sol.message}")
        p = sol.y[:3, -1]
        frame = sol.y[3:, -1].reshape(3, 3)
        # modified Gram-Schmidt on columns
        norms = np.empty(3)
        for j in range(3):
            v = frame[:, j]
            for k in range(j):
                v = v - (v @ frame[:, k]) * frame[:, k]
            norms[j] = np.linalg.norm(v)
            frame[:, j] = v / norms[j]
        logs.append(np.log(norms))
        t += sign * renorm_dt
        times.append(t)
        states.append(p.copy())
    traj = Trajectory(mu, np.array(times), np.array(states))
    return traj, np.array(logs)


def section_crossings(mu, p0, t_end, section=None, direction=1,
                      rel_tol=1e-10, abs_tol=1e-13, t_min=0.0):
    """Times and states where an orbit crosses a plane section.

    section is (point, normal); the default is the plane
    (14-mu)x + 20y + 4z = 12-mu that carries all the non-vertex
    equilibria.  direction=+1 keeps only crossings with increasing
    signed distance, -1 decreasing, 0 both.
    """
    if section is None:
        point, normal = default_section(mu)
    else:
        point, normal = section
    point = np.asarray(point, dtype=float)
    normal = np.asarray(normal, dtype=float)

    def ev(t, p, m):
        return (np.asarray(p) - point) @ normal
    ev.direction = direction
    sol = solve_ivp(_rhs, (0.0, t_end), np.asarray(p0, dtype=float),
                    args=(mu,), method="RK45", rtol=rel_tol, atol=abs_tol,
                    events=ev, max_step=0.5)
    te = sol.t_events[0]
    ye = sol.y_events[0]
    keep = np.abs(te) > abs(t_min)
    return te[keep], ye[keep]


def default_section(mu):
    """Default Poincare section: the plane through O carrying the edge
    and face equilibria, with unit normal."""
    n = np.array([14.0 - mu, 20.0, 4.0])
    return equilibria.interior_location(mu), n / np.linalg.norm(n)


def classify_omega_limit(mu, p0, horizon=500.0, rel_tol=1e-9, abs_tol=1e-12):
    """Decide what the forward orbit of p0 accumulates on.

    equilibrium: terminal state within 1e-6 of a known rest point;
    periodic: return times to the default section stabilize (variance of
    the last five below 1e-4 of their mean); otherwise
    aperiodic/undetermined.
    """
    traj = integrate(mu, p0, horizon, rel_tol=rel_tol, abs_tol=abs_tol)
    terminal = traj.final
    for eq in equilibria.closed_form_equilibria(mu):
        if eq.in_cube and np.linalg.norm(terminal - eq.location) < 1e-6:
            return OmegaLimitReport("equilibrium", equilibrium=eq.name,
                                    evidence={"distance": float(
                                        np.linalg.norm(terminal - eq.location))})
    # look at late-time section returns
    te, ye = section_crossings(mu, traj.at(horizon * 0.5), horizon * 0.5,
                               direction=1, rel_tol=rel_tol, abs_tol=abs_tol)
    if len(te) >= 6:
        rts = np.diff(te)[-5:]
        rel_var = float(np.var(rts) / np.mean(rts) ** 2)
        if rel_var < 1e-4:
            pts = ye[-5:]
            o = equilibria.interior_location(mu)
            amp = float(np.max(np.linalg.norm(pts - o, axis=1)))
            return OmegaLimitReport("periodic", period=float(np.mean(rts)),
                                    amplitude=amp,
                                    evidence={"return_time_rel_var": rel_var,
                                              "n_returns": len(te)})
        return OmegaLimitReport("aperiodic/undetermined",
                                evidence={"return_time_rel_var": rel_var,
                                          "n_returns": len(te)})
    return OmegaLimitReport("aperiodic/undetermined",
                            evidence={"n_returns": len(te)})
