"""Invariant-manifold probes around the interior saddle-focus.

Tools to trace the unstable surface and the two stable branches of the
interior equilibrium, test heteroclinic connections between boundary
equilibria, measure how close the stable and unstable sets come to a
homoclinic configuration, and sample Poincare return maps on a plane
section.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from . import equilibria, flow
from .core import cube_jacobian

SEED_RADIUS = 1e-5


@dataclass
class ManifoldTrace:
    branch: str
    seed_offset: np.ndarray
    trajectory: flow.Trajectory = field(repr=False)
    verdict: str = "undetermined"


@dataclass
class SectionMap:
    point: np.ndarray
    normal: np.ndarray
    returns: np.ndarray         # (n, 3) section crossings, ordered in time
    times: np.ndarray

    @property
    def return_times(self):
        return np.diff(self.times)


def _interior_eigs(mu):
    o = equilibria.interior_location(mu)
    vals, vecs = np.linalg.eig(cube_jacobian(mu, o))
    return o, vals, vecs


def _saddle_focus_split(mu):
    """Unstable eigenplane and stable eigenvector of the interior point.

    Raises unless the spectrum is a complex pair with positive real part
    plus one negative real eigenvalue.
    """
    o, vals, vecs = _interior_eigs(mu)
    cidx = np.where(np.abs(vals.imag) > 1e-9)[0]
    ridx = np.where(np.abs(vals.imag) <= 1e-9)[0]
    if len(cidx) != 2 or vals[cidx[0]].real <= 0 or vals[ridx[0]].real >= 0:
        raise ValueError(f"interior point is not an unstable saddle-focus "
                         f"at mu={mu}: eigenvalues {vals}")
    vs = vecs[:, ridx[0]].real
    vs = vs / np.linalg.norm(vs)
    vc = vecs[:, cidx[0]]
    u1 = vc.real / np.linalg.norm(vc.real)
    u2 = vc.imag - (vc.imag @ u1) * u1
    u2 = u2 / np.linalg.norm(u2)
    return o, vals, vs, u1, u2


def shilnikov_condition(mu, h=1e-4):
    """Saddle-focus rates of the interior point and their ratio test.

    Writes the spectrum as lambda_u +- i*omega (unstable pair) and
    -lambda_s (stable), and checks 2*lambda_u < lambda_s, the regime in
    which a homoclinic orbit would force suspended horseshoes.  Also
    reports the parameter derivative of lambda_u/lambda_s.
    """
    o, vals, vs, u1, u2 = _saddle_focus_split(mu)
    cplx = vals[np.abs(vals.imag) > 1e-9]
    real = vals[np.abs(vals.imag) <= 1e-9]
    lam_u = float(cplx.real[0])
    omega = float(abs(cplx.imag[0]))
    lam_s = float(-real.real[0])

    def ratio(m):
        _, v, _ = _interior_eigs(m)
        c = v[np.abs(v.imag) > 1e-9]
        r = v[np.abs(v.imag) <= 1e-9]
        return float(c.real[0] / -r.real[0])

    dratio = (ratio(mu + h) - ratio(mu - h)) / (2.0 * h)
    return {
        "lambda_u": lam_u,
        "omega": omega,
        "lambda_s": lam_s,
        "ordering_ok": lam_u > 0 and omega > 0 and lam_s > 0,
        "ratio_ok": 2.0 * lam_u < lam_s,
        "dratio_dmu": dratio,
    }


def _trace_verdict(mu, traj):
    terminal = traj.final
    for eq in equilibria.closed_form_equilibria(mu):
        if eq.in_cube and np.linalg.norm(terminal - eq.location) < 1e-4:
            return f"converged-to:{eq.name}"
    return "wandering"


def trace_unstable(mu, n_seeds=8, t_end=150.0, rel_tol=1e-9, abs_tol=1e-12):
    """Forward traces seeded around the unstable set of the interior
    point.

    A complex unstable pair gets n_seeds seeds on a circle of radius
    1e-5 in its eigenplane; a real unstable eigenvalue gets the two
    offsets along its eigenvector.  A fully stable interior point has
    no unstable set and yields an empty list.
    """
    o, vals, vecs = _interior_eigs(mu)
    unstable = vals.real > 0
    if not np.any(unstable):
        return []
    traces = []
    cidx = np.where(unstable & (np.abs(vals.imag) > 1e-9))[0]
    if len(cidx):
        vc = vecs[:, cidx[0]]
        u1 = vc.real / np.linalg.norm(vc.real)
        u2 = vc.imag - (vc.imag @ u1) * u1
        u2 = u2 / np.linalg.norm(u2)
        for k, th in enumerate(np.linspace(0.0, 2.0 * np.pi, n_seeds,
                                           endpoint=False)):
            off = SEED_RADIUS * (np.cos(th) * u1 + np.sin(th) * u2)
            traj = flow.integrate(mu, o + off, t_end, rel_tol=rel_tol,
                                  abs_tol=abs_tol)
            traces.append(ManifoldTrace(f"plane-{k}", off, traj,
                                        _trace_verdict(mu, traj)))
    for i in np.where(unstable & (np.abs(vals.imag) <= 1e-9))[0]:
        v = vecs[:, i].real
        v = v / np.linalg.norm(v)
        for s in (1.0, -1.0):
            off = s * SEED_RADIUS * v
            traj = flow.integrate(mu, o + off, t_end, rel_tol=rel_tol,
                                  abs_tol=abs_tol)
            traces.append(ManifoldTrace(f"line{'+' if s > 0 else '-'}", off,
                                        traj, _trace_verdict(mu, traj)))
    return traces


def trace_stable(mu, t_end=100.0, rel_tol=1e-9, abs_tol=1e-12,
                 vertex_tol=1e-2):
    """Backward traces of the two stable branches of the interior point.

    When the interior point is a saddle-focus the branches follow its
    lone real (stable) eigenvector; when it is fully attracting they
    follow the strongest stable direction.  Each verdict names the
    vertex the branch approaches in reverse time, or 'winding' when it
    has not settled near any vertex within the horizon.
    """
    o, vals, vecs = _interior_eigs(mu)
    ridx = np.where(np.abs(vals.imag) <= 1e-9)[0]
    stable_real = [i for i in ridx if vals[i].real < 0]
    if not stable_real:
        raise ValueError(f"no real stable direction at mu={mu}")
    i = min(stable_real, key=lambda j: vals[j].real) \
        if len(stable_real) > 1 else stable_real[0]
    v = vecs[:, i].real
    v = v / np.linalg.norm(v)
    traces = []
    for s in (1.0, -1.0):
        off = s * SEED_RADIUS * v
        traj = flow.integrate(mu, o + off, -abs(t_end), rel_tol=rel_tol,
                              abs_tol=abs_tol)
        verdict = "winding"
        for name, loc in equilibria.VERTEX_LOCATIONS.items():
            if np.linalg.norm(traj.final - np.array(loc)) < vertex_tol:
                verdict = name
                break
        traces.append(ManifoldTrace(f"stable{'+' if s > 0 else '-'}", off,
                                    traj, verdict))
    return traces


def _direction_fan(vals, vecs, unstable=True):
    """All sign combinations of the selected eigendirections.

    Includes single directions and diagonals so that orbits leaving
    through any invariant sub-face or through the interior are covered.
    """
    sel = vals.real > 0 if unstable else vals.real < 0
    dirs = [vecs[:, i].real / np.linalg.norm(vecs[:, i].real)
            for i in np.where(sel & (np.abs(vals.imag) <= 1e-9))[0]]
    for i in np.where(sel & (vals.imag > 1e-9))[0]:
        vc = vecs[:, i]
        dirs.append(vc.real / np.linalg.norm(vc.real))
        u2 = vc.imag - (vc.imag @ dirs[-1]) * dirs[-1]
        dirs.append(u2 / np.linalg.norm(u2))
    fan = []
    k = len(dirs)
    if k == 0:
        return fan
    for code in range(3 ** k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append((-1, 0, 1)[c % 3])
            c //= 3
        if not any(coeffs):
            continue
        d = sum(c * v for c, v in zip(coeffs, dirs))
        n = np.linalg.norm(d)
        if n > 1e-12:
            fan.append(d / n)
    return fan


def _parse_edge(name):
    parts = name.replace("-", ":").split(":")
    if len(parts) == 2 and all(p in equilibria.VERTEX_LOCATIONS for p in parts):
        return (np.array(equilibria.VERTEX_LOCATIONS[parts[0]]),
                np.array(equilibria.VERTEX_LOCATIONS[parts[1]]))
    return None


def _segment_distance(points, a, b):
    ab = b - a
    t = np.clip((points - a) @ ab / (ab @ ab), 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(points - proj, axis=1)


def heteroclinic_probe(mu, source_name, target_name, tol_hit=1e-3,
                       t_end=100.0, rel_tol=1e-10, abs_tol=1e-14):
    """Minimum approach between the source's unstable set and the
    target's stable set.

    Shoots forward from seeds spread over the source's unstable
    directions and, symmetrically, backward from the target's stable
    directions, recording how close any probe orbit comes to the other
    end.  The source may be an equilibrium name or an edge written as
    'v5:v6'; edges are themselves orbits, so their connection is probed
    through the backward shots from the target.
    """
    edge = _parse_edge(source_name)
    if edge is None and source_name not in (
            list(equilibria.VERTEX_LOCATIONS) + ["A1", "A2", "A3", "A4",
                                                 "B1", "B2", "B3", "O"]):
        raise KeyError(f"unknown source {source_name!r}")
    target = equilibria.equilibrium_location(target_name, mu)
    if not equilibria.in_cube(target):
        raise ValueError(f"target {target_name} is formal at mu={mu}")
    best = np.inf

    def source_distance(points):
        if edge is not None:
            return _segment_distance(points, edge[0], edge[1])
        src = equilibria.equilibrium_location(source_name, mu)
        return np.linalg.norm(points - src, axis=1)

    # forward shots from the source's unstable fan
    fwd_seeds = []
    if edge is not None:
        inward = 0.5 - 0.5 * (edge[0] + edge[1])
        inward[np.abs(inward) < 0.2] = 0.0     # only leave the shared faces
        for t in (0.25, 0.5, 0.75):
            base = edge[0] + t * (edge[1] - edge[0])
            fwd_seeds.append(base + SEED_RADIUS * np.sign(inward))
    else:
        src = equilibria.equilibrium_location(source_name, mu)
        vals, vecs = np.linalg.eig(cube_jacobian(mu, src))
        for d in _direction_fan(vals, vecs, unstable=True):
            seed = src + SEED_RADIUS * d
            if equilibria.in_cube(seed, tol=0.0):
                fwd_seeds.append(seed)
    for seed in fwd_seeds:
        traj = flow.integrate(mu, seed, t_end, rel_tol=rel_tol,
                              abs_tol=abs_tol, n_samples=4001)
        best = min(best, float(np.min(
            np.linalg.norm(traj.states - target, axis=1))))

    # backward shots from the target's stable fan
    vals, vecs = np.linalg.eig(cube_jacobian(mu, target))
    for d in _direction_fan(vals, vecs, unstable=False):
        seed = target + SEED_RADIUS * d
        if not equilibria.in_cube(seed, tol=0.0):
            continue
        traj = flow.integrate(mu, seed, -t_end, rel_tol=rel_tol,
                              abs_tol=abs_tol, n_samples=4001)
        best = min(best, float(np.min(source_distance(traj.states))))

    return {"min_distance": best, "hit": bool(best < tol_hit)}


def homoclinic_proximity(mu, r_exclude=0.05, t_forward=150.0,
                         t_backward=120.0, n_seeds=12,
                         rel_tol=1e-9, abs_tol=1e-12):
    """How close the stable branches come to the unstable surface.

    Both invariant sets of the interior saddle-focus contain the
    equilibrium itself, so all distances are measured outside a ball of
    radius r_exclude around it: the unstable surface is sampled by
    forward traces from an eigenplane circle of seeds, the two stable
    branches by backward traces, and the result is the smaller of the
    two branch-to-surface minimum distances.  Values near zero flag a
    near-homoclinic configuration.
    """
    o, vals, vs, u1, u2 = _saddle_focus_split(mu)
    cloud = []
    for th in np.linspace(0.0, 2.0 * np.pi, n_seeds, endpoint=False):
        seed = o + SEED_RADIUS * (np.cos(th) * u1 + np.sin(th) * u2)
        traj = flow.integrate(mu, seed, t_forward, rel_tol=rel_tol,
                              abs_tol=abs_tol, n_samples=30001)
        cloud.append(traj.states)
    cloud = np.vstack(cloud)
    cloud = cloud[np.linalg.norm(cloud - o, axis=1) > r_exclude]
    tree = cKDTree(cloud)
    best = np.inf
    for s in (1.0, -1.0):
        traj = flow.integrate(mu, o + s * SEED_RADIUS * vs, -t_backward,
                              rel_tol=rel_tol, abs_tol=abs_tol,
                              n_samples=60001)
        pts = traj.states
        pts = pts[np.linalg.norm(pts - o, axis=1) > r_exclude]
        if len(pts):
            best = min(best, float(tree.query(pts)[0].min()))
    if not np.isfinite(best):
        raise RuntimeError(f"stable branches never left the exclusion ball "
                           f"at mu={mu}")
    return best


def poincare_map(mu, section=None, p0=None, n_returns=10, t_max=2000.0,
                 discard=0.0, rel_tol=1e-10, abs_tol=1e-13):
    """Successive same-direction crossings of a plane section.

    Crossing states are located by the integrator's event root finding,
    so they sit on the section to solver precision.  Raises when the
    horizon produces fewer than n_returns crossings after the discard
    time.
    """
    if section is None:
        section = flow.default_section(mu)
    point, normal = section
    if p0 is None:
        from .lyapunov import initial_condition
        p0 = initial_condition(mu)
    te, ye = flow.section_crossings(mu, p0, t_max, section=section,
                                   direction=1, rel_tol=rel_tol,
                                   abs_tol=abs_tol, t_min=discard)
    if len(te) < n_returns:
        raise RuntimeError(f"only {len(te)} returns within t_max={t_max}")
    te, ye = te[-n_returns:], ye[-n_returns:]
    if np.any(ye < -1e-8) or np.any(ye > 1.0 + 1e-8):
        raise flow.InvarianceError("return point outside the cube")
    return SectionMap(np.asarray(point, dtype=float),
                      np.asarray(normal, dtype=float), ye, te)
