"""Equilibrium ledger of the cube family.

Closed forms for every rest point of the reduced field: the eight cube
vertices, four edge equilibria A1..A4, three face equilibria B1..B3 and
the interior point O.  Each A/B point exists inside the cube only on a
parameter interval; outside it the same formula gives a formal
equilibrium that is still tracked (flagged in_cube=False) because the
bifurcation scanner needs it.

A multistart Newton finder provides an independent numeric check, and
closed-form eigenvalue formulas for every named boundary equilibrium
serve as oracles for the Jacobian spectrum.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import fsolve

from .core import MU_MIN, MU_MAX, cube_vector_field, cube_jacobian

VERTEX_LOCATIONS = {
    "v1": (0.0, 0.0, 0.0),
    "v2": (0.0, 0.0, 1.0),
    "v3": (0.0, 1.0, 0.0),
    "v4": (0.0, 1.0, 1.0),
    "v5": (1.0, 0.0, 0.0),
    "v6": (1.0, 0.0, 1.0),
    "v7": (1.0, 1.0, 0.0),
    "v8": (1.0, 1.0, 1.0),
}

# existence interval of each non-vertex boundary equilibrium inside the
# cube, plus the equilibrium it collides with at the finite endpoint
EXISTENCE = {
    "A1": ((MU_MIN, -12.0), "v4"),
    "A2": ((MU_MIN, 8.0), "v2"),
    "A3": ((MU_MIN, MU_MAX), None),
    "A4": ((MU_MIN, -8.0), "v3"),
    "B1": ((110.0 / 31.0, MU_MAX), "A2"),
    "B2": ((MU_MIN, -6.0), "A2"),
    "B3": ((-122.0 / 7.0, MU_MAX), "A4"),
}

RESIDUAL_TOL = 1e-10


@dataclass
class EigenData:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    classification: str


@dataclass
class Equilibrium:
    name: str
    mu: float
    location: np.ndarray
    in_cube: bool
    stratum: str
    eigen: EigenData | None = field(default=None, repr=False)


def interior_location(mu):
    """The unique interior equilibrium O as a function of mu."""
    d = 7.0 * mu - 2014.0
    return np.array([
        (7.0 * mu - 1042.0) / d,
        37.0 * (mu - 10.0) / d,
        109.0 * (mu - 10.0) / (2.0 * d),
    ])


def equilibrium_location(name, mu):
    """Closed-form location of a named equilibrium at parameter mu."""
    if name in VERTEX_LOCATIONS:
        return np.array(VERTEX_LOCATIONS[name])
    if name == "O":
        return interior_location(mu)
    m = mu
    if name == "A1":
        return np.array([(m + 12.0) / (m - 14.0), 1.0, 1.0])
    if name == "A2":
        return np.array([(8.0 - m) / (14.0 - m), 0.0, 1.0])
    if name == "A3":
        return np.array([(12.0 - m) / (14.0 - m), 0.0, 0.0])
    if name == "A4":
        return np.array([(8.0 + m) / (m - 14.0), 1.0, 0.0])
    if name == "B1":
        return np.array([(15.0 + m) / (40.0 + m), 0.0,
                         27.0 * (10.0 - m) / (4.0 * (40.0 + m))])
    if name == "B2":
        return np.array([(62.0 + m) / (86.0 + m),
                         -3.0 * (6.0 + m) / (2.0 * (86.0 + m)), 1.0])
    if name == "B3":
        return np.array([(38.0 + m) / (86.0 + m),
                         5.0 * (10.0 - m) / (2.0 * (86.0 + m)), 0.0])
    raise KeyError(f"unknown equilibrium {name!r}")


def _stratum(name):
    if name.startswith("v"):
        return "vertex"
    if name.startswith("A"):
        return "edge"
    if name.startswith("B"):
        return "face"
    return "interior"


def in_cube(p, tol=1e-12):
    p = np.asarray(p)
    return bool(np.all(p >= -tol) and np.all(p <= 1.0 + tol))


def closed_form_equilibria(mu, with_eigen=False):
    """All sixteen tracked equilibria at parameter mu.

    Formal equilibria (outside the cube) are included with
    in_cube=False.  Order: v1..v8, A1..A4, B1..B3, O.
    """
    out = []
    names = list(VERTEX_LOCATIONS) + ["A1", "A2", "A3", "A4", "B1", "B2", "B3", "O"]
    for name in names:
        loc = equilibrium_location(name, mu)
        eq = Equilibrium(name, mu, loc, in_cube(loc), _stratum(name))
        if with_eigen:
            eq.eigen = eigen_analysis(mu, loc)
        out.append(eq)
    return out


def existence_interval(name):
    """Open-at-collision parameter interval of an A/B equilibrium.

    Returns (interval, partner) where partner is the equilibrium it
    merges with at the finite endpoint, or None.
    """
    if name not in EXISTENCE:
        raise KeyError(f"no existence interval for {name!r}")
    return EXISTENCE[name]


def plane_residual(mu, p):
    """Signed residual of the invariant-organizing plane.

    All of A1..A4, B1..B3 and O lie on (14-mu)x + 20y + 4z = 12 - mu.
    """
    x, y, z = p
    return (14.0 - mu) * x + 20.0 * y + 4.0 * z - (12.0 - mu)


def numeric_equilibria(mu, grid_density=6):
    """Newton multistart over a uniform cube grid.

    Every returned point has field residual below 1e-10; points closer
    than 1e-6 are merged.  Failures of individual seeds are dropped.
    """
    if grid_density < 2:
        raise ValueError("grid_density must be at least 2")
    grid = np.linspace(0.0, 1.0, grid_density)
    found = []
    for x0 in grid:
        for y0 in grid:
            for z0 in grid:
                sol, info, ier, _ = fsolve(
                    lambda p: cube_vector_field(mu, p), (x0, y0, z0),
                    fprime=lambda p: cube_jacobian(mu, p),
                    full_output=True, xtol=1e-13)
                if ier != 1:
                    continue
                if np.max(np.abs(cube_vector_field(mu, sol))) >= RESIDUAL_TOL:
                    continue
                if not in_cube(sol, tol=1e-9):
                    continue
                if all(np.linalg.norm(sol - q) > 1e-6 for q in found):
                    found.append(sol)
    return found


def vertex_eigenvalues(name, mu):
    """Real eigenvalue triple of a cube vertex."""
    table = {
        "v1": (-10.0, 27.0, 12.0 - mu),
        "v2": (-23.0, -14.0, 8.0 - mu),
        "v3": (6.0, 38.0, -8.0 - mu),
        "v4": (-34.0, 10.0, -12.0 - mu),
        "v5": (-27.0, 2.0, 10.0),
        "v6": (6.0, 6.0, 31.0),
        "v7": (-14.0, -16.0, 22.0),
        "v8": (-10.0, 20.0, 26.0),
    }
    return np.array(table[name], dtype=complex)


def _edge_eigenvalues(name, m):
    if name == "A1":
        return [10.0 * (m + 38.0) / (14.0 - m),
                4.0 * (5.0 * m + 281.0) / (m - 14.0),
                -26.0 * (m * m - 2.0 * m - 168.0) / (m - 14.0) ** 2]
    if name == "A2":
        return [6.0 * (m + 6.0) / (m - 14.0),
                (31.0 * m - 110.0) / (m - 14.0),
                -6.0 * (m * m - 22.0 * m + 112.0) / (m - 14.0) ** 2]
    if name == "A3":
        return [27.0 * (m - 10.0) / (14.0 - m),
                10.0 * (m - 10.0) / (m - 14.0),
                -2.0 * (m * m - 26.0 * m + 168.0) / (m - 14.0) ** 2]
    if name == "A4":
        return [4.0 * (4.0 * m + 241.0) / (14.0 - m),
                2.0 * (7.0 * m + 122.0) / (14.0 - m),
                -22.0 * (m * m - 6.0 * m - 112.0) / (m - 14.0) ** 2]
    raise KeyError(name)


def face_radicand(name, m):
    """Discriminant-like quartic under the square root of the in-face
    eigenvalue pair of B1/B2/B3.  Negative radicand means the pair is
    complex conjugate."""
    if name == "B1":
        return (-7052310000.0 + 1872624000.0 * m + 179361400.0 * m ** 2
                - 34941760.0 * m ** 3 + 543169.0 * m ** 4)
    if name == "B2":
        return 9.0 * (259862416.0 + 40284768.0 * m + 1909912.0 * m ** 2
                      + 31704.0 * m ** 3 + 169.0 * m ** 4)
    if name == "B3":
        return (-3449723504.0 - 16764064.0 * m + 27270168.0 * m ** 2
                + 906392.0 * m ** 3 + 6889.0 * m ** 4)
    raise KeyError(name)


def _face_eigenvalues(name, m):
    # transverse eigenvalue plus the in-face pair (p +- sqrt(rad)) / den;
    # when the radicand is negative the pair is complex conjugate
    if name == "B1":
        t = 37.0 * (m - 10.0) / (m + 40.0)
        p = 8700.0 - 11240.0 * m + 937.0 * m ** 2
        den = 8.0 * (m + 40.0) ** 2
    elif name == "B2":
        t = (95.0 * m + 2938.0) / (2.0 * (m + 86.0))
        p = 3.0 * (-8084.0 + 164.0 * m + 3.0 * m ** 2)
        den = 2.0 * (m + 86.0) ** 2
    elif name == "B3":
        t = 109.0 * (10.0 - m) / (2.0 * (m + 86.0))
        p = -19436.0 + 892.0 * m + 13.0 * m ** 2
        den = 2.0 * (m + 86.0) ** 2
    else:
        raise KeyError(name)
    s = np.sqrt(complex(face_radicand(name, m)))
    return [t, (p + s) / den, (p - s) / den]


_POLES = {"A1": 14.0, "A2": 14.0, "A3": 14.0, "A4": 14.0,
          "B1": -40.0, "B2": -86.0, "B3": -86.0}


def closed_form_eigenvalues(name, mu):
    """Eigenvalue triple of a named boundary equilibrium, sorted by
    descending real part (ties by ascending imaginary part)."""
    if name in VERTEX_LOCATIONS:
        vals = vertex_eigenvalues(name, mu)
    elif name in ("A1", "A2", "A3", "A4"):
        if abs(mu - _POLES[name]) < 1e-12:
            raise ValueError(f"{name} eigenvalues undefined at mu={mu}")
        vals = np.array(_edge_eigenvalues(name, mu), dtype=complex)
    elif name in ("B1", "B2", "B3"):
        if abs(mu - _POLES[name]) < 1e-12:
            raise ValueError(f"{name} eigenvalues undefined at mu={mu}")
        vals = np.array(_face_eigenvalues(name, mu), dtype=complex)
    else:
        raise KeyError(f"no closed-form eigenvalues for {name!r}")
    return sort_eigenvalues(vals)


def sort_eigenvalues(vals):
    vals = np.asarray(vals, dtype=complex)
    order = np.lexsort((vals.imag, -vals.real))
    return vals[order]


def classify_spectrum(vals, hyper_tol=1e-10):
    """Stability label from an eigenvalue triple."""
    vals = np.asarray(vals, dtype=complex)
    if np.any(np.abs(vals.real) < hyper_tol):
        return "nonhyperbolic"
    cplx = np.abs(vals.imag) > hyper_tol
    npos = int(np.sum(vals.real > 0))
    if not np.any(cplx):
        if npos == 0:
            return "stable node"
        if npos == 3:
            return "unstable node"
        return "saddle"
    if npos == 0:
        return "stable focus-node"
    if npos == 3:
        return "unstable focus"
    return "saddle-focus"


def eigen_analysis(mu, p, residual_tol=1e-8):
    """Numeric eigen-structure of the Jacobian at an equilibrium p.

    Raises ValueError if p is not actually a rest point; near-degenerate
    complex/real transitions are labelled nonhyperbolic.
    """
    p = np.asarray(p, dtype=float)
    res = np.max(np.abs(cube_vector_field(mu, p)))
    if res >= residual_tol:
        raise ValueError(f"not an equilibrium: residual {res:.2e}")
    vals, vecs = np.linalg.eig(cube_jacobian(mu, p))
    order = np.lexsort((vals.imag, -vals.real))
    vals = vals[order]
    vecs = vecs[:, order]
    label = classify_spectrum(vals)
    # guard against spurious focus/node flips right at a transition:
    # a complex pair with nearly vanishing imaginary part, or two real
    # eigenvalues nearly colliding, counts as nonhyperbolic
    if label != "nonhyperbolic":
        gaps = [abs(vals[i] - vals[j]) for i in range(3) for j in range(i)]
        if min(gaps) < 1e-5 and np.all(np.abs(vals.imag) < 1e-5):
            label = "nonhyperbolic"
    return EigenData(vals, vecs, label)
