"""Polymatrix replicator vector fields and the reduced cube family.

The general engine evolves strategy frequencies in a population split
into groups; each group's frequencies live on a probability simplex and
the product of simplices is flow-invariant.  For group sizes (2, 2, 2)
the prism of states reduces to the cube [0,1]^3 via the second
coordinate of each group, and the one-parameter family studied here has
the reduced field

    dx/dt = x(1-x)(12 - mu + (mu-14)x - 20y - 4z)
    dy/dt = y(1-y)(-10 + 20x + 4y - 4z)
    dz/dt = z(1-z)(27 - 54x + 11y - 4z)

with mu the single family parameter.
"""

import numpy as np

MU_MIN = -2938.0 / 95.0
MU_MAX = 10.0

SIMPLEX_TOL = 1e-12


class PolymatrixGame:
    """Group sizes plus a block payoff matrix.

    The payoff matrix is square with side sum(group_sizes); block
    (alpha, beta) scores how strategies of group alpha fare against the
    frequencies of group beta.
    """

    def __init__(self, group_sizes, payoff):
        group_sizes = [int(n) for n in group_sizes]
        if any(n <= 0 for n in group_sizes):
            raise ValueError("group sizes must be positive")
        payoff = np.asarray(payoff, dtype=float)
        n = sum(group_sizes)
        if payoff.shape != (n, n):
            raise ValueError(
                f"payoff matrix must be {n}x{n} for group sizes {group_sizes}, "
                f"got {payoff.shape}")
        self.group_sizes = group_sizes
        self.payoff = payoff
        # index ranges of each group
        edges = np.concatenate(([0], np.cumsum(group_sizes)))
        self.group_slices = [slice(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]

    @property
    def dim(self):
        return self.payoff.shape[0]

    def check_state(self, s, tol=SIMPLEX_TOL):
        """Raise ValueError unless s lies on the product of simplices."""
        s = np.asarray(s, dtype=float)
        if s.shape != (self.dim,):
            raise ValueError(f"state must have length {self.dim}, got {s.shape}")
        for sl in self.group_slices:
            block = s[sl]
            if block.min() < -tol or abs(block.sum() - 1.0) > tol:
                raise ValueError("state violates simplex constraints")
        return s


def build_family_matrix(mu):
    """Payoff matrix of the cube family at parameter mu.

    Rows 2, 4, 6 are identically zero (each group's second strategy is
    normalized away), and only entry (1,1) depends on mu.
    """
    p = np.zeros((6, 6))
    p[0] = [mu, 14.0, -10.0, 10.0, -2.0, 2.0]
    p[2] = [10.0, -10.0, 2.0, -2.0, -2.0, 2.0]
    p[4] = [-25.0, 29.0, 0.0, -11.0, -2.0, 2.0]
    return PolymatrixGame([2, 2, 2], p)


def general_vector_field(game, s):
    """Replicator velocity at state s of the given game.

    Component i gets x_i times the payoff advantage of strategy i over
    its group's average payoff; group sums are exactly zero, so each
    simplex is preserved.
    """
    s = game.check_state(s)
    ps = game.payoff @ s
    out = np.empty_like(s)
    for sl in game.group_slices:
        avg = float(s[sl] @ ps[sl])
        out[sl] = s[sl] * (ps[sl] - avg)
    return out


def cube_vector_field(mu, p):
    """Reduced field of the family on (x, y, z).

    Defined on all of R^3; every face {x,y,z} in {0,1} is invariant
    because the matching factor vanishes identically there.
    """
    x, y, z = p
    return np.array([
        x * (1.0 - x) * (12.0 - mu + (mu - 14.0) * x - 20.0 * y - 4.0 * z),
        y * (1.0 - y) * (-10.0 + 20.0 * x + 4.0 * y - 4.0 * z),
        z * (1.0 - z) * (27.0 - 54.0 * x + 11.0 * y - 4.0 * z),
    ])


def cube_jacobian(mu, p):
    """Analytic 3x3 Jacobian of cube_vector_field at p."""
    x, y, z = p
    g1 = 12.0 - mu + (mu - 14.0) * x - 20.0 * y - 4.0 * z
    g2 = -10.0 + 20.0 * x + 4.0 * y - 4.0 * z
    g3 = 27.0 - 54.0 * x + 11.0 * y - 4.0 * z
    return np.array([
        [(1.0 - 2.0 * x) * g1 + x * (1.0 - x) * (mu - 14.0),
         -20.0 * x * (1.0 - x), -4.0 * x * (1.0 - x)],
        [20.0 * y * (1.0 - y),
         (1.0 - 2.0 * y) * g2 + 4.0 * y * (1.0 - y), -4.0 * y * (1.0 - y)],
        [-54.0 * z * (1.0 - z), 11.0 * z * (1.0 - z),
         (1.0 - 2.0 * z) * g3 - 4.0 * z * (1.0 - z)],
    ])


def cube_divergence(mu, p):
    """Trace of the Jacobian, i.e. div of the reduced field at p."""
    return float(np.trace(cube_jacobian(mu, p)))


def embed(p):
    """Lift cube coordinates (x, y, z) to the six prism coordinates."""
    x, y, z = p
    return np.array([1.0 - x, x, 1.0 - y, y, 1.0 - z, z])


def project(s):
    """Drop a (2,2,2) prism state back to cube coordinates.

    Inverse of embed on valid states; rejects states of any other shape
    or states off the product of simplices.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (6,):
        raise ValueError("only (2,2,2) prism states project to the cube")
    for k in range(3):
        block = s[2 * k:2 * k + 2]
        if block.min() < -SIMPLEX_TOL or abs(block.sum() - 1.0) > SIMPLEX_TOL:
            raise ValueError("state violates simplex constraints")
    return np.array([s[1], s[3], s[5]])


def load_game(path):
    """Parse a game definition file into a PolymatrixGame.

    Plain-text key-value format:

        groups = [2, 2, 2]
        payoff =
        0 14 -10 10 -2 2
        0 0 0 0 0 0
        ...

    The payoff block is row-major, one matrix row per line; dimensions
    must agree with the declared group sizes.
    """
    groups = None
    rows = []
    in_payoff = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if in_payoff:
                try:
                    rows.append([float(tok) for tok in line.replace(",", " ").split()])
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad payoff row {line!r}")
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key == "groups":
                try:
                    groups = [int(tok) for tok in val.strip("[]").replace(",", " ").split()]
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad groups list {val!r}")
            elif key == "payoff":
                if val:
                    raise ValueError(f"{path}:{lineno}: payoff block starts on the next line")
                in_payoff = True
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    if groups is None:
        raise ValueError(f"{path}: missing 'groups' entry")
    if not rows:
        raise ValueError(f"{path}: missing 'payoff' block")
    n = sum(groups)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"{path}: payoff block must be {n}x{n} for groups {groups}")
    return PolymatrixGame(groups, np.array(rows))
