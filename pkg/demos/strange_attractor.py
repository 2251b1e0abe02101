"""Portrait of the chaotic regime at mu = 3.6.

Integrates a long orbit from the standard perturbed start, prints the
Lyapunov spectrum, the saddle-focus eigenvalue report of the interior
equilibrium, and the measured proximity between its stable and unstable
manifolds.  If matplotlib is available the orbit is also saved as a 3d
scatter plot next to this script.

Run with:  python3 demos/strange_attractor.py
"""

import numpy as np

from replicube import flow, geometry, lyapunov


def main():
    mu = 3.6
    spec = lyapunov.spectrum(mu)
    print(f"Lyapunov spectrum at mu={mu}: {np.round(spec.exponents, 4)}"
          f"  signature {spec.signature}")

    rep = geometry.shilnikov_condition(mu)
    print(f"saddle-focus rates: lambda_u={rep['lambda_u']:.4f}, "
          f"omega={rep['omega']:.4f}, lambda_s={rep['lambda_s']:.4f}, "
          f"2*lambda_u < lambda_s: {rep['ratio_ok']}")

    prox = geometry.homoclinic_proximity(mu)
    print(f"stable/unstable manifold proximity: {prox:.5f}")

    traj = flow.integrate(mu, lyapunov.initial_condition(mu), 2000.0,
                          n_samples=200001)
    pts = traj.states[50000:]
    print(f"orbit bounding box: {np.round(pts.min(axis=0), 3)} to "
          f"{np.round(pts.max(axis=0), 3)}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available, skipping the plot")
        return
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d")
    ax.plot(pts[:, 0], pts[:, 1], pts[:, 2], lw=0.2)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    fig.savefig("demos/strange_attractor.png", dpi=150)
    print("wrote demos/strange_attractor.png")


if __name__ == "__main__":
    main()
