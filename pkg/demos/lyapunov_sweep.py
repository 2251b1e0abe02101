"""Sweep the Lyapunov spectrum across the parameter range.

Produces a text table of the three exponents and the signature on a
coarse grid, then reports the sub-intervals where the top exponent is
positive and a refined estimate of the onset of chaotic behaviour.
Expect a couple of minutes of runtime; set REPLICUBE_WORKERS to use
more threads.

Run with:  python3 demos/lyapunov_sweep.py
"""

from replicube import lyapunov


def main():
    rows, intervals = lyapunov.sweep(-22.0, 10.0, 65, T=1e4)
    print(f"{'mu':>8s} {'L1':>9s} {'L2':>9s} {'L3':>9s}  signature")
    for row in rows:
        if row is None:
            continue
        l1, l2, l3 = row.exponents
        print(f"{row.mu:8.2f} {l1:9.4f} {l2:9.4f} {l3:9.4f}  {row.signature}")

    print("\nintervals with a positive top exponent:")
    for a, b in intervals:
        print(f"  [{a:.2f}, {b:.2f}]")

    est = lyapunov.estimate_mu_SA(bracket=(0.0, 3.0), tol=0.05, T=1e4)
    print(f"\nestimated onset of chaos: mu ~ {est:.2f}")


if __name__ == "__main__":
    main()
