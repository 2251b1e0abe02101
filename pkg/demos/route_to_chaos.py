"""Walk through the qualitative regimes as mu increases.

At a handful of representative parameters the script classifies the
omega-limit set of an interior orbit and, where the interior point is a
saddle-focus, samples the Poincare return map to show how the periodic
regime gives way to chaotic wandering.

Run with:  python3 demos/route_to_chaos.py
"""

import numpy as np

from replicube import bifurcation, flow, geometry, lyapunov


def main():
    for mu in (-20.0, -17.5, -14.0, -8.5, 0.0, 3.6, 9.8):
        case = bifurcation.classify_case(mu)
        rep = flow.classify_omega_limit(mu, lyapunov.initial_condition(mu))
        line = f"mu={mu:6.1f}  case {case:5s}  omega-limit: {rep.verdict}"
        if rep.verdict == "periodic":
            line += f" (period {rep.period:.2f})"
        print(line)

    print("\nPoincare return times on the section through the interior point:")
    for mu in (-14.0, 3.6):
        try:
            smap = geometry.poincare_map(mu, n_returns=8, t_max=600.0,
                                         discard=200.0)
        except RuntimeError as exc:
            print(f"  mu={mu}: {exc}")
            continue
        rts = np.round(smap.return_times, 3)
        print(f"  mu={mu}: {rts}")


if __name__ == "__main__":
    main()
