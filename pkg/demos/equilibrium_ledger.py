"""Print the full equilibrium ledger for a few representative parameters.

For each mu the script lists every equilibrium that lies in the closed
cube together with its eigenvalues and local classification, then the
bifurcation events found by a scan over the whole parameter range.

Run with:  python3 demos/equilibrium_ledger.py
"""

import numpy as np

from replicube import bifurcation, equilibria


def show_ledger(mu):
    print(f"\n=== mu = {mu} (case {bifurcation.classify_case(mu)}) ===")
    for eq in equilibria.closed_form_equilibria(mu, with_eigen=True):
        loc = np.round(eq.location, 4)
        eigs = np.round(eq.eigen.eigenvalues, 3)
        print(f"  {eq.name:3s} at {loc}  eig {eigs}  {eq.eigen.classification}")


def main():
    for mu in (-20.0, -10.0, 0.0, 3.6, 9.8):
        show_ledger(mu)

    print("\n=== bifurcation scan over [-32, 10] ===")
    for ev in bifurcation.scan(-32.0, 10.0, step=0.01):
        print(f"  mu* = {ev.mu_star:12.6f}  {ev.kind:14s} {ev.equilibrium}")


if __name__ == "__main__":
    main()
