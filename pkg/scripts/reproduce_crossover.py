"""Exact-diagonalization crossover against the mean-field critical coupling.

Scans lambda at lambda_plus = lambda_minus on resonance for several N and
prints the threshold estimate lambda* next to lambda_c.

    python3 scripts/reproduce_crossover.py --n-atoms 6 12 --nmax 100
"""

import argparse
import math

import numpy as np

from dicke_qpt import DickeParams, critical_lambda
from dicke_qpt.ed import crossover_estimate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-atoms", type=int, nargs="+", default=[6, 12])
    ap.add_argument("--nmax", type=int, default=100)
    ap.add_argument("--threshold", type=float, default=0.1)
    ap.add_argument("--step", type=float, default=0.02)
    ap.add_argument("--workers", type=int, default=4)
    args = ap.parse_args()

    grid = np.round(np.arange(0.3, 1.2 + 1e-9, args.step), 10)
    print(f"{'N':>4} {'lambda_c':>10} {'lambda*':>10} {'rel dev':>8} {'time s':>7}")
    for n in args.n_atoms:
        p = DickeParams(omega_c=1, omega_a=1, n_atoms=n)
        lam_c = critical_lambda("a4c", 1.0, p).lambda_c
        res = crossover_estimate(p, grid, threshold=args.threshold, n_max=args.nmax, ratio=1.0,
                                 workers=args.workers)
        dev = abs(res.lambda_star - lam_c) / lam_c
        print(f"{n:>4} {lam_c:>10.6f} {res.lambda_star:>10.6f} {dev:>8.2%} {res.runtime:>7.1f}")
    # large-N mean field on the same estimator: photons/N = lambda^2 (1 - (lambda_c/lambda)^4) / 2
    lam = next(x for x in np.linspace(0.7072, 3.0, 2_292_801)
               if x * x * (1 - (1 / (2 * x * x)) ** 2) / 2 >= args.threshold)
    print(f"{'inf':>4} {1 / math.sqrt(2):>10.6f} {lam:>10.6f} {abs(lam * math.sqrt(2) - 1):>8.2%}")


if __name__ == "__main__":
    main()
