"""Phase diagram over (lambda_minus, lambda_plus / lambda_minus) as CSV.

    python3 scripts/phase_diagram.py --out phase.csv
"""

import argparse

from dicke_qpt.sweep import SweepConfig, emit, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--wc", type=float, default=1.0)
    ap.add_argument("--wa", type=float, default=1.0)
    ap.add_argument("--n-atoms", type=int, default=1)
    ap.add_argument("--steps", type=int, default=101)
    ap.add_argument("--out", default="phase_diagram.csv")
    args = ap.parse_args()

    cfg = SweepConfig(omega_c=args.wc, omega_a=args.wa, n_atoms=[args.n_atoms],
                      lambda_min=0.0, lambda_max=3.0, lambda_steps=args.steps,
                      ratio_min=0.0, ratio_max=1.0, ratio_steps=args.steps // 4 + 1, workers=4)
    rows = run_sweep(cfg)
    emit(rows, "csv", args.out)
    counts = {}
    for r in rows:
        counts[r.phase] = counts.get(r.phase, 0) + 1
    print(f"{len(rows)} points -> {args.out}  {counts}")


if __name__ == "__main__":
    main()
