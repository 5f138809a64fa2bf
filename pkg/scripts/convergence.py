"""Tabulate the LP optimum against the psi bound for growing n and write a CSV.

    python scripts/convergence.py --n-list 258,516,1032,2064 --out convergence.csv
"""
import argparse
import csv
from dataclasses import asdict

from syncbound.optimizer import PHI_CONSTANT, convergence_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-list", default="258,516,1032,2064")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    ns = [int(x) for x in args.n_list.split(",")]
    rows, coef = convergence_report(ns)
    limit = float(PHI_CONSTANT)
    for r in rows:
        print(f"n={r.n:5d} rho={r.rho:4d} lp/n^3={r.lp_ratio:.7f} "
              f"(limit {limit:.7f}, excess*n={(r.lp_ratio / limit - 1) * r.n:.3f}) "
              f"psi/n^3={r.psi_ratio:.7f} gap/n^2={r.gap / r.n**2:.4f}")
    print(f"7/48 + 2*ratio = {coef:.6f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(asdict(rows[0])))
            w.writeheader()
            w.writerows(asdict(r) for r in rows)


if __name__ == "__main__":
    main()
