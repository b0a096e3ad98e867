"""Convex roofs of C and tau3 along the mixture p GHZ + (1 - p) W."""

import argparse
from pathlib import Path

import numpy as np

from entangle_kit.io import write_csv
from entangle_kit.multipartite import ghz_w_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    grid = np.round(np.arange(0, 1 + 1e-9, args.step), 6)
    rows = ghz_w_scan(grid, restarts=args.restarts)
    for r in rows:
        print(f"p={r.p:.2f}  tau1={r.tau1:.4f}  C_roof={r.C_roof:.2e}  tau3_roof={r.tau3_roof:.2e}")
    Path(args.out).mkdir(exist_ok=True)
    write_csv(Path(args.out) / "ghz_w.csv", ["p", "tau1", "C_roof", "tau3_roof"],
              [(r.p, r.tau1, r.C_roof, r.tau3_roof) for r in rows])


if __name__ == "__main__":
    main()
