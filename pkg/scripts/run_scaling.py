"""Finite-size scaling of dC(1)/dlambda for the transverse Ising chain (free fermions)."""

import argparse
from pathlib import Path

from entangle_kit.io import write_csv
from entangle_kit.spin_models import LOG_PREFACTOR, scaling_data, scaling_fit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="50,100,150,200,300,400")
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    sizes = [int(n) for n in args.sizes.split(",")]
    data = scaling_data(sizes, args.gamma)
    for d in data:
        print(f"N={d.N:4d}  lambda_m={d.lam_m:.6f}  depth={d.depth:.5f}  width={d.width:.5f}")
    fit = scaling_fit(sizes, [d.lam_m for d in data], [d.depth for d in data], [d.width for d in data])
    print(f"theta={fit.theta:.3f}  slope={fit.prefactor:.4f} (-{LOG_PREFACTOR:.4f})  nu={fit.nu:.3f}")
    Path(args.out).mkdir(exist_ok=True)
    write_csv(Path(args.out) / "scaling.csv", ["N", "lambda_m", "depth", "width"],
              [(d.N, d.lam_m, d.depth, d.width) for d in data])


if __name__ == "__main__":
    main()
