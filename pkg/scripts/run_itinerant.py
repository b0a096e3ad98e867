"""Fermi-gas entanglement distance, eta pairing, Hubbard local entropy and XX-ring fillings."""

import argparse
from pathlib import Path

import numpy as np

from entangle_kit.io import write_csv
from entangle_kit.itinerant import (
    entanglement_distance,
    eta_pairing,
    extended_hubbard_scan,
    tight_binding_halffilling_check,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=int, default=6)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(exist_ok=True)

    for d in (2, 3):
        print(f"d={d}: d0 kf/pi = {entanglement_distance(d):.4f}")
    for L in (4, 16, 64, 256):
        print(f"L={L}: C_R L at half filling = {eta_pairing(L, L // 2).C_rescaled * L:.4f}")

    us, vs = np.arange(-8, 8.5, 1.0), np.arange(0, 4.5, 1.0)
    surface = extended_hubbard_scan(us, vs, L=args.L)
    write_csv(out / "hubbard_entropy.csv", ["U", "V", "S"],
              [(u, v, surface[a, b]) for a, u in enumerate(us) for b, v in enumerate(vs)])

    rows = tight_binding_halffilling_check(24, [k / 24 for k in range(25)])
    write_csv(out / "xx_filling.csv", ["n", "C1"], [(r.n, r.C1) for r in rows])
    print(f"filling with the largest C(1): n = {max(rows, key=lambda r: r.C1).n}")


if __name__ == "__main__":
    main()
