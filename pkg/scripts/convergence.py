"""RK4 transfer-matrix error and Wronskian drift against step size for a lossy layer."""

import argparse

import numpy as np

from scatter1d import transfer as tr
from scatter1d.potential import GridPotential


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v", type=complex, default=2 - 1j)
    ap.add_argument("--width", type=float, default=1.5)
    ap.add_argument("--k", type=float, default=1.7)
    args = ap.parse_args()

    ref = tr.transfer_layer(args.v, 0.0, args.width, args.k)
    grid = GridPotential(0.0, args.width, (args.v, args.v))
    print(f"{'h':>8s} {'max error':>11s} {'order':>6s} {'W drift':>10s}")
    prev = None
    for h in 0.1 / 2.0 ** np.arange(6):
        cfg = tr.IntegratorConfig(h=h)
        err = float(np.max(np.abs(tr.transfer_numeric(grid, args.k, cfg).array - ref.array)))
        w = [x[1] for x in tr.wronskian_profile(grid, args.k, cfg)]
        drift = max(abs(wi - w[0]) for wi in w) / abs(w[0])
        order = f"{np.log2(prev / err):6.2f}" if prev else " " * 6
        print(f"{h:8.5f} {err:11.3e} {order} {drift:10.2e}")
        prev = err


if __name__ == "__main__":
    main()
