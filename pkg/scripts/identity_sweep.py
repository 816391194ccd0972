"""Sweep random potentials and report the worst residual of every identity.

Only residuals that apply to the potential class are aggregated, so the
table shows how close each relation comes to machine precision.
"""

import argparse
from collections import defaultdict

import numpy as np

from scatter1d import identities as idt
from scatter1d.potential import DeltaPotential, LayerPotential


def random_potential(rng, kind):
    n = int(rng.integers(1, 4))
    g = rng.uniform(0, 3, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    if kind == "real":
        g = g.real
    if kind == "pt":
        xs = rng.uniform(0.1, 3, n)
        return DeltaPotential(tuple(zip(xs, g)) + tuple(zip(-xs, np.conj(g))))
    if rng.uniform() < 0.5:
        return DeltaPotential(tuple(zip(rng.uniform(-3, 3, n), g)))
    edges = np.sort(rng.uniform(-3, 3, 2 * n))
    return LayerPotential(tuple((edges[2 * i], edges[2 * i + 1], g[i]) for i in range(n)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=300, help="potentials per class")
    ap.add_argument("--k-points", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    ks = np.linspace(0.2, 5, args.k_points)
    for kind in ("complex", "real", "pt"):
        worst = defaultdict(float)
        for _ in range(args.n):
            p = random_potential(rng, kind)
            for k in ks:
                rep = idt.full_report(p, float(k))
                for name, value in rep.residuals.items():
                    if rep.applicability[name] == idt.APPLIES:
                        worst[name] = max(worst[name], value)
        print(f"\n{kind} potentials ({args.n} x {len(ks)} wavenumbers)")
        for name in idt.RESIDUAL_NAMES:
            if name in worst:
                print(f"  {name:<22s} {worst[name]:.2e}")


if __name__ == "__main__":
    main()
