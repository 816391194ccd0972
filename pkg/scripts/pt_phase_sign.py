"""Compare the two sign conventions for the PT reflection-phase relation.

For a PT-symmetric system D = T/T* = e^{2i tau}, so R^l(-k) = -e^{-2i tau} R^r(k).
The opposite exponent only holds where e^{4i tau} = 1.
"""

import argparse

import numpy as np

from scatter1d import identities as idt
from scatter1d.potential import DeltaPotential


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--a", type=float, default=1.0)
    args = ap.parse_args()

    p = DeltaPotential(((args.a, 1j * args.gamma), (-args.a, -1j * args.gamma)))
    print(f"{'k':>6s} {'tau':>8s} {'e^-2i tau':>11s} {'e^+2i tau':>11s} {'combined':>10s}")
    for k in np.linspace(0.3, 4, 12):
        rep = idt.full_report(p, float(k))
        tau = np.angle(rep.amplitudes.t_l)
        used = max(rep.residuals["pt_phase_r_l"], rep.residuals["pt_phase_r_r"])
        other = max(rep.extras["pt_phase_printed_l"], rep.extras["pt_phase_printed_r"])
        comb = max(rep.residuals["pt_combined_l"], rep.residuals["pt_combined_r"])
        print(f"{k:6.3f} {tau:8.4f} {used:11.2e} {other:11.2e} {comb:10.2e}")


if __name__ == "__main__":
    main()
