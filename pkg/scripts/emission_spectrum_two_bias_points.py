#!/usr/bin/env python3
"""Emission spectra at the two operating bias points.

Writes spectrum tables for the low-bias point (emission fed only through
the dressed ground state) and the high-bias point (direct polariton
injection open), at the reference parameter set eta = 0.1,
gamma = 0.5e-6, gamma_cav = 7e-4.  Plot omega against S on a log scale
to see the central line and the two polariton satellites.
"""

import argparse
from pathlib import Path

from electrolum.cli import run_spectrum, validate_config


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/spectra", help="output directory")
    parser.add_argument("--eta", type=float, default=0.1)
    parser.add_argument("--points", type=int, default=4001)
    args = parser.parse_args()

    for tag, mode in (("low_bias", "omega_G"), ("high_bias", "omega_G_plus_omega_plus")):
        config = validate_config({
            "eta": args.eta,
            "mu_mode": mode,
            "grid": {"min": 0.5, "max": 1.5, "points": args.points},
            "outputs": {"spectrum": f"spectrum_{tag}.csv"},
        })
        path = run_spectrum(config, Path(args.out))
        print(path)


if __name__ == "__main__":
    main()
