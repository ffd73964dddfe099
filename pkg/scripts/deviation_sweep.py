#!/usr/bin/env python3
"""Sweep the acceleration and record how far the averaged accelerated decay
rate departs from the resting-clock rate.

Writes the same CSV the command line tool produces, e.g.

    python scripts/deviation_sweep.py --points 20 --out deviation.csv

Points whose averaging window touches the horizon bound alpha*l >= 2 come out
as error rows; with l = 1 that starts at alpha ~ 1.905.
"""

import argparse
import sys

from cavityclock.cli import main as cli_main


def run(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--l", type=float, default=1.0)
    ap.add_argument("--mass", type=float, default=1.0)
    ap.add_argument("--alpha-min", type=float, default=0.02)
    ap.add_argument("--alpha-max", type=float, default=2.0)
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--out", type=str, default="stdout")
    args = ap.parse_args(argv)

    sweep = f"alpha:{args.alpha_min}:{args.alpha_max}:{args.points}:log"
    return cli_main(["deviation", "--l", str(args.l), "--mass", str(args.mass),
                     "--alpha", str(args.alpha_min), "--sweep", sweep,
                     "--output", args.out])


if __name__ == "__main__":
    sys.exit(run())
