#!/usr/bin/env python3
"""Tabulate the three phase-error bounds along the e_b = alpha line.

Writes the same CSV as `qkd3 fig1`; the exact bound should hug the
closed-form bound from below, with the 5*e_b line on top.
"""

import argparse
from pathlib import Path

from qkd3.cli import main as qkd3_main


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eb-max", type=float, default=0.1)
    ap.add_argument("--steps", type=int, default=101)
    ap.add_argument("--out", type=Path, default=Path("results/fig1_bounds.csv"))
    args = ap.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    qkd3_main(
        [
            "fig1",
            "--eb-max", str(args.eb_max),
            "--steps", str(args.steps),
            "--out", str(args.out),
        ]
    )
    print(f"wrote {args.out} (+ manifest)")


if __name__ == "__main__":
    main()
