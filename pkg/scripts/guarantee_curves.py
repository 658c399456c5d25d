#!/usr/bin/env python3
"""Write the guarantee-curve CSV comparing scoring rules to the optimal line.

Produces guarantee_curves.csv in the working directory: for each threshold s
it lists the optimal guarantee 1-s next to the exact curves of approval
voting and the power rules, each as an exact fraction plus a 12-digit
decimal.  The single-power curve touches the optimal line at s = 1/2 and the
squared-power curve at s = 2/3.
"""

import sys

from fvr.cli import main

OUT = "guarantee_curves.csv"

if __name__ == "__main__":
    code = main(
        [
            "curve",
            "--rules",
            "approval,power:1,power:2,power:3,opt",
            "--s-grid",
            "50",
            "--out",
            OUT,
        ]
    )
    if code == 0:
        print(f"wrote {OUT}")
    sys.exit(code)
