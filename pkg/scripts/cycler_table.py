#!/usr/bin/env python3
"""Deviation table for basis-cycler eigenstates tensored with the magic state.

Reproduces, per qubit count n, the common value of -epsilon(psi_n x psi_T)
over the whole cycler spectrum together with the eigenstate l4-norm.
n = 8 (dimension 256) takes a few tens of seconds and is off by default.
"""

import argparse
import json
import sys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 4])
    args = ap.parse_args()
    from cliffdesigns.fiducial import singer_epsilon_table

    rows = singer_epsilon_table(tuple(args.n), spread_atol=1e-8)
    for row in rows:
        row["minus_epsilon"] = -row.pop("epsilon")
    print(json.dumps({"rows": rows}, indent=2, default=float))
    return 0


if __name__ == "__main__":
    sys.exit(main())
