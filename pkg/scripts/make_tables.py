#!/usr/bin/env python3
"""Regenerate the exact decomposition ledger and group potentials.

Writes one JSON document with, per qubit count: the five-row dimension
table, the string-orbit oracle values, and (through n = 3) the exact
multiplicity sum and fourth frame potential of the Clifford group.
"""

import argparse
import json
import sys

from cliffdesigns.cli import cmd_tables, RunConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    payload, ok = cmd_tables(RunConfig(command="tables", n=args.n_max))
    text = json.dumps(payload, indent=2, default=float)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
