#!/usr/bin/env python3
"""Lower bounds of the scalar extension family.

Sweeps the slope c of the one-dimensional model relation, compares the
computed lower bound of the parametrized extension against the closed
formula, and checks the sufficient condition for semiboundedness.

    python3 scripts/semibound_demo.py
    python3 scripts/semibound_demo.py --delta 0.1 --c-list "[0, 1, 2, 10]"
"""

import sys

from linrel.cli import main

if __name__ == "__main__":
    sys.exit(main(["semibound-demo", *sys.argv[1:]]))
