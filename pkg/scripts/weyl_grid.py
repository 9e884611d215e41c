#!/usr/bin/env python3
"""Weyl function of a relation on a grid of spectral points, as CSV.

    python3 scripts/weyl_grid.py data/halfline_embed.json \
        --grid "[-10, -1, -0.1, [0, 1], [1, 1], 2]"
    python3 scripts/weyl_grid.py data/graph_one.json \
        --triplet basic --grid "[-1, [0, 1]]" --out weyl.csv
"""

import sys

from linrel.cli import main

if __name__ == "__main__":
    sys.exit(main(["weyl", *sys.argv[1:]]))
