#!/usr/bin/env python3
"""Full extension inventory of a relation: the lifted symmetric relation,
its adjoint, the distinguished selfadjoint extensions, boundary spaces,
and the self-check battery, as a JSON report.

    python3 scripts/extension_inventory.py data/halfline_embed.json
    python3 scripts/extension_inventory.py data/zero_operator.json --out inv.json
"""

import sys

from linrel.cli import main

if __name__ == "__main__":
    sys.exit(main(["extensions", *sys.argv[1:]]))
