#!/usr/bin/env python3
"""Universal partial-field report for the fixture matroids.

For each matroid: presentation size, representability, cross-ratio set, and
representation counts over small finite fields.
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pfkit import catalog
from pfkit.matroid import make_named
from pfkit.universal import (UniversalError, bracket_presentation,
                             count_representations, universal_pf)

NAMES = ["U(2,4)", "U(2,5)", "F7", "F7minus", "P8", "Vamos"]
FIELDS = ["GF(2)", "GF(3)", "GF(4)", "GF(5)"]


def main():
    for name in NAMES:
        M, _ = make_named(name)
        t0 = time.time()
        pres = bracket_presentation(M)
        line = [f"{name:9s} symbols={len(pres.free_symbols)}"]
        if pres.trivial():
            line.append("NOT representable")
        else:
            upf = universal_pf(M)
            ratios = sorted(upf.ring.show(c) for c in upf.cross_ratios)
            line.append(f"crat={{{', '.join(ratios)}}}")
            counts = []
            for f in FIELDS:
                n = count_representations(M, catalog.make(f))
                counts.append(f"{f}:{n}")
            line.append(" ".join(counts))
        line.append(f"({time.time() - t0:.1f}s)")
        print("  ".join(line))


if __name__ == "__main__":
    main()
