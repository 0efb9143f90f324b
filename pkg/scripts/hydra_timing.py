#!/usr/bin/env python3
"""Run the hydra degeneracy checks for k = 2..5 and report wall time."""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pfkit.confine import hydra_degeneracy_check


def main():
    for k in (2, 3, 4, 5):
        t0 = time.time()
        ok = hydra_degeneracy_check(k)
        print(f"k={k}: {'pass' if ok else 'FAIL'} ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
