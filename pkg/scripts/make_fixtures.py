#!/usr/bin/env python3
"""Regenerate the versioned fixture files in fixtures/.

Every matrix fixture is validated (every square subdeterminant inside the
partial-field group) before being written.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pfkit import catalog
from pfkit.matroid import A7_GRID, A8_GRID, make_named
from pfkit.pmatrix import PFMatrix

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def dump(name, obj):
    (FIXTURES / name).write_text(
        json.dumps(obj, indent=2, sort_keys=True) + "\n")
    print("wrote", name)


def mat(pf_name, grid):
    A = PFMatrix.from_grid(catalog.make(pf_name), grid)
    assert A.det_and_validate("FullPMatrixCheck")[1], (pf_name, grid)
    return A.to_json()


def main():
    a7 = [[str(v) for v in row] for row in A7_GRID]
    a8 = [[str(v) for v in row] for row in A8_GRID]
    dump("a7_gf2.json", mat("GF(2)", a7))
    dump("a7_dyadic.json", mat("D", a7))
    dump("a8_dyadic.json", mat("D", a8))
    dump("table1_a1_golden.json", mat("G", [
        ["1", "0", "1", "1"], ["1", "1", "1/t", "t"],
        ["0", "1", "-1", "t"], ["1", "-1/t", "1/t", "0"]]))
    dump("table1_a2_k2.json", mat("K(2)", [
        ["-1", "0", "1", "1"], ["1", "-1", "0", "a"], ["0", "1", "-1", "-1"]]))
    dump("table1_a3_u1mod2.json", mat("U1mod2", [
        ["1", "0", "1", "1", "1"], ["1", "1", "0", "1", "a"],
        ["0", "1", "1", "1", "1"]]))
    dump("u25_gf5.json", mat("GF(5)", [["1", "1", "1"], ["1", "2", "3"]]))

    for q in (2, 3):
        _, A = make_named(f"Qplus({q})")
        dump(f"qplus{q}.json", A.to_json())

    for nm, fn in [("U(2,4)", "u24.json"), ("U(2,5)", "u25.json"),
                   ("P8", "p8.json"), ("F7", "f7.json"),
                   ("F7minus", "f7minus.json"), ("Vamos", "vamos.json")]:
        dump(fn, {"named": nm})

    pf35 = catalog.make("GF(3)xGF(5)")
    for i, p in enumerate(["(2,2)", "(2,3)", "(2,4)"], 1):
        A = PFMatrix.from_grid(pf35, [["1", "1"], ["1", p]])
        assert A.det_and_validate("FullPMatrixCheck")[1]
        dump(f"lift_u24_{i}.json", A.to_json())

    B = PFMatrix.from_grid(catalog.make("GF(3)xGF(3)"),
                           [["1", "1"], ["(2,2)", "1"]])
    assert B.det_and_validate("FullPMatrixCheck")[1]
    dump("diag_b_gf3.json", B.to_json())

    dump("hydra_homs.json", {
        "2": {"pf": "H2", "width": 2, "images": {"i": [2, 3]},
              "projections": 2},
        "3": {"pf": "H3", "width": 3, "images": {"a": [2, 3, 4]},
              "projections": 3},
        "4": {"pf": "H4", "width": 4,
              "images": {"a": [2, 3, 3, 4], "b": [2, 3, 4, 3]},
              "projections": 4},
        "5": {"pf": "H5", "width": 6,
              "images": {"a": [2, 3, 4, 2, 3, 4], "b": [3, 2, 3, 4, 2, 4],
                         "g": [3, 2, 3, 4, 4, 2]}, "projections": 6},
    })


if __name__ == "__main__":
    main()
