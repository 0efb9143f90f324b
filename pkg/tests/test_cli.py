import json
import io
import os
import subprocess
import sys

import pytest

from pfkit.cli import run, homgraph_dot

FIX = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fx(name):
    return os.path.join(FIX, name)


def capture(argv):
    buf = io.StringIO()
    code = run(argv, out=buf)
    return code, buf.getvalue()


class TestPfVerbs:
    def test_list(self):
        code, out = capture(["pf", "list"])
        assert code == 0
        assert "D" in out.splitlines() and "GF(q)" in out.splitlines()

    def test_fun_dyadic(self):
        code, out = capture(["pf", "fun", "D"])
        assert code == 0
        assert out.strip() == "fun(D) = {-1, 0, 1, 1/2, 2}"

    def test_assoc(self):
        code, out = capture(["pf", "assoc", "D", "2"])
        assert code == 0
        assert "{-1, 1/2, 2}" in out

    def test_hom_found_and_missing(self):
        code, out = capture(["pf", "hom", "D", "GF(3)"])
        assert code == 0
        code, out = capture(["pf", "hom", "S", "GF(5)"])
        assert code == 1
        assert "no homomorphism" in out

    def test_product(self):
        code, out = capture(["pf", "product", "GF(3)", "GF(5)"])
        assert code == 0
        assert out.splitlines()[0] == "GF(3)xGF(5)"

    def test_sub_not_induced(self):
        # squares of GF(5): {1,4} misses fundamental structure of the host
        code, out = capture(["pf", "sub", "GF(5)", "4"])
        assert code == 1
        assert "not induced" in out


class TestMatVerbs:
    def test_check(self):
        code, out = capture(["mat", "check", fx("table1_a1_golden.json")])
        assert code == 0
        assert "yes" in out

    def test_det(self):
        code, out = capture(["mat", "det", fx("table1_a1_golden.json")])
        assert code == 0
        assert out.strip() == "det = 1"

    def test_crat(self):
        code, out = capture(["mat", "crat", fx("a8_dyadic.json")])
        assert code == 0
        assert "2" in out and "1/2" in out

    def test_pivot_and_normalize(self):
        code, _ = capture(["mat", "pivot", fx("a8_dyadic.json"), "x1", "y2"])
        assert code == 0
        code, _ = capture(["mat", "normalize", fx("table1_a2_k2.json")])
        assert code == 0

    def test_lambda(self):
        code, out = capture(["mat", "lambda", fx("a8_dyadic.json"),
                             "--set", "x1,y2"])
        assert code == 0
        assert out.strip() == "lambda = 2"

    def test_contains_negative(self):
        code, out = capture(["mat", "contains", fx("a8_dyadic.json"),
                             fx("a7_dyadic.json")])
        assert code == 1

    def test_bad_file_is_error(self):
        code, _ = capture(["mat", "det", fx("no_such_file.json")])
        assert code == 2


class TestMatroidVerbs:
    def test_bases_and_check(self):
        code, out = capture(["matroid", "bases", fx("u24.json")])
        assert code == 0
        assert "6 bases" in out
        code, _ = capture(["matroid", "check", fx("u24.json")])
        assert code == 0

    def test_minor_dual_conn(self):
        code, out = capture(["matroid", "minor", fx("p8.json"),
                             "--contract", "x1", "--delete", "y1"])
        assert code == 0 and "rank 3" in out
        code, out = capture(["matroid", "dual", fx("u24.json")])
        assert code == 0 and "rank 2" in out
        code, _ = capture(["matroid", "conn", fx("p8.json")])
        assert code == 0

    def test_iso(self):
        code, _ = capture(["matroid", "iso", fx("u24.json"), fx("u24.json")])
        assert code == 0
        code, out = capture(["matroid", "iso", fx("u24.json"), fx("u25.json")])
        assert code == 1

    def test_named(self):
        code, out = capture(["matroid", "named", "F7"])
        assert code == 0
        assert "rank 3" in out


class TestUniversalVerbs:
    def test_count(self):
        code, out = capture(["universal", "count", fx("u25.json"),
                             "--pf", "GF(5)"])
        assert code == 0
        assert out.strip() == "6"

    def test_representable_negative(self):
        code, out = capture(["universal", "representable", fx("vamos.json")])
        assert code == 1
        assert "not representable" in out

    def test_present(self):
        code, out = capture(["universal", "present", fx("u24.json")])
        assert code == 0
        assert "free symbols" in out

    def test_verify(self):
        code, _ = capture([
            "universal", "verify", fx("p8.json"), "--target", "D",
            "--assign", "a_x1_y4=2,a_x3_y1=1,a_x3_y2=1,a_x4_y1=2,a_x4_y2=1",
            "--basis", "x1,x2,x3,x4",
            "--tree", "x1:y2,x1:y3,x2:y1,x2:y3,x2:y4,x3:y4,x4:y3"])
        assert code == 0

    def test_settles(self):
        code, _ = capture(["universal", "settles", fx("u24.json"), fx("p8.json"),
                           "--contract", "x1,x2", "--delete", "x3,x4"])
        assert code == 0
        code, _ = capture(["universal", "settles", fx("u24.json"), fx("u25.json"),
                           "--delete", "e5"])
        assert code == 1


class TestConfineVerbs:
    def test_direct_confined(self):
        code, out = capture(["confine", "direct", fx("diag_b_gf3.json"),
                             fx("u24.json"), "--pf", "GF(3)xGF(3)",
                             "--sub", "diag"])
        assert code == 0
        assert "confined" in out

    def test_theorem_not_confined(self):
        code, out = capture(["confine", "theorem", fx("u24.json"),
                             fx("u25.json"), "--pf", "GF(5)xGF(5)",
                             "--sub", "diag"])
        assert code == 1
        assert "counterexample" in out

    def test_stabilizer(self):
        code, _ = capture(["stabilizer", fx("u24.json"), fx("u25.json"),
                           "--pf", "GF(5)"])
        assert code == 1

    def test_lift_build(self):
        code, out = capture(["lift", "build", fx("lift_u24_*.json"),
                             "--pf", "GF(3)xGF(5)"])
        assert code == 0
        assert "t0 = (2,2)  (normal form 2)" in out
        assert "projection verified: yes" in out

    def test_hydra(self):
        code, _ = capture(["hydra", "check", "--k", "2"])
        assert code == 0


class TestClassify:
    def test_table(self):
        code, out = capture(["classify-associates"])
        assert code == 0
        assert out.splitlines()[0] == "52 classes"


class TestHomgraph:
    def test_dot_properties(self):
        dot = homgraph_dot(prime_bound=11)
        lines = dot.splitlines()
        nodes = [ln.split('"')[1] for ln in lines if '"' in ln and "->" not in ln]
        edges = {(ln.split('"')[1], ln.split('"')[3])
                 for ln in lines if "->" in ln}
        # the regular partial field maps into everything
        for n in nodes:
            if n != "U0":
                assert ("U0", n) in edges
        # dyadic: all odd primes, never characteristic two
        for p in (3, 5, 7, 11):
            assert ("D", f"GF({p})") in edges
        assert ("D", "GF(2)") not in edges
        # golden ratio: GF(5) and primes = +-1 mod 5
        assert ("G", "GF(5)") in edges and ("G", "GF(11)") in edges
        assert ("G", "GF(7)") not in edges and ("G", "GF(3)") not in edges

    def test_deterministic(self):
        a = homgraph_dot(["U0", "D", "GF(3)"], prime_bound=3)
        b = homgraph_dot(["U0", "D", "GF(3)"], prime_bound=3)
        assert a == b


class TestJsonMode:
    def test_roundtrip(self):
        code, out = capture(["--json", "pf", "fun", "D"])
        assert code == 0
        data = json.loads(out)
        assert data["fun"] == ["-1", "0", "1", "1/2", "2"]

    def test_matrix_roundtrip(self):
        code, out = capture(["--json", "mat", "normalize", fx("a8_dyadic.json")])
        assert code == 0
        data = json.loads(out)
        from pfkit.pmatrix import PFMatrix
        A = PFMatrix.from_json(data["matrix"])
        assert A.to_json() == data["matrix"]

    def test_byte_identical(self):
        a = capture(["--json", "matroid", "named", "P8"])
        b = capture(["--json", "matroid", "named", "P8"])
        assert a == b


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run([sys.executable, "-m", "pfkit", "pf", "fun", "U0"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "fun(U0) = {0, 1}" in proc.stdout

    def test_unknown_verb(self):
        assert run(["nonsense"]) == 2


class TestFixtures:
    def test_fixture_matrices_are_pf_matrices(self):
        from pfkit.pmatrix import PFMatrix
        for name in ("a7_gf2.json", "a7_dyadic.json", "a8_dyadic.json",
                     "table1_a1_golden.json", "table1_a2_k2.json",
                     "table1_a3_u1mod2.json", "u25_gf5.json",
                     "qplus2.json", "qplus3.json", "diag_b_gf3.json",
                     "lift_u24_1.json", "lift_u24_2.json", "lift_u24_3.json"):
            with open(fx(name)) as fh:
                A = PFMatrix.from_json(json.load(fh))
            assert A.det_and_validate("FullPMatrixCheck")[1], name

    def test_fixture_matroids(self):
        from pfkit.matroid import Matroid
        for name in ("u24.json", "u25.json", "p8.json", "f7.json",
                     "f7minus.json", "vamos.json"):
            with open(fx(name)) as fh:
                M = Matroid.from_json(json.load(fh))
            assert M.check_bases()

    def test_hydra_fixture_matches_catalog(self):
        from pfkit import catalog
        with open(fx("hydra_homs.json")) as fh:
            data = json.load(fh)
        for k_str, rec in data.items():
            src, hom, required = catalog.hydra_data(int(k_str))
            assert src.name == rec["pf"]
            assert required == rec["projections"]
            assert len(hom.dst.ring.factors) == rec["width"]
            for sym, vals in rec["images"].items():
                img = hom.images[sym]
                assert [f.show(c) for f, c in
                        zip(hom.dst.ring.factors, img)] == [str(v) for v in vals]
