"""Partial-field layer: fun-set enumeration, homs, products, sub-fields.

Expected values here were frozen up front (hand-derived or double-checked
by an independent route) before the implementation was finished.
"""

import pytest

from pfkit import catalog
from pfkit.pfield import (FunSet, NotFundamental, PFHom, assoc_closure,
                          associates, fun_enumerate, fun_product,
                          generated_subfield, hom_enumerate, induced_check,
                          product_pf)


def shows(fs):
    return set(fs.shows())


class TestFunSets:
    def test_dyadic(self):
        fs = fun_enumerate(catalog.make("D"))
        assert shows(fs) == {"0", "1", "-1", "2", "1/2"}
        assert fs.proven

    def test_dyadic_via_hom_bounds(self):
        # independent route: exponent windows through the Gaussian-integer hom
        pf = catalog.make("D")
        fs = fun_enumerate(pf, bounds=catalog.bound_lines("D"))
        assert shows(fs) == {"0", "1", "-1", "2", "1/2"}

    def test_near_regular(self):
        pf = catalog.make("U1")
        fs = fun_enumerate(pf)
        assert len(fs) == 8
        assert fs.proven
        expected = assoc_closure(pf, [pf.parse("a")])
        assert {pf.ring.key(e) for e in expected} == {pf.ring.key(e) for e in fs}

    def test_sixth_root(self):
        fs = fun_enumerate(catalog.make("S"))
        assert shows(fs) == {"0", "1", "z", "-z+1"}
        assert fs.proven

    def test_gaussian(self):
        pf = catalog.make("H2")
        fs = fun_enumerate(pf)
        assert len(fs) == 11
        assert fs.proven
        for t in ("2", "1/2", "-1", "i", "1-i", "(1+i)/2"):
            assert pf.parse(t) in fs

    def test_golden(self):
        pf = catalog.make("G")
        fs = fun_enumerate(pf)
        assert len(fs) == 8
        assert fs.proven
        expected = assoc_closure(pf, [pf.parse("t")])
        assert {pf.ring.key(e) for e in expected} == {pf.ring.key(e) for e in fs}

    def test_gf_fun_is_whole_field(self):
        pf = catalog.make("GF(5)")
        fs = fun_enumerate(pf)
        assert len(fs) == 5  # every element of a finite field is fundamental
        assert fs.proven

    def test_recorded_lists_flagged(self):
        for name in ("H4", "H5"):
            fs = fun_enumerate(catalog.make(name))
            assert fs.completeness[0] == "VerifiedOnly"
            assert fs.check_closed()


class TestTwoVariableFunDualRoute:
    """fun of the rank-2 function-field catalog entry via two independent
    candidate regions: a degree bound and hom-derived exponent windows."""

    def test_both_routes_agree(self):
        pf = catalog.make("H3")
        a = fun_enumerate(pf)                                   # degree bound
        b = fun_enumerate(pf, bounds=catalog.bound_lines("H3"))  # hom windows
        assert a.proven and b.proven
        ka = {pf.ring.key(e) for e in a}
        kb = {pf.ring.key(e) for e in b}
        assert ka == kb
        assert len(a) == 26


class TestAssociates:
    def test_orbit_of_two_in_dyadic(self):
        pf = catalog.make("D")
        orb = associates(pf, pf.parse("2"))
        assert {pf.show(e) for e in orb} == {"2", "-1", "1/2"}

    def test_degenerate_orbit(self):
        pf = catalog.make("D")
        assert {pf.show(e) for e in associates(pf, pf.parse("0"))} == {"0", "1"}
        assert {pf.show(e) for e in associates(pf, pf.parse("1"))} == {"0", "1"}

    def test_not_fundamental_raises(self):
        pf = catalog.make("D")
        with pytest.raises(NotFundamental):
            associates(pf, pf.parse("4"))  # 1 - 4 = -3 is not in the group

    def test_orbit_size_divides_six(self):
        pf = catalog.make("H3")
        for e in fun_enumerate(pf):
            n = len(associates(pf, e))
            assert n in (1, 2, 3, 6) or {pf.show(x) for x in associates(pf, e)} == {"0", "1"}


class TestHoms:
    def test_counts_into_finite_fields(self):
        mk, cnt = catalog.make, lambda s, d: len(hom_enumerate(mk(s), mk(d)))
        assert cnt("D", "GF(5)") == 1
        assert cnt("D", "GF(2)") == 0
        assert cnt("S", "GF(7)") == 2
        assert cnt("S", "GF(5)") == 0

    def test_dyadic_to_gf3_images(self):
        homs = hom_enumerate(catalog.make("D"), catalog.make("GF(3)"))
        assert len(homs) == 1
        h = homs[0]
        src, dst = h.src, h.dst
        assert dst.show(h.apply(src.parse("2"))) == "2"
        assert dst.show(h.apply(src.parse("1/2"))) == "2"

    def test_registered_catalog_homs_verify(self):
        homs = catalog.registered_homs()
        labels = {h.name for h in homs}
        for want in ("D->H2", "D->GE", "S->Y", "S->W", "U1->K(2)",
                     "K(2)->P4", "U0->H3"):
            assert want in labels
        for h in homs:
            assert h.failure is None

    def test_hydra_homs_verify(self):
        for k in (2, 3, 4, 5):
            src, hom, m = catalog.hydra_data(k)
            assert hom.verify(), hom.failure
            assert m == {2: 2, 3: 3, 4: 4, 5: 6}[k]

    def test_bad_hom_rejected(self):
        src, dst = catalog.make("S"), catalog.make("GF(7)")
        # z must map to an element of multiplicative order 6; 2 has order 3
        h = PFHom(src, dst, {"z": dst.parse("2")})
        assert not h.verify()
        assert h.failure is not None

    def test_compose(self):
        d, h2 = catalog.make("D"), catalog.make("H2")
        g5 = catalog.make("GF(5)")
        f = catalog.registered_homs()[0]  # D -> H2
        assert f.name == "D->H2"
        homs = hom_enumerate(h2, g5)
        assert homs, "H2 -> GF(5) must exist (i -> 2 or 3)"
        comp = homs[0].compose(f)
        assert comp.verify()
        assert g5.show(comp.apply(d.parse("2"))) == "2"


class TestProductsAndSubfields:
    def test_fun_product_rule_matches_direct(self):
        p2, p3 = catalog.make("GF(2)"), catalog.make("GF(3)")
        prod = catalog.make("GF(2)xGF(3)")
        by_rule = fun_product(fun_enumerate(p2), fun_enumerate(p3), prod)
        direct = fun_enumerate(prod)
        r = prod.ring
        assert {r.key(e) for e in by_rule} == {r.key(e) for e in direct}
        assert {prod.show(e) for e in direct} == {"(0,0)", "(1,1)"}

    def test_fun_product_gf3_squared(self):
        p3 = catalog.make("GF(3)")
        prod = catalog.make("GF(3)xGF(3)")
        by_rule = fun_product(fun_enumerate(p3), fun_enumerate(p3), prod)
        direct = fun_enumerate(prod)
        r = prod.ring
        assert {r.key(e) for e in by_rule} == {r.key(e) for e in direct}
        # mid elements of fun(GF(3)) are {2}; so exactly (0,0),(1,1),(2,2)
        assert len(direct) == 3

    def test_diagonal_subfield_is_induced(self):
        prod = catalog.make("GF(3)xGF(3)")
        sub = generated_subfield(prod, [prod.parse("(2,2)")])
        assert induced_check(prod, sub) is True

    def test_non_induced_subfield(self):
        g5 = catalog.make("GF(5)")
        sub = generated_subfield(g5, [g5.parse("4")])
        assert induced_check(g5, sub) is False

    def test_induced_unknown_for_infinite(self):
        pf = catalog.make("D")
        sub = generated_subfield(pf, [pf.parse("2")])
        assert induced_check(pf, sub) is None

    def test_subfield_membership(self):
        pf = catalog.make("H3")
        sub = generated_subfield(pf, [pf.parse("a")])
        assert sub.contains(pf.parse("-a^2"))
        assert not sub.contains(pf.parse("1-a"))

    def test_subfield_closure_blowup_is_flagged(self):
        from pfkit.pfield import UndecidableWithStrategy
        pf = catalog.make("H2")
        with pytest.raises(UndecidableWithStrategy):
            generated_subfield(pf, [pf.parse("2")])  # infinite group, no basis

    def test_product_group_membership(self):
        prod = catalog.make("GF(2)xGF(3)")
        assert prod.contains(prod.parse("(1,2)"))
        assert not prod.contains(prod.parse("(0,2)"))


class TestFunSetInvariants:
    def test_closure_under_symmetry(self):
        # p in fun  =>  1-p and 1/p in fun (check on every proven catalog set)
        for name in ("D", "U1", "S", "H2", "G", "H3"):
            pf = catalog.make(name)
            fs = fun_enumerate(pf)
            r = pf.ring
            for p in fs:
                assert r.sub(r.one(), p) in fs
                if not r.is_zero(p):
                    assert r.inv(p) in fs

    def test_hom_maps_fun_into_fun(self):
        src, dst = catalog.make("D"), catalog.make("GF(5)")
        h = hom_enumerate(src, dst)[0]
        fd, f5 = fun_enumerate(src), fun_enumerate(dst)
        for p in fd:
            assert h.apply(p) in f5
