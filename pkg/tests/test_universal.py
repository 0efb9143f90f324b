"""Presentations of representations, representation counts over finite
partial fields, universal partial fields, and the settles check.

Expected values were frozen from independent hand computation and direct
search before the module was written."""

import itertools

import pytest

from pfkit import catalog
from pfkit.exactalg.rings import QuotientRing
from pfkit.matroid import Matroid, make_named
from pfkit.universal import (UniversalError, bracket_presentation,
                             count_representations, is_representable,
                             settles_check, subring_contains, universal_pf,
                             verify_universal_iso)

P8_BASIS = {"x1", "x2", "x3", "x4"}
P8_TREE = [("x1", "y2"), ("x1", "y3"), ("x2", "y1"), ("x2", "y3"),
           ("x2", "y4"), ("x3", "y4"), ("x4", "y3")]
P8_ASSIGN = {"a_x1_y4": "2", "a_x3_y1": "1", "a_x3_y2": "1",
             "a_x4_y1": "2", "a_x4_y2": "1"}


def minor_onto(M, N, n_contract, n_delete):
    """First (contract, delete) pair exhibiting N as a minor of M."""
    for con in itertools.combinations(M.ground, n_contract):
        rest = [e for e in M.ground if e not in con]
        for dele in itertools.combinations(rest, n_delete):
            mi = M.minor(contract=set(con), delete=set(dele))
            if len(mi.bases) == len(N.bases) and mi.rank == N.rank:
                return set(con), set(dele)
    raise AssertionError("no minor found")


class TestPresentation:
    def test_u24_one_free_symbol(self):
        M, _ = make_named("U(2,4)")
        pres = bracket_presentation(M)
        assert len(pres.free_symbols) == 1
        assert not pres.trivial()
        # the symbol stays free: its normal form is itself, not a constant
        ring = QuotientRing(pres.polyring, pres.gb)
        p = pres.polyring.var(pres.free_symbols[0])
        assert ring.nf(p) == p

    def test_u24_both_determinants_inverted(self):
        M, _ = make_named("U(2,4)")
        pres = bracket_presentation(M)
        # bases determinants up to sign: 1, p and p-1, so two inverses
        assert len(pres.inverted) == 2
        ring = QuotientRing(pres.polyring, pres.gb)
        p = pres.polyring.var(pres.free_symbols[0])
        one = ring.one()
        assert not ring.is_zero(ring.sub(ring.nf(p), one))
        for d in pres.inverted:
            ring.inv(d)  # must not raise

    def test_p8_five_forced_symbols(self):
        M, _ = make_named("P8")
        pres = bracket_presentation(M, B=P8_BASIS, T=P8_TREE)
        assert pres.free_symbols == ["a_x1_y4", "a_x3_y1", "a_x3_y2",
                                     "a_x4_y1", "a_x4_y2"]
        ring = QuotientRing(pres.polyring, pres.gb)
        forced = {"a_x1_y4": 2, "a_x3_y1": 1, "a_x3_y2": 1,
                  "a_x4_y1": 2, "a_x4_y2": 1}
        for name, val in forced.items():
            nf = ring.nf(pres.polyring.var(name))
            assert nf == pres.polyring.const(val), name

    def test_trivial_rank_cases(self):
        M, _ = make_named("U(0,1)")
        assert is_representable(M)
        assert count_representations(M, catalog.make("GF(3)")) == 1

    def test_vamos_not_representable(self):
        V, _ = make_named("Vamos")
        assert not is_representable(V)

    def test_vamos_no_finite_representation_direct_search(self):
        # independent route: exhaustive normalized-matrix search
        V, _ = make_named("Vamos")
        for q in (2, 3, 4, 5):
            assert count_representations(V, catalog.make(f"GF({q})")) == 0

    def test_bad_tree_rejected(self):
        M, _ = make_named("U(2,4)")
        with pytest.raises(UniversalError):
            bracket_presentation(M, T=[("e1", "e3")])


class TestCounting:
    def test_frozen_counts_over_gf5(self):
        gf5 = catalog.make("GF(5)")
        expected = {"U(2,4)": 3, "U(2,5)": 6, "P8": 1}
        for name, n in expected.items():
            M, _ = make_named(name)
            assert count_representations(M, gf5) == n, name

    def test_fano_counts(self):
        F7, _ = make_named("F7")
        assert count_representations(F7, catalog.make("GF(2)")) == 1
        assert count_representations(F7, catalog.make("GF(3)")) == 0

    def test_u24_family(self):
        M, _ = make_named("U(2,4)")
        for q in (3, 4, 5, 7, 8, 9):
            assert count_representations(M, catalog.make(f"GF({q})")) == q - 2

    def test_count_matches_presentation_point_count(self):
        # dual route: count solutions of the presentation polynomials directly
        gf5 = catalog.make("GF(5)")
        for name in ("U(2,4)", "F7"):
            M, _ = make_named(name)
            pres = bracket_presentation(M)
            ring = gf5.ring
            free = pres.free_symbols
            nonzero = [e for e in ring.elements() if not ring.is_zero(e)]
            hits = 0
            for combo in itertools.product(nonzero, repeat=len(free)):
                vals = list(combo) + [ring.zero()] * len(pres.inverted)
                if any(not ring.is_zero(g.evaluate(ring, vals))
                       for g in pres.nonbasis_gens):
                    continue
                if any(ring.is_zero(d.evaluate(ring, vals))
                       for d in pres.basis_dets.values()):
                    continue
                hits += 1
            assert hits == count_representations(M, gf5), name

    def test_count_is_dual_invariant(self):
        for name, pfname in (("U(2,5)", "GF(7)"), ("F7", "GF(2)"),
                             ("P8", "GF(5)")):
            M, _ = make_named(name)
            pf = catalog.make(pfname)
            assert count_representations(M, pf) == \
                count_representations(M.dual(), pf), name

    def test_disconnected_count_multiplies(self):
        ground = ["a1", "a2", "b1", "b2", "b3", "b4"]
        bases = {frozenset({x} | set(b)) for x in ("a1", "a2")
                 for b in itertools.combinations(("b1", "b2", "b3", "b4"), 2)}
        M = Matroid(ground, bases)
        assert count_representations(M, catalog.make("GF(5)")) == 3

    def test_infinite_group_rejected(self):
        M, _ = make_named("U(2,4)")
        with pytest.raises(UniversalError):
            count_representations(M, catalog.make("D"))


class TestUniversalPF:
    def test_u24_six_cross_ratios(self):
        M, _ = make_named("U(2,4)")
        u = universal_pf(M)
        ring = u.ring
        nonconst = [c for c in u.cross_ratios
                    if not ring.is_zero(c) and not ring.eq(c, ring.one())]
        assert len(nonconst) == 6
        # the six form one associate orbit: closed under x -> 1/x and x -> 1-x
        keys = {ring.key(c) for c in nonconst}
        for c in nonconst:
            assert ring.key(ring.inv(c)) in keys
            assert ring.key(ring.sub(ring.one(), c)) in keys

    def test_p8_cross_ratios_are_dyadic(self):
        M, _ = make_named("P8")
        u = universal_pf(M, B=P8_BASIS, T=P8_TREE)
        ring = u.ring
        two = ring.from_int(2)
        allowed = [ring.zero(), ring.one(), ring.neg(ring.one()),
                   two, ring.inv(two)]
        assert len(u.cross_ratios) == 5
        for c in u.cross_ratios:
            assert any(ring.eq(c, a) for a in allowed)

    def test_p8_cross_ratios_basis_independent(self):
        # same structure from the automatic basis and tree
        M, _ = make_named("P8")
        u = universal_pf(M)
        ring = u.ring
        two = ring.from_int(2)
        allowed = [ring.zero(), ring.one(), ring.neg(ring.one()),
                   two, ring.inv(two)]
        assert len(u.cross_ratios) == 5
        for c in u.cross_ratios:
            assert any(ring.eq(c, a) for a in allowed)

    def test_pf_view_membership(self):
        from pfkit.pfield import UndecidableWithStrategy
        M, _ = make_named("P8")
        u = universal_pf(M, B=P8_BASIS, T=P8_TREE)
        ring = u.ring
        assert u.pf_view.contains(ring.from_int(2))
        assert u.pf_view.contains(ring.from_int(-4))
        # the group is infinite: a non-member is reported undecidable, not False
        with pytest.raises(UndecidableWithStrategy):
            u.pf_view.contains(ring.from_int(3))

    def test_grassmann_plucker_three_term(self):
        # the 3-term relation among maximal subdeterminants of [I | A] must
        # reduce to zero (it is an identity; this pins down our sign rules)
        from pfkit.universal import _subdet
        for name in ("U(2,5)", "P8"):
            M, _ = make_named(name)
            pres = bracket_presentation(M)
            rows = sorted(pres.basis)
            ring = pres.polyring
            full = dict(pres.entries)
            for i, x in enumerate(rows):          # identity columns
                for j, w in enumerate(rows):
                    if i == j:
                        full[(w, x)] = ring.one()
            r = M.rank

            def bracket(cols):
                return _subdet(full, ring, tuple(rows), tuple(cols))

            ground = list(M.ground)
            x1, x2, y1, y2 = ground[0], ground[1], ground[2], ground[3]
            for U in itertools.combinations(ground[4:], r - 2):
                lhs = (bracket((x1, x2) + U) * bracket((y1, y2) + U)
                       - bracket((y1, x2) + U) * bracket((x1, y2) + U)
                       - bracket((y2, x2) + U) * bracket((y1, x1) + U))
                assert lhs.is_zero(), (name, U)


class TestIsoCertificates:
    def test_p8_universal_is_dyadic(self):
        M, _ = make_named("P8")
        D = catalog.make("D")
        assert verify_universal_iso(M, D, P8_ASSIGN, B=P8_BASIS, T=P8_TREE)

    def test_p8_wrong_assignment_fails(self):
        M, _ = make_named("P8")
        D = catalog.make("D")
        bad = dict(P8_ASSIGN)
        bad["a_x1_y4"] = "1"
        assert not verify_universal_iso(M, D, bad, B=P8_BASIS, T=P8_TREE)

    @pytest.mark.parametrize("q", [2, 3])
    def test_qplus_universal_is_prime_field(self, q):
        M, A = make_named(f"Qplus({q})")
        B = set(A.rows)
        pres = bracket_presentation(M, B=B)
        An = A.normalize(T=list(pres.tree))
        assign = {pres.edge_vars[e]: An.entry(*e) for e in pres.edge_vars}
        gf = catalog.make(f"GF({q})")
        assert verify_universal_iso(M, gf, assign, B=B, T=list(pres.tree))

    def test_missing_symbol_raises(self):
        M, _ = make_named("P8")
        with pytest.raises(UniversalError):
            verify_universal_iso(M, catalog.make("D"), {},
                                 B=P8_BASIS, T=P8_TREE)


class TestSubring:
    def test_finite_ring_closure(self):
        gf5 = catalog.make("GF(5)")
        r = gf5.ring
        two = r.from_int(2)
        assert subring_contains(gf5, [two], r.from_int(4))
        assert subring_contains(gf5, [two], r.from_int(3))  # 2+2+2 closes

    def test_prime_basis_membership(self):
        D = catalog.make("D")
        r = D.ring
        half = r.inv(r.from_int(2))
        quarter = r.inv(r.from_int(4))
        assert subring_contains(D, [half], quarter)          # (1/2)^2
        assert not subring_contains(D, [r.from_int(2)], half)  # ZZ[2] = ZZ


class TestSettles:
    def test_u24_settles_p8(self):
        U24, _ = make_named("U(2,4)")
        P8, _ = make_named("P8")
        con, dele = minor_onto(P8, U24, 2, 2)
        assert settles_check(U24, P8, con, dele)

    def test_u24_settles_f7_minus(self):
        U24, _ = make_named("U(2,4)")
        F7m, _ = make_named("F7minus")
        con, dele = minor_onto(F7m, U24, 1, 2)
        assert settles_check(U24, F7m, con, dele)

    def test_u24_does_not_settle_u25(self):
        U24, _ = make_named("U(2,4)")
        U25, _ = make_named("U(2,5)")
        assert not settles_check(U24, U25, contract=(), delete=("e5",))

    def test_wrong_minor_rejected(self):
        U24, _ = make_named("U(2,4)")
        P8, _ = make_named("P8")
        with pytest.raises(UniversalError):
            settles_check(U24, P8, contract=("x1",), delete=("x2",))
