"""Kernel tests: integer Groebner bases, rings, parsing, factorization.

Expected values are frozen from independent hand computation or from naive
reference oracles defined inline.
"""

from fractions import Fraction

import pytest

from pfkit.exactalg import (
    GF,
    FunctionField,
    NumberRing,
    NotInvertible,
    PolyRing,
    ProductRing,
    QQ,
    QuotientRing,
    RationalRing,
    TermOrder,
    ZZ,
    contains_one,
    det_zpoly,
    eliminate,
    factor_over_basis,
    groebner,
    in_subring,
    invert_mod,
    normal_form,
    parse_expr,
    parse_ring,
    saturate,
)
from pfkit.limits import current_limits

L = current_limits()


# ---------------------------------------------------------------------------
# strong Groebner bases over ZZ
# ---------------------------------------------------------------------------

def nf(ring, gens, target):
    order = TermOrder(ring.n)
    gb = groebner([ring.parse_poly(t) if isinstance(t, str) else t for t in gens], order, L)
    return gb


class TestGroebnerZZ:
    def test_g_polynomial_required(self):
        # <2x, 3y> contains xy = 3xy - 2xy even though lead coeffs are coprime;
        # a Buchberger loop without G-polynomials misses it.
        R = PolyRing(("x", "y"))
        order = TermOrder(2)
        gb = groebner([R.parse_poly("2*x"), R.parse_poly("3*y")], order, L)
        xy = R.parse_poly("x*y")
        assert normal_form(xy, gb, order, L).is_zero()

    def test_content_gcd(self):
        R = PolyRing(("x",))
        order = TermOrder(1)
        gb = groebner([R.parse_poly("2*x-2"), R.parse_poly("3*x-3")], order, L)
        assert [repr(g) for g in gb] == ["x-1"]

    def test_unit_ideal(self):
        R = PolyRing(("x",))
        order = TermOrder(1)
        gb = groebner([R.parse_poly("2*x-1"), R.parse_poly("x-1")], order, L)
        assert contains_one(gb)

    def test_canonical_remainders(self):
        # normal forms use Euclidean remainders 0 <= r < lc
        R = PolyRing(("x",))
        order = TermOrder(1)
        gb = groebner([R.parse_poly("3*x")], order, L)
        f = R.parse_poly("7*x")
        assert repr(normal_form(f, gb, order, L)) == "x"

    def test_reduced_basis_is_canonical(self):
        # same ideal from two generator orders -> identical reduced basis
        R = PolyRing(("x", "y"))
        order = TermOrder(2)
        gens1 = [R.parse_poly("x^2-y"), R.parse_poly("x*y-1")]
        gb1 = groebner(gens1, order, L)
        gb2 = groebner(list(reversed(gens1)), order, L)
        assert [repr(g) for g in gb1] == [repr(g) for g in gb2]

    def test_char_detection(self):
        R = PolyRing(("x",))
        order = TermOrder(1)
        gb = groebner([R.parse_poly("x-1"), R.parse_poly("x+1")], order, L)
        # ideal contains 2 but not 1
        two = R.parse_poly("2")
        assert normal_form(two, gb, order, L).is_zero()
        assert not contains_one(gb)


class TestSaturateEliminate:
    def test_saturation_removes_torsion(self):
        # I = <x*y, y^2 - y> saturated at y kills the y-torsion of x
        R = PolyRing(("x", "y"))
        sat = saturate([R.parse_poly("x*y"), R.parse_poly("y^2-y")], R, R.parse_poly("y"), L)
        order = TermOrder(2)
        gb = groebner(sat, order, L)
        assert normal_form(R.parse_poly("x"), gb, order, L).is_zero()

    def test_elimination(self):
        # eliminate x from <x - y^2>: nothing survives in y alone
        R = PolyRing(("x", "y"))
        out = eliminate([R.parse_poly("x-y^2")], R, ("x",), L)
        assert out == [] or all("x" not in repr(g) for g in out)

    def test_invert_mod(self):
        # mod <2h - 1>, the inverse of 4 is h^2
        R = PolyRing(("h",))
        inv = invert_mod([R.parse_poly("2*h-1")], R, R.parse_poly("4"), L)
        order = TermOrder(1)
        gb = groebner([R.parse_poly("2*h-1")], order, L)
        assert normal_form(R.parse_poly("4") * inv, gb, order, L).is_one()

    def test_subring_membership(self):
        # x^2 + x is in ZZ[x^2+x]; x is not
        R = PolyRing(("x",))
        ok, _ = in_subring([], R, [R.parse_poly("x^2+x")], R.parse_poly("x^2+x+3"), L)
        assert ok
        bad, _ = in_subring([], R, [R.parse_poly("x^2+x")], R.parse_poly("x"), L)
        assert not bad


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

class TestDet:
    def test_3x3_vs_cofactor_oracle(self):
        R = PolyRing(("p", "q"))
        grid = [[R.parse_poly(s) for s in row] for row in
                (("1", "1", "1"), ("1", "p", "q"), ("1", "p^2", "q^2"))]
        # Vandermonde-style oracle: (p-1)(q-1)(q-p)
        oracle = R.parse_poly("(p-1)*(q-1)*(q-p)")
        assert (det_zpoly(grid) - oracle).is_zero()

    def test_singular(self):
        R = PolyRing(("p",))
        grid = [[R.parse_poly("p"), R.parse_poly("p")],
                [R.parse_poly("1"), R.parse_poly("1")]]
        assert det_zpoly(grid).is_zero()


# ---------------------------------------------------------------------------
# rings and parsing
# ---------------------------------------------------------------------------

class TestRings:
    def test_gf9_field_axioms(self):
        F = GF(9)
        els = list(F.elements())
        assert len(els) == 9
        for a in els:
            if a:
                assert F.mul(a, F.inv(a)) == 1
        # characteristic 3
        assert F.add(F.add(F.one(), F.one()), F.one()) == 0

    def test_gf4_multiplicative_order(self):
        F = GF(4)
        a = F.atom("a")
        assert F.mul(a, F.mul(a, a)) == F.one()

    def test_number_ring_sixth_root(self):
        R = NumberRing((1, -1, 1), "z")
        z = R.gen()
        assert R.eq(R.pow(z, 6), R.one())
        assert R.eq(R.pow(z, 3), R.neg(R.one()))
        assert R.norm(R.parse("1+z")) == 3

    def test_number_ring_constant_inverse(self):
        R = NumberRing((1, 0, 1), "i")
        assert R.eq(R.inv(R.from_int(2)), R.parse("1/2"))

    def test_gaussian_norm(self):
        R = NumberRing((1, 0, 1), "i")
        assert R.norm(R.parse("1-i")) == 2
        assert R.norm(R.parse("(1-i)/2")) == Fraction(1, 2)

    def test_function_field_canonical(self):
        F = FunctionField(("a",))
        x = F.parse("(a^2-1)/(a-1)")
        assert F.eq(x, F.parse("a+1"))
        assert F.key(F.parse("2*a/(2*a-2)")) == F.key(F.parse("a/(a-1)"))

    def test_product_ring(self):
        R = ProductRing([GF(3), GF(5)])
        e = R.parse("(2,3)")
        assert R.show(R.mul(e, e)) == "(1,4)"

    def test_parse_ring_roundtrip(self):
        for text in ("QQ", "ZZ", "ZZ[1/2]", "GF(7)", "GF(2)(a)", "QQ(a,b)"):
            r = parse_ring(text)
            assert r.eq(r.add(r.one(), r.zero()), r.one())

    def test_quotient_ring_inverse_cache(self):
        R = PolyRing(("h",))
        order = TermOrder(1)
        gb = groebner([R.parse_poly("2*h-1")], order, L)
        Q = QuotientRing(R, gb)
        four = Q.from_int(4)
        assert Q.eq(Q.mul(four, Q.inv(four)), Q.one())
        with pytest.raises(NotInvertible):
            Q.inv(Q.from_int(3))


# ---------------------------------------------------------------------------
# factor_over_basis
# ---------------------------------------------------------------------------

class TestFactorOverBasis:
    def test_rational(self):
        R = RationalRing((2,))
        got = factor_over_basis(R, Fraction(-8), [Fraction(2)])
        assert got == (-1, (3,))
        assert factor_over_basis(R, Fraction(12), [Fraction(2)]) is None

    def test_function_field(self):
        F = FunctionField(("a",))
        basis = [F.parse("a"), F.parse("a-1")]
        sign, exps = factor_over_basis(F, F.parse("a^2/(1-a)"), basis)
        assert (sign, exps) == (-1, (2, -1))
        # a+1 is a foreign irreducible
        assert factor_over_basis(F, F.parse("a^2+a"), basis) is None
        # constants other than +-1 are foreign
        assert factor_over_basis(F, F.parse("2*a"), basis) is None

    def test_gf2_function_field(self):
        from pfkit.exactalg import GF2FunctionField

        F = GF2FunctionField("a")
        one = F.one()
        basis = [F.atom("a"), F.add(F.atom("a"), one)]
        # a^2 + a = a(a+1)
        e = F.add(F.mul(F.atom("a"), F.atom("a")), F.atom("a"))
        sign, exps = factor_over_basis(F, e, basis)
        assert (sign, exps) == (1, (1, 1))
        # a^2 + a + 1 is irreducible and foreign
        f = F.add(e, one)
        assert factor_over_basis(F, f, basis) is None


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------

class TestParse:
    def test_precedence(self):
        assert parse_expr("2+3*4^2", QQ) == Fraction(50)
        assert parse_expr("-2^2", QQ) == Fraction(-4)
        assert parse_expr("(2+3)*4", QQ) == Fraction(20)

    def test_division(self):
        assert parse_expr("3/4/2", QQ) == Fraction(3, 8)

    def test_product_literal(self):
        R = ProductRing([GF(3), GF(5)])
        assert parse_expr("(2,2)", R) == (2, 2)
        assert parse_expr("(2,2)*(2,2)", R) == (1, 4)

    def test_errors(self):
        with pytest.raises(Exception):
            parse_expr("2+*3", QQ)
