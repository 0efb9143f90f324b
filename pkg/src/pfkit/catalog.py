"""The named partial-field catalog.

Symbols used in expressions: ``i`` (square root of -1), ``z`` (primitive
sixth root of unity, z^2 = z - 1), ``t`` (golden-ratio unit, t^2 = t + 1),
``a``, ``b``, ``g`` (independent indeterminates), ``a1..ak`` for the
multi-indeterminate families.

Recognized names (CLI and JSON):

    U0 U1 Uk(k) D S G K(k) Y W GE P4 H2 H3 H4 H5 H6 U1mod2 GF(q)

and products joined with ``x``, e.g. ``GF(3)xGF(5)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from .exactalg import GF, GF2FunctionField, FunctionField, NumberRing, RationalRing
from .pfield import FunSet, PFHom, PartialField, fun_enumerate, product_pf

__all__ = ["make", "names", "base_names", "bound_lines", "hydra_data",
            "registered_homs"]


# ---------------------------------------------------------------------------
# unit-group decision rules for the quadratic rings
# ---------------------------------------------------------------------------

def _pow_exponent(value: Fraction, base: int):
    """t with base^t == value, or None."""
    if value <= 0:
        return None
    t = 0
    v = Fraction(value)
    while v > 1:
        v /= base
        t += 1
    while v < 1:
        v *= base
        t -= 1
    return t if v == 1 else None


def _torsion_rule(prime_expr: str, norm_base: int, torsion_exprs):
    """Membership rule: N(p) an exact power of norm_base, and p divided by
    the matching power of the distinguished prime lands in the torsion set."""

    def rule(pf: PartialField, e) -> bool:
        ring = pf.ring
        n = ring.norm(e)
        t = _pow_exponent(abs(n), norm_base)
        if t is None:
            return False
        prime = ring.parse(prime_expr)
        q = ring.mul(e, ring.pow(prime, -t))
        torsion = [ring.parse(x) for x in torsion_exprs]
        torsion += [ring.neg(x) for x in torsion]
        return any(ring.eq(q, u) for u in torsion)

    return rule


def _s_rule(pf: PartialField, e) -> bool:
    ring = pf.ring
    return ring.is_integral(e) and ring.eq(ring.pow(e, 6), ring.one())


def _g_rule(pf: PartialField, e) -> bool:
    ring = pf.ring
    return ring.is_integral(e) and abs(ring.norm(e)) == 1


def _h2_valuation(ring):
    def val(e):
        t = _pow_exponent(abs(ring.norm(e)), 2)
        assert t is not None, "valuation outside the group"
        return t

    return val


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

_EISENSTEIN = (1, -1, 1)   # z^2 - z + 1, z a primitive sixth root of unity
_SIXTH_ROOTS = ("1", "z", "z-1")


def _gf(q: int) -> PartialField:
    ring = GF(q)
    prim = next(g for g in ring.elements()
                if g and _mul_order(ring, g) == q - 1)
    return PartialField(ring, (prim,), "finite", name=f"GF({q})",
                        all_units=True,
                        hom_symbols=ring.symbols,
                        hom_relations=_gf_relations(ring))


def _mul_order(ring: GF, g) -> int:
    k, acc = 1, g
    while not ring.eq(acc, ring.one()):
        acc = ring.mul(acc, g)
        k += 1
        if k > ring.q:
            return 0
    return k


def _gf_relations(ring: GF):
    rels = [str(ring.p)]
    if ring.k > 1:
        bits = []
        for j, c in enumerate(ring.modpoly):
            if c % ring.p:
                bits.append(f"{c % ring.p}*a^{j}" if j else f"{c % ring.p}")
        rels.append("+".join(bits))
    return tuple(rels)


def _build(name: str) -> PartialField:
    if name == "U0":
        return PartialField(RationalRing(), (), "finite", name="U0")
    if name == "U1":
        ring = FunctionField(("a",))
        return PartialField(ring, (ring.parse("a"), ring.parse("a-1")),
                            "prime_basis", name="U1", fun_certificate=("mason",))
    m = re.fullmatch(r"Uk\((\d+)\)", name)
    if m:
        k = int(m.group(1))
        syms = tuple(f"a{j}" for j in range(1, k + 1))
        ring = FunctionField(syms)
        pts = ["0", "1"] + list(syms)
        gens = []
        for u in range(len(pts)):
            for v in range(u + 1, len(pts)):
                if (u, v) == (0, 1):
                    continue
                gens.append(ring.parse(f"({pts[v]})-({pts[u]})"))
        return PartialField(ring, gens, "prime_basis", name=name)
    if name == "D":
        return PartialField(RationalRing((2,)), (Fraction(2),), "prime_basis",
                            name="D", fun_certificate=("rational_prime", 2))
    if name == "GE":
        return PartialField(RationalRing((2, 3)), (Fraction(2), Fraction(3)),
                            "prime_basis", name="GE")
    if name == "S":
        ring = NumberRing(_EISENSTEIN, "z", name="ZZ[z]")
        return PartialField(ring, (ring.gen(),), "unit_rule", name="S",
                            unit_rule=_s_rule, hom_relations=("z^2-z+1",))
    if name == "G":
        ring = NumberRing((-1, -1, 1), "t", name="ZZ[t]")
        return PartialField(ring, (ring.gen(),), "unit_rule", name="G",
                            unit_rule=_g_rule, hom_relations=("t^2-t-1",),
                            fun_certificate=("real_quad_unit", "t"))
    if name == "H2":
        ring = NumberRing((1, 0, 1), "i", name="ZZ[i,1/2]")
        pf = PartialField(ring, (ring.gen(), ring.parse("1-i")), "unit_rule",
                          name="H2",
                          unit_rule=_torsion_rule("1-i", 2, ("1", "i")),
                          hom_relations=("i^2+1",),
                          fun_certificate=("imag_quad", ("1", "i"), "1-i", 2))
        pf.valuation = _h2_valuation(ring)
        return pf
    if name == "Y":
        ring = NumberRing(_EISENSTEIN, "z", name="ZZ[z,1/2]")
        return PartialField(ring, (ring.gen(), ring.from_int(2)), "unit_rule",
                            name="Y",
                            unit_rule=_torsion_rule("2", 4, _SIXTH_ROOTS),
                            hom_relations=("z^2-z+1",),
                            fun_certificate=("imag_quad", _SIXTH_ROOTS, "2", 4))
    if name == "W":
        ring = NumberRing(_EISENSTEIN, "z", name="ZZ[z,1/(1+z)]")
        return PartialField(ring, (ring.gen(), ring.parse("1+z")), "unit_rule",
                            name="W",
                            unit_rule=_torsion_rule("1+z", 3, _SIXTH_ROOTS),
                            hom_relations=("z^2-z+1",),
                            fun_certificate=("imag_quad", _SIXTH_ROOTS, "1+z", 3))
    m = re.fullmatch(r"K\((\d+)\)", name)
    if m:
        k = int(m.group(1))
        ring = FunctionField(("a",))
        gens = [ring.parse("a")]
        x = sp.Symbol("a")
        for j in range(1, k + 1):
            gens.append(ring.canon(sp.cyclotomic_poly(j, x)))
        return PartialField(ring, gens, "prime_basis", name=name,
                            fun_certificate=("mason",))
    if name == "P4":
        ring = FunctionField(("a",))
        gens = [ring.parse(s) for s in ("a", "a-1", "a+1", "a-2")]
        return PartialField(ring, gens, "prime_basis", name="P4",
                            fun_certificate=("mason",))
    if name == "H3":
        ring = FunctionField(("a",))
        gens = [ring.parse(s) for s in ("a", "a-1", "a^2-a+1")]
        return PartialField(ring, gens, "prime_basis", name="H3",
                            fun_certificate=("mason",))
    if name == "H4":
        ring = FunctionField(("a", "b"))
        gens = [ring.parse(s) for s in
                ("a", "b", "a-1", "b-1", "a*b-1", "a+b-2*a*b")]
        return PartialField(ring, gens, "prime_basis", name="H4",
                            fun_certificate=("recorded", _H4_FUN))
    if name in ("H5", "H6"):
        ring = FunctionField(("a", "b", "g"))
        gens = [ring.parse(s) for s in
                ("a", "b", "g", "a-1", "b-1", "g-1", "a-g", "g-a*b",
                 "1-g-(1-a)*b")]
        return PartialField(ring, gens, "prime_basis", name=name,
                            fun_certificate=("recorded", _H5_FUN))
    if name == "U1mod2":
        ring = GF2FunctionField("a")
        gens = (ring.atom("a"), ring.add(ring.one(), ring.atom("a")))
        return PartialField(ring, gens, "prime_basis", name="U1mod2",
                            hom_relations=("2",),
                            fun_certificate=("scan", 8))
    m = re.fullmatch(r"GF\((\d+)\)", name)
    if m:
        return _gf(int(m.group(1)))
    raise KeyError(f"unknown partial field name {name!r}")


_H4_FUN = ("a", "b", "a*b", "(a-1)/(a*b-1)", "(b-1)/(a*b-1)",
           "-a*(b-1)/(b*(a-1))", "(a-1)*(b-1)/(1-a*b)",
           "a*(b-1)^2/(b*(a*b-1))", "b*(a-1)^2/(a*(a*b-1))")

_H5_FUN = ("a", "b", "g", "a*b/g", "a/g", "(1-a)*g/(g-a)",
           "(a-1)*b/(g-1)", "(a-1)/(g-1)", "(g-a)/(g-a*b)",
           "(b-1)*(g-1)/(b*(g-a))", "b*(g-a)/(g-a*b)",
           "(a-1)*(b-1)/(g-a)", "b*(g-a)/((1-g)*(g-a*b))",
           "(1-a)*(g-a*b)/(g-a)", "(1-b)/(g-a*b)")


def _split_product(name: str):
    parts, depth, cur = [], 0, []
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


@lru_cache(maxsize=None)
def make(name: str) -> PartialField:
    name = name.strip().replace(" ", "")
    parts = _split_product(name)
    if len(parts) > 1:
        return product_pf([make(p) for p in parts], name=name)
    return _build(name)


def base_names():
    return ["U0", "U1", "Uk(k)", "D", "S", "G", "K(k)", "Y", "W", "GE",
            "P4", "H2", "H3", "H4", "H5", "H6", "U1mod2", "GF(q)"]


def names():
    return base_names()


# ---------------------------------------------------------------------------
# registered homomorphisms and bound certificates
# ---------------------------------------------------------------------------

def _hom(src_name: str, dst_name: str, images_exprs: dict, name=None) -> PFHom:
    src, dst = make(src_name), make(dst_name)
    images = {k: dst.parse(v) if isinstance(v, str) else v
              for k, v in images_exprs.items()}
    return PFHom(src, dst, images, name=name or f"{src_name}->{dst_name}")


@lru_cache(maxsize=None)
def bound_lines(name: str):
    """Hom-derived exponent windows for fun-set enumeration (see
    pfield.hom_bound_candidates)."""
    if name == "H3":
        fs = fun_enumerate(make("H2"))
        return tuple((_hom("H3", "H2", {"a": expr}), fs)
                     for expr in ("i", "1-i", "(1-i)/2"))
    if name == "D":
        fs = fun_enumerate(make("H2"))
        return ((_hom("D", "H2", {}), fs),)
    raise KeyError(f"no bound certificate lines for {name!r}")


def _tuple_img(dst: PartialField, vals):
    return tuple(r.from_int(v) for r, v in zip(dst.ring.factors, vals))


@lru_cache(maxsize=None)
def hydra_data(k: int):
    """(source pf, registered hom into a GF(5) power, required projection
    count) for the degeneracy checks."""
    if k == 2:
        dst = make("GF(5)xGF(5)")
        return make("H2"), _hom("H2", "GF(5)xGF(5)", {"i": _tuple_img(dst, (2, 3))}), 2
    if k == 3:
        dst = make("GF(5)xGF(5)xGF(5)")
        return make("H3"), _hom("H3", dst.name, {"a": _tuple_img(dst, (2, 3, 4))}), 3
    if k == 4:
        dst = make("x".join(["GF(5)"] * 4))
        return make("H4"), _hom("H4", dst.name, {
            "a": _tuple_img(dst, (2, 3, 3, 4)),
            "b": _tuple_img(dst, (2, 3, 4, 3))}), 4
    if k in (5, 6):
        dst = make("x".join(["GF(5)"] * 6))
        return make("H5"), _hom("H5", dst.name, {
            "a": _tuple_img(dst, (2, 3, 4, 2, 3, 4)),
            "b": _tuple_img(dst, (3, 2, 3, 4, 2, 4)),
            "g": _tuple_img(dst, (3, 2, 3, 4, 4, 2))}), 6
    raise KeyError(f"hydra level {k} not between 2 and 6")


_SYMBOLIC_HOMS = (
    ("D", "H2", {}),
    ("D", "GE", {}),
    ("D", "Y", {}),
    ("S", "Y", {"z": "z"}),
    ("S", "W", {"z": "z"}),
    ("U1", "K(2)", {"a": "a"}),
    ("K(2)", "P4", {"a": "a"}),
)


def registered_homs():
    """Catalog homs between symbolic (non-finite) entries, verified lazily."""
    out = []
    for src, dst, images in _SYMBOLIC_HOMS:
        h = _hom(src, dst, images)
        if h.verify():
            out.append(h)
    # U0 maps into everything symbolic: no symbols, nothing to choose
    for dst in ("U1", "D", "S", "G", "GE", "Y", "W", "P4", "H2", "H3", "H4", "H5"):
        h = _hom("U0", dst, {})
        if h.verify():
            out.append(h)
    return out
