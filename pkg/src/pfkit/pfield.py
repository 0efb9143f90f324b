"""Partial fields: a commutative ring with a distinguished unit subgroup.

A partial field is a pair (R, G) where R is a commutative ring and G a
subgroup of its units with -1 in G.  "Elements of the partial field" means
G together with 0; addition is partial (a sum is defined exactly when it
lands back in G or at 0).

Membership in G is decided by a per-instance strategy:

    finite         -- G is precomputed as a closed finite set
    prime_basis    -- G is generated by pairwise coprime atoms (primes of ZZ,
                      irreducible polynomials); factor and check the exponent
                      lattice
    unit_rule      -- a registered decision procedure (norm conditions etc.)
    componentwise  -- product of partial fields, decided factor by factor

Fundamental elements (p with 1-p also in the partial field) are enumerated
with provable completeness whenever a sound candidate region is available:

    * finite group: scan everything;
    * univariate rational function fields with polynomial atom generators:
      a degree bound via the Mason-Stothers theorem (if A + C = B with the
      three polynomials pairwise coprime, not all constant, then each degree
      is at most deg rad(ABC) - 1) confines all solutions of p + q = 1 to an
      explicit exponent box;
    * imaginary quadratic rings whose group is torsion x <g> with |N(g)| > 1:
      combining the ultrametric valuation at g with the trace/norm inequality
      Tr(p)^2 <= 4 N(p) pins the exponent of g to a tiny interval;
    * real quadratic rings with G = <u, -1> for a fundamental-unit power u:
      1 - p must again be a unit, forcing |Tr(u^k)| <= 3, and the trace
      sequence provably escapes that bound;
    * localizations ZZ[1/p]: the p-adic valuation argument.

Everything else reports its fun-set as ``VerifiedOnly`` (each listed element
checked fundamental, closure under associates checked) or demands explicit
bounds.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional

import sympy as sp

from .exactalg import (
    GF,
    GF2FunctionField,
    FunctionField,
    NotInvertible,
    NumberRing,
    ProductRing,
    QuotientRing,
    RationalRing,
    factor_over_basis,
)
from .limits import current_limits

_CLOSURE_CAP = 200_000


class PFError(Exception):
    pass


class UndecidableWithStrategy(PFError):
    """The registered membership strategy can certify neither yes nor no."""


class NotFundamental(PFError):
    pass


class MissingBounds(PFError):
    """fun-set enumeration over an infinite group needs a candidate region."""


class ElementNotInGroup(PFError):
    pass


class ImageOutsideGroup(PFError):
    pass


# ---------------------------------------------------------------------------
# integer lattice membership (exponent vectors of subgroup generators)
# ---------------------------------------------------------------------------

def _in_lattice(gens: list, v: list) -> bool:
    """Is integer vector v in the lattice spanned by gens (integer Gauss)."""
    if not any(v):
        return True
    if not gens:
        return False
    rows = [list(g) for g in gens]
    v = list(v)
    n = len(v)
    col = 0
    for j in range(n):
        pivots = [r for r in rows if r[j] != 0]
        if not pivots:
            if v[j] != 0:
                return False
            continue
        # reduce all rows to a single nonzero entry in column j via gcd steps
        while True:
            pivots = sorted((r for r in rows if r[j] != 0), key=lambda r: abs(r[j]))
            if len(pivots) <= 1:
                break
            a, b = pivots[0], pivots[1]
            q = b[j] // a[j]
            for t in range(n):
                b[t] -= q * a[t]
        piv = next((r for r in rows if r[j] != 0), None)
        if piv is None:
            if v[j] != 0:
                return False
            continue
        if v[j] % piv[j] != 0:
            return False
        q = v[j] // piv[j]
        for t in range(n):
            v[t] -= q * piv[t]
        rows = [r for r in rows if r is not piv and any(r)]
        col += 1
    return not any(v)


# ---------------------------------------------------------------------------
# the partial field
# ---------------------------------------------------------------------------

class PartialField:
    """(ring, generators) with a registered membership strategy.

    ``generators`` are payloads of the underlying ring; the group is
    ``< generators union {-1} >``.
    """

    def __init__(self, ring, generators, strategy, name=None, unit_rule=None,
                 components=None, hom_symbols=None, hom_relations=(),
                 fun_certificate=None, valuation=None, all_units=False):
        self.ring = ring
        self.generators = tuple(generators)
        self.strategy = strategy
        self.name = name or f"PF({ring!r})"
        self.unit_rule = unit_rule
        self.components = components          # for componentwise products
        self.hom_symbols = tuple(hom_symbols) if hom_symbols is not None else tuple(ring.symbols)
        self.hom_relations = tuple(hom_relations)  # expr strings that must vanish
        self.fun_certificate = fun_certificate
        self.valuation = valuation            # additive group hom G -> ZZ, or None
        self.all_units = all_units            # G = all units (fields)
        self._group = None                    # finite closure cache
        self._basis = None                    # prime_basis data
        self._lattice = None
        if strategy == "finite":
            self._group = self._close_group()
        elif strategy == "prime_basis":
            self._basis, self._lattice = self._build_basis()

    # -- construction helpers -------------------------------------------------

    def _close_group(self):
        ring = self.ring
        if self.all_units and ring.finite:
            elems = {ring.key(e): e for e in ring.elements() if ring.is_unit(e)}
            return elems
        seed = [ring.one(), ring.neg(ring.one())]
        for g in self.generators:
            seed.append(g)
            seed.append(ring.inv(g))
        out = {}
        frontier = list(seed)
        muls = seed[1:]
        while frontier:
            e = frontier.pop()
            k = ring.key(e)
            if k in out:
                continue
            out[k] = e
            if len(out) > _CLOSURE_CAP or len(str(k)) > 2000:
                raise UndecidableWithStrategy(f"group closure of {self.name} exceeds cap")
            for m in muls:
                frontier.append(ring.mul(e, m))
        return out

    def _build_basis(self):
        """Atoms underlying the generators plus the exponent lattice."""
        ring = self.ring
        if isinstance(ring, RationalRing):
            atoms = sorted({p for g in self.generators
                            for p in _int_atoms(g)})
            atoms = [Fraction(p) for p in atoms]
        elif isinstance(ring, FunctionField):
            atoms = []
            for g in self.generators:
                for a in _poly_atoms(ring, g):
                    if not any(ring.eq(a, b) for b in atoms):
                        atoms.append(a)
        elif isinstance(ring, GF2FunctionField):
            atoms = []
            for g in self.generators:
                c, factors = g[0].factor_list()
                for f, _ in factors:
                    pay = (f, ring._poly(1))
                    if not any(ring.eq(pay, b) for b in atoms):
                        atoms.append(pay)
        else:
            raise TypeError(f"prime_basis unsupported over {ring!r}")
        lattice = []
        for g in self.generators:
            got = factor_over_basis(ring, g, atoms)
            if got is None:
                raise ElementNotInGroup(f"generator {ring.show(g)} escapes its own basis")
            lattice.append(list(got[1]))
        return atoms, lattice

    # -- membership -----------------------------------------------------------

    def contains(self, e) -> bool:
        """Is e an element of the partial field (the group, or zero)?"""
        ring = self.ring
        if ring.is_zero(e):
            return True
        if self.strategy == "finite":
            return ring.key(e) in self._group
        if self.strategy == "prime_basis":
            got = factor_over_basis(ring, e, self._basis)
            if got is None:
                return False
            return _in_lattice(self._lattice, list(got[1]))
        if self.strategy == "unit_rule":
            return self.unit_rule(self, e)
        if self.strategy == "componentwise":
            return all(not pf.ring.is_zero(x) and pf.contains(x)
                       for pf, x in zip(self.components, e))
        raise UndecidableWithStrategy(self.strategy)

    def is_unit_element(self, e) -> bool:
        return not self.ring.is_zero(e) and self.contains(e)

    def group_elements(self) -> Optional[list]:
        """All of G if finite and computable, else None."""
        if self._group is not None:
            return list(self._group.values())
        if self.strategy == "componentwise":
            comps = [pf.group_elements() for pf in self.components]
            if any(c is None for c in comps):
                return None
            return [tuple(t) for t in itertools.product(*comps)]
        try:
            self._group = self._close_group()
        except (UndecidableWithStrategy, NotInvertible):
            return None
        return list(self._group.values())

    # -- conveniences ---------------------------------------------------------

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def parse(self, text: str):
        return self.ring.parse(text)

    def show(self, e) -> str:
        return self.ring.show(e)

    def key(self, e):
        return self.ring.key(e)

    def eq(self, a, b) -> bool:
        return self.ring.eq(a, b)

    def same_group(self, other: "PartialField", probe=()) -> bool:
        """Equality as partial fields: same ring object and mutually
        contained generators."""
        if self.ring is not other.ring:
            return False
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# associates and fun-sets
# ---------------------------------------------------------------------------

def associates(pf: PartialField, p) -> list:
    """The orbit {p, 1-p, 1/(1-p), p/(p-1), (p-1)/p, 1/p}; {0,1} collapses."""
    r = pf.ring
    one = r.one()
    q = r.sub(one, p)
    if not pf.contains(q):
        raise NotFundamental(f"{r.show(p)} is not fundamental in {pf.name}")
    if r.is_zero(p) or r.is_zero(q):
        return [r.zero(), one]
    vals = [p, q, r.inv(q), r.neg(r.mul(p, r.inv(q))),
            r.neg(r.mul(q, r.inv(p))), r.inv(p)]
    out, seen = [], set()
    for v in vals:
        k = r.key(v)
        if k not in seen:
            seen.add(k)
            out.append(v)
    return out


def assoc_closure(pf: PartialField, seeds: Iterable) -> list:
    """{0,1} union the associate orbits of the seeds."""
    r = pf.ring
    out, seen = [], set()
    for v in [r.zero(), r.one()] + [w for s in seeds for w in associates(pf, s)]:
        k = r.key(v)
        if k not in seen:
            seen.add(k)
            out.append(v)
    return out


class FunSet:
    """The fundamental elements of a partial field, with a completeness flag."""

    def __init__(self, pf: PartialField, elements, completeness: tuple):
        self.pf = pf
        self.completeness = completeness  # ("Proven", why) or ("VerifiedOnly", why)
        ring = pf.ring
        dedup = {}
        for e in elements:
            dedup.setdefault(ring.key(e), e)
        self.elements = sorted(dedup.values(), key=lambda e: (len(ring.show(e)), ring.show(e)))
        self._keys = set(dedup)

    def __contains__(self, e):
        return self.pf.ring.key(e) in self._keys

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def proven(self):
        return self.completeness[0] == "Proven"

    def shows(self):
        return [self.pf.show(e) for e in self.elements]

    def check_closed(self):
        """Associate closure + the p <-> 1-p symmetry; raises on violation."""
        r = self.pf.ring
        for p in self.elements:
            for q in associates(self.pf, p):
                if q not in self:
                    raise PFError(f"fun-set of {self.pf.name} not associate-closed at {r.show(p)}")
        return True


def _int_atoms(fr: Fraction):
    out = set()
    for n in (abs(fr.numerator), fr.denominator):
        d = 2
        while d * d <= n:
            while n % d == 0:
                out.add(d)
                n //= d
            d += 1
        if n > 1:
            out.add(n)
    return out


def _poly_atoms(ring: FunctionField, g):
    num, den = sp.fraction(ring.canon(g))
    out = []
    for part in (num, den):
        if part.is_Rational:
            if abs(part) != 1:
                raise ElementNotInGroup(f"rational content {part} has no polynomial atom")
            continue
        _, factors = sp.factor_list(part, *ring.syms, domain="QQ")
        for f, _ in factors:
            c, prim = sp.Poly(f, *ring.syms, domain="QQ").primitive()
            if prim.LC() < 0:
                prim = -prim
            out.append(ring.canon(prim.as_expr()))
    return out


# -- candidate regions -------------------------------------------------------

def _mason_candidates(pf: PartialField):
    """Exponent box from the Mason-Stothers degree bound (univariate, char 0)."""
    ring = pf.ring
    basis = pf._basis
    degs = [sp.Poly(b, *ring.syms, domain="QQ").total_degree() for b in basis]
    bound = max(1, sum(degs) - 1)
    ranges = [range(-(bound // d), bound // d + 1) for d in degs]
    out = []
    for vec in itertools.product(*ranges):
        pos = sum(max(e, 0) * d for e, d in zip(vec, degs))
        neg = sum(max(-e, 0) * d for e, d in zip(vec, degs))
        if pos > bound or neg > bound:
            continue
        p = ring.one()
        for b, e in zip(basis, vec):
            if e:
                p = ring.mul(p, ring.pow(b, e))
        out.append(p)
        out.append(ring.neg(p))
    return out, ("Proven", "Mason-Stothers degree bound on p + (1-p) = 1")


def _imag_quad_candidates(pf: PartialField, torsion_exprs, g_expr, n: int):
    """Torsion x <g> groups in imaginary quadratic rings.

    If p = u*g^k with |N(g)| = n > 1 and both p and 1-p lie in the group:
    the valuation at g forces N(1-p) = 1 when k > 0 (so Tr(p) = N(p), and
    Tr^2 <= 4N gives n^k <= 4) and N(1-p) = N(p) when k < 0 (so Tr(p) = 1,
    and 1 <= 4 n^k).
    """
    ring = pf.ring
    g = ring.parse(g_expr)
    torsion = [ring.parse(t) for t in torsion_exprs]
    torsion = [t for pair in torsion for t in (pair, ring.neg(pair))]
    k_hi = 0
    while n ** (k_hi + 1) <= 4:
        k_hi += 1
    k_lo = 0
    while 4 * Fraction(1, n ** (k_lo + 1)) >= 1:
        k_lo += 1
    out = []
    for k in range(-k_lo, k_hi + 1):
        gk = ring.pow(g, k)
        for u in torsion:
            out.append(ring.mul(u, gk))
    return out, ("Proven", "two-place escape bound (valuation at g plus Tr^2 <= 4N)")


def _real_quad_candidates(pf: PartialField, u_expr):
    """G = <u, -1> with u a unit of a real quadratic ring, |N(u)| = 1.

    1 - p must be a unit too, so N(1-p) = 1 - Tr(p) + N(p) is +-1 with
    N(p) = +-1, forcing |Tr(u^k)| <= 3.  The trace sequence satisfies the
    unit's own quadratic recurrence; once two consecutive terms pass the
    bound with matching signs it escapes for good (and symmetrically for
    negative exponents, whose traces agree up to sign).
    """
    ring = pf.ring
    u = ring.parse(u_expr)
    assert abs(ring.norm(u)) == 1
    traces = []
    k = 0
    while True:
        t = _trace(ring, ring.pow(u, k))
        traces.append(t)
        if k >= 2 and abs(traces[-1]) > 3 and abs(traces[-2]) > 3 and traces[-1] * traces[-2] > 0 and abs(traces[-1]) > abs(traces[-2]):
            break
        k += 1
        assert k < 64, "trace sequence failed to escape"
    kmax = max([j for j, t in enumerate(traces) if abs(t) <= 3], default=0)
    out = []
    for j in range(-kmax, kmax + 1):
        p = ring.pow(u, j)
        out.append(p)
        out.append(ring.neg(p))
    return out, ("Proven", "unit-trace escape bound |Tr(u^k)| <= 3")


def _trace(ring: NumberRing, a) -> Fraction:
    assert ring.deg == 2
    # Tr(a0 + a1 s) = 2 a0 + a1 Tr(s); Tr(s) = -minpoly[1]
    return 2 * a[0] + a[1] * Fraction(-ring.minpoly[1])


def _rational_prime_candidates(pf: PartialField, p0: int):
    """G = <p0, -1> in ZZ[1/p0].  For p = +-p0^k with k > 0, the p0-adic
    valuation of 1-p is 0, so 1-p = +-1 and p is 0 or 2; for k < 0, 1-p has
    valuation k, so 1 = p +- p0^k which forces p0^k (1 +- 1) = 1, i.e.
    p0 = 2, k = -1."""
    out = [Fraction(1), Fraction(-1), Fraction(p0), Fraction(-p0),
           Fraction(1, p0), Fraction(-1, p0)]
    if p0 == 2:
        out.append(Fraction(2))
    return out, ("Proven", f"{p0}-adic valuation pins the exponent to [-1, 1]")


def _scan_candidates(pf: PartialField, box: int):
    ring = pf.ring
    basis = pf._basis
    out = []
    for vec in itertools.product(range(-box, box + 1), repeat=len(basis)):
        p = ring.one()
        for b, e in zip(basis, vec):
            if e:
                p = ring.mul(p, ring.pow(b, e))
        out.append(p)
        out.append(ring.neg(p))
    return out, ("VerifiedOnly", f"exponent scan |e_i| <= {box}; no completeness claim")


def hom_bound_candidates(pf: PartialField, lines):
    """Candidate region from verified homomorphisms into partial fields with
    proven-finite fun-sets carrying an integer valuation.

    Each line is (hom, target FunSet).  The valuation v of the target turns
    the hom into a linear constraint sum(c_i e_i) in [min v(fun*), max
    v(fun*)] on the exponent vector of a fundamental element; the candidate
    box is the integer solution set, enumerated by constraint propagation.
    """
    ring = pf.ring
    gens = pf.generators
    cons = []
    for h, fs in lines:
        if not h.verify():
            raise ImageOutsideGroup(f"bound line hom {h.name} fails verification")
        if not fs.proven:
            raise MissingBounds("bound line needs a proven fun-set")
        v = fs.pf.valuation
        coeffs = [v(h.apply(g)) for g in gens]
        vals = [v(e) for e in fs.elements if not fs.pf.ring.is_zero(e)]
        cons.append((coeffs, min(vals), max(vals)))

    n = len(gens)
    sols = []

    def extend(fixed):
        if len(fixed) == n:
            sols.append(tuple(fixed))
            return
        i = len(fixed)
        # tightest interval for e_i over constraints where later vars are absent
        lo, hi = None, None
        for coeffs, clo, chi in cons:
            if coeffs[i] == 0 or any(coeffs[j] != 0 for j in range(i + 1, n)):
                continue
            part = sum(c * e for c, e in zip(coeffs, fixed))
            a, b = clo - part, chi - part
            c = coeffs[i]
            cand = sorted((Fraction(a, c), Fraction(b, c)))
            ilo, ihi = -(-cand[0].numerator // cand[0].denominator), cand[1].numerator // cand[1].denominator
            lo = ilo if lo is None else max(lo, ilo)
            hi = ihi if hi is None else min(hi, ihi)
        if lo is None:
            raise MissingBounds(f"generator {i} not pinned by the bound lines")
        for e in range(lo, hi + 1):
            partial = list(fixed) + [e]
            ok = True
            for coeffs, clo, chi in cons:
                if any(coeffs[j] != 0 for j in range(len(partial), n)):
                    continue
                s = sum(c * x for c, x in zip(coeffs, partial))
                if not clo <= s <= chi:
                    ok = False
                    break
            if ok:
                extend(partial)

    extend([])
    out = []
    for vec in sols:
        p = ring.one()
        for g, e in zip(gens, vec):
            if e:
                p = ring.mul(p, ring.pow(g, e))
        out.append(p)
        out.append(ring.neg(p))
    return out, ("Proven", "valuation windows through verified homomorphisms")


def fun_enumerate(pf: PartialField, bounds=None) -> FunSet:
    """All fundamental elements of pf.

    ``bounds`` may be a list of (hom, proven FunSet) lines; otherwise the
    partial field's registered certificate supplies the candidate region.
    """
    ring = pf.ring
    if bounds is not None:
        cands, flag = hom_bound_candidates(pf, bounds)
    else:
        cands, flag = _candidates(pf)
    out = [ring.zero(), ring.one()]
    for p in cands:
        if pf.contains(p) and pf.contains(ring.sub(ring.one(), p)):
            out.append(p)
    fs = FunSet(pf, out, flag)
    fs.check_closed()
    return fs


def _candidates(pf: PartialField):
    cert = pf.fun_certificate
    if cert is None:
        group = pf.group_elements()
        if group is None:
            raise MissingBounds(f"no fun-set certificate for {pf.name}")
        return group, ("Proven", "finite group scan")
    kind = cert[0]
    if kind == "mason":
        return _mason_candidates(pf)
    if kind == "imag_quad":
        return _imag_quad_candidates(pf, *cert[1:])
    if kind == "real_quad_unit":
        return _real_quad_candidates(pf, cert[1])
    if kind == "rational_prime":
        return _rational_prime_candidates(pf, cert[1])
    if kind == "scan":
        return _scan_candidates(pf, cert[1])
    if kind == "recorded":
        ring = pf.ring
        seeds = [ring.parse(t) for t in cert[1]]
        return ([w for s in seeds for w in associates(pf, s)],
                ("VerifiedOnly", "recorded catalog list; membership and closure re-verified"))
    raise MissingBounds(f"unknown certificate {kind!r}")


def fun_product(f1: FunSet, f2: FunSet, pf_prod: PartialField) -> FunSet:
    """fun(P1 x P2) = {(0,0), (1,1)} u (fun1 \\ {0,1}) x (fun2 \\ {0,1}).

    A pair is fundamental iff both coordinates are and the zero patterns of
    (p, 1-p) agree componentwise."""
    r1, r2 = f1.pf.ring, f2.pf.ring
    mid1 = [e for e in f1 if not (r1.is_zero(e) or r1.eq(e, r1.one()))]
    mid2 = [e for e in f2 if not (r2.is_zero(e) or r2.eq(e, r2.one()))]
    ring = pf_prod.ring
    elems = [ring.zero(), ring.one()] + [(a, b) for a in mid1 for b in mid2]
    comp = ("Proven" if f1.proven and f2.proven else "VerifiedOnly",
            "componentwise zero-pattern rule")
    return FunSet(pf_prod, elems, comp)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class PFHom:
    """A partial-field homomorphism given by images of the ring symbols.

    ``images`` maps each symbol name of the source ring to a target payload;
    sources whose ring is generated by 1 (ZZ localizations) need no images.
    Application is evaluation; verification checks that the defining
    relations vanish, that group generators land in the target group, and
    that probed fundamental sums are preserved.
    """

    def __init__(self, src: PartialField, dst: PartialField, images: dict = None, name=None):
        self.src = src
        self.dst = dst
        self.images = dict(images or {})
        self.name = name or f"{src.name}->{dst.name}"
        self.failure = None

    # -- evaluation -----------------------------------------------------------

    def _frac(self, fr: Fraction):
        d = self.dst.ring
        num = d.from_int(fr.numerator)
        if fr.denominator == 1:
            return num
        return d.mul(num, d.inv(d.from_int(fr.denominator)))

    def apply(self, payload):
        ring, d = self.src.ring, self.dst.ring
        if isinstance(ring, RationalRing):
            return self._frac(payload)
        if isinstance(ring, GF):
            if ring.k == 1:
                return d.from_int(payload)
            img = self.images["a"]
            acc = d.zero()
            for j, c in enumerate(ring._decode(payload)):
                acc = d.add(acc, d.mul(d.from_int(c), d.pow(img, j)))
            return acc
        if isinstance(ring, NumberRing):
            img = self.images[ring.symbol]
            acc = d.zero()
            for j, c in enumerate(payload):
                if c:
                    acc = d.add(acc, d.mul(self._frac(c), d.pow(img, j)))
            return acc
        if isinstance(ring, FunctionField):
            num, den = sp.fraction(ring.canon(payload))
            return d.mul(self._eval_sympy(num), d.inv(self._eval_sympy(den)))
        if isinstance(ring, GF2FunctionField):
            n, p = payload
            return d.mul(self._eval_gf2(n), d.inv(self._eval_gf2(p)))
        if isinstance(ring, QuotientRing):
            vals = [self.images[nm] for nm in ring.polyring.names]
            return payload.evaluate(d, vals)
        raise TypeError(f"cannot map payloads of {ring!r}")

    def _eval_sympy(self, expr):
        d = self.dst.ring
        syms = self.src.ring.syms
        if expr.is_Rational:
            return self._frac(Fraction(expr.p, expr.q))
        poly = sp.Poly(expr, *syms, domain="QQ")
        acc = d.zero()
        for mono, coeff in poly.terms():
            t = self._frac(Fraction(coeff.p, coeff.q))
            for s, e in zip(syms, mono):
                if e:
                    t = d.mul(t, d.pow(self.images[str(s)], e))
            acc = d.add(acc, t)
        return acc

    def _eval_gf2(self, poly):
        d = self.dst.ring
        img = self.images[self.src.ring.symbol]
        acc = d.zero()
        for e, c in enumerate(reversed(poly.all_coeffs())):
            if c % 2:
                acc = d.add(acc, d.pow(img, e))
        return acc

    # -- verification ----------------------------------------------------------

    def verify(self, probes=()) -> bool:
        src, dst = self.src, self.dst
        self.failure = None
        try:
            for name in src.hom_symbols:
                if name not in self.images:
                    self.failure = f"no image for symbol {name}"
                    return False
            for text in src.hom_relations:
                val = _eval_with_images(src, dst, self.images, text)
                if not dst.ring.is_zero(val):
                    self.failure = f"relation {text} does not vanish"
                    return False
            for g in src.generators:
                img = self.apply(g)
                if dst.ring.is_zero(img) or not dst.contains(img):
                    self.failure = f"generator image {dst.show(img)} outside target group"
                    return False
            one = src.ring.one()
            probe_list = list(probes)
            if not probe_list:
                probe_list = [g for g in src.generators
                              if src.contains(src.ring.sub(one, g))]
            for p in probe_list:
                q = src.ring.sub(one, p)
                fp, fq = self.apply(p), self.apply(q)
                if not dst.contains(fp) or not dst.contains(fq):
                    self.failure = f"fundamental probe {src.show(p)} leaves the target"
                    return False
                if not dst.ring.eq(dst.ring.add(fp, fq), dst.ring.one()):
                    self.failure = f"additivity fails on probe {src.show(p)}"
                    return False
            return True
        except (NotInvertible, ZeroDivisionError) as exc:
            self.failure = f"arithmetic failure: {exc}"
            return False

    def compose(self, other: "PFHom") -> "PFHom":
        """self o other (apply other first)."""
        assert other.dst is self.src or other.dst.ring is self.src.ring
        images = {nm: self.apply(img) for nm, img in other.images.items()}
        return PFHom(other.src, self.dst, images, name=f"{other.name};{self.name}")

    def __repr__(self):
        return f"PFHom({self.name})"


class _ImageView:
    """Ring adapter resolving symbols through a hom's image table."""

    def __init__(self, ring, images):
        self._ring = ring
        self._images = images

    def __getattr__(self, name):
        return getattr(self._ring, name)

    def atom(self, name):
        if name in self._images:
            return self._images[name]
        return self._ring.atom(name)


def _eval_with_images(src: PartialField, dst: PartialField, images, text: str):
    from .exactalg import parse_expr

    return parse_expr(text, _ImageView(dst.ring, images))


def hom_enumerate(src: PartialField, dst: PartialField, probes=()) -> list:
    """All verified homs src -> dst for finite dst groups, in canonical order."""
    group = dst.group_elements()
    if group is None:
        raise UndecidableWithStrategy(f"target {dst.name} has no finite group enumeration")
    group = sorted(group, key=dst.ring.show)
    syms = src.hom_symbols
    out = []
    for combo in itertools.product(group, repeat=len(syms)):
        h = PFHom(src, dst, dict(zip(syms, combo)))
        if h.verify(probes):
            out.append(h)
    return out


# ---------------------------------------------------------------------------
# products and generated sub-partial fields
# ---------------------------------------------------------------------------

def product_pf(pfs: list, name=None) -> PartialField:
    """Direct product: product ring, componentwise group."""
    flat = []
    for pf in pfs:
        if pf.strategy == "componentwise":
            flat.extend(pf.components)
        else:
            flat.append(pf)
    ring = ProductRing([pf.ring for pf in flat])
    gens = []
    ones = [pf.ring.one() for pf in flat]
    for i, pf in enumerate(flat):
        for g in list(pf.generators) + [pf.ring.neg(pf.ring.one())]:
            vec = list(ones)
            vec[i] = g
            gens.append(tuple(vec))
    return PartialField(ring, gens, "componentwise",
                        name=name or "x".join(pf.name for pf in flat),
                        components=flat)


def generated_subfield(pf: PartialField, seeds, name=None) -> PartialField:
    """P[S]: same ring, group <S u {-1}>."""
    for s in seeds:
        if pf.ring.is_zero(s) or not pf.contains(s):
            raise ElementNotInGroup(pf.show(s))
    sub_name = name or f"{pf.name}[{','.join(pf.show(s) for s in seeds)}]"
    if pf.ring.finite:
        return PartialField(pf.ring, seeds, "finite", name=sub_name)
    if isinstance(pf.ring, (RationalRing, FunctionField, GF2FunctionField)):
        return PartialField(pf.ring, seeds, "prime_basis", name=sub_name)
    return PartialField(pf.ring, seeds, "finite", name=sub_name)


def induced_check(pf: PartialField, sub: PartialField) -> Optional[bool]:
    """Is sub induced in pf, i.e. G_sub = G_pf intersect R'' for the subring
    R'' generated by sub's generators?  Decided for finite rings; None
    (unknown) otherwise."""
    ring = pf.ring
    if not ring.finite:
        return None
    seed = [ring.zero(), ring.one(), ring.neg(ring.one())] + list(sub.generators)
    closure = {}
    frontier = list(seed)
    while frontier:
        e = frontier.pop()
        k = ring.key(e)
        if k in closure:
            continue
        closure[k] = e
        for other in list(closure.values()):
            frontier.append(ring.add(e, other))
            frontier.append(ring.mul(e, other))
    for e in closure.values():
        if pf.is_unit_element(e) and not sub.contains(e):
            return False
    return True
