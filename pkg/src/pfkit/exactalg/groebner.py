"""Strong Groebner bases over the integers.

Buchberger's procedure extended to ZZ coefficients: alongside the classical
S-polynomials the pair queue also produces G-polynomials (Bezout combinations
of the leading coefficients), and the division algorithm reduces a term by a
basis element when the leading monomial divides it, taking canonical Euclidean
remainders ``0 <= r < lc``.  The reduced basis with positive leading
coefficients is unique, so normal forms are canonical ring-element
representations for quotient rings ZZ[x..]/I.

On top of the core loop: ideal saturation by an element (one auxiliary
inverse variable + elimination), subring membership via tag variables, and
lazy inversion of units modulo an ideal.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Optional

from ..limits import Limits, current_limits
from .zpoly import PolyRing, TermOrder, ZPoly, mono_divides, mono_lcm, mono_mul, mono_quo


def _ext_gcd(a: int, b: int):
    """Return (d, u, v) with u*a + v*b = d = gcd(a, b), d > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def normalize_sign(f: ZPoly, order: TermOrder) -> ZPoly:
    if f.is_zero():
        return f
    _, c = f.lead(order)
    return -f if c < 0 else f


def reduce_poly(f: ZPoly, G: list, order: TermOrder, limits: Optional[Limits] = None) -> ZPoly:
    """Normal form of f modulo G (strong division over ZZ).

    Scans terms from the top; a term a*x^m is rewritten by g whenever
    lm(g) | x^m, replacing a with its canonical remainder mod lc(g).
    """
    if not G:
        return f
    limits = limits or current_limits()
    leads = [(g.lead(order), g) for g in G if not g.is_zero()]
    work = f
    done_terms = {}
    steps = 0
    while work.terms:
        m = max(work.terms, key=order.key)
        a = work.terms[m]
        progressed = True
        while progressed and a:
            progressed = False
            for (lm, lc), g in leads:
                if mono_divides(lm, m):
                    q, r = divmod(a, lc)
                    if q:
                        work = work - g.mul_term(mono_quo(lm, m), q)
                        a = work.terms.get(m, 0)
                        progressed = True
                        steps += 1
                        if steps > limits.gb_poly_terms:
                            raise_limit(limits, "gb_poly_terms")
                        if not a:
                            break
        if a:
            done_terms[m] = a
            work = ZPoly(work.ring, {mm: cc for mm, cc in work.terms.items() if mm != m})
    return ZPoly(f.ring, done_terms)


def raise_limit(limits, field):
    limits.charge(getattr(limits, field) + 1, field)


def s_poly(f: ZPoly, g: ZPoly, order: TermOrder) -> ZPoly:
    (mf, cf), (mg, cg) = f.lead(order), g.lead(order)
    d = gcd(cf, cg)
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_quo(mf, lcm), cg // d) - g.mul_term(mono_quo(mg, lcm), cf // d)


def g_poly(f: ZPoly, g: ZPoly, order: TermOrder) -> ZPoly:
    (mf, cf), (mg, cg) = f.lead(order), g.lead(order)
    d, u, v = _ext_gcd(cf, cg)
    if d == abs(cf) or d == abs(cg):
        return f.ring.zero()  # one leading coeff divides the other: S-poly suffices
    lcm = mono_lcm(mf, mg)
    return f.mul_term(mono_quo(mf, lcm), u) + g.mul_term(mono_quo(mg, lcm), v)


def groebner(gens: Iterable[ZPoly], order: TermOrder, limits: Optional[Limits] = None) -> list:
    """Reduced strong Groebner basis over ZZ for the given order."""
    limits = limits or current_limits()
    G = []
    for f in gens:
        if not f.is_zero():
            G.append(normalize_sign(f, order))
    if not G:
        return []
    # seed: interreduce the input a little to keep the pair queue sane
    G2 = []
    for f in G:
        f = reduce_poly(f, G2, order, limits)
        if not f.is_zero():
            G2.append(normalize_sign(f, order))
    G = G2

    import heapq

    leads = [g.lead(order) for g in G]
    heap = []

    def push_pairs(k):
        mk, _ = leads[k]
        for i in range(k):
            mi, _ = leads[i]
            lcm = mono_lcm(mi, mk)
            heapq.heappush(heap, (sum(lcm), order.key(lcm), i, k))

    for k in range(len(G)):
        push_pairs(k)

    processed = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        processed += 1
        limits.charge(processed, "gb_pairs")
        f, g = G[i], G[j]
        (mf, cf), (mg, cg) = leads[i], leads[j]
        # product criterion: with coprime leading monomials and coprime leading
        # coefficients the S-polynomial reduces to zero; the G-polynomial must
        # still be processed (e.g. <2x, 3y> needs xy in the strong basis)
        coprime_mono = all(a == 0 or b == 0 for a, b in zip(mf, mg))
        skip_s = coprime_mono and gcd(cf, cg) == 1
        candidates = (g_poly(f, g, order),) if skip_s else (s_poly(f, g, order), g_poly(f, g, order))
        for h in candidates:
            if h.is_zero():
                continue
            h = reduce_poly(h, G, order, limits)
            if h.is_zero():
                continue
            h = normalize_sign(h, order)
            G.append(h)
            leads.append(h.lead(order))
            push_pairs(len(G) - 1)

    return _reduce_basis(G, order, limits)


def _reduce_basis(G: list, order: TermOrder, limits: Limits) -> list:
    # minimalise: drop g whose leading term is a multiple of another's
    G = [g for g in G if not g.is_zero()]
    keep = []
    leads = [g.lead(order) for g in G]
    for i, g in enumerate(G):
        mi, ci = leads[i]
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            mj, cj = leads[j]
            if mono_divides(mj, mi) and ci % cj == 0:
                # ties: keep the earlier one
                if (mj, cj) == (mi, ci) and j > i:
                    continue
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # full interreduction for canonical normal forms
    changed = True
    basis = keep
    while changed:
        changed = False
        out = []
        for i, g in enumerate(basis):
            rest = out + basis[i + 1 :]
            r = reduce_poly(g, rest, order, limits)
            if r.is_zero():
                changed = True
                continue
            r = normalize_sign(r, order)
            if r.terms != g.terms:
                changed = True
            out.append(r)
        basis = out
    return sorted(basis, key=lambda g: order.key(g.lead(order)[0]))


def contains_one(G: list, order: TermOrder = None) -> bool:
    return any(g.is_const() and abs(g.const_value()) == 1 for g in G)


def normal_form(f: ZPoly, G: list, order: TermOrder, limits: Optional[Limits] = None) -> ZPoly:
    return reduce_poly(f, G, order, limits)


# ---------------------------------------------------------------------------
# elimination-based services
# ---------------------------------------------------------------------------

def eliminate(gens: list, ring: PolyRing, drop: list, limits: Optional[Limits] = None) -> list:
    """Generators of the elimination ideal removing the named variables.

    Returns polynomials in the smaller ring (variables = ring minus drop).
    """
    dropset = set(drop)
    keep_names = [nm for nm in ring.names if nm not in dropset]
    big = PolyRing(list(drop) + keep_names)
    order = TermOrder(big.n, block=len(drop))
    lifted = [ring.lift(g, big) for g in gens]
    G = groebner(lifted, order, limits)
    small = PolyRing(keep_names)
    out = []
    for g in G:
        if all(not any(m[i] for i in range(len(drop))) for m in g.terms):
            out.append(big.project(g, small))
    return out


def saturate(gens: list, ring: PolyRing, f: ZPoly, limits: Optional[Limits] = None) -> list:
    """Generators of I : f^infinity, in the same ring."""
    aux = "_t_sat"
    big = ring.extend([aux])
    # put the auxiliary variable in front for the elimination order
    front = PolyRing((aux,) + ring.names)
    t = front.var(aux)
    lifted = [ring.lift(g, front) for g in gens]
    lifted.append(ring.lift(f, front) * t - 1)
    order = TermOrder(front.n, block=1)
    G = groebner(lifted, order, limits)
    out = []
    for g in G:
        if all(m[0] == 0 for m in g.terms):
            out.append(front.project(g, ring))
    return out


def saturate_many(gens: list, ring: PolyRing, fs: list, limits: Optional[Limits] = None) -> list:
    """Iterated saturation by each f (with a product-first shortcut)."""
    if not fs:
        return gens
    prod = ring.one()
    for f in fs:
        prod = prod * f
    if len(prod.terms) <= 64:
        gens = saturate(gens, ring, prod, limits)
        return gens
    for f in sorted(fs, key=lambda p: (p.total_degree(), len(p.terms))):
        gens = saturate(gens, ring, f, limits)
        order = TermOrder(ring.n)
        if contains_one(groebner(gens, order, limits), order):
            break
    return gens


def in_subring(igens: list, ring: PolyRing, subgens: list, elem: ZPoly,
               limits: Optional[Limits] = None):
    """Is elem (mod the ideal) in the ZZ-subalgebra generated by subgens?

    Tag-variable test: compute a Groebner basis of I + <t_i - g_i> for an
    order eliminating the ambient variables; elem lies in the subalgebra iff
    its normal form involves only tag variables.  Returns (bool, witness)
    where witness is the normal form over the tags when membership holds.
    """
    tags = [f"_tag{i}" for i in range(len(subgens))]
    big = PolyRing(ring.names + tuple(tags))
    order = TermOrder(big.n, block=ring.n)
    lifted = [ring.lift(g, big) for g in igens]
    for i, g in enumerate(subgens):
        lifted.append(big.var(tags[i]) - ring.lift(g, big))
    G = groebner(lifted, order, limits)
    nf = reduce_poly(ring.lift(elem, big), G, order, limits)
    ambient = set(range(ring.n))
    ok = not (nf.support() & ambient)
    return ok, (nf if ok else None)


def invert_mod(igens: list, ring: PolyRing, u: ZPoly, limits: Optional[Limits] = None):
    """Polynomial inverse of u modulo the ideal, or None if not exhibited.

    Adds a top variable w with u*w - 1 and reads off the normal form of w;
    when u is a unit of the quotient the reduced strong basis rewrites w
    into ambient variables.
    """
    aux = "_w_inv"
    front = PolyRing((aux,) + ring.names)
    w = front.var(aux)
    lifted = [ring.lift(g, front) for g in igens]
    lifted.append(ring.lift(u, front) * w - 1)
    order = TermOrder(front.n, block=1)
    G = groebner(lifted, order, limits)
    nf = reduce_poly(w, G, order, limits)
    if 0 in nf.support():
        return None
    return front.project(nf, ring)
