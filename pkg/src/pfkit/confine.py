"""Finite decision procedures around confinement of representations.

A matrix B over a sub-partial field "confines" a matroid M when every
representation of M over the big partial field that displays B (as a minor,
up to scaling) is itself a scaled matrix over the sub-partial field.  This
module provides:

  * the direct check over a finite partial field,
  * the dichotomy check that scans the one- and two-element 3-connected
    extension minors of a displayed minor,
  * a stabilizer check (two independent routes that must agree),
  * the lift construction: a presentation over ZZ generated by one symbol per
    cross ratio of a family of matrices, with all arithmetic relations that
    are certified by the family,
  * the classification of the associate-hexagon quotient rings, and
  * the hydra degeneracy checks (projections of lifted representations onto
    GF(5) coordinates stay pairwise inequivalent).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import catalog
from .exactalg.groebner import groebner, normal_form
from .exactalg.zpoly import PolyRing, TermOrder
from .exactalg.rings import QuotientRing
from .limits import current_limits
from .matroid import Matroid, from_matrix, isomorphic
from .pfield import (PartialField, PFError, UndecidableWithStrategy,
                     induced_check, product_pf)
from .pmatrix import PFMatrix, cross_ratios, minor_contains, scaled_over_check
from .universal import _auto_forest, _bounded_group_rule


class ConfineError(PFError):
    pass


@dataclass
class ConfinementVerdict:
    confined: bool
    witness: object = None     # scaled witness when confined, else the failure

    def __bool__(self):
        return self.confined


@dataclass
class CounterexampleMinor:
    minor: Matroid             # the minor M' whose representation escapes
    base_rep: PFMatrix         # the representation B of N that fails to confine
    matrix: PFMatrix           # a representation of M' containing B, not scaled


# ---------------------------------------------------------------------------
# enumeration of normalized representations
# ---------------------------------------------------------------------------

_REP_CACHE = {}


def all_representations(M: Matroid, pf: PartialField, B=None, limits=None):
    """All forest-normalized pf-matrices A with M = M[A], as PFMatrix.

    Results are memoized per (partial field, matroid, basis): the confinement
    checks revisit the same enumeration many times.
    """
    limits = limits or current_limits()
    group = pf.group_elements()
    if group is None:
        raise ConfineError("enumeration needs a finite partial field")
    ring = pf.ring
    if B is None:
        B = min(M.bases, key=lambda b: tuple(sorted(b)))
    B = frozenset(B)
    cache_key = (id(pf), M.key(), B)
    cached = _REP_CACHE.get(cache_key)
    if cached is not None:
        return list(cached)
    graph = M.fundamental_graph(B)
    rows = tuple(sorted(B))
    cols = tuple(sorted(set(M.ground) - B))
    tree = set(_auto_forest(graph, set(rows)))
    free = sorted(graph - tree)
    conds = []
    for comb in itertools.combinations(M.ground, M.rank):
        Z = frozenset(comb)
        drows = tuple(x for x in rows if x not in Z)
        dcols = tuple(y for y in cols if y in Z)
        syms = frozenset(e for e in free
                         if e[0] in drows and e[1] in set(dcols))
        conds.append((drows, dcols, Z in M.bases, syms))

    one, zero = ring.one(), ring.zero()
    values = {}

    def entry(x, y):
        if (x, y) in tree:
            return one
        if (x, y) in values:
            return values[(x, y)]
        return zero

    def det(drows, dcols):
        if not drows:
            return one
        x, rest = drows[0], drows[1:]
        total = zero
        for j, y in enumerate(dcols):
            a = entry(x, y)
            if ring.is_zero(a):
                continue
            t = ring.mul(a, det(rest, dcols[:j] + dcols[j + 1:]))
            total = ring.add(total, t) if j % 2 == 0 else ring.sub(total, t)
        return total

    for drows, dcols, want, syms in conds:
        if not syms and (not ring.is_zero(det(drows, dcols))) != want:
            return []

    out = []
    nodes = 0

    def emit():
        ents = {}
        for e in graph:
            v = entry(*e)
            if not ring.is_zero(v):
                ents[e] = v
        A = PFMatrix(pf, rows, cols, ents)
        # over a field every matrix qualifies; over a genuine partial field
        # every subdeterminant must stay inside the group
        if pf.all_units or A.det_and_validate("FullPMatrixCheck")[1]:
            out.append(A)

    def dfs(i, assigned):
        nonlocal nodes
        nodes += 1
        limits.charge(nodes, "search_nodes")
        if i == len(free):
            emit()
            return
        e = free[i]
        for val in group:
            if ring.is_zero(val):
                continue
            values[e] = val
            now = assigned | {e}
            if all((not ring.is_zero(det(dr, dc))) == want
                   for dr, dc, want, syms in conds
                   if e in syms and syms <= now):
                dfs(i + 1, now)
            del values[e]

    dfs(0, frozenset())
    _REP_CACHE[cache_key] = tuple(out)
    return out


# ---------------------------------------------------------------------------
# confinement checks
# ---------------------------------------------------------------------------

def _require_induced(pf: PartialField, sub: PartialField):
    verdict = induced_check(pf, sub)
    if verdict is False:
        raise ConfineError(f"{sub.name} is not induced in {pf.name}")
    if verdict is None:
        raise UndecidableWithStrategy(f"cannot certify {sub.name} induced in {pf.name}")


def confines_direct(B: PFMatrix, M: Matroid, pf: PartialField,
                    sub: PartialField, limits=None) -> ConfinementVerdict:
    """Does B confine M: is every pf-representation of M that contains B
    (as a scaled pivot minor) a scaled matrix over sub?"""
    limits = limits or current_limits()
    _require_induced(pf, sub)
    witness = None
    for A in all_representations(M, pf, limits=limits):
        has, _ = minor_contains(A, B, limits)
        if not has:
            continue
        good, w = scaled_over_check(A, sub)
        if not good:
            return ConfinementVerdict(False, CounterexampleMinor(M, B, A))
        witness = w
    return ConfinementVerdict(True, witness)


def _qualifying_minors(N: Matroid, M: Matroid):
    """3-connected minors M' of M with N equal (up to iso) to M'/x, M'\\y, or
    M'/x\\y — together with M itself."""
    seen = {}
    n, m = len(N.ground), len(M.ground)
    for k_extra in (1, 2):
        size = n + k_extra
        if size > m:
            continue
        for kill in itertools.combinations(M.ground, m - size):
            for bits in range(1 << len(kill)):
                con = {e for i, e in enumerate(kill) if bits >> i & 1}
                dele = set(kill) - con
                try:
                    Mp = M.minor(contract=con, delete=dele)
                except Exception:
                    continue
                if Mp.key() in seen or not Mp.is_3connected():
                    continue
                ok = False
                if k_extra == 1:
                    ok = any(isomorphic(Mp.minor(contract={x}), N) is not None
                             for x in Mp.ground) or \
                         any(isomorphic(Mp.minor(delete={y}), N) is not None
                             for y in Mp.ground)
                else:
                    for x, y in itertools.permutations(Mp.ground, 2):
                        if isomorphic(Mp.minor(contract={x}, delete={y}), N) is None:
                            continue
                        if Mp.minor(contract={x}).is_3connected() or \
                                Mp.minor(delete={y}).is_3connected():
                            ok = True
                            break
                if ok:
                    seen[Mp.key()] = Mp
    return list(seen.values())


def sub_representations(N: Matroid, pf: PartialField, sub: PartialField,
                        limits=None):
    """Normalized pf-representations of N that are scaled sub-matrices."""
    out = []
    for A in all_representations(N, pf, limits=limits):
        good, w = scaled_over_check(A, sub)
        if good:
            out.append(w)
    return out


def confinement_finite_check(N: Matroid, M: Matroid, pf: PartialField,
                             sub: PartialField, limits=None) -> ConfinementVerdict:
    """Dichotomy check: N confines M iff every sub-representation of N
    confines M itself and every qualifying 3-connected extension minor."""
    limits = limits or current_limits()
    _require_induced(pf, sub)
    candidates = [M] + _qualifying_minors(N, M)
    witness = None
    for B in sub_representations(N, pf, sub, limits):
        for Mp in candidates:
            v = confines_direct(B, Mp, pf, sub, limits)
            if not v.confined:
                return v
            witness = v.witness or witness
    return ConfinementVerdict(True, witness)


# ---------------------------------------------------------------------------
# stabilizer check (two independent routes)
# ---------------------------------------------------------------------------

def _minor_embedding(N: Matroid, M: Matroid):
    n, m = len(N.ground), len(M.ground)
    for k_con in range(m - n + 1):
        for con in itertools.combinations(M.ground, k_con):
            rest = [e for e in M.ground if e not in con]
            for dele in itertools.combinations(rest, m - n - k_con):
                Mp = M.minor(contract=set(con), delete=set(dele))
                if Mp.rank == N.rank and isomorphic(Mp, N) is not None:
                    return set(con), set(dele)
    raise ConfineError("N is not a minor of M")


def _scaling_class(A: PFMatrix):
    return A.normalize("Auto").key()


def stabilizer_check(N: Matroid, M: Matroid, pf: PartialField,
                     limits=None) -> bool:
    """Does N stabilize M over pf: do equal (up to scaling) restrictions to
    a displayed N-minor force equal representations of M?

    Computed twice — directly over representation pairs, and through the
    confinement of the diagonal inside pf x pf — and the answers must agree.
    """
    limits = limits or current_limits()
    con, dele = _minor_embedding(N, M)
    host = None
    for b in sorted(M.bases, key=lambda b: tuple(sorted(b))):
        if con <= b and not (b & dele):
            host = b
            break
    if host is None:
        raise ConfineError("no basis displays the minor")

    direct = True
    classes = {}
    for A in all_representations(M, pf, B=host, limits=limits):
        rest = A.submatrix([x for x in A.rows if x not in con],
                           [y for y in A.cols if y not in dele])
        rk = _scaling_class(rest)
        ak = _scaling_class(A)
        if classes.setdefault(rk, ak) != ak:
            direct = False
            break

    pf2 = product_pf([pf, pf])
    ring2 = pf2.ring
    diag_gens = [tuple([g, g]) for g in pf.generators]
    diag = PartialField(ring2, diag_gens, "finite", name=f"diag({pf.name})")
    via_product = True
    for B in sub_representations(N, pf2, diag, limits):
        v = confines_direct(B, M, pf2, diag, limits)
        if not v.confined:
            via_product = False
            break

    if direct != via_product:
        raise ConfineError(
            f"stabilizer routes disagree: direct={direct} product={via_product}")
    return direct


# ---------------------------------------------------------------------------
# the lift construction
# ---------------------------------------------------------------------------

@dataclass
class LiftPresentation:
    pf: PartialField
    symbols: dict               # ring key of cross ratio -> symbol name
    values: dict                # symbol name -> pf element
    polyring: PolyRing
    gb: list
    ring: QuotientRing
    pf_view: PartialField
    triple_witnesses: list = field(default_factory=list)

    def symbol_nf(self, name):
        return self.ring.nf(self.polyring.var(name))


def lift_presentation(matrices, limits=None) -> LiftPresentation:
    """One symbol per cross ratio of the family; relations:

      * the symbol of -1 equals -1 (when -1 is a cross ratio),
      * p~ + q~ - 1 whenever p + q = 1 in pf,
      * p~ q~ - 1 whenever p q = 1,
      * p~ q~ r~ - 1 whenever p q r = 1 AND the 2x3 witness
        [[1,1,1],[1,p,1/q]] is displayed as a minor of a family member.
    """
    limits = limits or current_limits()
    if not matrices:
        raise ConfineError("empty family")
    pf = matrices[0].pf
    ring = pf.ring
    crat = {}
    for A in matrices:
        if A.pf is not pf and A.pf.name != pf.name:
            raise ConfineError("family members live over different partial fields")
        for p in cross_ratios(A, limits):
            crat.setdefault(ring.key(p), p)

    one, zero = ring.one(), ring.zero()
    items = [(k, v) for k, v in sorted(crat.items(), key=lambda kv: ring.show(kv[1]))
             if not ring.is_zero(v) and not ring.eq(v, one)]
    names = {k: f"t{i}" for i, (k, _) in enumerate(items)}
    poly = PolyRing([names[k] for k, _ in items])
    var = {k: poly.var(names[k]) for k, _ in items}
    gens = []
    minus_one = ring.neg(one)
    for k, v in items:
        if ring.eq(v, minus_one):
            gens.append(var[k] + 1)
    for (k1, p), (k2, q) in itertools.combinations_with_replacement(items, 2):
        if ring.eq(ring.add(p, q), one):
            gens.append(var[k1] + var[k2] - 1)
        if ring.eq(ring.mul(p, q), one):
            gens.append(var[k1] * var[k2] - 1)

    witnesses = []
    for (k1, p), (k2, q) in itertools.permutations(items, 2):
        r = ring.inv(ring.mul(p, q))
        kr = ring.key(r)
        if kr not in names or ring.eq(r, one):
            continue
        W = PFMatrix(pf, ("u1", "u2"), ("w1", "w2", "w3"),
                     {("u1", "w1"): one, ("u1", "w2"): one, ("u1", "w3"): one,
                      ("u2", "w1"): one, ("u2", "w2"): p,
                      ("u2", "w3"): ring.inv(q)})
        for A in matrices:
            has, _ = minor_contains(A, W, limits)
            if has:
                gens.append(var[k1] * var[k2] * var[kr] - 1)
                witnesses.append(((names[k1], names[k2], names[kr]), A))
                break

    gb = groebner(gens, TermOrder(poly.n), limits)
    qring = QuotientRing(poly, gb, name=f"Lift({pf.name})")
    sym_gens = [qring.nf(var[k]) for k, _ in items]
    view = PartialField(qring, sym_gens, "unit_rule", name=f"L({pf.name})",
                        unit_rule=_bounded_group_rule(qring, sym_gens))
    return LiftPresentation(
        pf=pf, symbols={k: names[k] for k, _ in items},
        values={names[k]: v for k, v in items},
        polyring=poly, gb=gb, ring=qring, pf_view=view,
        triple_witnesses=witnesses)


def lift_projection_verified(lp: LiftPresentation) -> bool:
    """The canonical symbol-to-value map is a hom back to the base pf:
    every ideal generator must vanish and every value must be a unit."""
    ring = lp.pf.ring
    vals = [lp.values[n] for n in lp.polyring.names]
    for v in vals:
        if not lp.pf.contains(v):
            return False
    # re-derive the ideal generators from the Groebner basis itself: each
    # member must evaluate to zero under the projection
    return all(ring.is_zero(g.evaluate(ring, vals)) for g in lp.gb)


def lift_matrix(lp: LiftPresentation, A: PFMatrix) -> PFMatrix:
    """Rewrite a normalized family member over the lift presentation ring by
    substituting the symbol of each entry (entries must be cross ratios of
    the family up to sign)."""
    ring = lp.pf.ring
    qring = lp.ring
    An = A.normalize("Auto")
    ents = {}
    for (x, y), v in An.entries.items():
        for cand, sign in ((v, 1), (ring.neg(v), -1)):
            k = ring.key(cand)
            if ring.eq(cand, ring.one()):
                ents[(x, y)] = qring.from_int(sign)
                break
            if k in lp.symbols:
                img = qring.nf(lp.polyring.var(lp.symbols[k]))
                ents[(x, y)] = qring.neg(img) if sign < 0 else img
                break
        else:
            raise UndecidableWithStrategy(
                f"entry {ring.show(v)} is not a recorded cross ratio")
    return PFMatrix(lp.pf_view, An.rows, An.cols, ents, check=False)


# ---------------------------------------------------------------------------
# classification of associate-hexagon quotients
# ---------------------------------------------------------------------------

_PLUS_EDGES = ((1, 2), (3, 4), (5, 6))
_TIMES_EDGES = ((2, 3), (4, 5), (6, 1))


def _hexagon_symmetries():
    """Permutations of {1..6} preserving both relation edge sets."""
    plus = {frozenset(e) for e in _PLUS_EDGES}
    times = {frozenset(e) for e in _TIMES_EDGES}
    out = []
    for perm in itertools.permutations(range(1, 7)):
        m = {i + 1: perm[i] for i in range(6)}
        if {frozenset((m[a], m[b])) for a, b in _PLUS_EDGES} == plus and \
                {frozenset((m[a], m[b])) for a, b in _TIMES_EDGES} == times:
            out.append(m)
    return out


def _partition_key(blocks):
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def _canonical_partition(blocks, symmetries):
    best = None
    for m in symmetries:
        cand = _partition_key([{m[i] for i in b} for b in blocks])
        if best is None or cand < best:
            best = cand
    return best


def _hexagon_images(pf: PartialField, t):
    """p1..p6 determined by p1 = t through the alternating relations
    p1+p2=1, p2 p3=1, p3+p4=1, p4 p5=1, p5+p6=1, p6 p1=1."""
    r = pf.ring
    one = r.one()
    p = {1: t}
    p[2] = r.sub(one, p[1])
    p[3] = r.inv(p[2])
    p[4] = r.sub(one, p[3])
    p[5] = r.inv(p[4])
    p[6] = r.sub(one, p[5])
    if not r.eq(r.mul(p[6], p[1]), one):
        raise ConfineError("hexagon closure fails")
    return p


@dataclass
class HexagonClass:
    partition: tuple            # canonical blocks of identified indices
    target: str                 # "U0" | "U1" | "D" | "S" | "GF(3)-collapse"
    assignment: dict            # index -> shown target element ({} for collapse)
    verified: bool


def _classify_partition(blocks, limits):
    poly = PolyRing([f"p{i}" for i in range(1, 7)])
    v = {i: poly.var(f"p{i}") for i in range(1, 7)}
    gens = [v[a] + v[b] - 1 for a, b in _PLUS_EDGES]
    gens += [v[a] * v[b] - 1 for a, b in _TIMES_EDGES]
    for b in blocks:
        b = sorted(b)
        gens += [v[b[0]] - v[j] for j in b[1:]]
    order = TermOrder(poly.n)
    gb = groebner(gens, order, limits)
    if normal_form(poly.const(3), gb, order, limits).is_zero():
        return "GF(3)-collapse", {}, True

    u1 = catalog.make("U1")
    d = catalog.make("D")
    s = catalog.make("S")
    # candidates: the free fundamental of U1 (identifications must hold
    # identically), then the nonzero non-one fundamentals of D and S
    candidates = [("U1", u1, u1.parse("a"))]
    candidates += [("D", d, t) for t in
                   (d.ring.from_int(2), d.ring.inv(d.ring.from_int(2)),
                    d.ring.neg(d.ring.one()))]
    z = s.parse("z")
    candidates += [("S", s, t) for t in (z, s.ring.sub(s.ring.one(), z))]
    for label, pf, t in candidates:
        try:
            p = _hexagon_images(pf, t)
        except Exception:
            continue
        if all(pf.ring.eq(p[min(b)], p[j]) for b in blocks for j in b):
            ok = _verify_images(pf, p, gb, poly, order, limits)
            return label, {i: pf.show(p[i]) for i in p}, ok

    return "unclassified", {}, False


def _verify_images(pf, p, gb, poly, order, limits):
    """Every Groebner-basis element vanishes under the assignment, every
    image is fundamental, and the reverse relation holds: the target's
    defining polynomial for p1 lies in the ideal (so the quotient is not
    bigger than the target)."""
    ring = pf.ring
    vals = [p[i] for i in range(1, 7)]
    if not all(ring.is_zero(g.evaluate(ring, vals)) for g in gb):
        return False
    if not all(pf.contains(p[i]) for i in range(1, 7)):
        return False
    p1 = poly.var("p1")
    if pf.name == "D":
        checks = [2 * p1 - 1, p1 - 2, p1 + 1]
        return any(normal_form(c, gb, order, limits).is_zero() for c in checks)
    if pf.name == "S":
        return normal_form(p1 * p1 - p1 + 1, gb, order, limits).is_zero()
    if pf.name == "U1":
        # free symbol: no univariate relation on p1 at all
        for c in (2 * p1 - 1, p1 - 2, p1 + 1, p1 * p1 - p1 + 1):
            if normal_form(c, gb, order, limits).is_zero():
                return False
        return True
    return False


def classify_associate_quotients(full=False, limits=None):
    """Classification table over all identification patterns D of the six
    associates.  Identifications generate an equivalence, so the quotient
    only depends on the induced partition of {1..6}; the table has one row
    per symmetry class of partitions.  With full=True every one of the 2^15
    raw subsets D is routed through its partition and checked to land in a
    classified row."""
    limits = limits or current_limits()
    syms = _hexagon_symmetries()
    rows = {}
    for blocks in _set_partitions(list(range(1, 7))):
        canon = _canonical_partition(blocks, syms)
        if canon in rows:
            continue
        target, assignment, verified = _classify_partition(blocks, limits)
        rows[canon] = HexagonClass(canon, target, assignment, verified)
    if full:
        pairs = list(itertools.combinations(range(1, 7), 2))
        for bits in range(1 << len(pairs)):
            d = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            canon = _canonical_partition(_closure_partition(d), syms)
            if canon not in rows:
                raise ConfineError(f"unclassified identification set {d}")
    return [rows[k] for k in sorted(rows)]


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        yield [{first}] + sub
        for i in range(len(sub)):
            yield sub[:i] + [sub[i] | {first}] + sub[i + 1:]


def _closure_partition(pairs):
    blocks = {i: {i} for i in range(1, 7)}
    for a, b in pairs:
        if blocks[a] is not blocks[b]:
            merged = blocks[a] | blocks[b]
            for i in merged:
                blocks[i] = merged
    seen, out = set(), []
    for i in range(1, 7):
        if id(blocks[i]) not in seen:
            seen.add(id(blocks[i]))
            out.append(blocks[i])
    return out


# ---------------------------------------------------------------------------
# hydra degeneracy checks
# ---------------------------------------------------------------------------

def hydra_degeneracy_check(k: int, limits=None) -> bool:
    """For every normalized representation [[1,1,1],[1,p,q]] of the rank-2
    six-point-free uniform matroid over the level-k hydra partial field, the
    registered homomorphism into a power of GF(5) must yield the required
    number of pairwise scaling-inequivalent coordinate projections."""
    limits = limits or current_limits()
    from .pfield import fun_enumerate
    src, hom, required = catalog.hydra_data(k)
    fs = fun_enumerate(src)
    ring = src.ring
    one = ring.one()
    cand = [e for e in fs
            if not ring.is_zero(e) and not ring.eq(e, one)]
    inv = {ring.key(e): ring.inv(e) for e in cand}
    img = {ring.key(e): hom.apply(e) for e in cand}
    gf5 = catalog.make("GF(5)")
    g5 = gf5.ring
    width = len(hom.dst.ring.factors)
    one5 = g5.one()
    checked = 0
    for p, q in itertools.permutations(cand, 2):
        ratio = ring.mul(q, inv[ring.key(p)])
        if ring.eq(ratio, one) or ratio not in fs:
            continue
        checked += 1
        pv, qv = img[ring.key(p)], img[ring.key(q)]
        keys = set()
        for i in range(width):
            proj = PFMatrix(
                gf5, ("u1", "u2"), ("w1", "w2", "w3"),
                {("u1", "w1"): one5, ("u1", "w2"): one5, ("u1", "w3"): one5,
                 ("u2", "w1"): one5, ("u2", "w2"): pv[i], ("u2", "w3"): qv[i]})
            keys.add(proj.normalize("Auto").key())
        if len(keys) != required:
            return False
    if checked == 0:
        raise ConfineError("no valid two-symbol representation found")
    return True
