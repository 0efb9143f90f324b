"""Entry-symbol presentations of matroid representations over ZZ.

For a matroid M with basis B and spanning forest T of its fundamental graph,
the presentation puts one integer-polynomial symbol on every non-tree edge of
the graph (tree edges are normalized to 1, non-edges to 0) and imposes:

  * every non-basis r-subset has vanishing subdeterminant,
  * every basis subdeterminant is invertible (one inverse symbol per
    distinct determinant, with d * det - 1 relations).

The Groebner basis of that ideal is a presentation of the coordinate ring of
all normalized representations; the attached partial field with the cross
ratios as group generators is the universal partial field of M.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactalg.groebner import contains_one, groebner, in_subring, normal_form
from .exactalg.rings import QuotientRing
from .exactalg.zpoly import PolyRing, TermOrder
from .limits import ResourceLimitError, current_limits
from .matroid import Matroid, NotABasis
from .pfield import PartialField, PFError, UndecidableWithStrategy


class UniversalError(PFError):
    pass


@dataclass
class Presentation:
    matroid: Matroid
    basis: frozenset
    tree: tuple                 # ((x, y), ...) normalized edges
    edge_vars: dict             # (x, y) -> variable name, for non-tree edges
    polyring: PolyRing          # entry variables + determinant-inverse variables
    gb: list                    # Groebner basis of the full ideal
    entries: dict               # (x, y) -> ZPoly over polyring
    basis_dets: dict            # frozenset basis -> ZPoly (canonical sign)
    nonbasis_gens: list
    inverted: list              # distinct basis determinants (canonical sign)

    @property
    def free_symbols(self):
        return [self.edge_vars[e] for e in sorted(self.edge_vars)]

    def trivial(self):
        return contains_one(self.gb)


def _auto_forest(edges, rows):
    adj = {}
    for (x, y) in edges:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    for v in adj:
        adj[v].sort()
    seen, forest = set(), []
    for start in sorted(adj):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in adj[v]:
                if w in seen:
                    continue
                seen.add(w)
                forest.append((v, w) if v in rows else (w, v))
                queue.append(w)
    return forest


def _subdet(entries, polyring, rows, cols):
    """Cofactor determinant of the symbolic entry map."""
    if not rows:
        return polyring.one()
    x, rest = rows[0], rows[1:]
    total = polyring.zero()
    for j, y in enumerate(cols):
        a = entries.get((x, y))
        if a is None:
            continue
        term = a * _subdet(entries, polyring, rest, cols[:j] + cols[j + 1:])
        total = total + term if j % 2 == 0 else total - term
    return total


def _canonical_sign(p):
    """p or -p, whichever has positive leading (first-key) coefficient."""
    if not p.terms:
        return p
    lead = p.terms[max(p.terms)]
    return -p if lead < 0 else p


def bracket_presentation(M: Matroid, B=None, T="Auto", limits=None) -> Presentation:
    limits = limits or current_limits()
    if B is None:
        B = min(M.bases, key=lambda b: tuple(sorted(b)))
    B = frozenset(B)
    if B not in M.bases:
        raise NotABasis(str(sorted(B)))
    graph = M.fundamental_graph(B)
    rows = sorted(B)
    cols = sorted(set(M.ground) - B)
    if T == "Auto":
        tree = _auto_forest(graph, set(rows))
    else:
        tree = [tuple(e) for e in T]
        for e in tree:
            if e not in graph:
                raise UniversalError(f"tree edge {e} not in the fundamental graph")
        # acyclicity / maximality: reuse the count argument (forest of a
        # bipartite graph with c components on v vertices has v - c edges)
        if len(set(tree)) != len(tree):
            raise UniversalError("repeated tree edge")
        auto = _auto_forest(graph, set(rows))
        if len(tree) != len(auto):
            raise UniversalError("tree is not a maximal spanning forest")
    treeset = set(tree)
    edge_vars = {e: f"a_{e[0]}_{e[1]}" for e in sorted(graph - treeset)}

    names = [edge_vars[e] for e in sorted(edge_vars)]
    base_ring = PolyRing(names)
    entries = {}
    for e in graph:
        if e in treeset:
            entries[e] = base_ring.one()
        else:
            entries[e] = base_ring.var(edge_vars[e])

    r = M.rank
    nonbasis_gens, basis_raw = [], {}
    for comb in itertools.combinations(M.ground, r):
        Z = frozenset(comb)
        drows = tuple(x for x in rows if x not in Z)
        dcols = tuple(y for y in cols if y in Z)
        d = _subdet(entries, base_ring, drows, dcols)
        if Z in M.bases:
            basis_raw[Z] = d
        elif not d.is_zero():
            nonbasis_gens.append(d)

    distinct = {}
    for Z, d in basis_raw.items():
        c = _canonical_sign(d)
        distinct.setdefault(c.key(), c)
    inverted = [d for d in distinct.values() if not d.is_one()]
    inv_names = [f"d{i}" for i in range(len(inverted))]
    polyring = PolyRing(names + inv_names)

    def lift(p):
        return base_ring.lift(p, polyring)

    gens = [lift(p) for p in nonbasis_gens]
    for nm, d in zip(inv_names, inverted):
        gens.append(polyring.var(nm) * lift(d) - 1)
    gb = groebner(gens, TermOrder(polyring.n), limits)
    return Presentation(
        matroid=M, basis=B, tree=tuple(tree), edge_vars=edge_vars,
        polyring=polyring, gb=gb,
        entries={e: lift(p) for e, p in entries.items()},
        basis_dets={Z: lift(d) for Z, d in basis_raw.items()},
        nonbasis_gens=[lift(p) for p in nonbasis_gens],
        inverted=[lift(d) for d in inverted])


def is_representable(M: Matroid, limits=None) -> bool:
    return not bracket_presentation(M, limits=limits).trivial()


# ---------------------------------------------------------------------------
# the universal partial field
# ---------------------------------------------------------------------------

@dataclass
class UniversalPF:
    presentation: Presentation
    cross_ratios: list          # normal forms over the quotient ring
    pf_view: PartialField
    ring: QuotientRing


def _pivot_symbolic(entries, rows, cols, x, y, ring):
    p = entries[(x, y)]
    pinv = ring.inv(p)
    nrows = tuple(y if r == x else r for r in rows)
    ncols = tuple(x if c == y else c for c in cols)
    out = {}

    def put(u, v, val):
        val = ring.nf(val)
        if not val.is_zero():
            out[(u, v)] = val

    put(y, x, pinv)
    for z in cols:
        if z != y and (x, z) in entries:
            put(y, z, ring.mul(entries[(x, z)], pinv))
    for w in rows:
        if w != x and (w, y) in entries:
            put(w, x, ring.neg(ring.mul(entries[(w, y)], pinv)))
    zero = ring.zero()
    for w in rows:
        if w == x:
            continue
        awy = entries.get((w, y), zero)
        for z in cols:
            if z == y:
                continue
            val = ring.sub(entries.get((w, z), zero),
                           ring.mul(ring.mul(awy, pinv), entries.get((x, z), zero)))
            put(w, z, val)
    return out, nrows, ncols


def _representatives(pres: Presentation, ring: QuotientRing):
    rows = tuple(sorted(pres.basis))
    cols = tuple(sorted(set(pres.matroid.ground) - pres.basis))
    start = {e: ring.nf(p) for e, p in pres.entries.items()}
    reps = {frozenset(rows): (start, rows, cols)}
    queue = [frozenset(rows)]
    while queue:
        key = queue.pop()
        entries, rws, cls = reps[key]
        for (x, y) in sorted(entries):
            nkey = frozenset(set(rws) - {x} | {y})
            if nkey in reps or nkey not in pres.matroid.bases:
                continue
            reps[nkey] = _pivot_symbolic(entries, rws, cls, x, y, ring)
            queue.append(nkey)
    return reps


def universal_pf(M: Matroid, B=None, T="Auto", limits=None) -> UniversalPF:
    pres = bracket_presentation(M, B, T, limits)
    if pres.trivial():
        raise UniversalError("matroid is not representable")
    ring = QuotientRing(pres.polyring, pres.gb, name=f"R[{len(pres.free_symbols)}]")
    reps = _representatives(pres, ring)
    crat = {}
    for entries, rows, cols in reps.values():
        for u, w in itertools.permutations(rows, 2):
            for v, z in itertools.permutations(cols, 2):
                auv, auz = entries.get((u, v)), entries.get((u, z))
                awv, awz = entries.get((w, v)), entries.get((w, z))
                if auv is None or auz is None or awz is None:
                    continue
                if awv is None:
                    p = ring.zero()
                else:
                    p = ring.mul(ring.mul(awv, auz),
                                 ring.inv(ring.mul(auv, awz)))
                crat.setdefault(ring.key(p), p)
    ratios = sorted(crat.values(), key=ring.key)
    gens = [p for p in ratios
            if not ring.is_zero(p) and not ring.eq(p, ring.one())]
    pf_view = PartialField(ring, gens, "unit_rule",
                           name=f"U({','.join(sorted(M.ground))})",
                           unit_rule=_bounded_group_rule(ring, gens))
    return UniversalPF(pres, ratios, pf_view, ring)


def _bounded_group_rule(ring, gens, cap=256):
    closure = {}

    def build():
        seed = [ring.one(), ring.neg(ring.one())]
        for g in gens:
            seed.append(ring.nf(g))
            seed.append(ring.inv(g))
        frontier = list(seed)
        muls = seed[1:]
        while frontier and len(closure) < cap:
            e = frontier.pop(0)
            k = ring.key(e)
            if k in closure or len(str(k)) > 2000:
                continue
            closure[k] = e
            for m in muls:
                frontier.append(ring.mul(e, m))
        return not frontier

    complete = []

    def rule(pf, e):
        if not closure:
            complete.append(build())
        if ring.key(e) in closure:
            return True
        if complete[0]:
            return False
        raise UndecidableWithStrategy("bounded group closure exhausted")

    return rule


# ---------------------------------------------------------------------------
# counting representations over a finite partial field
# ---------------------------------------------------------------------------

def _restriction(M: Matroid, Z):
    Z = frozenset(Z)
    rz = M.rank_of(Z)
    bases = {frozenset(b & Z) for b in M.bases if len(b & Z) == rz}
    return Matroid(sorted(Z), bases)


def _split_components(M: Matroid):
    """Partition the ground set into connectivity components (lambda = 0)."""
    n = len(M.ground)
    parts = []
    remaining = list(M.ground)
    while remaining:
        if len(remaining) == 1:
            parts.append(set(remaining))
            break
        sub = _restriction(M, remaining)
        found = None
        e0 = sub.ground[0]
        for bits in range(1 << (len(sub.ground) - 1)):
            z = {e0} | {sub.ground[i + 1] for i in range(len(sub.ground) - 1)
                        if bits >> i & 1}
            if len(z) < len(sub.ground) and sub.connectivity(z) == 0:
                found = z
                break
        if found is None:
            parts.append(set(remaining))
            break
        parts.append(found)
        remaining = [e for e in remaining if e not in found]
    return parts


def count_representations(M: Matroid, pf: PartialField, limits=None) -> int:
    """Number of forest-normalized pf-matrices representing M."""
    limits = limits or current_limits()
    group = pf.group_elements()
    if group is None:
        raise UniversalError("counting needs a finite partial field")
    parts = _split_components(M)
    if len(parts) > 1:
        total = 1
        for z in parts:
            total *= count_representations(_restriction(M, z), pf, limits)
        return total
    return _count_connected(M, pf, group, limits)


def _count_connected(M: Matroid, pf: PartialField, group, limits) -> int:
    ring = pf.ring
    B = min(M.bases, key=lambda b: tuple(sorted(b)))
    graph = M.fundamental_graph(B)
    rows = sorted(B)
    cols = sorted(set(M.ground) - B)
    tree = set(_auto_forest(graph, set(rows)))
    free = sorted(graph - tree)
    conds = []
    for comb in itertools.combinations(M.ground, M.rank):
        Z = frozenset(comb)
        drows = tuple(x for x in rows if x not in Z)
        dcols = tuple(y for y in cols if y in Z)
        syms = frozenset((x, y) for x in drows for y in dcols if (x, y) in free)
        conds.append((drows, dcols, Z in M.bases, syms))

    one, zero = ring.one(), ring.zero()
    values = {}

    def entry(x, y):
        if (x, y) in tree:
            return one
        if (x, y) in values:
            return values[(x, y)]
        return zero if (x, y) not in graph else None

    def det(drows, dcols):
        if not drows:
            return one
        x, rest = drows[0], drows[1:]
        total = zero
        for j, y in enumerate(dcols):
            a = entry(x, y)
            if a is None or ring.is_zero(a):
                continue
            t = ring.mul(a, det(rest, dcols[:j] + dcols[j + 1:]))
            total = ring.add(total, t) if j % 2 == 0 else ring.sub(total, t)
        return total

    nodes = 0

    def leaf():
        if pf.all_units:
            return 1
        from .pmatrix import PFMatrix
        ents = {}
        for e in graph:
            v = entry(*e)
            if not ring.is_zero(v):
                ents[e] = v
        A = PFMatrix(pf, rows, cols, ents)
        return 1 if A.det_and_validate("FullPMatrixCheck")[1] else 0

    def dfs(i, assigned):
        nonlocal nodes
        nodes += 1
        limits.charge(nodes, "search_nodes")
        if i == len(free):
            return leaf()
        e = free[i]
        total = 0
        for val in group:
            if ring.is_zero(val):
                continue
            values[e] = val
            now = assigned | {e}
            ok = True
            for drows, dcols, want, syms in conds:
                if e in syms and syms <= now:
                    nonzero = not ring.is_zero(det(drows, dcols))
                    if nonzero != want:
                        ok = False
                        break
            if ok:
                total += dfs(i + 1, now)
            del values[e]
        return total

    # conditions with no free symbols must already hold
    for drows, dcols, want, syms in conds:
        if not syms:
            if (not ring.is_zero(det(drows, dcols))) != want:
                return 0
    return dfs(0, frozenset())


# ---------------------------------------------------------------------------
# subring membership in a target partial field
# ---------------------------------------------------------------------------

def subring_contains(pf: PartialField, gens, elem) -> bool:
    """Does elem lie in the ZZ-subalgebra of pf's ring generated by gens?

    Decided for finite rings (closure) and for prime-basis partial fields
    (group elements are mapped onto monomials in atoms and inverse symbols,
    then a tag-variable Groebner membership test runs over ZZ).
    """
    ring = pf.ring
    if ring.finite:
        seen = {ring.key(x): x for x in
                [ring.zero(), ring.one(), ring.neg(ring.one())] + list(gens)}
        grew = True
        while grew:
            grew = False
            items = list(seen.values())
            for a in items:
                for b in items:
                    for c in (ring.add(a, b), ring.mul(a, b)):
                        k = ring.key(c)
                        if k not in seen:
                            seen[k] = c
                            grew = True
        return ring.key(elem) in seen
    basis = getattr(pf, "_basis", None)
    if basis is None:
        raise UndecidableWithStrategy(f"no subring decision for {pf.name}")
    from .exactalg.factorbase import factor_over_basis
    names = [f"g{i}" for i in range(len(basis))]
    inv_names = [f"h{i}" for i in range(len(basis))]
    poly = PolyRing(names + inv_names)
    igens = [poly.var(n) * poly.var(m) - 1 for n, m in zip(names, inv_names)]

    def encode(v):
        fac = factor_over_basis(ring, v, basis)
        if fac is None:
            return None
        sign, exps = fac
        out = poly.const(sign)
        for i, k in enumerate(exps):
            if k > 0:
                out = out * poly.var(names[i]) ** k
            elif k < 0:
                out = out * poly.var(inv_names[i]) ** (-k)
        return out

    subgens = []
    for g in gens:
        if ring.is_zero(g):
            continue
        enc = encode(g)
        if enc is None:
            raise UndecidableWithStrategy("generator not factorable over the atom basis")
        subgens.append(enc)
    target = encode(elem)
    if target is None:
        raise UndecidableWithStrategy("element not factorable over the atom basis")
    ok, _ = in_subring(igens, poly, subgens, target, current_limits())
    return ok


# ---------------------------------------------------------------------------
# isomorphism certificates and the settles check
# ---------------------------------------------------------------------------

def verify_universal_iso(M: Matroid, target: PartialField, assignment,
                         B=None, T="Auto", limits=None) -> bool:
    """Certificate check that `assignment` (entry symbol -> target element)
    presents the universal partial field of M as `target`:

      (a) all non-basis determinants vanish and all basis determinants are
          units under the assignment;
      (b) every generator of the target group lies in the subring generated
          by the images of crat(M);
      (c) the induced map is injective on the cross-ratio probe set.
    """
    limits = limits or current_limits()
    upf = universal_pf(M, B, T, limits)
    pres = upf.presentation
    ring = target.ring
    images = {k: (target.parse(v) if isinstance(v, str) else v)
              for k, v in assignment.items()}
    missing = [n for n in pres.free_symbols if n not in images]
    if missing:
        raise UniversalError(f"assignment misses symbols {missing}")

    # entry symbols first, then determinant-inverse symbols (the latter are
    # never consulted by the polynomials below, which live in entry symbols)
    vals = [images.get(name, ring.zero()) for name in pres.polyring.names]
    for i, d in enumerate(pres.inverted):
        v = d.evaluate(ring, vals)
        if ring.is_zero(v) or not target.contains(v):
            return False
        vals[len(pres.free_symbols) + i] = ring.inv(v)
    for g in pres.nonbasis_gens:
        if not ring.is_zero(g.evaluate(ring, vals)):
            return False
    for Z, d in pres.basis_dets.items():
        v = d.evaluate(ring, vals)
        if ring.is_zero(v) or not target.contains(v):
            return False

    crat_imgs = [c.evaluate(ring, vals) for c in upf.cross_ratios]
    for g in target.generators:
        if not subring_contains(target, crat_imgs, g):
            return False

    probes = {upf.ring.key(c): ring.key(v)
              for c, v in zip(upf.cross_ratios, crat_imgs)}
    if len(set(probes.values())) != len(probes):
        return False
    return True


def settles_check(N: Matroid, M: Matroid, contract=(), delete=(),
                  limits=None) -> bool:
    """Does N = M / contract \\ delete settle M: is every cross ratio of M in
    the subring generated by the images of the minor's cross ratios?"""
    limits = limits or current_limits()
    U, V = frozenset(contract), frozenset(delete)
    minor = M.minor(contract=U, delete=V)
    from .matroid import isomorphic
    if isomorphic(minor, N) is None:
        raise UniversalError("the specified minor is not isomorphic to N")
    host = None
    for b in sorted(M.bases, key=lambda b: tuple(sorted(b))):
        if U <= b and not (b & V):
            host = b
            break
    if host is None:
        raise UniversalError("no basis contains the contraction set and avoids the deletion set")
    upf = universal_pf(M, B=host, limits=limits)
    ring = upf.ring
    pres = upf.presentation

    rows = tuple(x for x in sorted(host) if x not in U)
    cols = tuple(y for y in sorted(set(M.ground) - host) if y not in V)
    start = {(x, y): ring.nf(p) for (x, y), p in pres.entries.items()
             if x in rows and y in cols}
    minor_bases = {frozenset(b) for b in minor.bases}
    key0 = frozenset(rows)
    reps = {key0: (start, rows, cols)}
    queue = [key0]
    while queue:
        key = queue.pop()
        entries, rws, cls = reps[key]
        for (x, y) in sorted(entries):
            nkey = frozenset(set(rws) - {x} | {y})
            if nkey in reps or frozenset(nkey) not in minor_bases:
                continue
            reps[nkey] = _pivot_symbolic(entries, rws, cls, x, y, ring)
            queue.append(nkey)

    imgs = {}
    for entries, rws, cls in reps.values():
        for u, w in itertools.permutations(rws, 2):
            for v, z in itertools.permutations(cls, 2):
                auv, auz = entries.get((u, v)), entries.get((u, z))
                awv, awz = entries.get((w, v)), entries.get((w, z))
                if auv is None or auz is None or awz is None:
                    continue
                p = ring.zero() if awv is None else ring.mul(
                    ring.mul(awv, auz), ring.inv(ring.mul(auv, awz)))
                imgs.setdefault(ring.key(p), p)

    subgens = [p for p in imgs.values() if not ring.is_zero(p)]
    for c in upf.cross_ratios:
        if ring.is_zero(c):
            continue
        ok, _ = in_subring(pres.gb, pres.polyring, subgens, c, limits)
        if not ok:
            return False
    return True
