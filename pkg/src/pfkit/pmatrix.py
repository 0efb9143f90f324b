"""Labeled matrices over a partial field.

A :class:`PFMatrix` carries row labels X, column labels Y (disjoint), and a
sparse entry map; every nonzero entry must lie in the multiplicative group of
the partial field.  The module provides determinants with membership
certification, pivoting, scaling-normalization, the bipartite entry graph,
cycle signatures, cross ratios, connectivity, and the blocking-sequence
dichotomy.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .limits import ResourceLimitError, current_limits
from .pfield import PartialField, PFError


class PMatrixError(PFError):
    pass


class ZeroPivot(PMatrixError):
    pass


class EntryLeavesPartialField(PMatrixError):
    """An operation produced a nonzero entry outside the group."""


class NotAForest(PMatrixError):
    pass


class NotACycle(PMatrixError):
    pass


class NotExactSeparation(PMatrixError):
    pass


NOT_IN_PF = "NotInPF"


@dataclass(frozen=True)
class CycleSignature:
    cycle: tuple
    value: object


@dataclass(frozen=True)
class SeparationReport:
    side1: frozenset
    side2: frozenset
    lam: int
    certificate: tuple  # ("BlockingSequence", (v1..vt)) or ("InducedSeparation", (Z1, Z2))


@dataclass(frozen=True)
class MinorWitness:
    pivots: tuple          # ((x, y), ...) applied to the host matrix
    rows: tuple            # host row labels kept, in order matched to B's rows
    cols: tuple            # host col labels kept, in order matched to B's cols
    row_scalars: tuple
    col_scalars: tuple


class PFMatrix:
    """Immutable X-by-Y matrix over a partial field; zeros are omitted."""

    def __init__(self, pf: PartialField, rows, cols, entries, check=True):
        self.pf = pf
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if len(set(self.rows) | set(self.cols)) != len(self.rows) + len(self.cols):
            raise PMatrixError("row/column labels must be unique and disjoint")
        ring = pf.ring
        ents = {}
        for (x, y), v in dict(entries).items():
            if x not in self.rows or y not in self.cols:
                raise PMatrixError(f"entry label ({x},{y}) outside the matrix")
            if ring.is_zero(v):
                continue
            if check and not pf.contains(v):
                raise EntryLeavesPartialField(f"entry ({x},{y}) = {ring.show(v)}")
            ents[(x, y)] = v
        self.entries = ents

    # -- construction helpers ------------------------------------------------
    @classmethod
    def from_grid(cls, pf, grid, rows=None, cols=None, check=True):
        m, n = len(grid), len(grid[0]) if grid else 0
        rows = tuple(rows) if rows else tuple(f"x{i+1}" for i in range(m))
        cols = tuple(cols) if cols else tuple(f"y{j+1}" for j in range(n))
        ents = {}
        for i, row in enumerate(grid):
            if len(row) != n:
                raise PMatrixError("ragged grid")
            for j, v in enumerate(row):
                if isinstance(v, (str, int)):
                    v = pf.parse(str(v))
                ents[(rows[i], cols[j])] = v
        return cls(pf, rows, cols, ents, check=check)

    @classmethod
    def from_json(cls, data, pf=None):
        if isinstance(data, str):
            data = json.loads(data)
        if pf is None:
            from . import catalog
            pf = catalog.make(data["pf"])
        ents = {(x, y): pf.parse(expr) for x, y, expr in data.get("entries", [])}
        return cls(pf, data["rows"], data["cols"], ents)

    def to_json(self):
        ents = sorted((x, y, self.pf.show(v)) for (x, y), v in self.entries.items())
        return {"pf": self.pf.name, "rows": list(self.rows),
                "cols": list(self.cols), "entries": [list(e) for e in ents]}

    # -- basic access ----------------------------------------------------------
    def entry(self, x, y):
        return self.entries.get((x, y), self.pf.ring.zero())

    def is_zero_at(self, x, y):
        return (x, y) not in self.entries

    def labels(self):
        return set(self.rows) | set(self.cols)

    def key(self):
        ring = self.pf.ring
        return (self.rows, self.cols,
                tuple(sorted((x, y, ring.key(v)) for (x, y), v in self.entries.items())))

    def __eq__(self, other):
        return isinstance(other, PFMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def show(self):
        ring = self.pf.ring
        width = max([len(ring.show(self.entry(x, y)))
                     for x in self.rows for y in self.cols] + [1])
        lines = []
        for x in self.rows:
            lines.append("[" + " ".join(ring.show(self.entry(x, y)).rjust(width)
                                        for y in self.cols) + "]")
        return "\n".join(lines)

    def transpose(self):
        ents = {(y, x): v for (x, y), v in self.entries.items()}
        return PFMatrix(self.pf, self.cols, self.rows, ents, check=False)

    def submatrix(self, rows, cols):
        rows, cols = tuple(rows), tuple(cols)
        ents = {(x, y): v for (x, y), v in self.entries.items()
                if x in set(rows) and y in set(cols)}
        return PFMatrix(self.pf, rows, cols, ents, check=False)

    def restrict(self, labels):
        """A[Z]: keep only the rows and columns whose labels are in Z."""
        zs = set(labels)
        return self.submatrix([x for x in self.rows if x in zs],
                              [y for y in self.cols if y in zs])

    def relabel(self, mapping):
        rows = tuple(mapping.get(x, x) for x in self.rows)
        cols = tuple(mapping.get(y, y) for y in self.cols)
        ents = {(mapping.get(x, x), mapping.get(y, y)): v
                for (x, y), v in self.entries.items()}
        return PFMatrix(self.pf, rows, cols, ents, check=False)

    def scale(self, row_scalars=None, col_scalars=None):
        """diag(r) * A * diag(c); scalars must lie in the group."""
        ring, pf = self.pf.ring, self.pf
        rs = dict(row_scalars or {})
        cs = dict(col_scalars or {})
        for s in list(rs.values()) + list(cs.values()):
            if ring.is_zero(s) or not pf.contains(s):
                raise EntryLeavesPartialField(f"scalar {ring.show(s)} not in the group")
        ents = {}
        for (x, y), v in self.entries.items():
            w = v
            if x in rs:
                w = ring.mul(rs[x], w)
            if y in cs:
                w = ring.mul(w, cs[y])
            ents[(x, y)] = w
        return PFMatrix(self.pf, self.rows, self.cols, ents, check=False)

    # -- bipartite entry graph -------------------------------------------------
    def graph_adj(self):
        adj = {v: [] for v in list(self.rows) + list(self.cols)}
        for (x, y) in sorted(self.entries):
            adj[x].append(y)
            adj[y].append(x)
        for v in adj:
            adj[v].sort()
        return adj

    # -- pivoting ----------------------------------------------------------------
    def pivot(self, x, y):
        """A^{xy}: exchange row label x with column label y.

        New entries, writing p = A_xy:
            (y, x) -> 1/p
            (y, z) -> A_xz / p          for z != y
            (w, x) -> -A_wy / p         for w != x
            (w, z) -> A_wz - A_wy A_xz / p
        """
        ring, pf = self.pf.ring, self.pf
        p = self.entry(x, y)
        if ring.is_zero(p):
            raise ZeroPivot(f"A[{x},{y}] = 0")
        pinv = ring.inv(p)
        rows = tuple(y if r == x else r for r in self.rows)
        cols = tuple(x if c == y else c for c in self.cols)
        ents = {}

        def put(u, v, val):
            if ring.is_zero(val):
                return
            if not pf.contains(val):
                raise EntryLeavesPartialField(
                    f"pivot ({x},{y}) makes entry ({u},{v}) = {ring.show(val)}")
            ents[(u, v)] = val

        put(y, x, pinv)
        for z in self.cols:
            if z != y:
                put(y, z, ring.mul(self.entry(x, z), pinv))
        for w in self.rows:
            if w != x:
                put(w, x, ring.neg(ring.mul(self.entry(w, y), pinv)))
        for w in self.rows:
            if w == x:
                continue
            awy = self.entry(w, y)
            for z in self.cols:
                if z == y:
                    continue
                val = ring.sub(self.entry(w, z), ring.mul(ring.mul(awy, pinv),
                                                          self.entry(x, z)))
                put(w, z, val)
        return PFMatrix(self.pf, rows, cols, ents, check=False)

    # -- determinant and pf-matrix certification ---------------------------------
    def det_and_validate(self, mode="DetOnly"):
        """(det | NotInPF | None, is_pf_matrix | None).

        DetOnly (square input): determinant by pivot expansion, checking
        membership of every intermediate entry; NotInPF on any failure.
        FullPMatrixCheck: certify every square subdeterminant lies in the
        partial field — direct enumeration when min dimension <= 6, pivot
        closure above that.
        """
        if mode == "DetOnly":
            if len(self.rows) != len(self.cols):
                raise PMatrixError("determinant needs a square matrix")
            try:
                return self._det_pivot(), None
            except EntryLeavesPartialField:
                return NOT_IN_PF, None
        if mode != "FullPMatrixCheck":
            raise PMatrixError(f"unknown mode {mode!r}")
        det = None
        if len(self.rows) == len(self.cols):
            try:
                det = self._det_pivot()
            except EntryLeavesPartialField:
                det = NOT_IN_PF
        if min(len(self.rows), len(self.cols)) <= 6:
            ok = self._check_all_subdets()
        else:
            ok = self._check_pivot_closure()
        return det, ok

    def _det_pivot(self):
        ring, pf = self.pf.ring, self.pf
        if not self.rows:
            return ring.one()
        target = None
        for i, x in enumerate(self.rows):
            for j, y in enumerate(self.cols):
                if (x, y) in self.entries:
                    target = (i, j, x, y)
                    break
            if target:
                break
        if target is None:
            return ring.zero()
        i, j, x, y = target
        p = self.entry(x, y)
        if not pf.contains(p):
            raise EntryLeavesPartialField(f"entry ({x},{y})")
        piv = self.pivot(x, y)
        rest = piv.submatrix([r for r in piv.rows if r != y],
                             [c for c in piv.cols if c != x])
        sub = rest._det_pivot()
        val = ring.mul(p, sub)
        if (i + j) % 2:
            val = ring.neg(val)
        if not (ring.is_zero(val) or pf.contains(val)):
            raise EntryLeavesPartialField("determinant outside the group")
        return val

    def _ring_det(self, rows, cols):
        """Plain cofactor determinant in the ambient ring (no checks)."""
        ring = self.pf.ring
        if not rows:
            return ring.one()
        x, rest = rows[0], rows[1:]
        total = ring.zero()
        for j, y in enumerate(cols):
            a = self.entry(x, y)
            if ring.is_zero(a):
                continue
            minor = self._ring_det(rest, cols[:j] + cols[j + 1:])
            term = ring.mul(a, minor)
            total = ring.add(total, term) if j % 2 == 0 else ring.sub(total, term)
        return total

    def _check_all_subdets(self):
        ring, pf = self.pf.ring, self.pf
        kmax = min(len(self.rows), len(self.cols))
        for k in range(1, kmax + 1):
            for rows in itertools.combinations(self.rows, k):
                for cols in itertools.combinations(self.cols, k):
                    d = self._ring_det(rows, cols)
                    if not (ring.is_zero(d) or pf.contains(d)):
                        return False
        return True

    def _check_pivot_closure(self):
        try:
            basis_representatives(self)
        except EntryLeavesPartialField:
            return False
        return True

    # -- normalization ------------------------------------------------------------
    def auto_forest(self):
        """Deterministic maximal spanning forest of the entry graph: BFS from
        the lexicographically smallest unvisited label, neighbors in label
        order."""
        adj = self.graph_adj()
        seen, forest = set(), []
        for start in sorted(adj):
            if start in seen or not adj[start]:
                continue
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
                    forest.append((v, w) if v in set(self.rows) else (w, v))
                    queue.append(w)
        return forest

    def normalize(self, T="Auto"):
        """The unique scaling-equivalent matrix with value 1 on every edge of
        the maximal spanning forest T."""
        ring, pf = self.pf.ring, self.pf
        if T == "Auto":
            edges = self.auto_forest()
        else:
            edges = [tuple(e) for e in T]
            self._validate_forest(edges)
        adj = {}
        for (x, y) in edges:
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
        scal = {}
        for start in sorted(adj):
            if start in scal:
                continue
            scal[start] = ring.one()
            queue = [start]
            while queue:
                v = queue.pop(0)
                for w in sorted(adj[v]):
                    if w in scal:
                        continue
                    if v in set(self.rows):
                        a = self.entry(v, w)
                    else:
                        a = self.entry(w, v)
                    scal[w] = ring.inv(ring.mul(scal[v], a))
                    queue.append(w)
        rs = {x: scal.get(x, ring.one()) for x in self.rows}
        cs = {y: scal.get(y, ring.one()) for y in self.cols}
        out = self.scale(rs, cs)
        for (x, y), v in out.entries.items():
            if not pf.contains(v):
                raise EntryLeavesPartialField(
                    f"normalized entry ({x},{y}) = {ring.show(v)}")
        return out

    def _validate_forest(self, edges):
        adj = self.graph_adj()
        seen_edges = set()
        parent = {}

        def find(v):
            while parent.get(v, v) != v:
                parent[v] = parent.get(parent[v], parent[v])
                v = parent[v]
            return v

        for (x, y) in edges:
            if (x, y) in seen_edges or (x, y) not in self.entries:
                raise NotAForest(f"edge ({x},{y}) invalid")
            seen_edges.add((x, y))
            rx, ry = find(x), find(y)
            if rx == ry:
                raise NotAForest("forest has a cycle")
            parent[rx] = ry
        # maximality: one tree per connected component of the entry graph
        comp_roots = set()
        visited = set()
        comps = 0
        for v in sorted(adj):
            if v in visited or not adj[v]:
                continue
            comps += 1
            stack = [v]
            visited.add(v)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in visited:
                        visited.add(w)
                        stack.append(w)
        nonisolated = sum(1 for v in adj if adj[v])
        if len(edges) != nonisolated - comps:
            raise NotAForest("forest is not maximal")

    # -- cycle signatures -----------------------------------------------------------
    def cycle_signature(self, cycle):
        """sigma_A(C) = (-1)^{n} * prod of entries along C with alternating
        exponents; for an induced (chordless) cycle the value is checked
        against the closing determinant of the normalized cycle submatrix."""
        ring = self.pf.ring
        cyc = tuple(cycle)
        if len(cyc) >= 2 and cyc[0] == cyc[-1]:
            cyc = cyc[:-1]
        if len(cyc) < 4 or len(cyc) % 2:
            raise NotACycle("cycle must alternate and have even length >= 4")
        if len(set(cyc)) != len(cyc):
            raise NotACycle("repeated vertex")
        rows, cols = set(self.rows), set(self.cols)
        # rotate so the cycle starts on a row label
        if cyc[0] in cols:
            cyc = cyc[1:] + cyc[:1]
        for i, v in enumerate(cyc):
            if v not in (rows if i % 2 == 0 else cols):
                raise NotACycle("vertices must alternate between rows and columns")
        n = len(cyc) // 2
        num, den = ring.one(), ring.one()
        for i in range(2 * n):
            u, w = cyc[i], cyc[(i + 1) % (2 * n)]
            a = self.entry(u, w) if u in rows else self.entry(w, u)
            if ring.is_zero(a):
                raise NotACycle(f"missing edge ({u},{w})")
            if i % 2 == 0:
                num = ring.mul(num, a)
            else:
                den = ring.mul(den, a)
        sigma = ring.mul(num, ring.inv(den))
        if n % 2:
            sigma = ring.neg(sigma)
        if self._is_induced_cycle(cyc):
            self._check_signature_det(cyc, sigma)
        return CycleSignature(cyc, sigma)

    def _is_induced_cycle(self, cyc):
        verts = set(cyc)
        edge_set = set()
        for i in range(len(cyc)):
            u, w = cyc[i], cyc[(i + 1) % len(cyc)]
            edge_set.add(frozenset((u, w)))
        for (x, y) in self.entries:
            if x in verts and y in verts and frozenset((x, y)) not in edge_set:
                return False
        return True

    def _check_signature_det(self, cyc, sigma):
        ring = self.pf.ring
        sub = self.restrict(cyc)
        rows = set(self.rows)
        tree = []
        for i in range(1, len(cyc)):
            u, w = cyc[i], cyc[(i + 1) % len(cyc)]
            tree.append((u, w) if u in rows else (w, u))
        norm = sub.normalize(tree)
        n = len(cyc) // 2
        rows = tuple(cyc[0::2])
        cols = tuple(cyc[1::2])
        d = norm._ring_det(rows, cols)
        want = ring.sub(ring.one(), sigma)
        if (n - 1) % 2:
            want = ring.neg(want)
        if not ring.eq(d, want):
            raise PMatrixError("cycle signature / determinant consistency failed")

    # -- rank ------------------------------------------------------------------------
    def rank(self):
        """Exact rank by pivot elimination; membership failures raise."""
        work, r = self, 0
        while work.entries:
            (x, y) = min(work.entries)
            piv = work.pivot(x, y)
            work = piv.submatrix([u for u in piv.rows if u != y],
                                 [v for v in piv.cols if v != x])
            r += 1
        return r


# ---------------------------------------------------------------------------
# basis representatives and cross ratios
# ---------------------------------------------------------------------------

def basis_representatives(A: PFMatrix, limits=None):
    """All pivot-reachable representatives of A, keyed by the frozenset of
    row labels (the bases of the column matroid of [I A])."""
    limits = limits or current_limits()
    start = frozenset(A.rows)
    reps = {start: A}
    queue = [A]
    nodes = 0
    while queue:
        cur = queue.pop()
        for (x, y) in sorted(cur.entries):
            nodes += 1
            limits.charge(nodes, "search_nodes")
            key = frozenset(set(cur.rows) - {x} | {y})
            if key in reps:
                continue
            reps[key] = cur.pivot(x, y)
            queue.append(reps[key])
    return reps


def cross_ratios(A: PFMatrix, limits=None):
    """crat(A): the values p realized as the bottom-left entry of a scaled
    2-by-2 minor [[1,1],[p,1]], over all basis representatives and all
    ordered row/column pairs with the three normalizing entries nonzero."""
    ring = A.pf.ring
    out = {}
    for rep in basis_representatives(A, limits).values():
        for u, w in itertools.permutations(rep.rows, 2):
            for v, z in itertools.permutations(rep.cols, 2):
                auv, auz = rep.entry(u, v), rep.entry(u, z)
                awv, awz = rep.entry(w, v), rep.entry(w, z)
                if ring.is_zero(auv) or ring.is_zero(auz) or ring.is_zero(awz):
                    continue
                p = ring.mul(ring.mul(awv, auz),
                             ring.inv(ring.mul(auv, awz)))
                out.setdefault(ring.key(p), p)
    return sorted(out.values(), key=ring.show)


def scaled_over_check(A: PFMatrix, sub: PartialField):
    """(crat(A) subset of sub?, normalized witness matrix or None)."""
    ring = A.pf.ring
    for p in cross_ratios(A):
        if not ring.is_zero(p) and not sub.contains(p):
            return False, None
    witness = A.normalize("Auto")
    return True, witness


def minor_contains(A: PFMatrix, B: PFMatrix, limits=None):
    """Is B a minor of A under pivots, deletions, and scalings?

    Returns (bool, MinorWitness or None).  Every pivot/deletion minor of A is
    a scaled submatrix of some basis representative, so the search runs over
    representatives, ordered label selections, and scaling equivalence.
    """
    limits = limits or current_limits()
    if A.pf is not B.pf and A.pf.name != B.pf.name:
        raise PMatrixError("minor comparison needs a common partial field")
    ring = A.pf.ring
    m, n = len(B.rows), len(B.cols)
    reps = basis_representatives(A, limits)
    nodes = 0
    for rep in reps.values():
        if len(rep.rows) < m or len(rep.cols) < n:
            continue
        for rsel in itertools.permutations(rep.rows, m):
            for csel in itertools.permutations(rep.cols, n):
                nodes += 1
                limits.charge(nodes, "search_nodes")
                sub = rep.submatrix(rsel, csel)
                scalars = _scaling_match(sub, B)
                if scalars is not None:
                    piv_seq = _pivot_sequence(A, rep)
                    return True, MinorWitness(
                        pivots=piv_seq, rows=rsel, cols=csel,
                        row_scalars=tuple(ring.show(s) for s in scalars[0]),
                        col_scalars=tuple(ring.show(s) for s in scalars[1]))
    return False, None


def _scaling_match(S: PFMatrix, B: PFMatrix):
    """Row/column scalars turning S into B positionally, or None."""
    ring = S.pf.ring
    m, n = len(S.rows), len(S.cols)
    patS = {(i, j) for i, x in enumerate(S.rows) for j, y in enumerate(S.cols)
            if not S.is_zero_at(x, y)}
    patB = {(i, j) for i, x in enumerate(B.rows) for j, y in enumerate(B.cols)
            if not B.is_zero_at(x, y)}
    if patS != patB:
        return None
    # propagate scalars over the shared bipartite graph
    rs, cs = [None] * m, [None] * n
    svals = {(i, j): S.entry(S.rows[i], S.cols[j]) for (i, j) in patS}
    bvals = {(i, j): B.entry(B.rows[i], B.cols[j]) for (i, j) in patS}
    for comp_start in range(m):
        if rs[comp_start] is not None or not any((comp_start, j) in patS for j in range(n)):
            continue
        rs[comp_start] = ring.one()
        queue = [("r", comp_start)]
        while queue:
            kind, idx = queue.pop()
            if kind == "r":
                for j in range(n):
                    if (idx, j) in patS and cs[j] is None:
                        cs[j] = ring.mul(bvals[(idx, j)],
                                         ring.inv(ring.mul(rs[idx], svals[(idx, j)])))
                        queue.append(("c", j))
            else:
                for i in range(m):
                    if (i, idx) in patS and rs[i] is None:
                        rs[i] = ring.mul(bvals[(i, idx)],
                                         ring.inv(ring.mul(svals[(i, idx)], cs[idx])))
                        queue.append(("r", i))
    rs = [s if s is not None else ring.one() for s in rs]
    cs = [s if s is not None else ring.one() for s in cs]
    for (i, j) in patS:
        got = ring.mul(ring.mul(rs[i], svals[(i, j)]), cs[j])
        if not ring.eq(got, bvals[(i, j)]):
            return None
    return rs, cs


def _pivot_sequence(A: PFMatrix, rep: PFMatrix):
    """A greedy pivot sequence carrying A's basis to rep's basis."""
    seq = []
    cur = A
    target = set(rep.rows)
    while set(cur.rows) != target:
        moved = False
        for (x, y) in sorted(cur.entries):
            if x not in target and y in target:
                seq.append((x, y))
                cur = cur.pivot(x, y)
                moved = True
                break
        if not moved:
            break
    return tuple(seq)


# ---------------------------------------------------------------------------
# connectivity and blocking sequences
# ---------------------------------------------------------------------------

def connectivity_lambda(A: PFMatrix, Z):
    """lambda_A(Z) = rank A[X1,Y2] + rank A[X2,Y1] for X1 = X & Z etc."""
    zs = set(Z)
    x1 = [x for x in A.rows if x in zs]
    x2 = [x for x in A.rows if x not in zs]
    y1 = [y for y in A.cols if y in zs]
    y2 = [y for y in A.cols if y not in zs]
    return A.submatrix(x1, y2).rank() + A.submatrix(x2, y1).rank()


def blocking_or_induced(A: PFMatrix, Eprime, sep, limits=None):
    """The blocking-sequence dichotomy for an exact k-separation of A[E'].

    Either returns a minimal blocking sequence (breadth-first over
    X/Y-alternating sequences of outside elements), or an induced
    k-separation of the whole matrix extending the given sides.
    """
    limits = limits or current_limits()
    ep = set(Eprime)
    z1, z2 = frozenset(sep[0]), frozenset(sep[1])
    if z1 | z2 != ep or z1 & z2:
        raise NotExactSeparation("sides must partition E'")
    sub = A.restrict(ep)
    lam = connectivity_lambda(sub, z1)
    k = lam + 1
    if len(z1) < k or len(z2) < k:
        raise NotExactSeparation(f"sides too small for an exact {k}-separation")
    outside = sorted(A.labels() - ep)
    rows = set(A.rows)

    def lam_with(extra, side1_extra, side2_extra):
        s = A.restrict(ep | set(extra))
        return connectivity_lambda(s, z1 | set(side1_extra))

    def is_blocking(seq):
        if lam_with({seq[0]}, (), {seq[0]}) != k:
            return False
        if lam_with({seq[-1]}, {seq[-1]}, ()) != k:
            return False
        for a, b in zip(seq, seq[1:]):
            if lam_with({a, b}, {a}, {b}) != k:
                return False
        return True

    nodes = 0
    frontier = [(v,) for v in outside]
    while frontier:
        nxt = []
        for seq in frontier:
            nodes += 1
            limits.charge(nodes, "search_nodes")
            if is_blocking(seq):
                return SeparationReport(z1, z2, lam, ("BlockingSequence", seq))
            last = seq[-1]
            for v in outside:
                if v in seq:
                    continue
                if (last in rows) == (v in rows):
                    continue  # must alternate between row and column labels
                nxt.append(seq + (v,))
        frontier = nxt

    # no blocking sequence: find an induced k-separation extending the sides
    free = outside
    if len(free) > 22:
        raise ResourceLimitError("induced-separation brute force beyond cap")
    for bits in range(1 << len(free)):
        cand1 = set(z1) | {free[i] for i in range(len(free)) if bits >> i & 1}
        cand2 = A.labels() - cand1
        if not (z2 <= cand2):
            continue
        if connectivity_lambda(A, cand1) == lam:
            return SeparationReport(frozenset(cand1), frozenset(cand2), lam,
                                    ("InducedSeparation", (frozenset(cand1),
                                                           frozenset(cand2))))
    raise PMatrixError("dichotomy failed: neither certificate found")


def map_matrix(hom, A: PFMatrix) -> PFMatrix:
    """Apply a verified partial-field hom entrywise."""
    ents = {pos: hom.apply(v) for pos, v in A.entries.items()}
    return PFMatrix(hom.dst, A.rows, A.cols, ents)


# ---------------------------------------------------------------------------
# tensor construction
# ---------------------------------------------------------------------------

def tensor(A1: PFMatrix, A2: PFMatrix, prod_pf: PartialField):
    """Componentwise pairing of two same-shaped normalized matrices over the
    product partial field.  Requires identical labels and zero patterns
    (normalize both first; equality of their matroids makes that attainable)."""
    n1, n2 = A1.normalize("Auto"), A2.normalize("Auto")
    if n1.rows != n2.rows or n1.cols != n2.cols:
        raise PMatrixError("tensor needs identical label sets")
    if set(n1.entries) != set(n2.entries):
        raise PMatrixError("tensor needs identical zero patterns after normalization")
    ents = {pos: (n1.entries[pos], n2.entries[pos]) for pos in n1.entries}
    return PFMatrix(prod_pf, n1.rows, n1.cols, ents)
