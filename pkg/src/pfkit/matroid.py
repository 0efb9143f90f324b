"""Finite matroids as explicit basis families.

Construction from labeled matrices, exchange-axiom checking, minors, duality,
connectivity, fundamental-circuit graphs, isomorphism search, and named
constructors with canonical representation matrices where one is documented.
"""

from __future__ import annotations

import itertools
import json

from .limits import ResourceLimitError, current_limits
from .pfield import PFError
from .pmatrix import PFMatrix

GROUND_CAP = 16  # exhaustive scans are O(2^n); keep desk scale


class MatroidError(PFError):
    pass


class NotABasis(MatroidError):
    pass


class NotIndependent(MatroidError):
    pass


class NotCoindependent(MatroidError):
    pass


class UnknownName(MatroidError):
    pass


class Matroid:
    """Ground labels in fixed order plus the family of bases."""

    def __init__(self, ground, bases, check=False):
        self.ground = tuple(ground)
        bs = {frozenset(b) for b in bases}
        if not bs:
            raise MatroidError("empty basis family")
        sizes = {len(b) for b in bs}
        if len(sizes) != 1:
            raise MatroidError("bases of unequal size")
        self.rank = sizes.pop()
        gset = set(self.ground)
        for b in bs:
            if not b <= gset:
                raise MatroidError("basis outside the ground set")
        self.bases = frozenset(bs)
        if check and not self.check_bases():
            raise MatroidError("exchange axiom fails")

    # -- core -------------------------------------------------------------
    def check_bases(self):
        """Exchange axiom over all basis pairs."""
        for b1 in self.bases:
            for b2 in self.bases:
                for x in b1 - b2:
                    if not any(b1 - {x} | {y} in self.bases for y in b2 - b1):
                        return False
        return True

    def is_basis(self, s):
        return frozenset(s) in self.bases

    def rank_of(self, subset):
        s = frozenset(subset)
        return max(len(b & s) for b in self.bases)

    def is_independent(self, s):
        s = frozenset(s)
        return self.rank_of(s) == len(s)

    def is_coindependent(self, s):
        s = frozenset(s)
        return any(not (b & s) for b in self.bases)

    def key(self):
        return (self.ground, tuple(sorted(tuple(sorted(b)) for b in self.bases)))

    def __eq__(self, other):
        return isinstance(other, Matroid) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # -- minors and duality -------------------------------------------------
    def dual(self):
        gset = set(self.ground)
        return Matroid(self.ground, [gset - b for b in self.bases])

    def contract(self, U):
        U = frozenset(U)
        if not self.is_independent(U):
            raise NotIndependent(f"{sorted(U)} is dependent")
        bs = [b - U for b in self.bases if U <= b]
        return Matroid([e for e in self.ground if e not in U], bs)

    def delete(self, V):
        V = frozenset(V)
        if not self.is_coindependent(V):
            raise NotCoindependent(f"{sorted(V)} is codependent")
        bs = [b for b in self.bases if not (b & V)]
        return Matroid([e for e in self.ground if e not in V], bs)

    def minor(self, contract=(), delete=()):
        U, V = frozenset(contract), frozenset(delete)
        if U & V:
            raise MatroidError("contraction and deletion sets overlap")
        return self.contract(U).delete(V)

    # -- connectivity --------------------------------------------------------
    def connectivity(self, Z):
        zs = frozenset(Z)
        co = frozenset(self.ground) - zs
        return self.rank_of(zs) + self.rank_of(co) - self.rank

    def is_connected(self):
        n = len(self.ground)
        if n <= 1:
            return True
        e0 = self.ground[0]
        for bits in range(1, 1 << (n - 1)):
            z = {e0} | {self.ground[i + 1] for i in range(n - 1) if bits >> i & 1}
            if len(z) < n and self.connectivity(z) == 0:
                return False
        return True

    def is_3connected(self, limits=None):
        n = len(self.ground)
        if n > GROUND_CAP:
            raise ResourceLimitError(f"ground set above cap ({n} > {GROUND_CAP})")
        e0 = self.ground[0]
        for bits in range(1 << (n - 1)):
            z = {e0} | {self.ground[i + 1] for i in range(n - 1) if bits >> i & 1}
            other = n - len(z)
            lam = None
            for k in (1, 2):
                if len(z) >= k and other >= k:
                    lam = self.connectivity(z) if lam is None else lam
                    if lam < k:
                        return False
        return True

    # -- fundamental graph ------------------------------------------------------
    def fundamental_graph(self, B):
        """Bipartite graph on B vs complement: edge (x, y) iff B - x + y is
        a basis (x lies in the fundamental circuit of y w.r.t. B)."""
        B = frozenset(B)
        if B not in self.bases:
            raise NotABasis(str(sorted(B)))
        edges = set()
        for x in B:
            for y in set(self.ground) - B:
                if B - {x} | {y} in self.bases:
                    edges.add((x, y))
        return edges

    # -- JSON ----------------------------------------------------------------------
    def to_json(self):
        return {"ground": list(self.ground), "rank": self.rank,
                "bases": sorted(sorted(b) for b in self.bases)}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        if "named" in data:
            return make_named(data["named"])[0]
        if "matrix" in data:
            return from_matrix(PFMatrix.from_json(data["matrix"]))
        return cls(data["ground"], [frozenset(b) for b in data["bases"]])


# ---------------------------------------------------------------------------
# construction from matrices
# ---------------------------------------------------------------------------

def from_matrix(A: PFMatrix) -> Matroid:
    """M[I A] on X + Y: B is a basis iff the square submatrix of A on rows
    X - B and columns Y & B has nonzero determinant."""
    X, Y = list(A.rows), list(A.cols)
    ground = X + Y
    r = len(X)
    ring = A.pf.ring
    bases = []
    for comb in itertools.combinations(ground, r):
        b = frozenset(comb)
        rows = tuple(x for x in X if x not in b)
        cols = tuple(y for y in Y if y in b)
        if len(rows) != len(cols):
            continue
        if not ring.is_zero(A._ring_det(rows, cols)):
            bases.append(b)
    return Matroid(ground, bases)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def _element_profile(M: Matroid):
    prof = {}
    for e in M.ground:
        cnt = sum(1 for b in M.bases if e in b)
        prof[e] = cnt
    return prof


def isomorphic(M1: Matroid, M2: Matroid, limits=None):
    """A ground-set bijection carrying bases onto bases, or None."""
    limits = limits or current_limits()
    if (len(M1.ground) != len(M2.ground) or M1.rank != M2.rank
            or len(M1.bases) != len(M2.bases)):
        return None
    p1, p2 = _element_profile(M1), _element_profile(M2)
    if sorted(p1.values()) != sorted(p2.values()):
        return None
    order = sorted(M1.ground, key=lambda e: (p1[e], e))
    nodes = 0

    def extend(mapping, used):
        nonlocal nodes
        nodes += 1
        limits.charge(nodes, "search_nodes")
        i = len(mapping)
        if i == len(order):
            img = {frozenset(mapping[e] for e in b) for b in M1.bases}
            return dict(mapping) if img == M2.bases else None
        e = order[i]
        for f in M2.ground:
            if f in used or p1[e] != p2[f]:
                continue
            mapping[e] = f
            # partial consistency: restricted basis counts must not overshoot
            if _partial_ok(M1, M2, mapping):
                res = extend(mapping, used | {f})
                if res:
                    return res
            del mapping[e]
        return None

    return extend({}, set())


def _partial_ok(M1, M2, mapping):
    dom = set(mapping)
    if len(dom) < M1.rank:
        return True
    img = {mapping[e] for e in dom}
    for comb in itertools.combinations(sorted(dom), M1.rank):
        b = frozenset(comb)
        ib = frozenset(mapping[e] for e in comb)
        if (b in M1.bases) != (ib in M2.bases):
            return False
    return True


# ---------------------------------------------------------------------------
# named constructors
# ---------------------------------------------------------------------------

A7_GRID = [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]]
A8_GRID = [[0, 1, 1, 2], [1, 0, 1, 1], [1, 1, 0, 1], [2, 1, 1, 0]]


def _uniform(r, n):
    ground = [f"e{i+1}" for i in range(n)]
    return Matroid(ground, itertools.combinations(ground, r))


def _ag23():
    pts = [(x, y) for x in range(3) for y in range(3)]
    labels = {p: f"p{p[0]}{p[1]}" for p in pts}
    bases = []
    for trip in itertools.combinations(pts, 3):
        sx = sum(p[0] for p in trip) % 3
        sy = sum(p[1] for p in trip) % 3
        if not (sx == 0 and sy == 0):
            bases.append(frozenset(labels[p] for p in trip))
    return Matroid([labels[p] for p in pts], bases)


def _vamos():
    ground = ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"]
    pairs = {"a": {"a1", "a2"}, "b": {"b1", "b2"},
             "c": {"c1", "c2"}, "d": {"d1", "d2"}}
    circuits = [pairs[u] | pairs[v]
                for u, v in [("a", "b"), ("a", "c"), ("a", "d"),
                             ("b", "c"), ("b", "d")]]
    bases = [frozenset(b) for b in itertools.combinations(ground, 4)
             if set(b) not in circuits]
    return Matroid(ground, bases)


def _q_plus_matrix(q, with_e=True):
    from . import catalog
    pf = catalog.make(f"GF({q})")
    ring = pf.ring
    alpha = None
    # a generator of the multiplicative group
    units = [u for u in ring.elements() if not ring.is_zero(u)]
    for u in units:
        pows, v = set(), ring.one()
        for _ in range(q - 1):
            v = ring.mul(v, u)
            pows.add(ring.key(v))
        if len(pows) == q - 1:
            alpha = u
            break
    cols, ents = [], {}
    one, zero = ring.one(), ring.zero()
    if with_e:
        cols.append("e")
        ents.update({("e1", "e"): one, ("e2", "e"): one, ("e3", "e"): one})
    power = one
    pows = []
    for _ in range(q - 1):
        pows.append(power)
        power = ring.mul(power, alpha)
    for i, p in enumerate(pows):
        for fam, vec in (("a", (zero, one, p)), ("b", (one, zero, p)),
                         ("c", (one, p, zero))):
            label = f"{fam}{i}"
            cols.append(label)
            for row, val in zip(("e1", "e2", "e3"), vec):
                if not ring.is_zero(val):
                    ents[(row, label)] = val
    return PFMatrix(pf, ("e1", "e2", "e3"), cols, ents)


def make_named(name, params=None):
    """(matroid, canonical representation matrix or None)."""
    from . import catalog
    text = name.strip().replace(" ", "")
    if text.startswith("U(") and text.endswith(")"):
        r, n = (int(t) for t in text[2:-1].split(","))
        return _uniform(r, n), None
    if text == "P8":
        A = PFMatrix.from_grid(catalog.make("D"),
                               [[str(v) for v in row] for row in A8_GRID])
        return from_matrix(A), A
    if text == "F7minus":
        A = PFMatrix.from_grid(catalog.make("D"),
                               [[str(v) for v in row] for row in A7_GRID])
        return from_matrix(A), A
    if text == "F7":
        A = PFMatrix.from_grid(catalog.make("GF(2)"),
                               [[str(v) for v in row] for row in A7_GRID])
        return from_matrix(A), A
    if text == "AG(2,3)":
        return _ag23(), None
    if text == "Vamos":
        return _vamos(), None
    if text.startswith("Qplus(") and text.endswith(")"):
        A = _q_plus_matrix(int(text[6:-1]), with_e=True)
        return from_matrix(A), A
    if text.startswith("Q(") and text.endswith(")"):
        A = _q_plus_matrix(int(text[2:-1]), with_e=False)
        return from_matrix(A), A
    raise UnknownName(name)
