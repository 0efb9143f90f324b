"""Sparse multivariate polynomials with integer coefficients.

This is the arithmetic substrate for the strong Groebner engine: exponent
vectors are plain tuples, polynomials are ``{exponent_tuple: int}`` maps, and
term orders are realised as sortable keys so leading terms come from ``max``.
Everything is exact; there is no floating point anywhere in this module.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_quo(b: tuple, a: tuple) -> tuple:
    return tuple(y - x for x, y in zip(b, a))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class TermOrder:
    """Graded reverse lexicographic order, optionally with a leading
    elimination block of ``block`` variables (block > tail)."""

    def __init__(self, nvars: int, block: int = 0):
        self.nvars = nvars
        self.block = block

    def key(self, m: tuple):
        if self.block:
            head, tail = m[: self.block], m[self.block :]
            return (
                sum(head),
                tuple(-e for e in reversed(head)),
                sum(tail),
                tuple(-e for e in reversed(tail)),
            )
        return (sum(m), tuple(-e for e in reversed(m)))


class PolyRing:
    """A named polynomial ring ZZ[x1..xn]; mostly a name <-> index table."""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        self.n = len(self.names)
        self.index = {nm: i for i, nm in enumerate(self.names)}
        if len(self.index) != self.n:
            raise ValueError("duplicate variable names")
        self._zero_mono = (0,) * self.n

    def var(self, name: str) -> "ZPoly":
        e = [0] * self.n
        e[self.index[name]] = 1
        return ZPoly(self, {tuple(e): 1})

    def gens(self):
        return [self.var(nm) for nm in self.names]

    def const(self, c: int) -> "ZPoly":
        return ZPoly(self, {self._zero_mono: int(c)} if c else {})

    def zero(self) -> "ZPoly":
        return ZPoly(self, {})

    def one(self) -> "ZPoly":
        return self.const(1)

    def from_terms(self, terms: Mapping[tuple, int]) -> "ZPoly":
        return ZPoly(self, {m: int(c) for m, c in terms.items() if c})

    def extend(self, extra_names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(extra_names))

    def parse_poly(self, text: str) -> "ZPoly":
        from .exprparse import parse_expr

        return parse_expr(text, _PolyView(self))

    def lift(self, f: "ZPoly", target: "PolyRing") -> "ZPoly":
        """Re-express f in a ring whose variables are a superset, matched by name."""
        pos = [target.index[nm] for nm in self.names]
        terms = {}
        for m, c in f.terms.items():
            e = [0] * target.n
            for i, exp in enumerate(m):
                e[pos[i]] = exp
            terms[tuple(e)] = c
        return ZPoly(target, terms)

    def project(self, f: "ZPoly", target: "PolyRing") -> "ZPoly":
        """Inverse of lift; f must not use variables outside target."""
        pos = {nm: i for i, nm in enumerate(self.names)}
        keep = [pos[nm] for nm in target.names]
        drop = [i for i in range(self.n) if self.names[i] not in target.index]
        terms = {}
        for m, c in f.terms.items():
            if any(m[i] for i in drop):
                raise ValueError("polynomial uses eliminated variables")
            terms[tuple(m[i] for i in keep)] = c
        return ZPoly(target, terms)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({','.join(self.names)})"


class _PolyView:
    """Ring-interface shim so the expression parser can build ZPolys."""

    def __init__(self, ring: "PolyRing"):
        self.ring = ring

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def from_int(self, n):
        return self.ring.const(n)

    def atom(self, name):
        return self.ring.var(name)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, k):
        if k < 0:
            raise ValueError("negative power in a polynomial expression")
        return a ** k

    def div(self, a, b):
        raise ValueError("division is not defined for integer polynomials")


class ZPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic structure ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.ring._zero_mono: 1}

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_mono in self.terms)

    def const_value(self) -> int:
        if not self.terms:
            return 0
        return self.terms[self.ring._zero_mono]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def support(self) -> set:
        """Indices of variables actually appearing."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def lead(self, order: TermOrder):
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order: TermOrder):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return ZPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return ZPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.ring.zero()
            return ZPoly(self.ring, {m: c * other for m, c in self.terms.items()})
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return ZPoly(self.ring, terms)

    __rmul__ = __mul__

    def mul_term(self, mono: tuple, coeff: int):
        return ZPoly(self.ring, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_const() and self.const_value() == other
        return isinstance(other, ZPoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def key(self):
        """Canonical hashable key (use after normal-form reduction)."""
        return frozenset(self.terms.items())

    # -- evaluation ---------------------------------------------------------
    def evaluate(self, ring, values: list):
        """Evaluate in an arbitrary coefficient ring.

        ``ring`` provides zero/one/add/mul and int embedding via ``ring.from_int``;
        ``values`` maps variable index -> ring payload.
        """
        acc = ring.zero()
        for m, c in self.terms.items():
            t = ring.from_int(c)
            for i, e in enumerate(m):
                if e:
                    v = values[i]
                    for _ in range(e):
                        t = ring.mul(t, v)
            acc = ring.add(acc, t)
        return acc

    # -- display -------------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        order = TermOrder(self.ring.n)
        bits = []
        for m, c in self.sorted_terms(order):
            factors = [
                self.ring.names[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            ]
            body = "*".join(factors)
            if not factors:
                bits.append(f"{c:+d}")
            elif c == 1:
                bits.append("+" + body)
            elif c == -1:
                bits.append("-" + body)
            else:
                bits.append(f"{c:+d}*{body}")
        text = "".join(bits)
        return text[1:] if text.startswith("+") else text


def det_zpoly(grid) -> ZPoly:
    """Division-free determinant (cofactor expansion with zero pruning) of a
    square list-of-lists of ZPoly entries."""
    n = len(grid)
    if n == 0:
        raise ValueError("empty determinant")
    if n == 1:
        return grid[0][0]
    # expand along the row with the most zeros
    def zeros(row):
        return sum(1 for e in row if e.is_zero())

    i = max(range(n), key=lambda r: zeros(grid[r]))
    ring = grid[0][0].ring
    acc = ring.zero()
    for j, e in enumerate(grid[i]):
        if e.is_zero():
            continue
        sub = [[grid[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
        cof = det_zpoly(sub)
        if (i + j) % 2:
            cof = -cof
        acc = acc + e * cof
    return acc
