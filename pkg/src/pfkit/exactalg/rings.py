"""Exact coefficient rings with canonical element forms.

Every ring class operates on plain payloads (ints, Fractions, tuples, sympy
expressions, ZPoly normal forms) rather than wrapped element objects, so the
hot paths (finite-field matrix work) stay cheap.  The shared interface:

    zero() one() from_int(n)
    add(a,b) sub(a,b) mul(a,b) neg(a)
    eq(a,b) is_zero(a) inv(a) is_unit(a)
    key(a)        -- hashable canonical form
    show(a)       -- printable string
    atom(name)    -- payload for a generator symbol, for the expression parser
    symbols       -- generator symbol names (empty tuple when the ring is
                     generated by 1, e.g. localizations of ZZ)
    elements()    -- iterator, finite rings only

``NotInvertible`` signals division failures.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional

import sympy as sp

from ..limits import current_limits
from .groebner import invert_mod, normal_form
from .zpoly import PolyRing, TermOrder, ZPoly


class NotInvertible(ArithmeticError):
    pass


class Ring:
    symbols: tuple = ()
    finite = False
    characteristic: Optional[int] = 0

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero())

    def is_unit(self, a) -> bool:
        try:
            self.inv(a)
            return True
        except NotInvertible:
            return False

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def atom(self, name: str):
        raise KeyError(f"unknown symbol {name!r} in ring {self}")

    def elements(self):
        raise TypeError(f"{self} is not finite")

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, text: str):
        from .exprparse import parse_expr

        return parse_expr(text, self)


# ---------------------------------------------------------------------------
# rationals and localizations of ZZ
# ---------------------------------------------------------------------------

def _factor_over(n: int, primes) -> Optional[dict]:
    """Factor |n| over the given prime list; None if a foreign prime remains."""
    if n == 0:
        return None
    n = abs(n)
    out = {}
    for p in primes:
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    return out if n == 1 else None


class RationalRing(Ring):
    """QQ, or the subring ZZ[1/p1..1/pk] viewed with Fraction payloads.

    All Fractions are accepted arithmetically; ``is_element`` tells whether a
    payload actually lies in the declared localization.
    """

    def __init__(self, inverted_primes: tuple = (), full_field: bool = False):
        self.inverted = tuple(sorted(set(inverted_primes)))
        self.full_field = full_field
        if full_field:
            self.name = "QQ"
        elif self.inverted:
            self.name = "ZZ[" + ",".join(f"1/{p}" for p in self.inverted) + "]"
        else:
            self.name = "ZZ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        if a == 0:
            raise NotInvertible("zero")
        if not self.full_field and _factor_over(a.numerator, self.inverted) is None:
            raise NotInvertible(f"{a} is not a unit of {self.name}")
        return 1 / a

    def is_element(self, a: Fraction) -> bool:
        if self.full_field:
            return True
        return _factor_over(a.denominator, self.inverted) is not None

    def key(self, a):
        return a

    def show(self, a):
        return str(a)

    def __repr__(self):
        return self.name


QQ = RationalRing(full_field=True)
ZZ = RationalRing()


# ---------------------------------------------------------------------------
# finite fields GF(p^k)
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod_mul(a, b, modpoly, p):
    """Multiply coefficient tuples mod (modpoly, p); modpoly is monic."""
    k = len(modpoly) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(k):
                prod[d - k + i] = (prod[d - k + i] - c * modpoly[i]) % p
    return tuple(prod[:k])


def _find_irreducible(p: int, k: int):
    """Monic irreducible of degree k over GF(p), as coeff list c0..ck (ck=1)."""
    for tail in itertools.product(range(p), repeat=k):
        coeffs = list(tail) + [1]
        if _irreducible(coeffs, p):
            return coeffs
    raise RuntimeError("no irreducible found")


def _irreducible(coeffs, p):
    k = len(coeffs) - 1
    # no roots
    for a in range(p):
        val = 0
        for c in reversed(coeffs):
            val = (val * a + c) % p
        if val == 0:
            return False
    if k <= 3:
        return True
    # trial division by monic quadratics (k <= 5 in practice)
    for tail in itertools.product(range(p), repeat=2):
        divisor = list(tail) + [1]
        if _poly_divides(divisor, coeffs, p):
            return False
    return True


def _poly_divides(d, f, p):
    f = list(f)
    dd = len(d) - 1
    while len(f) - 1 >= dd:
        lead = f[-1]
        if lead:
            shift = len(f) - 1 - dd
            for i in range(dd + 1):
                f[shift + i] = (f[shift + i] - lead * d[i]) % p
        f.pop()
    return all(c == 0 for c in f)


class GF(Ring):
    """GF(q) for a prime power q; payloads are ints 0..q-1 encoding the
    coefficient vector of the residue polynomial in base p."""

    finite = True

    def __init__(self, q: int):
        p, k = self._split(q)
        self.q, self.p, self.k = q, p, k
        self.characteristic = p
        self.name = f"GF({q})"
        self.symbols = ("a",) if k > 1 else ()
        if k == 1:
            self.modpoly = None
        else:
            self.modpoly = _find_irreducible(p, k)
        self._mul = None
        self._inv = None
        self._build_tables()

    @staticmethod
    def _split(q):
        for p in range(2, q + 1):
            if _is_prime(p):
                k, m = 0, 1
                while m < q:
                    m *= p
                    k += 1
                if m == q:
                    return p, k
        raise ValueError(f"{q} is not a prime power")

    def _decode(self, n):
        out = []
        for _ in range(self.k):
            out.append(n % self.p)
            n //= self.p
        return tuple(out)

    def _encode(self, coeffs):
        n = 0
        for c in reversed(coeffs):
            n = n * self.p + (c % self.p)
        return n

    def _build_tables(self):
        q, p, k = self.q, self.p, self.k
        if k == 1:
            return
        dec = [self._decode(n) for n in range(q)]
        self._mul = [[0] * q for _ in range(q)]
        for i in range(q):
            for j in range(i, q):
                v = self._encode(_poly_mod_mul(dec[i], dec[j], self.modpoly, p))
                self._mul[i][j] = v
                self._mul[j][i] = v
        self._inv = [0] * q
        for i in range(1, q):
            for j in range(1, q):
                if self._mul[i][j] == 1:
                    self._inv[i] = j
                    break

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p  # integers embed through the prime subfield

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._decode(a), self._decode(b)
        return self._encode([x + y for x, y in zip(da, db)])

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self._encode([-x for x in self._decode(a)])

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise NotInvertible("zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def eq(self, a, b):
        return a == b

    def key(self, a):
        return a

    def elements(self):
        return range(self.q)

    def atom(self, name):
        if self.k > 1 and name == "a":
            return self.p  # the residue of x
        raise KeyError(f"unknown symbol {name!r} in {self.name}")

    def show(self, a):
        if self.k == 1:
            return str(a)
        coeffs = self._decode(a)
        bits = []
        for i in reversed(range(self.k)):
            c = coeffs[i]
            if not c:
                continue
            if i == 0:
                bits.append(str(c))
            else:
                head = "" if c == 1 else str(c) + "*"
                bits.append(f"{head}a" + (f"^{i}" if i > 1 else ""))
        return "+".join(bits) if bits else "0"

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# number rings ZZ[s] / QQ(s) for a monic integer minimal polynomial
# ---------------------------------------------------------------------------

def _frac_poly_divmod(f, g):
    """Division of Fraction coefficient lists (little-endian), g nonzero."""
    f = list(f)
    q = [Fraction(0)] * max(1, len(f) - len(g) + 1)
    while len(f) >= len(g) and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) < len(g):
            break
        c = f[-1] / g[-1]
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] -= c * g[i]
        f.pop()
    while f and f[-1] == 0:
        f.pop()
    return q, f


class NumberRing(Ring):
    """QQ(s) with s a root of a monic integer polynomial (degree >= 2).

    Payloads are Fraction tuples of length deg (coefficients of the residue).
    Partial-field membership rules decide which payloads are actually in the
    ring of interest (e.g. ZZ[s] with some elements inverted).
    """

    def __init__(self, minpoly: Iterable[int], symbol: str, name: str = None):
        self.minpoly = tuple(int(c) for c in minpoly)  # little-endian, monic
        assert self.minpoly[-1] == 1
        self.deg = len(self.minpoly) - 1
        self.symbol = symbol
        self.symbols = (symbol,)
        self.name = name or f"ZZ[{symbol}]"

    def zero(self):
        return (Fraction(0),) * self.deg

    def one(self):
        return tuple([Fraction(1)] + [Fraction(0)] * (self.deg - 1))

    def from_int(self, n):
        return tuple([Fraction(n)] + [Fraction(0)] * (self.deg - 1))

    def gen(self):
        e = [Fraction(0)] * self.deg
        e[1] = Fraction(1)
        return tuple(e)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = [Fraction(0)] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        mp = [Fraction(c) for c in self.minpoly]
        for d in range(len(prod) - 1, self.deg - 1, -1):
            c = prod[d]
            if c:
                prod[d] = Fraction(0)
                for i in range(self.deg):
                    prod[d - self.deg + i] -= c * mp[i]
        return tuple(prod[: self.deg])

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        if all(x == 0 for x in a):
            raise NotInvertible("zero")
        # extended Euclid in QQ[x] against the minimal polynomial
        mp = [Fraction(c) for c in self.minpoly]
        r0, r1 = mp, list(a)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _frac_poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, s0, r1, s1 = r1, s1, r, s
        if len(r0) != 1:
            raise NotInvertible("non-unit (minimal polynomial not irreducible?)")
        c = r0[0]
        out = [x / c for x in s0]
        out += [Fraction(0)] * (self.deg - len(out))
        return tuple(out[: self.deg])

    def norm(self, a) -> Fraction:
        """Field norm: determinant of the multiplication-by-a matrix."""
        cols = []
        basis = []
        for i in range(self.deg):
            e = [Fraction(0)] * self.deg
            e[i] = Fraction(1)
            basis.append(tuple(e))
        for b in basis:
            cols.append(list(self.mul(a, b)))
        # column i = a * s^i; determinant of matrix with those columns
        mat = [[cols[j][i] for j in range(self.deg)] for i in range(self.deg)]
        return _frac_det(mat)

    def is_integral(self, a) -> bool:
        return all(x.denominator == 1 for x in a)

    def key(self, a):
        return a

    def atom(self, name):
        if name == self.symbol:
            return self.gen()
        raise KeyError(f"unknown symbol {name!r} in {self.name}")

    def show(self, a):
        bits = []
        for i in reversed(range(self.deg)):
            c = a[i]
            if not c:
                continue
            if i == 0:
                bits.append(f"{'+' if c > 0 else '-'}{abs(c)}")
            else:
                mono = self.symbol + (f"^{i}" if i > 1 else "")
                if abs(c) == 1:
                    bits.append(("+" if c > 0 else "-") + mono)
                else:
                    bits.append(f"{'+' if c > 0 else '-'}{abs(c)}*{mono}")
        if not bits:
            return "0"
        text = "".join(bits)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return self.name


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _frac_det(mat):
    n = len(mat)
    mat = [row[:] for row in mat]
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if mat[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            mat[i], mat[piv] = mat[piv], mat[i]
            det = -det
        det *= mat[i][i]
        for r in range(i + 1, n):
            f = mat[r][i] / mat[i][i]
            if f:
                for c in range(i, n):
                    mat[r][c] -= f * mat[i][c]
    return det


# ---------------------------------------------------------------------------
# rational function fields QQ(a1..ak) via sympy
# ---------------------------------------------------------------------------

class FunctionField(Ring):
    """QQ(a, b, ...) with canonicalized sympy expressions as payloads."""

    def __init__(self, symbols: Iterable[str], name: str = None):
        self.symbols = tuple(symbols)
        self.syms = sp.symbols(self.symbols) if len(self.symbols) > 1 else (sp.Symbol(self.symbols[0]),)
        self.name = name or ("QQ(" + ",".join(self.symbols) + ")")

    def canon(self, e):
        e = sp.cancel(sp.together(sp.nsimplify(e, rational=True) if isinstance(e, (int, float)) else e))
        n, d = sp.fraction(e)
        n, d = sp.expand(n), sp.expand(d)
        if d.is_number:
            if d == 0:
                raise ZeroDivisionError("zero denominator")
            return sp.expand(n / d)
        pn = sp.Poly(n, *self.syms, domain="QQ")
        pd = sp.Poly(d, *self.syms, domain="QQ")
        cd, pd = pd.primitive()
        cn, pn = pn.primitive()
        if pd.LC() < 0:
            pd, pn = -pd, -pn
        c = sp.Rational(cn) / sp.Rational(cd)
        return c * pn.as_expr() / pd.as_expr()

    def zero(self):
        return sp.Integer(0)

    def one(self):
        return sp.Integer(1)

    def from_int(self, n):
        return sp.Integer(n)

    def add(self, a, b):
        return self.canon(a + b)

    def neg(self, a):
        return self.canon(-a)

    def mul(self, a, b):
        return self.canon(a * b)

    def eq(self, a, b):
        if a == b:
            return True
        return sp.cancel(a - b) == 0

    def is_zero(self, a):
        return a == 0 or sp.cancel(a) == 0

    def inv(self, a):
        if self.is_zero(a):
            raise NotInvertible("zero")
        return self.canon(1 / a)

    def key(self, a):
        return sp.srepr(self.canon(a))

    def atom(self, name):
        if name in self.symbols:
            return sp.Symbol(name)
        raise KeyError(f"unknown symbol {name!r} in {self.name}")

    def show(self, a):
        return str(a)

    def __repr__(self):
        return self.name


class GF2FunctionField(Ring):
    """GF(2)(a): univariate rational functions in characteristic two.

    Payloads are pairs of sympy Polys over GF(2), coprime with monic
    denominator.
    """

    characteristic = 2

    def __init__(self, symbol: str = "a"):
        self.symbol = symbol
        self.symbols = (symbol,)
        self.x = sp.Symbol(symbol)
        self.name = f"GF(2)({symbol})"

    def _poly(self, e):
        return sp.Poly(e, self.x, modulus=2)

    def canon(self, pair):
        n, d = pair
        if n.is_zero:
            return (self._poly(0), self._poly(1))
        g = n.gcd(d)
        n, d = n.quo(g), d.quo(g)
        return (n, d)  # GF(2): everything is already monic

    def zero(self):
        return (self._poly(0), self._poly(1))

    def one(self):
        return (self._poly(1), self._poly(1))

    def from_int(self, n):
        return (self._poly(n % 2), self._poly(1))

    def add(self, a, b):
        (n1, d1), (n2, d2) = a, b
        return self.canon((n1 * d2 + n2 * d1, d1 * d2))

    def neg(self, a):
        return a

    def mul(self, a, b):
        (n1, d1), (n2, d2) = a, b
        return self.canon((n1 * n2, d1 * d2))

    def eq(self, a, b):
        return a[0] == b[0] and a[1] == b[1]

    def is_zero(self, a):
        return a[0].is_zero

    def inv(self, a):
        if self.is_zero(a):
            raise NotInvertible("zero")
        return (a[1], a[0])

    def key(self, a):
        return (tuple(a[0].all_coeffs()), tuple(a[1].all_coeffs()))

    def atom(self, name):
        if name == self.symbol:
            return (self._poly(self.x), self._poly(1))
        raise KeyError(name)

    def show(self, a):
        n, d = a
        if d == self._poly(1):
            return str(n.as_expr())
        return f"({n.as_expr()})/({d.as_expr()})"

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# products and quotients
# ---------------------------------------------------------------------------

class ProductRing(Ring):
    def __init__(self, factors: list):
        self.factors = list(factors)
        self.name = "x".join(getattr(r, "name", repr(r)) for r in self.factors)
        self.finite = all(r.finite for r in self.factors)
        chars = {r.characteristic for r in self.factors}
        self.characteristic = chars.pop() if len(chars) == 1 else None

    def zero(self):
        return tuple(r.zero() for r in self.factors)

    def one(self):
        return tuple(r.one() for r in self.factors)

    def from_int(self, n):
        return tuple(r.from_int(n) for r in self.factors)

    def add(self, a, b):
        return tuple(r.add(x, y) for r, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(r.neg(x) for r, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(r.mul(x, y) for r, x, y in zip(self.factors, a, b))

    def eq(self, a, b):
        return all(r.eq(x, y) for r, x, y in zip(self.factors, a, b))

    def is_zero(self, a):
        return all(r.is_zero(x) for r, x in zip(self.factors, a))

    def inv(self, a):
        return tuple(r.inv(x) for r, x in zip(self.factors, a))

    def key(self, a):
        return tuple(r.key(x) for r, x in zip(self.factors, a))

    def elements(self):
        return itertools.product(*[r.elements() for r in self.factors])

    def show(self, a):
        return "(" + ",".join(r.show(x) for r, x in zip(self.factors, a)) + ")"

    def __repr__(self):
        return self.name


class QuotientRing(Ring):
    """ZZ[x..]/I with Groebner normal forms as canonical payloads."""

    def __init__(self, polyring: PolyRing, gb: list, name: str = None):
        self.polyring = polyring
        self.order = TermOrder(polyring.n)
        self.gb = gb
        self.name = name or f"ZZ[{','.join(polyring.names)}]/I"
        self.symbols = polyring.names
        self._inv_cache = {}
        self._limits = current_limits()

    def nf(self, f: ZPoly) -> ZPoly:
        return normal_form(f, self.gb, self.order, self._limits)

    def zero(self):
        return self.polyring.zero()

    def one(self):
        return self.nf(self.polyring.one())

    def from_int(self, n):
        return self.nf(self.polyring.const(n))

    def add(self, a, b):
        return self.nf(a + b)

    def neg(self, a):
        return self.nf(-a)

    def mul(self, a, b):
        return self.nf(a * b)

    def eq(self, a, b):
        return (a - b).is_zero() or self.nf(a - b).is_zero()

    def is_zero(self, a):
        return a.is_zero() or self.nf(a).is_zero()

    def inv(self, a):
        k = self.nf(a).key()
        if k not in self._inv_cache:
            self._inv_cache[k] = invert_mod(self.gb, self.polyring, a, self._limits)
        out = self._inv_cache[k]
        if out is None:
            raise NotInvertible(f"{a} has no exhibited inverse mod I")
        return self.nf(out)

    def is_trivial(self) -> bool:
        return self.one().is_zero()

    def key(self, a):
        return self.nf(a).key()

    def atom(self, name):
        return self.nf(self.polyring.var(name))

    def show(self, a):
        return repr(a)

    def __repr__(self):
        return self.name


class TrivialRing(Ring):
    """The zero ring (1 = 0); carried so that trivial partial fields are
    representable."""

    finite = True
    name = "0"

    def zero(self):
        return 0

    def one(self):
        return 0

    def from_int(self, n):
        return 0

    def add(self, a, b):
        return 0

    def neg(self, a):
        return 0

    def mul(self, a, b):
        return 0

    def eq(self, a, b):
        return True

    def inv(self, a):
        return 0

    def key(self, a):
        return 0

    def elements(self):
        return (0,)

    def show(self, a):
        return "0"

    def __repr__(self):
        return "TrivialRing"
