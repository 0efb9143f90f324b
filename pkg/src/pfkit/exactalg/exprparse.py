"""Parsers for element expressions and ring declaration strings.

Expression grammar (evaluated straight into a target ring):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' integer)*
    atom   := integer | symbol | '(' expr (',' expr)* ')'

Symbols are single names like ``a``..``g``, ``i``, ``zeta``, ``tau`` and are
resolved by the ring.  A parenthesized comma list builds a product-ring
element.

Ring declarations:  ``QQ``, ``QQ(a,b)``, ``ZZ``, ``ZZ[1/2,1/3]``, ``GF(9)``,
``GF(2)(a)``, ``ZZ[zeta]/(zeta^2-zeta+1)``, and ``x``-joined products such as
``GF(3)xGF(5)``.
"""

from __future__ import annotations

import re
from fractions import Fraction


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[-+*/^(),])")


def _tokenize(text: str):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad character in expression at {text[pos:]!r}")
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, ring):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.literals = {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect and tok != expect):
            raise ValueError(f"expected {expect!r}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = self.ring.add(v, w) if op == "+" else self.ring.sub(v, w)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            w = self.unary()
            v = self.ring.mul(v, w) if op == "*" else self.ring.div(v, w)
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return self.ring.neg(self.unary())
        return self.power()

    def power(self):
        v = self.atom()
        while self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            k = int(self.take())
            v = self.ring.pow(v, -k if neg else k)
        return v

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            parts = [self.expr()]
            while self.peek() == ",":
                self.take()
                parts.append(self.expr())
            self.take(")")
            if len(parts) == 1:
                return parts[0]
            from .rings import ProductRing

            if not isinstance(self.ring, ProductRing) or len(self.ring.factors) != len(parts):
                raise ValueError("tuple expression outside a matching product ring")
            # parts were parsed in the product ring; componentwise literals
            # must be re-evaluated per factor, so only accept diagonal parts
            raise ValueError("tuple literals must be parsed with parse_product_expr")
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.take()
        if tok in self.literals:
            return self.literals[tok]
        if tok.isdigit():
            return self.ring.from_int(int(tok))
        return self.ring.atom(tok)


def parse_expr(text: str, ring):
    """Evaluate an expression string in the given ring."""
    from .rings import ProductRing

    literals = {}
    if isinstance(ring, ProductRing) and "," in text:
        text, literals = _lift_tuples(text, ring)
    toks = _tokenize(text)
    p = _Parser(toks, ring)
    p.literals = literals
    v = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing tokens in expression: {text!r}")
    return v


def _lift_tuples(text: str, ring):
    """Replace tuple literals ``(e1,...,ek)`` with placeholder symbols.

    Returns the rewritten text plus a map from placeholder name to the
    evaluated product-ring element, so the main parser can treat tuples
    as atoms inside larger expressions.
    """
    out, table, i = [], {}, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth, j, has_comma = 0, i, False
            while j < len(text):
                if text[j] == "(":
                    depth += 1
                elif text[j] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                elif text[j] == "," and depth == 1:
                    has_comma = True
                j += 1
            if depth != 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
            if has_comma:
                name = f"_tup{len(table)}"
                table[name] = _parse_product(text[i:j + 1], ring)
                out.append(name)
                i = j + 1
                continue
        out.append(ch)
        i += 1
    return "".join(out), table


def _parse_product(text: str, ring):
    """Top-level tuple literal ``( e1, e2, ... )`` for a product ring."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("product element must be a parenthesized tuple")
    inner = text[1:-1]
    parts, depth, cur = [], 0, []
    for ch in inner:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if len(parts) != len(ring.factors):
        raise ValueError(f"tuple arity {len(parts)} does not match {ring}")
    return tuple(parse_expr(p, r) for p, r in zip(parts, ring.factors))


# ---------------------------------------------------------------------------
# ring declarations
# ---------------------------------------------------------------------------

def parse_ring(text: str):
    from .rings import (GF, GF2FunctionField, FunctionField, NumberRing,
                        ProductRing, RationalRing)

    text = text.strip().replace(" ", "")
    # split a top-level product on 'x' between ')' / ']' and a ring start
    parts = _split_product(text)
    if len(parts) > 1:
        return ProductRing([parse_ring(p) for p in parts])

    if text == "QQ":
        return RationalRing(full_field=True)
    if text == "ZZ":
        return RationalRing()
    m = re.fullmatch(r"QQ\(([a-z](?:,[a-z])*)\)", text)
    if m:
        return FunctionField(m.group(1).split(","))
    m = re.fullmatch(r"ZZ\[((?:1/\d+)(?:,1/\d+)*)\]", text)
    if m:
        primes = tuple(int(p[2:]) for p in m.group(1).split(","))
        return RationalRing(primes)
    m = re.fullmatch(r"GF\(2\)\(([a-z])\)", text)
    if m:
        return GF2FunctionField(m.group(1))
    m = re.fullmatch(r"GF\((\d+)\)", text)
    if m:
        return GF(int(m.group(1)))
    m = re.fullmatch(r"ZZ\[([a-z]+)\]/\((.+)\)", text)
    if m:
        sym, polytext = m.group(1), m.group(2)
        coeffs = _parse_int_minpoly(polytext, sym)
        return NumberRing(coeffs, sym)
    raise ValueError(f"cannot parse ring declaration {text!r}")


def _split_product(text: str):
    parts, depth, cur = [], 0, []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "x" and depth == 0 and cur and cur[-1] in ")]":
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


def _parse_int_minpoly(text: str, sym: str):
    """Parse e.g. ``zeta^2-zeta+1`` into little-endian integer coefficients."""
    import sympy as sp

    s = sp.Symbol(sym)
    expr = sp.sympify(text.replace("^", "**"), locals={sym: s})
    poly = sp.Poly(expr, s)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    if coeffs[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    return coeffs
