"""Factorization of ring elements over a fixed basis of atoms.

``factor_over_basis(ring, elem, basis)`` tries to write ``elem`` as
``sign * prod(basis[i] ** e_i)`` with integer exponents and ``sign`` in
``{+1, -1}``.  Returns ``(sign, exponents)`` on success and
``None`` when a factor outside the basis remains.  This is the membership
engine behind partial fields whose unit group is generated by pairwise
coprime atoms (primes of ZZ, irreducible polynomials).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

import sympy as sp

from .rings import GF2FunctionField, FunctionField, RationalRing, Ring


def _factor_int_over(n: int, primes) -> Optional[dict]:
    if n == 0:
        return None
    n = abs(n)
    out = {p: 0 for p in primes}
    for p in primes:
        while n % p == 0:
            n //= p
            out[p] += 1
    return out if n == 1 else None


def _rational_over(fr: Fraction, primes) -> Optional[Tuple[int, list]]:
    if fr == 0:
        return None
    sign = 1 if fr > 0 else -1
    num = _factor_int_over(fr.numerator, primes)
    den = _factor_int_over(fr.denominator, primes)
    if num is None or den is None:
        return None
    return sign, [num[p] - den[p] for p in primes]


def _primitive(poly: sp.Poly) -> Tuple[sp.Rational, sp.Poly]:
    """Content/primitive split with positive leading coefficient."""
    c, prim = poly.primitive()
    if prim.LC() < 0:
        c, prim = -c, -prim
    return sp.Rational(c), prim


def factor_over_basis(ring: Ring, elem, basis) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Write ``elem = sign * prod basis[i]^e_i`` if possible, else ``None``.

    For polynomial bases the basis atoms are compared up to a rational
    constant; any leftover rational constant is then factored over the
    integer-prime members of the basis, and must finally reduce to +-1.
    """
    if isinstance(ring, RationalRing):
        primes = [int(b) for b in basis]
        got = _rational_over(elem, primes)
        if got is None:
            return None
        return got[0], tuple(got[1])

    if isinstance(ring, GF2FunctionField):
        return _gf2_over(ring, elem, basis)

    if isinstance(ring, FunctionField):
        return _funfield_over(ring, elem, basis)

    raise TypeError(f"factor_over_basis does not handle {ring!r}")


def _funfield_over(ring: FunctionField, elem, basis):
    e = ring.canon(elem)
    if ring.is_zero(e):
        return None
    num, den = sp.fraction(e)

    poly_idx, prime_idx = [], []
    prims = []
    for i, b in enumerate(basis):
        b = sp.sympify(b)
        if b.is_Rational:
            prime_idx.append(i)
            prims.append(None)
        else:
            poly_idx.append(i)
            prims.append(_primitive(sp.Poly(b, *ring.syms, domain="QQ"))[1])

    exps = [0] * len(basis)
    const = sp.Rational(1)

    for part, sgn in ((num, 1), (den, -1)):
        c, factors = sp.factor_list(part, *ring.syms, domain="QQ")
        const *= sp.Rational(c) ** sgn
        for f, m in factors:
            fc, fprim = _primitive(sp.Poly(f, *ring.syms, domain="QQ"))
            const *= (fc ** m) ** sgn
            hit = None
            for i in poly_idx:
                if prims[i] == fprim:
                    hit = i
                    break
            if hit is None:
                return None
            exps[hit] += sgn * m

    const = Fraction(const.p, const.q)
    primes = [int(sp.sympify(basis[i])) for i in prime_idx]
    got = _rational_over(const, primes)
    if got is None:
        return None
    sign, pexps = got
    for i, e in zip(prime_idx, pexps):
        exps[i] = e
    return sign, tuple(exps)


def _gf2_over(ring: GF2FunctionField, elem, basis):
    n, d = elem
    if n.is_zero:
        return None
    atoms = [b[0] for b in basis]  # basis payloads are (poly, 1) in lowest terms
    exps = [0] * len(basis)
    for part, sgn in ((n, 1), (d, -1)):
        c, factors = part.factor_list()
        if c != 1:
            return None
        for f, m in factors:
            hit = next((i for i, a in enumerate(atoms) if a == f), None)
            if hit is None:
                return None
            exps[hit] += sgn * m
    return 1, tuple(exps)
