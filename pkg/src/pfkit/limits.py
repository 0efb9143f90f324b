"""Resource budgets for the symbolic engines.

All potentially explosive computations (Groebner runs, matrix-minor searches,
enumeration loops) consume from a :class:`Limits` budget.  Defaults are sized
for desk-scale inputs; the ``PFKIT_LIMITS`` environment variable overrides
individual fields, e.g. ``PFKIT_LIMITS="gb_pairs=500000,search_nodes=10000000"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


class ResourceLimitError(RuntimeError):
    """A computation exceeded its configured budget."""


@dataclass(frozen=True)
class Limits:
    gb_pairs: int = 2_000_000        # critical pairs processed per Groebner run
    gb_poly_terms: int = 100_000     # terms allowed in any intermediate polynomial
    search_nodes: int = 20_000_000   # nodes in enumeration / backtracking searches
    fun_exponent: int = 3            # default exponent box for fun-set searches
    minor_depth: int = 64            # pivot/representative expansions per minor query

    def charge(self, used: int, field: str) -> None:
        cap = getattr(self, field)
        if used > cap:
            raise ResourceLimitError(f"{field} budget exceeded ({used} > {cap})")


def _parse_env(text: str) -> dict:
    out = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, val = chunk.partition("=")
        out[key.strip()] = int(val)
    return out


def current_limits() -> Limits:
    base = Limits()
    env = os.environ.get("PFKIT_LIMITS", "")
    if env:
        overrides = _parse_env(env)
        known = {k: v for k, v in overrides.items() if hasattr(base, k)}
        base = replace(base, **known)
    return base
