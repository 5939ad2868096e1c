"""Caprace's criterion for right-angled Coxeter groups.

The group of a flag complex L is hyperbolic relative to its virtually
abelian subgroups unless L has a full subcomplex isomorphic to the
suspension of three points or of an edge plus a point.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .complex import build_complex, has_isolated_squares, is_flag

# pattern vertices: poles a, b then x, y, z
PATTERNS = {
    "susp_3points": build_complex([("a", "x"), ("a", "y"), ("a", "z"),
                                   ("b", "x"), ("b", "y"), ("b", "z")]),
    "susp_edge_point": build_complex([("a", "x", "y"), ("b", "x", "y"), ("a", "z"), ("b", "z")]),
}


@dataclass
class CapraceReport:
    relatively_hyperbolic: bool
    witness: dict | None = None

    def to_json(self):
        return {"relatively_hyperbolic": self.relatively_hyperbolic, "witness": self.witness}


def _has_triangle(L, tri, cache):
    if tri not in cache:
        cache[tri] = L.has_simplex([L.vertices[i] for i in tri])
    return cache[tri]


def caprace_check(L):
    """Search nonadjacent pole pairs, then triples of common neighbours.

    The witness is the least (a, b, x, y, z) in vertex order, with
    ``a < b`` and ``x < y < z`` for three points, and ``xy`` the edge for
    an edge plus a point.
    """
    if not is_flag(L).flag:
        warnings.warn("caprace_check is meant for flag complexes", stacklevel=2)
    nb = L.neighbors()
    tri_cache = {}
    for a in range(L.n):
        seen_b = set()
        for m in sorted(nb[a]):
            for b in nb[m]:
                if b > a and b not in nb[a]:
                    seen_b.add(b)
        for b in sorted(seen_b):
            common = sorted(nb[a] & nb[b])
            if len(common) < 3:
                continue
            found = None
            for x, y, z in itertools.combinations(common, 3):
                e = [(x, y) if y in nb[x] else None, (x, z) if z in nb[x] else None,
                     (y, z) if z in nb[y] else None]
                edges = [p for p in e if p]
                if not edges:
                    found = ("susp_3points", (a, b, x, y, z))
                elif len(edges) == 1:
                    p, q = edges[0]
                    r = ({x, y, z} - {p, q}).pop()
                    full = all(_has_triangle(L, tuple(sorted((pole, p, q))), tri_cache)
                               for pole in (a, b))
                    if full:
                        found = ("susp_edge_point", (a, b, p, q, r))
                if found:
                    break
            if found:
                name, vs = found
                return CapraceReport(False, {"pattern": name,
                                             "vertices": [L.vertices[i] for i in vs]})
    return CapraceReport(True, None)


_PAIRS = list(itertools.combinations(range(5), 2))
_TRIPLES = list(itertools.combinations(range(5), 3))


def _mask(has_edge, has_triangle):
    m = 0
    for k, p in enumerate(_PAIRS):
        if has_edge(p):
            m |= 1 << k
    for k, t in enumerate(_TRIPLES):
        if has_triangle(t):
            m |= 1 << (10 + k)
    return m


def _pattern_masks():
    """Edge/triangle bitmask of every placement of every pattern on five
    positions: all 120 bijections of each pattern."""
    table = {}
    for name, pat in PATTERNS.items():
        simp = set(pat.simplices())
        for perm in itertools.permutations(range(5)):
            at = dict(zip(perm, ("a", "b", "x", "y", "z")))
            key = lambda s: tuple(sorted(at[i] for i in s))
            m = _mask(lambda p: key(p) in simp, lambda t: key(t) in simp)
            table.setdefault(m, (name, perm))
    return table


def caprace_oracle(L):
    """Exhaustive: every 5-subset against every bijection to each pattern."""
    table = _pattern_masks()
    for five in itertools.combinations(L.vertices, 5):
        m = _mask(lambda p: L.has_simplex([five[i] for i in p]),
                  lambda t: L.has_simplex([five[i] for i in t]))
        if m in table:
            name, perm = table[m]
            return CapraceReport(False, {"pattern": name,
                                         "vertices": [five[perm[i]] for i in range(5)]})
    return CapraceReport(True, None)


@dataclass
class ImplicationReport:
    isolated: bool
    caprace: bool
    holds: bool


def isolated_implies_caprace(L):
    iso = has_isolated_squares(L).ok
    cap = caprace_check(L).relatively_hyperbolic
    return ImplicationReport(iso, cap, (not iso) or cap)
