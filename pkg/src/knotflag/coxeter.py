"""Right-angled Coxeter groups and Davis complexes of small flag complexes.

The Davis complex P_L is the cubical subcomplex of [-1, 1]^V whose faces
have a free coordinate set spanning a simplex of L (the empty set counts).
A face is stored as ``(free, signs)``: ``free`` is a sorted tuple of vertex
indices and ``signs`` a tuple of +-1 over the remaining coordinates, in
vertex order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .complex import (SimplicialComplex, build_complex, is_flag, is_sphere,
                      sphere3_certificate)
from .groups import GroupPresentation


class ResourceError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# groups


def racg_presentation(L):
    """One involution per vertex and one commutator per edge."""
    gens = [str(v) for v in L.vertices]
    rels = [(i + 1, i + 1) for i in range(len(gens))]
    for a, b in L.faces(1).tolist() if L.dim >= 1 else []:
        rels.append((a + 1, b + 1, -(a + 1), -(b + 1)))
    return GroupPresentation(gens, rels)


def _commuting(P):
    pairs = set()
    for r in P.relators:
        if len(r) == 4 and r[2] == -r[0] and r[3] == -r[1] and r[0] > 0 and r[1] > 0:
            pairs.add((r[0] - 1, r[1] - 1))
            pairs.add((r[1] - 1, r[0] - 1))
    return pairs


def racg_reduce(P, word):
    """Shortlex normal form of a word (generator names) in a right-angled
    Coxeter group: cancel equal letters separated only by letters commuting
    with them, then take the lexicographically least commutation shuffle."""
    index = {g: i for i, g in enumerate(P.generators)}
    try:
        w = [index[x] for x in word]
    except KeyError as e:
        raise KeyError("unknown generator %r" % e.args[0]) from None
    com = _commuting(P)
    changed = True
    while changed:
        changed = False
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                if w[j] == w[i]:
                    del w[j]
                    del w[i]
                    changed = True
                    break
                if (w[i], w[j]) not in com:
                    break
            if changed:
                break
    out = []
    rest = w
    while rest:
        best = None
        for k, x in enumerate(rest):
            if all((y, x) in com for y in rest[:k]) and (best is None or x < rest[best]):
                best = k
        out.append(rest[best])
        rest = rest[:best] + rest[best + 1:]
    return [P.generators[i] for i in out]


# --------------------------------------------------------------------------
# cubical complexes


@dataclass
class CubicalComplex:
    ambient: tuple
    faces: list          # (free, signs) pairs, sorted by dimension then lexicographically

    def f_vector(self):
        top = max((len(f) for f, _ in self.faces), default=-1)
        counts = [0] * (top + 1)
        for f, _ in self.faces:
            counts[len(f)] += 1
        return tuple(counts)

    def euler_characteristic(self):
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def vertices(self):
        return [s for f, s in self.faces if not f]

    def to_json(self):
        amb = [str(v) for v in self.ambient]
        out = []
        for free, signs in self.faces:
            rest = [i for i in range(len(amb)) if i not in free]
            out.append({"free": [amb[i] for i in free],
                        "signs": {amb[i]: s for i, s in zip(rest, signs)}})
        return {"ambient": amb, "faces": out}


def _simplices_with_empty(L):
    out = [()]
    for k in range(L.dim + 1):
        out.extend(tuple(r) for r in L.faces(k).tolist())
    return out


def davis_complex(L, vertex_cap=16):
    n = L.n
    simplices = _simplices_with_empty(L)
    if n > vertex_cap:
        total = sum(2 ** (n - len(s)) for s in simplices)
        raise ResourceError("%d vertices exceed the cap %d (would enumerate %d faces)"
                            % (n, vertex_cap, total))
    faces = []
    for s in sorted(simplices, key=lambda s: (len(s), s)):
        for signs in itertools.product((-1, 1), repeat=n - len(s)):
            faces.append((s, signs))
    return CubicalComplex(tuple(L.vertices), faces)


def _full_signs(free, signs, n):
    """Sign vector over all coordinates with 0 on the free ones."""
    out, it = [], iter(signs)
    for i in range(n):
        out.append(0 if i in free else next(it))
    return out


def _face_index(P):
    """free set -> set of sign tuples, built once per complex."""
    idx = getattr(P, "_index", None)
    if idx is None:
        idx = {}
        for free, signs in P.faces:
            idx.setdefault(free, set()).add(signs)
        P._index = idx
    return idx


def davis_vertex_link(P, vertex):
    """Link of a 0-face, as a simplicial complex on the ambient labels; the
    edge in direction v is named v, which is the canonical map to L."""
    vertex = tuple(vertex)
    simplices = []
    # a face holds the vertex iff its signs agree with the vertex off its free set
    for free, signs in _face_index(P).items():
        if free:
            fs = set(free)
            if tuple(x for i, x in enumerate(vertex) if i not in fs) in signs:
                simplices.append([P.ambient[i] for i in free])
    return build_complex(simplices) if simplices else SimplicialComplex([], {})


def _same_complex(A, B):
    return A.vertices == B.vertices and set(A.simplices()) == set(B.simplices())


def _bits(vertex):
    return sum(1 << i for i, x in enumerate(vertex) if x > 0)


def _links_match(P, L):
    """Boolean mask over vertex bit codes: the link there is exactly L.

    Each face with free set s contains the 2^|s| vertices that agree with
    its signs off s; a vertex's link is the set of free sets covering it.
    """
    n = len(P.ambient)
    if tuple(P.ambient) != tuple(L.vertices):
        return None
    wanted = {tuple(r) for k in range(L.dim + 1) for r in L.faces(k).tolist()}
    idx = _face_index(P)
    if {f for f in idx if f} != wanted:
        return np.zeros(1 << n, dtype=bool)
    ok = np.ones(1 << n, dtype=bool)
    for free, signs in idx.items():
        if not free:
            continue
        comp = [i for i in range(n) if i not in set(free)]
        base = np.array([sum(1 << c for c, x in zip(comp, sg) if x > 0) for sg in signs],
                        dtype=np.int64)
        subs = np.array([sum(1 << free[j] for j in range(len(free)) if m >> j & 1)
                         for m in range(1 << len(free))], dtype=np.int64)
        hit = np.zeros(1 << n, dtype=bool)
        hit[(base[:, None] | subs[None, :]).ravel()] = True
        ok &= hit
    return ok


def check_vertex_links(P, L):
    """Every vertex link equals L under the canonical map (property (b))."""
    match = _links_match(P, L)
    if match is not None:
        return all(match[_bits(v)] for v in P.vertices())
    return all(_same_complex(davis_vertex_link(P, v), L) for v in P.vertices())


@dataclass
class GromovReport:
    locally_cat0: bool
    witness: tuple | None = None


def gromov_check(P, L):
    """Locally CAT(0) iff every vertex link is flag; links equal to L are
    settled by L itself, any other link is built and tested."""
    rep = is_flag(L)
    match = _links_match(P, L)
    for v in P.vertices():
        if match is not None and match[_bits(v)]:
            continue
        if is_flag(davis_vertex_link(P, v)).flag != rep.flag:
            raise AssertionError("vertex link flagness disagrees with L")
    return GromovReport(rep.flag, rep.witness)


def join(L1, L2, tags=("1", "2")):
    """Simplicial join with vertex labels tagged apart."""
    A = [[(tags[0], L1.vertices[i]) for i in s] for s in _simplices_with_empty(L1)]
    B = [[(tags[1], L2.vertices[i]) for i in s] for s in _simplices_with_empty(L2)]
    return build_complex([a + b for a in A for b in B if a + b])


def join_product_check(L1, L2, vertex_cap=16):
    """P of the join is the product of the two Davis complexes: splitting
    each face's free set and signs by side is a bijection onto pairs of
    faces."""
    if L1.n + L2.n > vertex_cap:
        raise ResourceError("join exceeds the vertex cap")
    J = join(L1, L2)
    PJ = davis_complex(J, vertex_cap)
    P1, P2 = davis_complex(L1, vertex_cap), davis_complex(L2, vertex_cap)
    F1 = {(tuple(P1.ambient[i] for i in f), s) for f, s in P1.faces}
    F2 = {(tuple(P2.ambient[i] for i in f), s) for f, s in P2.faces}
    seen = set()
    n = J.n
    for free, signs in PJ.faces:
        full = _full_signs(set(free), signs, n)
        parts = []
        for tag in ("1", "2"):
            idx = [i for i in range(n) if J.vertices[i][0] == tag]
            parts.append((tuple(J.vertices[i][1] for i in idx if i in free),
                          tuple(full[i] for i in idx if i not in free)))
        if parts[0] not in F1 or parts[1] not in F2:
            return False
        seen.add(tuple(parts))
    return len(seen) == len(PJ.faces) == len(F1) * len(F2)


def manifold_check(P, L):
    """All vertex links are spheres of dimension dim L."""
    d = L.dim
    if d < 0:
        return False
    for v in P.vertices():
        lk = davis_vertex_link(P, v)
        if d <= 2:
            if not is_sphere(lk, d):
                return False
        elif d == 3:
            if not (lk.is_pure() and lk.dim == 3 and sphere3_certificate(lk).passed):
                return False
        else:
            raise ValueError("manifold_check supports dim L <= 3")
    return True
