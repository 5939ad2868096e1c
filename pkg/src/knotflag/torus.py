"""The prism, the nine-tetrahedron block and the 36-tetrahedron solid torus.

Labels: level centres are ``c{l}`` and outer vertices ``p{l}.{k}`` with
``l`` in 0..3 (taken cyclically) and ``k`` in 0..2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import SimplicialComplex, Square, build_complex, enumerate_squares

LEVELS = 4


class ConstructionError(AssertionError):
    pass


def _require(cond, msg):
    if not cond:
        raise ConstructionError(msg)


@dataclass(frozen=True)
class Prism:
    complex: SimplicialComplex
    bottom: tuple
    top: tuple
    F: tuple
    G: tuple


# chains of coordinates raised one at a time, read off the cube corners
_PRISM_TETS = (
    ("000", "001", "011", "111"),  # x1 <= x2 <= x3
    ("000", "010", "011", "111"),  # x1 <= x3 <= x2
    ("000", "010", "110", "111"),  # x3 <= x1 <= x2
)


def build_prism():
    """Half-cube ``x1 <= x2`` split into three tetrahedra along the chains
    through the origin; the F face is ``x1 = 0`` and the G face ``x1 = x2``."""
    K = build_complex(_PRISM_TETS)
    F = (("000", "001", "011"), ("000", "010", "011"))
    G = (("000", "001", "111"), ("000", "110", "111"))
    for tri in F + G:
        _require(K.has_simplex(tri), "prism face triangle missing")
    return Prism(K, ("000", "010", "110"), ("001", "011", "111"), F, G)


def build_cube():
    """Both half-cubes; six tetrahedra sharing the main diagonal."""
    swap = lambda s: s[1] + s[0] + s[2]
    tets = list(_PRISM_TETS) + [tuple(swap(v) for v in t) for t in _PRISM_TETS]
    return build_complex(tets)


def _block_tets(b, t, o, o2):
    """Three prisms around the edge ``b t``; prism ``i`` sends the corners
    000, 001, 010, 110, 011, 111 to b, t, o[i], o[i-1], o2[i], o2[i-1]."""
    tets = []
    for i in range(3):
        tets.append((b, t, o2[i], o2[i - 1]))
        tets.append((b, o[i], o2[i], o2[i - 1]))
        tets.append((b, o[i], o[i - 1], o2[i - 1]))
    return tets


@dataclass(frozen=True)
class BlockComplex:
    complex: SimplicialComplex
    bottom_center: str
    top_center: str
    bottom_outer: tuple
    top_outer: tuple

    @property
    def center_edge(self):
        return (self.bottom_center, self.top_center)

    @property
    def vertex_set(self):
        return frozenset((self.bottom_center, self.top_center) + self.bottom_outer + self.top_outer)


def _check_block(B):
    K = B.complex
    _require(len(K.faces(3)) == 9 and K.n == 8, "block must have 9 tetrahedra on 8 vertices")
    nb = K.neighbors()
    b, t = K.idx(B.bottom_center), K.idx(B.top_center)
    _require(len(nb[b]) == 7, "bottom centre must see every vertex")
    bottom = {K.idx(v) for v in B.bottom_outer} | {b}
    _require(nb[t] & bottom == {b}, "top centre sees a bottom vertex other than the bottom centre")
    centre_edges = [e for e in K.faces(1).tolist() if set(e) == {b, t}]
    _require(len(centre_edges) == 1, "centre edge missing")


def build_block(b="b", t="t", o=("o0", "o1", "o2"), o2=("u0", "u1", "u2")):
    K = build_complex(_block_tets(b, t, tuple(o), tuple(o2)))
    B = BlockComplex(K, b, t, tuple(o), tuple(o2))
    _check_block(B)
    return B


def center(l, prefix=""):
    return "%sc%d" % (prefix, l % LEVELS)


def outer(l, k, prefix=""):
    return "%sp%d.%d" % (prefix, l % LEVELS, k % 3)


@dataclass
class SolidTorusComplex:
    complex: SimplicialComplex
    interior_vertices: tuple
    boundary_vertices: tuple
    core: Square
    blocks: tuple
    block_adjacency: dict
    meridian: tuple
    longitude: tuple
    boundary: SimplicialComplex = field(repr=False, default=None)


def build_solid_torus(prefix=""):
    """Four blocks stacked cyclically, level ``l`` on the bottom of block ``l``.
    Every label gets ``prefix`` prepended."""
    tets, blocks = [], []
    for l in range(LEVELS):
        o = tuple(outer(l, k, prefix) for k in range(3))
        o2 = tuple(outer(l + 1, k, prefix) for k in range(3))
        b, t = center(l, prefix), center(l + 1, prefix)
        tets.extend(_block_tets(b, t, o, o2))
        blocks.append(build_block(b, t, o, o2))
    K = build_complex(tets)
    interior = tuple(center(l, prefix) for l in range(LEVELS))
    boundary = tuple(outer(l, k, prefix) for l in range(LEVELS) for k in range(3))
    adjacency = {}
    for i in range(LEVELS):
        for j in range(LEVELS):
            if i != j:
                share = blocks[i].vertex_set & blocks[j].vertex_set
                adjacency[(i, j)] = "adjacent" if share else "opposite"
    N = SolidTorusComplex(
        complex=K,
        interior_vertices=interior,
        boundary_vertices=boundary,
        core=Square.canonical(interior),
        blocks=tuple(blocks),
        block_adjacency=adjacency,
        meridian=tuple(outer(0, k, prefix) for k in range(3)),
        longitude=tuple(outer(l, 0, prefix) for l in range(LEVELS)),
        boundary=K.boundary_complex(),
    )
    check_solid_torus(N)
    return N


def check_solid_torus(N):
    K = N.complex
    _require(len(K.faces(3)) == 36 and K.n == 16, "solid torus must have 36 tetrahedra, 16 vertices")
    inner = {K.idx(v) for v in N.interior_vertices}
    for tet in K.faces(3).tolist():
        _require(inner & set(tet), "tetrahedron without an interior vertex")
    nb = K.neighbors()
    for v in N.interior_vertices:
        seen = {K.vertices[u] for u in nb[K.idx(v)]} - set(N.interior_vertices)
        _require(any(seen == set(B.bottom_outer + B.top_outer) for B in N.blocks),
                 "interior vertex sees boundary vertices of more than one block")
    for (i, j), rel in N.block_adjacency.items():
        if rel == "opposite":
            _require(not (N.blocks[i].vertex_set & N.blocks[j].vertex_set), "opposite blocks meet")
    _require(interior_squares(N) == [N.core], "the core must be the only interior square")
    bd = N.boundary
    for sq in enumerate_squares(K):
        _require(sq == N.core or all(
            bd.has_simplex((a, b)) for a, b in zip(sq.cycle, sq.cycle[1:] + sq.cycle[:1])),
            "square %r is neither the core nor on the boundary" % (sq.cycle,))
    _require(N.boundary.f_vector() == (12, 36, 24), "boundary torus has the wrong f-vector")


def interior_squares(N):
    """Squares all of whose vertices are interior."""
    inner = set(N.interior_vertices)
    return [sq for sq in enumerate_squares(N.complex) if inner.issuperset(sq.cycle)]


def classify_tetrahedra(N):
    """Split tetrahedra into joins (interior vertex) * (boundary triangle) and
    (core edge) * (boundary edge)."""
    K = N.complex
    inner = set(N.interior_vertices)
    core_edges = {frozenset(e) for e in zip(N.core.cycle, N.core.cycle[1:] + N.core.cycle[:1])}
    bd = N.boundary
    type_a, type_b = [], []
    for tet in K.labels_of(K.faces(3)):
        ins = [v for v in tet if v in inner]
        outs = [v for v in tet if v not in inner]
        if len(ins) == 1 and bd.has_simplex(outs):
            type_a.append(tet)
        elif len(ins) == 2 and frozenset(ins) in core_edges and bd.has_simplex(outs):
            type_b.append(tet)
        else:
            raise ConstructionError("tetrahedron %r fits neither pattern" % (tet,))
    return type_a, type_b


def block_intersection(N, i, j):
    if not (0 <= i < LEVELS and 0 <= j < LEVELS):
        raise IndexError("block index out of range")
    if i == j:
        raise ValueError("block_intersection needs two different blocks")
    share = N.blocks[i].vertex_set & N.blocks[j].vertex_set
    if not share:
        return SimplicialComplex([], {})
    return N.complex.induced(share)


def affine_coordinates(prefix=""):
    """Rational coordinates on R^2/Z^2 making the 24 boundary triangles affine.

    Level ``l`` sits at height ``l/4`` and is sheared by ``l/4``; the three
    outer vertices of a level are a third apart horizontally.  In these
    coordinates the meridian has class (1, 0) and the longitude (1, 1).
    """
    return {outer(l, k, prefix): (Fraction(k, 3) + Fraction(l, 4), Fraction(l, 4))
            for l in range(LEVELS) for k in range(3)}
