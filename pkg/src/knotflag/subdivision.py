"""Subdivisions: the ten-triangle template, surface and 3-complex subdivision,
the solid torus refinement N -> N' and collars between a surface and one of
its subdivisions.

New vertices get deterministic string labels built from the labels of the
base simplex that carries them, so independently subdivided pieces agree on
shared faces:

* ``m[a|b]``        midpoint of the edge ab
* ``i[a|b|c]@a``    template vertex of triangle abc next to corner a
* ``g[a|b|c|d]#n``  interior vertex n of the gadget filling tetrahedron abcd
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .complex import SimplicialComplex, build_complex, enumerate_squares, is_flag
from .torus import ConstructionError, classify_tetrahedra


class VerificationFailed(RuntimeError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class CarrierError(ValueError):
    pass


def mid(a, b):
    a, b = sorted((a, b))
    return "m[%s|%s]" % (a, b)


def inner(tri, corner):
    return "i[%s]@%s" % ("|".join(sorted(tri)), corner)


def template_triangles(a, b, c):
    """Ten triangles refining abc; symmetric under every permutation of the corners."""
    C = sorted((a, b, c))
    tris = []
    for k in range(3):
        ck, cn, cp = C[k], C[(k + 1) % 3], C[k - 1]
        ik, inext = inner(C, ck), inner(C, cn)
        tris.append((ck, mid(ck, cn), ik))
        tris.append((ck, mid(ck, cp), ik))
        tris.append((mid(ck, cn), ik, inext))
    tris.append(tuple(inner(C, x) for x in C))
    return tris


@dataclass(frozen=True)
class TriangleTemplate:
    corners: tuple
    midpoints: tuple
    interior: tuple
    triangles: tuple
    boundary_map: dict

    @property
    def vertices(self):
        return self.corners + self.midpoints + self.interior

    def complex(self):
        return build_complex(self.triangles)


def triangle_template(a="a", b="b", c="c"):
    C = tuple(sorted((a, b, c)))
    edges = list(itertools.combinations(C, 2))
    return TriangleTemplate(
        corners=C,
        midpoints=tuple(mid(u, v) for u, v in edges),
        interior=tuple(inner(C, x) for x in C),
        triangles=tuple(template_triangles(*C)),
        boundary_map={(u, v): ((u, mid(u, v)), (mid(u, v), v)) for u, v in edges},
    )


@dataclass
class CarrierMap:
    """Refinement with the smallest base simplex carrying each vertex."""
    refinement: SimplicialComplex
    base: SimplicialComplex
    vertex_carrier: dict

    def carrier(self, simplex):
        out = set()
        for v in simplex:
            out.update(self.vertex_carrier[v])
        return tuple(sorted(out))

    def validate(self):
        """Every base vertex carries exactly one refinement vertex (itself,
        when labels are shared) and every refinement simplex is carried by a
        base simplex."""
        R = self.refinement
        over = {}
        for v in R.vertices:
            c = self.vertex_carrier[v]
            if len(c) == 1:
                if c[0] in over:
                    raise CarrierError("two vertices over base vertex %r" % (c[0],))
                over[c[0]] = v
        for v in self.base.vertices:
            if v not in over or (v in R.index and over[v] != v):
                raise CarrierError("base vertex %r is not carried correctly" % (v,))
        for k in range(R.dim + 1):
            for s in R.labels_of(R.faces(k)):
                c = self.carrier(s)
                if not self.base.has_simplex(c):
                    raise CarrierError("carrier %r of %r is not a base simplex" % (c, s))
        return True

    def to_json(self):
        return {"vertex_carrier": {str(v): [str(x) for x in c]
                                   for v, c in sorted(self.vertex_carrier.items())}}


def _surface_carriers(K):
    vc = {v: (v,) for v in K.vertices}
    for a, b in K.labels_of(K.faces(1)):
        vc[mid(a, b)] = (a, b)
    if K.dim >= 2:
        for t in K.labels_of(K.faces(2)):
            for x in t:
                vc[inner(t, x)] = t
    return vc


def subdivide_surface(K):
    """Bisect every edge and replace every triangle by the template."""
    if K.dim > 2:
        raise ValueError("subdivide_surface takes complexes of dimension <= 2")
    simplices = []
    for s in K.maximal_simplices():
        labels = [K.vertices[i] for i in s]
        if len(labels) == 3:
            simplices.extend(template_triangles(*labels))
        elif len(labels) == 2:
            a, b = labels
            simplices.extend([(a, mid(a, b)), (mid(a, b), b)])
        else:
            simplices.append(tuple(labels))
    R = build_complex(simplices)
    return R, CarrierMap(R, K, _surface_carriers(K))


# --------------------------------------------------------------------------
# the tetrahedron gadget


def _local_template_sphere():
    """Template-subdivided boundary of the tetrahedron on corners 0..3,
    with abstract vertex keys."""
    C = lambda k: ("c", k)
    M = lambda j, k: ("m",) + tuple(sorted((j, k)))
    I = lambda tri, k: ("i", tri, k)
    tris = []
    for tri in itertools.combinations(range(4), 3):
        for k in range(3):
            ck, cn, cp = tri[k], tri[(k + 1) % 3], tri[k - 1]
            tris.append((C(ck), M(ck, cn), I(tri, ck)))
            tris.append((C(ck), M(ck, cp), I(tri, ck)))
            tris.append((M(ck, cn), I(tri, ck), I(tri, cn)))
        tris.append(tuple(I(tri, x) for x in tri))
    return tris


@lru_cache(maxsize=1)
def gadget_table():
    """Flag, square-free 3-ball whose boundary is the template sphere.

    The ball is built in layers over the template sphere S: a copy of S
    (the boundary), a vertex per triangle of S, a second copy of S, a layer
    of edge vertices, then the same layers mirrored and closed by a cone
    point.  Removing the open star of the first cone point of this layered
    3-sphere leaves the ball.  Returns ``(boundary_keys, interior_keys,
    tetrahedra)`` with tetrahedra as tuples of keys.
    """
    S = _local_template_sphere()
    verts = sorted({x for t in S for x in t})
    edges = sorted({e for t in S for e in itertools.combinations(sorted(t), 2)})
    stris = [tuple(sorted(t)) for t in S]
    shares_edge = {t: [u for u in stris if u != t and len(set(u) & set(t)) == 2] for t in stris}
    G = nx.Graph()
    for side in (0, 1):
        apex = ("v", side)
        for x in verts:
            G.add_edge(apex, ("x", x, side))
            G.add_edge(("x", x, side), ("q", x, side))
        for a, b in edges:
            G.add_edge(("x", a, side), ("x", b, side))
            G.add_edge(("q", a, side), ("E", a, b))
            G.add_edge(("q", b, side), ("E", a, b))
        for t in stris:
            for x in t:
                G.add_edge(("x", x, side), ("p", t, side))
                G.add_edge(("p", t, side), ("q", x, side))
            for e in itertools.combinations(t, 2):
                G.add_edge(("p", t, side), ("E",) + e)
            for u in shares_edge[t]:
                G.add_edge(("p", t, side), ("p", u, side))
    for x in verts:
        G.add_edge(("q", x, 0), ("q", x, 1))
    for t in stris:
        for e, f in itertools.combinations(list(itertools.combinations(t, 2)), 2):
            G.add_edge(("E",) + e, ("E",) + f)
    G.remove_node(("v", 0))
    tets = [tuple(c) for c in nx.enumerate_all_cliques(G) if len(c) == 4]
    boundary = [("x", x, 0) for x in verts]
    interior = sorted((n for n in G if n[0] != "x" or n[2] != 0), key=repr)
    return boundary, interior, tets


def _gadget_tets(tet_labels):
    boundary, interior, tets = gadget_table()
    C = sorted(tet_labels)
    name = {}
    for key in boundary:
        x = key[1]
        if x[0] == "c":
            name[key] = C[x[1]]
        elif x[0] == "m":
            name[key] = mid(C[x[1]], C[x[2]])
        else:
            name[key] = inner([C[j] for j in x[1]], C[x[2]])
    prefix = "g[%s]#" % "|".join(C)
    for n, key in enumerate(interior):
        name[key] = prefix + "%03d" % n
    return [tuple(name[v] for v in t) for t in tets], [name[k] for k in interior]


def ps_subdivide_3(K, verify=True):
    """Subdivide a pure 3-complex so the result is flag with no squares.

    Triangles are refined by the template and every tetrahedron is filled
    with the gadget ball, whose boundary is exactly the refined boundary of
    the tetrahedron.  With ``verify`` the result is checked to be flag and
    square free and :class:`VerificationFailed` carries a witness otherwise.
    """
    if not (K.dim == 3 and K.is_pure()):
        raise ValueError("ps_subdivide_3 needs a pure 3-dimensional complex")
    tets = []
    vc = _surface_carriers(K)
    for t in K.labels_of(K.faces(3)):
        pieces, fresh = _gadget_tets(t)
        tets.extend(pieces)
        for v in fresh:
            vc[v] = tuple(sorted(t))
    R = build_complex(tets)
    if verify:
        verify_flag_no_squares(R)
    return R, CarrierMap(R, K, vc)


def verify_flag_no_squares(R):
    rep = is_flag(R)
    if not rep.flag:
        raise VerificationFailed("subdivision is not flag", rep.witness)
    sq = enumerate_squares(R)
    if sq:
        raise VerificationFailed("subdivision has a square", sq[0].cycle)


# --------------------------------------------------------------------------
# solid torus refinement


@dataclass
class SubdividedSolidTorus:
    complex: SimplicialComplex
    base: object
    interior_vertices: tuple
    core: object
    boundary: SimplicialComplex
    carrier: CarrierMap


def subdivide_solid_torus(N):
    """Refine the boundary by the template, cone each interior-vertex
    tetrahedron over its refined boundary triangle and split each core-edge
    tetrahedron along the midpoint of its boundary edge."""
    type_a, type_b = classify_tetrahedra(N)
    inner_set = set(N.interior_vertices)
    tets = []
    for t in type_a:
        v = next(x for x in t if x in inner_set)
        tri = [x for x in t if x not in inner_set]
        tets.extend((v,) + s for s in template_triangles(*tri))
    for t in type_b:
        v, w = [x for x in t if x in inner_set]
        a, b = [x for x in t if x not in inner_set]
        tets.append((v, w, a, mid(a, b)))
        tets.append((v, w, mid(a, b), b))
    K = build_complex(tets)
    vc = _surface_carriers(N.boundary)
    for v in N.interior_vertices:
        vc[v] = (v,)
    # carriers of boundary vertices inside N are the boundary simplices
    Np = SubdividedSolidTorus(K, N, N.interior_vertices, N.core, K.boundary_complex(),
                              CarrierMap(K, N.complex, vc))
    if len(K.faces(3)) != 24 * 10 + 12 * 2:
        raise ConstructionError("refined solid torus has the wrong size")
    return Np


@dataclass
class BlockPattern:
    block: int
    annulus: SimplicialComplex
    bottom: tuple
    special: dict
    intersections: dict

    @property
    def ok(self):
        return (len(self.annulus.faces(2)) == 60 and len(self.special) == 6
                and all(self.intersections.values()))


def _annulus(Np, i):
    B = Np.base.blocks[i]
    outer = set(B.bottom_outer + B.top_outer)
    tris = []
    bd = Np.boundary
    for t in bd.labels_of(bd.faces(2)):
        if set(Np.carrier.carrier(t)) <= outer:
            tris.append(t)
    return build_complex(tris)


def _is_cycle_of_length(L, n):
    if L.n != n or len(L.faces(1)) != n or L.dim != 1:
        return False
    return all(len(x) == 2 for x in L.neighbors()) and nx.is_connected(
        nx.Graph(L.labels_of(L.faces(1))))


def block_boundary_pattern(Np, i):
    """The 60-triangle boundary annulus of block ``i`` and its special vertices.

    A vertex off the bottom circle is special when it is adjacent (inside the
    annulus) to at least two bottom vertices; each such set of bottom
    neighbours must be pairwise adjacent.
    """
    A = _annulus(Np, i)
    B = Np.base.blocks[i]
    bottom_base = set(B.bottom_outer)
    vc = Np.carrier.vertex_carrier
    bottom = tuple(v for v in A.vertices if set(vc[v]) <= bottom_base)
    nb = A.neighbors()
    bidx = {A.idx(v) for v in bottom}
    special = {}
    for v in range(A.n):
        if v in bidx:
            continue
        seen = sorted(nb[v] & bidx)
        if len(seen) >= 2:
            pairs_ok = all(b in nb[a] for a, b in itertools.combinations(seen, 2))
            if not pairs_ok:
                raise ConstructionError("bottom neighbours of a special vertex are not adjacent")
            special[A.vertices[v]] = tuple(A.vertices[x] for x in seen)
    inter = {}
    for j in range(len(Np.base.blocks)):
        if j == i or Np.base.block_adjacency[(i, j)] != "adjacent":
            continue
        other = _annulus(Np, j)
        common = set(A.vertices) & set(other.vertices)
        inter[j] = _is_cycle_of_length(Np.boundary.induced(common), 6)
    return BlockPattern(i, A, bottom, special, inter)


# --------------------------------------------------------------------------
# collars


@dataclass
class Collar:
    complex: SimplicialComplex
    bottom: SimplicialComplex
    top: SimplicialComplex
    top_label: dict
    apexes: tuple


def collar_triangulation(T_base, T_top, carrier, tag="collar", top_label=None):
    """Triangulate T_base x [0, 1] with T_base at the bottom and T_top on top.

    Every base simplex of positive dimension gets one apex, coned over the
    already triangulated boundary of its prism.  ``top_label`` renames top
    vertices (default: identical labels get a ``'`` suffix).
    """
    vc = carrier.vertex_carrier
    for s in T_top.labels_of(T_top.faces(T_top.dim)):
        if not T_base.has_simplex(carrier.carrier(s)):
            raise CarrierError("invalid carrier for top simplex %r" % (s,))
    if top_label is None:
        clash = set(T_base.vertices) & set(T_top.vertices)
        top_label = {v: (v + "'" if v in clash else v) for v in T_top.vertices}
    over = {}
    for v in T_top.vertices:
        c = vc[v]
        if len(c) == 1:
            if c[0] in over:
                raise CarrierError("two top vertices carried by base vertex %r" % (c[0],))
            over[c[0]] = top_label[v]
    for v in T_base.vertices:
        if v not in over:
            raise CarrierError("base vertex %r has no top vertex over it" % (v,))
    # top simplices grouped by carrier
    by_carrier = {}
    for k in range(T_top.dim + 1):
        for s in T_top.labels_of(T_top.faces(k)):
            by_carrier.setdefault(carrier.carrier(s), []).append(tuple(top_label[v] for v in s))
    apex = lambda s: "%s:a[%s]" % (tag, "|".join(s))
    sphere = {}
    for v in T_base.vertices:
        sphere[(v,)] = [(v, over[v])]
    simplices = []
    for k in range(1, T_base.dim + 1):
        for s in T_base.labels_of(T_base.faces(k)):
            s = tuple(s)
            bd = [s]
            bd += [t for t in by_carrier.get(s, []) if len(t) == k + 1]
            for face in itertools.combinations(s, k):
                bd += sphere[face]
            a = apex(s)
            cone = [x + (a,) for x in bd]
            sphere[s] = cone
            if k == T_base.dim:
                simplices.extend(cone)
    C = build_complex(simplices)
    return Collar(C, T_base, T_top, top_label, tuple(apex(s) for s in sphere if len(s) > 1))
