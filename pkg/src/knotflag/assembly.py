"""Gluing solid tori into an exterior and the square-killing pass.

A link with ``n`` components is described by an exterior 3-manifold with
``n`` boundary tori.  Each component gets a copy of the standard solid
torus; its boundary and the exterior's boundary torus are joined through
two collars meeting in a common refinement of the two torus triangulations.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complex import (SimplicialComplex, Square, build_complex, enumerate_squares,
                      has_isolated_squares, is_flag, is_full_subcomplex, sphere3_certificate)
from .overlay import overlay_refinement
from .subdivision import collar_triangulation, ps_subdivide_3, subdivide_solid_torus
from .torus import affine_coordinates, build_solid_torus

SWAP = ((0, 1), (1, 0))
IDENTITY = ((1, 0), (0, 1))


class GluingError(ValueError):
    pass


@dataclass
class BoundaryTorus:
    complex: SimplicialComplex
    meridian: tuple
    longitude: tuple
    coords: dict


@dataclass
class ExteriorInput:
    complex: SimplicialComplex
    tori: list


@dataclass
class RegionTaggedComplex:
    """A closed 3-complex whose tetrahedra carry region tags.

    ``region[j]`` indexes ``tags`` and belongs to the j-th row of
    ``complex.faces(3)``.
    """
    complex: SimplicialComplex
    tags: list
    region: np.ndarray
    cores: list
    solid_tori: list = field(default_factory=list)
    markings: list = field(default_factory=list)
    stage: str = "raw"

    def tetrahedra_with(self, predicate):
        keep = np.array([predicate(t) for t in self.tags], dtype=bool)
        rows = self.complex.faces(3)[keep[self.region]]
        return rows

    def region_complex(self, predicate):
        rows = self.tetrahedra_with(predicate)
        return self.complex.subcomplex([tuple(r) for r in rows.tolist()])

    def to_json(self):
        K = self.complex
        return {
            "vertices": [str(v) for v in K.vertices],
            "maximal_simplices": [[K.vertices[i] for i in r] for r in K.maximal_simplices()],
            "regions": [self.tags[int(j)] for j in self.region],
            "cores": [list(c.cycle) for c in self.cores],
            "stage": self.stage,
        }


def _tagged(pieces, cores, solid_tori, markings, stage):
    """Union of (tag, tetrahedra label tuples) pieces."""
    tets, owner = [], {}
    for tag, rows in pieces:
        for t in rows:
            key = tuple(sorted(t))
            if key in owner:
                raise GluingError("tetrahedron %r claimed by %s and %s" % (key, owner[key], tag))
            owner[key] = tag
            tets.append(key)
    K = build_complex(tets)
    tags = sorted({tag for tag, _ in pieces})
    tid = {t: i for i, t in enumerate(tags)}
    region = np.array([tid[owner[t]] for t in K.labels_of(K.faces(3))], dtype=np.int16)
    return RegionTaggedComplex(K, tags, region, cores, solid_tori, markings, stage)


def assemble_sigma(exterior, fixtures):
    """Glue one standard solid torus into each boundary torus of ``exterior``.

    ``fixtures[i]`` holds the affine gluing for component ``i``: a 2x2
    integer ``transform`` and optionally a precomputed ``overlay``.
    """
    if len(fixtures) != len(exterior.tori):
        raise GluingError("one fixture per boundary torus is required")
    pieces = [("exterior", exterior.complex.labels_of(exterior.complex.faces(3)))]
    cores, tori, marks = [], [], []
    for i, (bt, fx) in enumerate(zip(exterior.tori, fixtures)):
        prefix = "n%d:" % i
        N = build_solid_torus(prefix)
        ov = fx.get("overlay")
        if ov is None:
            try:
                ov = overlay_refinement(N.boundary, affine_coordinates(prefix),
                                        bt.complex, bt.coords, fx["transform"], prefix="t%d:" % i)
            except ValueError as e:
                raise GluingError("component %d: %s" % (i, e)) from e
        lower = collar_triangulation(N.boundary, ov.refinement, ov.carrier1, tag="k%d.in" % i)
        upper = collar_triangulation(bt.complex, ov.refinement, ov.carrier2, tag="k%d.out" % i)
        pieces.append(("torus:%d" % i, N.complex.labels_of(N.complex.faces(3))))
        pieces.append(("collar:%d" % i, lower.complex.labels_of(lower.complex.faces(3))
                       + upper.complex.labels_of(upper.complex.faces(3))))
        cores.append(N.core)
        tori.append(N)
        marks.append({"meridian": N.meridian, "longitude": N.longitude,
                      "exterior_meridian": bt.meridian, "exterior_longitude": bt.longitude,
                      "transform": [list(r) for r in fx["transform"]]})
    return _tagged(pieces, cores, tori, marks, "raw")


def step3_subdivide(sigma0, verify=True):
    """Replace exterior and collars by the gadget subdivision and each solid
    torus by its refinement; seams agree because new labels depend only on
    the labels of the carrying simplex."""
    if sigma0.stage != "raw":
        raise ValueError("step3_subdivide expects a raw assembly")
    X = sigma0.region_complex(lambda t: not t.startswith("torus:"))
    Xs, carrier = ps_subdivide_3(X, verify=verify)
    base_tag = {}
    for tag, rows in ((t, sigma0.tetrahedra_with(lambda u, t=t: u == t)) for t in sigma0.tags):
        for r in sigma0.complex.labels_of(rows):
            base_tag[tuple(r)] = tag
    # gadget vertices are labelled by their tetrahedron; corners decide the tag
    xs_rows = Xs.labels_of(Xs.faces(3))
    pieces = {}
    vc = carrier.vertex_carrier
    for t in xs_rows:
        best = max((vc[v] for v in t), key=len)
        if len(best) < 4:
            best = carrier.carrier(t)
        pieces.setdefault(base_tag[best], []).append(t)
    tagged = sorted(pieces.items())
    for i, N in enumerate(sigma0.solid_tori):
        Np = subdivide_solid_torus(N)
        tagged.append(("torus:%d" % i, Np.complex.labels_of(Np.complex.faces(3))))
    out = _tagged(tagged, sigma0.cores, sigma0.solid_tori, sigma0.markings, "subdivided")
    out.exterior_star = Xs
    return out


@dataclass
class Theorem3Certificate:
    items: dict
    witnesses: dict

    @property
    def passed(self):
        return all(v is True for v in self.items.values())

    def to_json(self):
        return {"items": dict(self.items), "witnesses": self.witnesses, "passed": self.passed}


def verify_theorem3(sigma, fullness=True):
    """Flag, isolated squares equal to the cores, 3-sphere certificate, and
    fullness of X*, each N_i' and their intersections."""
    K = sigma.complex
    items, wit = {}, {}
    rep = is_flag(K)
    items["flag"] = rep.flag
    if not rep.flag:
        wit["flag"] = list(rep.witness)
    squares = enumerate_squares(K)
    cores = sorted(sigma.cores)
    items["squares_are_cores"] = squares == cores
    if squares != cores:
        wit["squares_are_cores"] = {"count": len(squares),
                                    "first": list(squares[0].cycle) if squares else None}
    iso = has_isolated_squares(K, squares)
    items["isolated_squares"] = iso.ok
    if not iso.ok:
        wit["isolated_squares"] = iso.offending_vertex
    if K.dim == 3 and K.is_pure():
        cert = sphere3_certificate(K)
        items["sphere_links"] = cert.links_ok
        items["sphere_homology"] = cert.homology_ok
        items["sphere_pi1"] = cert.pi1_trivial is True
        wit["sphere"] = cert.to_json()
    else:
        items["sphere_links"] = items["sphere_homology"] = items["sphere_pi1"] = False
    if fullness:
        X = sigma.region_complex(lambda t: not t.startswith("torus:"))
        items["full_exterior"] = is_full_subcomplex(K, X)
        for i in range(len(sigma.cores)):
            tag = "torus:%d" % i
            Ni = sigma.region_complex(lambda t, tag=tag: t == tag)
            items["full_torus_%d" % i] = is_full_subcomplex(K, Ni)
            common = set(X.vertices) & set(Ni.vertices)
            both = K.induced(common)
            inter_ok = (is_full_subcomplex(K, both)
                        and both == X.induced(common) and both == Ni.induced(common))
            items["full_intersection_%d" % i] = inter_ok
    return Theorem3Certificate(items, wit)


# --------------------------------------------------------------------------
# built-in fixtures


def _standard_exterior(prefix):
    N = build_solid_torus(prefix)
    return N, BoundaryTorus(N.boundary, N.meridian, N.longitude, affine_coordinates(prefix))


def builtin_unknot(transform=SWAP):
    """The unknot: the exterior is a second standard solid torus, glued with
    meridian and longitude exchanged.  ``transform=IDENTITY`` gives the
    wrong-framing control (S^2 x S^1)."""
    N, bt = _standard_exterior("x:")
    return ExteriorInput(N.complex, [bt]), [{"transform": transform}]


def builtin_unlink():
    """Two-component unlink.  The exterior is the connected sum of two solid
    tori, formed along a core-edge tetrahedron; the gluing crosses the two
    interior vertices of one copy with the two boundary vertices of the
    other so the boundary tori stay disjoint."""
    A, bta = _standard_exterior("x:")
    B, btb = _standard_exterior("y:")
    ta = ("x:c0", "x:c1", "x:p1.0", "x:p1.1")
    tb = ("y:c0", "y:c1", "y:p1.0", "y:p1.1")
    rename = {ta[0]: tb[2], ta[1]: tb[3], tb[0]: ta[2], tb[1]: ta[3]}
    tets = []
    for K, drop in ((A.complex, ta), (B.complex, tb)):
        for t in K.labels_of(K.faces(3)):
            if set(t) == set(drop):
                continue
            tets.append(tuple(rename.get(v, v) for v in t))
    if len(tets) != 70:
        raise GluingError("core-edge tetrahedron not found")
    return ExteriorInput(build_complex(tets), [bta, btb]), [{"transform": SWAP}, {"transform": SWAP}]


BUILTINS = {"unknot": builtin_unknot, "unlink": builtin_unlink,
            "wrong-framing": lambda: builtin_unknot(IDENTITY)}
