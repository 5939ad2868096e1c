"""Common refinement of two affine triangulations of the torus R^2/Z^2.

All geometry is exact (``fractions.Fraction``).  Each triangle of T1 is
intersected with every integer translate of every triangle of ``M.T2``; the
convex pieces, with every arrangement point on their boundary, are then cut
into triangles by clipping strictly convex corners.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .complex import build_complex, is_closed_surface
from .subdivision import CarrierMap


class DegenerateInput(ValueError):
    pass


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _mod1(p):
    return (p[0] - math.floor(p[0]), p[1] - math.floor(p[1]))


def _nearest(c, ref):
    """Translate ``c`` by an integer vector so it lies within 1/2 of ``ref``."""
    out = []
    for x, r in zip(c, ref):
        d = x - r
        k = math.floor(d + Fraction(1, 2))
        if abs(d - k) >= Fraction(1, 2):
            raise DegenerateInput("edge too long to lift unambiguously")
        out.append(x - k)
    return tuple(out)


def _lift(tri, coords):
    base = tuple(Fraction(x) for x in coords[tri[0]])
    pts = [base] + [_nearest(tuple(Fraction(x) for x in coords[v]), base) for v in tri[1:]]
    return pts


def _ccw(pts, labels):
    if _cross(*pts) < 0:
        pts = [pts[0], pts[2], pts[1]]
        labels = [labels[0], labels[2], labels[1]]
    return pts, labels


def _clip(poly, a, b):
    """Part of convex ``poly`` left of (or on) the directed line a->b."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        sp, sq = _cross(a, b, p), _cross(a, b, q)
        if sp >= 0:
            out.append(p)
        if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
            t = sp / (sp - sq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _area2(poly):
    return sum(poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
               for i in range(len(poly)))


def _on_segment(p, a, b):
    if _cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _clip_ears(poly):
    """Triangulate a convex polygon that may carry collinear boundary points."""
    poly = list(poly)
    tris = []
    while len(poly) > 3:
        n = len(poly)
        for i in range(n):
            u, v, w = poly[i - 1], poly[i], poly[(i + 1) % n]
            if _cross(u, v, w) > 0:
                tris.append((u, v, w))
                del poly[i]
                break
        else:
            raise DegenerateInput("polygon has no strictly convex corner")
    if _cross(*poly) > 0:
        tris.append(tuple(poly))
    return tris


def _locate(p, tris):
    """Smallest face (as labels) of a lifted triangle list containing ``p``
    up to integer translation."""
    for pts, labels in tris:
        for dx, dy in itertools.product((-1, 0, 1), repeat=2):
            q = (p[0] + dx, p[1] + dy)
            w = [_cross(pts[1], pts[2], q), _cross(pts[2], pts[0], q), _cross(pts[0], pts[1], q)]
            if all(x >= 0 for x in w):
                return tuple(sorted(l for l, x in zip(labels, w) if x > 0))
    raise DegenerateInput("point %r is not covered" % (p,))


@dataclass
class Overlay:
    refinement: object
    carrier1: CarrierMap
    carrier2: CarrierMap
    coords: dict


def check_affine_torus(T, coords):
    """Triangles nondegenerate and areas summing to 1 (so they tile the torus)."""
    total = Fraction(0)
    for t in T.labels_of(T.faces(2)):
        a = _cross(*_lift(t, coords))
        if a == 0:
            raise DegenerateInput("zero-area triangle %r" % (t,))
        total += abs(a) / 2
    if total != 1:
        raise DegenerateInput("triangles do not tile the torus (area %s)" % total)
    return True


def overlay_refinement(T1, coords1, T2, coords2, transform, prefix="ov"):
    """Common refinement of T1 and ``transform . T2`` on R^2/Z^2.

    Returns the refinement (vertices labelled ``{prefix}{n}`` in order of
    their reduced coordinates) with carrier maps to both inputs.
    """
    (a, b), (c, d) = transform
    if a * d - b * c not in (1, -1):
        raise ValueError("transform must be invertible over the integers")
    M = lambda p: (a * p[0] + b * p[1], c * p[0] + d * p[1])
    check_affine_torus(T1, coords1)
    check_affine_torus(T2, coords2)
    A = [_ccw(_lift(t, coords1), list(t)) for t in T1.labels_of(T1.faces(2))]
    B = [_ccw([M(p) for p in _lift(t, coords2)], list(t)) for t in T2.labels_of(T2.faces(2))]

    pieces = []
    for pa, la in A:
        ax = [p[0] for p in pa]
        ay = [p[1] for p in pa]
        for pb, lb in B:
            bx = [p[0] for p in pb]
            by = [p[1] for p in pb]
            for dx in range(math.floor(min(ax) - max(bx)), math.ceil(max(ax) - min(bx)) + 1):
                for dy in range(math.floor(min(ay) - max(by)), math.ceil(max(ay) - min(by)) + 1):
                    poly = list(pa)
                    q = [(p[0] + dx, p[1] + dy) for p in pb]
                    for i in range(3):
                        poly = _clip(poly, q[i], q[(i + 1) % 3])
                        if len(poly) < 3:
                            break
                    if len(poly) >= 3 and _area2(poly) > 0:
                        pieces.append(poly)
    area = sum(_area2(p) for p in pieces) / 2
    if area != 1:
        raise DegenerateInput("overlay pieces cover area %s, expected 1" % area)

    points = sorted({_mod1(p) for poly in pieces for p in poly})
    label = {p: "%s%03d" % (prefix, n) for n, p in enumerate(points)}

    tris = []
    for poly in pieces:
        ring = []
        n = len(poly)
        for i in range(n):
            p, q = poly[i], poly[(i + 1) % n]
            ring.append(p)
            shift = (p[0] - _mod1(p)[0], p[1] - _mod1(p)[1])
            extra = []
            for r in points:
                for dx, dy in itertools.product((-1, 0, 1), repeat=2):
                    rr = (r[0] + shift[0] + dx, r[1] + shift[1] + dy)
                    if rr != p and rr != q and _on_segment(rr, p, q):
                        extra.append(rr)
            key = lambda r: (r[0] - p[0]) ** 2 + (r[1] - p[1]) ** 2
            ring.extend(sorted(set(extra), key=key))
        for t in _clip_ears(ring):
            tris.append(tuple(label[_mod1(x)] for x in t))
    R = build_complex(tris)
    if len(R.faces(2)) != len(tris):
        raise DegenerateInput("refinement is not simplicial (repeated triangle)")
    if not is_closed_surface(R) or R.euler_characteristic() != 0:
        raise DegenerateInput("refinement is not a torus")

    vc1 = {label[p]: _locate(p, A) for p in points}
    vc2 = {label[p]: _locate(p, B) for p in points}
    c1 = CarrierMap(R, T1, vc1)
    c2 = CarrierMap(R, T2, vc2)
    c1.validate()
    c2.validate()
    return Overlay(R, c1, c2, {label[p]: p for p in points})
