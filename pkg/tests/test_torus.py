from fractions import Fraction

import pytest

from knotflag.complex import enumerate_squares, homology
from knotflag.torus import (affine_coordinates, block_intersection, build_block, build_cube,
                            build_prism, build_solid_torus, classify_tetrahedra, interior_squares)


@pytest.fixture(scope="module")
def N():
    return build_solid_torus()


def test_prism():
    P = build_prism()
    assert len(P.complex.faces(3)) == 3
    assert P.complex.n == 6
    assert all(P.complex.has_simplex(t) for t in P.F + P.G)


def test_cube():
    C = build_cube()
    assert len(C.faces(3)) == 6
    assert all(C.has_simplex((t[0], t[-1])) for t in C.labels_of(C.faces(3)))


def test_block():
    B = build_block()
    assert len(B.complex.faces(3)) == 9 and B.complex.n == 8
    assert B.complex.has_simplex(B.center_edge)
    assert homology(B.complex).betti == [1, 0, 0, 0]
    assert homology(B.complex.boundary_complex()).betti == [1, 0, 1]


def test_solid_torus_counts(N):
    K = N.complex
    assert len(K.faces(3)) == 36 and K.n == 16
    assert len(N.interior_vertices) == 4
    a, b = classify_tetrahedra(N)
    assert (len(a), len(b)) == (24, 12)


def test_core_unique_interior_square(N):
    assert interior_squares(N) == [N.core]
    assert set(N.core.cycle) == set(N.interior_vertices)


def test_other_squares_on_boundary(N):
    others = [s for s in enumerate_squares(N.complex) if s != N.core]
    for sq in others:
        assert all(N.boundary.has_simplex(e) for e in zip(sq.cycle, sq.cycle[1:] + sq.cycle[:1]))


def test_boundary_torus(N):
    assert N.boundary.f_vector() == (12, 36, 24)
    assert homology(N.boundary).betti == [1, 2, 1]
    assert homology(N.complex).betti == [1, 1, 0, 0]


@pytest.mark.parametrize("i,j,shared", [(0, 1, 4), (1, 2, 4), (3, 0, 4), (0, 2, 0), (1, 3, 0)])
def test_block_intersection(N, i, j, shared):
    X = block_intersection(N, i, j)
    assert X.n == shared
    if shared:
        assert len(X.faces(2)) == 3


def test_block_intersection_errors(N):
    with pytest.raises(ValueError):
        block_intersection(N, 1, 1)
    with pytest.raises(IndexError):
        block_intersection(N, 0, 7)


def test_prefix(N):
    M = build_solid_torus("z:")
    assert all(v.startswith("z:") for v in M.complex.vertices)
    assert M.complex.f_vector() == N.complex.f_vector()


def test_affine_coordinates(N):
    xy = affine_coordinates()
    assert set(xy) == set(N.boundary.vertices)
    total = Fraction(0)
    for tri in N.boundary.labels_of(N.boundary.faces(2)):
        p = [xy[v] for v in tri]
        # unwrap around the first corner
        q = [p[0]] + [tuple(a - round(a - b) for a, b in zip(x, p[0])) for x in p[1:]]
        area = ((q[1][0] - q[0][0]) * (q[2][1] - q[0][1]) - (q[1][1] - q[0][1]) * (q[2][0] - q[0][0]))
        assert area != 0
        total += abs(area) / 2
    assert total == 1
