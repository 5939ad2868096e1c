import itertools

import pytest
from hypothesis import given, settings, strategies as st

from knotflag.complex import build_complex, enumerate_squares, homology, is_flag
from knotflag.subdivision import (CarrierError, CarrierMap, VerificationFailed,
                                  block_boundary_pattern, collar_triangulation, gadget_table,
                                  ps_subdivide_3, subdivide_solid_torus, subdivide_surface,
                                  triangle_template, verify_flag_no_squares)
from knotflag.torus import build_solid_torus


@pytest.fixture(scope="module")
def Np():
    return subdivide_solid_torus(build_solid_torus())


class TestTemplate:
    def test_shape(self):
        T = triangle_template()
        assert len(T.triangles) == 10 and len(T.vertices) == 9
        K = T.complex()
        assert K.euler_characteristic() == 1
        assert is_flag(K).flag and not enumerate_squares(K)

    def test_boundary_is_subdivided_edges(self):
        T = triangle_template()
        bd = T.complex().boundary_complex()
        halves = {e for pair in T.boundary_map.values() for e in pair}
        assert {tuple(sorted(e)) for e in halves} == set(bd.labels_of(bd.faces(1)))


class TestSurface:
    def test_octahedron(self, octahedron):
        R, cm = subdivide_surface(octahedron)
        assert cm.validate()
        assert R.euler_characteristic() == 2
        assert len(R.faces(2)) == 10 * 8
        assert is_flag(R).flag and not enumerate_squares(R)

    def test_torus(self):
        T = build_solid_torus().boundary
        R, cm = subdivide_surface(T)
        assert cm.validate()
        assert R.f_vector() == (120, 360, 240)
        assert homology(R).betti == [1, 2, 1]

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.sampled_from("abcdefg"), min_size=1, max_size=3, unique=True),
                    min_size=1, max_size=10))
    def test_euler_preserved(self, simplices):
        K = build_complex(simplices)
        R, cm = subdivide_surface(K)
        assert R.euler_characteristic() == K.euler_characteristic()
        assert cm.validate()


class TestGadget:
    def test_table(self):
        boundary, interior, tets = gadget_table()
        assert (len(boundary), len(interior), len(tets)) == (22, 207, 1160)

    def test_single_tetrahedron(self):
        K = build_complex([["a", "b", "c", "d"]])
        R, cm = ps_subdivide_3(K)
        assert len(R.faces(3)) == 1160
        assert homology(R).betti == [1, 0, 0, 0]
        assert cm.validate()
        bd = R.boundary_complex()
        tmpl, _ = subdivide_surface(K.boundary_complex())
        assert bd == tmpl

    def test_boundary_4simplex(self, boundary_4simplex):
        R, cm = ps_subdivide_3(boundary_4simplex)
        assert R.euler_characteristic() == 0
        assert homology(R).betti == [1, 0, 0, 1]

    def test_rejects_non_pure(self):
        with pytest.raises(ValueError):
            ps_subdivide_3(build_complex([["a", "b", "c", "d"], ["d", "e"]]))

    def test_verification_witness(self, four_cycle):
        with pytest.raises(VerificationFailed) as e:
            verify_flag_no_squares(four_cycle)
        assert set(e.value.witness) == set("abcd")


class TestSolidTorus:
    def test_counts(self, Np):
        K = Np.complex
        assert len(K.faces(3)) == 264 and K.n == 124
        assert K.f_vector() == (124, 508, 648, 264)
        assert Np.boundary.f_vector() == (120, 360, 240)

    def test_flag_single_square(self, Np):
        assert is_flag(Np.complex).flag
        assert enumerate_squares(Np.complex) == [Np.core]

    def test_carrier(self, Np):
        assert Np.carrier.validate()

    @pytest.mark.parametrize("i", range(4))
    def test_block_pattern(self, Np, i):
        pat = block_boundary_pattern(Np, i)
        assert len(pat.annulus.faces(2)) == 60
        assert len(pat.special) == 6
        assert set(pat.intersections) == {(i - 1) % 4, (i + 1) % 4}
        assert pat.ok


class TestCarrier:
    def test_bad_carrier(self):
        base = build_complex([["a", "b"]])
        ref = build_complex([["a", "x"], ["x", "b"]])
        good = CarrierMap(ref, base, {"a": ("a",), "b": ("b",), "x": ("a", "b")})
        assert good.validate()
        bad = CarrierMap(ref, base, {"a": ("a",), "b": ("b",), "x": ("b",)})
        with pytest.raises(CarrierError):
            bad.validate()


class TestCollar:
    def test_torus_collar(self):
        T = build_solid_torus().boundary
        R, cm = subdivide_surface(T)
        C = collar_triangulation(T, R, cm)
        assert C.complex.dim == 3 and C.complex.is_pure()
        assert homology(C.complex).betti == [1, 2, 1, 0]
        bd = C.complex.boundary_complex()
        assert bd.n == T.n + R.n
        assert homology(bd).betti == [2, 4, 2]
        assert C.bottom == T

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_circle_collar_is_annulus(self, n):
        cyc = build_complex([["v%d" % i, "v%d" % ((i + 1) % n)] for i in range(n)])
        R, cm = subdivide_surface(cyc)
        C = collar_triangulation(cyc, R, cm)
        assert C.complex.euler_characteristic() == 0
        assert all(len(t) == 3 for t in C.complex.labels_of(C.complex.faces(2)))
