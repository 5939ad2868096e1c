from fractions import Fraction

import numpy as np
import pytest

from knotflag.assembly import (BUILTINS, IDENTITY, SWAP, GluingError, assemble_sigma,
                               builtin_unknot, verify_theorem3)
from knotflag.complex import enumerate_squares, homology, is_flag, sphere3_certificate
from knotflag.io import sigma_from_json, sigma_to_json
from knotflag.overlay import DegenerateInput, check_affine_torus, overlay_refinement
from knotflag.torus import affine_coordinates, build_solid_torus


@pytest.fixture(scope="module")
def torus():
    return build_solid_torus().boundary, affine_coordinates()


@pytest.fixture(scope="module")
def sigma0():
    return assemble_sigma(*builtin_unknot())


class TestOverlay:
    @pytest.mark.parametrize("transform,f", [(IDENTITY, (12, 36, 24)), (SWAP, (36, 108, 72))])
    def test_counts(self, torus, transform, f):
        T, xy = torus
        ov = overlay_refinement(T, xy, T, xy, transform)
        R = ov.refinement
        assert R.f_vector() == f
        assert R.euler_characteristic() == 0
        assert homology(R).betti == [1, 2, 1]
        assert ov.carrier1.validate() and ov.carrier2.validate()

    def test_coordinates_reduced(self, torus):
        T, xy = torus
        ov = overlay_refinement(T, xy, T, xy, SWAP)
        for p in ov.coords.values():
            assert all(Fraction(0) <= c < 1 for c in p)

    def test_singular_transform(self, torus):
        T, xy = torus
        with pytest.raises(ValueError):
            overlay_refinement(T, xy, T, xy, ((2, 0), (0, 1)))

    def test_degenerate_coordinates(self, torus):
        T, xy = torus
        flat = {v: (p[0], Fraction(0)) for v, p in xy.items()}
        with pytest.raises(DegenerateInput):
            check_affine_torus(T, flat)

    def test_deterministic(self, torus):
        T, xy = torus
        a = overlay_refinement(T, xy, T, xy, SWAP).refinement
        b = overlay_refinement(T, xy, T, xy, SWAP).refinement
        assert a == b


class TestSigma0:
    def test_counts(self, sigma0):
        K = sigma0.complex
        assert K.f_vector() == (188, 1124, 1872, 936)
        assert sigma0.stage == "raw"
        assert len(sigma0.region) == len(K.faces(3))

    def test_regions(self, sigma0):
        counts = {t: int(np.sum(sigma0.region == i)) for i, t in enumerate(sigma0.tags)}
        assert counts["exterior"] == 36 and counts["torus:0"] == 36
        assert sum(counts.values()) == 936

    def test_sphere(self, sigma0):
        assert sphere3_certificate(sigma0.complex).passed

    def test_core_is_a_square(self, sigma0):
        assert sigma0.cores[0] in enumerate_squares(sigma0.complex)

    def test_raw_not_flag(self, sigma0):
        cert = verify_theorem3(sigma0, fullness=False)
        assert not cert.passed
        assert cert.items["sphere_links"] and cert.items["sphere_pi1"]

    def test_wrong_framing_homology(self):
        s = assemble_sigma(*BUILTINS["wrong-framing"]())
        c = sphere3_certificate(s.complex)
        assert not c.homology_ok and not c.passed
        assert homology(s.complex).betti == [1, 1, 1, 1]

    def test_unlink(self):
        s = assemble_sigma(*BUILTINS["unlink"]())
        assert len(s.cores) == 2
        assert sphere3_certificate(s.complex).passed
        assert not set(s.cores[0].cycle) & set(s.cores[1].cycle)

    def test_fixture_count_mismatch(self):
        ext, fx = builtin_unknot()
        with pytest.raises(GluingError):
            assemble_sigma(ext, fx + fx)

    def test_json_round_trip(self, sigma0):
        back = sigma_from_json(sigma_to_json(sigma0))
        assert back.complex == sigma0.complex
        assert back.cores == sigma0.cores
        assert np.array_equal(back.region, sigma0.region)
