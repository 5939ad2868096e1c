import itertools
from dataclasses import replace

import pytest

from knotflag.complex import MalformedComplexError
from knotflag.finite import BUILTIN_TARGETS, builtin_group
from knotflag.groups import GroupPresentation, abelianization
from knotflag.knotcert import (exterior_complex, nonabelian_certificate, trefoil_presentation,
                               verify_certificate)


@pytest.mark.parametrize("name,order,abelian", [
    ("S3", 6, False), ("D4", 8, False), ("A4", 12, False), ("S4", 24, False), ("A5", 60, False),
])
def test_builtin_groups(name, order, abelian):
    G = builtin_group(name)
    assert G.order == order and G.is_abelian() == abelian
    assert G.elements[0] == tuple(range(len(G.elements[0])))
    for i, j, k in itertools.product(range(order), repeat=3):
        if k > 2:
            break
        assert G.mul(G.mul(i, j), k) == G.mul(i, G.mul(j, k))
    assert all(G.mul(i, G.inverse[i]) == 0 for i in range(order))


def test_class_representatives():
    assert len(builtin_group("S4").class_representatives()) == 5
    assert len(builtin_group("A5").class_representatives()) == 5


def test_unknown_group():
    with pytest.raises(KeyError):
        builtin_group("Z7")


class TestTrefoil:
    def test_abelianization(self):
        ab = abelianization(trefoil_presentation())
        assert ab.betti == [1] and ab.torsion == [[]]

    def test_s3_certificate(self):
        P = trefoil_presentation()
        cert = nonabelian_certificate(P)
        assert cert is not None and cert.group == "S3"
        assert verify_certificate(P, cert)
        assert set(cert.relator_images) == {0}

    def test_tampered_certificate_rejected(self):
        P = trefoil_presentation()
        cert = nonabelian_certificate(P)
        same = replace(cert, images={"a": cert.images["a"], "b": cert.images["a"]})
        assert not verify_certificate(P, same)

    def test_certificate_json(self):
        cert = nonabelian_certificate(trefoil_presentation())
        js = cert.to_json()
        assert js["surjective"] and js["target_nonabelian"]


@pytest.mark.parametrize("gens,rels", [(["a"], ["a a"]), (["a", "b"], ["a b a^-1 b^-1"]),
                                       (["a", "b"], ["a a", "b b b", "a b a^-1 b^-1"])])
def test_no_certificate_for_abelian_groups(gens, rels):
    assert nonabelian_certificate(GroupPresentation.parse(gens, rels), time_budget=10) is None


def test_free_group_of_rank_two_maps_onto_s3():
    P = GroupPresentation(["a", "b"], [])
    cert = nonabelian_certificate(P)
    assert cert.group == "S3" and verify_certificate(P, cert)


def test_infinite_cyclic():
    assert nonabelian_certificate(GroupPresentation(["a"], [])) is None


def test_figure_eight_targets():
    # figure-eight knot group maps onto A4 but not S3
    P = GroupPresentation.parse(["a", "b"], ["a^-1 b a b^-1 a = b a^-1 b a b^-1"])
    cert = nonabelian_certificate(P, targets=("S3", "A4"))
    assert cert is not None and cert.group == "A4"
    assert verify_certificate(P, cert)


def test_exterior_needs_subdivided():
    from knotflag.assembly import assemble_sigma, builtin_unknot
    with pytest.raises(MalformedComplexError):
        exterior_complex(assemble_sigma(*builtin_unknot()), 0)


def test_targets_constant():
    assert BUILTIN_TARGETS[0] == "S3"
