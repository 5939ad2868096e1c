import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from knotflag.complex import build_complex
from knotflag.groups import (GroupPresentation, abelianization, cyclic_reduce, free_reduce,
                             invert, pi1_presentation, tietze_simplify)
from knotflag.snf import invariant_factors


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n, d = len(m), Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if m[r][i]), None)
        if p is None:
            return 0
        if p != i:
            m[i], m[p] = m[p], m[i]
            d = -d
        d *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            m[r] = [a - f * b for a, b in zip(m[r], m[i])]
    return int(d)


def _determinantal_factors(M):
    """Invariant factors from gcds of k x k minors."""
    rows, cols = len(M), len(M[0]) if M else 0
    dk, out = [1], []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for R in itertools.combinations(range(rows), k):
            for C in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[M[r][c] for c in C] for r in R]))
        if g == 0:
            break
        dk.append(g)
        out.append(g // dk[-2])
    return out


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_matches_minors(M):
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    assert invariant_factors(rows, len(M[0])) == _determinantal_factors(M)


@pytest.mark.parametrize("M,expected", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[2, 4], [6, 8]], [2, 4]),
    ([[0, 0], [0, 0]], []),
    ([[1, 2, 3]], [1]),
])
def test_snf_examples(M, expected):
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    assert invariant_factors(rows, len(M[0])) == expected


words = st.lists(st.integers(-3, 3).filter(bool), max_size=12).map(tuple)


@given(words)
def test_free_reduce(w):
    r = free_reduce(w)
    assert all(a != -b for a, b in zip(r, r[1:]))
    assert free_reduce(w + invert(w)) == ()
    assert free_reduce(r) == r


@given(words)
def test_cyclic_reduce(w):
    c = cyclic_reduce(w)
    assert not c or c[0] != -c[-1]
    assert len(c) <= len(free_reduce(w))


def test_parse_equation():
    P = GroupPresentation.parse(["a", "b"], ["a b a = b a b"])
    assert P.relators == [(1, 2, 1, -2, -1, -2)]
    assert P.word_str(P.relators[0]) == "a b a b^-1 a^-1 b^-1"


@pytest.mark.parametrize("rels,rank,torsion", [
    (["a b a = b a b"], 1, []),
    (["a a", "b b b"], 0, [6]),
    ([], 2, []),
    (["a b a^-1 b^-1"], 2, []),
])
def test_abelianization(rels, rank, torsion):
    ab = abelianization(GroupPresentation.parse(["a", "b"], rels))
    assert ab.betti == [rank] and ab.torsion == [torsion]


def test_pi1_circle(four_cycle):
    P = tietze_simplify(pi1_presentation(four_cycle))
    assert len(P.generators) == 1 and not P.relators


def test_pi1_sphere(octahedron):
    P = tietze_simplify(pi1_presentation(octahedron))
    assert not P.generators and not P.relators


def test_pi1_torus():
    from knotflag.torus import build_solid_torus
    T = build_solid_torus().boundary
    P = tietze_simplify(pi1_presentation(T))
    assert len(P.generators) == 2
    assert abelianization(P).betti == [2]


def test_pi1_projective_plane():
    rp2 = build_complex([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5),
                         (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)])
    P = tietze_simplify(pi1_presentation(rp2))
    assert len(P.generators) == 1
    assert abelianization(P).torsion == [[2]]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.sampled_from("abcdefg"), min_size=2, max_size=3, unique=True),
                min_size=1, max_size=12))
def test_tietze_preserves_abelianization(simplices):
    import networkx as nx
    K = build_complex(simplices)
    G = nx.Graph(K.labels_of(K.faces(1)))
    comp = sorted(max(nx.connected_components(G), key=len))
    K = K.induced(comp)
    P = pi1_presentation(K)
    Q = tietze_simplify(P)
    a, b = abelianization(P), abelianization(Q)
    assert (a.betti, a.torsion) == (b.betti, b.torsion)
    assert Q.total_length <= P.total_length
