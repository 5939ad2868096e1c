"""Slow reference implementations used to cross-check the fast verifiers."""
from __future__ import annotations

import itertools

import networkx as nx

from .complex import Square


def graph_of(K):
    G = nx.Graph()
    G.add_nodes_from(K.vertices)
    G.add_edges_from(K.labels_of(K.faces(1)))
    return G


def squares_bruteforce(K):
    """All ordered 4-tuples, collapsed by the dihedral symmetry."""
    G = graph_of(K)
    found = set()
    for cyc in itertools.permutations(K.vertices, 4):
        a, b, c, d = cyc
        if (G.has_edge(a, b) and G.has_edge(b, c) and G.has_edge(c, d) and G.has_edge(d, a)
                and not G.has_edge(a, c) and not G.has_edge(b, d)):
            found.add(Square.canonical(cyc))
    return sorted(found)


def is_flag_bruteforce(K):
    """Every clique of the 1-skeleton spans a simplex."""
    simplices = set(frozenset(s) for s in K.simplices())
    for clique in nx.enumerate_all_cliques(graph_of(K)):
        if frozenset(clique) not in simplices:
            return False
    return True


def is_full_bruteforce(K, S):
    """Simplices of K inside the vertex set of S are exactly those of S."""
    vs = set(S.vertices)
    inside = {frozenset(s) for s in K.simplices() if vs.issuperset(s)}
    return inside == {frozenset(s) for s in S.simplices()}
