"""Knot group certificates: the exterior of a core square, its fundamental
group, and nonabelian finite quotients.

A nonabelian quotient of the exterior group rules out the infinite cyclic
group, so the core is knotted.  Finding none proves nothing.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .complex import MalformedComplexError, collapse
from .finite import BUILTIN_TARGETS, builtin_group
from .groups import GroupPresentation, abelianization, pi1_presentation, tietze_simplify


def exterior_complex(sigma, component):
    """Full subcomplex of Sigma on every vertex except the interior vertices
    of the ``component``-th refined solid torus."""
    if sigma.stage != "subdivided":
        raise MalformedComplexError("exterior_complex needs a subdivided, fully tagged complex")
    if not 0 <= component < len(sigma.cores):
        raise IndexError("no such component")
    drop = set(sigma.cores[component].cycle)
    return sigma.complex.induced([v for v in sigma.complex.vertices if v not in drop])


def exterior_presentation(K, budget=200000):
    """Simplified presentation of pi_1 of a connected complex (collapsed first)."""
    spine = collapse(K)
    if spine.n <= 1:
        return GroupPresentation([], [])
    return tietze_simplify(pi1_presentation(spine), budget=budget)


@dataclass
class QuotientCertificate:
    group: str
    images: dict
    relator_images: list
    surjective: bool
    target_nonabelian: bool
    table: list

    def to_json(self):
        return {"group": self.group, "images": self.images,
                "relator_images": self.relator_images, "surjective": self.surjective,
                "target_nonabelian": self.target_nonabelian}


def _evaluate(G, word, images):
    x = 0
    for s in word:
        g = images[abs(s) - 1]
        x = G.mul(x, g if s > 0 else G.inverse[g])
    return x


def verify_certificate(P, cert):
    """Independent re-check that the images kill every relator and generate
    a nonabelian target."""
    G = builtin_group(cert.group)
    images = [G.elements.index(tuple(cert.images[g])) for g in P.generators]
    if any(_evaluate(G, r, images) != 0 for r in P.relators):
        return False
    if len(G.generated(images)) != G.order:
        return False
    return not G.is_abelian()


class _Budget(Exception):
    pass


def _search(P, G, max_nodes, deadline):
    n = len(P.generators)
    # relators become checkable once their highest generator is assigned
    ready = [[] for _ in range(n)]
    for r in P.relators:
        if r:
            ready[max(abs(s) for s in r) - 1].append(r)
    images = [0] * n
    nodes = 0
    first_choices = G.class_representatives()

    def rec(k):
        nonlocal nodes
        if k == n:
            return len(G.generated(images)) == G.order
        for g in (first_choices if k == 0 else range(G.order)):
            nodes += 1
            if nodes > max_nodes or (nodes & 1023 == 0 and time.monotonic() > deadline):
                raise _Budget
            images[k] = g
            if all(_evaluate(G, r, images) == 0 for r in ready[k]) and rec(k + 1):
                return True
        return False

    return rec(0), images


def nonabelian_certificate(P, targets=BUILTIN_TARGETS, time_budget=60.0, max_nodes=2_000_000):
    """Search for a surjection onto a nonabelian target group.

    Targets are tried in the given order; the first certificate in the
    deterministic search order wins.  The first generator ranges over
    conjugacy class representatives only, which loses nothing since
    conjugating a surjection gives another one.
    """
    deadline = time.monotonic() + time_budget
    for name in targets:
        G = builtin_group(name)
        if G.is_abelian() or not P.generators:
            continue
        try:
            found, images = _search(P, G, max_nodes, deadline)
        except _Budget:
            return None
        if found:
            cert = QuotientCertificate(
                group=name,
                images={g: list(G.elements[i]) for g, i in zip(P.generators, images)},
                relator_images=[_evaluate(G, r, images) for r in P.relators],
                surjective=True,
                target_nonabelian=True,
                table=[list(r) for r in G.table],
            )
            if not verify_certificate(P, cert):
                raise AssertionError("certificate failed independent verification")
            return cert
    return None


def trefoil_presentation():
    return GroupPresentation.parse(["a", "b"], ["a b a = b a b"])


@dataclass
class KnotReport:
    abelianization: object
    presentation: GroupPresentation
    certificate: QuotientCertificate | None

    def to_json(self):
        ab = self.abelianization
        return {"abelianization": {"rank": ab.betti[0], "torsion": ab.torsion[0]},
                "presentation": self.presentation.to_json(),
                "certificate": self.certificate.to_json() if self.certificate else None}


def certify_component(sigma, component, targets=BUILTIN_TARGETS, time_budget=60.0):
    X = exterior_complex(sigma, component)
    P = exterior_presentation(X)
    return KnotReport(abelianization(P), P, nonabelian_certificate(P, targets, time_budget))
