"""Seeded random flag complexes and the invariant suite run over them."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .caprace import caprace_check, caprace_oracle
from .complex import (build_complex, enumerate_squares, has_isolated_squares, is_flag,
                      is_full_subcomplex)
from .oracles import is_flag_bruteforce, is_full_bruteforce, squares_bruteforce
from .subdivision import ps_subdivide_3, subdivide_surface

MAX_COUNT = 10_000


def random_flag_complex(rng, n_min=4, n_max=12):
    """Clique complex of a G(n, p) graph with n and p drawn from ``rng``."""
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(0.2, 0.7))
    G = nx.Graph()
    G.add_nodes_from("v%02d" % i for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                G.add_edge("v%02d" % i, "v%02d" % j)
    return build_complex(sorted(tuple(sorted(c)) for c in nx.find_cliques(G)))


def generate(seed, count, n_min=4, n_max=12):
    if count > MAX_COUNT:
        raise ValueError("count %d exceeds the maximum %d" % (count, MAX_COUNT))
    rng = np.random.default_rng(seed)
    return [random_flag_complex(rng, n_min, n_max) for _ in range(count)]


def corpus_hash(complexes):
    h = hashlib.sha256()
    for K in complexes:
        h.update(json.dumps(K.to_json(), sort_keys=True).encode())
    return h.hexdigest()


@dataclass
class CorpusReport:
    seed: int
    count: int
    hash: str
    failures: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {"seed": self.seed, "count": self.count, "hash": self.hash,
                "checks": self.checks, "failures": self.failures, "passed": self.passed}


def euler_invariance(K):
    """Subdivision keeps the Euler characteristic: the template refinement
    of the 2-skeleton and the gadget refinement of the tetrahedra."""
    ok = True
    two = K.subcomplex([tuple(r) for k in range(min(K.dim, 2) + 1) for r in K.faces(k).tolist()])
    R, _ = subdivide_surface(two)
    ok &= R.euler_characteristic() == two.euler_characteristic()
    if K.dim >= 3:
        tets = K.subcomplex([tuple(r) for r in K.faces(3).tolist()])
        R3, _ = ps_subdivide_3(tets, verify=False)
        ok &= R3.euler_characteristic() == tets.euler_characteristic()
    return ok


def run_suite(seed, count, caprace_oracle_limit=14):
    complexes = generate(seed, count)
    rep = CorpusReport(seed, count, corpus_hash(complexes))
    tallies = dict.fromkeys(["squares", "flag", "full", "caprace_oracle", "implication",
                             "euler", "isolated_cases", "caprace_failures"], 0)
    for idx, K in enumerate(complexes):
        def fail(name):
            rep.failures.append({"index": idx, "check": name})

        if enumerate_squares(K) != squares_bruteforce(K):
            fail("squares")
        tallies["squares"] += 1
        if is_flag(K).flag != is_flag_bruteforce(K):
            fail("flag")
        tallies["flag"] += 1
        S = K.induced(K.vertices[::2])
        S1 = S.subcomplex([tuple(r) for k in range(min(S.dim, 1) + 1) for r in S.faces(k).tolist()])
        for sub in (S, S1):
            if is_full_subcomplex(K, sub) != is_full_bruteforce(K, sub):
                fail("full")
        tallies["full"] += 1
        cap = caprace_check(K)
        if K.n <= caprace_oracle_limit:
            if cap.relatively_hyperbolic != caprace_oracle(K).relatively_hyperbolic:
                fail("caprace_oracle")
            tallies["caprace_oracle"] += 1
        iso = has_isolated_squares(K).ok
        tallies["isolated_cases"] += iso
        tallies["caprace_failures"] += not cap.relatively_hyperbolic
        if iso and not cap.relatively_hyperbolic:
            fail("implication")
        tallies["implication"] += 1
        if not euler_invariance(K):
            fail("euler")
        tallies["euler"] += 1
    rep.checks = tallies
    return rep
