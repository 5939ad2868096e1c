"""Finite group presentations: edge-path presentations of complexes,
Tietze simplification and abelianization.

Words are tuples of nonzero ints: ``g + 1`` stands for generator ``g`` and
``-(g + 1)`` for its inverse.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .complex import HomologyProfile, MalformedComplexError, _components
from .snf import invariant_factors


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def invert(word):
    return tuple(-x for x in reversed(word))


@dataclass
class GroupPresentation:
    generators: list
    relators: list = field(default_factory=list)

    @property
    def total_length(self):
        return sum(len(r) for r in self.relators)

    def word_str(self, w):
        return " ".join(self.generators[abs(x) - 1] + ("^-1" if x < 0 else "") for x in w) or "1"

    def to_json(self):
        return {"generators": list(self.generators),
                "relators": [self.word_str(r) for r in self.relators]}

    @classmethod
    def parse(cls, generators, relators):
        """Build from relator strings such as ``"a b a B^-1 ..."``; each
        relator is a whitespace separated list of ``name`` / ``name^-1``,
        or an equation ``lhs = rhs``."""
        gens = list(generators)
        pos = {g: i + 1 for i, g in enumerate(gens)}

        def word(s):
            out = []
            for tok in s.split():
                inv = tok.endswith("^-1")
                name = tok[:-3] if inv else tok
                out.append(-pos[name] if inv else pos[name])
            return out

        rels = []
        for r in relators:
            if "=" in r:
                lhs, rhs = r.split("=")
                rels.append(tuple(word(lhs)) + invert(word(rhs)))
            else:
                rels.append(tuple(word(r)))
        return cls(gens, rels)


def abelianization(P):
    """Abelianization as a profile whose single entry is the free rank, with
    the invariant factors as its torsion list."""
    rows = []
    for r in P.relators:
        row = {}
        for x in r:
            g = abs(x) - 1
            row[g] = row.get(g, 0) + (1 if x > 0 else -1)
        rows.append({k: v for k, v in row.items() if v})
    factors = invariant_factors(rows, len(P.generators))
    rank = len(P.generators) - len(factors)
    return HomologyProfile([rank], [[f for f in factors if f > 1]], reduced=False)


def pi1_presentation(K, basepoint=None):
    """Edge-path group of ``K``: breadth-first spanning tree (smallest label
    first), one generator per non-tree edge, one relator per triangle."""
    if K.n == 0 or len(_components(K)) != 1:
        raise MalformedComplexError("pi1_presentation needs a connected complex")
    root = 0 if basepoint is None else K.idx(basepoint)
    nb = K.neighbors()
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in sorted(nb[v]):
            if w not in seen:
                seen.add(w)
                tree.add((min(v, w), max(v, w)))
                queue.append(w)
    gens = {}
    names = []
    for a, b in K.faces(1).tolist():
        if (a, b) not in tree:
            gens[(a, b)] = len(names) + 1
            names.append("e%d_%d" % (a, b))
    rels = []
    if K.dim >= 2:
        for a, b, c in K.faces(2).tolist():
            w = []
            for e, s in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
                g = gens.get(e)
                if g:
                    w.append(s * g)
            rels.append(tuple(w))
    return GroupPresentation(names, rels)


class _Engine:
    """Mutable presentation with occurrence indexes for substitution moves."""

    def __init__(self, P):
        self.names = list(P.generators)
        self.rels = {}
        self.occ = {g: set() for g in range(1, len(self.names) + 1)}
        self.alive = set(self.occ)
        self.short = deque()
        self.next_id = 0
        for r in P.relators:
            self.add(cyclic_reduce(r))

    def add(self, w):
        if not w:
            return
        rid = self.next_id
        self.next_id += 1
        self.rels[rid] = w
        for x in w:
            self.occ[abs(x)].add(rid)
        if len(w) <= 2:
            self.short.append(rid)

    def drop(self, rid):
        w = self.rels.pop(rid)
        for x in w:
            self.occ[abs(x)].discard(rid)

    def substitute(self, g, image):
        """Replace generator ``g`` by the word ``image`` everywhere."""
        inv = invert(image)
        for rid in sorted(self.occ[g]):
            if rid not in self.rels:
                continue
            w = self.rels[rid]
            self.drop(rid)
            new = []
            for x in w:
                if x == g:
                    new.extend(image)
                elif x == -g:
                    new.extend(inv)
                else:
                    new.append(x)
            self.add(cyclic_reduce(new))
        self.alive.discard(g)
        self.occ[g] = set()

    def total_length(self):
        return sum(len(w) for w in self.rels.values())

    def short_moves(self):
        changed = False
        while self.short:
            rid = self.short.popleft()
            w = self.rels.get(rid)
            if w is None or len(w) > 2:
                continue
            if len(w) == 1:
                self.drop(rid)
                self.substitute(abs(w[0]), ())
                changed = True
            elif abs(w[0]) != abs(w[1]):
                a, b = w
                self.drop(rid)
                # a b = 1  ->  b = a^-1
                image = (-a,) if b > 0 else (a,)
                self.substitute(abs(b), image)
                changed = True
        return changed

    def dedupe(self):
        seen = set()
        for rid in sorted(self.rels):
            w = self.rels[rid]
            keys = []
            for u in (w, list(invert(w))):
                keys.extend(tuple(u[i:] + u[:i]) for i in range(len(u)))
            key = min(keys)
            if key in seen:
                self.drop(rid)
            else:
                seen.add(key)

    def single_occurrence(self, budget):
        """Eliminate a generator through a relator in which it occurs once.

        Generators confined to a single relator go first; otherwise the
        elimination with the least growth is taken.
        """
        best = None
        for g in sorted(self.alive):
            ids = self.occ[g]
            if best is not None and best[0] == 0 and len(ids) > 1:
                continue
            for rid in sorted(ids):
                w = self.rels[rid]
                if sum(1 for x in w if abs(x) == g) != 1:
                    continue
                growth = sum(sum(1 for x in self.rels[r] if abs(x) == g)
                             for r in ids if r != rid) * (len(w) - 2) - len(w)
                key = (len(ids) > 1, growth, len(w))
                if best is None or key < best[0:1] + best[3:5]:
                    best = (key[0], g, rid, growth, len(w))
        if best is None:
            return False
        _, g, rid, growth, _ = best
        if self.total_length() + growth > budget:
            return False
        w = self.rels[rid]
        i = next(k for k, x in enumerate(w) if abs(x) == g)
        rot = w[i:] + w[:i]
        rest = tuple(rot[1:])
        image = invert(rest) if rot[0] > 0 else rest
        self.drop(rid)
        self.substitute(g, image)
        return True

    def result(self):
        keep = sorted(self.alive)
        new = {g: i + 1 for i, g in enumerate(keep)}
        rels = []
        for rid in sorted(self.rels):
            w = self.rels[rid]
            rels.append(tuple(new[abs(x)] * (1 if x > 0 else -1) for x in w))
        return GroupPresentation([self.names[g - 1] for g in keep], rels)


class AbelianizationDrift(AssertionError):
    pass


def tietze_simplify(P, budget=200000, guard_limit=400):
    """Simplify a presentation with Tietze moves.

    Moves: free and cyclic reduction, deletion of trivial and duplicate
    relators, elimination through relators of length one or two, and
    elimination of a generator through a relator containing it once (only
    while the total relator length stays within ``budget``).  Once the presentation is
    small enough (at most ``guard_limit`` generators) its abelianization is
    recorded and re-checked after every batch of moves.
    """
    eng = _Engine(P)
    reference = None

    def guard():
        nonlocal reference
        if len(eng.alive) > guard_limit:
            return
        ab = abelianization(eng.result())
        key = (ab.betti, ab.torsion)
        if reference is None:
            reference = key
        elif key != reference:
            raise AbelianizationDrift("abelianization changed during simplification")

    while True:
        eng.short_moves()
        eng.dedupe()
        guard()
        if not eng.single_occurrence(budget):
            break
    guard()
    return eng.result()
