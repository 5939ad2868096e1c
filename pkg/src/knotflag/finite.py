"""Small permutation groups given by multiplication tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple          # permutations as tuples, identity first
    table: tuple             # table[i][j] = index of elements[i] * elements[j]
    inverse: tuple

    @property
    def order(self):
        return len(self.elements)

    def mul(self, i, j):
        return self.table[i][j]

    def is_abelian(self):
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i))

    def generated(self, gens):
        """Indices of the subgroup generated by ``gens``."""
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def class_representatives(self):
        """Smallest index in each conjugacy class."""
        reps, seen = [], set()
        for x in range(self.order):
            if x in seen:
                continue
            cls = {self.table[self.table[g][x]][self.inverse[g]] for g in range(self.order)}
            seen |= cls
            reps.append(x)
        return reps

    def to_json(self):
        return {"name": self.name, "order": self.order,
                "elements": [list(p) for p in self.elements],
                "table": [list(r) for r in self.table]}


def _compose(p, q):
    """Apply ``p`` first, then ``q``."""
    return tuple(q[p[i]] for i in range(len(p)))


def _sign(p):
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def _closure(n, gens):
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = _compose(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return elems


def _from_perms(name, perms):
    ident = tuple(range(len(next(iter(perms)))))
    # identity first, then transpositions and other elements in a fixed order
    order = sorted(perms, key=lambda p: (p != ident, sum(a != b for a, b in zip(p, ident)), p))
    index = {p: i for i, p in enumerate(order)}
    table = tuple(tuple(index[_compose(a, b)] for b in order) for a in order)
    inverse = tuple(row.index(0) for row in table)
    return FiniteGroup(name, tuple(order), table, inverse)


@lru_cache(maxsize=None)
def builtin_group(name):
    if name == "S3":
        return _from_perms(name, set(itertools.permutations(range(3))))
    if name == "S4":
        return _from_perms(name, set(itertools.permutations(range(4))))
    if name == "A4":
        return _from_perms(name, {p for p in itertools.permutations(range(4)) if _sign(p) == 1})
    if name == "A5":
        return _from_perms(name, {p for p in itertools.permutations(range(5)) if _sign(p) == 1})
    if name == "D4":
        return _from_perms(name, _closure(4, [(1, 2, 3, 0), (0, 3, 2, 1)]))
    raise KeyError("unknown group %r" % name)


BUILTIN_TARGETS = ("S3", "D4", "A4", "S4", "A5")
