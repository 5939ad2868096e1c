"""Finite abstract simplicial complexes and the verifiers built on them.

A complex is stored by its maximal simplices only, as sorted rows of dense
vertex indices; every other face is derived on demand and cached.  Vertex
labels are opaque, sorted once, and the sorted position is the internal
index, so all outputs are deterministic.

The heavy checks (flagness, squares, links, homology) are written so that
complexes with a few million tetrahedra stay within a few minutes on one
core.
"""
from __future__ import annotations

import itertools
from array import array
from collections import Counter, deque
from dataclasses import dataclass, field

import numpy as np

from .snf import invariant_factors


class MalformedComplexError(ValueError):
    pass


class UnknownVertexError(KeyError):
    pass


def row_keys(a):
    """Byte keys for the rows of an integer array; sorting them sorts rows
    lexicographically (big-endian, non-negative entries)."""
    a = np.ascontiguousarray(np.asarray(a, dtype=">i8"))
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return a.view(np.dtype((np.void, 8 * a.shape[1]))).ravel()


def _unique_rows(a):
    if len(a) == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0).astype(np.int64)
    keys, idx = np.unique(row_keys(a), return_index=True)
    return np.asarray(a, dtype=np.int64)[idx]


def _faces_of_rows(rows, k):
    """All k-vertex sub-rows of the given sorted rows (with repetition)."""
    m = rows.shape[1]
    if k == m:
        return rows
    parts = [rows[:, list(c)] for c in itertools.combinations(range(m), k)]
    return np.concatenate(parts, axis=0)


class SimplicialComplex:
    """Finite abstract simplicial complex, closed under faces.

    ``vertices`` is the sorted tuple of labels; ``facets`` maps a simplex
    size to an ``(m, size)`` array of maximal simplices.
    """

    def __init__(self, vertices, facets):
        self.vertices = tuple(vertices)
        self._index = None
        self.facets = {k: v for k, v in facets.items() if len(v)}
        self._faces = {}
        self._nbrs = None

    # construction -------------------------------------------------------
    @classmethod
    def from_indexed(cls, labels, simplices, check=True):
        """Build from arbitrary labels and simplices given as index rows.

        ``simplices`` may be an iterable of index tuples or a dict
        size -> array.  Non-maximal inputs are dropped; labels not used by any
        simplex become isolated vertices.
        """
        labels = list(labels)
        order = sorted(range(len(labels)), key=lambda i: labels[i])
        rank = np.empty(len(labels), dtype=np.int64)
        rank[np.asarray(order, dtype=np.int64)] = np.arange(len(labels))
        if isinstance(simplices, dict):
            groups = {k: np.asarray(v, dtype=np.int64) for k, v in simplices.items()}
        else:
            tmp = {}
            for s in simplices:
                tmp.setdefault(len(s), []).append(tuple(s))
            groups = {k: np.asarray(v, dtype=np.int64).reshape(-1, k) for k, v in tmp.items()}
        out = {}
        for k, rows in groups.items():
            if not len(rows):
                continue
            rows = np.sort(rank[rows], axis=1)
            if check and k > 1 and np.any(rows[:, 1:] == rows[:, :-1]):
                bad = rows[np.any(rows[:, 1:] == rows[:, :-1], axis=1)][0]
                raise MalformedComplexError(
                    "duplicate vertex inside simplex %r" % ([labels[order[i]] for i in bad],))
            out[k] = _unique_rows(rows)
        out = _drop_non_maximal(out)
        used = np.zeros(len(labels), dtype=bool)
        for rows in out.values():
            used[rows.ravel()] = True
        lonely = np.nonzero(~used)[0]
        if len(lonely):
            single = out.get(1, np.zeros((0, 1), dtype=np.int64))
            out[1] = _unique_rows(np.concatenate([single, lonely.reshape(-1, 1)]))
        return cls([labels[i] for i in order], out)

    # basic queries --------------------------------------------------------
    @property
    def index(self):
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vertices)}
        return self._index

    def idx(self, v):
        try:
            return self.index[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    @property
    def n(self):
        return len(self.vertices)

    @property
    def dim(self):
        return max(self.facets) - 1 if self.facets else -1

    def is_pure(self):
        return len(self.facets) == 1

    def faces(self, k):
        """All ``k``-dimensional simplices as a sorted ``(m, k+1)`` array."""
        if k in self._faces:
            return self._faces[k]
        size = k + 1
        if k == 0:
            res = np.arange(self.n, dtype=np.int64).reshape(-1, 1)
        else:
            parts = [_faces_of_rows(rows, size) for s, rows in self.facets.items() if s >= size]
            res = _unique_rows(np.concatenate(parts)) if parts else np.zeros((0, size), dtype=np.int64)
        self._faces[k] = res
        return res

    def f_vector(self):
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def euler_characteristic(self):
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def maximal_simplices(self):
        rows = []
        for s in sorted(self.facets):
            rows.extend(tuple(r) for r in self.facets[s].tolist())
        return rows

    def simplices(self):
        """Every simplex as a tuple of labels, by dimension then lexicographically."""
        for k in range(self.dim + 1):
            for r in self.faces(k).tolist():
                yield tuple(self.vertices[i] for i in r)

    def neighbors(self):
        """Adjacency sets of the 1-skeleton, indexed by vertex index."""
        if self._nbrs is None:
            nb = [set() for _ in range(self.n)]
            for a, b in self.faces(1).tolist():
                nb[a].add(b)
                nb[b].add(a)
            self._nbrs = nb
        return self._nbrs

    def has_simplex(self, simplex):
        s = sorted(self.idx(v) for v in simplex)
        k = len(s) - 1
        if k < 0 or len(set(s)) != len(s):
            return False
        faces = self.faces(k)
        keys = row_keys(faces)
        pos = np.searchsorted(keys, row_keys(np.asarray([s]))[0])
        return bool(pos < len(faces) and faces[pos].tolist() == s)

    def labels_of(self, rows):
        return [tuple(self.vertices[i] for i in r) for r in np.asarray(rows).tolist()]

    def induced(self, vertex_set):
        """Full subcomplex spanned by a set of vertex labels."""
        keep = np.zeros(self.n, dtype=bool)
        for v in vertex_set:
            keep[self.idx(v)] = True
        return self.induced_mask(keep)

    def induced_mask(self, keep):
        keep = np.asarray(keep, dtype=bool)
        labels = [v for v, k in zip(self.vertices, keep) if k]
        new = np.full(self.n, -1, dtype=np.int64)
        new[keep] = np.arange(int(keep.sum()))
        pieces = {}
        for s, rows in self.facets.items():
            mask = keep[rows]
            for r, m in zip(rows.tolist(), mask.tolist()):
                t = tuple(new[i] for i, ok in zip(r, m) if ok)
                if t:
                    pieces.setdefault(len(t), []).append(t)
        groups = {k: np.asarray(v, dtype=np.int64) for k, v in pieces.items()}
        out = _drop_non_maximal({k: _unique_rows(v) for k, v in groups.items()})
        return SimplicialComplex(labels, out)

    def subcomplex(self, facet_rows):
        """Subcomplex generated by index rows of this complex (labels kept)."""
        groups = {}
        for r in facet_rows:
            groups.setdefault(len(r), []).append(tuple(r))
        used = sorted({i for r in facet_rows for i in r})
        new = {v: j for j, v in enumerate(used)}
        out = {k: _unique_rows(np.asarray([[new[i] for i in r] for r in v], dtype=np.int64))
               for k, v in groups.items()}
        return SimplicialComplex([self.vertices[i] for i in used], _drop_non_maximal(out))

    def boundary_complex(self):
        """Codimension-one faces lying in exactly one facet (pure complexes)."""
        d = self.dim
        rows = self.facets[d + 1]
        faces = _faces_of_rows(rows, d)
        keys, counts = np.unique(row_keys(faces), return_counts=True)
        single = keys[counts == 1]
        if not len(single):
            return SimplicialComplex([], {})
        arr = np.frombuffer(single.tobytes(), dtype=">i8").reshape(-1, d).astype(np.int64)
        return self.subcomplex([tuple(r) for r in arr.tolist()])

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        if self.vertices != other.vertices or set(self.facets) != set(other.facets):
            return False
        return all(np.array_equal(self.facets[k], other.facets[k]) for k in self.facets)

    def __repr__(self):
        return "SimplicialComplex(n=%d, f=%s)" % (self.n, self.f_vector())

    # serialisation ----------------------------------------------------------
    def to_json(self):
        return {"vertices": [str(v) for v in self.vertices],
                "maximal_simplices": [[str(self.vertices[i]) for i in r]
                                      for r in self.maximal_simplices()]}

    @classmethod
    def from_json(cls, data):
        labels = list(data["vertices"])
        index = {v: i for i, v in enumerate(labels)}
        simplices = []
        for s in data["maximal_simplices"]:
            try:
                simplices.append(tuple(index[v] for v in s))
            except KeyError as e:
                raise MalformedComplexError("simplex mentions unlisted vertex %r" % e.args[0])
        return cls.from_indexed(labels, simplices)


def _drop_non_maximal(groups):
    sizes = sorted(groups)
    if len(sizes) <= 1:
        return groups
    out = {}
    for s in sizes:
        rows = groups[s]
        bigger = [_faces_of_rows(groups[t], s) for t in sizes if t > s]
        if bigger:
            covered = np.isin(row_keys(rows), row_keys(np.concatenate(bigger)))
            rows = rows[~covered]
        if len(rows):
            out[s] = rows
    return out


def build_complex(maximal_simplices, vertices=None):
    """Complex generated by the given simplices (lists of labels)."""
    labels = list(vertices) if vertices is not None else []
    index = {v: i for i, v in enumerate(labels)}
    rows = []
    for s in maximal_simplices:
        s = list(s)
        if not s:
            raise MalformedComplexError("empty simplex")
        if len(set(s)) != len(s):
            raise MalformedComplexError("duplicate vertex inside simplex %r" % (s,))
        for v in s:
            if v not in index:
                index[v] = len(labels)
                labels.append(v)
        rows.append(tuple(index[v] for v in s))
    return SimplicialComplex.from_indexed(labels, rows)


# --------------------------------------------------------------------------
# flagness, squares, fullness


@dataclass
class FlagReport:
    flag: bool
    witness: tuple | None = None


def _coface_counts(K, k):
    """Number of (k+1)-simplices containing each k-simplex."""
    faces = K.faces(k)
    if k + 1 > K.dim:
        return np.zeros(len(faces), dtype=np.int64)
    sub = _faces_of_rows(K.faces(k + 1), k + 1)
    keys, counts = np.unique(row_keys(sub), return_counts=True)
    pos = np.searchsorted(keys, row_keys(faces))
    out = np.zeros(len(faces), dtype=np.int64)
    ok = pos < len(keys)
    hit = np.zeros(len(faces), dtype=bool)
    hit[ok] = keys[pos[ok]] == row_keys(faces)[ok]
    out[hit] = counts[pos[hit]]
    return out


def _minimal_nonface(K, clique):
    clique = list(clique)
    changed = True
    while changed:
        changed = False
        for v in list(clique):
            rest = [u for u in clique if u != v]
            if len(rest) >= 2 and not K.has_simplex([K.vertices[i] for i in rest]):
                clique = rest
                changed = True
                break
    return tuple(K.vertices[i] for i in sorted(clique))


def is_flag(K):
    """Is ``K`` determined by its 1-skeleton?

    Every simplex ``s`` must have as many cofaces of one dimension higher as
    there are common neighbours of its vertices; by induction this makes every
    clique a simplex.  The witness is a minimal clique that spans no simplex.
    """
    nb = K.neighbors()
    for k in range(1, K.dim + 1):
        counts = _coface_counts(K, k)
        for row, c in zip(K.faces(k).tolist(), counts.tolist()):
            common = set.intersection(*(nb[i] for i in row))
            if len(common) != c:
                for w in sorted(common):
                    cand = tuple(row) + (w,)
                    if not K.has_simplex([K.vertices[i] for i in cand]):
                        return FlagReport(False, _minimal_nonface(K, cand))
    return FlagReport(True, None)


@dataclass(frozen=True, order=True)
class Square:
    """An empty 4-cycle, stored as the least of its 8 dihedral orderings."""
    cycle: tuple

    @classmethod
    def canonical(cls, cycle):
        c = list(cycle)
        forms = []
        for r in range(4):
            rot = c[r:] + c[:r]
            forms.append(tuple(rot))
            forms.append(tuple([rot[0]] + rot[1:][::-1]))
        return cls(min(forms))

    @property
    def diagonals(self):
        a, b, c, d = self.cycle
        return (tuple(sorted((a, c))), tuple(sorted((b, d))))

    @property
    def vertex_set(self):
        return frozenset(self.cycle)


def _square_rows(K, within=None):
    nb = K.neighbors()
    rows = []
    for a in range(K.n):
        if within is not None and not within[a]:
            continue
        na = nb[a]
        common = {}
        for b in na:
            if b < a:
                continue
            for c in nb[b]:
                if c > a and c not in na:
                    common.setdefault(c, []).append(b)
        for c, bs in common.items():
            if len(bs) < 2:
                continue
            bs.sort()
            for b, d in itertools.combinations(bs, 2):
                if d not in nb[b]:
                    rows.append((a, b, c, d))
    rows.sort()
    return rows


def enumerate_squares(K):
    """Every square of ``K`` once, canonical and sorted."""
    return [Square(tuple(K.vertices[i] for i in r)) for r in _square_rows(K)]


@dataclass
class IsolationReport:
    ok: bool
    offending_vertex: object = None


def has_isolated_squares(K, squares=None):
    squares = enumerate_squares(K) if squares is None else squares
    seen = Counter(v for s in squares for v in s.cycle)
    for v in K.vertices:
        if seen.get(v, 0) > 1:
            return IsolationReport(False, v)
    return IsolationReport(True, None)


def is_full_subcomplex(K, S):
    """Is ``S`` a full subcomplex of ``K``?

    ``S`` is a :class:`SimplicialComplex` whose simplices are simplices of
    ``K`` (a plain vertex collection names its own induced subcomplex, which
    is full by definition).  Full means every simplex of ``K`` with all
    vertices in ``S`` is a simplex of ``S``.
    """
    if not isinstance(S, SimplicialComplex):
        for v in S:
            K.idx(v)
        return True
    m = np.full(S.n, -1, dtype=np.int64)
    for i, v in enumerate(S.vertices):
        m[i] = K.idx(v)
    keep = np.zeros(K.n, dtype=bool)
    keep[m] = True
    for k in range(K.dim + 1):
        faces = K.faces(k)
        inside = faces[np.all(keep[faces], axis=1)]
        if k > S.dim:
            if len(inside):
                return False
            continue
        mine = np.sort(m[S.faces(k)], axis=1)
        if not np.all(np.isin(row_keys(inside), row_keys(mine))):
            return False
        if not np.all(np.isin(row_keys(mine), row_keys(faces))):
            raise MalformedComplexError("S is not a subcomplex of K")
    return True


def vertex_link(K, v):
    i = K.idx(v)
    pieces = []
    for s, rows in K.facets.items():
        hit = rows[np.any(rows == i, axis=1)]
        for r in hit.tolist():
            rest = tuple(x for x in r if x != i)
            if rest:
                pieces.append(rest)
    used = sorted({x for r in pieces for x in r})
    new = {x: j for j, x in enumerate(used)}
    return SimplicialComplex.from_indexed([K.vertices[x] for x in used],
                                          [tuple(new[x] for x in r) for r in pieces])


# --------------------------------------------------------------------------
# homology


@dataclass
class HomologyProfile:
    betti: list
    torsion: list
    reduced: bool = False

    def as_tuple(self):
        return tuple(self.betti)

    def to_json(self):
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion],
                "reduced": self.reduced}


class _CellComplex:
    """All simplices with face/coface incidence in flat arrays."""

    def __init__(self, K):
        self.K = K
        d = K.dim
        self.faces = [K.faces(k) for k in range(d + 1)]
        self.offset = [0]
        for f in self.faces:
            self.offset.append(self.offset[-1] + len(f))
        total = self.offset[-1]
        self.dim_of = np.zeros(total, dtype=np.int8)
        for k in range(d + 1):
            self.dim_of[self.offset[k]:self.offset[k + 1]] = k
        src, dst, sgn = [], [], []
        for k in range(1, d + 1):
            rows = self.faces[k]
            lower = row_keys(self.faces[k - 1])
            ids = np.arange(len(rows)) + self.offset[k]
            for j in range(k + 1):
                sub = np.delete(rows, j, axis=1)
                pos = np.searchsorted(lower, row_keys(sub)) + self.offset[k - 1]
                src.append(ids)
                dst.append(pos)
                sgn.append(np.full(len(rows), 1 if j % 2 == 0 else -1, dtype=np.int8))
        if src:
            src = np.concatenate(src)
            dst = np.concatenate(dst)
            sgn = np.concatenate(sgn)
        else:
            src = dst = np.zeros(0, dtype=np.int64)
            sgn = np.zeros(0, dtype=np.int8)
        self.total = total
        self.bptr, self.bidx, self.bsgn = _csr(src, dst, sgn, total)
        self.cptr, self.cidx, _ = _csr(dst, src, sgn, total)

    def arrays(self):
        return (array("q", self.bptr.tobytes()), array("q", self.bidx.tobytes()),
                array("q", self.cptr.tobytes()), array("q", self.cidx.tobytes()))


def _csr(src, dst, val, n):
    order = np.argsort(src, kind="stable")
    src, dst, val = src[order], dst[order], val[order]
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(ptr, src + 1, 1)
    return np.cumsum(ptr), dst.astype(np.int64), val


def _reduce(cc, alive, allow_coreduction):
    """Remove reduction pairs (free face + unique coface) and, optionally,
    coreduction pairs (cell with a single remaining face) until stuck."""
    bptr, bidx, cptr, cidx = cc.arrays()
    total = cc.total
    nf = array("q", bytes(8 * total))
    nc = array("q", bytes(8 * total))
    for c in range(total):
        if not alive[c]:
            continue
        nf[c] = sum(1 for j in range(bptr[c], bptr[c + 1]) if alive[bidx[j]])
        nc[c] = sum(1 for j in range(cptr[c], cptr[c + 1]) if alive[cidx[j]])
    queue = deque(c for c in range(total) if alive[c] and (nc[c] == 1 or (allow_coreduction and nf[c] == 1)))

    def kill(c):
        alive[c] = 0
        for j in range(bptr[c], bptr[c + 1]):
            f = bidx[j]
            if alive[f]:
                nc[f] -= 1
                if nc[f] == 1:
                    queue.append(f)
        for j in range(cptr[c], cptr[c + 1]):
            g = cidx[j]
            if alive[g]:
                nf[g] -= 1
                if allow_coreduction and nf[g] == 1:
                    queue.append(g)

    while queue:
        c = queue.popleft()
        if not alive[c]:
            continue
        if nc[c] == 1:
            partner = next(cidx[j] for j in range(cptr[c], cptr[c + 1]) if alive[cidx[j]])
        elif allow_coreduction and nf[c] == 1:
            partner = next(bidx[j] for j in range(bptr[c], bptr[c + 1]) if alive[bidx[j]])
        else:
            continue
        kill(c)
        kill(partner)
    return alive


def _components(K):
    parent = list(range(K.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in K.faces(1).tolist():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return sorted({find(x) for x in range(K.n)})


def homology(K, reduced=False):
    """Integral homology via S-complex reductions followed by Smith normal form.

    One vertex per connected component is removed first (this computes
    reduced homology); the removed vertices are added back to H0 unless
    ``reduced`` is requested.
    """
    if K.n == 0:
        raise MalformedComplexError("homology of the empty complex")
    cc = _CellComplex(K)
    alive = bytearray(b"\x01") * cc.total
    roots = _components(K)
    for r in roots:
        alive[r] = 0
    _reduce(cc, alive, allow_coreduction=True)
    left = [c for c in range(cc.total) if alive[c]]
    pos = {c: i for i, c in enumerate(left)}
    by_dim = [[c for c in left if cc.dim_of[c] == k] for k in range(K.dim + 1)]
    local = [{c: i for i, c in enumerate(cells)} for cells in by_dim]
    ranks = [0] * (K.dim + 2)
    tors = [[] for _ in range(K.dim + 1)]
    for k in range(1, K.dim + 1):
        rows = []
        for c in by_dim[k]:
            row = {}
            for j in range(cc.bptr[c], cc.bptr[c + 1]):
                f = int(cc.bidx[j])
                if f in pos:
                    row[local[k - 1][f]] = int(cc.bsgn[j])
            rows.append(row)
        factors = invariant_factors(rows, len(by_dim[k - 1]))
        ranks[k] = len(factors)
        tors[k - 1] = [f for f in factors if f > 1]
    betti = [len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(K.dim + 1)]
    if not reduced:
        betti[0] += len(roots)
    return HomologyProfile(betti, tors, reduced)


def collapse(K, drop_top=0):
    """Simplicial collapse of ``K`` (optionally after deleting ``drop_top``
    top-dimensional simplices); returns the remaining subcomplex."""
    cc = _CellComplex(K)
    alive = bytearray(b"\x01") * cc.total
    top = K.dim
    for j in range(drop_top):
        alive[cc.offset[top] + j] = 0
    _reduce(cc, alive, allow_coreduction=False)
    keep = []
    for k in range(K.dim, -1, -1):
        for j, r in enumerate(cc.faces[k].tolist()):
            c = cc.offset[k] + j
            if alive[c] and not any(alive[cc.cidx[x]] for x in range(cc.cptr[c], cc.cptr[c + 1])):
                keep.append(tuple(r))
    if not keep:
        return SimplicialComplex([], {})
    return K.subcomplex(keep)


# --------------------------------------------------------------------------
# sphere recognition


def is_closed_surface(L):
    """Connected closed pseudo-free 2-manifold: pure 2-dim, every edge in two
    triangles, every vertex link a single cycle."""
    if L.dim != 2 or not L.is_pure():
        return False
    if len(_components(L)) != 1:
        return False
    if np.any(_coface_counts(L, 1) != 2):
        return False
    tris = L.faces(2).tolist()
    around = [[] for _ in range(L.n)]
    for t in tris:
        for v in t:
            around[v].append([u for u in t if u != v])
    for v, edges in enumerate(around):
        if not edges or not _single_cycle(edges):
            return False
    return True


def _single_cycle(edges):
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(x) != 2 for x in adj.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    prev, cur = None, start
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == start:
            break
        if nxt in seen:
            return False
        seen.add(nxt)
        prev, cur = cur, nxt
    return len(seen) == len(adj)


def is_sphere(L, d):
    """Combinatorial sphere check for d <= 2 (exact for these dimensions)."""
    if d == 0:
        return L.n == 2 and L.dim == 0
    if d == 1:
        if L.dim != 1 or not L.is_pure():
            return False
        return _single_cycle([tuple(e) for e in L.faces(1).tolist()])
    if d == 2:
        return is_closed_surface(L) and L.euler_characteristic() == 2
    raise ValueError("sphere recognition implemented for d <= 2 only")


def _links_are_2spheres(K):
    """Every vertex link of a pure 3-complex is a 2-sphere; returns
    (ok, first offending vertex label)."""
    tets = K.facets[4]
    tri_counts = _coface_counts(K, 2)
    if np.any(tri_counts != 2):
        bad = K.faces(2)[np.nonzero(tri_counts != 2)[0][0]]
        return False, K.vertices[int(bad[0])]
    order = np.argsort(tets.ravel(), kind="stable")
    owner = tets.ravel()[order]
    tet_of = np.repeat(np.arange(len(tets)), 4)[order]
    bounds = np.searchsorted(owner, np.arange(K.n + 1))
    tl = tets.tolist()
    for v in range(K.n):
        ids = tet_of[bounds[v]:bounds[v + 1]].tolist()
        if not ids:
            return False, K.vertices[v]
        link = [[u for u in tl[t] if u != v] for t in ids]
        if not _link_is_sphere(link):
            return False, K.vertices[v]
    return True, None


def _link_is_sphere(tris):
    verts = {u for t in tris for u in t}
    edges = Counter()
    around = {}
    for a, b, c in tris:
        for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
            around.setdefault(x, []).append((y, z))
        edges[(a, b)] += 1
        edges[(a, c)] += 1
        edges[(b, c)] += 1
    if any(c != 2 for c in edges.values()):
        return False
    if len(verts) - len(edges) + len(tris) != 2:
        return False
    if not all(_single_cycle(es) for es in around.values()):
        return False
    # connectivity
    adj = {}
    for (a, b) in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


@dataclass
class SphereCertificate:
    links_ok: bool
    homology_ok: bool
    pi1_trivial: object
    homology: HomologyProfile | None = None
    bad_vertex: object = None

    @property
    def passed(self):
        return self.links_ok and self.homology_ok and self.pi1_trivial is True

    def to_json(self):
        return {"links_ok": self.links_ok, "homology_ok": self.homology_ok,
                "pi1_trivial": self.pi1_trivial,
                "homology": self.homology.to_json() if self.homology else None,
                "bad_vertex": None if self.bad_vertex is None else str(self.bad_vertex)}


def sphere3_certificate(K, tietze_budget=200000):
    """Certify that a pure 3-complex triangulates the 3-sphere.

    The fundamental group leg is a semi-decision: it is ``True`` when the
    presentation trivialises and ``"undetermined"`` otherwise.
    """
    from .groups import pi1_presentation, tietze_simplify

    if not (K.dim == 3 and K.is_pure()):
        raise MalformedComplexError("sphere3_certificate needs a pure 3-dimensional complex")
    links_ok, bad = _links_are_2spheres(K)
    H = homology(K)
    homology_ok = H.betti == [1, 0, 0, 1] and not any(H.torsion)
    if not links_ok:
        return SphereCertificate(False, homology_ok, "undetermined", H, bad)
    spine = collapse(K, drop_top=1)
    if spine.n <= 1:
        pi1 = True
    else:
        P = tietze_simplify(pi1_presentation(spine), budget=tietze_budget)
        pi1 = True if not P.generators else "undetermined"
    return SphereCertificate(links_ok, homology_ok, pi1, H, bad)
