"""Smith normal form over the integers for sparse boundary matrices."""
from __future__ import annotations

from math import gcd


def _eliminate_units(rows, ncols):
    """Pivot on entries equal to +-1 while any exist; returns the count of
    pivots and the remaining rows (dicts column -> int, Python ints)."""
    rows = [dict(r) for r in rows if r]
    col_rows = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    pivots = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive):
            if i not in alive:
                continue
            r = rows[i]
            unit = None
            for c, v in r.items():
                if v in (1, -1) and (unit is None or len(col_rows[c]) < len(col_rows[unit])):
                    unit = c
            if unit is None:
                continue
            pv = r[unit]
            for j in list(col_rows[unit]):
                if j == i:
                    continue
                rj = rows[j]
                f = rj[unit] * pv
                for c, v in r.items():
                    nv = rj.get(c, 0) - f * v
                    if nv:
                        if c not in rj:
                            col_rows.setdefault(c, set()).add(j)
                        rj[c] = nv
                    elif c in rj:
                        del rj[c]
                        col_rows[c].discard(j)
                if not rj:
                    alive.discard(j)
            for c in r:
                col_rows[c].discard(i)
            alive.discard(i)
            pivots += 1
            progress = True
    return pivots, [rows[i] for i in sorted(alive) if rows[i]]


def _dense_snf(mat):
    """Diagonal of the Smith form of a small dense integer matrix."""
    m = [row[:] for row in mat]
    diag = []
    while m and m[0]:
        entries = [(abs(v), i, j) for i, row in enumerate(m) for j, v in enumerate(row) if v]
        if not entries:
            break
        _, pi, pj = min(entries)
        m[0], m[pi] = m[pi], m[0]
        for row in m:
            row[0], row[pj] = row[pj], row[0]
        while True:
            p = m[0][0]
            done = True
            for i in range(1, len(m)):
                q = m[i][0] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[0])]
                if m[i][0]:
                    done = False
            for j in range(1, len(m[0])):
                q = m[0][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[0]
                if m[0][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(1, len(m)) for j in range(1, len(m[0]))
                            if m[i][j] % p), None)
                if bad is None:
                    break
                m[0] = [a + b for a, b in zip(m[0], m[bad[0]])]
                continue
            # move the smallest nonzero of row/column 0 to the corner
            cands = [(abs(m[i][0]), i, 0) for i in range(len(m)) if m[i][0]]
            cands += [(abs(m[0][j]), 0, j) for j in range(len(m[0])) if m[0][j]]
            _, i, j = min(cands)
            if i:
                m[0], m[i] = m[i], m[0]
            if j:
                for row in m:
                    row[0], row[j] = row[j], row[0]
        diag.append(abs(m[0][0]))
        m = [row[1:] for row in m[1:]]
    return diag


def invariant_factors(rows, ncols):
    """Nonzero invariant factors of the integer matrix given as a list of
    sparse rows (dicts column -> value), sorted so each divides the next."""
    units, rest = _eliminate_units(rows, ncols)
    diag = []
    if rest:
        cols = sorted({c for r in rest for c in r})
        where = {c: k for k, c in enumerate(cols)}
        dense = []
        for r in rest:
            row = [0] * len(cols)
            for c, v in r.items():
                row[where[c]] = v
            dense.append(row)
        diag = _dense_snf(dense)
    diag = _normalise([1] * units + diag)
    return diag


def _normalise(diag):
    """Turn any diagonal into invariant-factor form."""
    diag = [d for d in diag if d]
    changed = True
    while changed:
        changed = False
        diag.sort()
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                if b % a:
                    g = gcd(a, b)
                    diag[i], diag[j] = g, a * b // g
                    changed = True
    return sorted(diag)
