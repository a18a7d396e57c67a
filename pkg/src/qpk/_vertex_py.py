"""Pure-Python integer kernels for exact vertex enumeration.

Both routines work on augmented integer rows ``[a_0, ..., a_{n-1}, b]`` that
describe ``A x = b``.  The compiled twin in ``_vertex_c.pyx`` implements the
same algorithms step for step, so the two backends return identical lists.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd


def _normalize(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    for v in row:
        if v:
            if v < 0:
                row = [-w for w in row]
            break
    return row


def row_reduce(rows: list[list[int]], n: int) -> list[list[int]] | None:
    """Echelon form with redundant rows dropped.

    Returns ``None`` when the system is inconsistent.  Each surviving row is
    divided by the gcd of its entries and has a positive leading entry.
    """
    m = [list(r) for r in rows]
    rank = 0
    for col in range(n):
        pivot = -1
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot < 0:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        top = m[rank]
        p = top[col]
        for i in range(rank + 1, len(m)):
            row = m[i]
            c = row[col]
            if c:
                m[i] = _normalize([p * row[j] - c * top[j] for j in range(n + 1)])
        m[rank] = _normalize(top)
        rank += 1
    for i in range(rank, len(m)):
        if m[i][n] != 0:
            return None
    return m[:rank]


def basic_solutions(rows: list[list[int]], n: int) -> list[tuple[int, ...]]:
    """Nonnegative basic solutions of a full-row-rank system ``A x = b``.

    For every choice of ``r`` basis columns (lexicographic order) the square
    system is solved by fraction-free Gauss-Jordan elimination, in which
    every division by the previous pivot is exact.  A feasible solution is
    returned as ``(x_0, ..., x_{n-1}, d)`` meaning ``x_i / d`` with ``d > 0``
    and gcd 1.  Duplicates (degenerate vertices) are kept; callers dedupe.
    """
    r = len(rows)
    out: list[tuple[int, ...]] = []
    if r == 0 or r > n:
        return out
    for basis in combinations(range(n), r):
        a = [[row[c] for c in basis] + [row[n]] for row in rows]
        prev = 1
        singular = False
        for k in range(r):
            pivot = -1
            for i in range(k, r):
                if a[i][k] != 0:
                    pivot = i
                    break
            if pivot < 0:
                singular = True
                break
            if pivot != k:
                a[k], a[pivot] = a[pivot], a[k]
            top = a[k]
            p = top[k]
            for i in range(r):
                if i == k:
                    continue
                row = a[i]
                c = row[k]
                a[i] = [(p * row[j] - c * top[j]) // prev for j in range(r + 1)]
            prev = p
        if singular:
            continue
        d = prev
        sign = 1 if d > 0 else -1
        xs = [a[i][r] * sign for i in range(r)]
        if any(v < 0 for v in xs):
            continue
        d *= sign
        g = d
        for v in xs:
            if v:
                g = gcd(g, v)
        vec = [0] * (n + 1)
        for i, c in enumerate(basis):
            vec[c] = xs[i] // g
        vec[n] = d // g
        out.append(tuple(vec))
    return out
