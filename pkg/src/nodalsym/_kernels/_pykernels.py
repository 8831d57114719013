"""Pure-Python kernels; reference semantics for the compiled twin."""
from __future__ import annotations


def poly_mul(a: dict, b: dict) -> dict:
    """Multiply two sparse term maps ``{exponent tuple: coefficient}``."""
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            c = get(e)
            out[e] = ca * cb if c is None else c + ca * cb
    return {e: c for e, c in out.items() if c}


def int_rank(rows: list) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        prow = m[rank]
        for r in range(rank + 1, len(m)):
            row = m[r]
            f = row[col]
            if f:
                for c in range(col, ncols):
                    row[c] = (p * row[c] - f * prow[c]) // prev
            else:
                for c in range(col, ncols):
                    row[c] = (p * row[c]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def int_det(matrix: list) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(r) for r in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        p = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            mk = m[k]
            f = mi[k]
            for j in range(k + 1, n):
                mi[j] = (p * mi[j] - f * mk[j]) // prev
        prev = p
    return sign * m[n - 1][n - 1]
