# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels.  Same contracts as ``_pykernels``."""


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef Py_ssize_t i, n
    cdef object ca, cb, c
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return out
    n = len(next(iter(b)))
    cdef list buf = [0] * n
    for eb, cb in b.items():
        for ea, ca in a.items():
            for i in range(n):
                buf[i] = <object>ea[i] + <object>eb[i]
            e = tuple(buf)
            c = out.get(e)
            if c is None:
                out[e] = ca * cb
            else:
                out[e] = c + ca * cb
    return {e: c for e, c in out.items() if c}


def int_rank(list rows):
    cdef list m = [list(row_) for row_ in rows if any(row_)]
    cdef Py_ssize_t ncols, nrows, rank, col, r, c, piv
    cdef list prow, row
    cdef object p, f, prev
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if (<list>m[r])[col]:
                piv = r
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = <list>m[rank]
        p = prow[col]
        for r in range(rank + 1, nrows):
            row = <list>m[r]
            f = row[col]
            if f:
                for c in range(col, ncols):
                    row[c] = (p * row[c] - f * prow[c]) // prev
            else:
                for c in range(col, ncols):
                    row[c] = (p * row[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def int_det(list matrix):
    cdef Py_ssize_t n = len(matrix)
    cdef Py_ssize_t i, j, k, r
    cdef list m, mi, mk
    cdef object p, f, prev
    cdef int sign = 1
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    prev = 1
    for k in range(n - 1):
        if (<list>m[k])[k] == 0:
            for r in range(k + 1, n):
                if (<list>m[r])[k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        mk = <list>m[k]
        p = mk[k]
        for i in range(k + 1, n):
            mi = <list>m[i]
            f = mi[k]
            for j in range(k + 1, n):
                mi[j] = (p * mi[j] - f * mk[j]) // prev
        prev = p
    return sign * (<list>m[n - 1])[n - 1]
