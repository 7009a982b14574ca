# cython: language_level=3, boundscheck=False, wraparound=False, overflowcheck=True
"""int64 twin of the reference elimination; raises OverflowError on overflow."""
from libc.stdlib cimport malloc, free


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void _normalize(long long* row, int n):
    cdef long long g = 0
    cdef int j
    for j in range(n):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g


def rref_int(rows, int ncols):
    cdef int nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    cdef long long* m = <long long*> malloc(nrows * ncols * sizeof(long long))
    cdef long long* tmp = <long long*> malloc(ncols * sizeof(long long))
    if m == NULL or tmp == NULL:
        free(m)
        free(tmp)
        raise MemoryError()
    cdef int i, j, c, r = 0, piv
    cdef long long p, f, a, b
    pivots = []
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j]
        for c in range(ncols):
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    tmp[j] = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = tmp[j]
            if m[r * ncols + c] < 0:
                for j in range(ncols):
                    m[r * ncols + j] = -m[r * ncols + j]
            _normalize(&m[r * ncols], ncols)
            p = m[r * ncols + c]
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i * ncols + c]
                if f == 0:
                    continue
                for j in range(ncols):
                    a = p * m[i * ncols + j]
                    b = f * m[r * ncols + j]
                    m[i * ncols + j] = a - b
                _normalize(&m[i * ncols], ncols)
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(m)
        free(tmp)
    return out, pivots
