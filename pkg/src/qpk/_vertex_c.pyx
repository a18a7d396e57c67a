# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels for exact vertex enumeration.

Mirrors ``_vertex_py`` step for step on 64-bit integers.  Any intermediate
that would overflow raises ``OverflowError``; the dispatcher in
``qpk._backend`` then reruns the pure-Python version on arbitrary-precision
integers, so results never depend on which backend ran.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <limits.h>
    static inline int qpk_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int qpk_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int qpk_mul_ovf(long long a, long long b, long long *r) nogil
    int qpk_sub_ovf(long long a, long long b, long long *r) nogil
    long long LLONG_MIN


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int _combine(long long p, long long x, long long c, long long y, long long *out) noexcept nogil:
    """out = p*x - c*y; returns nonzero on overflow."""
    cdef long long u, v
    if qpk_mul_ovf(p, x, &u):
        return 1
    if qpk_mul_ovf(c, y, &v):
        return 1
    if qpk_sub_ovf(u, v, out):
        return 1
    if out[0] == LLONG_MIN:
        return 1
    return 0


cdef void _normalize(long long *row, int w) noexcept nogil:
    cdef long long g = 0
    cdef int j
    for j in range(w):
        if row[j]:
            g = _gcd(g, row[j])
    if g > 1:
        for j in range(w):
            row[j] = row[j] // g
    for j in range(w):
        if row[j]:
            if row[j] < 0:
                for j in range(w):
                    row[j] = -row[j]
            break


def row_reduce(rows, int n):
    cdef int m = len(rows)
    cdef int w = n + 1
    cdef long long *a = <long long *> malloc(max(m, 1) * w * sizeof(long long))
    cdef long long *tmp = <long long *> malloc(w * sizeof(long long))
    cdef int i, j, col, rank = 0, pivot
    cdef long long p, c, v
    if a == NULL or tmp == NULL:
        free(a)
        free(tmp)
        raise MemoryError()
    try:
        for i in range(m):
            row = rows[i]
            for j in range(w):
                v = row[j]
                if v == LLONG_MIN:
                    raise OverflowError("entry out of range")
                a[i * w + j] = v
        for col in range(n):
            pivot = -1
            for i in range(rank, m):
                if a[i * w + col] != 0:
                    pivot = i
                    break
            if pivot < 0:
                continue
            if pivot != rank:
                for j in range(w):
                    v = a[rank * w + j]
                    a[rank * w + j] = a[pivot * w + j]
                    a[pivot * w + j] = v
            p = a[rank * w + col]
            for i in range(rank + 1, m):
                c = a[i * w + col]
                if c:
                    for j in range(w):
                        if _combine(p, a[i * w + j], c, a[rank * w + j], &tmp[j]):
                            raise OverflowError("row reduction overflowed int64")
                    for j in range(w):
                        a[i * w + j] = tmp[j]
                    _normalize(&a[i * w], w)
            _normalize(&a[rank * w], w)
            rank += 1
        for i in range(rank, m):
            if a[i * w + n] != 0:
                return None
        return [[a[i * w + j] for j in range(w)] for i in range(rank)]
    finally:
        free(a)
        free(tmp)


def basic_solutions(rows, int n):
    cdef int r = len(rows)
    cdef int w, i, j, k, pivot, t
    cdef long long p, c, prev, d, g, v
    cdef long long *src
    cdef long long *a
    cdef long long *tmp
    cdef int *basis
    cdef bint singular, feasible
    out = []
    if r == 0 or r > n:
        return out
    w = r + 1
    src = <long long *> malloc(r * (n + 1) * sizeof(long long))
    a = <long long *> malloc(r * w * sizeof(long long))
    tmp = <long long *> malloc(w * sizeof(long long))
    basis = <int *> malloc(r * sizeof(int))
    if src == NULL or a == NULL or tmp == NULL or basis == NULL:
        free(src)
        free(a)
        free(tmp)
        free(basis)
        raise MemoryError()
    try:
        for i in range(r):
            row = rows[i]
            for j in range(n + 1):
                v = row[j]
                if v == LLONG_MIN:
                    raise OverflowError("entry out of range")
                src[i * (n + 1) + j] = v
        for i in range(r):
            basis[i] = i
        while True:
            for i in range(r):
                for j in range(r):
                    a[i * w + j] = src[i * (n + 1) + basis[j]]
                a[i * w + r] = src[i * (n + 1) + n]
            prev = 1
            singular = False
            for k in range(r):
                pivot = -1
                for i in range(k, r):
                    if a[i * w + k] != 0:
                        pivot = i
                        break
                if pivot < 0:
                    singular = True
                    break
                if pivot != k:
                    for j in range(w):
                        v = a[k * w + j]
                        a[k * w + j] = a[pivot * w + j]
                        a[pivot * w + j] = v
                p = a[k * w + k]
                for i in range(r):
                    if i == k:
                        continue
                    c = a[i * w + k]
                    for j in range(w):
                        if _combine(p, a[i * w + j], c, a[k * w + j], &tmp[j]):
                            raise OverflowError("elimination overflowed int64")
                        tmp[j] = tmp[j] // prev
                    for j in range(w):
                        a[i * w + j] = tmp[j]
                prev = p
            if not singular:
                d = prev
                feasible = True
                for i in range(r):
                    v = a[i * w + r]
                    if d < 0:
                        v = -v
                    if v < 0:
                        feasible = False
                        break
                if feasible:
                    if d < 0:
                        d = -d
                        for i in range(r):
                            a[i * w + r] = -a[i * w + r]
                    g = d
                    for i in range(r):
                        if a[i * w + r]:
                            g = _gcd(g, a[i * w + r])
                    vec = [0] * (n + 1)
                    for i in range(r):
                        vec[basis[i]] = a[i * w + r] // g
                    vec[n] = d // g
                    out.append(tuple(vec))
            # next combination in lexicographic order
            t = r - 1
            while t >= 0 and basis[t] == n - r + t:
                t -= 1
            if t < 0:
                break
            basis[t] += 1
            for j in range(t + 1, r):
                basis[j] = basis[j - 1] + 1
        return out
    finally:
        free(src)
        free(a)
        free(tmp)
        free(basis)
