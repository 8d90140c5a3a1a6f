# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef enum:
    MAXR = 256

ctypedef long long i64


cdef inline void _decode(int q, int r, bint quotient, i64 c, int* v, int* s) noexcept nogil:
    cdef i64 width = 1
    cdef int i
    cdef int lo = 1 if quotient else 0
    for i in range(lo, r):
        width *= q
    s[0] = <int>(c / width)
    c = c % width
    v[0] = 0
    for i in range(lo, r):
        v[i] = <int>(c % q)
        c = c / q


cdef inline i64 _encode(int q, int r, bint quotient, int* v, int s) noexcept nogil:
    cdef i64 c = 0
    cdef i64 width = 1
    cdef int i, d
    cdef int z = 0
    cdef int lo = 1 if quotient else 0
    if quotient:
        z = v[0]
    for i in range(r - 1, lo - 1, -1):
        d = (v[i] - z) % q
        if d < 0:
            d += q
        c = c * q + d
        width *= q
    return s * width + c


cdef inline i64 _mul(int q, int r, bint quotient, i64 a, i64 b) noexcept nogil:
    cdef int v[MAXR]
    cdef int w[MAXR]
    cdef int u[MAXR]
    cdef int s, t, i, j
    _decode(q, r, quotient, a, v, &s)
    _decode(q, r, quotient, b, w, &t)
    for i in range(r):
        j = i + s
        if j >= r:
            j -= r
        u[i] = (v[i] + w[j]) % q
    return _encode(q, r, quotient, u, (s + t) % r)


cdef inline i64 _inv(int q, int r, bint quotient, i64 a) noexcept nogil:
    cdef int v[MAXR]
    cdef int u[MAXR]
    cdef int s, i, j
    _decode(q, r, quotient, a, v, &s)
    for i in range(r):
        j = i - s
        if j < 0:
            j += r
        u[i] = (q - v[j]) % q
    return _encode(q, r, quotient, u, (r - s) % r)


cdef i64 _space(int q, int r, bint quotient):
    cdef i64 n = r
    cdef int i
    for i in range(r - 1 if quotient else r):
        n *= q
    return n


def _check_r(int r):
    if r > MAXR or r < 1:
        raise ValueError("r=%d outside the compiled kernel range" % r)


def code_space(int q, int r, bint quotient):
    return _space(q, r, quotient)


def mul(int q, int r, bint quotient, i64 a, i64 b):
    _check_r(r)
    return _mul(q, r, quotient, a, b)


def inv(int q, int r, bint quotient, i64 a):
    _check_r(r)
    return _inv(q, r, quotient, a)


def closure_size(int q, int r, bint quotient, gens, i64 limit):
    _check_r(r)
    cdef i64 n = _space(q, r, quotient)
    cdef int ng = len(gens)
    cdef i64* g = <i64*>malloc(max(ng, 1) * sizeof(i64))
    cdef unsigned char* seen = <unsigned char*>malloc(n)
    cdef i64* queue = <i64*>malloc(n * sizeof(i64))
    cdef i64 head = 0, tail = 1, count = 1, a, b
    cdef int k
    if g == NULL or seen == NULL or queue == NULL:
        free(g); free(seen); free(queue)
        raise MemoryError()
    for k in range(ng):
        g[k] = gens[k]
    memset(seen, 0, n)
    seen[0] = 1
    queue[0] = 0
    with nogil:
        while head < tail:
            a = queue[head]
            head += 1
            for k in range(ng):
                b = _mul(q, r, quotient, a, g[k])
                if not seen[b]:
                    seen[b] = 1
                    count += 1
                    if count > limit:
                        head = tail
                        break
                    queue[tail] = b
                    tail += 1
    free(g); free(seen); free(queue)
    return count


def class_labels(int q, int r, bint quotient):
    _check_r(r)
    cdef i64 n = _space(q, r, quotient)
    cdef int v[MAXR]
    cdef int m = (r - 1) // 2
    cdef int i
    for i in range(r):
        v[i] = 0
    v[m] = 1
    cdef i64 x = _encode(q, r, quotient, v, 0)
    v[m] = 0
    cdef i64 y = _encode(q, r, quotient, v, 1 % r)
    cdef i64 xi = _inv(q, r, quotient, x)
    cdef i64 yi = _inv(q, r, quotient, y)
    cdef i64* labels = <i64*>malloc(n * sizeof(i64))
    cdef i64* stack = <i64*>malloc(n * sizeof(i64))
    cdef i64 start, a, b, top
    if labels == NULL or stack == NULL:
        free(labels); free(stack)
        raise MemoryError()
    with nogil:
        for start in range(n):
            labels[start] = -1
        for start in range(n):
            if labels[start] >= 0:
                continue
            labels[start] = start
            stack[0] = start
            top = 1
            while top > 0:
                top -= 1
                a = stack[top]
                b = _mul(q, r, quotient, _mul(q, r, quotient, xi, a), x)
                if labels[b] < 0:
                    labels[b] = start
                    stack[top] = b
                    top += 1
                b = _mul(q, r, quotient, _mul(q, r, quotient, yi, a), y)
                if labels[b] < 0:
                    labels[b] = start
                    stack[top] = b
                    top += 1
    out = [labels[start] for start in range(n)]
    free(labels); free(stack)
    return out
