# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled integer l1 kernels.

All inputs are C-contiguous int64 arrays holding coordinates already scaled
to a common denominator. The Python wrapper in ``kernels.py`` guards against
int64 overflow before calling in here.
"""

import numpy as np

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _iabs(i64 x) nogil:
    return -x if x < 0 else x


def enumerate_box(const i64[:, ::1] basis, const i64[::1] target,
                  const i64[::1] lo, const i64[::1] hi, i64 bound,
                  i64[:, ::1] out_coeffs, i64[::1] out_norms):
    """Scan integer u with lo <= u <= hi; keep those with |u B - t|_1 <= bound.

    Matches are written to the output buffers until they are full; the total
    number of matches is returned either way so the caller can retry.
    """
    cdef Py_ssize_t n = basis.shape[0]
    cdef Py_ssize_t cap = out_coeffs.shape[0]
    cdef Py_ssize_t i, k
    cdef i64 found = 0
    cdef i64 norm
    cdef i64 *u
    cdef i64 *v
    for k in range(n):
        if lo[k] > hi[k]:
            return 0
    u = <i64 *> malloc(n * sizeof(i64))
    v = <i64 *> malloc(n * sizeof(i64))
    if u == NULL or v == NULL:
        free(u)
        free(v)
        raise MemoryError()
    with nogil:
        for i in range(n):
            v[i] = -target[i]
        for k in range(n):
            u[k] = lo[k]
            for i in range(n):
                v[i] += lo[k] * basis[k, i]
        while True:
            norm = 0
            for i in range(n):
                norm += _iabs(v[i])
            if norm <= bound:
                if found < cap:
                    for i in range(n):
                        out_coeffs[found, i] = u[i]
                    out_norms[found] = norm
                found += 1
            # odometer step, last coordinate fastest
            k = n - 1
            while k >= 0:
                if u[k] < hi[k]:
                    u[k] += 1
                    for i in range(n):
                        v[i] += basis[k, i]
                    break
                for i in range(n):
                    v[i] -= (hi[k] - lo[k]) * basis[k, i]
                u[k] = lo[k]
                k -= 1
            if k < 0:
                break
    free(u)
    free(v)
    return found


def count_within(const i64[:, ::1] points, const i64[::1] center, i64 radius,
                 Py_ssize_t start=0, Py_ssize_t stop=-1):
    """Number of rows in [start, stop) at l1 distance strictly below radius."""
    cdef Py_ssize_t n = points.shape[1]
    cdef Py_ssize_t i, j
    cdef i64 d
    cdef i64 count = 0
    if stop < 0:
        stop = points.shape[0]
    with nogil:
        for j in range(start, stop):
            d = 0
            for i in range(n):
                d += _iabs(points[j, i] - center[i])
                if d >= radius:
                    break
            if d < radius:
                count += 1
    return count


def greedy_select(const i64[:, ::1] points, i64 radius):
    """Scan rows in order, keep a row if no kept row is closer than radius.

    Each kept row knocks out every later row inside its open l1 ball.
    """
    cdef Py_ssize_t npts = points.shape[0]
    cdef Py_ssize_t n = points.shape[1]
    cdef Py_ssize_t a, b, i
    cdef i64 d
    cdef Py_ssize_t nkept = 0
    alive_arr = np.ones(npts, dtype=np.uint8)
    kept_arr = np.empty(npts, dtype=np.int64)
    cdef unsigned char[::1] alive = alive_arr
    cdef i64[::1] kept = kept_arr
    with nogil:
        for a in range(npts):
            if not alive[a]:
                continue
            kept[nkept] = a
            nkept += 1
            for b in range(a + 1, npts):
                if not alive[b]:
                    continue
                d = 0
                for i in range(n):
                    d += _iabs(points[b, i] - points[a, i])
                    if d >= radius:
                        break
                if d < radius:
                    alive[b] = 0
    return kept_arr[:nkept].copy()


def first_violation(const i64[:, ::1] points, i64 radius,
                    Py_ssize_t start=0, Py_ssize_t stop=-1):
    """First pair (a, b), a < b, a in [start, stop), with distance < radius.

    Returns (-1, -1, -1) when no such pair exists.
    """
    cdef Py_ssize_t npts = points.shape[0]
    cdef Py_ssize_t n = points.shape[1]
    cdef Py_ssize_t a, b, i
    cdef i64 d
    cdef Py_ssize_t ra = -1, rb = -1
    cdef i64 rd = -1
    if stop < 0:
        stop = npts
    with nogil:
        for a in range(start, stop):
            for b in range(a + 1, npts):
                d = 0
                for i in range(n):
                    d += _iabs(points[b, i] - points[a, i])
                if d < radius:
                    ra = a
                    rb = b
                    rd = d
                    break
            if ra >= 0:
                break
    return (ra, rb, rd)
