# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled flat modular matrix kernels; see _kernels.py for the contract.

Callers guarantee k <= 16 and k*(m-1)^2 <= INT64_MAX, so all intermediate
sums fit in int64.  Entries arrive already reduced into [0, m).
"""


def mat_add(tuple a, tuple b, long long m):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    cdef long long v
    out = [0] * n
    for i in range(n):
        v = (<long long> a[i]) + (<long long> b[i])
        if v >= m:
            v -= m
        out[i] = v
    return tuple(out)


def mat_sub(tuple a, tuple b, long long m):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    cdef long long v
    out = [0] * n
    for i in range(n):
        v = (<long long> a[i]) - (<long long> b[i])
        if v < 0:
            v += m
        out[i] = v
    return tuple(out)


def mat_neg(tuple a, long long m):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    cdef long long v
    out = [0] * n
    for i in range(n):
        v = <long long> a[i]
        if v != 0:
            v = m - v
        out[i] = v
    return tuple(out)


def mat_mul(tuple a, tuple b, int k, long long m):
    cdef long long abuf[256]
    cdef long long bbuf[256]
    cdef Py_ssize_t n = k * k
    cdef Py_ssize_t i, j, t
    cdef long long s
    for i in range(n):
        abuf[i] = <long long> a[i]
        bbuf[i] = <long long> b[i]
    out = [0] * n
    for i in range(k):
        for j in range(k):
            s = 0
            for t in range(k):
                s += abuf[i * k + t] * bbuf[t * k + j]
            out[i * k + j] = s % m
    return tuple(out)
