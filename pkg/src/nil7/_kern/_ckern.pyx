# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row reduction kernels.

Mirrors _pykern exactly: gf_rref works on C int64 buffers (valid for
p < 2^31 so products fit in int64), int_rref keeps Python big integers
but runs the loop structure in Cython for lower interpreter overhead.
"""

from libc.stdlib cimport malloc, free

BACKEND = "c"


def gf_rref(list rows, long long p):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef Py_ssize_t rank = 0, col, r, j, piv
    cdef long long inv, f, a
    cdef long long *buf
    if m == 0 or n == 0:
        return 0, []
    buf = <long long *> malloc(m * n * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        for r in range(m):
            row = rows[r]
            for j in range(n):
                buf[r * n + j] = (<long long> row[j]) % p
        pivots = []
        for col in range(n):
            piv = -1
            for r in range(rank, m):
                if buf[r * n + col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(n):
                    a = buf[rank * n + j]
                    buf[rank * n + j] = buf[piv * n + j]
                    buf[piv * n + j] = a
            inv = _inv_mod(buf[rank * n + col], p)
            for j in range(col, n):
                buf[rank * n + j] = buf[rank * n + j] * inv % p
            for r in range(m):
                if r == rank:
                    continue
                f = buf[r * n + col]
                if f != 0:
                    for j in range(col, n):
                        buf[r * n + j] = (buf[r * n + j] - f * buf[rank * n + j]) % p
                        if buf[r * n + j] < 0:
                            buf[r * n + j] += p
            pivots.append(col)
            rank += 1
            if rank == m:
                break
        for r in range(m):
            row = rows[r]
            for j in range(n):
                row[j] = buf[r * n + j]
        return rank, pivots
    finally:
        free(buf)


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def int_rref(list rows):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef Py_ssize_t rank = 0, col, r, j, piv
    pivots = []
    for col in range(n):
        piv = -1
        for r in range(rank, m):
            if rows[r][col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        _make_primitive(prow, col)
        a = prow[col]
        for r in range(m):
            if r == rank:
                continue
            row = rows[r]
            b = row[col]
            if b != 0:
                for j in range(n):
                    row[j] = a * row[j] - b * prow[j]
                _reduce_content(row)
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    return rank, pivots


cdef _make_primitive(list row, Py_ssize_t lead):
    cdef Py_ssize_t j, n = len(row)
    g = 0
    for j in range(n):
        x = row[j]
        if x != 0:
            g = _gcd(g, x if x > 0 else -x)
            if g == 1:
                break
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g
    if row[lead] < 0:
        for j in range(n):
            row[j] = -row[j]


cdef _reduce_content(list row):
    cdef Py_ssize_t j, n = len(row)
    g = 0
    for j in range(n):
        x = row[j]
        if x != 0:
            g = _gcd(g, x if x > 0 else -x)
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g


cdef _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
