# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for vectors of width <= 64 packed into ``uint64``.

Same contract as :mod:`charrank._pykernel`; the selector in
:mod:`charrank.kernel` only routes here when every Betti number is <= 64.
"""

from cpython.array cimport array, clone
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil


cdef inline int _insert(uint64_t* piv, uint64_t v) noexcept nogil:
    # piv[col] holds the row whose lowest set bit is col, or 0
    cdef int col
    while v:
        col = __builtin_ctzll(v)
        if piv[col] == 0:
            piv[col] = v
            return 1
        v ^= piv[col]
    return 0


def rank_u64(rows):
    cdef uint64_t piv[64]
    cdef int rank = 0
    cdef uint64_t v
    memset(piv, 0, sizeof(piv))
    for r in rows:
        v = r
        rank += _insert(piv, v)
    return rank


cdef int _charrank_one(int dim, const int64_t* betti, const uint64_t* table,
                       const int64_t* offsets, const uint64_t* w,
                       uint64_t* piv, uint64_t* rows, int* nrows) noexcept nogil:
    cdef int stride = dim + 1
    cdef int i, j, k, b, bk, r, rank, p, q
    cdef int64_t base
    cdef uint64_t wi, u, v, x, y
    nrows[0] = 1
    rows[0] = 1
    for j in range(1, stride):
        b = <int>betti[j]
        nrows[j] = 0
        if b == 0:
            continue
        memset(piv, 0, 64 * sizeof(uint64_t))
        rank = 0
        for i in range(1, j + 1):
            wi = w[i]
            if wi == 0:
                continue
            k = j - i
            if k == 0:
                rank += _insert(piv, wi)
            else:
                if nrows[k] == 0:
                    continue
                base = offsets[i * stride + k]
                bk = <int>betti[k]
                for r in range(nrows[k]):
                    u = rows[k * 64 + r]
                    v = 0
                    x = wi
                    while x:
                        p = __builtin_ctzll(x)
                        x &= x - 1
                        y = u
                        while y:
                            q = __builtin_ctzll(y)
                            y &= y - 1
                            v ^= table[base + p * bk + q]
                    rank += _insert(piv, v)
            if rank == b:
                break
        if rank < b:
            return j - 1
        r = 0
        for p in range(64):
            if piv[p]:
                rows[j * 64 + r] = piv[p]
                r += 1
        nrows[j] = r
    return dim


def charrank_batch(int dim, betti, table, offsets, profiles):
    cdef int stride = dim + 1
    cdef Py_ssize_t n = len(profiles)
    cdef array betti_a = array("q", betti)
    cdef array table_a = array("Q", table) if len(table) else array("Q", [0])
    cdef array off_a = array("q", offsets)
    cdef array flat = array("Q")
    cdef array out = clone(array("q"), n, False)
    cdef Py_ssize_t t
    for w in profiles:
        flat.extend(w)
    cdef uint64_t* piv = <uint64_t*>malloc(64 * sizeof(uint64_t))
    cdef uint64_t* rows = <uint64_t*>malloc(stride * 64 * sizeof(uint64_t))
    cdef int* nrows = <int*>malloc(stride * sizeof(int))
    if piv == NULL or rows == NULL or nrows == NULL:
        free(piv); free(rows); free(nrows)
        raise MemoryError()
    cdef const int64_t* bp = <const int64_t*>betti_a.data.as_longlongs
    cdef const uint64_t* tp = <const uint64_t*>table_a.data.as_ulonglongs
    cdef const int64_t* op = <const int64_t*>off_a.data.as_longlongs
    cdef const uint64_t* fp = <const uint64_t*>flat.data.as_ulonglongs
    cdef int64_t* res = <int64_t*>out.data.as_longlongs
    try:
        with nogil:
            for t in range(n):
                res[t] = _charrank_one(dim, bp, tp, op, fp + t * stride, piv, rows, nrows)
    finally:
        free(piv)
        free(rows)
        free(nrows)
    return out.tolist()
