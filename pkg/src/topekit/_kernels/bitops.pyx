# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of bitops_py.

Same functions, same semantics, restricted to ground sets that fit one
64-bit word (2n <= 64). The selector in topekit._kernels only routes
calls here under that bound, so the uint64 narrowing is safe.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long)


cdef inline unsigned long long _involute(unsigned long long mask, int n, unsigned long long full) nogil:
    return ((mask << n) | (mask >> n)) & full


def involute_mask(mask, int n):
    cdef unsigned long long full = ~(<unsigned long long>0) if 2 * n == 64 else ((<unsigned long long>1 << (2 * n)) - 1)
    return _involute(<unsigned long long>mask, n, full)


def popcount(mask):
    return __builtin_popcountll(<unsigned long long>mask)


def is_half_set_mask(mask, int n):
    cdef unsigned long long m = <unsigned long long>mask
    cdef unsigned long long full = ~(<unsigned long long>0) if 2 * n == 64 else ((<unsigned long long>1 << (2 * n)) - 1)
    if __builtin_popcountll(m) != n:
        return False
    return (m & _involute(m, n, full)) == 0


def apply_perm_mask(mask, perm):
    cdef unsigned long long m = <unsigned long long>mask
    cdef unsigned long long out = 0
    cdef unsigned long long low
    cdef int i
    while m:
        low = m & (~m + 1)
        i = 0
        while not (low >> i) & 1:
            i += 1
        out |= (<unsigned long long>1) << (<int>perm[i])
        m ^= low
    return out


def closure_mask(x, hemis, full, memo=None):
    cdef unsigned long long xx = <unsigned long long>x
    cdef unsigned long long ful = <unsigned long long>full
    cdef unsigned long long out = 0
    cdef unsigned long long y, inter
    cdef Py_ssize_t nh = len(hemis)
    cdef Py_ssize_t i, j
    cdef unsigned long long* hs = <unsigned long long*>malloc(nh * sizeof(unsigned long long))
    if hs == NULL:
        raise MemoryError()
    try:
        for i in range(nh):
            hs[i] = <unsigned long long>hemis[i]
        for i in range(nh):
            y = xx & hs[i]
            if memo is not None:
                cached = memo.get(y)
                if cached is not None:
                    out |= <unsigned long long>cached
                    continue
            inter = ful
            for j in range(nh):
                if (y & ~hs[j]) == 0:
                    inter &= hs[j]
            if memo is not None:
                memo[y] = inter
            out |= inter
    finally:
        free(hs)
    return out


def closure_table(hemis, int n):
    cdef unsigned long long full = ~(<unsigned long long>0) if 2 * n == 64 else ((<unsigned long long>1 << (2 * n)) - 1)
    memo = {}
    cdef unsigned long long x
    out = []
    for x in range(full + 1):
        out.append(closure_mask(x, hemis, full, memo))
    return out


def a4_witness(topes, class_masks, class_of, int n):
    cdef unsigned long long full = ~(<unsigned long long>0) if 2 * n == 64 else ((<unsigned long long>1 << (2 * n)) - 1)
    cdef Py_ssize_t m = len(topes)
    cdef Py_ssize_t i, j
    cdef unsigned long long h1, diff, rest, low, cls, cand
    cdef int e
    cdef bint ok
    tope_set = set(topes)
    for i in range(m):
        h1 = <unsigned long long>topes[i]
        for j in range(m):
            if i == j:
                continue
            diff = h1 & ~(<unsigned long long>topes[j])
            rest = diff
            ok = False
            while rest:
                low = rest & (~rest + 1)
                rest ^= low
                e = 0
                while not (low >> e) & 1:
                    e += 1
                cls = <unsigned long long>class_masks[<int>class_of[e]]
                cand = (h1 & ~cls) | _involute(cls, n, full)
                if cand in tope_set:
                    ok = True
                    break
            if not ok:
                return (i, j)
    return None
