# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the bit-pattern inner loops.

Numerically identical to ``permwalk._kernels_py``; that module is the
readable reference implementation.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline Py_ssize_t _lower_bound(const u64* arr, Py_ssize_t n, u64 key) nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


def enumerate_states(int n_sites, int n_particles):
    """All n_sites-bit patterns with n_particles set bits, ascending."""
    cdef Py_ssize_t dim = 1, i
    cdef int j
    for j in range(n_particles):
        dim = dim * (n_sites - j) // (j + 1)
    out = np.empty(dim, dtype=np.uint64)
    cdef u64[::1] view = out
    if n_particles == 0:
        view[0] = 0
        return out
    cdef u64 s = (<u64>1 << n_particles) - 1
    cdef u64 low, ripple
    for i in range(dim):
        view[i] = s
        low = s & (~s + 1)
        ripple = s + low
        s = ripple | (((s ^ ripple) >> 2) / low)
    return out


def realize_perm(cnp.ndarray[cnp.uint64_t, ndim=1] states, int n_particles,
                 cnp.ndarray[cnp.int64_t, ndim=1] images0):
    """Signed permutation action on a fixed-popcount basis."""
    cdef Py_ssize_t dim = states.shape[0]
    rows_arr = np.empty(dim, dtype=np.int64)
    signs_arr = np.empty(dim, dtype=np.int8)
    cdef cnp.int64_t[::1] rows = rows_arr
    cdef signed char[::1] signs = signs_arr
    cdef const u64[::1] st = states
    cdef const cnp.int64_t[::1] img = images0
    cdef int k = n_particles
    cdef long mapped[64]
    cdef Py_ssize_t c
    cdef int a, b, inversions
    cdef u64 s, low, target
    cdef long va
    with nogil:
        for c in range(dim):
            s = st[c]
            for a in range(k):
                low = s & (~s + 1)
                mapped[a] = img[__builtin_ctzll(low)]
                s ^= low
            inversions = 0
            target = 0
            for a in range(k):
                va = mapped[a]
                target |= <u64>1 << va
                for b in range(a + 1, k):
                    if mapped[b] < va:
                        inversions += 1
            rows[c] = _lower_bound(&st[0], dim, target)
            signs[c] = -1 if inversions & 1 else 1
    return rows_arr, signs_arr


def bilinear_accumulate(cnp.ndarray[cnp.uint64_t, ndim=1] states,
                        cnp.ndarray[cnp.float64_t, ndim=2] weights,
                        bint signed=True):
    """COO triplets of sum_ij weights[i, j] a'_i a_j on one sector."""
    cdef Py_ssize_t dim = states.shape[0]
    cdef int n = weights.shape[0]
    cdef const u64[::1] st = states
    cdef const double[:, ::1] w = np.ascontiguousarray(weights)
    cdef int k = 0
    if dim > 0:
        k = __builtin_popcountll(st[0])
    cdef Py_ssize_t cap = dim * (<Py_ssize_t>k * (n - k + 1) + 1)
    rows_arr = np.empty(cap, dtype=np.int64)
    cols_arr = np.empty(cap, dtype=np.int64)
    vals_arr = np.empty(cap, dtype=np.float64)
    cdef cnp.int64_t[::1] rows = rows_arr
    cdef cnp.int64_t[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t c, out = 0
    cdef u64 s, t, low, s1, mask_j, mask_i
    cdef int i, j, sign_j, sign_i
    cdef double wij
    with nogil:
        for c in range(dim):
            s = st[c]
            t = s
            while t:
                low = t & (~t + 1)
                j = __builtin_ctzll(low)
                t ^= low
                s1 = s ^ low
                if signed and (__builtin_popcountll(s & (low - 1)) & 1):
                    sign_j = -1
                else:
                    sign_j = 1
                for i in range(n):
                    wij = w[i, j]
                    if wij == 0.0:
                        continue
                    if i == j:
                        rows[out] = c
                        cols[out] = c
                        vals[out] = wij
                        out += 1
                    elif not (s1 >> i) & 1:
                        mask_i = (<u64>1 << i) - 1
                        if signed and (__builtin_popcountll(s1 & mask_i) & 1):
                            sign_i = -1
                        else:
                            sign_i = 1
                        rows[out] = _lower_bound(&st[0], dim, s1 | (<u64>1 << i))
                        cols[out] = c
                        vals[out] = wij * sign_i * sign_j
                        out += 1
    return rows_arr[:out].copy(), cols_arr[:out].copy(), vals_arr[:out].copy()
