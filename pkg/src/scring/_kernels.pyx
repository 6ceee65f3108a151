# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; mirrors scring._pykernels exactly."""
import numpy as np

from libc.stdlib cimport malloc, free

cdef int INF = -1


def suffix_lengths(const int[::1] codes, const int[:, ::1] delta, const int[::1] depth):
    cdef Py_ssize_t n = codes.shape[0], j
    cdef int state = 0
    out = np.zeros(n, dtype=np.int32)
    cdef int[::1] o = out
    for j in range(n):
        state = delta[state, codes[j]]
        o[j] = depth[state]
    return out


def maximal_spans(const int[::1] lengths):
    cdef Py_ssize_t n = lengths.shape[0], j, cnt = 0
    cdef int L, s
    starts = np.empty(n, dtype=np.int32)
    ends = np.empty(n, dtype=np.int32)
    cdef int[::1] st = starts
    cdef int[::1] en = ends
    for j in range(n):
        L = lengths[j]
        if L == 0:
            continue
        s = j + 1 - L
        if j + 1 < n and (j + 2 - lengths[j + 1]) == s:
            continue
        st[cnt] = s
        en[cnt] = j + 1
        cnt += 1
    return starts[:cnt].copy(), ends[:cnt].copy()


cdef void _profile(const int[::1] codes, Py_ssize_t lo, Py_ssize_t hi,
                   const int[:, ::1] child, const unsigned char[::1] flag, int* dist) nogil:
    cdef Py_ssize_t size = hi - lo, i, k, j
    cdef int d, node
    for i in range(size + 1):
        dist[i] = INF
    dist[0] = 0
    for i in range(size):
        d = dist[i]
        if d == INF:
            continue
        node = 0
        for k in range(lo + i, hi):
            node = child[node, codes[k]]
            if node < 0:
                break
            if flag[node]:
                j = k - lo + 1
                if dist[j] == INF or dist[j] > d + 1:
                    dist[j] = d + 1


def min_segments(const int[::1] codes, Py_ssize_t lo, Py_ssize_t hi,
                 const int[:, ::1] child, const unsigned char[::1] flag):
    cdef int* dist = <int*> malloc((hi - lo + 1) * sizeof(int))
    cdef int r
    if dist == NULL:
        raise MemoryError()
    try:
        _profile(codes, lo, hi, child, flag, dist)
        r = dist[hi - lo]
    finally:
        free(dist)
    return r


def segment_profile(const int[::1] codes, Py_ssize_t lo, Py_ssize_t hi,
                    const int[:, ::1] child, const unsigned char[::1] flag):
    out = np.empty(hi - lo + 1, dtype=np.int32)
    cdef int[::1] o = out
    _profile(codes, lo, hi, child, flag, &o[0])
    return out


def first_heavy_occurrence(const int[::1] codes, const int[::1] starts, const int[::1] ends,
                           const int[:, ::1] child, const unsigned char[::1] flag, int threshold):
    cdef Py_ssize_t n = codes.shape[0], m = starts.shape[0], i, e, hi
    cdef Py_ssize_t p = -1, longest = 0
    cdef int v
    cdef int* dist
    for i in range(m):
        if ends[i] - starts[i] > longest:
            longest = ends[i] - starts[i]
    dist = <int*> malloc((longest + 1) * sizeof(int))
    if dist == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            while p + 1 < m and starts[p + 1] <= i:
                p += 1
            if p < 0 or ends[p] <= i:
                continue
            hi = ends[p]
            _profile(codes, i, hi, child, flag, dist)
            for e in range(i + 1, hi + 1):
                v = dist[e - i]
                if v == INF or v >= threshold:
                    return i, e, v
    finally:
        free(dist)
    return -1, -1, 0


def triangle_ids(const int[::1] codes, const int[:, ::1] child, const long long[::1] to_id):
    cdef Py_ssize_t n = codes.shape[0], s, e, k = 0
    cdef int node
    out = np.empty(n * (n + 1) // 2, dtype=np.int64)
    cdef long long[::1] o = out
    for s in range(n):
        node = 0
        for e in range(s, n):
            node = child[node, codes[e]]
            o[k] = to_id[node]
            k += 1
    return out


def greedy_cover(const int[::1] starts, const int[::1] ends):
    cdef Py_ssize_t m = starts.shape[0], idx = 0, k, cnt = 0
    cdef int cover_end = -1, target
    chosen = np.empty(m, dtype=np.int32)
    cdef int[::1] ch = chosen
    while idx < m:
        if ends[idx] <= cover_end:
            idx += 1
            continue
        target = cover_end if starts[idx] <= cover_end else starts[idx]
        k = idx
        while k + 1 < m and starts[k + 1] <= target:
            k += 1
        ch[cnt] = k
        cnt += 1
        cover_end = ends[k]
        idx = k + 1
    return chosen[:cnt].copy()
