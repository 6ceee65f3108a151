"""Pure-Python implementations of the inner loops.

Same signatures and results as the compiled ``_kernels`` module; selected
by :mod:`scring.kernels` when the extension is unavailable.
"""
from __future__ import annotations

import numpy as np

INF = -1


def _list(a):
    return a.tolist() if hasattr(a, "tolist") else list(a)


def suffix_lengths(codes, delta, depth):
    """Length of the longest dictionary word ending at each host position."""
    codes = _list(codes)
    delta = _list(delta)
    depth = _list(depth)
    out = [0] * len(codes)
    state = 0
    for j, c in enumerate(codes):
        state = delta[state][c]
        out[j] = depth[state]
    return np.asarray(out, dtype=np.int32)


def maximal_spans(lengths):
    lengths = _list(lengths)
    n = len(lengths)
    starts, ends = [], []
    for j in range(n):
        L = lengths[j]
        if not L:
            continue
        s = j + 1 - L
        if j + 1 < n and (j + 2 - lengths[j + 1]) == s:
            continue
        starts.append(s)
        ends.append(j + 1)
    return np.asarray(starts, dtype=np.int32), np.asarray(ends, dtype=np.int32)


def _profile(codes, lo, hi, child, flag):
    size = hi - lo
    dist = [INF] * (size + 1)
    dist[0] = 0
    for i in range(size):
        d = dist[i]
        if d == INF:
            continue
        node = 0
        for k in range(lo + i, hi):
            node = child[node][codes[k]]
            if node < 0:
                break
            if flag[node]:
                j = k - lo + 1
                if dist[j] == INF or dist[j] > d + 1:
                    dist[j] = d + 1
    return dist


def min_segments(codes, lo, hi, child, flag):
    """Fewest flagged dictionary words concatenating to codes[lo:hi]; -1 if none."""
    return _profile(_list(codes), lo, hi, _list(child), _list(flag))[hi - lo]


def segment_profile(codes, lo, hi, child, flag):
    return np.asarray(_profile(_list(codes), lo, hi, _list(child), _list(flag)), dtype=np.int32)


def first_heavy_occurrence(codes, starts, ends, child, flag, threshold):
    """First occurrence (by start, then end) inside a span with measure >= threshold or infinite.

    Returns ``(start, end, measure)`` with measure -1 for infinity, or
    ``(-1, -1, 0)`` when there is none.
    """
    codes = _list(codes)
    starts = _list(starts)
    ends = _list(ends)
    child = _list(child)
    flag = _list(flag)
    p = -1
    m = len(starts)
    for i in range(len(codes)):
        while p + 1 < m and starts[p + 1] <= i:
            p += 1
        if p < 0 or ends[p] <= i:
            continue
        hi = ends[p]
        dist = _profile(codes, i, hi, child, flag)
        for e in range(i + 1, hi + 1):
            v = dist[e - i]
            if v == INF or v >= threshold:
                return i, e, v
    return -1, -1, 0


def triangle_ids(codes, child, to_id):
    """Ids of codes[s:e] for s ascending, then e ascending, via trie walks from each start."""
    codes = _list(codes)
    child = _list(child)
    to_id = _list(to_id)
    n = len(codes)
    out = []
    for s in range(n):
        node = 0
        for e in range(s, n):
            node = child[node][codes[e]]
            out.append(to_id[node])
    return np.asarray(out, dtype=np.int64)


def greedy_cover(starts, ends):
    """Minimum number of spans covering their union (spans sorted, starts and ends increasing)."""
    starts = _list(starts)
    ends = _list(ends)
    m = len(starts)
    chosen = []
    cover_end = -1
    idx = 0
    while idx < m:
        if ends[idx] <= cover_end:
            idx += 1
            continue
        target = cover_end if starts[idx] <= cover_end else starts[idx]
        k = idx
        while k + 1 < m and starts[k + 1] <= target:
            k += 1
        chosen.append(k)
        cover_end = ends[k]
        idx = k + 1
    return np.asarray(chosen, dtype=np.int32)
