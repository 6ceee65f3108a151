"""Kernel selection and the dictionary automata the kernels run on.

The compiled extension ``scring._kernels`` is used when importable; set
``SCRING_PURE=1`` to force the pure-Python twin. ``BACKEND`` names the one
in use.
"""
from __future__ import annotations

import os
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from . import _pykernels

if os.environ.get("SCRING_PURE"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

suffix_lengths = _impl.suffix_lengths
maximal_spans = _impl.maximal_spans
min_segments = _impl.min_segments
segment_profile = _impl.segment_profile
first_heavy_occurrence = _impl.first_heavy_occurrence
greedy_cover = _impl.greedy_cover
triangle_ids = _impl.triangle_ids


def as_codes(w: Sequence[int]) -> np.ndarray:
    return np.fromiter(w, dtype=np.int32, count=len(w))


class WordTrie:
    """Trie over words of letter codes; node 0 is the empty word."""

    def __init__(self, words: Iterable[Sequence[int]], n_letters: int):
        self.n_letters = n_letters
        rows: list[list[int]] = [[-1] * n_letters]
        self.node_of: dict = {(): 0}
        for w in sorted(set(map(tuple, words)), key=lambda t: (len(t), t)):
            node = 0
            for k, c in enumerate(w):
                nxt = rows[node][c]
                if nxt < 0:
                    nxt = len(rows)
                    rows.append([-1] * n_letters)
                    rows[node][c] = nxt
                    self.node_of[w[: k + 1]] = nxt
                node = nxt
        self.child = np.asarray(rows, dtype=np.int32).reshape(len(rows), n_letters)
        self.size = len(rows)

    def flags(self, members: Iterable[Sequence[int]]) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.uint8)
        for w in members:
            node = self.node_of.get(tuple(w))
            if node is not None and len(w):
                out[node] = 1
        return out


class SubwordAutomaton:
    """Aho-Corasick automaton over a subword-closed dictionary.

    Every trie node is itself a dictionary word, and the failure link of a
    node is the node of the word with its first letter removed, so the state
    after reading a host prefix is its longest suffix in the dictionary.
    """

    def __init__(self, mon: Iterable[Sequence[int]], n_letters: int):
        trie = WordTrie(mon, n_letters)
        self.trie = trie
        child = trie.child
        size = trie.size
        depth = np.zeros(size, dtype=np.int32)
        delta = np.zeros((size, n_letters), dtype=np.int32)
        word_at = [()] * size
        for w, node in trie.node_of.items():
            word_at[node] = w
            depth[node] = len(w)
        order = deque([0])
        seen = np.zeros(size, dtype=bool)
        seen[0] = True
        node_of = trie.node_of
        while order:
            s = order.popleft()
            w = word_at[s]
            fail = node_of.get(w[1:], 0) if s else 0
            for a in range(n_letters):
                nxt = child[s, a]
                if nxt >= 0:
                    delta[s, a] = nxt
                    if not seen[nxt]:
                        seen[nxt] = True
                        order.append(nxt)
                else:
                    delta[s, a] = delta[fail, a] if s else 0
        self.delta = delta
        self.depth = depth

    def suffix_lengths(self, codes: np.ndarray) -> np.ndarray:
        return suffix_lengths(codes, self.delta, self.depth)
