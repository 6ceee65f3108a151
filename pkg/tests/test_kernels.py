"""The compiled kernels and their Python twins must agree exactly."""
import random

import numpy as np
import pytest

from scring import _pykernels as py
from scring import kernels
from scring.kernels import SubwordAutomaton, WordTrie, as_codes

try:
    from scring import _kernels as cy
except ImportError:  # pragma: no cover
    cy = None

needs_compiled = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def setup(fx, n_hosts=40, seed=0):
    rng = random.Random(seed)
    rs, pt = fx.rs, fx.pt()
    auto = SubwordAutomaton(rs.mon, fx.alphabet.n_letters)
    k = fx.alphabet.n_letters
    mon = sorted(w for w in rs.mon if w)
    hosts = []
    for _ in range(n_hosts):
        w = []
        while len(w) < rng.randint(0, 60):
            piece = rng.choice(mon) if rng.random() < 0.5 else (rng.randrange(k),)
            w.extend(piece)
        hosts.append(as_codes(w))
    return auto, pt, hosts


@needs_compiled
@pytest.mark.parametrize("name", ["overlap", "threeterm", "c50"])
def test_scan_kernels_agree(corpus, name):
    fx = corpus[name]
    auto, pt, hosts = setup(fx)
    child = pt._trie.child
    for variant in ("plain", "prime"):
        flag = pt.flags(variant)
        for h in hosts:
            a = py.suffix_lengths(h, auto.delta, auto.depth)
            b = cy.suffix_lengths(h, auto.delta, auto.depth)
            assert np.array_equal(a, b)
            s1, e1 = py.maximal_spans(a)
            s2, e2 = cy.maximal_spans(b)
            assert np.array_equal(s1, s2) and np.array_equal(e1, e2)
            assert np.array_equal(py.greedy_cover(s1, e1), cy.greedy_cover(s2, e2))
            n = len(h)
            for lo, hi in [(0, n), (0, n // 2), (n // 3, n)]:
                assert py.min_segments(h, lo, hi, child, flag) == cy.min_segments(h, lo, hi, child, flag)
                assert np.array_equal(py.segment_profile(h, lo, hi, child, flag),
                                      cy.segment_profile(h, lo, hi, child, flag))
            for t in (1, 2, 3, 5):
                assert (tuple(py.first_heavy_occurrence(h, s1, e1, child, flag, t))
                        == tuple(cy.first_heavy_occurrence(h, s2, e2, child, flag, t)))


@needs_compiled
def test_triangle_ids_agree(corpus):
    fx = corpus["c7"]
    trie = WordTrie(fx.rs.mon, fx.alphabet.n_letters)
    to_id = np.arange(trie.size, dtype=np.int64) * 3 + 1
    for w in sorted(fx.rs.mon)[:60]:
        codes = as_codes(w)
        assert np.array_equal(py.triangle_ids(codes, trie.child, to_id),
                              cy.triangle_ids(codes, trie.child, to_id))


def test_triangle_ids_order(corpus):
    fx = corpus["overlap"]
    trie = WordTrie(fx.rs.mon, fx.alphabet.n_letters)
    to_id = np.arange(trie.size, dtype=np.int64)
    w = max(fx.rs.mon, key=len)
    got = kernels.triangle_ids(as_codes(w), trie.child, to_id).tolist()
    want = [trie.node_of[tuple(w[s:e])] for s in range(len(w)) for e in range(s + 1, len(w) + 1)]
    assert got == want


def test_greedy_cover_python():
    starts = np.array([0, 2, 3, 7], dtype=np.int32)
    ends = np.array([3, 5, 8, 9], dtype=np.int32)
    assert py.greedy_cover(starts, ends).tolist() == [0, 2, 3]


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "python")


def test_forced_python_backend():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-c", "from scring import kernels; print(kernels.BACKEND)"],
                       env={"SCRING_PURE": "1", "PATH": ""}, capture_output=True, text=True)
    assert r.stdout.strip() == "python"
