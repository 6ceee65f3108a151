import random

import pytest
from hypothesis import given, strategies as st

from oracles import brute_min_cov, brute_min_cover, maximal_spans
from scring.cover import (chart, maximal_occurrences, min_cov, min_cov_bounds_check, min_interval_cover,
                          occurrences, overlap_anomalies)
from scring.words import Word

# the three covering pictures, coordinates doubled so endpoints are integers
FIGURES = {
    1: [(4, 10)],
    3: [(2, 6), (5, 10), (9, 13)],
    2: [(2, 6), (5, 7), (6, 11)],
}


@pytest.mark.parametrize("expected", sorted(FIGURES))
def test_figure_configurations(expected):
    iv = FIGURES[expected]
    count, chosen = min_interval_cover(iv)
    assert count == expected == brute_min_cover(iv)
    covered = set().union(*(range(*iv[i]) for i in chosen))
    assert covered == set().union(*(range(a, b) for a, b in iv))


@pytest.mark.parametrize("host,spans,expected", [
    ("xyx", [(0, 3)], 1),
    ("xyXYx", [(0, 2), (1, 4), (3, 5)], 3),
    ("xyXy", [(0, 2), (1, 3), (2, 4)], 2),
])
def test_figures_on_words(toy, host, spans, expected):
    w = toy.w(host)
    assert [(o.start, o.end) for o in maximal_occurrences(w, toy.rs)] == spans
    assert min_cov(w, toy.rs).min_cov == expected == brute_min_cov(w, toy.rs.mon)


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(1, 8)).map(lambda t: (t[0], t[0] + t[1])),
                max_size=10))
def test_interval_cover_matches_subset_search(iv):
    assert min_interval_cover(iv)[0] == brute_min_cover(iv)


def random_host(fx, rng, n):
    k = fx.alphabet.n_letters
    w = []
    while len(w) < n:
        x = rng.randrange(k)
        if not w or x != w[-1] ^ 1:
            w.append(x)
    return tuple(w)


def planted_host(fx, rng, pieces=4):
    # glue random Mon words so the host has several long occurrences
    mon = sorted(w for w in fx.rs.mon if len(w) >= 2)
    out = Word()
    for _ in range(pieces):
        out = out * Word(rng.choice(mon)) * Word(random_host(fx, rng, rng.randint(0, 2)))
    return tuple(out)


@pytest.mark.parametrize("name", ["toy", "c7", "overlap", "threeterm", "sc_violation"])
def test_min_cov_matches_brute_force(corpus, name):
    fx = corpus[name]
    rng = random.Random(11)
    checked = 0
    for trial in range(300):
        host = planted_host(fx, rng) if trial % 2 else random_host(fx, rng, rng.randint(0, 16))
        spans = maximal_spans(host, fx.rs.mon)
        assert [(o.start, o.end) for o in maximal_occurrences(host, fx.rs)] == spans
        if len(spans) > 12:
            continue
        rep = min_cov(host, fx.rs)
        assert rep.min_cov == brute_min_cov(host, fx.rs.mon)
        assert set().union(*(range(o.start, o.end) for o in rep.witness)) == rep.covered_positions
        checked += 1
    assert checked > 200


def test_occurrences_are_all_mon_subwords(overlap):
    rng = random.Random(3)
    for _ in range(50):
        host = random_host(overlap, rng, 12)
        want = [(i, j - i) for i in range(len(host)) for j in range(i + 1, len(host) + 1)
                if host[i:j] in overlap.rs.mon]
        assert [(o.start, o.length) for o in occurrences(host, overlap.rs)] == want


def test_occurrence_containment():
    from scring.cover import Occurrence
    a, b = Occurrence(2, 5, (0,) * 5), Occurrence(3, 2, (0,) * 2)
    assert a.contains(b) and not b.contains(a) and a.end == 7


def test_chart_threshold(c50):
    pt = c50.pt()
    R = c50.pres.relations[0].words[0]
    ch = chart(R, pt, c50.rs)
    assert len(ch.maximal_occurrences) == 1
    assert ch.measures[0] == len(R)
    assert not ch.empty and ch.nvirt_proxy == 1
    assert chart(R[:10], pt, c50.rs).empty


def test_min_cov_bounds(corpus):
    for name in ("toy", "overlap", "c7"):
        fx = corpus[name]
        rng = random.Random(2)
        for _ in range(100):
            a, b = random_host(fx, rng, rng.randint(0, 12)), random_host(fx, rng, rng.randint(0, 12))
            if a and b and a[-1] == b[0] ^ 1:
                continue
            assert min_cov_bounds_check(a, b, fx.rs, seed=1)["ok"]


def test_min_cov_bounds_rejects_cancellation(toy):
    with pytest.raises(ValueError):
        min_cov_bounds_check(toy.w("xy"), toy.w("Yx"), toy.rs)


def test_overlap_anomalies(overlap):
    rng = random.Random(4)
    pt = overlap.pt()
    seen = 0
    for _ in range(60):
        host = planted_host(overlap, rng)
        sp = maximal_spans(host, overlap.rs.mon)
        want = [(b0, a1, host[b0:a1]) for (a0, a1), (b0, b1) in zip(sp, sp[1:])
                if b0 < a1 and host[b0:a1] not in pt.pieces]
        got = overlap_anomalies(host, overlap.rs, pt)
        assert got == want
        seen += bool(got)
    assert seen
