"""Acceptance criteria, one test per criterion.

Each test prints a one-line result; the conftest hook collects a pass/fail
summary at the end of the run.
"""
import itertools
import os
import random
import subprocess
import sys
import time

import pytest

from oracles import brute_lambda, brute_min_cov, brute_min_cover, brute_piece, maximal_spans
from scring.checker import VERIFIED, VIOLATED, check_empty_chart_family, check_sc_axiom, replay_sc_witness
from scring.construct import (MIN_EXPONENTS, build_amenability_witness, build_free_pair, verify_free_pair,
                              verify_product_measure_bound)
from scring.cover import min_cov, min_cov_bounds_check, min_interval_cover
from scring.measure import lambda_measure, small_pieces
from scring.presentation import BUNDLED, load_presentation
from scring.words import Word

SMALL_MON = ("toy", "c7", "overlap", "commutator", "monfree", "threeterm")


def reduced_words(k, max_len):
    layer = [()]
    yield ()
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in range(k) if not w or x != w[-1] ^ 1]
        yield from layer


def sample_words(fx, rng, n, max_len):
    """Half uniform reduced words, half glued Mon fragments (so pieces matter)."""
    k = fx.alphabet.n_letters
    mon = sorted(w for w in fx.rs.mon if w)
    out = []
    for i in range(n):
        w = Word()
        target = rng.randint(1, max_len)
        while len(w) < target:
            if i % 2:
                part = rng.choice(mon)
                part = part[:rng.randint(1, len(part))]
            else:
                part = (rng.randrange(k),)
            w = w * Word(part)
        out.append(tuple(w)[:target])
    return out


def test_criterion_1_lambda_oracle(corpus):
    t0 = time.perf_counter()
    checked = 0
    for name in BUNDLED:
        fx = corpus[name]
        pt = fx.pt()
        words = set(w for w in fx.rs.mon if len(w) <= 10)
        if fx.alphabet.rank == 2:
            words |= set(reduced_words(fx.alphabet.n_letters, 6))
        words |= set(sample_words(fx, random.Random(name), 300, 10))
        for u in sorted(words):
            for variant, pieces in (("plain", pt.pieces), ("prime", pt.prime_pieces)):
                assert lambda_measure(u, pt, variant) == brute_lambda(u, pieces), (name, u, variant)
                checked += 1
    elapsed = time.perf_counter() - t0
    print(f"criterion 1: {checked} words agree with exhaustive segmentation in {elapsed:.1f}s")
    assert elapsed < 60


def test_criterion_2_mincov_oracle(corpus):
    for expected, iv in {1: [(4, 10)], 3: [(2, 6), (5, 10), (9, 13)], 2: [(2, 6), (5, 7), (6, 11)]}.items():
        assert min_interval_cover(iv)[0] == expected == brute_min_cover(iv)
    toy = corpus["toy"]
    for host, expected in (("xyx", 1), ("xyXYx", 3), ("xyXy", 2)):
        w = toy.w(host)
        assert min_cov(w, toy.rs).min_cov == expected == brute_min_cov(w, toy.rs.mon)
    checked = 0
    for name in BUNDLED:
        fx = corpus[name]
        rng = random.Random(f"mincov-{name}")
        for host in sample_words(fx, rng, 400, 30):
            if len(maximal_spans(host, fx.rs.mon)) > 12:
                continue
            assert min_cov(host, fx.rs).min_cov == brute_min_cov(host, fx.rs.mon), (name, host)
            checked += 1
    print(f"criterion 2: figures give 1/3/2; {checked} hosts agree with subset minimisation")
    assert checked >= 1000


def test_criterion_3_small_piece_oracle(corpus):
    checked = 0
    for name in SMALL_MON:
        fx = corpus[name]
        rs = fx.rs
        assert len(rs.mon) <= 200
        for strict, window in ((False, rs.max_monomial_length), (True, float("inf"))):
            pt = fx.pt(strict)
            for c in rs.mon:
                if c:
                    assert pt.verdict(c).value == brute_piece(c, rs, window), (name, c, strict)
                    checked += 1
            if rs.saturated:
                assert not pt.unknown, name
    print(f"criterion 3: {checked} verdicts agree; unknown only on truncated closures")


def test_criterion_4_mincov_inequalities(corpus):
    total = 0
    for name in BUNDLED:
        fx = corpus[name]
        rng = random.Random(f"pairs-{name}")
        pairs = 0
        while pairs < 1000:
            a, b = sample_words(fx, rng, 2, 25)
            if a[-1] == b[0] ^ 1:
                continue
            rep = min_cov_bounds_check(a, b, fx.rs, seed=pairs, n_subwords=2)
            assert rep["lower_bound_holds"] and rep["upper_bound_holds"], (name, a, b, rep)
            assert not rep["subword_violations"]
            pairs += 1
        total += pairs
    print(f"criterion 4: {total} pairs, zero violations")


def test_criterion_5_free_pair(c50):
    fp = build_free_pair(c50.rs, c50.pt())
    inv = verify_free_pair(fp, c50.rs, c50.pt())
    assert all(inv.values()), inv
    rep = verify_product_measure_bound(fp, c50.rs, c50.pt(), max_len=40)
    assert rep["ok"] and not rep["truncated"] and rep["max_measure"] <= 8
    fmt = c50.alphabet.format
    print(f"criterion 5: w1={fmt(fp.w1)} w2={fmt(fp.w2)}; {rep['products']} products, "
          f"max Lambda' {rep['max_measure']}")


def test_criterion_6_amenability_witness(c50):
    fp = build_free_pair(c50.rs, c50.pt())
    aw = build_amenability_witness(fp, c50.rs, c50.pt(), exponents=MIN_EXPONENTS, tau=15)
    assert aw.gammas[0] == 90 and all(b - a == 90 for a, b in zip(MIN_EXPONENTS, MIN_EXPONENTS[1:]))
    prefix = aw.report["prefix_checks"]
    assert len(prefix) == 30 and all(p["ok"] for p in prefix)
    vs = aw.S_basis
    used = list(vs) + [tuple(vs[i]) + tuple(vs[j]) for i, j in itertools.permutations(range(3), 2)]
    chart = check_empty_chart_family(used, c50.pt(), c50.rs, tau=15, variant="prime")
    assert chart.verdict == VERIFIED
    assert all(v is True or v == VERIFIED for v in aw.report["verified"].values())
    print(f"criterion 6: |v| = {aw.report['lengths']}; 30 prefix checks; {len(used)} products with empty charts")


def test_criterion_7_sc_checker(corpus):
    fx = corpus["sc_violation"]
    rep = check_sc_axiom(fx.rs, fx.pt())
    assert rep.verdict == VIOLATED
    assert replay_sc_witness(fx.rs, fx.pt(), rep.witness, fx.pres.tau + 1)
    t0 = time.perf_counter()
    pres = load_presentation("bundled:c50")
    rs = pres.close()
    pt = small_pieces(rs, pres.tau)
    rep50 = check_sc_axiom(rs, pt, n_max=2)
    elapsed = time.perf_counter() - t0
    assert rep50.verdict == VERIFIED and rs.field.p == 2 and rs.bound == pres.bound
    print(f"criterion 7: violation witness {rep.witness['combination']} replays; "
          f"C(50) verified in {elapsed:.1f}s (closure, pieces and search)")
    assert elapsed < 300


CLI_RUNS = [
    ["close", "bundled:threeterm"],
    ["pieces", "bundled:overlap"],
    ["lambda", "bundled:c7", "--word", "yxyZZ", "--prime"],
    ["chart", "bundled:overlap", "--word", "xyxYxyyxyxY"],
    ["mincov", "bundled:c7", "--word", "yxyZZyzxzyxy"],
    ["check", "bundled:sc_violation"],
    ["check", "bundled:threeterm", "--tau", "10", "--coeff-bound", "1"],
    ["check", "bundled:toy", "--axiom", "monrel"],
    ["check", "bundled:c50", "--axiom", "emptychart", "--prime"],
    ["freepair", "bundled:monfree", "--emit", "trace"],
    ["witness", "bundled:c50", "--seed", "3"],
]


def _sck(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    r = subprocess.run([sys.executable, "-m", "scring.cli", *argv, "--format", "json"],
                       capture_output=True, env=env)
    return r.returncode, r.stdout


def test_criterion_8_determinism():
    for argv in CLI_RUNS:
        code1, out1 = _sck(argv, 1)
        code2, out2 = _sck(argv, 2)
        assert out1, argv
        assert (code1, out1) == (code2, out2), argv
    ex1 = subprocess.run([sys.executable, "-m", "scring.cli", "examples"], capture_output=True).stdout
    ex2 = subprocess.run([sys.executable, "-m", "scring.cli", "examples"], capture_output=True).stdout
    assert ex1 == ex2
    print(f"criterion 8: {len(CLI_RUNS) + 1} commands byte-identical across two runs")
