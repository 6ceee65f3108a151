import itertools
import random

import pytest

from oracles import brute_lambda, maximal_spans
from scring.construct import (MIN_EXPONENTS, ConstructionError, FreePairWitness, build_amenability_witness,
                              build_free_pair, extract_low_measure_subword, find_non_mon_word,
                              prefix_checks, unique_factorization_check, v_word, verify_amenability_witness,
                              verify_free_pair, verify_product_measure_bound)
from scring.poly import Field, parse_poly
from scring.relset import close
from scring.words import Alphabet, Word, is_cyclically_reduced

PAIR_FIXTURES = ("toy", "c7", "overlap", "commutator", "monfree", "threeterm", "sc_violation", "c50")


def reduced_words(k, n):
    for t in itertools.product(range(k), repeat=n):
        if all(t[i + 1] != t[i] ^ 1 for i in range(n - 1)):
            yield t


@pytest.mark.parametrize("name", ["toy", "c7", "overlap", "monfree", "threeterm"])
def test_non_mon_word_is_first_outside_mon(corpus, name):
    fx = corpus[name]
    k = fx.alphabet.n_letters
    want = next(w for n in itertools.count(1) for w in reduced_words(k, n) if w not in fx.rs.mon)
    assert tuple(find_non_mon_word(fx.rs)) == want


def test_non_mon_word_search_limit(toy):
    with pytest.raises(ConstructionError):
        find_non_mon_word(toy.rs, search_len=1)


def max_measure(w, mon, prime):
    return max((brute_lambda(w[a:b], prime) for a, b in maximal_spans(w, mon)), default=0)


def low_measure(w, fx, mu):
    mon, prime = fx.rs.mon, fx.pt().prime_pieces
    return bool(w) and w not in mon and any((c,) in mon for c in w) and max_measure(w, mon, prime) <= mu


@pytest.mark.parametrize("name", ["overlap", "c7", "toy"])
def test_extract_matches_exhaustive(corpus, name):
    fx = corpus[name]
    rng = random.Random(8)
    mon = sorted(w for w in fx.rs.mon if len(w) >= 3)
    done = 0
    while done < 25:
        w = Word(rng.choice(mon)) * Word(rng.choice(mon))
        w = tuple(w)
        if w in fx.rs.mon or not w:
            continue
        subs = {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}
        exists = any(low_measure(s, fx, 2) for s in subs)
        try:
            got = tuple(extract_low_measure_subword(w, fx.rs, fx.pt()))
        except ConstructionError:
            assert not exists
        else:
            assert got in subs and low_measure(got, fx, 2)
        done += 1


def test_extract_rejects_bad_input(overlap):
    R = overlap.pres.relations[0].words[0]
    with pytest.raises(ValueError):
        extract_low_measure_subword(R[:3], overlap.rs, overlap.pt())


@pytest.mark.parametrize("name", PAIR_FIXTURES)
def test_free_pair_invariants(corpus, name):
    fx = corpus[name]
    fp = build_free_pair(fx.rs, fx.pt())
    checks = verify_free_pair(fp, fx.rs, fx.pt())
    assert all(checks.values()), checks
    assert is_cyclically_reduced(fp.w1) and fp.mu <= 4
    assert unique_factorization_check(fp)["ok"]
    assert verify_product_measure_bound(fp, fx.rs, fx.pt(), max_len=20)["ok"]


def test_case_split(corpus):
    fp = build_free_pair(corpus["c50"].rs, corpus["c50"].pt())
    step = fp.trace[-1]
    assert step["case"] == "a w a" and step["letter"] == "y"
    fp = build_free_pair(corpus["sc_violation"].rs, corpus["sc_violation"].pt())
    assert fp.trace[-1]["case"] == "a1 w a2"
    assert fp.w2 == tuple(fp.w1) + (fp.w1[0],)


def test_power_branch(corpus):
    fx = corpus["monfree"]
    fp = build_free_pair(fx.rs, fx.pt())
    (power,) = [t for t in fp.trace if t["step"] == "power"]
    assert power["exponent"] * 2 > 10 * 3
    assert fx.alphabet.format(fp.w1) == "yxx"


def test_monomial_relation_rejected():
    a = Alphabet(("x", "y"))
    rs = close([parse_poly("x", a, Field(2))], 2, a)
    with pytest.raises(ConstructionError):
        build_free_pair(rs, None)


def test_rank_one_rejected():
    with pytest.raises(ValueError):
        Alphabet(("x",))


def test_product_bound_catches_heavy_pair(c50):
    R = c50.pres.relations[0].words[0]
    fake = FreePairWitness(w1=Word(R[:30]), w2=Word(R[30:]), mu=2)
    rep = verify_product_measure_bound(fake, c50.rs, c50.pt(), max_len=60)
    assert not rep["ok"] and rep["violation"] is not None


def test_unique_factorization_detects_collision():
    fake = FreePairWitness(w1=Word((0,)), w2=Word((0, 0)), mu=0)
    rep = unique_factorization_check(fake, max_len=3)
    assert not rep["ok"] and rep["collision"] == ["2", "11"]
    assert unique_factorization_check(FreePairWitness(Word((0, 0)), Word((0, 0, 2)), 2))["strings"] == 127


def test_exponent_validation(c50):
    fp = build_free_pair(c50.rs, c50.pt())
    for bad in [(10, 180, 270, 360, 450, 540), (90, 100, 270, 360, 450, 540), (90, 180, 200, 360, 450, 540),
                (90, 180, 270)]:
        with pytest.raises(ValueError):
            build_amenability_witness(fp, c50.rs, c50.pt(), exponents=bad, check_sc=False)


def test_v_word_shape():
    w1, w2 = (0, 0), (0, 0, 2)
    v = v_word(w1, w2, 2, 3)
    assert tuple(v) == w2 + w1 * 2 + w2 + w1 * 3 + w2


def test_prefix_checks_count():
    vs = [v_word((2,), (0, 2), g, g + 90) for g in (90, 270, 450)]
    checks = prefix_checks(vs)
    assert len(checks) == 30 and all(ok for *_, ok in checks)
    assert not all(ok for *_, ok in prefix_checks([(0, 2, 4)] * 3))


def test_amenability_witness(c50):
    fp = build_free_pair(c50.rs, c50.pt())
    aw = build_amenability_witness(fp, c50.rs, c50.pt(), tau=15, check_sc=False)
    assert aw.swapped and c50.alphabet.format(aw.w1) == "xxy"
    assert (aw.gammas, aw.deltas) == (MIN_EXPONENTS[0::2], MIN_EXPONENTS[1::2])
    assert all(aw.report["verified"].values())
    assert all(verify_amenability_witness(aw).values())
    assert "isolation axiom" in aw.report["assumed"]


def test_small_tau_flagged(c50):
    fp = build_free_pair(c50.rs, c50.pt())
    aw = build_amenability_witness(fp, c50.rs, c50.pt(), tau=10, check_sc=False)
    assert not aw.report["verified"]["tau_at_least_15"]
