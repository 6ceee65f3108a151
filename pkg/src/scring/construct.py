"""Free-subalgebra generators and the non-amenability witness.

``build_free_pair`` follows the existence proof step by step, taking the
first admissible letter in the fixed alphabet order wherever the proof only
asserts that a letter exists. ``build_amenability_witness`` assembles the
three words ``v_i = w2 w1^g w2 w1^(g+1) ... w2 w1^d w2`` and checks their
spacing and prefix conditions. Every witness has a ``verify_*`` function that
recomputes its invariants from the words alone.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .checker import check_empty_chart_family, check_no_monomial_relations, check_sc_axiom
from .cover import maximal_occurrences, min_cov_value, spans
from .measure import INF, PieceTable, lambda_inverse_symmetric, measure_span
from .relset import RelSet
from .words import (Word, cancel_len, common_prefix, common_suffix, inverse, is_cyclically_reduced,
                    is_proper_power, mul, power)

log = logging.getLogger(__name__)

__all__ = ["ConstructionError", "FreePairWitness", "AmenabilityWitness", "find_non_mon_word",
           "extract_low_measure_subword", "build_free_pair", "verify_free_pair",
           "verify_product_measure_bound", "unique_factorization_check",
           "build_amenability_witness", "verify_amenability_witness", "max_occurrence_measure",
           "MIN_EXPONENTS"]

MIN_EXPONENTS = (90, 180, 270, 360, 450, 540)


class ConstructionError(RuntimeError):
    pass


def max_occurrence_measure(w: Sequence[int], rs: RelSet, pt: PieceTable, variant: str = "prime"):
    """Largest measure of a maximal occurrence in ``w`` (0 when there is none)."""
    codes, starts, ends = spans(w, rs)
    best = 0
    for s, e in zip(starts.tolist(), ends.tolist()):
        v = measure_span(codes, s, e, pt, variant)
        if v > best:
            best = v
    return best


def _has_occurrence(w: Sequence[int], rs: RelSet) -> bool:
    return any((c,) in rs.mon for c in w)


def find_non_mon_word(rs: RelSet, search_len: int | None = None) -> Word:
    """Shortest, then first in letter order, nonempty reduced word outside Mon."""
    n_letters = rs.alphabet.n_letters
    limit = rs.max_monomial_length + 1 if search_len is None else search_len
    layer = [()]
    for length in range(1, limit + 1):
        nxt = []
        for u in layer:
            for x in range(n_letters):
                if u and x == u[-1] ^ 1:
                    continue
                w = u + (x,)
                if w not in rs.mon:
                    return Word._trusted(w)
                nxt.append(w)
        layer = nxt
    raise ConstructionError(f"every reduced word of length <= {limit} lies in Mon")


def _low_measure_ok(w: tuple, rs: RelSet, pt: PieceTable, mu: int) -> bool:
    return (len(w) > 0 and w not in rs.mon and _has_occurrence(w, rs)
            and max_occurrence_measure(w, rs, pt, "prime") <= mu)


def _boundary_windows(w: tuple, occ: list) -> list:
    """Candidate windows (start, end) following the four placements of w'."""
    n = len(w)
    out = []
    u1, uk = occ[0], occ[-1]
    # w' runs from before u_1 into u_1
    if u1.start > 0:
        out += [(u1.start - 1, u1.start + k) for k in range(u1.length, 0, -1)]
    # w' runs from inside u_k past its end
    if uk.end < n:
        out += [(uk.end - k, uk.end + 1) for k in range(uk.length, 0, -1)]
    # w' bridges two consecutive maximal occurrences
    for a, b in zip(occ, occ[1:]):
        lo, hi = max(b.start - 1, a.start), min(a.end + 1, b.end)
        if lo < hi:
            out.append((lo, hi))
    return out


def extract_low_measure_subword(w: Sequence[int], rs: RelSet, pt: PieceTable, mu: int = 2) -> Word:
    """A subword outside Mon with a Mon occurrence and every maximal occurrence of measure <= mu."""
    w = tuple(w)
    if w in rs.mon or not _has_occurrence(w, rs):
        raise ValueError("w must lie outside Mon and contain an occurrence of Mon")
    occ = maximal_occurrences(w, rs)
    for s, e in _boundary_windows(w, occ):
        if _low_measure_ok(w[s:e], rs, pt, mu):
            return Word._trusted(w[s:e])
    n = len(w)
    for length in range(n, 0, -1):
        for s in range(n - length + 1):
            if _low_measure_ok(w[s:s + length], rs, pt, mu):
                return Word._trusted(w[s:s + length])
    raise ConstructionError("no low-measure subword found; the overlap property failed")


@dataclass
class FreePairWitness:
    w1: Word
    w2: Word
    mu: int
    trace: list = field(default_factory=list)
    degenerate: bool = False

    def to_dict(self, alphabet) -> dict:
        return {"w1": alphabet.format(self.w1), "w2": alphabet.format(self.w2),
                "mu": self.mu if self.mu != INF else "inf", "degenerate": self.degenerate}


def _power_branch(w: Word, rs: RelSet, trace: list, fmt) -> Word:
    p = next((q for q in rs.members if len(q) >= 2), None)
    if p is None:
        raise ConstructionError("no relation with two monomials to run the power construction")
    longest = max(len(a) for a in p.words)
    k = 1
    M = power(w, k)
    while len(M) <= 10 * longest:
        k += 1
        M = power(w, k)
    cut = max(cancel_len(M, a) for a in p.words)
    M1, M2 = M[:len(M) - cut], M[len(M) - cut:]
    if not M1:
        raise ConstructionError("power construction cancelled the whole power")
    bs = [mul(M2, a)[0] for a in p.words]
    b0 = next(b for b in bs if b)
    new = Word._trusted(tuple(M1) + tuple(b0))
    trace.append({"step": "power", "relation_index": rs.index_of(p), "exponent": k,
                  "M1_length": len(M1), "M2_length": len(M2), "b": fmt(b0), "word": fmt(new)})
    return new


def build_free_pair(rs: RelSet, pt: PieceTable, search_len: int | None = None) -> FreePairWitness:
    if rs.alphabet.rank < 2:
        raise ConstructionError("the free group must have rank at least 2")
    mono = check_no_monomial_relations(rs)
    if not mono.ok:
        raise ConstructionError(f"closure contains a monomial relation: {mono.witness['relation']}")
    fmt = rs.alphabet.format
    trace: list = []
    w = find_non_mon_word(rs, search_len)
    trace.append({"step": "non_mon_word", "word": fmt(w)})
    degenerate = not rs.mon or not rs.letters_in_mon()
    if degenerate:
        log.warning("Mon has no letters; the pair cannot contain occurrences of Mon")
        wp = w
    else:
        if not _has_occurrence(w, rs):
            w = _power_branch(w, rs, trace, fmt)
        wp = extract_low_measure_subword(w, rs, pt)
        trace.append({"step": "low_measure_subword", "word": fmt(wp)})
    wp = tuple(wp)
    n_letters = rs.alphabet.n_letters
    if not is_cyclically_reduced(wp):
        z = next(z for z in range(n_letters) if z != wp[-1] ^ 1 and z != wp[0] ^ 1)
        wp = wp + (z,)
        trace.append({"step": "cyclic_repair", "letter": fmt((z,)), "word": fmt(wp)})
    a1, a2 = wp[0], wp[-1]
    if a1 == a2:
        x = next(x for x in range(n_letters) if x >> 1 != a1 >> 1)
        case = "a w a"
    else:
        x = a1
        case = "a1 w a2"
    w1, w2 = Word._trusted(wp), Word._trusted(wp + (x,))
    trace.append({"step": "second_letter", "case": case, "letter": fmt((x,)),
                  "w1": fmt(w1), "w2": fmt(w2)})
    mu = max(max_occurrence_measure(w1, rs, pt), max_occurrence_measure(w2, rs, pt))
    fp = FreePairWitness(w1=w1, w2=w2, mu=mu, trace=trace, degenerate=degenerate)
    bad = [k for k, ok in verify_free_pair(fp, rs, pt).items() if not ok]
    if bad:
        raise ConstructionError(f"constructed pair fails {', '.join(bad)}")
    return fp


def verify_free_pair(fp: FreePairWitness, rs: RelSet, pt: PieceTable) -> dict:
    """Recompute every invariant of the pair from the two words."""
    w1, w2 = tuple(fp.w1), tuple(fp.w2)
    mu = max(max_occurrence_measure(w1, rs, pt), max_occurrence_measure(w2, rs, pt))
    return {
        "not_in_mon": w1 not in rs.mon and w2 not in rs.mon and bool(w1) and bool(w2),
        "cyclically_reduced": is_cyclically_reduced(w1) and is_cyclically_reduced(w2),
        "contains_mon_occurrence": fp.degenerate or (_has_occurrence(w1, rs) and _has_occurrence(w2, rs)),
        "no_cancellation": cancel_len(w1, w2) == 0 and cancel_len(w2, w1) == 0,
        "no_common_suffix": not common_suffix(w1, w2),
        "measure_at_most_4": mu <= 4,
    }


def _products(lengths: tuple, max_len: int):
    """All nonempty block sequences over {0, 1} with total length <= max_len."""
    stack = [((), 0)]
    while stack:
        seq, total = stack.pop()
        if seq:
            yield seq
        for b in (1, 0):
            if total + lengths[b] <= max_len:
                stack.append((seq + (b,), total + lengths[b]))


def verify_product_measure_bound(fp: FreePairWitness, rs: RelSet, pt: PieceTable,
                                 max_len: int = 40, cap: int = 500_000) -> dict:
    """Scan every alternating product of w1, w2 up to ``max_len`` letters.

    Each maximal occurrence must have measure <= 2*mu (and <= 8) and lie
    properly inside two consecutive blocks.
    """
    blocks = (tuple(fp.w1), tuple(fp.w2))
    bound = min(2 * fp.mu, 8) if fp.mu <= 4 else 2 * fp.mu
    checked = 0
    worst = 0
    cache: dict = {}
    for seq in _products((len(blocks[0]), len(blocks[1])), max_len):
        checked += 1
        if checked > cap:
            return {"ok": False, "truncated": True, "products": cap, "bound": bound,
                    "max_measure": worst, "violation": None}
        host = tuple(c for b in seq for c in blocks[b])
        cuts = [0]
        for b in seq:
            cuts.append(cuts[-1] + len(blocks[b]))
        codes, starts, ends = spans(host, rs)
        for s, e in zip(starts.tolist(), ends.tolist()):
            key = host[s:e]
            v = cache.get(key)
            if v is None:
                v = cache[key] = measure_span(codes, s, e, pt, "prime")
            worst = max(worst, v)
            bi = _block_of(cuts, s)
            bj = _block_of(cuts, e - 1)
            # proper subword of the two blocks starting at bi
            contained = bj - bi == 0 or (bj - bi == 1 and not (s == cuts[bi] and e == cuts[bj + 1]))
            if v > bound or not contained:
                fmt = rs.alphabet.format
                return {"ok": False, "truncated": False, "products": checked, "bound": bound,
                        "max_measure": worst,
                        "violation": {"product": "".join("12"[b] for b in seq), "start": s,
                                      "length": e - s, "occurrence": fmt(key),
                                      "measure": "inf" if v == INF else v,
                                      "properly_contained": contained}}
    return {"ok": True, "truncated": False, "products": checked, "bound": bound,
            "max_measure": worst, "violation": None}


def _block_of(cuts: list, pos: int) -> int:
    lo, hi = 0, len(cuts) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if cuts[mid] <= pos:
            lo = mid
        else:
            hi = mid
    return lo


def unique_factorization_check(fp: FreePairWitness, max_len: int = 6) -> dict:
    """Distinct block strings of at most ``max_len`` blocks give distinct reduced words."""
    blocks = (tuple(fp.w1), tuple(fp.w2))
    seen: dict = {(): ""}
    strings = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [s + b for s in frontier for b in "12"]
        strings += frontier
    for s in strings[1:]:
        w = Word(c for b in s for c in blocks[int(b) - 1])
        other = seen.get(w)
        if other is not None:
            return {"ok": False, "strings": len(strings), "collision": [other, s]}
        seen[w] = s
    return {"ok": True, "strings": len(strings), "collision": None}


@dataclass
class AmenabilityWitness:
    v1: Word
    v2: Word
    v3: Word
    gammas: tuple
    deltas: tuple
    w1: Word
    w2: Word
    swapped: bool = False
    epsilon: Fraction = Fraction(1, 3)
    report: dict = field(default_factory=dict)

    @property
    def S_basis(self) -> tuple:
        return (self.v1, self.v2, self.v3)


def _check_exponents(gammas: Sequence[int], deltas: Sequence[int]) -> None:
    if len(gammas) != 3 or len(deltas) != 3:
        raise ValueError("three gammas and three deltas are required")
    if gammas[0] < 90:
        raise ValueError(f"gamma_1 = {gammas[0]} must be at least 90")
    for i in range(3):
        if deltas[i] < gammas[i] + 90:
            raise ValueError(f"delta_{i + 1} = {deltas[i]} must be at least gamma_{i + 1} + 90")
        if i < 2 and gammas[i + 1] < deltas[i] + 90:
            raise ValueError(f"gamma_{i + 2} = {gammas[i + 1]} must be at least delta_{i + 1} + 90")


def v_word(w1: Sequence[int], w2: Sequence[int], gamma: int, delta: int) -> Word:
    w1, w2 = tuple(w1), tuple(w2)
    parts = []
    for k in range(gamma, delta + 1):
        parts.append(w2)
        parts.append(w1 * k)
    parts.append(w2)
    return Word._trusted(tuple(c for p in parts for c in p))


def prefix_checks(vs: Sequence[Sequence[int]]) -> list:
    """All 30 ordered pairs from {v_i, v_i^-1}: (i, j, |c|, ok) with ok iff 30|c| < |A_i|, |A_j|."""
    words = []
    for v in vs:
        words += [tuple(v), tuple(inverse(v))]
    out = []
    for i, a in enumerate(words):
        for j, b in enumerate(words):
            if i == j:
                continue
            c = len(common_prefix(a, b))
            out.append((i, j, c, 30 * c < len(a) and 30 * c < len(b)))
    return out


def _step1_check(v: tuple, rs: RelSet, rng: random.Random, samples: int) -> dict:
    """MinCov(v') + 1015 < MinCov(v'') for prefixes |v'| < |v|/2 and |v''| > 2|v|/3."""
    n = len(v)
    hi1 = (n - 1) // 2          # longest prefix shorter than n/2
    lo2 = (2 * n) // 3 + 1      # shortest prefix longer than 2n/3
    pairs = [(hi1, lo2)] + [(rng.randint(0, hi1), rng.randint(lo2, n)) for _ in range(samples)]
    worst = None
    for a, b in pairs:
        ma, mb = min_cov_value(v[:a], rs), min_cov_value(v[:b], rs)
        gap = mb - ma
        if worst is None or gap < worst[2]:
            worst = (a, b, gap)
    return {"ok": worst[2] > 1015, "min_gap": worst[2], "prefix_lengths": [worst[0], worst[1]],
            "pairs": len(pairs)}


def build_amenability_witness(fp: FreePairWitness, rs: RelSet, pt: PieceTable,
                              exponents: Sequence[int] | None = None, tau: int | None = None,
                              n_max: int = 2, seed: int = 0, samples: int = 8,
                              check_sc: bool = True) -> AmenabilityWitness:
    tau = pt.tau if tau is None else tau
    exps = tuple(MIN_EXPONENTS if exponents is None else exponents)
    if len(exps) != 6:
        raise ValueError("expected six exponents g1,d1,g2,d2,g3,d3")
    gammas, deltas = exps[0::2], exps[1::2]
    _check_exponents(gammas, deltas)
    w1, w2 = fp.w1, fp.w2
    swapped = False
    if is_proper_power(w1):
        if is_proper_power(w2):
            log.error("both w1 and w2 are proper powers")
            raise ConstructionError("both w1 and w2 are proper powers")
        w1, w2, swapped = w2, w1, True
    vs = [v_word(w1, w2, g, d) for g, d in zip(gammas, deltas)]
    prefix = prefix_checks(vs)
    words_used = list(vs) + [Word._trusted(tuple(vs[i]) + tuple(vs[j]))
                             for i in range(3) for j in range(3) if i != j]
    chart_report = check_empty_chart_family(words_used, pt, rs, tau, variant="prime")
    rng = random.Random(seed)
    step1 = [_step1_check(tuple(v), rs, rng, samples) for v in vs]
    hyp = {
        "prime_pieces_subword_closed": not pt.prime_subword_violations(),
        "tau_at_least_15": tau >= 15,
        "inverse_symmetry": not lambda_inverse_symmetric(pt, rs, "prime"),
        "non_mon_words_exist": True,
        "empty_chart_products": chart_report.ok,
        "prefix_bound": all(ok for *_, ok in prefix),
        "step1_min_cov_gap": all(s["ok"] for s in step1),
    }
    if check_sc:
        sc = check_sc_axiom(rs, pt, n_max=n_max, variant="prime", mode="plus10")
        hyp["sc_axiom_plus10"] = sc.verdict
    report = {
        "verified": hyp,
        "assumed": ["isolation axiom", "steps 2 and 3 of the growth argument (theorem-backed)"],
        "prefix_checks": [{"a": i, "b": j, "common_prefix": c, "ok": ok} for i, j, c, ok in prefix],
        "step1": step1,
        "empty_chart": chart_report.to_dict(),
        "lengths": [len(v) for v in vs],
    }
    return AmenabilityWitness(v1=vs[0], v2=vs[1], v3=vs[2], gammas=gammas, deltas=deltas,
                              w1=w1, w2=w2, swapped=swapped, report=report)


def verify_amenability_witness(aw: AmenabilityWitness) -> dict:
    """Recompute the word shapes, spacing and prefix conditions."""
    try:
        _check_exponents(aw.gammas, aw.deltas)
        spacing = True
    except ValueError:
        spacing = False
    shapes = all(tuple(v) == tuple(v_word(aw.w1, aw.w2, g, d))
                 for v, g, d in zip(aw.S_basis, aw.gammas, aw.deltas))
    return {
        "spacing": spacing,
        "shape": shapes,
        "prefix_bound": all(ok for *_, ok in prefix_checks(aw.S_basis)),
        "w1_not_proper_power": is_cyclically_reduced(aw.w1) and not is_proper_power(aw.w1),
        "epsilon": aw.epsilon == Fraction(1, 3),
    }
