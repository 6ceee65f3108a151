"""Occurrences of Mon in a host word, maximal occurrences, charts and MinCov.

Because Mon is closed under subwords, the occurrences in a host are exactly
the subintervals of its maximal occurrences, and the maximal occurrences are
read off from the longest Mon-suffix ending at each position (one pass of the
subword automaton).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .kernels import SubwordAutomaton, as_codes
from .measure import INF, PieceTable, Verdict, measure_span
from .relset import RelSet
from .words import cancel_len

__all__ = ["Occurrence", "Chart", "CoverReport", "occurrences", "maximal_occurrences",
           "chart", "min_cov", "min_interval_cover", "min_cov_bounds_check", "overlap_anomalies"]


@dataclass(frozen=True)
class Occurrence:
    start: int
    length: int
    word: tuple

    @property
    def end(self) -> int:
        return self.start + self.length

    def contains(self, other: "Occurrence") -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class Chart:
    host: tuple
    variant: str
    tau: int
    maximal_occurrences: tuple
    measures: tuple
    chart_members: tuple
    coarsened: bool

    @property
    def empty(self) -> bool:
        return not self.chart_members

    @property
    def nvirt_proxy(self) -> int:
        """Number of chart members. Not the virtual-chart count NVirt; a proxy only."""
        return len(self.chart_members)


@dataclass(frozen=True)
class CoverReport:
    host: tuple
    covered_positions: frozenset
    min_cov: int
    witness: tuple


def automaton(rs: RelSet) -> SubwordAutomaton:
    a = rs._cache.get("automaton")
    if a is None:
        a = rs._cache["automaton"] = SubwordAutomaton(rs.mon, rs.alphabet.n_letters)
    return a


def spans(A: Sequence[int], rs: RelSet):
    """(codes, starts, ends) of the maximal occurrences, sorted by start."""
    codes = as_codes(A)
    if not len(codes) or not rs.mon:
        empty = np.zeros(0, dtype=np.int32)
        return codes, empty, empty
    lengths = automaton(rs).suffix_lengths(codes)
    starts, ends = kernels.maximal_spans(lengths)
    return codes, starts, ends


def maximal_occurrences(A: Sequence[int], rs: RelSet) -> list[Occurrence]:
    A = tuple(A)
    _, starts, ends = spans(A, rs)
    return [Occurrence(s, e - s, A[s:e]) for s, e in zip(starts.tolist(), ends.tolist())]


def occurrences(A: Sequence[int], rs: RelSet) -> list[Occurrence]:
    """Every nonempty occurrence of a Mon word, ordered by (start, length)."""
    A = tuple(A)
    _, starts, ends = spans(A, rs)
    maxend = {}
    for s, e in zip(starts.tolist(), ends.tolist()):
        for i in range(s, e):
            maxend[i] = max(maxend.get(i, 0), e)
    return [Occurrence(i, e - i, A[i:e]) for i in sorted(maxend) for e in range(i + 1, maxend[i] + 1)]


def chart(A: Sequence[int], pt: PieceTable, rs: RelSet, variant: str = "plain",
          tau: int | None = None) -> Chart:
    tau = pt.tau if tau is None else tau
    A = tuple(A)
    codes, starts, ends = spans(A, rs)
    occ, meas, members = [], [], []
    for s, e in zip(starts.tolist(), ends.tolist()):
        o = Occurrence(s, e - s, A[s:e])
        m = measure_span(codes, s, e, pt, variant)
        occ.append(o)
        meas.append(m)
        if m >= tau:
            members.append(o)
    return Chart(host=A, variant=variant, tau=tau, maximal_occurrences=tuple(occ),
                 measures=tuple(meas), chart_members=tuple(members), coarsened=pt.coarsened)


def min_cov(A: Sequence[int], rs: RelSet) -> CoverReport:
    A = tuple(A)
    _, starts, ends = spans(A, rs)
    covered = set()
    for s, e in zip(starts.tolist(), ends.tolist()):
        covered.update(range(s, e))
    chosen = kernels.greedy_cover(starts, ends).tolist()
    witness = tuple(Occurrence(int(starts[k]), int(ends[k] - starts[k]), A[starts[k]:ends[k]])
                    for k in chosen)
    return CoverReport(host=A, covered_positions=frozenset(covered), min_cov=len(chosen),
                       witness=witness)


def min_cov_value(A: Sequence[int], rs: RelSet) -> int:
    _, starts, ends = spans(A, rs)
    return len(kernels.greedy_cover(starts, ends))


def min_interval_cover(intervals: Sequence[tuple]) -> tuple[int, list[int]]:
    """Fewest half-open intervals ``[a, b)`` covering their union (general position).

    Returns the count and the indices chosen.
    """
    order = sorted(range(len(intervals)), key=lambda i: (intervals[i][0], -intervals[i][1]))
    chosen: list[int] = []
    cover_end = None
    k = 0
    while k < len(order):
        a, b = intervals[order[k]]
        if cover_end is not None and b <= cover_end:
            k += 1
            continue
        target = cover_end if cover_end is not None and a <= cover_end else a
        best = None
        while k < len(order) and intervals[order[k]][0] <= target:
            i = order[k]
            if best is None or intervals[i][1] > intervals[best][1]:
                best = i
            k += 1
        chosen.append(best)
        cover_end = intervals[best][1]
    return len(chosen), chosen


def min_cov_bounds_check(W1: Sequence[int], W2: Sequence[int], rs: RelSet,
                         seed: int = 0, n_subwords: int = 20) -> dict:
    """Check ``MinCov(W1) + MinCov(W2) - 1 <= MinCov(W1W2) <= MinCov(W1) + MinCov(W2)``.

    Also checks that MinCov does not increase on ``n_subwords`` random subwords
    of ``W1W2``.
    """
    W1, W2 = tuple(W1), tuple(W2)
    if cancel_len(W1, W2):
        raise ValueError("W1*W2 must have no cancellation")
    W = W1 + W2
    m1, m2, m = min_cov_value(W1, rs), min_cov_value(W2, rs), min_cov_value(W, rs)
    rng = random.Random(seed)
    sub_violations = []
    for _ in range(n_subwords if W else 0):
        i = rng.randrange(len(W) + 1)
        j = rng.randrange(i, len(W) + 1)
        ms = min_cov_value(W[i:j], rs)
        if ms > m:
            sub_violations.append({"start": i, "end": j, "min_cov": ms})
    lower = m1 + m2 - 1 <= m
    upper = m <= m1 + m2
    return {
        "min_cov_w1": m1, "min_cov_w2": m2, "min_cov_product": m,
        "lower_bound_holds": lower, "upper_bound_holds": upper,
        "subword_violations": sub_violations,
        "ok": lower and upper and not sub_violations,
    }


def overlap_anomalies(A: Sequence[int], rs: RelSet, pt: PieceTable) -> list[tuple]:
    """Overlaps of consecutive maximal occurrences whose verdict is not_piece."""
    occ = maximal_occurrences(A, rs)
    A = tuple(A)
    bad = []
    for u, v in itertools.pairwise(occ) if hasattr(itertools, "pairwise") else zip(occ, occ[1:]):
        if v.start < u.end:
            w = A[v.start:u.end]
            if pt.verdict(w) is Verdict.NOT_PIECE:
                bad.append((v.start, u.end, w))
    return bad
