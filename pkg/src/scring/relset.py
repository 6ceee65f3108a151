"""Relation sets closed under the compatibility rule, truncated by monomial length.

The closure rule: a member ``p`` may be multiplied on the left (right) by a
letter ``x`` that cancels against the first (last) letter of at least one of
its monomials, and the result is again a member. Closure under field scaling
is represented by storing every member with leading coefficient 1.

The closure can be infinite, so only members whose monomials all have length
at most ``bound`` are admitted. ``saturated`` records whether any admissible
extension was cut off; when it is True the finite closure *is* the closure.
"""
from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .poly import Poly, word_poly_mul
from .words import Alphabet, Word

log = logging.getLogger(__name__)

DEFAULT_MEMBER_CAP = 10 ** 6


class ClosureOverflow(RuntimeError):
    """The closure grew past the configured member cap."""


class Membership(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    """How a member was produced: from ``parent`` by ``letter`` on ``side``.

    Seeds have ``parent == -1`` and ``letter`` set to the seed index.
    """
    parent: int
    side: str
    letter: int


@dataclass(frozen=True, eq=False)
class RelSet:
    alphabet: Alphabet
    seeds: tuple
    members: tuple
    steps: tuple
    bound: int
    saturated: bool
    mon: frozenset
    cutoffs: int = 0
    _index: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.seeds[0].field if self.seeds else None

    @property
    def closure(self) -> tuple:
        return self.members

    def __len__(self):
        return len(self.members)

    def index_of(self, p: Poly) -> int | None:
        return self._index.get(p.canonical())

    @property
    def max_monomial_length(self) -> int:
        return max((p.max_length for p in self.members), default=0)

    @property
    def monomial_set(self) -> frozenset:
        return frozenset(w for p in self.members for w, _ in p.terms)

    def letters_in_mon(self) -> list[int]:
        return sorted({w[0] for w in self.mon if len(w) == 1})

    def witness_chain(self, i: int) -> list[Step]:
        chain = []
        while True:
            st = self.steps[i]
            chain.append(st)
            if st.parent < 0:
                break
            i = st.parent
        return chain[::-1]

    def replay(self, i: int) -> Poly:
        """Recompute member ``i`` from its seed by the stored letter multiplications."""
        chain = self.witness_chain(i)
        p = self.seeds[chain[0].letter]
        for st in chain[1:]:
            cur_words = p.words
            if st.side == "left":
                if not any(len(w) and w[0] == st.letter ^ 1 for w in cur_words):
                    raise AssertionError("replayed letter does not cancel")
            elif not any(len(w) and w[-1] == st.letter ^ 1 for w in cur_words):
                raise AssertionError("replayed letter does not cancel")
            p = word_poly_mul((st.letter,), p, st.side).canonical()
        return p


def _subword_closure(monomials: Iterable[Sequence[int]]) -> frozenset:
    mon: set = set()
    for m in sorted(set(monomials), key=len, reverse=True):
        if m in mon:
            continue
        m = tuple(m)
        for i in range(len(m) + 1):
            for j in range(len(m), i - 1, -1):
                s = m[i:j]
                if s in mon:
                    break
                mon.add(s)
    return frozenset(mon)


def close(seeds: Sequence[Poly], bound: int, alphabet: Alphabet | None = None,
          cap: int = DEFAULT_MEMBER_CAP) -> RelSet:
    """Breadth-first closure of ``seeds`` under letter multiplication, up to ``bound``."""
    seeds = [s for s in seeds]
    if any(not s for s in seeds):
        raise ValueError("seed polynomials must be nonzero")
    if len({s.field for s in seeds}) > 1:
        raise ValueError("seeds over different fields")
    for s in seeds:
        if s.max_length > bound:
            raise ValueError(f"seed monomial longer than the bound {bound}")
    if alphabet is None:
        top = max((c >> 1 for s in seeds for w in s.words for c in w), default=1)
        alphabet = Alphabet.default(max(2, top + 1))
    canon_seeds = tuple(s.canonical() for s in seeds)
    members: list[Poly] = []
    steps: list[Step] = []
    index: dict = {}
    queue: deque = deque()
    for k, s in enumerate(canon_seeds):
        if s not in index:
            index[s] = len(members)
            members.append(s)
            steps.append(Step(-1, "seed", k))
            queue.append(index[s])
    saturated = True
    cutoffs = 0
    while queue:
        i = queue.popleft()
        p = members[i]
        words = p.words
        lefts = sorted({w[0] ^ 1 for w in words if len(w)})
        rights = sorted({w[-1] ^ 1 for w in words if len(w)})
        for side, letters in (("left", lefts), ("right", rights)):
            for x in letters:
                q = word_poly_mul((x,), p, side)
                if q.max_length > bound:
                    saturated = False
                    cutoffs += 1
                    continue
                q = q.canonical()
                if q in index:
                    continue
                if len(members) >= cap:
                    raise ClosureOverflow(f"closure exceeded {cap} members at bound {bound}")
                index[q] = len(members)
                members.append(q)
                steps.append(Step(i, side, x))
                queue.append(index[q])
    mon = _subword_closure(w for p in members for w in p.words)
    log.debug("closure: %d members, %d monomials in Mon, saturated=%s", len(members), len(mon), saturated)
    return RelSet(alphabet=alphabet, seeds=canon_seeds, members=tuple(members), steps=tuple(steps),
                  bound=bound, saturated=saturated, mon=mon, cutoffs=cutoffs, _index=index)


def contains_up_to_scalar(rs: RelSet, p: Poly) -> Membership:
    if not p:
        raise ValueError("membership is asked of nonzero polynomials only")
    if p.canonical() in rs._index:
        return Membership.YES
    return Membership.NO if rs.saturated else Membership.UNKNOWN


def in_mon(rs: RelSet, w: Sequence[int]) -> bool:
    return tuple(w) in rs.mon
