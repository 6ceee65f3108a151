"""Small pieces, the extended piece set S', and the Lambda / Lambda' measures.

A word ``c`` in Mon is a small piece when some occurrence of it in a member
``p`` (as ``a1 c a2``) cannot be transported to the context ``(b1, b2)`` of
another occurrence, i.e. ``b1 * a1^-1 * p`` or ``p * a2^-1 * b2`` is not a
member. Grouping occurrences by their normalised relation ``a1^-1 * p``
(resp. ``p * a2^-1``) turns the pairwise test into a set comparison:
``b * N`` is a member exactly when ``b`` already occurs as a context of
``N``, so only the missing (N, b) pairs need a membership query.

Transports whose result has a monomial longer than the longest closure
monomial (the *transport window*) are not counted as failures unless
``strict=True``; see :func:`small_pieces`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .kernels import WordTrie, as_codes
from .poly import Poly, _sorted_terms, word_poly_mul
from .relset import Membership, RelSet, contains_up_to_scalar
from .words import common_prefix, common_suffix, inverse

INF = math.inf

__all__ = ["Verdict", "PieceTable", "is_small_piece", "small_pieces", "lambda_measure",
           "lambda_inverse_symmetric", "INF"]


class Verdict(enum.Enum):
    PIECE = "piece"
    NOT_PIECE = "not_piece"
    UNKNOWN = "unknown"


def _window(rs: RelSet, strict: bool) -> float:
    return INF if strict else rs.max_monomial_length


def _transport_verdict(c, groups: dict, contexts: set, side: str, rs: RelSet, window: float):
    """Test missing (N, b) pairs. Returns PIECE, UNKNOWN or None (all fine)."""
    unknown = False
    ctx_sorted = sorted(contexts, key=lambda t: (len(t), t))
    k = len(c)
    for N in sorted(groups, key=lambda q: q.terms):
        present = groups[N]
        if side == "left":
            ell = max(len(w) for w in N.words if tuple(w[:k]) == c)
        else:
            ell = max(len(w) for w in N.words if len(w) >= k and tuple(w[len(w) - k:]) == c)
        for b in ctx_sorted:
            if len(b) + ell > window:
                break
            if b in present:
                continue
            T = word_poly_mul(b, N, side)
            if T.max_length > window:
                continue
            m = contains_up_to_scalar(rs, T)
            if m is Membership.NO:
                return Verdict.PIECE
            if m is Membership.UNKNOWN:
                unknown = True
    return Verdict.UNKNOWN if unknown else None


def is_small_piece(c: Sequence[int], rs: RelSet, strict: bool = False) -> Verdict:
    """Verdict for a single word (the batch path is :func:`small_pieces`)."""
    c = tuple(c)
    if not c:
        return Verdict.PIECE
    if c not in rs.mon:
        return Verdict.NOT_PIECE
    k = len(c)
    left: dict = {}
    right: dict = {}
    for p in rs.members:
        for m in p.words:
            m = tuple(m)
            for s in range(len(m) - k + 1):
                if m[s:s + k] != c:
                    continue
                a1, a2 = m[:s], m[s + k:]
                N = word_poly_mul(inverse(a1), p, "left").canonical()
                left.setdefault(N, set()).add(a1)
                N = word_poly_mul(inverse(a2), p, "right").canonical()
                right.setdefault(N, set()).add(a2)
    window = _window(rs, strict)
    verdicts = []
    for side, groups in (("left", left), ("right", right)):
        ctx = set().union(*groups.values())
        v = _transport_verdict(c, groups, ctx, side, rs, window)
        if v is Verdict.PIECE:
            return v
        verdicts.append(v)
    return Verdict.UNKNOWN if Verdict.UNKNOWN in verdicts else Verdict.NOT_PIECE


def _normalised(p: Poly, m: tuple, minv: tuple, s: int, side: str, shared: list) -> Poly:
    """``m[:s]^-1 * p`` (left) or ``p * m[n-s:]^-1`` (right); ``shared`` holds, per
    term, its common prefix (suffix) length with ``m``."""
    n = len(m)
    items = []
    if side == "left":
        for (u, c), K in zip(p.terms, shared):
            k = s if s < K else K
            items.append((minv[n - s:n - k] + u[k:], c))
    else:
        for (u, c), K in zip(p.terms, shared):
            k = s if s < K else K
            items.append((u[:len(u) - k] + minv[k:s], c))
    return Poly._trusted(p.field, _sorted_terms(items)).canonical()


def _scan_side(rs: RelSet, side: str, node_of: dict, n_letters: int):
    """Occurrence rows (c id, normalised-relation id, context id, c-monomial length)."""
    words_by_id = sorted(node_of, key=node_of.get)
    if side == "left":
        trie = WordTrie(words_by_id, n_letters)
        to_id = np.zeros(trie.size, dtype=np.int64)
        for w, node in trie.node_of.items():
            to_id[node] = node_of[w]
    else:
        trie = WordTrie([w[::-1] for w in words_by_id], n_letters)
        to_id = np.zeros(trie.size, dtype=np.int64)
        for w, node in trie.node_of.items():
            to_id[node] = node_of[w[::-1]]
    child = trie.child
    tri_cache: dict = {}
    interned: dict = {}
    N_list: list = []
    C: list = []
    meta: list = []
    for p in rs.members:
        for m in p.words:
            m = tuple(m)
            n = len(m)
            if not n:
                continue
            tri = tri_cache.get(m)
            if tri is None:
                tri = tri_cache[m] = kernels.triangle_ids(as_codes(m if side == "left" else m[::-1]),
                                                          child, to_id)
            C.append(tri)
            minv = tuple(inverse(m))
            if side == "left":
                shared = [len(common_prefix(u, m)) for u in p.words]
            else:
                shared = [len(common_suffix(u, m)) for u in p.words]
            for s in range(n):
                N = _normalised(p, m, minv, s, side, shared)
                nid = interned.get(N)
                if nid is None:
                    nid = interned[N] = len(N_list)
                    N_list.append(N)
                ctx = m[:s] if side == "left" else m[n - s:]
                meta.append((nid, node_of[ctx], n - s))
    if not meta:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z, z, N_list
    meta_a = np.asarray(meta, dtype=np.int64)
    reps = meta_a[:, 2]
    return (np.concatenate(C), np.repeat(meta_a[:, 0], reps),
            np.repeat(meta_a[:, 1], reps), np.repeat(meta_a[:, 2], reps), N_list)


def _side_candidates(rs: RelSet, side: str, node_of: dict, words_by_id: list, window: float):
    """Per c: (groups needing explicit checks) or None when every group is complete."""
    C, Nn, X, Lm, N_list = _scan_side(rs, side, node_of, rs.alphabet.n_letters)
    if not len(C):
        return {}, N_list
    nX = len(words_by_id)
    nN = len(N_list)
    key = (C * nN + Nn) * nX + X
    order = np.argsort(key, kind="stable")
    key_s = key[order]
    first = np.ones(len(key_s), dtype=bool)
    first[1:] = key_s[1:] != key_s[:-1]
    uc, un, ux = C[order][first], Nn[order][first], X[order][first]
    # longest c-monomial per (c, N)
    cn = C * nN + Nn
    cn_s = cn[order]
    lm_s = Lm[order]
    grp_start = np.ones(len(cn_s), dtype=bool)
    grp_start[1:] = cn_s[1:] != cn_s[:-1]
    gidx = np.flatnonzero(grp_start)
    ell = np.maximum.reduceat(lm_s, gidx)
    g_cn = cn_s[gidx]
    g_c = g_cn // nN
    # distinct triples per (c, N)
    ucn = uc * nN + un
    present = np.searchsorted(ucn, g_cn, side="right") - np.searchsorted(ucn, g_cn, side="left")
    # distinct contexts per c, sorted by length
    xlen = np.fromiter((len(w) for w in words_by_id), dtype=np.int64, count=nX)
    cx = np.unique(uc * nX + ux)
    cx_c = cx // nX
    BIG = int(xlen.max()) + 2
    cl = np.sort(cx_c * BIG + xlen[cx % nX])
    if math.isinf(window):
        bound = np.full(len(g_c), BIG - 1)
    else:
        bound = np.clip(int(window) - ell, -1, BIG - 1)
    cand = (np.searchsorted(cl, g_c * BIG + bound, side="right")
            - np.searchsorted(cl, g_c * BIG, side="left"))
    cand = np.where(bound < 0, 0, cand)
    bad = np.flatnonzero(cand != present)
    todo: dict = {}
    for gi in bad.tolist():
        todo.setdefault(int(g_c[gi]), set()).add(int(g_cn[gi] % nN))
    # context sets for the incomplete c
    out = {}
    if todo:
        lo = np.searchsorted(uc, np.asarray(sorted(todo)), side="left")
        hi = np.searchsorted(uc, np.asarray(sorted(todo)), side="right")
        for cid, a, b in zip(sorted(todo), lo.tolist(), hi.tolist()):
            groups: dict = {}
            ctxs = set()
            for nid, xid in zip(un[a:b].tolist(), ux[a:b].tolist()):
                ctxs.add(words_by_id[xid])
                if nid in todo[cid]:
                    groups.setdefault(N_list[nid], set()).add(words_by_id[xid])
            out[cid] = (groups, ctxs)
    return out, N_list


def small_pieces(rs: RelSet, tau: int = 10, strict: bool = False) -> "PieceTable":
    """Verdict for every word of Mon.

    With ``strict=False`` a transport is only counted as a failure when all
    of its monomials fit inside the transport window (the longest closure
    monomial). For group algebras this recovers the classical pieces; the
    literal reading (``strict=True``) makes every proper subword of a relator
    a piece, because transports that wrap past the relator length always
    leave the finite closure.
    """
    words_by_id = sorted(rs.mon, key=lambda t: (len(t), t))
    node_of = {w: i for i, w in enumerate(words_by_id)}
    window = _window(rs, strict)
    verdicts: dict = {}
    if words_by_id:
        left, _ = _side_candidates(rs, "left", node_of, words_by_id, window)
        right, _ = _side_candidates(rs, "right", node_of, words_by_id, window)
        for cid, c in enumerate(words_by_id):
            if not c:
                verdicts[c] = Verdict.PIECE
                continue
            v = None
            flags = []
            for side, todo in (("left", left), ("right", right)):
                if cid in todo:
                    groups, ctxs = todo[cid]
                    r = _transport_verdict(c, groups, ctxs, side, rs, window)
                    if r is Verdict.PIECE:
                        v = r
                        break
                    flags.append(r)
            if v is None:
                v = Verdict.UNKNOWN if Verdict.UNKNOWN in flags else Verdict.NOT_PIECE
            verdicts[c] = v
    return PieceTable.from_verdicts(verdicts, rs, tau, window, strict)


@dataclass(frozen=True, eq=False)
class PieceTable:
    tau: int
    verdicts: dict
    pieces: frozenset
    unknown: frozenset
    letters: frozenset
    n_letters: int
    window: float = INF
    strict: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_verdicts(cls, verdicts: dict, rs: RelSet, tau: int, window: float = INF,
                      strict: bool = False) -> "PieceTable":
        pieces = {w for w, v in verdicts.items() if v is Verdict.PIECE}
        pieces.add(())
        unknown = frozenset(w for w, v in verdicts.items() if v is Verdict.UNKNOWN)
        letters = frozenset(w for w in rs.mon if len(w) == 1)
        return cls(tau=tau, verdicts=dict(verdicts), pieces=frozenset(pieces), unknown=unknown,
                   letters=letters, n_letters=rs.alphabet.n_letters, window=window, strict=strict)

    @property
    def prime_pieces(self) -> frozenset:
        return self.pieces | self.letters

    @property
    def coarsened(self) -> bool:
        return bool(self.unknown)

    def verdict(self, c: Sequence[int]) -> Verdict:
        c = tuple(c)
        if not c:
            return Verdict.PIECE
        return self.verdicts.get(c, Verdict.NOT_PIECE)

    def counts(self) -> dict:
        out = {v.value: 0 for v in Verdict}
        for v in self.verdicts.values():
            out[v.value] += 1
        return out

    @cached_property
    def _trie(self) -> WordTrie:
        return WordTrie(self.pieces | self.unknown | self.letters, self.n_letters)

    def flags(self, variant: str = "plain", optimistic: bool = False) -> np.ndarray:
        key = (variant, optimistic)
        if key not in self._cache:
            members = set(self.pieces)
            if variant == "prime":
                members |= self.letters
            elif variant != "plain":
                raise ValueError("variant must be 'plain' or 'prime'")
            if optimistic:
                members |= self.unknown
            self._cache[key] = self._trie.flags(members)
        return self._cache[key]

    def measure(self, u: Sequence[int], variant: str = "plain", optimistic: bool = False):
        return lambda_measure(u, self, variant, optimistic)

    def prime_subword_violations(self) -> list:
        """Members of S' with an immediate subword outside S' (empty list: subword-closed)."""
        sp = self.prime_pieces
        bad = []
        for w in sorted(sp, key=lambda t: (len(t), t)):
            if len(w) > 1 and (w[1:] not in sp or w[:-1] not in sp):
                bad.append(w)
        return bad


def lambda_measure(u: Sequence[int], pt: PieceTable, variant: str = "plain",
                   optimistic: bool = False):
    """Fewest nonempty pieces concatenating to ``u`` (INF if impossible; 0 for the empty word).

    ``variant="prime"`` uses S' (pieces plus letters of Mon). Unknown verdicts
    count as non-pieces unless ``optimistic`` is set.
    """
    if not len(u):
        return 0
    codes = as_codes(u)
    r = kernels.min_segments(codes, 0, len(codes), pt._trie.child, pt.flags(variant, optimistic))
    return INF if r < 0 else int(r)


def measure_span(codes: np.ndarray, lo: int, hi: int, pt: PieceTable, variant: str = "plain",
                 optimistic: bool = False):
    r = kernels.min_segments(codes, lo, hi, pt._trie.child, pt.flags(variant, optimistic))
    return INF if r < 0 else int(r)


def lambda_inverse_symmetric(pt: PieceTable, rs: RelSet, variant: str = "prime") -> list:
    """Pairs ``(u, L(u), L(u^-1))`` with both in Mon and differing measures."""
    out = []
    for u in sorted(rs.mon, key=lambda t: (len(t), t)):
        v = tuple(inverse(u))
        if not u or (len(v), v) <= (len(u), u) or v not in rs.mon:
            continue
        a = lambda_measure(u, pt, variant)
        b = lambda_measure(v, pt, variant)
        if a != b:
            out.append((u, a, b))
    return out
