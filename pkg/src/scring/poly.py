"""Coefficient fields and finite linear combinations of reduced words."""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .words import EMPTY, Alphabet, Word, WordSyntaxError, inverse, mul

__all__ = ["Field", "Poly", "PolySyntaxError", "poly_add", "poly_scale",
           "word_poly_mul", "monomials", "parse_poly", "format_poly"]


class Field:
    """The rationals (``p == 0``) or the prime field GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and (p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1))):
            raise ValueError(f"GF({p}) needs a prime modulus")
        self.p = p

    @classmethod
    def parse(cls, spec: str) -> "Field":
        s = spec.strip().replace(" ", "")
        if s in ("Q", "QQ"):
            return cls(0)
        m = re.fullmatch(r"GF\((\d+)\)", s)
        if not m:
            raise ValueError(f"field must be Q or GF(p), got {spec!r}")
        return cls(int(m.group(1)))

    def __repr__(self):
        return "Q" if not self.p else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def __call__(self, value) -> int | Fraction:
        if self.p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def nonzero_elements(self, bound: int = 3) -> list:
        """Enumeration space for coefficients.

        Every nonzero residue for GF(p); for Q all fractions ``±n/d`` with
        ``1 <= n, d <= bound``.
        """
        if self.p:
            return list(range(1, self.p))
        vals = sorted({Fraction(n, d) for n in range(1, bound + 1) for d in range(1, bound + 1)})
        return vals + [-v for v in vals]

    def format(self, a) -> str:
        return str(a)


def _term_key(item):
    w = item[0]
    return (len(w), w)


def _sorted_terms(items) -> tuple:
    # descending deglex == ascending (len, word) reversed; words are distinct
    return tuple(sorted(items, key=_term_key, reverse=True))


class Poly:
    """Immutable polynomial: terms sorted by descending deglex, no zero coefficients."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: Field, terms: Mapping | Iterable = ()):
        self.field = field
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = w if isinstance(w, Word) else Word(w)
            c = field(c)
            acc[w] = field.add(acc[w], c) if w in acc else c
        self.terms = _sorted_terms((w, c) for w, c in acc.items() if c)
        self._hash = None

    @classmethod
    def _trusted(cls, field: Field, terms: tuple) -> "Poly":
        p = object.__new__(cls)
        p.field = field
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, field: Field, w, coef=1) -> "Poly":
        return cls(field, [(w, coef)])

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __repr__(self):
        return f"Poly({self.field!r}, {list(self.terms)!r})"

    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return poly_add(self, poly_scale(self.field(-1), other))

    def __neg__(self) -> "Poly":
        return poly_scale(self.field(-1), self)

    def coefficient(self, w):
        for u, c in self.terms:
            if u == w:
                return c
        return self.field.zero()

    @property
    def words(self) -> tuple:
        return tuple(w for w, _ in self.terms)

    @property
    def max_length(self) -> int:
        return max((len(w) for w, _ in self.terms), default=0)

    @property
    def leading(self):
        return self.terms[0] if self.terms else None

    def canonical(self) -> "Poly":
        """Scalar multiple with leading coefficient 1 (identity on zero)."""
        if not self.terms:
            return self
        lead = self.terms[0][1]
        if lead == 1:
            return self
        f = self.field
        s = f.inv(lead)
        return Poly._trusted(f, tuple((w, f.mul(s, c)) for w, c in self.terms))


def poly_add(p: Poly, q: Poly) -> Poly:
    if p.field != q.field:
        raise ValueError("polynomials over different fields")
    return Poly(p.field, itertools.chain(p.terms, q.terms))


def poly_scale(c, p: Poly) -> Poly:
    f = p.field
    c = f(c)
    if not c:
        return Poly._trusted(f, ())
    return Poly._trusted(f, tuple((w, f.mul(c, a)) for w, a in p.terms))


def word_poly_mul(w: Sequence[int], p: Poly, side: str = "left") -> Poly:
    """``w * p`` (side="left") or ``p * w`` (side="right"), with free reduction."""
    if side == "left":
        items = [(mul(w, u)[0], c) for u, c in p.terms]
    elif side == "right":
        items = [(mul(u, w)[0], c) for u, c in p.terms]
    else:
        raise ValueError("side must be 'left' or 'right'")
    # multiplication by a group element permutes the basis: no merging needed
    return Poly._trusted(p.field, _sorted_terms(items))


def sandwich(left: Sequence[int], p: Poly, right: Sequence[int]) -> Poly:
    items = [(mul(mul(left, u)[0], right)[0], c) for u, c in p.terms]
    return Poly._trusted(p.field, _sorted_terms(items))


def monomials(p: Poly) -> frozenset:
    return frozenset(w for w, _ in p.terms)


class PolySyntaxError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


_COEF = re.compile(r"\s*(\d+)(?:\s*/\s*(\d+))?\s*")


def _split_terms(text: str) -> list[tuple[int, int, str]]:
    """Split on top-level +/- (a '-' right after '^' belongs to an exponent)."""
    out = []
    sign, start = 1, 0
    for i, ch in enumerate(text):
        if ch in "+-" and not (i > 0 and text[i - 1] == "^"):
            chunk = text[start:i]
            if chunk.strip():
                out.append((sign, start, chunk))
            elif start > 0:
                # only a leading sign may stand without a term before it
                raise PolySyntaxError("missing term between operators", i + 1)
            sign = -1 if ch == "-" else 1
            start = i + 1
    chunk = text[start:]
    if not chunk.strip():
        raise PolySyntaxError("dangling operator or empty polynomial", len(text) + 1)
    out.append((sign, start, chunk))
    return out


def parse_poly(text: str, alphabet: Alphabet, field: Field, offset: int = 0) -> Poly:
    """Parse ``2*xyX + 3*z - 1``. Integer (or n/d) literals map into the field."""
    items = []
    try:
        terms = _split_terms(text)
    except PolySyntaxError as e:
        raise PolySyntaxError(str(e).split(" (column")[0], e.column + offset) from None
    for sign, start, chunk in terms:
        col = offset + start
        body = chunk
        coef: int | Fraction = 1
        if "*" in body:
            head, _, body = body.partition("*")
            m = _COEF.fullmatch(head)
            if not m:
                raise PolySyntaxError(f"bad coefficient {head.strip()!r}", col + 1)
            coef = Fraction(int(m.group(1)), int(m.group(2) or 1))
            col += len(head) + 1
            word_text = body
        else:
            m = _COEF.fullmatch(body)
            if m:
                # a bare number is a multiple of the empty word
                coef = Fraction(int(m.group(1)), int(m.group(2) or 1))
                items.append((EMPTY, sign * coef))
                continue
            word_text = body
        if isinstance(coef, Fraction) and coef.denominator != 1 and field.p and coef.denominator % field.p == 0:
            raise PolySyntaxError(f"coefficient {coef} undefined in {field!r}", col + 1)
        try:
            w = alphabet.parse(word_text, offset=col)
        except WordSyntaxError as e:
            raise PolySyntaxError(str(e).split(" (column")[0], e.column) from None
        items.append((w, sign * coef))
    return Poly(field, items)


def format_poly(p: Poly, alphabet: Alphabet) -> str:
    if not p.terms:
        return "0"
    f = p.field
    parts = []
    for w, c in p.terms:
        if f.p:
            neg = False
            mag = c
        else:
            neg = c < 0
            mag = -c if neg else c
        word = alphabet.format(w)
        if not len(w):
            body = str(mag)
        elif mag == 1:
            body = word
        else:
            body = f"{mag}*{word}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
