"""Reduced words of a free group of rank >= 2.

Letters are encoded as small integers: generator ``g`` is ``2*g`` and its
inverse is ``2*g + 1``, so inversion is ``code ^ 1`` and the natural integer
order is the fixed letter order ``x0 < x0^-1 < x1 < x1^-1 < ...`` used for
every deglex comparison in the package.

A :class:`Word` is a tuple of such codes that is always freely reduced.
Slicing a ``Word`` yields a plain tuple; since subwords of reduced words are
reduced, the hot paths work on plain tuples and only wrap results at the API
boundary.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Alphabet", "Letter", "Word", "WordSyntaxError", "reduce", "mul", "inverse",
    "cyclic_reduce", "is_cyclically_reduced", "is_proper_power",
    "common_prefix", "common_suffix", "deglex_key", "power", "concat",
]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class Letter(NamedTuple):
    generator: int
    sign: int

    @property
    def code(self) -> int:
        return 2 * self.generator + (0 if self.sign > 0 else 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code >> 1, -1 if code & 1 else 1)

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)


def _as_code(x) -> int:
    return x.code if isinstance(x, Letter) else int(x)


def _reduce_codes(codes: Iterable[int]) -> tuple:
    stack: list[int] = []
    for c in codes:
        if stack and stack[-1] == c ^ 1:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


class Word(tuple):
    """An immutable, freely reduced word (tuple of letter codes)."""

    __slots__ = ()

    def __new__(cls, letters: Iterable = ()):
        return tuple.__new__(cls, _reduce_codes(_as_code(x) for x in letters))

    @classmethod
    def _trusted(cls, codes) -> "Word":
        # caller guarantees ``codes`` is reduced
        return tuple.__new__(cls, codes)

    @property
    def letters(self) -> tuple:
        return tuple(Letter.from_code(c) for c in self)

    def __mul__(self, other):
        return mul(self, other)[0]

    def __invert__(self) -> "Word":
        return inverse(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __repr__(self) -> str:
        return f"Word({tuple(self)!r})"


EMPTY = Word._trusted(())


def reduce(raw: Iterable) -> Word:
    """Free reduction of a sequence of letters (``Letter`` or int codes)."""
    return Word(raw)


def mul(a: Sequence[int], b: Sequence[int]) -> tuple[Word, int]:
    """Product of reduced words and the number of letters cancelled on each side."""
    n = min(len(a), len(b))
    k = 0
    la = len(a)
    while k < n and a[la - 1 - k] == b[k] ^ 1:
        k += 1
    return Word._trusted(tuple(a[: la - k]) + tuple(b[k:])), k


def cancel_len(a: Sequence[int], b: Sequence[int]) -> int:
    n = min(len(a), len(b))
    k = 0
    la = len(a)
    while k < n and a[la - 1 - k] == b[k] ^ 1:
        k += 1
    return k


def concat(*words: Sequence[int]) -> Word:
    """Concatenate and reduce."""
    out: tuple = ()
    for w in words:
        out = mul(out, w)[0]
    return Word._trusted(out)


def inverse(a: Sequence[int]) -> Word:
    return Word._trusted(tuple(c ^ 1 for c in reversed(a)))


def power(a: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(inverse(a), -n)
    core, conj = cyclic_reduce(a)
    return Word._trusted(tuple(conj) + tuple(core) * n + tuple(inverse(conj))) if n else EMPTY


def is_cyclically_reduced(a: Sequence[int]) -> bool:
    return len(a) < 2 or a[0] != a[-1] ^ 1


def cyclic_reduce(a: Sequence[int]) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``a = conjugator * core * conjugator^-1``."""
    i, j = 0, len(a) - 1
    while i < j and a[i] == a[j] ^ 1:
        i += 1
        j -= 1
    return Word._trusted(tuple(a[i: j + 1])), Word._trusted(tuple(a[:i]))


def is_proper_power(a: Sequence[int]) -> tuple[Word, int] | None:
    """Primitive root and exponent of a cyclically reduced word, or None.

    Raises ValueError for empty or non-cyclically-reduced input.
    """
    n = len(a)
    if n == 0 or not is_cyclically_reduced(a):
        raise ValueError("is_proper_power needs a non-empty cyclically reduced word")
    t = tuple(a)
    # smallest period dividing n, via the prefix function
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and t[i] != t[k]:
            k = fail[k - 1]
        if t[i] == t[k]:
            k += 1
        fail[i] = k
    period = n - fail[-1]
    if period < n and n % period == 0:
        return Word._trusted(t[:period]), n // period
    return None


def common_prefix(a: Sequence[int], b: Sequence[int]) -> Word:
    n = min(len(a), len(b))
    k = 0
    while k < n and a[k] == b[k]:
        k += 1
    return Word._trusted(tuple(a[:k]))


def common_suffix(a: Sequence[int], b: Sequence[int]) -> Word:
    n = min(len(a), len(b))
    k = 0
    while k < n and a[len(a) - 1 - k] == b[len(b) - 1 - k]:
        k += 1
    return Word._trusted(tuple(a[len(a) - k:]))


def deglex_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(w))


class Alphabet:
    """Generator names and the text syntax for words.

    Each generator is a single ASCII letter. An inverse is written ``x^-1``
    or, when the uppercase form is not itself a generator, as ``X``.
    ``x^k`` with an integer ``k`` is accepted as shorthand for repetition.
    ``1`` is the empty word.
    """

    def __init__(self, names: Sequence[str] = ("x", "y")):
        names = tuple(names)
        if len(names) < 2:
            raise ValueError("rank must be at least 2 (the free group must be non-cyclic)")
        for n in names:
            if len(n) != 1 or not n.isascii() or not n.isalpha():
                raise ValueError(f"generator name must be a single ASCII letter: {n!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._alias = {}
        for i, n in enumerate(names):
            alt = n.swapcase()
            if alt not in self._index:
                self._alias[alt] = i

    @classmethod
    def default(cls, rank: int) -> "Alphabet":
        base = "xyzwuvabcdefghijklmnopqrst"
        if rank > len(base):
            raise ValueError(f"no default names for rank {rank}")
        return cls(tuple(base[:rank]))

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def n_letters(self) -> int:
        return 2 * len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({''.join(self.names)!r})"

    def letter_name(self, code: int) -> str:
        g = code >> 1
        name = self.names[g]
        if not code & 1:
            return name
        alt = name.swapcase()
        return alt if self._alias.get(alt) == g else name + "^-1"

    def format(self, w: Sequence[int]) -> str:
        return "".join(self.letter_name(c) for c in w) if len(w) else "1"

    def parse(self, text: str, offset: int = 0) -> Word:
        s = text.strip()
        offset += len(text) - len(text.lstrip())
        if s == "1":
            return EMPTY
        if not s:
            raise WordSyntaxError("empty word text (use 1 for the empty word)", offset + 1)
        out: list[int] = []
        i = 0
        while i < len(s):
            ch = s[i]
            if ch.isspace():
                i += 1
                continue
            if ch in self._index:
                code = 2 * self._index[ch]
            elif ch in self._alias:
                code = 2 * self._alias[ch] + 1
            else:
                raise WordSyntaxError(f"unknown generator {ch!r}", offset + i + 1)
            i += 1
            exp = 1
            if i < len(s) and s[i] == "^":
                j = i + 1
                if j < len(s) and s[j] in "+-":
                    j += 1
                k = j
                while k < len(s) and s[k].isdigit():
                    k += 1
                if k == j:
                    raise WordSyntaxError("exponent expected after '^'", offset + i + 1)
                exp = int(s[i + 1:k])
                i = k
            if exp < 0:
                code ^= 1
                exp = -exp
            out.extend([code] * exp)
        return Word(out)
