"""Presentation files and the bundled example corpus.

A presentation is line-oriented text with four sections::

    # comments run to the end of the line
    [alphabet]
    rank = 2
    names = x y
    [field]
    GF(2)
    [constants]
    tau = 10
    bound = 5
    [relations]
    xyx + y

``names`` is optional (defaults follow ``Alphabet.default``). The field line
may also be written ``field = Q``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .poly import Field, Poly, PolySyntaxError, format_poly, parse_poly
from .relset import RelSet, close
from .words import Alphabet, WordSyntaxError

__all__ = ["Presentation", "PresentationError", "parse_presentation", "load_presentation",
           "bundled_examples", "bundled_path", "three_term_presentation", "BUNDLED"]

SECTIONS = ("alphabet", "field", "constants", "relations")
BUNDLED = ("c50", "toy", "c7", "overlap", "commutator", "monfree", "threeterm", "sc_violation")


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str = "<string>"):
        self.line, self.column, self.source = line, column, source
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


@dataclass
class Presentation:
    alphabet: Alphabet
    field: Field
    tau: int
    bound: int
    relations: list
    source: str = "<string>"
    lines: list = field(default_factory=list, repr=False)

    def close(self, bound: int | None = None, cap: int | None = None) -> RelSet:
        kw = {} if cap is None else {"cap": cap}
        return close(self.relations, self.bound if bound is None else bound, self.alphabet, **kw)

    def to_text(self) -> str:
        out = ["[alphabet]", f"rank = {self.alphabet.rank}",
               "names = " + " ".join(self.alphabet.names), "[field]", repr(self.field),
               "[constants]", f"tau = {self.tau}", f"bound = {self.bound}", "[relations]"]
        out += [format_poly(p, self.alphabet) for p in self.relations]
        return "\n".join(out) + "\n"


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_presentation(text: str, source: str = "<string>") -> Presentation:
    section = None
    seen: dict = {}
    alpha: dict = {}
    field_spec = None
    consts: dict = {}
    rel_lines: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if body.startswith("["):
            if not body.endswith("]"):
                raise PresentationError("unterminated section header", lineno, col, source)
            name = body[1:-1].strip().lower()
            if name not in SECTIONS:
                raise PresentationError(f"unknown section [{name}]", lineno, col + 1, source)
            if name in seen:
                raise PresentationError(f"duplicate section [{name}]", lineno, col + 1, source)
            seen[name] = lineno
            section = name
            continue
        if section is None:
            raise PresentationError("content before the first section", lineno, col, source)
        if section == "relations":
            rel_lines.append((lineno, col - 1, body))
            continue
        if section == "field" and "=" not in body:
            if field_spec is not None:
                raise PresentationError("field given twice", lineno, col, source)
            field_spec = (lineno, col, body)
            continue
        key, eq, value = body.partition("=")
        if not eq:
            raise PresentationError("expected 'key = value'", lineno, col, source)
        key, value = key.strip().lower(), value.strip()
        after = line[line.index("=") + 1:]
        vcol = line.index("=") + 2 + len(after) - len(after.lstrip())
        if section == "field":
            if key != "field":
                raise PresentationError(f"unknown field key {key!r}", lineno, col, source)
            field_spec = (lineno, vcol, value)
        elif section == "alphabet":
            if key not in ("rank", "names"):
                raise PresentationError(f"unknown alphabet key {key!r}", lineno, col, source)
            alpha[key] = (lineno, vcol, value)
        else:
            if key not in ("tau", "bound"):
                raise PresentationError(f"unknown constant {key!r}", lineno, col, source)
            try:
                consts[key] = int(value)
            except ValueError:
                raise PresentationError(f"{key} must be an integer, got {value!r}", lineno, vcol, source) from None
    for name in SECTIONS:
        if name not in seen:
            raise PresentationError(f"missing section [{name}]", None, None, source)
    alphabet = _build_alphabet(alpha, source)
    if field_spec is None:
        raise PresentationError("missing field specification", seen["field"], None, source)
    try:
        fld = Field.parse(field_spec[2])
    except ValueError as e:
        raise PresentationError(str(e), field_spec[0], field_spec[1], source) from None
    for key in ("tau", "bound"):
        if key not in consts:
            raise PresentationError(f"missing constant {key}", seen["constants"], None, source)
    relations = []
    for lineno, offset, body in rel_lines:
        try:
            p = parse_poly(body, alphabet, fld, offset=offset)
        except (PolySyntaxError, WordSyntaxError) as e:
            raise PresentationError(str(e).split(" (column")[0], lineno, getattr(e, "column", None), source) from None
        if not p:
            raise PresentationError("relation is zero", lineno, offset + 1, source)
        relations.append(p)
    if not relations:
        raise PresentationError("no relations", seen["relations"], None, source)
    return Presentation(alphabet=alphabet, field=fld, tau=consts["tau"], bound=consts["bound"],
                        relations=relations, source=source, lines=[ln for ln, _, _ in rel_lines])


def _build_alphabet(alpha: dict, source: str) -> Alphabet:
    rank = None
    if "rank" in alpha:
        ln, col, v = alpha["rank"]
        try:
            rank = int(v)
        except ValueError:
            raise PresentationError(f"rank must be an integer, got {v!r}", ln, col, source) from None
    if "names" in alpha:
        ln, col, v = alpha["names"]
        names = v.replace(",", " ").split()
        if rank is not None and len(names) != rank:
            raise PresentationError(f"{len(names)} names for rank {rank}", ln, col, source)
        try:
            return Alphabet(names)
        except ValueError as e:
            raise PresentationError(str(e), ln, col, source) from None
    if rank is None:
        raise PresentationError("alphabet needs a rank or names", None, None, source)
    try:
        return Alphabet.default(rank)
    except ValueError as e:
        raise PresentationError(str(e), alpha["rank"][0], alpha["rank"][1], source) from None


def load_presentation(path: str | Path) -> Presentation:
    """Load a file; ``bundled:NAME`` loads a presentation shipped with the package."""
    s = str(path)
    if s.startswith("bundled:"):
        name = s.split(":", 1)[1]
        return parse_presentation(bundled_path(name).read_text(encoding="utf-8"), source=s)
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise PresentationError(f"cannot read presentation: {e.strerror}", None, None, s) from None
    return parse_presentation(text, source=s)


def bundled_path(name: str):
    name = name[:-4] if name.endswith(".scr") else name
    if name not in BUNDLED:
        raise PresentationError(f"no bundled example {name!r}; choose from {', '.join(BUNDLED)}")
    return resources.files("scring").joinpath("data", f"{name}.scr")


def bundled_examples() -> dict:
    return {name: load_presentation(f"bundled:{name}") for name in BUNDLED}


def three_term_presentation(alpha: int = 1, beta: int = 2, w: str = "xY", field_spec: str = "Q",
                      tau: int = 10, bound: int | None = None) -> Presentation:
    """The relation ``1 + w - v^-1`` with ``v = y x^alpha y x^(alpha+1) ... y x^beta``."""
    if alpha < 1 or beta < alpha:
        raise ValueError("need 1 <= alpha <= beta")
    v = "".join("y" + "x" * k for k in range(alpha, beta + 1))
    alphabet = Alphabet(("x", "y"))
    vinv = alphabet.format(~alphabet.parse(v))
    bound = len(v) + 1 if bound is None else bound
    text = (f"[alphabet]\nnames = x y\n[field]\n{field_spec}\n[constants]\ntau = {tau}\n"
            f"bound = {bound}\n[relations]\n1 + {w} - {vinv}\n")
    return parse_presentation(text, source=f"three_term(alpha={alpha}, beta={beta})")
