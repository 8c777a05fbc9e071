"""Textual DSL for finite group presentations.

Grammar (whitespace-insensitive between tokens; "#" starts a comment that
runs to the end of the line):

    stanza   := "group" NAME "gens" namelist "rels" relist
    namelist := NAME ("," NAME)*
    relist   := rel ("," rel)*
    rel      := word | word "=" word
    word     := term ("*" term)* | "1"
    term     := NAME ("^" SIGNED_INT)?

"1" denotes the empty word.  A relation written "lhs = rhs" is stored as
the relator lhs * rhs^-1.  NAME is a letter followed by letters/digits,
case-sensitive; the keywords group/gens/rels are reserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

_KEYWORDS = ("group", "gens", "rels")


class ParseError(ValueError):
    """Syntax or validation error, carrying 1-based line/column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Word:
    """Group word in exponent-run form: ((gen_index, exponent), ...).

    A word is freely reduced when no exponent is zero and no two adjacent
    runs share a generator index.  Construction does not reduce; use
    reduce_word / the arithmetic operators, which return reduced results.
    """

    letters: tuple[tuple[int, int], ...] = ()

    def __mul__(self, other: "Word") -> "Word":
        return reduce_word(Word(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not reduce_word(self).letters


def reduce_word(w: Word) -> Word:
    """Free reduction: drop zero exponents, merge adjacent equal-generator runs."""
    out: list[tuple[int, int]] = []
    for g, e in w.letters:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            merged = out[-1][1] + e
            out.pop()
            if merged != 0:
                out.append((g, merged))
        else:
            out.append((g, e))
    return Word(tuple(out))


@dataclass(frozen=True)
class Presentation:
    """Named presentation: generator names plus freely reduced relator words."""

    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def gen_index(self, name: str) -> int:
        return self.generators.index(name)

    def word(self, text: str) -> Word:
        """Parse a single word (e.g. "s*t^-1") in this presentation's generators."""
        toks = _lex(text)
        word, pos = _parse_word(toks, 0, {g: i for i, g in enumerate(self.generators)})
        if pos != len(toks):
            t = toks[pos]
            raise ParseError(f"trailing input {t.value!r}", t.line, t.col)
        return word

    def word_str(self, w: Word) -> str:
        w = reduce_word(w)
        if not w.letters:
            return "1"
        parts = []
        for g, e in w.letters:
            name = self.generators[g]
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def render(self) -> str:
        """Render back to DSL text; re-parsing yields an equal Presentation."""
        gens = ",".join(self.generators)
        rels = ", ".join(self.word_str(r) for r in self.relators) or "1"
        return f"group {self.name} gens {gens} rels {rels}"


@dataclass(frozen=True)
class _Token:
    kind: str  # name | int | punct
    value: str
    line: int
    col: int


def _lex(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r":
            i += 1
            col += 1
        elif c == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif c in ",*^=":
            toks.append(_Token("punct", c, line, col))
            i += 1
            col += 1
        elif c.isalpha():
            start = i
            startcol = col
            while i < n and (text[i].isalnum()):
                i += 1
                col += 1
            toks.append(_Token("name", text[start:i], line, startcol))
        elif c.isdigit() or (c in "+-" and i + 1 < n and text[i + 1].isdigit()):
            start = i
            startcol = col
            i += 1
            col += 1
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            toks.append(_Token("int", text[start:i], line, startcol))
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    return toks


def _expect(toks: list[_Token], pos: int, kind: str, value: str | None = None) -> _Token:
    if pos >= len(toks):
        last = toks[-1] if toks else _Token("punct", "", 1, 1)
        want = value or kind
        raise ParseError(f"unexpected end of input, expected {want!r}", last.line, last.col)
    t = toks[pos]
    if t.kind != kind or (value is not None and t.value != value):
        want = value or kind
        raise ParseError(f"expected {want!r}, got {t.value!r}", t.line, t.col)
    return t


def _parse_word(toks: list[_Token], pos: int, gens: dict[str, int]) -> tuple[Word, int]:
    # "1" denotes the empty word
    if pos < len(toks) and toks[pos].kind == "int":
        if toks[pos].value != "1":
            raise ParseError(f"expected a word, got {toks[pos].value!r}", toks[pos].line, toks[pos].col)
        return Word(), pos + 1
    letters: list[tuple[int, int]] = []
    while True:
        t = _expect(toks, pos, "name")
        if t.value in _KEYWORDS:
            raise ParseError(f"reserved word {t.value!r} in word", t.line, t.col)
        if t.value not in gens:
            raise ParseError(f"unknown generator {t.value!r}", t.line, t.col)
        g = gens[t.value]
        pos += 1
        exp = 1
        if pos < len(toks) and toks[pos].kind == "punct" and toks[pos].value == "^":
            pos += 1
            e = _expect(toks, pos, "int")
            exp = int(e.value)
            pos += 1
        letters.append((g, exp))
        if pos < len(toks) and toks[pos].kind == "punct" and toks[pos].value == "*":
            pos += 1
            continue
        break
    return reduce_word(Word(tuple(letters))), pos


def _parse_stanza(toks: list[_Token], pos: int) -> tuple[Presentation, int]:
    t = _expect(toks, pos, "name", "group")
    pos += 1
    name_tok = _expect(toks, pos, "name")
    if name_tok.value in _KEYWORDS:
        raise ParseError(f"reserved word {name_tok.value!r} as group name", name_tok.line, name_tok.col)
    name = name_tok.value
    pos += 1
    _expect(toks, pos, "name", "gens")
    pos += 1

    gen_names: list[str] = []
    while True:
        t = _expect(toks, pos, "name")
        if t.value in _KEYWORDS:
            raise ParseError(f"reserved word {t.value!r} as generator name", t.line, t.col)
        if t.value in gen_names:
            raise ParseError(f"duplicate generator {t.value!r}", t.line, t.col)
        gen_names.append(t.value)
        pos += 1
        if pos < len(toks) and toks[pos].kind == "punct" and toks[pos].value == ",":
            pos += 1
            continue
        break
    if not gen_names:
        raise ParseError("empty generator list", toks[pos].line, toks[pos].col)

    _expect(toks, pos, "name", "rels")
    pos += 1
    gens = {g: i for i, g in enumerate(gen_names)}
    relators: list[Word] = []
    while True:
        lhs, pos = _parse_word(toks, pos, gens)
        if pos < len(toks) and toks[pos].kind == "punct" and toks[pos].value == "=":
            pos += 1
            rhs, pos = _parse_word(toks, pos, gens)
            rel = lhs * rhs.inverse()
        else:
            rel = lhs
        if rel.letters:  # drop trivial relators like "1" or "a*a^-1"
            relators.append(rel)
        if pos < len(toks) and toks[pos].kind == "punct" and toks[pos].value == ",":
            pos += 1
            continue
        break
    return Presentation(name, tuple(gen_names), tuple(relators)), pos


def iter_presentations(text: str) -> Iterator[Presentation]:
    """Yield every stanza in a DSL document."""
    toks = _lex(text)
    pos = 0
    while pos < len(toks):
        pres, pos = _parse_stanza(toks, pos)
        yield pres


def parse_presentation(text: str) -> Presentation:
    """Parse a document containing exactly one stanza."""
    toks = _lex(text)
    if not toks:
        raise ParseError("empty input", 1, 1)
    pres, pos = _parse_stanza(toks, 0)
    if pos != len(toks):
        t = toks[pos]
        raise ParseError(f"trailing input {t.value!r} after stanza", t.line, t.col)
    return pres
