"""
Free group words, finite group presentations, the presentation DSL and
a conservative Tietze simplifier.

A presentation is written as ``<a, b | a b A B>``.  Relators are
juxtaposed generator names with optional ``^k`` exponents; an
uppercase letter is the inverse of the lowercase generator of the same
name, and ``a^-1`` is accepted as well.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Syllable = tuple[int, int]


def _reduce(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for g, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e:
                out.append((g, e))
        else:
            out.append((g, e))
    return tuple(out)


class Word:
    """A freely reduced word, stored as syllables ``(generator, exponent)``."""

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: Iterable[Syllable] = ()):
        self.syllables = _reduce(syllables)
        self._hash = hash(self.syllables)

    @classmethod
    def letter(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, e),))

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        """Build from signed 1-based letters: ``k`` is ``x_{k-1}``, ``-k`` its inverse."""
        return cls((abs(k) - 1, 1 if k > 0 else -1) for k in letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.syllables))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.syllables * abs(k))

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        return self._hash

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __repr__(self):
        return f"Word({list(self.syllables)!r})"

    def letters(self) -> list[tuple[int, int]]:
        """Expanded letters as ``(generator, +1 or -1)``."""
        return [(g, 1 if e > 0 else -1) for g, e in self.syllables for _ in range(abs(e))]

    def generators(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def exponent_sums(self, ngens: int) -> list[int]:
        v = [0] * ngens
        for g, e in self.syllables:
            v[g] += e
        return v

    def cyclically_reduced(self) -> "Word":
        s = list(self.syllables)
        while len(s) >= 2 and s[0][0] == s[-1][0]:
            g, e = s[0][0], s[0][1] + s[-1][1]
            s = s[1:-1]
            if e:
                s = [(g, e)] + s
        return Word(s)

    def substitute(self, images: dict[int, "Word"]) -> "Word":
        out: list[Syllable] = []
        for g, e in self.syllables:
            if g in images:
                out.extend((images[g] ** e).syllables)
            else:
                out.append((g, e))
        return Word(out)

    def reindex(self, mapping: dict[int, int]) -> "Word":
        return Word((mapping[g], e) for g, e in self.syllables)


def multiply(u: Word, v: Word) -> Word:
    return u * v


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        n = len(self.generators)
        reduced = []
        for r in self.relators:
            if any(g < 0 or g >= n for g in r.generators()):
                raise ValueError(f"relator {r!r} uses an undeclared generator")
            reduced.append(r.cyclically_reduced())
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(reduced))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def exponent_matrix(self) -> list[list[int]]:
        """Relator-by-generator matrix of exponent sums."""
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def free_product(self, other: "GroupPresentation") -> "GroupPresentation":
        names = list(self.generators)
        for name in other.generators:
            new = name
            k = 1
            while new in names:
                new = f"{name}{k}"
                k += 1
            names.append(new)
        shift = {g: g + self.ngens for g in range(other.ngens)}
        return GroupPresentation(
            tuple(names), self.relators + tuple(r.reindex(shift) for r in other.relators)
        )

    def __str__(self):
        return render(self)


# --------------------------------------------------------------------------
# DSL

class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<exp>\^\s*[-+]?\s*\d+)|(?P<one>\b1\b)|(?P<punct>[<>|,*.])"
)


def _tokens(text: str):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind not in ("ws", "comment"):
            yield kind, m.group(), line, col
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    yield "end", "", line, pos - line_start + 1


def _letter_table(names: Sequence[str]) -> dict[str, tuple[int, int]]:
    table = {name: (i, 1) for i, name in enumerate(names)}
    for i, name in enumerate(names):
        inv = name.upper()
        if name.islower() and inv not in table:
            table[inv] = (i, -1)
    return table


def _split_identifier(tok, table, line, col):
    """Greedy longest-prefix split of a juxtaposed identifier into letters."""
    out = []
    i = 0
    while i < len(tok):
        for j in range(len(tok), i, -1):
            if tok[i:j] in table:
                out.append(table[tok[i:j]])
                i = j
                break
        else:
            raise PresentationSyntaxError(f"undeclared generator in {tok!r}", line, col + i)
    return out


def parse_presentation(text: str) -> GroupPresentation:
    toks = list(_tokens(text))
    k = 0

    def peek():
        return toks[k]

    def expect(value):
        nonlocal k
        kind, val, line, col = toks[k]
        if val != value:
            raise PresentationSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", line, col)
        k += 1

    expect("<")
    names: list[str] = []
    while peek()[1] != "|":
        kind, val, line, col = peek()
        if kind != "ident":
            raise PresentationSyntaxError(f"expected generator name, found {val or 'end of input'!r}", line, col)
        if val in names:
            raise PresentationSyntaxError(f"duplicate generator {val!r}", line, col)
        names.append(val)
        k += 1
        if peek()[1] == ",":
            k += 1
        elif peek()[1] != "|":
            kind, val, line, col = peek()
            raise PresentationSyntaxError(f"expected ',' or '|', found {val or 'end of input'!r}", line, col)
    if not names:
        _, _, line, col = peek()
        raise PresentationSyntaxError("empty generator list", line, col)
    expect("|")
    table = _letter_table(names)

    relators: list[Word] = []
    current: list[Syllable] = []
    started = False
    while True:
        kind, val, line, col = peek()
        if kind == "end":
            raise PresentationSyntaxError("missing closing '>'", line, col)
        k += 1
        if val in (">", ","):
            if current or started:
                relators.append(Word(current))
            elif val == ",":
                raise PresentationSyntaxError("empty relator", line, col)
            current, started = [], False
            if val == ">":
                break
        elif kind == "ident":
            current.extend(_split_identifier(val, table, line, col))
            started = True
        elif kind == "one":
            started = True
        elif kind == "exp":
            if not current:
                raise PresentationSyntaxError("exponent without a letter", line, col)
            power = int(re.sub(r"[\s^]", "", val))
            g, e = current.pop()
            current.append((g, e * power))
        elif val in ("*", "."):
            continue
        else:
            raise PresentationSyntaxError(f"unexpected {val!r}", line, col)
    kind, val, line, col = peek()
    if kind != "end":
        raise PresentationSyntaxError(f"trailing input {val!r}", line, col)
    return GroupPresentation(tuple(names), tuple(relators))


def render_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    table = _letter_table(names)
    parts = []
    for g, e in w.syllables:
        name = names[g]
        if e < 0 and name.upper() in table and table[name.upper()] == (g, -1):
            parts.append(name.upper() + (f"^{-e}" if e < -1 else ""))
        elif e == 1:
            parts.append(name)
        else:
            parts.append(f"{name}^{e}")
    return " ".join(parts)


def render(p: GroupPresentation) -> str:
    rels = ", ".join(render_word(r, p.generators) for r in p.relators)
    return f"<{', '.join(p.generators)} | {rels}>"


# --------------------------------------------------------------------------
# Tietze moves

def tietze_simplify(p: GroupPresentation) -> GroupPresentation:
    """Drop trivial relators and eliminate generators killed or identified
    by relators of length one or two.  No move lengthens a relator."""
    names = list(p.generators)
    alive = list(range(len(names)))
    rels = [r.cyclically_reduced() for r in p.relators]
    changed = True
    while changed:
        changed = False
        rels = [r for r in rels if r]
        seen = set()
        unique = []
        for r in rels:
            key = r.syllables
            if key in seen or r.inverse().cyclically_reduced().syllables in seen:
                changed = True
                continue
            seen.add(key)
            unique.append(r)
        rels = unique
        for idx, r in enumerate(rels):
            letters = r.letters()
            target = None
            if len(letters) == 1:
                target = (letters[0][0], Word())
            elif len(letters) == 2 and letters[0][0] != letters[1][0]:
                # x^a y^b = 1  =>  x = y^(-b*a)
                (x, a), (y, b) = sorted(letters, reverse=True)
                target = (x, Word.letter(y, -b * a))
            if target is None:
                continue
            g, image = target
            rels = [s.substitute({g: image}).cyclically_reduced()
                    for j, s in enumerate(rels) if j != idx]
            alive.remove(g)
            changed = True
            break
    mapping = {g: i for i, g in enumerate(alive)}
    return GroupPresentation(
        tuple(names[g] for g in alive), tuple(r.reindex(mapping) for r in rels)
    )
