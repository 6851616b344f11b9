"""
Fox free derivatives and the Jacobian presenting H_1(X, x_0) over the
group ring of the torsion-free abelianization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .abelian import AbelianizationData
from .laurent import LaurentPoly, default_names
from .words import GroupPresentation, Word


class GroupRingElt:
    """Finite integer combination of free-group words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, int] = {}
        for w, c in items:
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def word(cls, w: Word, c: int = 1) -> "GroupRingElt":
        return cls({w: c})

    @classmethod
    def one(cls) -> "GroupRingElt":
        return cls({Word(): 1})

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        return GroupRingElt(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return GroupRingElt({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElt({w: c * other for w, c in self.terms.items()})
        return GroupRingElt(
            (u * v, a * b) for u, a in self.terms.items() for v, b in other.terms.items()
        )

    def left_mul(self, w: Word) -> "GroupRingElt":
        return GroupRingElt((w * u, c) for u, c in self.terms.items())

    def __eq__(self, other):
        return isinstance(other, GroupRingElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GroupRingElt({self.terms!r})"

    def pushforward(self, ab: AbelianizationData, ngens: int) -> LaurentPoly:
        """Image in Z[ab(G)] as a Laurent polynomial in the free basis."""
        out: dict = {}
        for w, c in self.terms.items():
            e = ab.image(w.exponent_sums(ngens))
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, ab.mu)


def fox_derivative(w: Word, i: int) -> GroupRingElt:
    """d w / d x_i, with d(uv) = du + u dv and d(x^k) = 1 + x + ... + x^(k-1)."""
    terms: dict[Word, int] = {}
    prefix: list = []
    for g, e in w.syllables:
        if g == i:
            if e > 0:
                for k in range(e):
                    p = Word(prefix + [(g, k)])
                    terms[p] = terms.get(p, 0) + 1
            else:
                for k in range(1, -e + 1):
                    p = Word(prefix + [(g, -k)])
                    terms[p] = terms.get(p, 0) - 1
        prefix.append((g, e))
    return GroupRingElt(terms)


def involution(e: GroupRingElt) -> GroupRingElt:
    """sum m_i f_i  ->  sum m_i f_i^{-1}."""
    return GroupRingElt((w.inverse(), c) for w, c in e.terms.items())


@dataclass(frozen=True)
class JacobianMatrix:
    """Generator-by-relator matrix over Z[ab(G)]; the module it presents
    is the cokernel of the map from relators to generators."""

    entries: tuple[tuple[LaurentPoly, ...], ...]
    nvars: int
    row_names: tuple[str, ...]
    col_names: tuple[str, ...]
    var_names: tuple[str, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_names), len(self.col_names)

    def rows(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self.entries]

    def to_tsv(self) -> str:
        lines = ["\t".join(["gen\\rel"] + list(self.col_names))]
        for name, row in zip(self.row_names, self.entries):
            lines.append("\t".join([name] + [p.to_text(self.var_names) for p in row]))
        return "\n".join(lines) + "\n"


def jacobian(p: GroupPresentation, ab: AbelianizationData) -> JacobianMatrix:
    n = p.ngens
    rows = []
    for i in range(n):
        row = []
        for r in p.relators:
            d = involution(fox_derivative(r, i))
            row.append(d.pushforward(ab, n))
        rows.append(tuple(row))
    names = tuple(ab.basis_names) if ab.basis_names else tuple(default_names(ab.mu))
    return JacobianMatrix(
        entries=tuple(rows),
        nvars=ab.mu,
        row_names=tuple(p.generators),
        col_names=tuple(f"r{j + 1}" for j in range(len(p.relators))),
        var_names=names,
    )


def parse_tsv(text: str, var_names: Sequence[str]) -> tuple[list[list[LaurentPoly]], list[str], list[str]]:
    """Read the TSV dump written by ``JacobianMatrix.to_tsv``."""
    from .laurent import parse_laurent

    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    header = lines[0].split("\t")
    cols = header[1:]
    rows, names = [], []
    for ln in lines[1:]:
        cells = ln.split("\t")
        names.append(cells[0])
        rows.append([parse_laurent(c, var_names) for c in cells[1:]])
    return rows, names, cols
