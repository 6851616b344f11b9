"""
Torsion-free abelianization of a presented group and integral
cohomology classes on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from functools import reduce
from typing import Sequence

from .words import GroupPresentation

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def smith_normal_form(m: Matrix, nrows: int | None = None, ncols: int | None = None):
    """Integer Smith form ``P @ m @ Q = D``.

    Returns ``(D, P, Q)`` with ``P``, ``Q`` unimodular and ``D`` diagonal
    with nonnegative entries d_1 | d_2 | ...  Pivots are chosen by minimal
    absolute value.
    """
    rows = nrows if nrows is not None else len(m)
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    d = [list(r) for r in m] if m else [[0] * cols for _ in range(rows)]
    p = identity(rows)
    q = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in q:
            r[i], r[j] = r[j], r[i]

    def add_row(target, source, c):
        d[target] = [x + c * y for x, y in zip(d[target], d[source])]
        p[target] = [x + c * y for x, y in zip(p[target], p[source])]

    def add_col(target, source, c):
        for r in d:
            r[target] += c * r[source]
        for r in q:
            r[target] += c * r[source]

    k = 0
    while k < min(rows, cols):
        nonzero = [(abs(d[i][j]), i, j) for i in range(k, rows) for j in range(k, cols) if d[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(k, i)
        swap_cols(k, j)
        while True:
            done = True
            for i in range(k + 1, rows):
                if d[i][k]:
                    add_row(i, k, -(d[i][k] // d[k][k]))
                    if d[i][k]:
                        done = False
            for j in range(k + 1, cols):
                if d[k][j]:
                    add_col(j, k, -(d[k][j] // d[k][k]))
                    if d[k][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = [(i, j) for i in range(k + 1, rows) for j in range(k + 1, cols)
                       if d[i][j] % d[k][k]]
                if not bad:
                    break
                add_row(k, bad[0][0], 1)
                continue
            cands = [(abs(d[i][k]), i, k) for i in range(k, rows) if d[i][k]]
            cands += [(abs(d[k][j]), k, j) for j in range(k, cols) if d[k][j]]
            _, i, j = min(cands)
            swap_rows(k, i)
            swap_cols(k, j)
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            p[k] = [-x for x in p[k]]
        k += 1
    return d, p, q


def unimodular_inverse(u: Matrix) -> Matrix:
    """Inverse of an integer matrix with determinant ±1 (exact)."""
    from fractions import Fraction

    n = len(u)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(u)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                g = a[r][c]
                a[r] = [x - g * y for x, y in zip(a[r], a[c])]
    inv = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def determinant(m: Matrix) -> int:
    from fractions import Fraction

    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


@dataclass(frozen=True)
class AbelianizationData:
    """``mu`` = first Betti number; ``basis_map`` sends generator
    exponent-sum vectors to coordinates on the free part of H_1."""

    mu: int
    basis_map: tuple[tuple[int, ...], ...]
    torsion: tuple[int, ...]
    basis_names: tuple[str, ...] = ()
    basis_generators: tuple[int | None, ...] = ()

    def image(self, exponent_sums: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(r[j] * exponent_sums[j] for j in range(len(exponent_sums))) for r in self.basis_map)

    def generator_image(self, g: int) -> tuple[int, ...]:
        return tuple(r[g] for r in self.basis_map)

    def describe_basis(self, generator_names: Sequence[str]) -> list[str]:
        out = []
        for name, g in zip(self.basis_names, self.basis_generators):
            out.append(f"{name} = [{generator_names[g]}]" if g is not None else f"{name} = (Smith basis)")
        return out


def abelianize(p: GroupPresentation) -> AbelianizationData:
    l = p.ngens
    e = p.exponent_matrix()
    d, _, q = smith_normal_form(e, len(e), l)
    diag = [d[i][i] for i in range(min(len(e), l))]
    rank = sum(1 for x in diag if x)
    torsion = tuple(x for x in diag if x > 1)
    mu = l - rank
    basis = [[q[g][rank + k] for g in range(l)] for k in range(mu)]
    chosen = _generator_basis(basis, mu, l)
    names = _variable_names(mu)
    if chosen is not None:
        s = [[basis[r][g] for g in chosen] for r in range(mu)]
        basis = matmul(unimodular_inverse(s), basis)
        gens: tuple[int | None, ...] = tuple(chosen)
    else:
        gens = (None,) * mu
    return AbelianizationData(
        mu=mu,
        basis_map=tuple(tuple(r) for r in basis),
        torsion=torsion,
        basis_names=tuple(names),
        basis_generators=gens,
    )


def _variable_names(mu: int) -> list[str]:
    from .laurent import default_names

    return default_names(mu)


def _generator_basis(basis: Matrix, mu: int, l: int) -> list[int] | None:
    """Greedily pick generators whose images form a Z-basis of the free part."""
    if mu == 0:
        return []
    chosen: list[int] = []
    for g in range(l):
        trial = chosen + [g]
        cols = [[basis[r][h] for h in trial] for r in range(mu)]
        if _column_rank(cols) == len(trial):
            chosen = trial
            if len(chosen) == mu:
                break
    if len(chosen) < mu:
        return None
    s = [[basis[r][g] for g in chosen] for r in range(mu)]
    if abs(determinant(s)) != 1:
        return None
    return chosen


def _column_rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    d, _, _ = smith_normal_form(m)
    return sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i])


@dataclass(frozen=True)
class CohomologyClass:
    """An integral class ψ on the free part of H_1 with a chosen splitting.

    ``splitting`` is a unimodular matrix U whose last row is ψ / content;
    exponent vectors e are rewritten as U @ e, so the first mu-1 new
    coordinates span ker ψ and the last one is the ψ-degree.
    """

    psi: tuple[int, ...]
    content: int
    splitting: tuple[tuple[int, ...], ...] = field(repr=False)
    splitting_inverse: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def primitive(self) -> tuple[int, ...]:
        return tuple(x // self.content for x in self.psi)

    @property
    def is_primitive(self) -> bool:
        return self.content == 1

    def evaluate(self, exps: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.psi, exps))


def make_class(ab: AbelianizationData | int, values: Sequence[int], extra: Matrix | None = None) -> CohomologyClass:
    """Build ψ from its values on the basis of the free part.

    ``extra`` optionally prescribes a different splitting: any unimodular
    matrix with last row ψ/content.
    """
    mu = ab if isinstance(ab, int) else ab.mu
    values = [int(v) for v in values]
    if len(values) != mu:
        raise ValueError(f"class has {len(values)} entries, expected {mu}")
    if not any(values):
        raise ValueError("the zero class has no splitting")
    content = reduce(gcd, (abs(v) for v in values))
    prim = [v // content for v in values]
    if extra is not None:
        u = [list(r) for r in extra]
        if list(u[-1]) != prim:
            raise ValueError("splitting must have last row equal to the primitive class")
        uinv = unimodular_inverse(u)
    else:
        w, winv = _reduce_to_last(prim)
        u, uinv = winv, w
    return CohomologyClass(
        psi=tuple(values),
        content=content,
        splitting=tuple(tuple(r) for r in u),
        splitting_inverse=tuple(tuple(r) for r in uinv),
    )


def _reduce_to_last(v: list[int]) -> tuple[Matrix, Matrix]:
    """Unimodular W with ``v @ W = e_last`` for primitive v, and W^-1.

    Column operations by extended Euclid move the gcd into the last slot.
    """
    n = len(v)
    row = list(v)
    w = identity(n)
    winv = identity(n)

    def add_col(target, source, c):
        # column_target += c * column_source  (on W);  row_source -= c * row_target (on W^-1)
        for r in w:
            r[target] += c * r[source]
        winv[source] = [x - c * y for x, y in zip(winv[source], winv[target])]
        row[target] += c * row[source]

    def swap(i, j):
        for r in w:
            r[i], r[j] = r[j], r[i]
        winv[i], winv[j] = winv[j], winv[i]
        row[i], row[j] = row[j], row[i]

    last = n - 1
    while True:
        nz = [i for i in range(n) if row[i]]
        if len(nz) == 1:
            break
        i = min(nz, key=lambda k: (abs(row[k]), k))
        for j in nz:
            if j != i:
                add_col(j, i, -(row[j] // row[i]))
    i = next(i for i in range(n) if row[i])
    if i != last:
        swap(i, last)
    if row[last] < 0:
        for r in w:
            r[last] = -r[last]
        winv[last] = [-x for x in winv[last]]
        row[last] = -row[last]
    assert row == [0] * last + [1], row
    return w, winv


def primitive_grid(mu: int, bound: int) -> list[tuple[int, ...]]:
    """Primitive classes with entries in [-bound, bound], one per ± pair."""
    from itertools import product

    out = []
    for v in product(range(-bound, bound + 1), repeat=mu):
        if not any(v):
            continue
        if reduce(gcd, (abs(x) for x in v)) != 1:
            continue
        first = next(x for x in v if x)
        if first < 0:
            continue
        out.append(tuple(v))
    return out
