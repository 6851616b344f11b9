"""
Level-0 invariants from a Fox Jacobian: Alexander polynomial, Alexander
norm, the rank r_0 and the degree delta_0 of a cohomology class.

The rel-basepoint module H_1(X, x_0; Z[ab G]) is the cokernel of the
Jacobian (rows = generators, columns = relators).  After rewriting
through a splitting of ψ it becomes a matrix over K_0[t^±1] with
K_0 = Q(ker ψ); its Smith form gives the free rank (r_0 + 1) and the
torsion polynomials whose total t-degree is delta_0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .abelian import AbelianizationData, CohomologyClass, abelianize, make_class
from .foxcalc import JacobianMatrix, jacobian
from .laurent import LaurentPoly, OneVarPoly, RatFunc, gcd, gcd_all, psi_degree
from .words import GroupPresentation

__all__ = [
    "RatFunc",
    "DiagonalForm",
    "InvariantReport",
    "InconsistentInput",
    "unit_pivot_reduce",
    "bareiss_det",
    "alexander_polynomial",
    "alexander_norm",
    "coefficient_field",
    "localize",
    "smith_form",
    "localize_and_diagonalize",
    "delta0",
    "rank0",
    "compute_invariants",
]


class InconsistentInput(RuntimeError):
    """Raised when computed data contradicts a structural guarantee."""


# --------------------------------------------------------------------------
# Matrix moves over Z[ab G]

def unit_pivot_reduce(rows: Sequence[Sequence[LaurentPoly]], ncols: int | None = None):
    """Eliminate every ±monomial entry: clear its row with column moves,
    then drop the row and column.  Returns ``(rows, ncols, eliminated)``.

    Pivots are chosen to minimise fill-in, ties broken by position.
    """
    m = [list(r) for r in rows]
    ncols = ncols if ncols is not None else (len(m[0]) if m else 0)
    eliminated = 0
    while True:
        best = None
        row_nnz = [sum(1 for x in r if x) for r in m]
        col_nnz = [sum(1 for r in m if r[j]) for j in range(ncols)]
        for i, r in enumerate(m):
            for j, x in enumerate(r):
                if x and x.is_unit():
                    cost = ((row_nnz[i] - 1) * (col_nnz[j] - 1), len(x.terms), i, j)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
        if best is None:
            return m, ncols, eliminated
        _, i, j = best
        uinv = m[i][j].inverse_monomial()
        pivot_col = [r[j] for r in m]
        for k in range(ncols):
            if k != j and m[i][k]:
                f = m[i][k] * uinv
                for r_idx, r in enumerate(m):
                    if pivot_col[r_idx]:
                        r[k] = r[k] - pivot_col[r_idx] * f
        del m[i]
        for r in m:
            del r[j]
        ncols -= 1
        eliminated += 1


def bareiss_det(mat: Sequence[Sequence[LaurentPoly]], nvars: int) -> LaurentPoly:
    """Fraction-free determinant with exact division by the previous pivot."""
    n = len(mat)
    if n == 0:
        return LaurentPoly.one(nvars)
    a = [list(r) for r in mat]
    sign = 1
    prev = LaurentPoly.one(nvars)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return LaurentPoly.zero(nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if num else num
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def alexander_polynomial(J: JacobianMatrix, presimplify: bool = True) -> LaurentPoly:
    """Normalized gcd of the (s-1)-minors of the s-generator presentation."""
    nvars = J.nvars
    rows = J.rows()
    ncols = J.shape[1]
    if presimplify:
        rows, ncols, _ = unit_pivot_reduce(rows, ncols)
    s = len(rows)
    size = s - 1
    if size <= 0:
        return LaurentPoly.one(nvars)
    if ncols < size:
        return LaurentPoly.zero(nvars)
    g = LaurentPoly.zero(nvars)
    for drop in range(s):
        sub_rows = [r for i, r in enumerate(rows) if i != drop]
        for cols in combinations(range(ncols), size):
            d = bareiss_det([[r[c] for c in cols] for r in sub_rows], nvars)
            if not d:
                continue
            g = gcd(g, d) if g else d.normalize()
            if len(g.terms) == 1:
                return g
    return g


def alexander_norm(delta: LaurentPoly, psi: CohomologyClass) -> tuple[int, list[str]]:
    """``(norm, flags)``; a vanishing polynomial has norm 0 and flag ``vanishing``."""
    if not delta:
        return 0, ["vanishing-alexander-polynomial"]
    return psi_degree(delta, psi.psi), []


# --------------------------------------------------------------------------
# Localization at K_0[t^±1]

def coefficient_field(mu: int):
    """``(zero, one)`` of K_0: Q when mu = 1, Q(z_1..z_{mu-1}) otherwise."""
    if mu <= 1:
        return Fraction(0), Fraction(1)
    return RatFunc.from_int(0, mu - 1), RatFunc.from_int(1, mu - 1)


def localize_entry(p: LaurentPoly, cls: CohomologyClass) -> OneVarPoly:
    mu = p.nvars
    zero, one = coefficient_field(mu)
    q = p.transform(cls.splitting)
    groups: dict[int, dict] = {}
    for e, c in q.terms.items():
        groups.setdefault(e[-1], {})[e[:-1]] = c
    coeffs = {}
    for k, terms in groups.items():
        if mu <= 1:
            coeffs[k] = Fraction(terms[()])
        else:
            coeffs[k] = RatFunc(LaurentPoly(terms, mu - 1))
    return OneVarPoly(coeffs, zero, one)


def localize(rows: Sequence[Sequence[LaurentPoly]], cls: CohomologyClass) -> list[list[OneVarPoly]]:
    if cls.content != 1:
        raise ValueError("localize expects a primitive class")
    return [[localize_entry(p, cls) for p in r] for r in rows]


def _size(p: OneVarPoly) -> int:
    total = 0
    for c in p.coeffs.values():
        if isinstance(c, RatFunc):
            total += len(c.num.terms) + len(c.den.terms)
        else:
            total += Fraction(c).numerator.bit_length() + Fraction(c).denominator.bit_length()
    return total


def smith_form(mat: Sequence[Sequence[OneVarPoly]], nrows: int, ncols: int, zero, one):
    """Invariant factors over the PID K[t^±1].

    Returns the nonzero diagonal ``d_1 | d_2 | ...`` (normalized; units
    become 1).  Pivot = minimal t-degree, then smallest coefficients,
    then column and row.
    """
    a = [list(r) for r in mat]
    diag: list[OneVarPoly] = []
    k = 0
    while k < min(nrows, ncols):
        cands = [(a[i][j].degree(), _size(a[i][j]), j, i) for i in range(k, nrows) for j in range(k, ncols) if a[i][j]]
        if not cands:
            break
        *_, j, i = min(cands)
        a[k], a[i] = a[i], a[k]
        for r in a:
            r[k], r[j] = r[j], r[k]
        while True:
            piv = a[k][k]
            clean = True
            for i in range(k + 1, nrows):
                if a[i][k]:
                    q, _ = a[i][k].divmod(piv)
                    if q:
                        a[i] = [x - y * q if y else x for x, y in zip(a[i], a[k])]
                    if a[i][k]:
                        clean = False
            for j in range(k + 1, ncols):
                if a[k][j]:
                    q, _ = a[k][j].divmod(piv)
                    if q:
                        for r in a:
                            if r[k]:
                                r[j] = r[j] - r[k] * q
                    if a[k][j]:
                        clean = False
            if clean:
                break
            cands = [(a[i][k].degree(), _size(a[i][k]), k, i) for i in range(k, nrows) if a[i][k]]
            cands += [(a[k][j].degree(), _size(a[k][j]), j, k) for j in range(k, ncols) if a[k][j]]
            *_, j, i = min(cands)
            a[k], a[i] = a[i], a[k]
            for r in a:
                r[k], r[j] = r[j], r[k]
        diag.append(a[k][k])
        k += 1
    return invariant_chain(diag)


def invariant_chain(diag: Sequence[OneVarPoly]) -> list[OneVarPoly]:
    """Replace a diagonal by the equivalent divisibility chain (gcd/lcm swaps)."""
    d = [x.normalize() for x in diag]
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            if d[i].is_unit() and d[i].coeffs == {0: d[i].one}:
                break
            _, r = d[j].divmod(d[i])
            if r:
                g = d[i].gcd(d[j])
                l, rem = (d[i] * d[j]).divmod(g)
                assert not rem
                d[i], d[j] = g, l.normalize()
    return d


@dataclass(frozen=True)
class DiagonalForm:
    """Diagonal presentation {p_1..p_k, 0_(r,s)} of the localized module.

    ``free_rank`` counts generators with no relation (the zero rows of
    the generator-by-relator layout); ``null_relations`` counts relators
    that became zero.
    """

    torsion: tuple[OneVarPoly, ...]
    free_rank: int
    null_relations: int
    units: int = 0

    @property
    def degrees(self) -> list[int]:
        return [p.degree() for p in self.torsion]

    @property
    def torsion_degree(self) -> int:
        return sum(self.degrees)


def localize_and_diagonalize(J: JacobianMatrix | Sequence[Sequence[LaurentPoly]], cls: CohomologyClass,
                             presimplify: bool = True, shape: tuple[int, int] | None = None) -> DiagonalForm:
    if isinstance(J, JacobianMatrix):
        rows, (nrows, ncols) = J.rows(), J.shape
    else:
        rows = [list(r) for r in J]
        nrows, ncols = shape if shape is not None else (len(rows), len(rows[0]) if rows else 0)
    eliminated = 0
    if presimplify:
        rows, ncols, eliminated = unit_pivot_reduce(rows, ncols)
        nrows = len(rows)
    mu = len(cls.psi)
    zero, one = coefficient_field(mu)
    local = localize(rows, cls)
    chain = smith_form(local, nrows, ncols, zero, one)
    rank = len(chain)
    torsion = tuple(p for p in chain if p.degree() > 0)
    return DiagonalForm(
        torsion=torsion,
        free_rank=nrows - rank,
        null_relations=ncols - rank,
        units=eliminated + rank - len(torsion),
    )


def delta0(form: DiagonalForm, cls: CohomologyClass) -> int:
    return cls.content * form.torsion_degree


def rank0(form: DiagonalForm) -> int:
    if form.free_rank == 0:
        raise InconsistentInput("rel-basepoint module has rank 0; expected at least 1 for beta_1 >= 1")
    return form.free_rank - 1


# --------------------------------------------------------------------------

@dataclass
class InvariantReport:
    psi: tuple[int, ...]
    delta_X: LaurentPoly
    alex_norm: int
    r0: int
    delta0: int
    form: DiagonalForm
    beta1: int
    flags: list[str] = field(default_factory=list)
    verdicts: list = field(default_factory=list)

    @property
    def delta0_bar(self) -> int:
        return self.delta0 if self.r0 == 0 else 0

    def to_json(self, var_names: Sequence[str]) -> dict:
        return {
            "beta1": self.beta1,
            "alexander_poly": self.delta_X.to_text(var_names),
            "psi": list(self.psi),
            "alex_norm": self.alex_norm,
            "r0": self.r0,
            "delta0": self.delta0,
            "delta0_bar": self.delta0_bar,
            "diagonal_degrees": self.form.degrees,
            "flags": list(self.flags),
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def skew_check(local: Sequence[Sequence[OneVarPoly]], form: DiagonalForm, mu: int) -> None:
    """Recompute the diagonal form of a localized matrix with the skew
    engine (identity twist) and compare invariant-factor degrees."""
    from .skewcore import FunctionField, RationalField, SkewLaurentPoly, SkewMatrix, diagonalize

    ring = RationalField() if mu <= 1 else FunctionField(mu - 1)
    ncols = len(local[0]) if local else 0
    rows = [[SkewLaurentPoly(ring, x.coeffs) for x in r] for r in local]
    if not rows or not ncols:
        free, degrees = len(rows), []
    else:
        result = diagonalize(SkewMatrix(ring, rows, ncols), linearize_entries=True)
        if result.matrix.replay() != result.matrix.rows:
            raise InconsistentInput("skew move log does not replay")
        chain = invariant_chain([OneVarPoly(p.coeffs, ring.zero, ring.one) for p in result.torsion])
        free, degrees = result.free_rank, sorted(p.degree() for p in chain if p.degree() > 0)
    if free != form.free_rank or degrees != sorted(form.degrees):
        raise InconsistentInput(
            f"skew engine disagrees: free rank {free} vs {form.free_rank}, degrees {degrees} vs {sorted(form.degrees)}"
        )


def compute_invariants(p: GroupPresentation, psis: Sequence[Sequence[int]],
                       ab: AbelianizationData | None = None, verify_skew: bool = False) -> list[InvariantReport]:
    """Full level-0 pipeline for each class in ``psis``."""
    ab = ab or abelianize(p)
    if ab.mu == 0:
        raise ValueError("beta_1 = 0: there are no nonzero classes")
    J = jacobian(p, ab)
    rows, ncols, _ = unit_pivot_reduce(J.rows(), J.shape[1])
    nrows = len(rows)
    delta_x = _alexander_from_reduced(rows, ncols, ab.mu)
    reports = []
    for values in psis:
        cls = make_class(ab, values)
        prim = make_class(ab, cls.primitive)
        form = localize_and_diagonalize(rows, prim, presimplify=False, shape=(nrows, ncols))
        if verify_skew:
            skew_check(localize(rows, prim), form, ab.mu)
        r0 = rank0(form)
        d0 = delta0(form, cls)
        norm, flags = alexander_norm(delta_x, cls)
        if r0 == 0 and d0 != norm:
            raise InconsistentInput(f"delta_0 = {d0} differs from the Alexander norm {norm} although r_0 = 0")
        if r0 > 0:
            flags.append("positive-rank")
        reports.append(InvariantReport(
            psi=tuple(cls.psi), delta_X=delta_x, alex_norm=norm, r0=r0, delta0=d0,
            form=form, beta1=ab.mu, flags=flags,
        ))
    return reports


def _alexander_from_reduced(rows, ncols, nvars) -> LaurentPoly:
    from .foxcalc import JacobianMatrix as _J

    J = _J(entries=tuple(tuple(r) for r in rows), nvars=nvars,
           row_names=tuple(str(i) for i in range(len(rows))),
           col_names=tuple(str(j) for j in range(ncols)), var_names=())
    return alexander_polynomial(J, presimplify=False)
