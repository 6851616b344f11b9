"""
Skew Laurent polynomials K[t^±1] over a division ring K with an
automorphism α (twist ``a t = t α(a)``), and diagonalization of
presentation matrices over them by the elementary presentation moves.

Polynomials are written ``sum t^i a_i`` with coefficients on the right.
A matrix presents the right module whose generators index the rows and
whose relations are the columns.

The diagonalization first brings the matrix to the form A + tB, then
normalizes B to diag(I_s, 0), alternately clears the constant lower
right block and shrinks the t-diagonal until the rows below it vanish,
and finally runs a Euclidean elimination on what remains.  Every step is
recorded as a ``Move`` so that the log can be replayed on the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence


# --------------------------------------------------------------------------
# division rings

class DivisionRing:
    """A division ring with a chosen automorphism.

    Elements are plain Python objects supporting ``+``, ``-``, ``*`` and
    truthiness; ``inv`` gives multiplicative inverses.
    """

    name = "K"

    def __init__(self, zero, one, alpha: Callable | None = None, alpha_inv: Callable | None = None):
        self.zero = zero
        self.one = one
        self._alpha = alpha
        self._alpha_inv = alpha_inv if alpha_inv is not None else alpha

    def inv(self, a):
        return self.one / a

    def size(self, a) -> int:
        """Rough description length of ``a``; used to pick cheap pivots."""
        return 1

    def alpha(self, a, k: int = 1):
        if self._alpha is None or k == 0:
            return a
        f = self._alpha if k > 0 else self._alpha_inv
        for _ in range(abs(k)):
            a = f(a)
        return a

    @property
    def commutative_twist(self) -> bool:
        return self._alpha is None


class RationalField(DivisionRing):
    name = "QQ"

    def __init__(self):
        super().__init__(Fraction(0), Fraction(1))

    def size(self, a) -> int:
        return a.numerator.bit_length() + a.denominator.bit_length()


class FunctionField(DivisionRing):
    """Q(z_1..z_k) with the identity automorphism."""

    def __init__(self, nvars: int):
        from .laurent import RatFunc

        self.nvars = nvars
        self.name = f"QQ({','.join(f'z{i + 1}' for i in range(nvars))})"
        super().__init__(RatFunc.from_int(0, nvars), RatFunc.from_int(1, nvars))

    def size(self, a) -> int:
        return len(a.num.terms) + len(a.den.terms)


class Quaternion:
    """Rational Hamilton quaternion a + b i + c j + d k."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a, self.b, self.c, self.d = (Fraction(x) for x in (a, b, c, d))

    def _coerce(self, o):
        return o if isinstance(o, Quaternion) else Quaternion(o)

    def __add__(self, o):
        o = self._coerce(o)
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, o):
        return self._coerce(o) * self

    def conj(self):
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Fraction:
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero quaternion")
        c = self.conj()
        return Quaternion(c.a / n, c.b / n, c.c / n, c.d / n)

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o):
        return self._coerce(o) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = Quaternion(o)
        if not isinstance(o, Quaternion):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __repr__(self):
        return f"Quaternion({self.a}, {self.b}, {self.c}, {self.d})"


QI = Quaternion(0, 1, 0, 0)
QJ = Quaternion(0, 0, 1, 0)
QK = Quaternion(0, 0, 0, 1)


class QuaternionAlgebra(DivisionRing):
    """Rational quaternions with α(a) = q^-1 a q (conjugation by ``q``)."""

    def __init__(self, q: Quaternion = QJ):
        qi = q.inverse()
        self.q = q
        self.name = f"H(Q), alpha = conjugation by {q!r}"
        super().__init__(
            Quaternion(0), Quaternion(1),
            alpha=lambda a: qi * a * q,
            alpha_inv=lambda a: q * a * qi,
        )


# --------------------------------------------------------------------------

class SkewLaurentPoly:
    """``sum t^i c_i`` in K[t^±1] with ``a t = t α(a)``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: DivisionRing, coeffs: Mapping[int, object] | None = None):
        self.ring = ring
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c}

    @classmethod
    def constant(cls, ring, c) -> "SkewLaurentPoly":
        return cls(ring, {0: c})

    @classmethod
    def t(cls, ring, k: int = 1) -> "SkewLaurentPoly":
        return cls(ring, {k: ring.one})

    @classmethod
    def linear(cls, ring, a, b) -> "SkewLaurentPoly":
        """a + t b."""
        return cls(ring, {0: a, 1: b})

    def _wrap(self, coeffs):
        p = object.__new__(SkewLaurentPoly)
        p.ring = self.ring
        p.coeffs = coeffs
        return p

    def __add__(self, other: "SkewLaurentPoly"):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SkewLaurentPoly"):
        # (t^i a)(t^j b) = t^(i+j) α^j(a) b
        alpha = self.ring.alpha
        out: dict = {}
        for j, b in other.coeffs.items():
            for i, a in self.coeffs.items():
                v = alpha(a, j) * b
                k = i + j
                v = out[k] + v if k in out else v
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return self._wrap(out)

    def scale_left(self, c) -> "SkewLaurentPoly":
        """c * p for a scalar c."""
        return SkewLaurentPoly.constant(self.ring, c) * self

    def scale_right(self, c) -> "SkewLaurentPoly":
        return self._wrap({k: a * c for k, a in self.coeffs.items() if a * c})

    def __eq__(self, other):
        return isinstance(other, SkewLaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        terms = " + ".join(f"t^{k}*({c!r})" for k, c in sorted(self.coeffs.items()))
        return f"SkewLaurentPoly({terms or '0'})"

    def low(self) -> int:
        return min(self.coeffs)

    def high(self) -> int:
        return max(self.coeffs)

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of zero")
        return self.high() - self.low()

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def size(self) -> int:
        return sum(self.ring.size(c) for c in self.coeffs.values())

    def constant_term(self):
        return self.coeffs.get(0, self.ring.zero)

    def coefficient(self, k: int):
        return self.coeffs.get(k, self.ring.zero)

    def left_divmod(self, d: "SkewLaurentPoly"):
        """``(q, r)`` with ``self = q d + r`` and deg r < deg d."""
        ring = self.ring
        q = SkewLaurentPoly(ring)
        r = self
        dh, dspan = d.high(), d.degree()
        lead = d.coeffs[dh]
        while r and r.degree() >= dspan:
            rh = r.high()
            # (t^k c) d has top coefficient α^{dh}(c) * lead
            c = ring.alpha(r.coeffs[rh] * ring.inv(lead), -dh)
            term = SkewLaurentPoly(ring, {rh - dh: c})
            q = q + term
            r = r - term * d
        return q, r

    def right_divmod(self, d: "SkewLaurentPoly"):
        """``(q, r)`` with ``self = d q + r`` and deg r < deg d."""
        ring = self.ring
        q = SkewLaurentPoly(ring)
        r = self
        dh, dspan = d.high(), d.degree()
        lead = d.coeffs[dh]
        while r and r.degree() >= dspan:
            rh = r.high()
            k = rh - dh
            c = ring.inv(ring.alpha(lead, k)) * r.coeffs[rh]
            term = SkewLaurentPoly(ring, {k: c})
            q = q + term
            r = r - d * term
        return q, r


# --------------------------------------------------------------------------
# presentation moves

@dataclass(frozen=True)
class Move:
    """One elementary move.

    kinds: ``swap_rows(i, j)``, ``swap_cols(i, j)``,
    ``scale_row(i, u)`` (row_i <- u row_i), ``scale_col(j, u)`` (col_j <- col_j u),
    ``add_row(i, k, q)`` (row_i += q row_k), ``add_col(j, k, q)`` (col_j += col_k q),
    ``stabilize(column)`` (append a column and a row (0..0, 1)),
    ``delete(i, j)`` (drop row i and column j when row i is e_j),
    ``drop_col(j)`` (drop a zero column).
    """

    kind: str
    args: tuple

    def apply(self, m: list[list[SkewLaurentPoly]], ncols: int) -> int:
        k, a = self.kind, self.args
        if k == "swap_rows":
            i, j = a
            m[i], m[j] = m[j], m[i]
        elif k == "swap_cols":
            i, j = a
            for r in m:
                r[i], r[j] = r[j], r[i]
        elif k == "scale_row":
            i, u = a
            m[i] = [u * x if x else x for x in m[i]]
        elif k == "scale_col":
            j, u = a
            for r in m:
                if r[j]:
                    r[j] = r[j] * u
        elif k == "add_row":
            i, src, q = a
            if i == src:
                raise ValueError("add_row needs distinct rows")
            m[i] = [x + q * y if y else x for x, y in zip(m[i], m[src])]
        elif k == "add_col":
            j, src, q = a
            if j == src:
                raise ValueError("add_col needs distinct columns")
            for r in m:
                if r[src]:
                    r[j] = r[j] + r[src] * q
        elif k == "stabilize":
            (col,) = a
            ring = col[0].ring
            for r, x in zip(m, col):
                r.append(x)
            m.append([SkewLaurentPoly(ring)] * ncols + [SkewLaurentPoly.constant(ring, ring.one)])
            ncols += 1
        elif k == "delete":
            i, j = a
            row = m[i]
            pivot = row[j]
            if pivot != SkewLaurentPoly(pivot.ring, {0: pivot.ring.one}) or any(x for c, x in enumerate(row) if c != j):
                raise ValueError(f"row {i} is not the unit vector e_{j}")
            del m[i]
            for r in m:
                del r[j]
            ncols -= 1
        elif k == "drop_col":
            (j,) = a
            if any(r[j] for r in m):
                raise ValueError(f"column {j} is not zero")
            for r in m:
                del r[j]
            ncols -= 1
        else:
            raise ValueError(f"unknown move {k}")
        return ncols


class SkewMatrix:
    """A matrix over K[t^±1] together with the log of moves applied to it."""

    def __init__(self, ring: DivisionRing, rows: Sequence[Sequence[SkewLaurentPoly]], ncols: int | None = None):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)
        self.original = [list(r) for r in self.rows]
        self.original_ncols = self.ncols
        self.moves: list[Move] = []

    @classmethod
    def from_linear(cls, ring, a: Sequence[Sequence], b: Sequence[Sequence]) -> "SkewMatrix":
        """The matrix A + tB for constant matrices A and B."""
        rows = [[SkewLaurentPoly.linear(ring, x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
        return cls(ring, rows, len(a[0]) if a else 0)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def zero(self) -> SkewLaurentPoly:
        return SkewLaurentPoly(self.ring)

    def apply(self, kind: str, *args):
        mv = Move(kind, tuple(args))
        self.ncols = mv.apply(self.rows, self.ncols)
        self.moves.append(mv)

    def replay(self) -> list[list[SkewLaurentPoly]]:
        m = [list(r) for r in self.original]
        n = self.original_ncols
        for mv in self.moves:
            n = mv.apply(m, n)
        return m

    def copy(self) -> "SkewMatrix":
        out = SkewMatrix(self.ring, self.rows, self.ncols)
        return out


# --------------------------------------------------------------------------

@dataclass
class SkewDiagonal:
    torsion: list[SkewLaurentPoly]
    free_rank: int
    null_relations: int
    units: int
    reduced_size: int  # s' after the t-diagonal reduction
    matrix: SkewMatrix = field(repr=False)
    linearized_shape: tuple[int, int] = (0, 0)

    @property
    def degrees(self) -> list[int]:
        return [p.degree() for p in self.torsion]

    @property
    def torsion_rank(self) -> int:
        return sum(self.degrees)


class NotLinearError(ValueError):
    pass


def _unit(ring, c) -> SkewLaurentPoly:
    return SkewLaurentPoly.constant(ring, c)


def make_polynomial(M: SkewMatrix):
    """Scale each column by a power of t so that no entry has negative powers."""
    ring = M.ring
    for j in range(M.ncols):
        lows = [r[j].low() for r in M.rows if r[j]]
        if lows and min(lows) != 0:
            M.apply("scale_col", j, SkewLaurentPoly.t(ring, -min(lows)))


def linearize(M: SkewMatrix):
    """Stabilize until every entry has the form a + t b."""
    ring = M.ring
    make_polynomial(M)
    while True:
        spot = next(((i, j) for i, r in enumerate(M.rows) for j, x in enumerate(r) if x and x.high() >= 2), None)
        if spot is None:
            return
        i, j = spot
        x = M.rows[i][j]
        # x = a + t q ; new generator τ = σ_i t with relation τ - σ_i t = 0
        q = SkewLaurentPoly(ring, {k - 1: c for k, c in x.coeffs.items() if k >= 1})
        col = [M.zero() for _ in range(M.nrows)]
        col[i] = -SkewLaurentPoly.t(ring)
        M.apply("stabilize", col)
        M.apply("add_col", j, M.ncols - 1, q)


def _split(M: SkewMatrix, i: int, j: int):
    x = M.rows[i][j]
    return x.coefficient(0), x.coefficient(1)


def normalize_leading(M: SkewMatrix) -> int:
    """Moves making B = diag(I_s, 0) for M = A + tB; returns s.

    A left scalar d acts on the t-part by α(d), so the row multipliers
    are pulled back through α^-1.
    """
    ring = M.ring
    s = 0
    while True:
        cands = [(ring.size(_split(M, i, j)[1]), i, j) for i in range(s, M.nrows)
                 for j in range(s, M.ncols) if _split(M, i, j)[1]]
        if not cands:
            return s
        _, i, j = min(cands)
        if i != s:
            M.apply("swap_rows", s, i)
        if j != s:
            M.apply("swap_cols", s, j)
        b = _split(M, s, s)[1]
        M.apply("scale_row", s, _unit(ring, ring.alpha(ring.inv(b), -1)))
        for r in range(M.nrows):
            if r != s:
                br = _split(M, r, s)[1]
                if br:
                    M.apply("add_row", r, s, _unit(ring, ring.alpha(-br, -1)))
        for c in range(M.ncols):
            if c != s:
                bc = _split(M, s, c)[1]
                if bc:
                    M.apply("add_col", c, s, _unit(ring, -bc))
        s += 1


def clear_constant_block(M: SkewMatrix, s: int):
    """Make the block below and right of the t-diagonal zero, deleting
    one row and column per nonzero entry found there."""
    ring = M.ring
    while True:
        cands = [(M.rows[i][j].size(), i, j) for i in range(s, M.nrows)
                 for j in range(s, M.ncols) if M.rows[i][j]]
        if not cands:
            return
        _, i, j = min(cands)
        a = M.rows[i][j].constant_term()
        M.apply("scale_row", i, _unit(ring, ring.inv(a)))
        for c in range(M.ncols):
            if c != j and M.rows[i][c]:
                M.apply("add_col", c, j, _unit(ring, -M.rows[i][c].constant_term()))
        M.apply("delete", i, j)


def shrink_diagonal(M: SkewMatrix, s: int) -> int:
    """One reduction step when the block below the t-diagonal is nonzero.

    Returns the new diagonal size s - 1.
    """
    ring = M.ring
    _, l, i = min((M.rows[r][c].size(), r, c) for r in range(s, M.nrows) for c in range(s) if M.rows[r][c])
    a = M.rows[l][i].constant_term()
    # make the entry 1 while keeping t on the diagonal of row i
    M.apply("scale_col", i, _unit(ring, ring.inv(a)))
    M.apply("scale_row", i, _unit(ring, ring.alpha(a, -1)))
    for j in range(s):
        if j == i or not M.rows[l][j]:
            continue
        b = M.rows[l][j].constant_term()
        M.apply("add_col", j, i, _unit(ring, -b))
        M.apply("add_row", i, j, _unit(ring, ring.alpha(b, -1)))
    M.apply("delete", l, i)
    # rows i+1..s-1 now carry t in columns i..s-2; move row i below them
    for r in range(i, s - 1):
        M.apply("swap_rows", r, r + 1)
    return s - 1


def absorb_constant_columns(M: SkewMatrix, s: int) -> int:
    """For (A1 + tI_s | A2) with zero rows below, use nonzero entries of
    A2 to eliminate generators until A2 = 0.  Returns the new s; the
    torsion part is then presented by the square block A1 + tI_s.
    """
    ring = M.ring
    while True:
        cands = [(ring.size(M.rows[i][j].constant_term()), i, j)
                 for i in range(s) for j in range(s, M.ncols) if M.rows[i][j]]
        if not cands:
            return s
        _, i, j = min(cands)
        M.apply("scale_col", j, _unit(ring, ring.inv(M.rows[i][j].constant_term())))
        col = [r[j].constant_term() for r in M.rows]
        for k in range(M.ncols):
            if k != j and M.rows[i][k]:
                M.apply("add_col", k, j, -M.rows[i][k])
        M.apply("delete", i, j)
        # column i picked up t-parts -α(c_r); cancel them with the t-diagonal
        for r in range(s):
            if r == i or not col[r]:
                continue
            M.apply("add_col", i, r, _unit(ring, ring.alpha(col[r])))
        for c in range(i, s - 1):
            M.apply("swap_cols", c, c + 1)
        s -= 1


def euclidean_diagonalize(M: SkewMatrix, top: int):
    """Diagonalize the first ``top`` rows by one-sided Euclidean moves."""
    ring = M.ring
    k = 0
    while k < min(top, M.ncols):
        cands = [(M.rows[i][j].degree(), M.rows[i][j].size(), j, i)
                 for i in range(k, top) for j in range(k, M.ncols) if M.rows[i][j]]
        if not cands:
            break
        *_, j, i = min(cands)
        if i != k:
            M.apply("swap_rows", k, i)
        if j != k:
            M.apply("swap_cols", k, j)
        while True:
            piv = M.rows[k][k]
            clean = True
            for i in range(k + 1, top):
                x = M.rows[i][k]
                if x:
                    q, r = x.left_divmod(piv)
                    if q:
                        M.apply("add_row", i, k, -q)
                    if M.rows[i][k]:
                        clean = False
            for j in range(k + 1, M.ncols):
                x = M.rows[k][j]
                if x:
                    q, r = x.right_divmod(piv)
                    if q:
                        M.apply("add_col", j, k, -q)
                    if M.rows[k][j]:
                        clean = False
            if clean:
                break
            cands = [(M.rows[i][k].degree(), M.rows[i][k].size(), k, i) for i in range(k, top) if M.rows[i][k]]
            cands += [(M.rows[k][j].degree(), M.rows[k][j].size(), j, k) for j in range(k, M.ncols) if M.rows[k][j]]
            *_, j, i = min(cands)
            if i != k:
                M.apply("swap_rows", k, i)
            if j != k:
                M.apply("swap_cols", k, j)
        k += 1
    return k


def diagonalize(M: SkewMatrix, linearize_entries: bool = False, trace: list | None = None) -> SkewDiagonal:
    """Diagonal presentation of the module presented by ``M``.

    Entries must be of the form a + t b unless ``linearize_entries`` is
    set.  ``trace`` receives the diagonal size after each reduction step.
    """
    if linearize_entries:
        linearize(M)
    else:
        for r in M.rows:
            for x in r:
                if x and (x.low() < 0 or x.high() > 1):
                    raise NotLinearError(f"entry {x!r} is not of the form a + t b")
    lin_shape = M.shape
    s = normalize_leading(M)
    if trace is not None:
        trace.append((M.nrows, M.ncols, s))
    while True:
        clear_constant_block(M, s)
        if trace is not None:
            trace.append((M.nrows, M.ncols, s))
        if not any(M.rows[i][c] for i in range(s, M.nrows) for c in range(s)):
            break
        before = M.nrows + M.ncols
        s = shrink_diagonal(M, s)
        if M.nrows + M.ncols >= before:
            raise AssertionError("reduction step did not shrink the matrix")
        if trace is not None:
            trace.append((M.nrows, M.ncols, s))
    reduced = s
    s = absorb_constant_columns(M, s)
    if trace is not None:
        trace.append((M.nrows, M.ncols, s))
    rank = euclidean_diagonalize(M, s)
    torsion = [M.rows[k][k] for k in range(rank) if M.rows[k][k].degree() > 0]
    return SkewDiagonal(
        torsion=torsion,
        free_rank=M.nrows - rank,
        null_relations=M.ncols - rank,
        units=rank - len(torsion),
        reduced_size=reduced,
        matrix=M,
        linearized_shape=lin_shape,
    )


def torsion_rank_bound_check(M: SkewMatrix) -> tuple[int, int]:
    """``(rk_K TM, min(l, m))`` for a constant-plus-linear matrix; raises
    if the bound fails."""
    l, m = M.shape
    result = diagonalize(M)
    rank = result.torsion_rank
    bound = min(l, m)
    if rank > bound or rank > result.reduced_size:
        raise AssertionError(f"torsion rank {rank} exceeds bound {bound}")
    return rank, bound


def is_diagonal(rows: Sequence[Sequence[SkewLaurentPoly]]) -> bool:
    return all(not x for i, r in enumerate(rows) for j, x in enumerate(r) if i != j)


def matrix_from_tsv(text: str) -> SkewMatrix:
    """Read a matrix in the Jacobian TSV layout.

    A ``# field: QQ`` or ``# field: QQ(z1,...,zk)`` line selects the
    coefficient field (identity twist); entries are Laurent polynomials
    in ``z1..zk`` and ``t``.
    """
    import re

    from .foxcalc import parse_tsv
    from .laurent import LaurentPoly, RatFunc

    m = re.search(r"^#\s*field:\s*(\S+)\s*$", text, re.M)
    if not m:
        raise ValueError("missing '# field:' line")
    spec = m.group(1)
    if spec == "QQ":
        nz = 0
    else:
        fm = re.fullmatch(r"QQ\(([^)]*)\)", spec)
        if not fm:
            raise ValueError(f"unknown field {spec!r}")
        names = [x.strip() for x in fm.group(1).split(",")]
        if names != [f"z{i + 1}" for i in range(len(names))]:
            raise ValueError("function field variables must be z1, z2, ...")
        nz = len(names)
    ring = RationalField() if nz == 0 else FunctionField(nz)
    var_names = [f"z{i + 1}" for i in range(nz)] + ["t"]
    rows, _, cols = parse_tsv(text, var_names)
    out = []
    for r in rows:
        if len(r) != len(cols):
            raise ValueError("ragged matrix")
        row = []
        for p in r:
            groups: dict[int, dict] = {}
            for e, c in p.terms.items():
                groups.setdefault(e[-1], {})[e[:-1]] = c
            if nz == 0:
                coeffs = {k: Fraction(g[()]) for k, g in groups.items()}
            else:
                coeffs = {k: RatFunc(LaurentPoly(g, nz)) for k, g in groups.items()}
            row.append(SkewLaurentPoly(ring, coeffs))
        out.append(row)
    return SkewMatrix(ring, out, len(cols))
