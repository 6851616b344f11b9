"""
Exact Laurent polynomials in several commuting variables over the
rationals, their gcd, the rational function field they generate, and
one-variable Laurent polynomials over a coefficient field.

Units of Q[x_1^±,...,x_k^±] are the nonzero scalar multiples of
monomials.  ``normalize`` picks the representative that is a genuine
polynomial, not divisible by any variable, with integer coprime
coefficients and a positive coefficient on the lexicographically least
exponent.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Callable, Iterable, Mapping, Sequence

Exp = tuple[int, ...]
Coeff = int | Fraction


try:
    import flint as _flint
    from flint.utils.flint_exceptions import DomainError as _FlintDomainError
except ImportError:  # pragma: no cover - exercised only without python-flint
    _flint = None

# products and quotients with more terms than this go through python-flint
_FLINT_CUTOFF = 48


def _exact_coeffs(a: dict) -> bool:
    return all(type(c) is int or type(c) is Fraction for c in a.values())


def _to_flint(a: dict, n: int, rational: bool):
    lo = [min(e[i] for e in a) for i in range(n)]
    names = tuple(f"v{i}" for i in range(n))
    if rational:
        ctx = _flint.fmpq_mpoly_ctx.get(names, "lex")
        conv = {tuple(x - y for x, y in zip(e, lo)): _flint.fmpq(Fraction(c).numerator, Fraction(c).denominator)
                for e, c in a.items()}
    else:
        ctx = _flint.fmpz_mpoly_ctx.get(names, "lex")
        conv = {tuple(x - y for x, y in zip(e, lo)): c for e, c in a.items()}
    return ctx.from_dict(conv), lo


def _from_flint(p, lo, rational: bool) -> dict:
    out = {}
    for e, c in p.to_dict().items():
        key = tuple(int(x) + y for x, y in zip(e, lo))
        out[key] = _clean(Fraction(int(c.p), int(c.q))) if rational else int(c)
    return out


def _rational(a: dict, b: dict) -> bool:
    return any(type(c) is not int for c in a.values()) or any(type(c) is not int for c in b.values())


def _flint_mul(a: dict, b: dict) -> dict:
    n = len(next(iter(a)))
    rational = _rational(a, b)
    pa, la = _to_flint(a, n, rational)
    pb, lb = _to_flint(b, n, rational)
    return _from_flint(pa * pb, [x + y for x, y in zip(la, lb)], rational)


def _flint_divexact(a: dict, b: dict) -> dict | None:
    """Exact quotient, or None when flint finds it inexact (for instance
    non-integral over Z); the caller then falls back to plain division."""
    n = len(next(iter(a)))
    rational = _rational(a, b)
    pa, la = _to_flint(a, n, rational)
    pb, lb = _to_flint(b, n, rational)
    try:
        q = pa / pb
    except _FlintDomainError:
        return None
    return _from_flint(q, [x - y for x, y in zip(la, lb)], rational)


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# --------------------------------------------------------------------------
# dict-level polynomial kernels (exponents nonnegative unless stated)

def _add(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    if len(a) * len(b) > _FLINT_CUTOFF and _flint is not None and _exact_coeffs(a) and _exact_coeffs(b):
        return _flint_mul(a, b)
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def _scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def _shift(a: dict, s: Sequence[int]) -> dict:
    return {tuple(x + y for x, y in zip(e, s)): c for e, c in a.items()}


def _divexact(a: dict, b: dict) -> dict:
    """Exact quotient a/b in Q[x] by lex-leading-term division."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) > _FLINT_CUTOFF and _flint is not None and _exact_coeffs(a) and _exact_coeffs(b):
        q = _flint_divexact(a, b)
        if q is not None:
            return q
    lb = max(b)
    cb = b[lb]
    q: dict = {}
    r = dict(a)
    while r:
        lr = max(r)
        d = tuple(x - y for x, y in zip(lr, lb))
        if min(d) < 0:
            raise ArithmeticError("inexact polynomial division")
        c = Fraction(r[lr]) / cb
        c = _clean(c)
        q[d] = c
        r = _add(r, _mul({d: c}, b), -1)
    return q


def _degree_in(a: dict, v: int) -> int:
    return max(e[v] for e in a) if a else -1


def _coeffs_in(a: dict, v: int) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for e, c in a.items():
        k = e[v]
        out.setdefault(k, {})[e[:v] + (0,) + e[v + 1:]] = c
    return out


def _from_coeffs(cs: Mapping[int, dict], v: int) -> dict:
    out = {}
    for k, p in cs.items():
        for e, c in p.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return out


def _integer_primitive(a: dict) -> dict:
    """Scale to coprime integer coefficients, positive on the lex-least term."""
    if not a:
        return {}
    den = 1
    for c in a.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // igcd(den, c.denominator)
    ints = {e: int(c * den) for e, c in a.items()}
    g = reduce(igcd, (abs(c) for c in ints.values()))
    if ints[min(ints)] < 0:
        g = -g
    return {e: c // g for e, c in ints.items()}


def _monomial_free(a: dict) -> dict:
    if not a:
        return {}
    n = len(next(iter(a)))
    lo = [min(e[i] for e in a) for i in range(n)]
    if any(lo):
        return _shift(a, [-x for x in lo])
    return a


def _univariate_gcd(a: dict, b: dict, v: int) -> dict:
    """gcd in Q[x_v] by a primitive remainder sequence over Z."""

    def to_int(p):
        cs = {e[v]: Fraction(c) for e, c in p.items()}
        den = 1
        for c in cs.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return prim([int(cs.get(k, 0) * den) for k in range(max(cs) + 1)])

    def prim(xs):
        while xs and not xs[-1]:
            xs.pop()
        g = 0
        for x in xs:
            g = math.gcd(g, x)
        if g > 1:
            xs = [x // g for x in xs]
        if xs and xs[-1] < 0:
            xs = [-x for x in xs]
        return xs

    def prem(f, g):
        f = list(f)
        lg, dg = g[-1], len(g) - 1
        while len(f) - 1 >= dg and f:
            lf, shift = f[-1], len(f) - 1 - dg
            f = [x * lg for x in f]
            for k, c in enumerate(g):
                f[k + shift] -= lf * c
            while f and not f[-1]:
                f.pop()
        return f

    f, g = to_int(a), to_int(b)
    if len(f) < len(g):
        f, g = g, f
    while g:
        f, g = g, prim(prem(f, g))
    n = len(next(iter(a)))
    return {tuple(k if i == v else 0 for i in range(n)): c for k, c in enumerate(f) if c}




def _flint_gcd(a: dict, b: dict) -> dict:
    n = len(next(iter(a)))
    a, b = _integer_primitive(a), _integer_primitive(b)
    if n == 1:
        pa = _flint.fmpz_poly([a.get((k,), 0) for k in range(max(e[0] for e in a) + 1)])
        pb = _flint.fmpz_poly([b.get((k,), 0) for k in range(max(e[0] for e in b) + 1)])
        g = {(k,): int(c) for k, c in enumerate(pa.gcd(pb).coeffs()) if c}
    else:
        ctx = _flint.fmpz_mpoly_ctx.get(tuple(f"v{i}" for i in range(n)), "lex")
        g = {tuple(int(x) for x in e): int(c) for e, c in ctx.from_dict(a).gcd(ctx.from_dict(b)).to_dict().items()}
    return _integer_primitive(_monomial_free(g))


def _poly_gcd(a: dict, b: dict) -> dict:
    if _flint is not None and a and b:
        return _flint_gcd(a, b)
    return _poly_gcd_prs(a, b)


def _poly_gcd_prs(a: dict, b: dict) -> dict:
    """gcd in Q[x_1..x_n] of polynomials with nonnegative exponents.

    Recursive primitive remainder sequence in the highest-index variable
    present, with contents handled in the remaining variables.
    """
    if not a:
        return _integer_primitive(b)
    if not b:
        return _integer_primitive(a)
    a, b = _monomial_free(a), _monomial_free(b)
    n = len(next(iter(a)))
    present = [i for i in range(n) if any(e[i] for e in a) or any(e[i] for e in b)]
    zero = (0,) * n
    if not present:
        return {zero: 1}
    v = present[-1]
    if len(present) == 1:
        return _integer_primitive(_univariate_gcd(a, b, v))
    ca, cb = _coeffs_in(a, v), _coeffs_in(b, v)
    cont_a = _content(ca)
    cont_b = _content(cb)
    g_cont = _poly_gcd_prs(cont_a, cont_b)
    pa = _primitive(ca, cont_a, v)
    pb = _primitive(cb, cont_b, v)
    if _degree_in(pa, v) < _degree_in(pb, v):
        pa, pb = pb, pa
    while pb and _degree_in(pb, v) > 0:
        r = _prem(pa, pb, v)
        if not r:
            break
        pa, pb = pb, _primitive(_coeffs_in(r, v), _content(_coeffs_in(r, v)), v)
    else:
        # pb is a nonzero constant in v (or zero): the primitive gcd is 1
        if pb:
            return _integer_primitive(_monomial_free(g_cont))
    g = pb if pb else pa
    return _integer_primitive(_monomial_free(_mul(g_cont, g)))


def _content(cs: Mapping[int, dict]) -> dict:
    vals = list(cs.values())
    g = vals[0]
    for p in vals[1:]:
        g = _poly_gcd_prs(g, p)
        if len(g) == 1 and not any(next(iter(g))):
            break
    return g


def _primitive(cs: Mapping[int, dict], content: dict, v: int) -> dict:
    return _from_coeffs({k: _divexact(p, content) for k, p in cs.items()}, v)


def _prem(a: dict, b: dict, v: int) -> dict:
    db = _degree_in(b, v)
    cb = _coeffs_in(b, v)
    lb = cb[db]
    r = a
    while r and _degree_in(r, v) >= db:
        dr = _degree_in(r, v)
        lr = _coeffs_in(r, v)[dr]
        shift = [0] * len(next(iter(r)))
        shift[v] = dr - db
        r = _add(_mul(lb, r), _shift(_mul(lr, b), shift), -1)
    return r


# --------------------------------------------------------------------------

class LaurentPoly:
    """Element of Q[x_1^±, ..., x_n^±]; immutable."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Coeff] | None = None, nvars: int | None = None):
        terms = terms or {}
        if nvars is None:
            if not terms:
                raise ValueError("nvars required for the zero polynomial")
            nvars = len(next(iter(terms)))
        self.nvars = nvars
        self.terms = {tuple(e): _clean(c) for e, c in terms.items() if c}
        for e in self.terms:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "LaurentPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "LaurentPoly":
        return cls({tuple(exps): c}, len(exps))

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: 1}, nvars)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_add(self.terms, other.terms), self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly._raw(_add(self.terms, other.terms, -1), self.nvars)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly._raw({e: _clean(c * other) for e, c in self.terms.items()} if other else {}, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly._raw(_mul(self.terms, other.terms), self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials are invertible")
            return self.inverse_monomial() ** (-k)
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """Unit of Z[x^±]: a monomial with coefficient ±1."""
        return len(self.terms) == 1 and next(iter(self.terms.values())) in (1, -1)

    def inverse_monomial(self) -> "LaurentPoly":
        (e, c), = self.terms.items()
        return LaurentPoly._raw({tuple(-x for x in e): _clean(1 / Fraction(c))}, self.nvars)

    def exponents(self) -> list[Exp]:
        return sorted(self.terms)

    def min_exponents(self) -> list[int]:
        return [min(e[i] for e in self.terms) for i in range(self.nvars)]

    def shifted(self, s: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly._raw(_shift(self.terms, s), self.nvars)

    def to_polynomial_terms(self) -> tuple[dict, list[int]]:
        """(terms with nonnegative exponents and no monomial factor, shift removed)."""
        if not self.terms:
            return {}, [0] * self.nvars
        lo = self.min_exponents()
        return _shift(self.terms, [-x for x in lo]), lo

    def normalize(self) -> "LaurentPoly":
        """Canonical associate under multiplication by units."""
        if not self.terms:
            return self
        t, _ = self.to_polynomial_terms()
        return LaurentPoly._raw(_integer_primitive(t), self.nvars)

    def unit_equivalent(self, other: "LaurentPoly") -> bool:
        return self.normalize() == other.normalize()

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        a, sa = self.to_polynomial_terms()
        b, sb = other.to_polynomial_terms()
        q = _divexact(a, b)
        return LaurentPoly._raw(_shift(q, [x - y for x, y in zip(sa, sb)]), self.nvars)

    def divides(self, other: "LaurentPoly") -> bool:
        if not self.terms:
            return not other.terms
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def transform(self, matrix: Sequence[Sequence[int]]) -> "LaurentPoly":
        """Substitute exponent vectors e -> matrix @ e (a change of basis of Z^n)."""
        out: dict = {}
        n_out = len(matrix)
        for e, c in self.terms.items():
            ne = tuple(sum(row[j] * e[j] for j in range(self.nvars)) for row in matrix)
            v = out.get(ne, 0) + c
            if v:
                out[ne] = v
            else:
                del out[ne]
        return LaurentPoly._raw(out, n_out)

    def bar(self) -> "LaurentPoly":
        """Image of the group-ring involution: invert every monomial."""
        return LaurentPoly._raw({tuple(-x for x in e): c for e, c in self.terms.items()}, self.nvars)

    def evaluate(self, values: Sequence) -> object:
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                term = term * (v ** k)
            total = total + term
        return total

    def to_text(self, names: Sequence[str] | None = None) -> str:
        return format_poly(self.terms, names or default_names(self.nvars))


def default_names(n: int) -> list[str]:
    if n == 1:
        return ["t"]
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def format_poly(terms: Mapping[Exp, Coeff], names: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        mono = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
        )
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_POLY_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def parse_laurent(text: str, names: Sequence[str]) -> LaurentPoly:
    """Parse ``3*x^2*y^-1 - 1/2`` style text; parentheses and products allowed."""
    n = len(names)
    index = {name: i for i, name in enumerate(names)}
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _POLY_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        toks.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    toks.append(("end", ""))
    k = 0

    def peek():
        return toks[k]

    def take():
        nonlocal k
        k += 1
        return toks[k - 1]

    def expr():
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * factor()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * factor()
            else:
                return acc

    def signed_int():
        sign = 1
        if peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        kind, val = take()
        if kind != "num" or "/" in val:
            raise ValueError("exponent must be an integer")
        return sign * int(val)

    def factor():
        kind, val = take()
        if kind == "num":
            base = LaurentPoly.constant(Fraction(val), n)
        elif kind == "name":
            if val not in index:
                raise ValueError(f"unknown variable {val!r}")
            base = LaurentPoly.variable(index[val], n)
        elif val == "(":
            base = expr()
            if take()[1] != ")":
                raise ValueError("unbalanced parenthesis")
        elif val == "-":
            return -factor()
        else:
            raise ValueError(f"unexpected {val!r}")
        if peek() == ("op", "^"):
            take()
            base = base ** signed_int()
        return base

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input {peek()[1]!r}")
    return result


def gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Normalized gcd in Q[x^±]; gcd(0, 0) = 0."""
    n = a.nvars
    if not a.terms and not b.terms:
        return LaurentPoly.zero(n)
    pa, _ = a.to_polynomial_terms()
    pb, _ = b.to_polynomial_terms()
    return LaurentPoly._raw(_poly_gcd(pa, pb), n)


def gcd_all(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    g = LaurentPoly.zero(nvars)
    for p in polys:
        if not p:
            continue
        g = gcd(g, p) if g else p.normalize()
        if len(g.terms) == 1:
            break
    return g


def psi_degree(p: LaurentPoly, psi: Sequence[int]) -> int:
    """Width of the Newton polytope of ``p`` in direction ``psi``."""
    if not p.terms:
        raise ValueError("psi_degree of the zero polynomial is undefined")
    vals = [sum(a * b for a, b in zip(e, psi)) for e in p.terms]
    return max(vals) - min(vals)


# --------------------------------------------------------------------------

class RatFunc:
    """Element of Q(z_1..z_k) as a reduced fraction of Laurent polynomials.

    The denominator is kept in ``normalize`` form, which makes the
    representation canonical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, *, reduce_=True):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce_:
            num, den = _reduce_fraction(num, den)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_int(cls, c, nvars: int) -> "RatFunc":
        return cls(LaurentPoly.constant(c, nvars), LaurentPoly.one(nvars), reduce_=False)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_int(other, self.nvars)
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if len(self.den.terms) == 1:
                return RatFunc(self.num + other.num, self.den, reduce_=False)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce_=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RatFunc.from_int(0, self.nvars)
        if len(self.den.terms) == 1 and len(other.den.terms) == 1:
            return RatFunc(self.num * other.num, self.den, reduce_=False)
        # cross-cancel before multiplying to keep sizes down
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        n = self.num.exact_div(g1) * other.num.exact_div(g2)
        d = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFunc(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RatFunc({self.to_text()!r})"

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"z{i + 1}" for i in range(self.nvars)]
        n = self.num.to_text(names)
        if self.den == 1:
            return n
        return f"({n})/({self.den.to_text(names)})"


def _reduce_fraction(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    nv = num.nvars
    if not num:
        return LaurentPoly.zero(nv), LaurentPoly.one(nv)
    if den.is_monomial():
        return num * den.inverse_monomial(), LaurentPoly.one(nv)
    g = gcd(num, den)
    if not (len(g.terms) == 1):
        num = num.exact_div(g)
        den = den.exact_div(g)
    # make the denominator canonical: divide both by the unit den / normalize(den)
    dn = den.normalize()
    unit = den.exact_div(dn)  # a scalar monomial
    return num * unit.inverse_monomial(), dn


# --------------------------------------------------------------------------

class OneVarPoly:
    """Laurent polynomial in one variable ``t`` over a commutative field.

    Coefficients are any objects supporting + - * / and truthiness, such
    as ``Fraction`` or ``RatFunc``.  ``zero`` and ``one`` are the field's
    constants.
    """

    __slots__ = ("coeffs", "zero", "one")

    def __init__(self, coeffs: Mapping[int, object], zero, one):
        self.coeffs = {k: c for k, c in coeffs.items() if c}
        self.zero = zero
        self.one = one

    def _new(self, coeffs):
        p = object.__new__(OneVarPoly)
        p.coeffs = coeffs
        p.zero = self.zero
        p.one = self.one
        return p

    @classmethod
    def constant(cls, c, zero, one) -> "OneVarPoly":
        return cls({0: c}, zero, one)

    def __add__(self, other: "OneVarPoly"):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k, self.zero) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "OneVarPoly"):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, OneVarPoly):
            return self._new({k: c * other for k, c in self.coeffs.items() if c * other})
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                v = out.get(i + j, self.zero) + a * b
                if v:
                    out[i + j] = v
                else:
                    out.pop(i + j, None)
        return self._new(out)

    def __eq__(self, other):
        return isinstance(other, OneVarPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"OneVarPoly({self.to_text()})"

    def low(self) -> int:
        return min(self.coeffs)

    def high(self) -> int:
        return max(self.coeffs)

    def degree(self) -> int:
        """Spread: highest minus lowest power of t."""
        if not self.coeffs:
            raise ValueError("degree of zero")
        return self.high() - self.low()

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def shift(self, k: int) -> "OneVarPoly":
        return self._new({i + k: c for i, c in self.coeffs.items()})

    def normalize(self) -> "OneVarPoly":
        """Monic, lowest power zero."""
        if not self.coeffs:
            return self
        lo, hi = self.low(), self.high()
        lead = self.coeffs[hi]
        return self._new({i - lo: c / lead for i, c in self.coeffs.items()})

    def divmod(self, other: "OneVarPoly") -> tuple["OneVarPoly", "OneVarPoly"]:
        """Laurent division with ``degree(remainder) < degree(other)``."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        r = dict(self.coeffs)
        q: dict = {}
        ohi, olo = other.high(), other.low()
        lead = other.coeffs[ohi]
        span = ohi - olo
        while r and max(r) - min(r) >= span:
            rhi = max(r)
            k = rhi - ohi
            f = r[rhi] / lead
            q[k] = q.get(k, self.zero) + f
            for j, c in other.coeffs.items():
                key = j + k
                v = r.get(key, self.zero) - f * c
                if v:
                    r[key] = v
                else:
                    r.pop(key, None)
        return self._new({k: c for k, c in q.items() if c}), self._new(r)

    def gcd(self, other: "OneVarPoly") -> "OneVarPoly":
        a, b = self, other
        while b:
            _, r = a.divmod(b)
            a, b = b, r
        return a.normalize() if a else a

    def to_text(self, coeff_text: Callable[[object], str] | None = None, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        coeff_text = coeff_text or (lambda c: c.to_text() if hasattr(c, "to_text") else str(c))
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = coeff_text(self.coeffs[k])
            if k == 0:
                parts.append(f"({c})" if " " in c else c)
                continue
            mono = var if k == 1 else f"{var}^{k}"
            if c == "1":
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}" if " " in c else f"{c}*{mono}")
        return " + ".join(parts)
