"""
Planar-diagram (PD) codes for links and their Wirtinger presentations.

Convention: a crossing ``[a, b, c, d]`` lists its four edge labels
counterclockwise starting from the incoming under-edge ``a``; ``c`` is
the outgoing under-edge and ``b``, ``d`` are the two over-edges.  Edge
labels along each component form a contiguous run ``lo..hi`` and the
component is oriented by increasing label, wrapping from ``hi`` to
``lo``::

              c
              ^
              |
     d <------|------ b        over-strand b -> d: negative crossing
              |                over-strand d -> b: positive crossing
              a

The Wirtinger generators are the arcs of the diagram: classes of edges
joined through over-crossings.  At a crossing with over-arc x_o the
relation is ``x_c = x_o x_a x_o^-1`` (positive) or
``x_c = x_o^-1 x_a x_o`` (negative).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .words import GroupPresentation, Word


class PDError(ValueError):
    """Malformed PD code."""


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    components: int | None = None

    def labels(self) -> list[int]:
        return sorted({x for c in self.crossings for x in c})


@dataclass(frozen=True)
class MeridianBasis:
    """``component_of[g]`` is the link component whose meridian the
    Wirtinger generator g represents."""

    component_count: int
    component_of: tuple[int, ...]

    def class_for(self, ab, component: int) -> tuple[int, ...]:
        """Coordinates of ψ_i (1 on the meridian of ``component``) in the
        basis chosen by ``ab``, which must be a generator basis."""
        if any(g is None for g in ab.basis_generators):
            raise ValueError("abelianization basis is not made of generators")
        return tuple(int(self.component_of[g] == component) for g in ab.basis_generators)


def parse_pd(text: str) -> PDCode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PDError(f"invalid JSON: {exc}") from None
    if isinstance(data, list):
        data = {"pd": data}
    if not isinstance(data, dict) or "pd" not in data:
        raise PDError('expected an object with a "pd" field')
    comps = data.get("components")
    if comps is not None and (not isinstance(comps, int) or comps < 1):
        raise PDError('"components" must be a positive integer')
    crossings = []
    for k, c in enumerate(data["pd"]):
        if not isinstance(c, list) or len(c) != 4 or not all(isinstance(x, int) and not isinstance(x, bool) for x in c):
            raise PDError(f"crossing {k}: expected four integer labels, got {c!r}")
        if any(x <= 0 for x in c):
            raise PDError(f"crossing {k}: labels must be positive")
        crossings.append(tuple(c))
    pd = PDCode(tuple(crossings), comps)
    validate(pd)
    return pd


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _component_runs(pd: PDCode) -> list[tuple[int, int]]:
    uf = _UnionFind(pd.labels())
    for a, b, c, d in pd.crossings:
        uf.union(a, c)
        uf.union(b, d)
    groups: dict[int, list[int]] = {}
    for x in pd.labels():
        groups.setdefault(uf.find(x), []).append(x)
    runs = []
    for members in groups.values():
        lo, hi = min(members), max(members)
        if len(members) != hi - lo + 1:
            raise PDError(f"labels {sorted(members)} of one component are not contiguous")
        runs.append((lo, hi))
    return sorted(runs)


def validate(pd: PDCode) -> None:
    if not pd.crossings:
        raise PDError("PD code has no crossings")
    counts: dict[int, int] = {}
    for c in pd.crossings:
        for x in c:
            counts[x] = counts.get(x, 0) + 1
    bad = sorted(x for x, n in counts.items() if n != 2)
    if bad:
        raise PDError(f"labels {bad} do not occur exactly twice")
    runs = _component_runs(pd)
    if pd.components is not None and pd.components != len(runs):
        raise PDError(f"declared {pd.components} components, found {len(runs)}")
    _check_planar(pd)
    for k, (a, b, c, d) in enumerate(pd.crossings):
        if c != _next(runs, a):
            raise PDError(f"crossing {k}: outgoing under-edge {c} does not follow {a}")
        _over_sign(runs, k, b, d)


def _check_planar(pd: PDCode) -> None:
    """Euler characteristic check: a diagram with n crossings on a sphere
    made of k connected pieces has n + 1 + k faces."""
    ends: dict[int, list[tuple[int, int]]] = {}
    for k, c in enumerate(pd.crossings):
        for p, x in enumerate(c):
            ends.setdefault(x, []).append((k, p))
    other = {}
    for darts in ends.values():
        u, v = darts
        other[u], other[v] = v, u
    seen = set()
    faces = 0
    for start in other:
        if start in seen:
            continue
        faces += 1
        dart = start
        while dart not in seen:
            seen.add(dart)
            k, p = other[dart]
            dart = (k, (p - 1) % 4)
    uf = _UnionFind(range(len(pd.crossings)))
    for u, v in ((darts[0][0], darts[1][0]) for darts in ends.values()):
        uf.union(u, v)
    pieces = len({uf.find(k) for k in range(len(pd.crossings))})
    expected = len(pd.crossings) + 1 + pieces
    if faces != expected:
        raise PDError(f"not a planar diagram: {faces} faces, expected {expected}")


def _run_of(runs, e):
    return next(r for r in runs if r[0] <= e <= r[1])


def _next(runs, e: int) -> int:
    lo, hi = _run_of(runs, e)
    return e + 1 if e < hi else lo


def _over_sign(runs, k, b, d) -> int:
    # prefer the reading without wrap-around (matters for 2-edge components)
    if d == b + 1:
        return -1
    if b == d + 1:
        return 1
    if d == _next(runs, b):
        return -1
    if b == _next(runs, d):
        return 1
    raise PDError(f"crossing {k}: over-edges {b}, {d} are not consecutive")


def crossing_signs(pd: PDCode) -> list[int]:
    runs = _component_runs(pd)
    return [_over_sign(runs, k, c[1], c[3]) for k, c in enumerate(pd.crossings)]


def _names(n: int) -> list[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(letters):
        return list(letters[:n])
    return [f"x{i + 1}" for i in range(n)]


def wirtinger(pd: PDCode, drop_redundant: bool = True) -> tuple[GroupPresentation, MeridianBasis]:
    """Wirtinger presentation, one generator per arc and one relator per
    crossing; with ``drop_redundant`` the last crossing's relator is
    omitted (it follows from the others)."""
    validate(pd)
    runs = _component_runs(pd)
    uf = _UnionFind(pd.labels())
    for _, b, _, d in pd.crossings:
        uf.union(b, d)
    roots = sorted({uf.find(x) for x in pd.labels()})
    index = {r: i for i, r in enumerate(roots)}

    def gen(e):
        return index[uf.find(e)]

    relators = []
    for (a, b, c, d), sign in zip(pd.crossings, crossing_signs(pd)):
        xa, xo, xc = Word.letter(gen(a)), Word.letter(gen(b)), Word.letter(gen(c))
        if sign > 0:
            rel = xo * xa * xo.inverse() * xc.inverse()
        else:
            rel = xo.inverse() * xa * xo * xc.inverse()
        relators.append(rel)
    if drop_redundant and relators:
        relators = relators[:-1]
    comp_of = tuple(runs.index(_run_of(runs, r)) for r in roots)
    pres = GroupPresentation(tuple(_names(len(roots))), tuple(relators))
    return pres, MeridianBasis(len(runs), comp_of)


def to_json(pd: PDCode) -> str:
    out = {"pd": [list(c) for c in pd.crossings]}
    if pd.components is not None:
        out["components"] = pd.components
    return json.dumps(out)
