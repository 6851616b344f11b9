"""
Topological consequences of the level-0 invariants: lower bounds for the
Thurston norm and for ropelength, and obstructions to fibering over the
circle and to symplectic structures on X x S^1.

Every verdict records the hypotheses that cannot be checked from a group
presentation as caveats.  Quantities at levels n >= 1 are never computed
here; callers may supply them (``higher``: level -> {psi: value}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .alexander import InvariantReport

THURSTON = "thurston-lower-bound"
FIBERING = "fibering-obstruction"
ROPELENGTH = "ropelength"
SYMPLECTIC = "symplectic-obstruction"

CITE_DELBAR = "degree bound: dbar_n(psi) <= ||psi||_T (+1+beta_3 when beta_1 = 1, n = 0)"
CITE_LINK = "link meridian bound: delta_n(psi_i) <= ||psi_i||_T + 1"
CITE_FIBER = "fibering obstruction: r_n != 0 or nonconstant degrees d_ij"
CITE_ROPE = "ropelength bound: R(L_i) >= 2pi(1 + sqrt(delta_n(psi_i) - 1))"
CITE_SYMPL = "symplectic obstruction: dbar_n(psi) > dbar_0(psi) (beta_1 >= 2) or > dbar_0 - 2 (beta_1 = 1)"

Higher = Mapping[int, Mapping[tuple[int, ...], int]]


@dataclass(frozen=True)
class BoundVerdict:
    kind: str
    applicable: bool
    value: object = None
    citation: str = ""
    caveats: tuple[str, ...] = ()
    fired: bool | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "applicable": self.applicable,
            "value": self.value,
            "citation": self.citation,
            "caveats": list(self.caveats),
        }
        if self.fired is not None:
            out["fired"] = self.fired
        if self.details:
            out["details"] = self.details
        return out


def _is_generator(report: InvariantReport) -> bool:
    return report.beta1 == 1 and abs(report.psi[0]) == 1


def thurston_lower_bound(report: InvariantReport, beta3: int, meridian: bool = False) -> BoundVerdict:
    """Lower bound for ||psi||_T.

    ``meridian`` marks psi as the class dual to one component of a link in
    S^3, which adds the bound delta_0(psi) - 1.
    """
    if beta3 not in (0, 1):
        raise ValueError("beta3 must be 0 (nonempty boundary) or 1 (closed)")
    caveats = ["assumes X is a compact orientable 3-manifold with this fundamental group"]
    details: dict = {}
    if report.beta1 >= 2:
        value = report.delta0_bar
        details["delta0_bar"] = value
    elif _is_generator(report):
        value = report.delta0_bar - 1 - beta3
        details["delta0_bar"] = report.delta0_bar
        details["beta3"] = beta3
        caveats.append("excludes X = S^1 x S^2 and X = S^1 x D^2")
    else:
        return BoundVerdict(
            THURSTON, False, None, CITE_DELBAR,
            ("beta_1 = 1 and psi is not a generator of H^1",),
        )
    citation = CITE_DELBAR
    if meridian:
        link_value = report.delta0 - 1
        details["link_meridian_bound"] = link_value
        if link_value > value:
            value = link_value
            citation = CITE_LINK
        caveats.append("psi is the meridian class of a link component in S^3")
    value = max(value, 0)
    return BoundVerdict(THURSTON, True, value, citation, tuple(caveats), details=details)


def fibering_obstruction(reports: Sequence[InvariantReport], higher: Higher | None = None,
                         higher_ranks: Mapping[int, int] | None = None, beta3: int | None = None) -> BoundVerdict:
    """Evaluate the fibering obstruction on the sampled classes.

    ``higher`` gives delta_n values for n >= 1 keyed by psi; ``higher_ranks``
    gives r_n for n >= 1.
    """
    if not reports:
        raise ValueError("at least one report is required")
    beta1 = reports[0].beta1
    levels: dict[int, dict[tuple[int, ...], int]] = {0: {tuple(r.psi): r.delta0 for r in reports}}
    for n, vals in (higher or {}).items():
        if n < 1:
            raise ValueError("supplied levels must be >= 1")
        levels[n] = {tuple(k): v for k, v in vals.items()}
    fired: list[str] = []
    if any(r.r0 != 0 for r in reports):
        fired.append("(1) r_0 != 0")
    for n, r in sorted((higher_ranks or {}).items()):
        if r != 0:
            fired.append(f"(1) r_{n} != 0 (supplied)")
    grid = [list(r.psi) for r in reports]
    ns = sorted(levels)
    if beta1 >= 2:
        for i in ns:
            for j in ns:
                if i >= j:
                    continue
                common = [p for p in levels[0] if p in levels[i] and p in levels[j]]
                if len(common) == len(levels[0]) and all(levels[i][p] != levels[j][p] for p in common):
                    fired.append(f"(2) d_{i}{j} != 0 on every sampled psi")
    else:
        for i in ns:
            for j in ns:
                if i < j and i >= 1:
                    if any(levels[i][p] != levels[j][p] for p in levels[i] if p in levels[j]):
                        fired.append(f"(3) d_{i}{j} != 0")
        if beta3 is not None:
            for p in levels[0]:
                if abs(p[0]) != 1:
                    continue
                for j in ns:
                    if j >= 1 and p in levels[j] and levels[0][p] - levels[j][p] != 1 + beta3:
                        fired.append(f"(4) d_0{j} != 1 + beta_3")
    caveats = ["assumes X is a compact orientable 3-manifold with this fundamental group"]
    if beta1 >= 2:
        caveats.append("the 'for all psi' condition is checked on the sampled grid only")
    if len(ns) == 1:
        caveats.append("no higher-order degrees supplied; only r_0 was tested")
    return BoundVerdict(
        FIBERING, True, sorted(set(fired)), CITE_FIBER, tuple(caveats),
        fired=bool(fired), details={"grid": grid, "levels": ns},
    )


def _sqrt_text(k: int) -> str:
    r = math.isqrt(k)
    if r * r == k:
        return str(r)
    return f"sqrt({k})"


def _rope_expr(k: int) -> tuple[str, float]:
    if k <= 0:
        return "2*pi", 2 * math.pi
    r = math.isqrt(k)
    if r * r == k:
        return f"{2 * (1 + r)}*pi", 2 * math.pi * (1 + r)
    return f"2*pi*(1+sqrt({k}))", 2 * math.pi * (1 + math.sqrt(k))


def ropelength_bound(report: InvariantReport, component: int, with_bar: bool | None = None) -> BoundVerdict:
    """Ropelength of the link component dual to ``report.psi``."""
    caveats: list[str] = [f"psi is the meridian class of component {component}"]
    if report.delta0 <= 1:
        caveats.append("degenerate: delta_0 <= 1 gives only R >= 2pi")
    expr, val = _rope_expr(report.delta0 - 1)
    details = {"component": component, "delta0": report.delta0, "primary": {"expr": expr, "decimal": round(val, 6)}}
    best_expr, best_val, citation = expr, val, CITE_ROPE
    if with_bar is None:
        with_bar = report.beta1 >= 2
    if with_bar:
        if report.beta1 >= 2:
            bexpr, bval = _rope_expr(report.delta0_bar)
            details["bar"] = {"expr": bexpr, "decimal": round(bval, 6)}
            if bval > best_val:
                best_expr, best_val = bexpr, bval
        else:
            details["bar"] = None
            caveats.append("the dbar form needs beta_1 >= 2 at level 0")
    return BoundVerdict(
        ROPELENGTH, True, {"expr": best_expr, "decimal": round(best_val, 6)}, citation,
        tuple(caveats), details=details,
    )


def symplectic_obstruction(reports: Sequence[InvariantReport], higher_bar: Higher | None = None) -> BoundVerdict:
    """X x S^1 is not symplectic if the supplied dbar_n exceed dbar_0."""
    tag = "conditional on: closed, irreducible"
    if not reports:
        raise ValueError("at least one report is required")
    if not higher_bar:
        return BoundVerdict(SYMPLECTIC, False, None, CITE_SYMPL, (tag, "no higher-order degrees supplied"))
    beta1 = reports[0].beta1
    base = {tuple(r.psi): r.delta0_bar for r in reports}
    fired: list[str] = []
    for n, vals in sorted(higher_bar.items()):
        if n < 1:
            raise ValueError("supplied levels must be >= 1")
        vals = {tuple(k): v for k, v in vals.items()}
        if beta1 >= 2:
            if all(p in vals for p in base) and all(vals[p] > base[p] for p in base):
                fired.append(f"(1) dbar_{n} > dbar_0 on every sampled psi")
        else:
            for p, b in base.items():
                if abs(p[0]) == 1 and p in vals and vals[p] > b - 2:
                    fired.append(f"(2) dbar_{n} > dbar_0 - 2")
    caveats = [tag]
    if beta1 >= 2:
        caveats.append("the 'for all psi' condition is checked on the sampled grid only")
    return BoundVerdict(
        SYMPLECTIC, True, sorted(set(fired)), CITE_SYMPL, tuple(caveats),
        fired=bool(fired), details={"grid": [list(p) for p in base]},
    )
