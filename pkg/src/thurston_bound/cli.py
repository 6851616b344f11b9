"""
Command-line interface: ``thurston-bound {compute,wirtinger,jacobian,skew-demo}``.

Exit status is 0 on success, 2 for bad input and 3 when computed data
contradicts an internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .abelian import abelianize, primitive_grid
from .alexander import InconsistentInput, compute_invariants
from .foxcalc import jacobian
from .linkio import PDError, parse_pd, wirtinger
from .obstructions import (
    fibering_obstruction,
    ropelength_bound,
    symplectic_obstruction,
    thurston_lower_bound,
)
from .words import PresentationSyntaxError, parse_presentation, render

SCHEMA = 1
EXIT_INPUT = 2
EXIT_CONSISTENCY = 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(args):
    """Return (presentation, meridian basis or None)."""
    if args.pres:
        return parse_presentation(_read(args.pres)), None
    pd = parse_pd(_read(args.pd))
    return wirtinger(pd, drop_redundant=not args.no_drop_redundant)


def _parse_psis(specs: Sequence[str], mu: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for spec in specs:
        if spec.startswith("all-grid:"):
            try:
                bound = int(spec.split(":", 1)[1])
            except ValueError:
                raise InputError(f"bad grid spec {spec!r}") from None
            if bound < 1:
                raise InputError("grid bound must be positive")
            out.extend(primitive_grid(mu, bound))
            continue
        try:
            vec = tuple(int(x) for x in spec.split(","))
        except ValueError:
            raise InputError(f"bad class {spec!r}; expected comma-separated integers") from None
        if len(vec) != mu:
            raise InputError(f"class {spec!r} has {len(vec)} entries but beta_1 = {mu}")
        if not any(vec):
            raise InputError("the zero class is not allowed")
        out.append(vec)
    seen = set()
    return [v for v in out if not (v in seen or seen.add(v))]


def build_report(p, meridians, psis_spec, beta3: int, link: bool, verify_skew: bool) -> dict:
    ab = abelianize(p)
    if ab.mu == 0:
        raise InputError("beta_1 = 0: there are no nonzero cohomology classes")
    psis = _parse_psis(psis_spec or ["all-grid:1"], ab.mu)
    reports = compute_invariants(p, psis, ab, verify_skew=verify_skew)
    names = list(ab.basis_names)
    meridian_of: dict[tuple[int, ...], int] = {}
    if meridians is not None:
        for comp in range(meridians.component_count):
            meridian_of[meridians.class_for(ab, comp)] = comp
    elif link:
        for k in range(ab.mu):
            meridian_of[tuple(int(i == k) for i in range(ab.mu))] = k
    classes = []
    for r in reports:
        comp = meridian_of.get(tuple(r.psi))
        r.verdicts.append(thurston_lower_bound(r, beta3, meridian=comp is not None))
        if comp is not None:
            r.verdicts.append(ropelength_bound(r, comp))
        entry = r.to_json(names)
        entry.pop("alexander_poly")
        entry.pop("beta1")
        entry["diagonal"] = {
            "torsion": [q.to_text() for q in r.form.torsion],
            "free_rank": r.form.free_rank,
            "null_relations": r.form.null_relations,
        }
        if comp is not None:
            entry["meridian_of_component"] = comp
        classes.append(entry)
    report = {
        "schema": SCHEMA,
        "presentation": {"generators": p.ngens, "relators": len(p.relators)},
        "beta1": ab.mu,
        "torsion_h1": list(ab.torsion),
        "basis": ab.describe_basis(p.generators),
        "alexander_polynomial": reports[0].delta_X.to_text(names),
        "classes": classes,
        "verdicts": [
            fibering_obstruction(reports).to_json(),
            symplectic_obstruction(reports).to_json(),
        ],
    }
    if meridians is not None:
        report["components"] = meridians.component_count
    if verify_skew:
        report["skew_oracle"] = "agrees"
    return report


def format_text(report: dict) -> str:
    lines = [
        f"beta_1 = {report['beta1']}" + (f", torsion {report['torsion_h1']}" if report["torsion_h1"] else ""),
        "basis: " + ", ".join(report["basis"]),
        f"Alexander polynomial: {report['alexander_polynomial']}",
    ]
    for c in report["classes"]:
        psi = ",".join(str(x) for x in c["psi"])
        lines.append(
            f"psi = ({psi}): ||psi||_A = {c['alex_norm']}, r0 = {c['r0']}, "
            f"delta0 = {c['delta0']}, dbar0 = {c['delta0_bar']}, degrees {c['diagonal_degrees']}"
        )
        for v in c["verdicts"]:
            lines.append(f"    {v['kind']}: {_value_text(v)}")
    for v in report["verdicts"]:
        lines.append(f"{v['kind']}: {_value_text(v)}")
    return "\n".join(lines) + "\n"


def _value_text(v: dict) -> str:
    if not v["applicable"]:
        return "not applicable (" + "; ".join(v["caveats"]) + ")"
    if "fired" in v:
        return ("fires: " + ", ".join(v["value"])) if v["fired"] else "silent"
    val = v["value"]
    if isinstance(val, dict):
        return f">= {val['expr']} ~ {val['decimal']}"
    return f">= {val}"


def cmd_compute(args) -> int:
    p, meridians = _load(args)
    report = build_report(p, meridians, args.psi, args.beta3, args.link, args.verify_skew_oracle)
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(format_text(report))
    return 0


def cmd_wirtinger(args) -> int:
    pd = parse_pd(_read(args.file))
    p, mb = wirtinger(pd, drop_redundant=not args.no_drop_redundant)
    sys.stdout.write(f"# components: {mb.component_count}\n")
    for name, comp in zip(p.generators, mb.component_of):
        sys.stdout.write(f"# {name}: meridian of component {comp}\n")
    sys.stdout.write(render(p) + "\n")
    return 0


def cmd_jacobian(args) -> int:
    p, _ = _load(args)
    ab = abelianize(p)
    J = jacobian(p, ab)
    for line in ab.describe_basis(p.generators):
        sys.stdout.write(f"# {line}\n")
    sys.stdout.write(J.to_tsv())
    return 0


def cmd_skew_demo(args) -> int:
    from .skewcore import NotLinearError, diagonalize, matrix_from_tsv

    text = _read(args.file)
    try:
        M = matrix_from_tsv(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    l, m = M.shape
    try:
        result = diagonalize(M, linearize_entries=args.linearize)
    except NotLinearError as exc:
        raise InputError(f"{exc}; pass --linearize to stabilize") from None
    replay_ok = M.replay() == M.rows
    out = {
        "schema": SCHEMA,
        "field": M.ring.name,
        "shape": [l, m],
        "torsion": [_skew_text(q) for q in result.torsion],
        "degrees": result.degrees,
        "torsion_rank": result.torsion_rank,
        "linearized_shape": list(result.linearized_shape),
        "bound": min(result.linearized_shape),
        "free_rank": result.free_rank,
        "null_relations": result.null_relations,
        "moves": len(M.moves),
        "replay": replay_ok,
    }
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    if not replay_ok:
        return EXIT_CONSISTENCY
    return 0


def _skew_text(q) -> str:
    parts = []
    for k in sorted(q.coeffs):
        c = q.coeffs[k]
        c_text = c.to_text() if hasattr(c, "to_text") else str(c)
        parts.append(f"t^{k}*({c_text})" if k else f"({c_text})")
    return " + ".join(parts)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thurston-bound", description="Alexander-type invariants and Thurston norm bounds")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--pres", metavar="FILE", help="presentation in the <gens | relators> language")
        g.add_argument("--pd", metavar="FILE", help="PD code as JSON")
        sp.add_argument("--no-drop-redundant", action="store_true",
                        help="keep all Wirtinger relators for PD input")

    c = sub.add_parser("compute", help="invariants, bounds and obstructions")
    add_input(c)
    c.add_argument("--psi", action="append", metavar="VEC",
                   help="class as comma-separated integers, or all-grid:N (repeatable; default all-grid:1)")
    c.add_argument("--beta3", type=int, choices=(0, 1), required=True,
                   help="0 for manifolds with boundary, 1 for closed ones")
    c.add_argument("--link", action="store_true",
                   help="treat the basis classes as meridians of link components")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--json", dest="format", action="store_const", const="json")
    c.add_argument("--verify-skew-oracle", action="store_true",
                   help="recompute each diagonal form with the skew engine")
    c.set_defaults(func=cmd_compute)

    w = sub.add_parser("wirtinger", help="PD code to presentation")
    w.add_argument("file")
    w.add_argument("--no-drop-redundant", action="store_true")
    w.set_defaults(func=cmd_wirtinger)

    j = sub.add_parser("jacobian", help="dump the Fox Jacobian as TSV")
    add_input(j)
    j.set_defaults(func=cmd_jacobian)

    s = sub.add_parser("skew-demo", help="diagonalize a matrix over K[t^±1]")
    s.add_argument("file", help="TSV matrix with a '# field:' header line")
    s.add_argument("--linearize", action="store_true", help="stabilize entries that are not a + t b")
    s.set_defaults(func=cmd_skew_demo)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PresentationSyntaxError, PDError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistentInput as exc:
        print(f"consistency check failed: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
