"""``sympdef`` command-line driver.

Exit codes: 0 success, 1 mathematical failure or obstruction, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from sympdef import artin, deformation as dfm, dgla, symplectic
from sympdef.errors import ConfigError, SympdefError
from sympdef.laurent import max_terms, parse_space
from sympdef.serialize import (
    dump_json, load_json, parse_base, parse_grid, parse_ideal, parse_period, parse_rational,
)


class Outcome:
    def __init__(self, ok: bool, text: str, data=None):
        self.ok = ok
        self.text = text
        self.data = data if data is not None else {"ok": ok, "message": text}


def _load_deformation(path: str) -> dfm.Deformation:
    return dfm.Deformation.from_json(load_json(path))


def _fmt_vec(v):
    return [f"{x.numerator}/{x.denominator}" for x in v]


# -- commands -----------------------------------------------------------------

def cmd_verify(args) -> Outcome:
    space = parse_space(args.space)
    A = parse_base(args.base)
    values = parse_grid(args.grid)
    if args.perturbations < 0:
        raise ConfigError("--perturbations must be non-negative")
    if args.max_points < 1:
        raise ConfigError("--max-points must be positive")
    sample = dfm.period_grid(space, A, values, max_points=args.max_points, seed=args.seed)
    full = dfm.grid_size(space, A, values)
    report = dfm.verify_period_bijection(space, A, sample, perturbations=args.perturbations, seed=args.seed)
    if args.fixture:
        report["fixtures"] = 0
        fixture = load_json(args.fixture)
        for n, entry in enumerate(fixture.get("deformations", [])):
            report["fixtures"] += 1
            try:
                D = dfm.Deformation.from_json(entry)
                claimed = tuple(tuple(parse_rational(x) for x in c) for c in entry["claimed_period"])
            except (KeyError, TypeError) as exc:
                raise ConfigError(f"fixture entry {n} is malformed: {exc}") from exc
            except SympdefError as exc:
                report["failures"].append({"kind": "fixture_invalid", "entry": n, "error": str(exc)})
                continue
            if D.period().coords != claimed:
                report["failures"].append({"kind": "fixture_period", "entry": n})
            else:
                rebuilt = dfm.construct_from_period(space if D.space == space else D.space, D.base,
                                                    claimed, D.reference)
                iso = dfm.find_isomorphism(D, rebuilt)
                if not iso or not iso.verify():
                    report["failures"].append({"kind": "fixture_isomorphism", "entry": n})
    rt, iso = report["round_trips"], report["isomorphism_checks"]
    lines = [
        f"space {space}, base {args.base} (dim {A.dim}), grid {values[0]}..{values[-1]}, "
        f"{len(sample)} of {full} points",
        f"round trips: {rt['passed']}/{rt['total']}",
        f"isomorphic equal-period pairs: {iso['equal_period_pairs']}",
        f"separated distinct-period pairs: {iso['separated_pairs']}",
        f"H2 x m dimension: {report['torsor_dims']['classes']}",
        f"failures: {len(report['failures'])}",
    ]
    for f in report["failures"]:
        lines.append("  " + json.dumps(f, sort_keys=True))
    return Outcome(not report["failures"], "\n".join(lines), report)


def cmd_construct(args) -> Outcome:
    space = parse_space(args.space)
    A = parse_base(args.base)
    D = dfm.construct_from_period(space, A, parse_period(A, args.period))
    return Outcome(True, json.dumps(D.to_json(), indent=2), D.to_json())


def cmd_lift(args) -> Outcome:
    D0 = _load_deformation(args.input)
    A = parse_base(args.base)
    I = parse_ideal(A, args.ideal)
    if not I.is_square_zero():
        return Outcome(False, f"ideal ({args.ideal}) is not square-zero in {args.base}; "
                              "lifting needs an elementary square-zero extension")
    check = artin.is_elementary(A, I)
    if not check:
        return Outcome(False, f"extension is not elementary; witness {A.format(check.witness)}")
    lifts = dfm.ks_lift_set(D0, A, I)
    torsor = [parse_rational(x) for x in args.torsor.split(",")] if args.torsor else None
    D = dfm.lift_deformation(D0, A, I, torsor=torsor, lifts=lifts)
    # eta-compatibility and restriction, checked before anything is written
    if lifts.eta(dfm.relative_ks(D, I)).coords != lifts.theta0.coords:
        raise SympdefError("lifted deformation violates eta-compatibility")
    Q, D0q = dfm._rehome(D0, A, I)
    if dfm.restrict_deformation(D, Q).omega != D0q.omega:
        raise SympdefError("lifted deformation does not restrict to the input")
    return Outcome(True, json.dumps(D.to_json(), indent=2), D.to_json())


def cmd_period(args) -> Outcome:
    D = _load_deformation(args.input)
    P = D.period()
    return Outcome(True, P.format(), P.to_json())


def cmd_ks(args) -> Outcome:
    D = _load_deformation(args.input)
    ks = dfm.kodaira_spencer(D)
    data = {"kahler_basis": [ks.module.label(k) for k in range(ks.module.dim)],
            "coords": [_fmt_vec(v) for v in ks.coords]}
    return Outcome(True, ks.format() or "0", data)


def cmd_iso(args) -> Outcome:
    D1 = _load_deformation(args.source)
    D2 = _load_deformation(args.target)
    res = dfm.find_isomorphism(D1, D2)
    if not res:
        return Outcome(False, f"no isomorphism: {res.message}",
                       {"ok": False, "class_index": res.class_index, "difference": _fmt_vec(res.difference)})
    ok = res.verify()
    lines = [f"isomorphism found ({len(res.steps)} steps), verified: {ok}"]
    lines += [f"  level {lvl}: xi = {xi.format()}" for lvl, xi in res.steps]
    return Outcome(ok, "\n".join(lines),
                   {"ok": ok, "steps": [{"level": lvl, "xi": xi.format()} for lvl, xi in res.steps]})


def cmd_mc(args) -> Outcome:
    g = dgla.validate_dgla(load_json(args.dgla))
    res = dgla.mc_solve(g, g.parse(1, args.gamma1), args.order)
    if isinstance(res, dgla.Obstructed):
        return Outcome(False, res.format(), {"ok": False, "order": res.order,
                                              "class": _fmt_vec(res.cohomology_class),
                                              "rhs": _fmt_vec(res.rhs)})
    residuals = dgla.check_mc(res)
    ok = not any(any(r) for r in residuals)
    text = res.format() + f"\nresiduals zero through order {res.order}: {ok}"
    return Outcome(ok, text, {"ok": ok, "gamma": [_fmt_vec(c) for c in res.coefficients]})


def cmd_ttcheck(args) -> Outcome:
    space = parse_space(args.space)
    if args.trials < 1 or args.maxdeg < 0:
        raise ConfigError("--trials must be positive and --maxdeg non-negative")
    Q = artin.ArtinAlgebra.rationals()
    omega = symplectic.as_symplectic(symplectic.standard_form(space))
    rng = random.Random(args.seed)
    zero = 0
    for _ in range(args.trials):
        ham = None if args.general else omega
        a = symplectic.random_tangent_form(rng, space, Q, 2, 2, args.maxdeg, hamiltonian_on=ham)
        b = symplectic.random_tangent_form(rng, space, Q, 2, 2, args.maxdeg, hamiltonian_on=ham)
        zero += bool(symplectic.tian_todorov_check(omega, a, b))
    kind = "general" if args.general else "d-closed"
    text = f"{zero}/{args.trials} residual zero ({kind} inputs)"
    return Outcome(zero == args.trials, text, {"ok": zero == args.trials, "zero": zero, "trials": args.trials,
                                               "inputs": kind})


def cmd_elementary(args) -> Outcome:
    A = parse_base(args.algebra)
    I = parse_ideal(A, args.ideal)
    res = artin.is_elementary(A, I)
    if res:
        return Outcome(True, "elementary", {"ok": True, "elementary": True})
    w = A.format(res.witness)
    return Outcome(False, f"not elementary; witness {w}", {"ok": False, "elementary": False, "witness": w})


def cmd_filtration(args) -> Outcome:
    A = parse_base(args.algebra)
    steps = artin.madic_filtration(A)
    lines, data = [], []
    for s in steps:
        gens = ", ".join(s.source.format(v) for v in s.ideal.basis)
        lines.append(f"dim {s.source.dim} -> dim {s.target.dim}, ideal <{gens}>, "
                     f"{'elementary' if s.elementary else 'NOT elementary'}")
        data.append({"source_dim": s.source.dim, "target_dim": s.target.dim, "elementary": s.elementary})
    ok = all(s.elementary for s in steps)
    return Outcome(ok, "\n".join(lines) or "trivial algebra: no steps", {"ok": ok, "steps": data})


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sympdef", description="Symplectic deformations over Artin bases.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    # the same options are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    add = sub.add_parser

    def add_parser(name, **kw):
        return add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("verify", help="desk-scale check of the period bijection")
    s.add_argument("--space", required=True)
    s.add_argument("--base", required=True)
    s.add_argument("--grid", required=True, help="coordinate values, a..b or a comma list")
    s.add_argument("--perturbations", type=int, default=1)
    s.add_argument("--max-points", type=int, default=200, help="sample the grid when it is larger")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--fixture", help="JSON file of deformations with claimed periods")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", help="canonical deformation with a given period")
    s.add_argument("--space", required=True)
    s.add_argument("--base", required=True)
    s.add_argument("--period", required=True, help="one base polynomial per class, ';'-separated")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("lift", help="lift a deformation along an elementary extension")
    s.add_argument("--input", required=True)
    s.add_argument("--base", required=True)
    s.add_argument("--ideal", required=True)
    s.add_argument("--torsor", default="", help="comma-separated coordinates in H2 x I")
    s.set_defaults(func=cmd_lift)

    for name, func, helptext in (("period", cmd_period, "period coordinates"),
                                 ("ks", cmd_ks, "Kodaira-Spencer class")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--input", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("iso", help="search for an isomorphism of deformations")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("mc", help="solve the Maurer-Cartan recursion")
    s.add_argument("--dgla", required=True)
    s.add_argument("--gamma1", required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("ttcheck", help="random checks of the Tian-Todorov identity")
    s.add_argument("--space", required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--maxdeg", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--general", action="store_true", help="sample arbitrary (not d-closed) inputs")
    s.set_defaults(func=cmd_ttcheck)

    s = sub.add_parser("elementary", help="is A -> A/I elementary?")
    s.add_argument("--algebra", required=True)
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_elementary)

    s = sub.add_parser("filtration", help="m-adic filtration steps")
    s.add_argument("--algebra", required=True)
    s.set_defaults(func=cmd_filtration)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        max_terms()
        outcome = args.func(args)
    except ConfigError as exc:
        print(f"sympdef: error: {exc}", file=sys.stderr)
        return 2
    except SympdefError as exc:
        outcome = Outcome(False, f"failed: {exc}", {"ok": False, "error": type(exc).__name__,
                                                     "message": str(exc)})
    text = dump_json(outcome.data) if args.format == "json" else outcome.text
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return 0 if outcome.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
