"""Command line front end: ``difftower solve hyper|plde FILE``, ``pnf``, ``bounds``, ``validate``."""

import argparse
import json
import sys
from fractions import Fraction

from .dsl import parse_problem
from .errors import DiffTowerError, ParseError
from .hyper import hypergeometric_solutions, prepare_operator
from .normal_form import pnf_decompose, pnf_refined
from .ore import OreOp
from .plde import _clear, iteration_limit, pi_laurent_bounds, sigma_degree_bound, solve_plde, universal_denominator
from .render import family_record, plain
from .sequence import SequenceModel, verify_solution
from .tower import PI, SIGMA

EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3


def _report_dict(rep):
    return {"ok": rep.ok, "checked": rep.checked, "horizon": rep.horizon, "message": rep.message}


def _need_equation(problem):
    if not problem.coeffs:
        raise ParseError("the problem has no equation")


def run_hyper(problem, args):
    _need_equation(problem)
    if not problem.homogeneous:
        raise ParseError("hypergeometric solving needs a homogeneous equation (right-hand side 0)")
    T = problem.tower
    L = OreOp(T, problem.coeffs)
    level = max(L.level, 0)
    _, stripped = prepare_operator(L)
    fams = hypergeometric_solutions(T, L, level, pruning=args.pruning)
    model = SequenceModel(T, problem.inits)
    out = {"task": "hyper", "order": L.order, "stripped": stripped, "families": []}
    ok = True
    for fam in fams:
        rec = family_record(T, model, fam, args.verify, L.order)
        rep = verify_solution(model, problem.coeffs, fam, args.verify)
        rec["verification"] = _report_dict(rep)
        ok &= rep.ok
        out["families"].append(rec)
    return out, ok


def run_plde(problem, args):
    _need_equation(problem)
    T = problem.tower
    domain = args.domain or problem.domain
    basis = solve_plde(T, problem.coeffs, problem.rhs, domain=domain, check_tower=not args.no_validate)
    model = SequenceModel(T, problem.inits)
    rep = verify_solution(model, problem.coeffs, basis, args.verify, problem.rhs)
    vecs = [{"g": plain(T, g), "c": [str(Fraction(int(c.numerator), int(c.denominator))) for c in cs]}
            for g, cs in basis]
    out = {"task": "plde", "domain": domain, "dimension": len(vecs), "basis": vecs,
           "verification": _report_dict(rep)}
    return out, rep.ok


def run_pnf(problem, args):
    if problem.pnf_input is None:
        raise ParseError("the problem has no 'pnf:' statement")
    T = problem.tower
    r = problem.pnf_input
    base = pnf_decompose(T, r)
    ref = pnf_refined(T, r)
    out = {"task": "pnf",
           "a": plain(T, base.a), "b": plain(T, base.b), "c": plain(T, base.c),
           "refined": {"z": plain(T, ref.z), "a": plain(T, ref.a), "b": plain(T, ref.b), "c": plain(T, ref.c)}}
    return out, True


def run_bounds(problem, args):
    _need_equation(problem)
    T = problem.tower
    level = max(T.level_of(c) for c in problem.coeffs + problem.rhs)
    if level == 0:
        raise DiffTowerError("bounds need an equation involving a tower variable")
    a, b = _clear(T, problem.coeffs, problem.rhs)
    out = {"task": "bounds", "variable": T.names[level - 1],
           "denominator": plain(T, universal_denominator(T, a, b, level))}
    if T.kind(level) == PI:
        lb = pi_laurent_bounds(T, a, b, level)
        out.update(kind="pi", order_low=lb.order_low, degree_high=lb.degree_high, m=lb.m, M=lb.M)
    elif T.kind(level) == SIGMA:
        out.update(kind="sigma", degree_bound=sigma_degree_bound(T, a, b, level))
    else:
        raise DiffTowerError("bounds are defined for sum and product monomials only")
    return out, True


def run_validate(problem, args):
    T = problem.tower
    report = T.validate()
    levels = [{"level": r.level, "name": r.name, "kind": r.kind, "ok": r.ok, "message": r.message,
               "witness": plain(T, r.witness) if r.witness is not None else None} for r in report.levels]
    return {"task": "validate", "ok": report.ok, "levels": levels}, report.ok


def _text(out):
    task = out["task"]
    lines = []
    if task == "hyper":
        n = len(out["families"])
        lines.append(f"{n} hypergeometric famil{'y' if n == 1 else 'ies'}")
        if out["stripped"]:
            lines.append(f"removed right factor E^{out['stripped']}")
        for i, fam in enumerate(out["families"], start=1):
            lines.append(f"family {i}: u = {fam['u']}")
            lines.append(f"  basis: {', '.join(fam['basis'])}")
            for r in fam["render"]:
                lines.append(f"  {r}")
            v = fam["verification"]
            lines.append(f"  check: {v['message']} ({v['checked']} points, n <= {v['horizon']})")
    elif task == "plde":
        lines.append(f"dimension {out['dimension']} over {out['domain']}")
        for vec in out["basis"]:
            lines.append(f"g = {vec['g']}; c = ({', '.join(vec['c'])})")
        v = out["verification"]
        lines.append(f"check: {v['message']} ({v['checked']} points, n <= {v['horizon']})")
    elif task == "pnf":
        lines.append(f"a = {out['a']}")
        lines.append(f"b = {out['b']}")
        lines.append(f"c = {out['c']}")
        ref = out["refined"]
        lines.append(f"refined: z = {ref['z']}; a = {ref['a']}; b = {ref['b']}; c = {ref['c']}")
    elif task == "bounds":
        lines.append(f"denominator: {out['denominator']}")
        if out["kind"] == "pi":
            lines.append(f"{out['variable']}-exponents between {out['order_low']} and {out['degree_high']}"
                         f" (m = {out['m']}, M = {out['M']})")
        else:
            lines.append(f"degree bound in {out['variable']}: {out['degree_bound']}")
    else:
        for lev in out["levels"]:
            status = "ok" if lev["ok"] else "FAIL"
            msg = f": {lev['message']}" if lev["message"] else ""
            wit = f" (witness {lev['witness']})" if lev["witness"] else ""
            lines.append(f"level {lev['level']} {lev['name']} [{lev['kind']}] {status}{msg}{wit}")
        lines.append("tower is valid" if out["ok"] else "tower is not valid")
    return "\n".join(lines)


RUNNERS = {"hyper": run_hyper, "plde": run_plde, "pnf": run_pnf, "bounds": run_bounds, "validate": run_validate}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verify", type=int, default=30, metavar="N", help="numeric check horizon")
    common.add_argument("--pruning", type=int, choices=(0, 1, 2), default=2)
    common.add_argument("--max-sigma-iterations", type=int, default=50)
    common.add_argument("--no-validate", action="store_true", help="skip the tower check")
    common.add_argument("--domain", choices=("field", "poly", "inv-poly", "laurent"))
    common.add_argument("--out", help="also write the output to this file")

    p = argparse.ArgumentParser(prog="difftower", description="Solve difference equations over towers of sums and products.")
    sub = p.add_subparsers(dest="command", required=True)
    solve = sub.add_parser("solve", help="hypergeometric or parameterized solving")
    ssub = solve.add_subparsers(dest="task", required=True)
    ssub.add_parser("hyper", parents=[common], help="all hypergeometric solutions")
    ssub.add_parser("plde", parents=[common], help="solution basis of a parameterized equation")
    sub.add_parser("pnf", parents=[common], help="normal form of the 'pnf:' expression")
    sub.add_parser("bounds", parents=[common], help="denominator and degree bounds")
    sub.add_parser("validate", parents=[common], help="check the tower")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    task = args.task if args.command == "solve" else args.command
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        problem = parse_problem(text, validate=not args.no_validate and task != "validate")
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        with iteration_limit(args.max_sigma_iterations):
            out, ok = RUNNERS[task](problem, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DiffTowerError, ValueError, ZeroDivisionError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    text = json.dumps(out, indent=2, sort_keys=True) if args.format == "json" else _text(out)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if not ok:
        return EXIT_VERIFY if task in ("hyper", "plde") else EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
