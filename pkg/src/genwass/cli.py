"""Command-line front door: parse a problem file, dispatch the solvers,
emit reports, and run the verification suites.

Exit status is the only pass/fail channel: 0 on success, 1 on a
verification failure, 2 on an input error.  With --format json the machine
report goes to stdout and any human-readable text to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .duality import solve_flat, verify_optimality
from .errors import GenwassError
from .gh import check_pushforward_stability, make_gh_map
from .params import EntropyParams
from .quotient import check_quotient_contraction, check_quotient_isometry
from .scalars import coerce, parse_scalar, scalar_to_json
from .selftest import run_selftest
from .solver_wp import solve


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GenwassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genwass",
        description="Exact unbalanced-transport solving and verification on finite metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=(name != "selftest"), help="problem JSON file")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--mode", choices=("exact", "float"), default=None)
        p.add_argument("--tol", type=float, default=None, help="verification tolerance override")
        p.add_argument("--seed", type=int, default=None, help="seed override for randomized checks")
        p.add_argument("--p", default=None, help="order override")
        p.add_argument("--a", default=None, help="mass-change rate override")
        p.add_argument("--b", default=None, help="transport rate override")
        p.set_defaults(handler=handler)
        return p

    add("dist", cmd_dist, "print the distance value")
    add("plan", cmd_plan, "distance plus the optimal plan")
    add("dual", cmd_dual, "distance plus dual potentials and the duality gap (p = 1)")
    add("flat", cmd_flat, "independent flat-metric LP value and witness (p = 1)")
    verify = add("verify", cmd_verify, "optimality certificate for solver output")
    verify.add_argument("--report", default=None, help="verify a previously emitted plan report")
    add("quotient", cmd_quotient, "quotient contraction/isometry checks")
    add("gh", cmd_gh, "map defects and the pushforward stability bound")
    add("selftest", cmd_selftest, "oracle cross-checks and property suites")
    return parser


def _load(args) -> jsonio.Problem:
    with open(args.input) as fh:
        doc = json.load(fh)
    problem = jsonio.load_problem(doc, mode=args.mode)
    overrides = {}
    if args.a is not None:
        overrides["a"] = coerce(parse_scalar(args.a), problem.space.exact)
    if args.b is not None:
        overrides["b"] = coerce(parse_scalar(args.b), problem.space.exact)
    if args.p is not None:
        p_raw = parse_scalar(args.p)
        overrides["p"] = int(p_raw) if p_raw == int(p_raw) else float(p_raw)
    if overrides:
        params = problem.params
        problem.params = EntropyParams(
            a=overrides.get("a", params.a),
            b=overrides.get("b", params.b),
            p=overrides.get("p", params.p),
        )
    if args.seed is not None:
        problem.seed = args.seed
    return problem


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc))
        for line in text_lines:
            print(line, file=sys.stderr)
    else:
        for line in text_lines:
            print(line)


def cmd_dist(args) -> int:
    problem = _load(args)
    report = solve(problem.space, problem.mu, problem.nu, problem.params)
    _emit(args, {"value": scalar_to_json(report.value)}, [f"{report.value}"])
    return 0


def cmd_plan(args) -> int:
    problem = _load(args)
    report = solve(problem.space, problem.mu, problem.nu, problem.params)
    doc = jsonio.report_to_json(report)
    lines = [f"value: {report.value}", f"transported mass: {report.transported_mass}"]
    for i, row in enumerate(report.plan.gamma):
        lines.append(f"  {problem.space.labels[i]}: " + " ".join(str(x) for x in row))
    _emit(args, doc, lines)
    return 0


def cmd_dual(args) -> int:
    problem = _load(args)
    if problem.params.p != 1:
        print("error: dual potentials are only available for p = 1", file=sys.stderr)
        return 2
    report = solve(problem.space, problem.mu, problem.nu, problem.params)
    doc = jsonio.report_to_json(report)
    lines = [
        f"value: {report.value}",
        "phi1: " + " ".join(str(x) for x in report.potentials.phi1),
        "phi2: " + " ".join(str(x) for x in report.potentials.phi2),
        f"gap: {report.duality_gap}",
    ]
    _emit(args, doc, lines)
    return 0


def cmd_flat(args) -> int:
    problem = _load(args)
    value, witness = solve_flat(problem.space, problem.mu, problem.nu, problem.params)
    doc = {"flat_value": scalar_to_json(value), "f": [scalar_to_json(x) for x in witness.f]}
    _emit(args, doc, [f"flat value: {value}", "witness: " + " ".join(str(x) for x in witness.f)])
    return 0


def cmd_verify(args) -> int:
    problem = _load(args)
    if problem.params.p != 1:
        print("error: the certificate is only defined for p = 1", file=sys.stderr)
        return 2
    if args.report:
        with open(args.report) as fh:
            rep_doc = json.load(fh)
        plan = jsonio.parse_plan(rep_doc["plan"], problem.space)
        potentials = jsonio.parse_potentials(
            rep_doc["phi1"], rep_doc["phi2"], problem.space, problem.params
        )
    else:
        report = solve(problem.space, problem.mu, problem.nu, problem.params)
        plan, potentials = report.plan, report.potentials
    cert = verify_optimality(
        problem.space, problem.mu, problem.nu, problem.params, plan, potentials, tol=args.tol
    )
    doc = jsonio.certificate_to_json(cert)
    lines = [f"condition {k}: {'pass' if v else 'FAIL'}" for k, v in cert.conditions().items()]
    _emit(args, doc, lines)
    return 0 if cert.passed else 1


def cmd_quotient(args) -> int:
    problem = _load(args)
    if problem.action is None:
        print("error: quotient checks need a 'group' field", file=sys.stderr)
        return 2
    tol = args.tol if args.tol is not None else (0 if problem.space.exact else 1e-9)
    up, down = check_quotient_contraction(problem.action, problem.mu, problem.nu, problem.params)
    contraction_ok = float(down) <= float(up) + float(tol)
    doc = {
        "upstairs": scalar_to_json(up),
        "downstairs": scalar_to_json(down),
        "contraction_ok": contraction_ok,
    }
    lines = [f"upstairs: {up}", f"downstairs: {down}"]
    isometry_ok = True
    try:
        up_i, down_i = check_quotient_isometry(problem.action, problem.mu, problem.nu, problem.params)
        isometry_ok = abs(float(up_i) - float(down_i)) <= float(tol)
        doc["isometry_ok"] = isometry_ok
        lines.append(f"isometry (invariant measures): {'pass' if isometry_ok else 'FAIL'}")
    except GenwassError:
        doc["isometry_ok"] = "not-applicable (measures not invariant)"
        lines.append("isometry: skipped, measures are not invariant")
    verdict = contraction_ok and isometry_ok is not False
    doc["verdict"] = "pass" if verdict else "fail"
    lines.append(f"verdict: {doc['verdict']}")
    _emit(args, doc, lines)
    return 0 if verdict else 1


def cmd_gh(args) -> int:
    with open(args.input) as fh:
        doc = json.load(fh)
    source = jsonio.parse_space(doc["source"], exact=None if args.mode is None else args.mode == "exact")
    target = jsonio.parse_space(doc["target"], exact=source.exact)
    ghmap = make_gh_map(doc["map"], source, target)
    params = jsonio.parse_params(doc.get("params", {"a": 1, "b": 1, "p": 1}), exact=False)
    mass_cap = float(parse_scalar(doc.get("C", 1)))
    seed = args.seed if args.seed is not None else int(doc.get("seed", 0))
    stability = check_pushforward_stability(ghmap, params, mass_cap, seed=seed)
    out = {"defect": scalar_to_json(ghmap.epsilon), **{k: scalar_to_json(v) for k, v in stability.items()}}
    ok = stability["deviation_ok"] and stability["surjectivity_ok"]
    lines = [
        f"defect: {ghmap.epsilon}",
        f"stability bound: {stability['bound']}",
        f"max deviation: {stability['max_deviation']} ({'pass' if stability['deviation_ok'] else 'FAIL'})",
        f"surjectivity side: {stability['max_surjectivity_gap']} <= {stability['surjectivity_bound']}"
        f" ({'pass' if stability['surjectivity_ok'] else 'FAIL'})",
    ]
    _emit(args, out, lines)
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    seed = args.seed if args.seed is not None else 0
    ok, lines = run_selftest(seed=seed)
    doc = {"ok": ok, "checks": lines}
    _emit(args, doc, lines + [f"selftest: {'pass' if ok else 'FAIL'}"])
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
