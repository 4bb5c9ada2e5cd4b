"""Command-line surface: instance generation, sub-clause analysis, assignment
generation, 2-SAT reduction, verification suites, batch experiments and
graph/expansion exports.

Exit codes: 0 success, 2 bad usage or parameters, 3 DIMACS parse error,
4 size guardrail, 5 hypothesis failure, 6 claim falsified.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import experiments, verify
from .assignments import (HEURISTICS, TIE_BREAKS, consumption_rate, excluded_literals,
                          subclause_count, subclause_total, thresholds, unsolved_curve)
from .dimacs import DimacsError, emit_dimacs, literal_to_dimacs, parse_dimacs
from .formula import (Assignment, Formula, GuardrailError, check_consistent, evaluate,
                      literal_str, make_literal, parse_literal, random_formula, var_of)
from .hypernodal import (build_hypernodal, expand_literal, expansion_to_json,
                         export_dot, find_contradictions, merge_active)
from .reduction import (HypothesisError, assignment_satisfies_2sat, reduce_to_2sat,
                        solve_2sat)
from .subclauses import build_space, interaction_matrix, space_census

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_GUARDRAIL = 4
EXIT_HYPOTHESIS = 5
EXIT_FALSIFIED = 6

OUT_DIR_ENV = "HYPERSAT_OUT"


def out_dir() -> str:
    return os.environ.get(OUT_DIR_ENV, ".")


def write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as handle:
        handle.write(text)
    os.replace(tmp, path)


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def emit(args, text: str) -> None:
    if getattr(args, "out", None):
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


@dataclass
class RunConfig:
    """Resolved input for commands that accept a file or a generator spec."""

    source: str            # "file" or "generated"
    formula: Formula
    label: str


def resolve_formula(args) -> RunConfig:
    has_input = getattr(args, "input", None) is not None
    has_gen = getattr(args, "gen", None) is not None
    if has_input == has_gen:
        raise UsageError("exactly one input source required: INPUT path or --gen n,r,seed")
    if has_input:
        with open(args.input, "rb") as handle:
            return RunConfig("file", parse_dimacs(handle.read()), args.input)
    try:
        n_text, r_text, seed_text = args.gen.split(",")
        n, r, seed = int(n_text), float(r_text), int(seed_text)
    except ValueError:
        raise UsageError(f"--gen expects 'n,r,seed', got {args.gen!r}") from None
    return RunConfig("generated", random_formula(n, r, seed), f"gen(n={n},r={r},seed={seed})")


class UsageError(ValueError):
    pass


def parse_assignment(text: str, n: int) -> Assignment:
    """Accepts 'x0,-x1' style literals or DIMACS-signed integers."""
    literals = []
    for token in text.replace(",", " ").split():
        if token.lstrip("-").startswith("x"):
            literals.append(parse_literal(token))
        else:
            try:
                value = int(token)
            except ValueError:
                raise UsageError(f"cannot read literal {token!r}") from None
            if value == 0:
                raise UsageError("literal 0 is not valid")
            literals.append(make_literal(abs(value) - 1, negative=value < 0))
    for lit in literals:
        if var_of(lit) >= n:
            raise UsageError(f"literal {literal_str(lit)} out of range for n={n}")
    return check_consistent(literals)


def assignment_json(a: Assignment) -> list[str]:
    return [literal_str(lit) for lit in sorted(a, key=var_of)]


def instance_filename(n: int, r: float, seed: int, k: int) -> str:
    r_text = f"{r:g}".replace(".", "p")
    return f"k{k}_n{n}_r{r_text}_s{seed}.cnf"


def cmd_gen(args) -> int:
    directory = args.out_dir or out_dir()
    os.makedirs(directory, exist_ok=True)
    seeds = range(args.seed, args.seed + args.count)
    files = []
    for seed in seeds:
        f = random_formula(args.n, args.r, seed, k=args.k)
        path = os.path.join(directory, instance_filename(args.n, args.r, seed, args.k))
        write_atomic(path, emit_dimacs(f, comment=f"n={args.n} r={args.r} seed={seed}"))
        files.append(path)
    sys.stdout.write(dump_json({"files": files}))
    return EXIT_OK


def cmd_analyze(args) -> int:
    config = resolve_formula(args)
    f = config.formula
    report: dict = {"input": config.label, "n": f.n, "m": f.m, "ratio": f.ratio}
    space = build_space(f)
    occurrences = f.occurrences()
    all_literals = [lit for v in range(f.n) for lit in (make_literal(v, True), make_literal(v))]
    report["satisfied"] = {literal_str(lit): sorted(occurrences.get(lit, []))
                           for lit in all_literals}
    report["subclauses"] = [
        {"id": sid, "literals": [literal_str(x) for x in space.pairs[sid]],
         "creators": sorted(literal_str(c) for c in space.creators[sid]),
         "parents": sorted(space.parents[sid])}
        for sid in range(len(space))]
    report["created"] = {literal_str(lit): sorted(space.subclauses_of(lit))
                         for lit in all_literals}
    report["subsat"] = {literal_str(lit): sorted(space.subsat(lit))
                        for lit in all_literals}
    th = thresholds(space)
    report["thresholds"] = {"minimum": th.minimum, "maximum": th.maximum}
    if f.n >= 2:
        census = space_census(space, f)
        report["census"] = {"possible": census.possible, "actual": census.actual,
                            "per_clause_bound": census.per_clause_bound,
                            "ratio": float(census.ratio)}
    else:
        report["census"] = None
    if args.assignment:
        a = parse_assignment(args.assignment, f.n)
        activated = sorted(space.activated(a))
        report["assignment"] = {
            "literals": assignment_json(a),
            "activated": activated,
            "subclause_count": subclause_count(space, a),
            "subclause_total": subclause_total(space, a),
            "fraction_satisfied": evaluate(f, a).fraction,
        }
    if args.matrix:
        write_atomic(args.matrix, interaction_matrix(space).to_csv())
        report["matrix_csv"] = args.matrix
    emit(args, dump_json(report))
    return EXIT_OK


def cmd_assign(args) -> int:
    config = resolve_formula(args)
    f = config.formula
    space = build_space(f)
    a = experiments.generate_assignment(args.heuristic, f, space,
                                        seed=args.seed, tie_break=args.tie_break)
    report = evaluate(f, a)
    payload: dict = {
        "input": config.label,
        "heuristic": args.heuristic,
        "tie_break": args.tie_break,
        "metadata": {"minCreateMaxSolve_reading":
                     "argmax of solved-minus-created per variable"},
        "assignment": assignment_json(a),
        "fraction_satisfied": report.fraction,
        "unsatisfied_clauses": list(report.unsatisfied_ids),
        "subclause_count": subclause_count(space, a),
        "subclause_total": subclause_total(space, a),
        "consumption_rate": consumption_rate(space, a) if a else None,
    }
    curve = unsolved_curve(space, a, sorted(a, key=var_of))
    payload["inflection"] = curve.inflection
    if args.curve_csv:
        write_atomic(args.curve_csv, curve.to_csv())
        payload["curve_csv"] = args.curve_csv
    if report.unsatisfied_ids:
        exclusion = excluded_literals(space, a)
        payload["exclusion"] = {
            "unsolved_subclauses": sorted(exclusion.unsolved),
            "excluded": [literal_str(x) for x in sorted(exclusion.excluded, key=var_of)],
            "allowed": [literal_str(x) for x in sorted(exclusion.allowed, key=var_of)],
        }
    emit(args, dump_json(payload))
    return EXIT_OK


def cmd_reduce(args) -> int:
    config = resolve_formula(args)
    f = config.formula
    space = build_space(f)
    if args.assignment:
        a = parse_assignment(args.assignment, f.n)
    else:
        a = experiments.generate_assignment(args.heuristic, f, space, seed=args.seed)
    t = reduce_to_2sat(space, f, a)
    verdict = solve_2sat(t)
    violated = assignment_satisfies_2sat(t, a)
    payload = {
        "input": config.label,
        "assignment": assignment_json(a),
        "clauses": t.m,
        "satisfiable": verdict.satisfiable,
        "witness_variable": verdict.witness_variable,
        "assignment_satisfies": not violated,
        "violated": [[literal_str(x) for x in pair] for pair in violated],
    }
    if args.out_base:
        cnf_path = args.out_base + ".cnf"
        write_atomic(cnf_path, emit_dimacs(t.to_formula(), comment="2-sat reduction"))
        provenance = {
            " ".join(str(literal_to_dimacs(x)) for x in pair): [
                {"creator": literal_str(creator), "parent_clause": parent}
                for creator, parent in events]
            for pair, events in t.provenance.items()}
        sidecar_path = args.out_base + ".provenance.json"
        write_atomic(sidecar_path, dump_json(provenance))
        payload["files"] = [cnf_path, sidecar_path]
    sys.stdout.write(dump_json(payload))
    return EXIT_OK


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--n-range expects 'lo..hi', got {text!r}") from None


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    n_range = parse_range(args.n_range)
    reports = []
    for name in names:
        suite = verify.SUITES[name]
        kwargs = {"seed": args.seed}
        if name == "theorem":
            kwargs.update(instances=args.instances, n_range=n_range, r=args.r)
        elif name == "corollary1":
            kwargs.update(instances=args.instances, n_range=n_range, r=args.r)
        elif name == "2sat-oracle":
            kwargs.update(instances=args.instances, max_n=min(n_range[1], 12))
        elif name == "merge":
            kwargs.update(pairs=args.instances, n_range=n_range, r=args.r)
        elif name == "sandwich":
            kwargs.update(pairs=args.instances, n_range=n_range, r=args.r)
        elif name == "census":
            kwargs.update(instances=args.instances, n_range=n_range, r=args.r)
        report = suite(**kwargs)
        print(report.summary_line())
        reports.append(report)
    sys.stdout.write(dump_json([vars(rep) for rep in reports]))
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_FALSIFIED


def cmd_experiment(args) -> int:
    if args.curve:
        result = experiments.run_curve_experiment(
            n=args.n, r=args.r, instances=args.instances, seed=args.seed)
        payload = result.to_json_dict()
        if args.out_base:
            json_path = args.out_base + ".json"
            csv_path = args.out_base + ".csv"
            write_atomic(json_path, dump_json(payload))
            write_atomic(csv_path, result.curve_csv())
            payload["files"] = [json_path, csv_path]
        sys.stdout.write(dump_json(payload))
        return EXIT_OK
    generators = tuple(args.generators.split(","))
    summary = experiments.run_fraction_experiment(
        n=args.n, r=args.r, count=args.count, generators=generators,
        seed=args.seed, tie_break=args.tie_break, with_curves=args.with_curves)
    payload = summary.to_json_dict()
    if args.out_base:
        json_path = args.out_base + ".json"
        csv_path = args.out_base + ".csv"
        write_atomic(json_path, dump_json(payload))
        write_atomic(csv_path, summary.to_csv())
        payload["files"] = [json_path, csv_path]
    sys.stdout.write(dump_json(payload))
    return EXIT_OK


def cmd_export(args) -> int:
    config = resolve_formula(args)
    f = config.formula
    space = build_space(f)
    if args.expand is not None:
        lit = parse_literal(args.expand)
        if args.depth < 0:
            raise UsageError("--depth must be >= 0")
        tree = expand_literal(space, lit, args.depth)
        text = export_dot(tree) if args.dot else dump_json(expansion_to_json(tree))
        emit(args, text)
        return EXIT_OK
    hg = build_hypernodal(space)
    if args.assignment:
        a = parse_assignment(args.assignment, f.n)
        merged = merge_active(hg, a)
        text = export_dot(merged)
        contradictions = find_contradictions(hg, a)
        sys.stderr.write(f"merged graph consistent: {contradictions.consistent}\n")
    else:
        text = export_dot(hg)
    emit(args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypersat",
        description="3-SAT sub-clause decomposition, thresholds, 2-SAT reductions "
                    "and hypernodal implication graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate random DIMACS instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=float, default=4.25)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=1, help="files for seeds seed..seed+count-1")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--out-dir", default=None, help=f"default: ${OUT_DIR_ENV} or .")
    p.set_defaults(func=cmd_gen)

    def add_input(p):
        p.add_argument("input", nargs="?", default=None, help="DIMACS CNF path")
        p.add_argument("--gen", default=None, metavar="N,R,SEED",
                       help="generate the instance instead of reading a file")

    p = sub.add_parser("analyze", help="sub-clause space report (optionally matrix CSV)")
    add_input(p)
    p.add_argument("--matrix", default=None, metavar="CSV", help="write interaction matrix")
    p.add_argument("--assignment", default=None, help="literals like '-x0,x1' or DIMACS ints")
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("assign", help="generate an assignment and evaluate it")
    add_input(p)
    p.add_argument("--heuristic", required=True,
                   choices=list(HEURISTICS) + ["greedy", "greedyDynamic", "random"])
    p.add_argument("--tie-break", choices=list(TIE_BREAKS), default="true")
    p.add_argument("--seed", type=int, default=1, help="seed for --heuristic random")
    p.add_argument("--curve-csv", default=None, help="write the unsolved-sub-clause curve")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_assign)

    p = sub.add_parser("reduce", help="assignment-induced 2-SAT reduction")
    add_input(p)
    p.add_argument("--assignment", default=None)
    p.add_argument("--heuristic", default="minCreate",
                   choices=list(HEURISTICS) + ["greedy", "greedyDynamic", "random"])
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out-base", default=None,
                   help="write BASE.cnf and BASE.provenance.json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="oracle-driven verification suites")
    p.add_argument("--suite", default="all",
                   choices=list(verify.SUITES) + ["all"])
    p.add_argument("--instances", type=int, default=500)
    p.add_argument("--n-range", default="6..12")
    p.add_argument("--r", type=float, default=4.25)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="batch experiments (fractions or curves)")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--r", type=float, default=4.25)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--generators", default="minCreateMaxSolve,greedy,random")
    p.add_argument("--tie-break", choices=list(TIE_BREAKS), default="true")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--with-curves", action="store_true",
                   help="record the inflection step per record")
    p.add_argument("--curve", action="store_true",
                   help="unsolved-sub-clause curve experiment over satisfiable instances")
    p.add_argument("--instances", type=int, default=120,
                   help="satisfiable instances to accept in --curve mode")
    p.add_argument("--out-base", default=None, help="write BASE.json and BASE.csv")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("export", help="DOT graphs and expansion trees")
    add_input(p)
    p.add_argument("--dot", action="store_true", help="emit DOT")
    p.add_argument("--assignment", default=None, help="merged graph for this assignment")
    p.add_argument("--expand", default=None, metavar="LIT", help="expansion tree root literal")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DimacsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardrailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL
    except HypothesisError as exc:
        print(f"error: hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
