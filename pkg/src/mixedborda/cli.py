"""Command-line front end.

Machine output is JSON with every rational written as a ``"p/q"`` string
in lowest terms, so it is byte-stable for a fixed input and seed.  Table
output is for humans and rounds to six decimals.

Exit codes: 0 success, 1 parse or validation error, 2 failed check.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from . import axioms
from .fulkerson import run_fulkerson
from .generators import random_permutation, suite_graph
from .graph_core import (
    Assignment,
    GraphError,
    format_fraction,
    graph_from_dict,
    loads_json,
    parse_fraction,
    prepare,
)
from .mbb_solver import solve_detailed
from .oracle import TooLarge, enumerate_branchings, oracle_assignment
from .parametric_limit import chain_from_dict, parametric_at, solve_parametric_limit, watershed
from .random_walk import DEFAULT_EPS, DEFAULT_TOL, rwr_estimate

SEED_ENV = "MIXEDBORDA_SEED"
CHECKS = ("anonymity", "copy", "confluence", "guru", "sink-monotone")
EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    rule: str = "mbb"
    eps: Fraction | None = None
    tol: Fraction = DEFAULT_TOL
    seed: int = 0
    instances: int = 100
    checks: tuple[str, ...] = CHECKS
    format: str = "json"

    def __post_init__(self):
        if self.rule == "rw" and self.eps is None:
            raise ValueError("rule 'rw' needs --eps")


# -- output --------------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def assignment_payload(a: Assignment) -> dict:
    return {
        "assignment": a.to_dict(),
        "weights": {s: format_fraction(w) for s, w in a.weights().items()},
        "removed": list(a.removed),
    }


def assignment_table(a: Assignment) -> str:
    width = max([len(s) for s in a.cols] + [8])
    lines = ["(display only: values rounded to 6 decimals)"]
    lines.append(" " * 10 + "".join(f"{s:>{width + 2}}" for s in a.cols))
    for v in a.rows:
        lines.append(f"{v:<10}" + "".join(f"{float(a[v, s]):>{width + 2}.6f}" for s in a.cols))
    lines.append(f"{'weight':<10}" + "".join(f"{float(w):>{width + 2}.6f}" for w in a.weights().values()))
    if a.removed:
        lines.append("removed (cannot reach a casting voter): " + ", ".join(a.removed))
    return "\n".join(lines) + "\n"


def _emit_assignment(a: Assignment, fmt: str, out: TextIO) -> None:
    out.write(assignment_table(a) if fmt == "table" else _dump(assignment_payload(a)))


# -- commands ------------------------------------------------------------------


def _read_json(path: str) -> dict:
    if path == "-":
        return loads_json(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return loads_json(fh.read())


def oracle_payload(graph) -> dict:
    """Brute-force counterpart of ``MBBResult.to_dict`` plus the branching total."""
    prepared, _ = prepare(graph)
    payload = assignment_payload(oracle_assignment(graph))
    found = enumerate_branchings(prepared) if prepared.delegators else None
    payload["min_cost"] = found.min_cost if found else 0
    payload["num_min_branchings"] = format_fraction(len(found.optimal()) if found else 1)
    payload["branchings"] = len(found) if found else 1
    return payload


def _cmd_solve(cfg: RunConfig, data: dict, out: TextIO) -> int:
    graph = graph_from_dict(data)
    if cfg.rule == "rw":
        _emit_assignment(rwr_estimate(graph, cfg.eps), cfg.format, out)
        return EXIT_OK
    if cfg.rule == "mbb":
        result = solve_detailed(graph)
        a, payload = result.assignment, result.to_dict()
    else:
        payload = oracle_payload(graph)
        del payload["branchings"]
        a = oracle_assignment(graph)
    if cfg.format == "table":
        out.write(assignment_table(a))
        out.write(f"min cost {payload['min_cost']}, min-cost branchings {payload['num_min_branchings']}\n")
    else:
        out.write(_dump(payload))
    return EXIT_OK


def _cmd_oracle(cfg: RunConfig, data: dict, out: TextIO) -> int:
    out.write(_dump(oracle_payload(graph_from_dict(data))))
    return EXIT_OK


def _cmd_compare(cfg: RunConfig, data: dict, out: TextIO) -> int:
    graph = graph_from_dict(data)
    eps = cfg.eps if cfg.eps is not None else DEFAULT_EPS
    limit = solve_detailed(graph).assignment
    dev = rwr_estimate(graph, eps).max_deviation(limit)
    ok = dev <= cfg.tol
    out.write(_dump({
        "eps": format_fraction(eps),
        "tol": format_fraction(cfg.tol),
        "max_deviation": format_fraction(dev),
        "max_deviation_float": f"{float(dev):.3e}",
        "within_tolerance": ok,
    }))
    return EXIT_OK if ok else EXIT_CHECK


def _cmd_certificate(cfg: RunConfig, data: dict, out: TextIO) -> int:
    graph, _ = prepare(graph_from_dict(data))
    out.write(run_fulkerson(graph).to_json())
    return EXIT_OK


def _cmd_watershed(cfg: RunConfig, data: dict, out: TextIO) -> int:
    graph = graph_from_dict(data)
    labels = {str(n["id"]): n["label"] for n in data["nodes"] if "label" in n}
    if not labels:
        raise GraphError("watershed needs nodes carrying a 'label' field")
    dist = watershed(graph, labels)
    out.write(_dump({
        v: {str(l): format_fraction(p) for l, p in sorted(d.items(), key=lambda kv: str(kv[0]))}
        for v, d in dist.items()
    }))
    return EXIT_OK


def _cmd_parametric(cfg: RunConfig, data: dict, out: TextIO) -> int:
    chain = chain_from_dict(data)
    limit = solve_parametric_limit(chain)
    if cfg.eps is None:
        _emit_assignment(limit, cfg.format, out)
        return EXIT_OK
    dev = parametric_at(chain, cfg.eps).max_deviation(limit)
    payload = assignment_payload(limit)
    payload["eps"] = format_fraction(cfg.eps)
    payload["max_deviation_at_eps"] = format_fraction(dev)
    out.write(_dump(payload))
    return EXIT_OK


def run_axiom_suite(cfg: RunConfig) -> list[axioms.AxiomReport]:
    reports = []
    for i in range(cfg.instances):
        seed = cfg.seed + i
        graph, _ = prepare(suite_graph(seed, (3, 8)))
        rng = random.Random(seed)
        for check in cfg.checks:
            if check == "anonymity":
                reports.append(axioms.check_anonymity(graph, random_permutation(rng, graph.nodes)))
            elif check == "copy":
                reports.extend(axioms.check_copy_robustness(graph, v) for v in graph.delegators)
            elif check == "guru":
                reports.extend(axioms.check_guru_participation(graph, v) for v in graph.delegators)
            elif check == "sink-monotone":
                reports.extend(axioms.check_sink_inedge_monotonicity(graph, s) for s in graph.sinks)
            elif check == "confluence":
                reports.extend(
                    axioms.check_confluence_factorization(graph, u, v)
                    for u in graph.delegators
                    for v in graph.delegators
                    if u != v
                )
    return reports


def _cmd_axioms(cfg: RunConfig, data, out: TextIO) -> int:
    reports = run_axiom_suite(cfg)
    summary: dict[str, dict[str, int]] = {}
    for r in reports:
        counts = summary.setdefault(r.axiom, {"pass": 0, "fail": 0, axioms.VACUOUS: 0})
        counts[r.status] += 1
    failures = [
        {"axiom": r.axiom, "instance": r.instance,
         "witness": {k: _jsonable(v) for k, v in r.witness.items()}}
        for r in reports
        if not r.passed
    ]
    out.write(_dump({"seed": cfg.seed, "instances": cfg.instances, "summary": summary, "failures": failures}))
    return EXIT_CHECK if failures else EXIT_OK


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return x


def _cmd_impossibility(cfg: RunConfig, data, out: TextIO) -> int:
    report = axioms.impossibility_demo()
    out.write(report.table() + "\n")
    return EXIT_OK if report.survivors == 0 and len(report.rows) == 32 else EXIT_CHECK


COMMANDS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "compare": _cmd_compare,
    "certificate": _cmd_certificate,
    "watershed": _cmd_watershed,
    "parametric": _cmd_parametric,
    "axioms": _cmd_axioms,
    "impossibility": _cmd_impossibility,
}
NEEDS_INPUT = {"solve", "oracle", "compare", "certificate", "watershed", "parametric"}


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        data = _read_json(cfg.input) if cfg.command in NEEDS_INPUT else None
        return COMMANDS[cfg.command](cfg, data, out)
    except (GraphError, TooLarge, OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        report = getattr(exc, "report", None)
        for v in getattr(report, "violations", ()):
            err.write(f"  {v.kind}: {v.message}\n")
        return EXIT_INPUT


# -- argument parsing ----------------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _checks(text: str) -> tuple[str, ...]:
    names = tuple(c.strip() for c in text.split(",") if c.strip())
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {','.join(CHECKS)}")
    return names


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); exit 2 is reserved for failed checks."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    env_seed = int(os.environ.get(SEED_ENV, "0"))
    p = _Parser(prog="mixedborda", description="Exact fractional delegation assignments.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", help="graph JSON file, or - for stdin")
        return sp

    sp = with_input("solve", "compute the assignment of a delegation graph")
    sp.add_argument("--rule", choices=("mbb", "rw", "oracle"), default="mbb")
    sp.add_argument("--eps", type=_fraction, help="walk parameter for --rule rw")
    sp.add_argument("--format", choices=("json", "table"), default="json")

    with_input("oracle", "brute-force assignment with branching counts")

    sp = with_input("compare", "deviation of the epsilon walk from the exact rule")
    sp.add_argument("--eps", type=_fraction, default=DEFAULT_EPS)
    sp.add_argument("--tol", type=_fraction, default=DEFAULT_TOL)

    with_input("certificate", "dual certificate of the min-cost branching problem")
    with_input("watershed", "label distribution for every unlabeled node")

    sp = with_input("parametric", "limit absorption probabilities of a parametric chain")
    sp.add_argument("--eps", type=_fraction, help="also report the deviation of the exact chain at eps")
    sp.add_argument("--format", choices=("json", "table"), default="json")

    sp = sub.add_parser("axioms", help="randomized axiom suites")
    sp.add_argument("--check", type=_checks, default=CHECKS)
    sp.add_argument("--seed", type=int, default=env_seed)
    sp.add_argument("--instances", type=int, default=100)

    sub.add_parser("impossibility", help="exhaustive non-fractional impossibility table")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        rule=getattr(ns, "rule", "mbb"),
        eps=getattr(ns, "eps", None),
        tol=getattr(ns, "tol", DEFAULT_TOL),
        seed=getattr(ns, "seed", 0),
        instances=getattr(ns, "instances", 100),
        checks=getattr(ns, "check", CHECKS),
        format=getattr(ns, "format", "json"),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
