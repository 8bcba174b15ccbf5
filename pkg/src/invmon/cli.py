"""Command line front end: ``invmon sgraph|relmod|identities|verify INPUT``.

INPUT is ``builtin:NAME`` or a presentation file.  Exit codes: 0 success,
2 unreadable input, 3 budget exhausted (or enumeration failed where a finite
monoid is required), 4 verification failure.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import builtins, verification
from .backend import (FiniteInverseMonoid, Presentation, StephenBudget, enumerate_monoid,
                      parse_presentation, schutzenberger_graph, stephen_graph)
from .errors import NotFinishedWithinBudget, ParseError
from .xmod import FreeCrossedModule

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


@dataclass
class Source:
    name: str
    builtin: bool
    P: Presentation | None
    M: FiniteInverseMonoid | None
    failure: str = ""  # why M is missing


def load_source(target: str, budget: StephenBudget) -> Source:
    if target.startswith("builtin:"):
        name = target[len("builtin:"):]
        if name not in builtins.BUILTIN_NAMES:
            raise CliError(EXIT_INPUT, f"unknown builtin {name!r}; choose from "
                                       + ", ".join(builtins.BUILTIN_NAMES))
        P = builtins.presentation_for(name)
        if name == "i2":
            return Source(name, True, P, builtins.i2())
    else:
        name = target
        try:
            with open(target, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(EXIT_INPUT, f"cannot read {target}: {exc.strerror}") from None
        try:
            P = parse_presentation(text)
        except ParseError as exc:
            raise CliError(EXIT_INPUT, f"{target}: {exc}") from None
    try:
        M = enumerate_monoid(P, budget)
    except NotFinishedWithinBudget as exc:
        return Source(name, target.startswith("builtin:"), P, None, str(exc))
    return Source(name, target.startswith("builtin:"), P, M)


def _require_monoid(src: Source) -> FiniteInverseMonoid:
    if src.M is None:
        raise CliError(EXIT_BUDGET, f"{src.name}: enumeration did not finish ({src.failure})")
    return src.M


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # map keeps input order


# sgraph ----------------------------------------------------------------------


def graphs_for(src: Source, word: str | None, budget: StephenBudget, jobs: int = 1):
    """List of (component name, SchutzGraph)."""
    if word is not None:
        alphabet = src.M.alphabet if src.M is not None else src.P.alphabet
        try:
            w = alphabet.parse(word)
        except ParseError as exc:
            raise CliError(EXIT_INPUT, f"--word: {exc}") from None
        if src.M is not None:
            e = src.M.dom(src.M.evaluate(w))
            return [(src.M.name(e), schutzenberger_graph(src.M, e))]
        return [(alphabet.format(w), stephen_graph(src.P, w, budget))]
    if src.M is not None:
        M = src.M
        return list(zip([M.name(e) for e in M.idempotents],
                        _map(lambda e: schutzenberger_graph(M, e), M.idempotents, jobs)))
    return [("1", stephen_graph(src.P, (), budget))]


def render_graphs(graphs, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{"component": n, **g.to_json()} for n, g in graphs], indent=2)
    if fmt == "table":
        rows = [("component", "vertices", "edges", "rank", "status")]
        rows += [(n, str(g.num_vertices), str(len(g.edges)), str(g.rank), g.status)
                 for n, g in graphs]
        return _table(rows)
    return "\n".join(g.to_dot(n) for n, g in graphs)


def _table(rows) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def cmd_sgraph(args, src: Source, budget: StephenBudget) -> tuple[int, str]:
    if src.M is None and args.require_converged and args.word is None:
        raise CliError(EXIT_BUDGET, f"{src.name}: enumeration did not finish ({src.failure})")
    graphs = graphs_for(src, args.word, budget, args.jobs)
    if args.require_converged and not all(g.converged for _, g in graphs):
        raise CliError(EXIT_BUDGET, "Stephen graph truncated by the budget")
    return EXIT_OK, render_graphs(graphs, args.format or "dot")


# relmod / identities ---------------------------------------------------------


def render_relmod(M: FiniteInverseMonoid, fmt: str) -> str:
    from .relmod import relation_module
    mod = relation_module(M)
    if fmt == "json":
        return json.dumps(mod.to_json(), indent=2)
    return mod.hasse_table()


def render_identities(P: Presentation, M: FiniteInverseMonoid, fmt: str) -> str:
    X = FreeCrossedModule(P, M)
    report = X.verify_exact_sequence()
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2)
    lines = [report.table(), ""]
    for en in report.entries:
        basis = "; ".join(str(list(v)) for v in en.kernel_basis) or "-"
        lines.append(f"identities at {en.e}: {basis}")
    return "\n".join(lines)


def cmd_relmod(args, src: Source, budget) -> tuple[int, str]:
    return EXIT_OK, render_relmod(_require_monoid(src), args.format or "table")


def cmd_identities(args, src: Source, budget) -> tuple[int, str]:
    M = _require_monoid(src)
    if src.P is None:
        raise CliError(EXIT_INPUT, f"{src.name}: identities need a presentation")
    return EXIT_OK, render_identities(src.P, M, args.format or "table")


# verify ------------------------------------------------------------------------


def golden_text(src: Source, budget: StephenBudget = StephenBudget()) -> str:
    """The deterministic report stored next to each builtin."""
    if src.M is None:
        w = "x' x" if src.name == "bicyclic" else None
        return render_graphs(graphs_for(src, w, StephenBudget(max_expansions=10)), "dot") + "\n"
    parts = [render_graphs(graphs_for(src, None, budget), "table"),
             render_relmod(src.M, "table")]
    if src.P is not None:
        parts.append(render_identities(src.P, src.M, "table"))
    return "\n\n".join(parts) + "\n"


def read_golden(name: str) -> str:
    return resources.files("invmon").joinpath("golden", f"{name}.txt").read_text(encoding="utf-8")


def cmd_verify(args, src: Source, budget) -> tuple[int, str]:
    seeded = {"criterion_kappa", "criterion_axioms", "criterion_keys"}

    def run(c):
        return c(seed=args.seed) if c.__name__ in seeded else c()

    lines = [r.line(timing=False) for r in _map(run, verification.CRITERIA, args.jobs)]
    if src.M is not None:
        lines += verification.suite(src.P, src.M, args.seed, args.samples)
    if src.name == "i2":
        lines.append(verification.i2_presentation_check(budget))
    if src.builtin:
        want = read_golden(src.name)
        got = golden_text(src, budget)
        if got == want:
            lines.append("PASS golden output matches")
        else:
            diff = difflib.unified_diff(want.splitlines(), got.splitlines(),
                                        "golden", "current", lineterm="")
            lines.append("FAIL golden output differs\n" + "\n".join(diff))
    elif src.M is None:
        lines.append(f"FAIL {src.name}: enumeration did not finish ({src.failure})")
    failed = any(line.startswith("FAIL") for line in lines)
    return (EXIT_VERIFY if failed else EXIT_OK), "\n".join(lines)


COMMANDS = {"sgraph": cmd_sgraph, "relmod": cmd_relmod, "identities": cmd_identities,
            "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="builtin:NAME or a presentation file")
    common.add_argument("--budget-expansions", "--budget", dest="budget_expansions", type=int,
                        default=StephenBudget.max_expansions, help="Stephen expansion limit")
    common.add_argument("--budget-vertices", type=int, default=StephenBudget.max_vertices)
    common.add_argument("--format", choices=("dot", "json", "table"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--require-converged", action="store_true")
    common.add_argument("--word", help="draw only the graph of this word")
    parser = argparse.ArgumentParser(prog="invmon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sgraph", parents=[common], help="Schützenberger graphs")
    sub.add_parser("relmod", parents=[common], help="relation module ranks and maps")
    sub.add_parser("identities", parents=[common], help="exact sequence and identity bases")
    sub.add_parser("verify", parents=[common], help="run the verification suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        budget = StephenBudget(args.budget_expansions, args.budget_vertices)
    except ValueError as exc:
        print(f"invmon: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        src = load_source(args.input, budget)
        code, out = COMMANDS[args.command](args, src, budget)
    except CliError as exc:
        print(f"invmon: {exc}", file=sys.stderr)
        return exc.code
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
