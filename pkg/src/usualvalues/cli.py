"""Command-line driver for ``.ukb`` knowledge bases.

Exit codes: 0 ok, 1 usage, 2 parse/semantic error, 3 Monte-Carlo bound violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .combination import combine_arith
from .config import Config
from .fuzzy import FuzzySet, make_shape
from .granules import Granule, prob_interval
from .inference import KnowledgeBase, infer
from .kb import (
    ArithQuery,
    Assert,
    InferQuery,
    IntervalQuery,
    KbDocument,
    KbError,
    McQuery,
    OptionDecl,
    SetDecl,
    UniverseDecl,
    VarDecl,
    format_decl,
    format_document,
    parse,
)
from .mc_oracle import SimConfig, check_bounds
from .translation import If, TranslationError, Usually, translate
from .universe import make_grid_universe, make_label_universe

EXIT_OK, EXIT_USAGE, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2, 3


@dataclass
class RunResult:
    results: list = field(default_factory=list)
    violations: int = 0

    @property
    def exit_code(self) -> int:
        return EXIT_VIOLATION if self.violations else EXIT_OK


def _build_set(d: SetDecl, kb: KnowledgeBase) -> FuzzySet:
    u = kb.universes[d.universe]
    if d.shape == "grades":
        return FuzzySet(u, d.args)
    if d.shape == "singleton" and not u.is_numeric:
        grades = [0.0] * len(u)
        grades[u.index(d.args[0])] = 1.0
        return FuzzySet(u, grades)
    kind = "crisp_interval" if d.shape == "interval" else d.shape
    return make_shape(kind, u, *d.args)


def _directed(s) -> bool:
    return isinstance(s.inner if isinstance(s, Usually) else s, If)


def build_kb(doc: KbDocument, config: Config, override: dict | None = None) -> KnowledgeBase:
    """Declarations and asserts of ``doc`` as a knowledge base.

    ``option`` lines change the implication / conflict policy for the asserts
    that follow them; keys in ``override`` pin a value for the whole file.
    """
    override = override or {}
    kb = KnowledgeBase()
    imp, policy = config.implication, config.conflict_policy
    for d in doc.decls:
        try:
            if isinstance(d, UniverseDecl):
                if d.kind == "grid":
                    u = make_grid_universe(*d.args, id=d.name)
                else:
                    u = make_label_universe(d.args, id=d.name)
                kb.add_universe(d.name, u)
            elif isinstance(d, SetDecl):
                kb.add_set(d.name, _build_set(d, kb))
            elif isinstance(d, VarDecl):
                kb.add_variable(d.name, kb.universes[d.universe])
            elif isinstance(d, OptionDecl):
                if d.name == "implication" and "implication" not in override:
                    imp = d.value
                elif d.name == "conflict_policy" and "conflict_policy" not in override:
                    policy = d.value
            elif isinstance(d, Assert):
                g = translate(d.statement, kb.sets, imp, kb.variables, policy)
                kb.add(g, directed=_directed(d.statement))
        except (TranslationError, ValueError) as exc:
            line, col = d.pos or (0, 0)
            if isinstance(exc, TranslationError) and exc.pos:
                line, col = exc.pos
                msg = str(exc).split(": ", 1)[-1]
            else:
                msg = str(exc)
            raise KbError(msg, line, col) from None
    return kb


def _query(q, kb: KnowledgeBase, config: Config) -> tuple[dict, bool]:
    if isinstance(q, InferQuery):
        g = infer(kb, q.variable, config)
        return {
            "query": format_decl(q),
            "kind": "infer",
            "variable": q.variable,
            "informed": kb.informs(q.variable),
            "conflict": g.conflict,
            "granule": g.to_dict(),
        }, False
    if isinstance(q, IntervalQuery):
        g = infer(kb, q.variable, config)
        bel, pl = prob_interval(g, kb.sets[q.set_name])
        return {"query": format_decl(q), "kind": "interval", "variable": q.variable,
                "set": q.set_name, "bel": bel, "pl": pl}, False
    if isinstance(q, McQuery):
        g = infer(kb, q.variable, config)
        sel = q.selection
        if sel == "uniform" and not all(f.is_crisp() for f, _ in g.focals):
            sel = "membership_weighted"
        report = check_bounds(g, kb.sets[q.set_name], SimConfig(q.samples, q.seed, sel))
        out = {"query": format_decl(q), "kind": "mc", "variable": q.variable, "set": q.set_name}
        out.update(report.to_dict())
        return out, report.asserted and not report.passed
    if isinstance(q, ArithQuery):
        g1 = infer(kb, q.left, config)
        g2 = infer(kb, q.right, config)
        g = combine_arith(g1, g2, q.op, kb.universes[q.universe], variable=f"{q.left} {q.op} {q.right}")
        return {"query": format_decl(q), "kind": "arith", "granule": g.to_dict()}, False
    raise TypeError(q)


def final_config(doc: KbDocument, config: Config, override: dict | None = None) -> Config:
    override = override or {}
    for d in doc.of(OptionDecl):
        if d.name not in override:
            config = Config(
                d.value if d.name == "implication" else config.implication,
                d.value if d.name == "conflict_policy" else config.conflict_policy,
                config.max_depth,
            )
    return config


def run(doc: KbDocument, config: Config | None = None, override: dict | None = None) -> RunResult:
    """Execute every assert, then every query, in document order."""
    config = config or Config()
    kb = build_kb(doc, config, override)
    # queries run under the options in force at the end of the file
    config = final_config(doc, config, override)
    out = RunResult()
    for q in doc.of(InferQuery, IntervalQuery, McQuery, ArithQuery):
        try:
            res, violated = _query(q, kb, config)
        except (ValueError, KeyError) as exc:
            raise KbError(str(exc), *(q.pos or (0, 0))) from None
        out.results.append(res)
        out.violations += violated
    return out


# -- output ----------------------------------------------------------------


def to_json(source: str, result: RunResult, config: Config) -> str:
    doc = {
        "source": source,
        "options": {"implication": config.implication, "conflict_policy": config.conflict_policy},
        "results": result.results,
        "violations": result.violations,
    }
    return json.dumps(doc, indent=2) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _granule_table(d: dict) -> list[str]:
    g = Granule.from_dict(d)
    lines = [f"  {'weight':>10}  focal"]
    for f, w in g.focals:
        if f.is_whole():
            label = "whole"
        elif f.is_null():
            label = "null"
        else:
            label = " ".join(_fmt(x) for x in f.grades.ravel())
        lines.append(f"  {_fmt(w):>10}  {label}")
    return lines


def to_table(source: str, result: RunResult) -> str:
    lines = [f"== {source}"]
    for r in result.results:
        lines.append(r["query"])
        if r["kind"] in ("infer", "arith"):
            lines.extend(_granule_table(r["granule"]))
            if r.get("conflict"):
                lines.append(f"  conflict mass: {_fmt(r['conflict'])}")
            if r["kind"] == "infer" and not r["informed"]:
                lines.append("  (no information: vacuous)")
        elif r["kind"] == "interval":
            lines.append(f"  Prob in [{_fmt(r['bel'])}, {_fmt(r['pl'])}]")
        else:
            status = "pass" if r["pass"] else ("FAIL" if r["asserted"] else "outside (not asserted)")
            lines.append(
                f"  bel={_fmt(r['bel'])} estimate={_fmt(r['estimate'])} pl={_fmt(r['pl'])} "
                f"eps={_fmt(r['epsilon'])} selection={r['selection']} {status}"
            )
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _arg_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="usualvalues", description="Reason with usual values over .ukb knowledge bases.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    r = sub.add_parser("run", help="execute asserts and queries")
    r.add_argument("files", nargs="+", type=Path)
    r.add_argument("--format", choices=("table", "json"), default="table")
    r.add_argument("--implication", choices=("luka", "kd"))
    r.add_argument("--conflict", choices=("keep", "dempster", "to_universe"))
    f = sub.add_parser("fmt", help="parse and print the normalised source")
    f.add_argument("files", nargs="+", type=Path)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    args = _arg_parser().parse_args(argv)
    code = EXIT_OK
    for path in args.files:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            print(f"{path}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
        try:
            doc = parse(text)
            if args.command == "fmt":
                sys.stdout.write(format_document(doc))
                continue
            override = {}
            if args.implication:
                override["implication"] = args.implication
            if args.conflict:
                override["conflict_policy"] = args.conflict
            config = Config(args.implication or "luka", args.conflict or "keep")
            result = run(doc, config, override)
        except KbError as exc:
            print(f"{path}:{exc}", file=sys.stderr)
            return EXIT_ERROR
        final = final_config(doc, config, override)
        if args.format == "json":
            sys.stdout.write(to_json(path.name, result, final))
        else:
            sys.stdout.write(to_table(path.name, result))
        code = max(code, result.exit_code)
    return code


if __name__ == "__main__":
    sys.exit(main())
