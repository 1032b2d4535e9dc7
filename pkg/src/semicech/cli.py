"""Command-line front end: ``semicech validate | analyze | corpus``.

Exit codes:

====  ==========================================================
0     success
1     syntax error in a model file
2     semantic error (invalid model, unreadable file, bad option)
3     model is disturbing (analyze only)
4     enumeration exceeds the cutoff
5     an oracle disagreed with the cohomological verdict
6     corpus regression failure
====  ==========================================================
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .analysis import (
    contextual_fraction,
    is_r_contextual,
    noncontextual_decompose,
    possibilistic_collapse,
)
from .errors import ContextualityError, Disturbing, ModelSemanticError, ModelSyntaxError, TooLarge
from .formats import context_key, emit_report, event_key, load_model
from .generate import random_sweep
from .model import DEFAULT_CUTOFF, EmpiricalModel, is_nondisturbing, make_model
from .obstruction import classical_obstruction
from .oracles import oracle_noncontextual, oracle_section_trivial
from .semiring import BOOLEAN, NONNEG_RATIONAL, RATIONAL, get_semiring

EXIT_OK = 0
EXIT_SYNTAX = 1
EXIT_SEMANTIC = 2
EXIT_DISTURBING = 3
EXIT_TOO_LARGE = 4
EXIT_ORACLE = 5
EXIT_CORPUS = 6


def recast_model(m: EmpiricalModel, name: str) -> EmpiricalModel:
    """Re-read a model over another semiring: support collapse or Q+ -> Q."""
    target = get_semiring(name)
    if target == m.semiring:
        return m
    if target == BOOLEAN:
        return possibilistic_collapse(m)
    if m.semiring == NONNEG_RATIONAL and target == RATIONAL:
        return make_model(m.scenario, RATIONAL, list(m.tables), m.name)
    raise ModelSemanticError(f"cannot read a {m.semiring.name} model over {target.name}", "semiring")


def run_analysis(
    m: EmpiricalModel,
    generalized: bool = True,
    classical: bool = False,
    fraction: bool = False,
    oracle: bool = False,
    classical_presheaf: str = "events",
    cutoff: int = DEFAULT_CUTOFF,
) -> dict:
    """Run the selected analyses and collect a report dictionary."""
    s, r = m.scenario, m.semiring
    report: dict = {"model": m.name, "semiring": r.name}
    nd = is_nondisturbing(m)
    if not nd:
        cj, ck, ev = nd.witness
        report["nondisturbing"] = {
            "contexts": [context_key(cj), context_key(ck)],
            "event": f"{context_key(ev.domain)}->{event_key(s, ev)}",
        }
        return report
    report["nondisturbing"] = True
    mismatches: list[str] = []
    sections = [
        {"context": context_key(s.contexts[j]), "event": event_key(s, e), "weight": r.format(m.tables[j][e])}
        for j, e in m.sections()
    ]
    verdict = None
    if generalized and r.has_division:
        verdict = is_r_contextual(m, cutoff)
        for sec, res in zip(sections, verdict.sections):
            sec["generalized"] = res.verdict
        report["verdict"] = verdict.verdict
    if classical:
        for sec, (j, e) in zip(sections, m.sections()):
            sec["classical"] = classical_obstruction(m, j, e, presheaf=classical_presheaf).verdict
    if oracle:
        for sec, (j, e) in zip(sections, m.sections()):
            sec["oracle"] = "trivial" if oracle_section_trivial(m, j, e) else "nontrivial"
            if "generalized" in sec and sec["generalized"] != sec["oracle"]:
                mismatches.append(f"{sec['context']}->{sec['event']}: generalized {sec['generalized']}, oracle {sec['oracle']}")
        if r.has_division:
            nc = oracle_noncontextual(m)
            report["oracle_verdict"] = "noncontextual" if nc else "contextual"
            if verdict is not None and verdict.contextual == nc:
                mismatches.append(f"model verdict {verdict.verdict}, oracle {report['oracle_verdict']}")
            decomposed = noncontextual_decompose(m, cutoff) is not None
            if decomposed != nc:
                mismatches.append(f"decomposition {'found' if decomposed else 'absent'}, oracle {report['oracle_verdict']}")
    report["sections"] = sections
    if fraction and r == NONNEG_RATIONAL:
        cf = contextual_fraction(m, cutoff)
        report["contextual_fraction"] = str(cf.value)
        if not cf.certified:
            mismatches.append("contextual fraction dual certificate failed")
        if oracle and (cf.value > 0) != (report["oracle_verdict"] == "contextual"):
            mismatches.append(f"contextual fraction {cf.value} disagrees with oracle verdict")
    if oracle:
        report["mismatches"] = mismatches
    return report


def _load(path: str):
    try:
        return load_model(path), None
    except ModelSyntaxError as exc:
        return None, (EXIT_SYNTAX, f"{path}: syntax error, {exc}")
    except ModelSemanticError as exc:
        return None, (EXIT_SEMANTIC, f"{path}: {exc}")
    except OSError as exc:
        return None, (EXIT_SEMANTIC, f"{path}: {exc.strerror or exc}")


def cmd_validate(args) -> int:
    m, err = _load(args.path)
    if err:
        print(err[1], file=sys.stderr)
        return err[0]
    nd = is_nondisturbing(m)
    print(f"{args.path}: valid {m.semiring.name} model, {len(m.scenario.contexts)} contexts")
    if not nd:
        cj, ck, ev = nd.witness
        print(
            f"warning: model is disturbing: {context_key(cj)} and {context_key(ck)} disagree on {ev}",
            file=sys.stderr,
        )
    return EXIT_OK


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    m, err = _load(args.path)
    if err:
        print(err[1], file=sys.stderr)
        return err[0]
    selected = args.generalized or args.classical or args.fraction
    try:
        if args.semiring:
            m = recast_model(m, args.semiring)
        report = run_analysis(
            m,
            generalized=args.generalized or not selected,
            classical=args.classical,
            fraction=args.fraction or not selected,
            oracle=args.oracle,
            classical_presheaf=args.classical_presheaf,
            cutoff=args.cutoff,
        )
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except Disturbing as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISTURBING
    except ContextualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    _write(emit_report(report, args.format), args.out)
    if report["nondisturbing"] is not True:
        print("error: model is disturbing; analyses skipped", file=sys.stderr)
        return EXIT_DISTURBING
    if report.get("mismatches"):
        for msg in report["mismatches"]:
            print(f"oracle mismatch: {msg}", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def cmd_corpus(args) -> int:
    directory = Path(args.dir) if args.dir else catalog.corpus_dir()
    expectations = Path(args.expectations) if args.expectations else directory / "expectations.json"
    try:
        failures = catalog.check_corpus(directory, expectations, cutoff=args.cutoff)
        n = len(catalog.load_expectations(expectations))
    except (OSError, ValueError) as exc:
        print(f"error: cannot read corpus: {exc}", file=sys.stderr)
        return EXIT_CORPUS
    for entry, lines in failures.items():
        for line in lines:
            print(f"FAIL {entry}: {line}")
    print(f"{n - len(failures)}/{n} corpus entries match")
    if args.random:
        bad = 0
        for m in random_sweep(args.seed, args.random):
            report = run_analysis(m, fraction=True, oracle=True, cutoff=args.cutoff)
            for msg in report["mismatches"]:
                bad += 1
                print(f"FAIL {m.name}: {msg}")
        print(f"{args.random} random models (seed {args.seed}), {bad} oracle mismatches")
        if bad:
            return EXIT_CORPUS
    return EXIT_CORPUS if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semicech", description="Cohomological contextuality checks for empirical models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a .model file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="run obstruction sweeps, verdicts and the contextual fraction")
    p.add_argument("path")
    p.add_argument("--semiring", help="read the model over another semiring (boolean, rational)")
    p.add_argument("--generalized", action="store_true", help="difference-cochain obstruction of every supported section")
    p.add_argument("--classical", action="store_true", help="ring-coefficient obstruction of every supported section")
    p.add_argument("--classical-presheaf", choices=("events", "support"), default="events")
    p.add_argument("--fraction", action="store_true", help="exact contextual fraction (nonneg-rational models)")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute-force oracles; mismatches exit 5")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="enumeration limit for global assignments")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of standard output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("corpus", help="check the bundled corpus against its recorded expectations")
    p.add_argument("--dir", help="corpus directory (default: the bundled corpus)")
    p.add_argument("--expectations", help="expectations file (default: <dir>/expectations.json)")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--random", type=int, default=0, metavar="N", help="also cross-check N seeded random models against the oracles")
    p.add_argument("--seed", type=int, default=0, help="seed for --random")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
