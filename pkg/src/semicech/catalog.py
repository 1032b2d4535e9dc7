"""The bundled model corpus and its recorded expectations.

Each entry records what the analyses must report, tagged with where the
expected value comes from: ``PAPER`` (transcribed from the source
literature), ``TRIVIAL`` (immediate from the definitions) or ``DERIVED``
(computed by the brute-force oracles when the corpus was generated).
:func:`generate_corpus` rebuilds the files; :func:`check_corpus` compares a
fresh run against them.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .analysis import contextual_fraction
from .errors import ContextualityError
from .formats import context_key, event_key, load_model, serialize_model
from .generate import (
    HALF,
    cycle_scenario,
    deterministic_model,
    fully_mixed,
    hardy_model,
    mix,
    pr_box,
    table1_model,
)
from .model import DEFAULT_CUTOFF, EmpiricalModel, is_nondisturbing, make_model
from .obstruction import classical_obstruction
from .oracles import oracle_noncontextual, oracle_section_trivial
from .scenario import build_scenario
from .semiring import NONNEG_RATIONAL

EXPECTATIONS = "expectations.json"


def corpus_dir() -> Path:
    return Path(str(resources.files("semicech") / "corpus"))


def _disturbing_model() -> EmpiricalModel:
    s = build_scenario("abc", ["ab", "bc"], "01")
    return make_model(s, NONNEG_RATIONAL, {"ab": {"00": 1}, "bc": {"10": 1}}, "disturbing")


def corpus_models() -> list[tuple[EmpiricalModel, str, str]]:
    """``(model, source note, provenance of the verdict)`` for every entry."""
    s4 = cycle_scenario(4)
    pr = pr_box()
    return [
        (table1_model(), "possibilistic 4-cycle violation example", "PAPER"),
        (pr, "PR box on the 4-cycle", "DERIVED"),
        (pr_box("boolean"), "support of the PR box", "DERIVED"),
        (hardy_model(), "Hardy-type possibilistic model", "DERIVED"),
        (deterministic_model(s4), "point masses on the all-zero assignment", "TRIVIAL"),
        (fully_mixed(s4), "uniform tables on the 4-cycle", "TRIVIAL"),
        (mix(pr, fully_mixed(s4), HALF, "pr_uniform_mix"), "equal mixture of PR box and uniform tables", "DERIVED"),
        (mix(pr, deterministic_model(s4), HALF, "pr_det_mix"), "equal mixture of PR box and a deterministic model", "DERIVED"),
        (pr_box(n=3).with_name("triangle_pr"), "anticorrelation around a triangle", "DERIVED"),
        (_disturbing_model(), "b is 0 in one context and 1 in the other", "TRIVIAL"),
    ]


def _section_key(m: EmpiricalModel, j, e) -> str:
    return f"{context_key(m.scenario.contexts[j])}:{event_key(m.scenario, e)}"


# Claims about the violation example, as stated in the literature.
TABLE1_NONTRIVIAL = {"ad:01", "ad:10"}


def expected_results(m: EmpiricalModel, provenance: str) -> dict:
    """Expectations for one model, computed by the oracles."""
    nd = is_nondisturbing(m)
    out: dict = {"nondisturbing": bool(nd)}
    if not nd:
        cj, ck, ev = nd.witness
        out["witness"] = [context_key(cj), context_key(ck), f"{context_key(ev.domain)}->{event_key(m.scenario, ev)}"]
        return out
    noncontextual = oracle_noncontextual(m)
    out["verdict"] = "noncontextual" if noncontextual else "contextual"
    sections = {}
    for j, e in m.sections():
        sections[_section_key(m, j, e)] = {
            "generalized": "trivial" if oracle_section_trivial(m, j, e) else "nontrivial"
        }
    if m.name == "table1":
        for key, sec in sections.items():
            claimed = "nontrivial" if key in TABLE1_NONTRIVIAL else "trivial"
            if sec["generalized"] != claimed:
                raise AssertionError(f"oracle contradicts the recorded claim at {key}")
            sec["classical"] = "trivial"
    out["sections"] = sections
    if m.semiring == NONNEG_RATIONAL:
        cf = contextual_fraction(m)
        if not cf.certified:
            raise AssertionError("contextual fraction without a valid dual certificate")
        out["contextual_fraction"] = str(cf.value)
    out["provenance"] = {
        "verdict": provenance,
        "sections": provenance,
        **({"classical": "PAPER"} if m.name == "table1" else {}),
        **({"contextual_fraction": "DERIVED"} if "contextual_fraction" in out else {}),
    }
    return out


def generate_corpus(directory) -> None:
    """Write every corpus model and the expectations file into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for m, source, provenance in corpus_models():
        fname = f"{m.name}.model"
        (directory / fname).write_text(serialize_model(m, source), encoding="utf-8")
        entries.append({"name": m.name, "file": fname, "expect": expected_results(m, provenance)})
    text = json.dumps({"format": 1, "entries": entries}, indent=2) + "\n"
    (directory / EXPECTATIONS).write_text(text, encoding="utf-8")


def load_expectations(path) -> list[dict]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise ValueError("expectations file must hold an 'entries' list")
    return data["entries"]


def actual_results(m: EmpiricalModel, want_classical: bool, cutoff: int = DEFAULT_CUTOFF) -> dict:
    """The same quantities as :func:`expected_results`, from the obstruction machinery."""
    from .analysis import is_r_contextual

    nd = is_nondisturbing(m)
    out: dict = {"nondisturbing": bool(nd)}
    if not nd:
        cj, ck, ev = nd.witness
        out["witness"] = [context_key(cj), context_key(ck), f"{context_key(ev.domain)}->{event_key(m.scenario, ev)}"]
        return out
    verdict = is_r_contextual(m, cutoff)
    out["verdict"] = verdict.verdict
    sections = {}
    for res in verdict.sections:
        sections[_section_key(m, res.context, res.event)] = {"generalized": res.verdict}
    if want_classical:
        for j, e in m.sections():
            sections[_section_key(m, j, e)]["classical"] = classical_obstruction(m, j, e).verdict
    out["sections"] = sections
    if m.semiring == NONNEG_RATIONAL:
        out["contextual_fraction"] = str(contextual_fraction(m, cutoff).value)
    return out


def _diff(expected, actual, path="") -> list[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        lines = []
        for key in expected:
            where = f"{path}.{key}" if path else key
            if key not in actual:
                lines.append(f"{where}: expected {expected[key]!r}, missing")
            else:
                lines.extend(_diff(expected[key], actual[key], where))
        for key in actual:
            if key not in expected:
                where = f"{path}.{key}" if path else key
                lines.append(f"{where}: unexpected {actual[key]!r}")
        return lines
    if expected != actual:
        return [f"{path}: expected {expected!r}, got {actual!r}"]
    return []


def check_corpus(directory, expectations, cutoff: int = DEFAULT_CUTOFF) -> dict[str, list[str]]:
    """Itemized differences per entry; an empty dict means everything matched."""
    directory = Path(directory)
    failures: dict[str, list[str]] = {}
    for entry in load_expectations(expectations):
        name = entry.get("name", "?")
        expect = dict(entry.get("expect", {}))
        expect.pop("provenance", None)
        try:
            m = load_model(directory / entry["file"])
            want_classical = any("classical" in sec for sec in expect.get("sections", {}).values())
            got = actual_results(m, want_classical, cutoff)
        except (ContextualityError, OSError, KeyError) as exc:
            failures[name] = [f"could not analyze: {exc}"]
            continue
        lines = _diff(expect, got)
        if lines:
            failures[name] = lines
    return failures
