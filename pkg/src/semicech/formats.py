"""Reading and writing ``.model`` documents and analysis reports.

A model document is JSON::

    {
      "format": 1,
      "name": "table1",
      "source": "free-text citation",
      "semiring": "boolean",
      "scenario": {
        "measurements": ["a", "b", "c", "d"],
        "contexts": [["a", "b"], ["b", "c"], ["c", "d"], ["a", "d"]],
        "outcomes": {"a": ["0", "1"], ...}      # or one shared list
      },
      "tables": {"ab": {"00": "1", "11": "1"}, ...}
    }

Context keys join the measurement names (with commas unless every name is
a single character); event keys list the outcomes in sorted-measurement
order the same way.  Values are strings ``"0"``/``"1"`` or exact rationals
``"p/q"``; integers are accepted too.  Missing events weigh zero.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .errors import ContextualityError, ModelSemanticError, ModelSyntaxError
from .model import EmpiricalModel, make_model
from .scenario import JointEvent, Scenario, build_scenario
from .semiring import get_semiring

FORMAT_VERSION = 1


def _join(parts) -> str:
    parts = [str(p) for p in parts]
    return "".join(parts) if all(len(p) == 1 for p in parts) else ",".join(parts)


def context_key(ctx) -> str:
    return _join(ctx)


def event_key(s: Scenario, e: JointEvent) -> str:
    compact = all(len(o) == 1 for x in e.domain for o in s.outcomes[x])
    return "".join(e.outcomes) if compact else ",".join(e.outcomes)


def _split(key: str) -> list[str]:
    return key.split(",") if "," in key else list(key)


def _line_of(text: str | None, path: list[str]) -> int | None:
    """Best-effort line of a dotted path: find each quoted key after the previous one."""
    if not text:
        return None
    pos = 0
    for key in path:
        hit = text.find(json.dumps(key), pos)
        if hit < 0:
            break
        pos = hit
    return text.count("\n", 0, pos) + 1


def _semantic(message, path, text, cause=None):
    return ModelSemanticError(message, ".".join(path), _line_of(text, path), cause)


def document_to_model(doc: Any, text: str | None = None) -> EmpiricalModel:
    """Validate a decoded document and build its model."""
    if not isinstance(doc, dict):
        raise _semantic("document must be an object", ["<root>"], text)
    version = doc.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise _semantic(f"unsupported format version {version!r}", ["format"], text)
    for key in ("semiring", "scenario", "tables"):
        if key not in doc:
            raise _semantic(f"missing field {key!r}", [key], text)
    try:
        r = get_semiring(doc["semiring"])
    except (ValueError, TypeError) as exc:
        raise _semantic(str(exc), ["semiring"], text, exc) from None

    sc = doc["scenario"]
    if not isinstance(sc, dict):
        raise _semantic("scenario must be an object", ["scenario"], text)
    try:
        s = build_scenario(sc["measurements"], sc["contexts"], sc["outcomes"])
    except KeyError as exc:
        raise _semantic(f"missing field {exc.args[0]!r}", ["scenario", str(exc.args[0])], text) from None
    except (ContextualityError, TypeError) as exc:
        raise _semantic(str(exc), ["scenario"], text, exc) from None

    tables_doc = doc["tables"]
    if not isinstance(tables_doc, dict):
        raise _semantic("tables must be an object", ["tables"], text)
    tables = {}
    for ckey, tab in tables_doc.items():
        path = ["tables", ckey]
        try:
            i = s.context_index(ckey)
        except ContextualityError as exc:
            raise _semantic(str(exc), path, text, exc) from None
        if not isinstance(tab, dict):
            raise _semantic("table must be an object", path, text)
        ctx = s.contexts[i]
        entries = {}
        for ekey, value in tab.items():
            try:
                ev = s.event(ctx, _split(ekey))
                entries[ev] = r.coerce(value)
            except (ContextualityError, TypeError, ValueError) as exc:
                raise _semantic(str(exc), path + [ekey], text, exc) from None
        tables[i] = entries
    try:
        return make_model(s, r, tables, str(doc.get("name", "")))
    except ContextualityError as exc:
        path = ["tables"]
        ctx = getattr(exc, "context", None)
        if ctx is not None:
            path.append(context_key(ctx))
        raise _semantic(str(exc), path, text, exc) from None


def parse_model(text: str) -> EmpiricalModel:
    """Parse a ``.model`` document.

    Raises :class:`ModelSyntaxError` (with line and column) on malformed
    JSON and :class:`ModelSemanticError` on anything make_model rejects.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return document_to_model(doc, text)


def load_model(path) -> EmpiricalModel:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def model_to_document(m: EmpiricalModel, source: str = "") -> dict:
    """Canonical document: sorted scenario, nonzero entries only."""
    s, r = m.scenario, m.semiring
    outcomes = {x: list(s.outcomes[x]) for x in s.measurements}
    shared = list(outcomes.values())[0]
    doc = {
        "format": FORMAT_VERSION,
        "name": m.name,
        "source": source,
        "semiring": r.name,
        "scenario": {
            "measurements": list(s.measurements),
            "contexts": [list(c) for c in s.contexts],
            "outcomes": shared if all(v == shared for v in outcomes.values()) else outcomes,
        },
        "tables": {
            context_key(ctx): {
                event_key(s, e): r.format(w) for e, w in tab.items() if not r.is_zero(w)
            }
            for ctx, tab in zip(s.contexts, m.tables)
        },
    }
    if not source:
        del doc["source"]
    return doc


def _dumps(obj) -> str:
    """Indented JSON with arrays of scalars kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    return re.sub(r"\[\s*([^\[\]{}]*?)\s*\]", lambda mo: "[" + re.sub(r",\s+", ", ", mo.group(1)) + "]", text)


def serialize_model(m: EmpiricalModel, source: str = "") -> str:
    return _dumps(model_to_document(m, source)) + "\n"


# -- reports -----------------------------------------------------------------


def emit_report(report: dict, fmt: str = "text") -> str:
    """Render a report dictionary as JSON or as an aligned plain-text summary.

    Both renderings are deterministic: keys and sections keep the canonical
    order in which the report was built.
    """
    if fmt == "json":
        return _dumps(report) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"model: {report.get('model') or '<unnamed>'}", f"semiring: {report['semiring']}"]
    nd = report["nondisturbing"]
    if nd is True:
        lines.append("non-disturbing: yes")
    else:
        lines.append(f"non-disturbing: NO (contexts {nd['contexts'][0]}, {nd['contexts'][1]} disagree on {nd['event']})")
        lines.append("analyses skipped")
        return "\n".join(lines) + "\n"
    sections = report.get("sections", [])
    if sections:
        cols = [c for c in ("generalized", "classical", "oracle") if c in sections[0]]
        header = ["context", "event", "weight"] + cols
        rows = [[sec["context"], sec["event"], sec["weight"]] + [sec[c] for c in cols] for sec in sections]
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
        lines.append("")
        for row in [header] + rows:
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())
        lines.append("")
    for key in ("verdict", "oracle_verdict", "contextual_fraction", "decomposition_support"):
        if key in report:
            lines.append(f"{key.replace('_', ' ')}: {report[key]}")
    for msg in report.get("mismatches", []):
        lines.append(f"MISMATCH: {msg}")
    return "\n".join(lines) + "\n"
