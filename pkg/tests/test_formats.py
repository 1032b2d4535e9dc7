import json

import pytest

from semicech.catalog import corpus_dir
from semicech.cli import run_analysis
from semicech.errors import ModelSemanticError, ModelSyntaxError, NormalizationError
from semicech.formats import emit_report, load_model, model_to_document, parse_model, serialize_model
from semicech.generate import random_sweep

CORPUS = sorted(corpus_dir().glob("*.model"))

TABLE1_TEXT = """{
  "semiring": "boolean",
  "scenario": {"measurements": ["a", "b", "c", "d"],
               "contexts": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]],
               "outcomes": ["0", "1"]},
  "tables": {
    "ab": {"00": "1", "01": "0", "10": "0", "11": "1"},
    "bc": {"00": "1", "11": "1"},
    "cd": {"00": "1", "11": "1"},
    "da": {"00": "1", "01": "1", "10": "1", "11": "1"}
  }
}
"""


def test_shipped_table1(table1):
    m = load_model(corpus_dir() / "table1.model")
    assert m.same_tables(table1)


def test_sparse_and_full_listing_agree(table1):
    m = parse_model(TABLE1_TEXT)
    assert m.same_tables(table1)


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    m = load_model(path)
    text = serialize_model(m)
    again = parse_model(text)
    assert again.same_tables(m)
    assert serialize_model(again) == text


def test_random_round_trip():
    for m in random_sweep(5, 20):
        assert parse_model(serialize_model(m)).same_tables(m)


def test_syntax_error_location():
    text = TABLE1_TEXT.replace('"bc": {', '"bc" {')
    with pytest.raises(ModelSyntaxError) as err:
        parse_model(text)
    assert err.value.line == 8
    assert err.value.column > 1


def test_normalization_error_location():
    text = TABLE1_TEXT.replace('"ab": {"00": "1"', '"ab": {"00": "3/2"').replace('"semiring": "boolean"', '"semiring": "nonneg-rational"')
    with pytest.raises(ModelSemanticError) as err:
        parse_model(text)
    assert isinstance(err.value.cause, NormalizationError)
    assert err.value.location == "tables.ab"
    assert err.value.line == 7


def test_bad_value_location():
    text = TABLE1_TEXT.replace('"cd": {"00": "1"', '"cd": {"00": "2"')
    with pytest.raises(ModelSemanticError) as err:
        parse_model(text)
    assert err.value.location == "tables.cd.00"
    assert err.value.line == 9


@pytest.mark.parametrize(
    "mutate, location",
    [
        (lambda d: d.pop("tables"), "tables"),
        (lambda d: d.__setitem__("semiring", "tropical"), "semiring"),
        (lambda d: d["scenario"].__setitem__("contexts", [["a", "b"], ["a"]]), "scenario"),
        (lambda d: d["tables"].__setitem__("ac", {"00": "1"}), "tables.ac"),
        (lambda d: d["tables"]["ab"].__setitem__("2", "1"), "tables.ab.2"),
        (lambda d: d.__setitem__("format", 9), "format"),
    ],
)
def test_semantic_errors(mutate, location):
    doc = json.loads(TABLE1_TEXT)
    mutate(doc)
    with pytest.raises(ModelSemanticError) as err:
        parse_model(json.dumps(doc))
    assert err.value.location == location


def test_float_values_rejected():
    doc = json.loads(TABLE1_TEXT)
    doc["semiring"] = "nonneg-rational"
    doc["tables"]["ab"] = {"00": 0.5, "11": 0.5}
    with pytest.raises(ModelSemanticError):
        parse_model(json.dumps(doc))


def test_multichar_names_round_trip():
    from semicech.model import make_model
    from semicech.scenario import build_scenario

    s = build_scenario(["x1", "x2"], [["x1", "x2"]], {"x1": ["up", "down"], "x2": ["0", "1"]})
    m = make_model(s, "boolean", {"x1,x2": {("up", "1"): 1}})
    doc = model_to_document(m)
    assert doc["tables"] == {"x1,x2": {"up,1": "1"}}
    assert parse_model(serialize_model(m)).same_tables(m)


def test_report_is_deterministic(table1):
    a = emit_report(run_analysis(table1, classical=True, oracle=True))
    b = emit_report(run_analysis(table1, classical=True, oracle=True))
    assert a == b
    lines = [line.split() for line in a.splitlines()]
    assert ["ad", "01", "1", "nontrivial", "trivial", "nontrivial"] in lines
    assert ["ad", "10", "1", "nontrivial", "trivial", "nontrivial"] in lines
    js = json.loads(emit_report(run_analysis(table1, classical=True), "json"))
    assert js["verdict"] == "contextual"


def test_report_for_deterministic_model(det):
    report = run_analysis(det, fraction=True)
    text = emit_report(report)
    assert "contextual fraction: 0" in text
    assert all(sec["generalized"] == "trivial" for sec in report["sections"])


def test_report_for_disturbing_model():
    m = load_model(corpus_dir() / "disturbing.model")
    text = emit_report(run_analysis(m, fraction=True))
    assert "non-disturbing: NO" in text and "analyses skipped" in text
