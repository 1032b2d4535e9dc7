import json
import shutil
import subprocess
import sys

import pytest

from semicech.catalog import corpus_dir, generate_corpus
from semicech.cli import main

CORPUS = corpus_dir()


def test_validate_corpus(capsys):
    for path in sorted(CORPUS.glob("*.model")):
        assert main(["validate", str(path)]) == 0
    err = capsys.readouterr().err
    assert "disturbing" in err


def test_validate_truncated(tmp_path, capsys):
    bad = tmp_path / "cut.model"
    bad.write_text((CORPUS / "table1.model").read_text()[:120])
    assert main(["validate", str(bad)]) == 1
    assert "line" in capsys.readouterr().err


def test_validate_semantic_error(tmp_path, capsys):
    doc = json.loads((CORPUS / "prbox.model").read_text())
    doc["tables"]["ab"]["00"] = "3/2"
    bad = tmp_path / "bad.model"
    bad.write_text(json.dumps(doc, indent=2))
    assert main(["validate", str(bad)]) == 2
    assert "tables.ab" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "missing.model")]) == 2


def test_analyze_table1_divergence(capsys):
    assert main(["analyze", str(CORPUS / "table1.model"), "--generalized", "--classical"]) == 0
    out = capsys.readouterr().out
    rows = {tuple(line.split()[:2]): line.split()[3:] for line in out.splitlines() if line.startswith("ad ")}
    assert rows[("ad", "01")] == ["nontrivial", "trivial"]
    assert rows[("ad", "11")] == ["trivial", "trivial"]


def test_analyze_prbox_fraction(capsys):
    assert main(["analyze", str(CORPUS / "prbox.model"), "--fraction"]) == 0
    assert "contextual fraction: 1\n" in capsys.readouterr().out


def test_analyze_deterministic_with_oracle(capsys):
    assert main(["analyze", str(CORPUS / "deterministic.model"), "--oracle", "--classical"]) == 0


def test_analyze_disturbing(capsys):
    assert main(["analyze", str(CORPUS / "disturbing.model")]) == 3
    assert "disturbing" in capsys.readouterr().err


def test_analyze_too_large(capsys):
    assert main(["analyze", str(CORPUS / "prbox.model"), "--cutoff", "8"]) == 4


def test_analyze_recast_and_json(tmp_path):
    out = tmp_path / "r.json"
    code = main(["analyze", str(CORPUS / "pr_uniform_mix.model"), "--semiring", "boolean", "--format", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["semiring"] == "boolean" and report["verdict"] == "noncontextual"
    assert main(["analyze", str(CORPUS / "table1.model"), "--semiring", "rational"]) == 2


def test_oracle_mismatch_exit(monkeypatch, capsys):
    import semicech.cli as cli

    monkeypatch.setattr(cli, "oracle_section_trivial", lambda m, j, e: False)
    assert main(["analyze", str(CORPUS / "deterministic.model"), "--oracle"]) == 5
    assert "oracle mismatch" in capsys.readouterr().err


def test_corpus_fresh(capsys):
    assert main(["corpus"]) == 0
    assert "10/10" in capsys.readouterr().out


def test_corpus_random_sweep(capsys):
    assert main(["corpus", "--random", "12", "--seed", "4"]) == 0
    assert "0 oracle mismatches" in capsys.readouterr().out


def test_corpus_corrupted_expectation(tmp_path, capsys):
    for f in CORPUS.iterdir():
        if f.suffix in (".model", ".json"):
            shutil.copy(f, tmp_path / f.name)
    exp = json.loads((tmp_path / "expectations.json").read_text())
    for entry in exp["entries"]:
        if entry["name"] == "prbox":
            entry["expect"]["contextual_fraction"] = "1/2"
        if entry["name"] == "hardy":
            entry["expect"]["sections"]["ab:00"]["generalized"] = "trivial"
    (tmp_path / "expectations.json").write_text(json.dumps(exp))
    assert main(["corpus", "--dir", str(tmp_path)]) == 6
    out = capsys.readouterr().out
    assert "FAIL prbox: contextual_fraction: expected '1/2', got '1'" in out
    assert "FAIL hardy: sections.ab:00.generalized" in out
    assert "8/10" in out


def test_generated_corpus_matches_shipped(tmp_path):
    generate_corpus(tmp_path)
    for f in CORPUS.iterdir():
        if f.suffix in (".model", ".json"):
            assert (tmp_path / f.name).read_text() == f.read_text(), f.name


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "semicech", "validate", str(CORPUS / "hardy.model")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "valid boolean model" in proc.stdout


def test_expectations_carry_provenance():
    exp = json.loads((CORPUS / "expectations.json").read_text())
    names = {e["name"] for e in exp["entries"]}
    assert {"table1", "prbox", "hardy", "deterministic", "fully_mixed"} <= names
    for e in exp["entries"]:
        if e["expect"]["nondisturbing"]:
            assert set(e["expect"]["provenance"].values()) <= {"PAPER", "TRIVIAL", "DERIVED"}
