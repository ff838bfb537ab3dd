"""Acceptance gate: one test per shipped criterion, at its stated tolerance.

Each test prints one `ACCEPTANCE <name>: PASS` line on success (run with
`pytest -v -s tests/test_acceptance.py` to watch them).  Tolerances are pinned
here, not deferred.
"""

from __future__ import annotations

import io
import json
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from smellvet.agreement import agreement_report, fleiss_kappa, ratings_matrix
from smellvet.catalog import evaluate_evidence, items_for
from smellvet.cli import main
from smellvet.codebook import frequency_table, load_codebook
from smellvet.sessions import load_session, session_stats
from smellvet.smells import Smell

from conftest import CORPUS, FIXTURES, REPO_ROOT

SMELL_KINDS = {s.value for s in Smell}


def run_cli(*argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin_text))
    return code, out.getvalue(), err.getvalue()


def ok(name: str):
    print(f"ACCEPTANCE {name}: PASS")


def test_catalog_fidelity(table3_reference):
    started = time.perf_counter()
    code, out, err = run_cli("export-catalog")
    elapsed = time.perf_counter() - started
    assert code == 0, err
    payload = json.loads(out)
    items = payload["items"]

    cataloged = [i for i in items if not i["derived"]]
    derived = [i for i in items if i["derived"]]
    assert len(cataloged) == 22
    assert len({i["smell"] for i in cataloged}) == 7
    reference = {row["id"]: row for row in table3_reference["items"]}
    assert {i["id"] for i in cataloged} == set(reference)
    for item in cataloged:
        want = reference[item["id"]]
        assert item["text"] == want["text"], item["id"]  # byte-exact
        assert item["smell"] == want["smell"]
    assert len(derived) == 4
    assert all(i["smell"] == "speculative_generality" for i in derived)
    assert elapsed < 1.0, f"export-catalog took {elapsed:.3f}s"
    ok("catalog-fidelity")


def test_detection_fixtures():
    corpus_files = sorted(CORPUS.glob("*.java"))
    assert len(corpus_files) == 16
    smelly = {p for p in corpus_files if p.name.endswith("_smelly.java")}
    clean = {p for p in corpus_files if p.name.endswith("_clean.java")}
    assert len(smelly) == len(clean) == 8

    started = time.perf_counter()
    code, out, err = run_cli("scan", str(CORPUS), "--format", "json")
    elapsed = time.perf_counter() - started
    assert code == 0, err
    candidates = json.loads(out)["candidates"]

    by_file: dict[str, set[str]] = {}
    for c in candidates:
        by_file.setdefault(Path(c["path"]).name, set()).add(c["smell"])
    for p in smelly:
        seeded = p.name.replace("_smelly.java", "")
        assert seeded in by_file.get(p.name, set()), f"no {seeded} candidate in {p.name}"
    for p in clean:
        assert p.name not in by_file, f"clean twin {p.name} flagged: {by_file.get(p.name)}"
    assert elapsed < 2.0, f"scan took {elapsed:.3f}s"
    ok("detection-fixtures")


def test_evidence_oracle(corpus_model, corpus_candidates, expected_evidence):
    from smellvet.detector import inspection_candidate

    checked = 0
    for c in corpus_candidates:
        key = f"{c.smell.value}|{c.entity}"
        expected = expected_evidence["candidates"][key]
        for item in items_for(c.smell):
            finding = evaluate_evidence(corpus_model, c, item).finding
            assert finding == expected[item.id], (key, item.id)
            if item.mode == "auto":
                checked += 1
    for key, expected in expected_evidence["clean_twins"].items():
        smell_s, entity = key.split("|", 1)
        c = inspection_candidate(corpus_model, Smell(smell_s), entity)
        for item in items_for(c.smell):
            finding = evaluate_evidence(corpus_model, c, item).finding
            assert finding == expected[item.id], (key, item.id)
            if item.mode == "auto":
                checked += 1
    # every auto-item instance over the 8 flagged entities and 8 clean twins
    assert checked == 24
    ok("evidence-oracle")


def test_frequency_tables():
    refined_sessions = [
        load_session(p) for p in sorted((FIXTURES / "sessions" / "lpl_refined").glob("*.json"))
    ]
    refined = load_codebook(FIXTURES / "codebooks" / "lpl_refined.json", refined_sessions)
    table = frequency_table(refined, refined_sessions, Smell.LONG_PARAMETER_LIST)
    assert table.accepting[0] == ("Too many parameters", 6)
    assert table.accepting_total == 20
    assert table.rejecting_total == 18

    task1_sessions = [
        load_session(p) for p in sorted((FIXTURES / "sessions" / "lpl_task1").glob("*.json"))
    ]
    task1 = load_codebook(FIXTURES / "codebooks" / "lpl_task1.json", task1_sessions)
    table1 = frequency_table(task1, task1_sessions, Smell.LONG_PARAMETER_LIST)
    assert ("Needed parameters", 2) in table1.rejecting
    assert table1.accepting_total == 5
    assert table1.rejecting_total == 7
    ok("frequency-tables")


def test_session_statistics(study_sessions):
    stats = session_stats(study_sessions)
    assert len(study_sessions) == 12
    assert all(len(s.candidate_set) == 24 for s in study_sessions)
    assert stats.validations == 288
    assert stats.arguments_total == 303
    assert stats.discarded == 32
    assert stats.arguments_total - stats.discarded == 271
    assert stats.accept_share_pct == pytest.approx(57.93, abs=0.01)
    ok("session-statistics")


def test_fleiss_kappa(study_sessions):
    # perfect agreement, two categories used
    assert fleiss_kappa([[12, 0], [0, 12], [12, 0]]) == 1.0
    # frozen chance-level construction (observed agreement equals chance)
    chance = [[2, 0], [0, 2], [1, 1], [1, 1]]
    assert fleiss_kappa(chance) == pytest.approx(0.0, abs=1e-9)
    # engineered 12-rater fixture against its exact constructed value
    expected = json.loads((FIXTURES / "expected_agreement.json").read_text())
    exact = Fraction(*map(int, expected["kappaExact"].split("/")))
    assert 0.24 <= float(exact) <= 0.32
    rows, _ = ratings_matrix(study_sessions)
    assert rows == expected["ratingsMatrix"]
    report = agreement_report(study_sessions)
    assert report.kappa == pytest.approx(float(exact), abs=1e-6)
    ok("fleiss-kappa")


def test_property_suites_green():
    """Re-run the four named property suites as a dedicated gate."""
    node_ids = [
        "tests/test_parser.py::test_tolerance_garbage_never_changes_recovered_types",
        "tests/test_detector.py::test_threshold_monotonicity",
        "tests/test_codebook.py::test_conservation_under_random_merge_split_sequences",
        "tests/test_sessions.py::test_roundtrip_property",
        "tests/test_sessions.py::test_save_load_save_roundtrip_bytes",
    ]
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "--no-header", *node_ids],
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert f"{len(node_ids)} passed" in proc.stdout
    ok("property-suites")
