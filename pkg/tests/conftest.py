from __future__ import annotations

import json
from pathlib import Path

import pytest

from smellvet.detector import DetectionConfig, detect
from smellvet.project import load_project

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURES = REPO_ROOT / "fixtures"
CORPUS = FIXTURES / "corpus"


@pytest.fixture(scope="session")
def corpus_model():
    return load_project([CORPUS])


@pytest.fixture(scope="session")
def corpus_candidates(corpus_model):
    return detect(corpus_model, DetectionConfig())


@pytest.fixture(scope="session")
def expected_evidence():
    return json.loads((FIXTURES / "expected_evidence.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def table3_reference():
    return json.loads((FIXTURES / "table3_reference.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def study_sessions():
    from smellvet.sessions import load_session

    paths = sorted((FIXTURES / "sessions" / "study").glob("*.json"))
    return [load_session(p) for p in paths]
