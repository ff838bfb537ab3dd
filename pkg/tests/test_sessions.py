from __future__ import annotations

import json
import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smellvet.sessions import (
    Argument,
    InvalidVerdict,
    UnknownCandidate,
    Verdict,
    create_session,
    dumps_session,
    load_session,
    record_answer,
    record_verdict,
    save_session,
    session_fingerprint,
    session_stats,
)
from smellvet.smells import Smell


def candidates(n=3, smell=Smell.DATA_CLASS):
    return [(f"c{i:02d}", smell) for i in range(n)]


def test_create_session_has_all_pending():
    s = create_session(candidates(24), "rev-1")
    assert len(s.candidate_set) == 24
    assert s.pending_candidates() == s.candidate_set
    assert s.verdicts == {}


def test_create_session_single_candidate():
    s = create_session(candidates(1), "rev-1")
    assert s.pending_candidates() == ["c00"]


def test_duplicate_candidates_deduplicated_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        s = create_session([("a", Smell.DATA_CLASS), ("a", Smell.DATA_CLASS), ("b", Smell.GOD_CLASS)], "r")
    assert s.candidate_set == ["a", "b"]
    assert any("duplicate candidate" in rec.message for rec in caplog.records)


def test_create_session_requires_candidates():
    with pytest.raises(ValueError):
        create_session([], "r")


def test_record_verdict_stores_arguments():
    s = create_session(candidates(), "r")
    record_verdict(s, "c00", "accept", ["too many fields", "no behaviour"])
    v = s.current_verdict("c00")
    assert v.decision == "accept"
    assert [a.text for a in v.arguments] == ["too many fields", "no behaviour"]
    assert all(a.codes == [] for a in v.arguments)


def test_unjustified_verdict_allowed_and_counted():
    s = create_session(candidates(), "r")
    record_verdict(s, "c00", "accept", [], unjustified=True)
    stats = session_stats([s])
    assert stats.unjustified_verdicts == 1
    assert stats.validations == 1


def test_justification_required_without_flag():
    with pytest.raises(InvalidVerdict):
        Verdict(decision="accept", arguments=[])


def test_unknown_candidate_rejected():
    s = create_session(candidates(), "r")
    with pytest.raises(UnknownCandidate):
        record_verdict(s, "zz", "reject", ["whatever"])


def test_verdict_overwrite_appends_history():
    s = create_session(candidates(), "r")
    record_verdict(s, "c00", "accept", ["a1"])
    record_verdict(s, "c00", "reject", ["a2"])
    record_verdict(s, "c00", "skip", [])
    assert len(s.verdicts["c00"]) == 3
    assert s.current_verdict("c00").decision == "skip"


def test_idempotency_key_replay_is_noop():
    s = create_session(candidates(), "r")
    record_verdict(s, "c00", "accept", ["a1"], idempotency_key="k1")
    record_verdict(s, "c00", "accept", ["a1"], idempotency_key="k1")
    assert len(s.verdicts["c00"]) == 1


def test_discarded_arguments_carry_no_codes():
    with pytest.raises(InvalidVerdict):
        Argument(text="evasive", codes=["some-code"], discarded=True)


def test_record_answer_validates_item_smell():
    s = create_session(candidates(smell=Smell.DATA_CLASS), "r")
    record_answer(s, "c00", "DC-1", "yes")
    assert s.answers["c00"]["DC-1"] == "yes"
    from smellvet.sessions import InvalidAnswer

    with pytest.raises(InvalidAnswer):
        record_answer(s, "c00", "MM-1", "yes")


def test_save_load_save_roundtrip_bytes(tmp_path):
    s = create_session(candidates(5), "r", session_id="fixed")
    record_verdict(s, "c00", "accept", ["a1"])
    record_answer(s, "c01", "DC-2", "no")
    p1 = tmp_path / "one.json"
    p2 = tmp_path / "two.json"
    save_session(s, p1)
    save_session(load_session(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_fingerprint_ignores_timestamps(tmp_path):
    s = create_session(candidates(2), "r", session_id="fx")
    record_verdict(s, "c00", "accept", ["a"])
    fp = session_fingerprint(s)
    s.updated_at = "2099-01-01T00:00:00Z"
    s.verdicts["c00"][-1].recorded_at = "2099-01-01T00:00:00Z"
    assert session_fingerprint(s) == fp
    record_verdict(s, "c01", "reject", ["b"])
    assert session_fingerprint(s) != fp


_texts = st.text(
    alphabet=st.characters(min_codepoint=32, max_codepoint=0x2FA0), min_size=1, max_size=30
)


@settings(max_examples=40, deadline=None)
@given(
    decisions=st.lists(
        st.tuples(st.sampled_from(["accept", "reject", "skip"]), st.lists(_texts, max_size=3)),
        min_size=1,
        max_size=8,
    )
)
def test_roundtrip_property(tmp_path_factory, decisions):
    tmp = tmp_path_factory.mktemp("sess")
    s = create_session(candidates(len(decisions)), "r", session_id="prop")
    for i, (decision, args) in enumerate(decisions):
        unjustified = decision != "skip" and not args
        record_verdict(s, f"c{i:02d}", decision, args, unjustified=unjustified)
    p1 = tmp / "a.json"
    p2 = tmp / "b.json"
    save_session(s, p1)
    save_session(load_session(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


# -- statistics -----------------------------------------------------------------


def test_stats_from_study_fixture(study_sessions):
    stats = session_stats(study_sessions)
    assert stats.validations == 288
    assert stats.arguments_total == 303
    assert stats.discarded == 32
    assert stats.arguments_total - stats.discarded == 271
    assert stats.accept_share_pct == pytest.approx(57.93, abs=0.01)
    assert stats.reject_share_pct == pytest.approx(42.07, abs=0.01)
    assert stats.discard_rate_pct == pytest.approx(11.81, abs=0.02)
    assert stats.accept_share_pct + stats.reject_share_pct == pytest.approx(100.0, abs=1e-9)


def test_stats_zero_when_empty():
    s = create_session(candidates(), "r")
    stats = session_stats([s])
    assert stats.validations == 0
    assert stats.arguments_total == 0
    assert stats.discard_rate_pct == 0.0


def test_stats_skip_not_a_validation():
    s = create_session(candidates(2), "r")
    record_verdict(s, "c00", "skip", [])
    record_verdict(s, "c01", "accept", ["fine"])
    assert session_stats([s]).validations == 1


def test_stats_json_shape(study_sessions):
    blob = json.loads(json.dumps(session_stats(study_sessions).as_dict()))
    assert set(blob) == {
        "validations", "argumentsTotal", "discarded", "discardRatePct",
        "acceptSharePct", "rejectSharePct", "unjustifiedVerdicts",
    }


def test_dumps_session_fixture_files_are_canonical(study_sessions):
    from conftest import FIXTURES

    for session in study_sessions[:2]:
        path = FIXTURES / "sessions" / "study" / f"{session.session_id}.json"
        assert path.read_text(encoding="utf-8") == dumps_session(session)
