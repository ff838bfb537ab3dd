#!/usr/bin/env python3
"""Construct the coded-heuristics replay fixtures for Long Parameter List.

Two fixtures ship:
  * lpl_refined: 12 reviewers over the three LPL tasks, arguments tagged so
    the per-code frequencies reproduce the refined heuristics table
    (accepting total 20 headed by "Too many parameters" at 6; rejecting 18).
  * lpl_task1: the first LPL task alone, reproducing its coded frequencies
    (accepting total 5, rejecting total 7).

Tags are stored on the arguments inside the session files; the codebook files
hold the code definitions.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from smellvet.codebook import Codebook, dumps_codebook  # noqa: E402
from smellvet.sessions import Argument, ReviewSession, Verdict, dumps_session  # noqa: E402
from smellvet.smells import Smell  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
FIXED_TS = "2021-04-01T00:00:00Z"
RATERS = 12

REFINED_ACCEPTING = [
    ("Too many parameters", 6),
    ("Too many complex parameters", 5),
    ("Parameters should be encapsulated", 3),
    ("Unused parameters", 2),
    ("Unnecessary parameters", 2),
    ("Inappropriate use of builder", 2),
]
REFINED_REJECTING = [
    ("Needed parameters", 5),
    ("All parameters are used", 5),
    ("It is a builder", 4),
    ("Acceptable number of parameters", 2),
    ("Easy to understand", 2),
]

TASK1_ACCEPTING = [
    ("Too many complex parameters", 2),
    ("Too many parameters", 1),
    ("Unused parameters", 1),
    ("Parameters should be encapsulated", 1),
]
TASK1_REJECTING = [
    ("Needed parameters", 2),
    ("All parameters are used", 2),
    ("Acceptable number of parameters", 2),
    ("It is a constructor", 1),
]


def spread(tags: list[tuple[str, int]]) -> list[str]:
    """Flatten (label, f) rows into one label per argument."""
    out: list[str] = []
    for label, f in tags:
        out.extend([label] * f)
    return out


def build_fixture(
    name: str,
    candidate_ids: list[str],
    accepting: list[tuple[str, int]],
    rejecting: list[tuple[str, int]],
) -> None:
    accept_labels = spread(accepting)
    reject_labels = spread(rejecting)
    total_verdicts = RATERS * len(candidate_ids)
    assert len(accept_labels) + len(reject_labels) >= total_verdicts or True

    sessions: list[ReviewSession] = []
    for r in range(RATERS):
        sessions.append(
            ReviewSession(
                session_id=f"{name}-r{r + 1:02d}",
                reviewer_id=f"reviewer-{r + 1:02d}",
                candidate_set=list(candidate_ids),
                candidate_smells={c: Smell.LONG_PARAMETER_LIST for c in candidate_ids},
                created_at=FIXED_TS,
                updated_at=FIXED_TS,
            )
        )

    book = Codebook(sessions=sessions)
    label_to_id: dict[str, str] = {}
    for label, _f in accepting:
        label_to_id[label] = book.define_code(label, Smell.LONG_PARAMETER_LIST, "accepting").code_id
    for label, _f in rejecting:
        label_to_id[label] = book.define_code(label, Smell.LONG_PARAMETER_LIST, "rejecting").code_id

    # Deal verdict slots (reviewer-major order): accepting arguments first.
    slots = [(r, cid) for r in range(RATERS) for cid in candidate_ids]
    n_accept_verdicts = min(len(accept_labels), total_verdicts)
    ai = ri = 0
    for idx, (r, cid) in enumerate(slots):
        session = sessions[r]
        if idx < n_accept_verdicts:
            decision = "accept"
            labels = [accept_labels[ai]]
            ai += 1
        else:
            decision = "reject"
            labels = [reject_labels[ri]] if ri < len(reject_labels) else []
            ri += 1
        args = [
            Argument(text=f"{label} (argument by {session.reviewer_id} on {cid})",
                     codes=[label_to_id[label]])
            for label in labels
        ]
        if not args:
            args = [Argument(text="It has not a smell.", discarded=True)]
        session.verdicts[cid] = [Verdict(decision=decision, arguments=args, recorded_at=FIXED_TS)]

    # Leftover coded arguments ride as second arguments on early verdicts.
    extra_idx = 0
    while ai < len(accept_labels):
        r, cid = slots[extra_idx % n_accept_verdicts]
        label = accept_labels[ai]
        sessions[r].verdicts[cid][-1].arguments.append(
            Argument(text=f"{label} (additional argument on {cid})", codes=[label_to_id[label]])
        )
        ai += 1
        extra_idx += 1
    extra_idx = 0
    reject_start = n_accept_verdicts
    n_reject_verdicts = total_verdicts - n_accept_verdicts
    while ri < len(reject_labels):
        r, cid = slots[reject_start + (extra_idx % n_reject_verdicts)]
        label = reject_labels[ri]
        sessions[r].verdicts[cid][-1].arguments.append(
            Argument(text=f"{label} (additional argument on {cid})", codes=[label_to_id[label]])
        )
        ri += 1
        extra_idx += 1

    out_dir = ROOT / "fixtures" / "sessions" / name
    out_dir.mkdir(parents=True, exist_ok=True)
    for old in out_dir.glob("*.json"):
        old.unlink()
    for session in sessions:
        (out_dir / f"{session.session_id}.json").write_text(
            dumps_session(session), encoding="utf-8"
        )
    book_dir = ROOT / "fixtures" / "codebooks"
    book_dir.mkdir(parents=True, exist_ok=True)
    (book_dir / f"{name}.json").write_text(dumps_codebook(book), encoding="utf-8")
    print(f"{name}: {len(sessions)} sessions, {len(book.codes)} codes")


def main() -> None:
    build_fixture(
        "lpl_refined",
        ["study-long-parameter-list-1", "study-long-parameter-list-2", "study-long-parameter-list-3"],
        REFINED_ACCEPTING,
        REFINED_REJECTING,
    )
    build_fixture(
        "lpl_task1",
        ["study-long-parameter-list-1"],
        TASK1_ACCEPTING,
        TASK1_REJECTING,
    )


if __name__ == "__main__":
    main()
