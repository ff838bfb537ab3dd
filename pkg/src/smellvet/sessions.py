"""Review sessions: per-reviewer answers, verdicts, arguments, persistence.

Files are canonical JSON (sorted keys, two-space indent, trailing newline) so
that save -> load -> save is byte-identical.  Timestamps are recorded but
excluded from the file-identity fingerprint used for conflict detection.
"""

from __future__ import annotations

import copy
import hashlib
import json
import logging
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from smellvet.catalog import item_by_id, items_for
from smellvet.smells import Smell

SESSION_SCHEMA_VERSION = 1

DECISIONS = ("accept", "reject", "skip")

logger = logging.getLogger(__name__)


class UnknownCandidate(KeyError):
    pass


class InvalidVerdict(ValueError):
    pass


class InvalidAnswer(ValueError):
    pass


def now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class Argument:
    text: str
    codes: list[str] = field(default_factory=list)
    discarded: bool = False

    def __post_init__(self) -> None:
        if self.discarded and self.codes:
            raise InvalidVerdict("discarded arguments carry no codes")

    def as_dict(self) -> dict:
        return {"text": self.text, "codes": list(self.codes), "discarded": self.discarded}

    @classmethod
    def from_dict(cls, raw: dict) -> "Argument":
        return cls(
            text=raw["text"],
            codes=list(raw.get("codes", [])),
            discarded=bool(raw.get("discarded", False)),
        )


@dataclass
class Verdict:
    decision: str
    arguments: list[Argument] = field(default_factory=list)
    unjustified: bool = False
    recorded_at: str = ""
    idempotency_key: str | None = None

    def __post_init__(self) -> None:
        if self.decision not in DECISIONS:
            raise InvalidVerdict(f"decision must be one of {DECISIONS}, got {self.decision!r}")
        if self.decision in ("accept", "reject") and not self.arguments and not self.unjustified:
            raise InvalidVerdict(
                f"{self.decision} requires at least one argument "
                "unless explicitly flagged unjustified"
            )

    def as_dict(self) -> dict:
        out = {
            "decision": self.decision,
            "arguments": [a.as_dict() for a in self.arguments],
            "unjustified": self.unjustified,
            "recordedAt": self.recorded_at,
        }
        if self.idempotency_key is not None:
            out["idempotencyKey"] = self.idempotency_key
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "Verdict":
        return cls(
            decision=raw["decision"],
            arguments=[Argument.from_dict(a) for a in raw.get("arguments", [])],
            unjustified=bool(raw.get("unjustified", False)),
            recorded_at=raw.get("recordedAt", ""),
            idempotency_key=raw.get("idempotencyKey"),
        )


@dataclass
class ReviewSession:
    session_id: str
    reviewer_id: str
    candidate_set: list[str]  # ordered, unique
    candidate_smells: dict[str, Smell]
    answers: dict[str, dict[str, str]] = field(default_factory=dict)
    # candidate id -> full verdict history; the current verdict is the last entry
    verdicts: dict[str, list[Verdict]] = field(default_factory=dict)
    created_at: str = ""
    updated_at: str = ""

    def current_verdict(self, candidate_id: str) -> Verdict | None:
        history = self.verdicts.get(candidate_id)
        return history[-1] if history else None

    def pending_candidates(self) -> list[str]:
        return [c for c in self.candidate_set if c not in self.verdicts]

    def as_dict(self) -> dict:
        return {
            "schemaVersion": SESSION_SCHEMA_VERSION,
            "sessionId": self.session_id,
            "reviewerId": self.reviewer_id,
            "candidateSet": list(self.candidate_set),
            "candidateSmells": {c: s.value for c, s in self.candidate_smells.items()},
            "answers": {c: dict(items) for c, items in self.answers.items()},
            "verdicts": {c: [v.as_dict() for v in hist] for c, hist in self.verdicts.items()},
            "createdAt": self.created_at,
            "updatedAt": self.updated_at,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ReviewSession":
        if raw.get("schemaVersion") != SESSION_SCHEMA_VERSION:
            raise ValueError(f"unsupported session schema: {raw.get('schemaVersion')!r}")
        return cls(
            session_id=raw["sessionId"],
            reviewer_id=raw["reviewerId"],
            candidate_set=list(raw["candidateSet"]),
            candidate_smells={c: Smell(s) for c, s in raw.get("candidateSmells", {}).items()},
            answers={c: dict(v) for c, v in raw.get("answers", {}).items()},
            verdicts={
                c: [Verdict.from_dict(v) for v in hist]
                for c, hist in raw.get("verdicts", {}).items()
            },
            created_at=raw.get("createdAt", ""),
            updated_at=raw.get("updatedAt", ""),
        )


def create_session(
    candidates: list[tuple[str, Smell]],
    reviewer_id: str,
    session_id: str | None = None,
) -> ReviewSession:
    """Open an empty session over a candidate set.

    `candidates` are (candidate id, smell kind) pairs; duplicates are dropped
    with a warning, keeping first-occurrence order.
    """
    if not candidates:
        raise ValueError("a session needs at least one candidate")
    ordered: list[str] = []
    smells: dict[str, Smell] = {}
    for cid, smell in candidates:
        if cid in smells:
            logger.warning("duplicate candidate id %s dropped from session", cid)
            continue
        ordered.append(cid)
        smells[cid] = smell
    ts = now_iso()
    return ReviewSession(
        session_id=session_id or uuid.uuid4().hex[:12],
        reviewer_id=reviewer_id,
        candidate_set=ordered,
        candidate_smells=smells,
        created_at=ts,
        updated_at=ts,
    )


def record_answer(
    session: ReviewSession, candidate_id: str, item_id: str, answer: str
) -> ReviewSession:
    if candidate_id not in session.candidate_smells:
        raise UnknownCandidate(candidate_id)
    item = item_by_id(item_id)
    smell = session.candidate_smells[candidate_id]
    if item.smell != smell:
        raise InvalidAnswer(f"item {item_id} does not belong to smell {smell.value}")
    if answer not in ("yes", "no", "unsure", "skip"):
        raise InvalidAnswer(f"bad item answer {answer!r}")
    session.answers.setdefault(candidate_id, {})[item_id] = answer
    session.updated_at = now_iso()
    return session


def record_verdict(
    session: ReviewSession,
    candidate_id: str,
    decision: str,
    arguments: list[str | Argument],
    unjustified: bool = False,
    idempotency_key: str | None = None,
) -> ReviewSession:
    """Store a verdict; a prior verdict is kept as a history entry.

    A repeated idempotency key for the same candidate is a no-op replay.
    """
    if candidate_id not in session.candidate_smells:
        raise UnknownCandidate(candidate_id)
    history = session.verdicts.setdefault(candidate_id, [])
    if idempotency_key is not None:
        if any(v.idempotency_key == idempotency_key for v in history):
            return session
    args = [a if isinstance(a, Argument) else Argument(text=a) for a in arguments]
    verdict = Verdict(
        decision=decision,
        arguments=args,
        unjustified=unjustified,
        recorded_at=now_iso(),
        idempotency_key=idempotency_key,
    )
    history.append(verdict)
    session.updated_at = now_iso()
    return session


def valid_items_for_candidate(session: ReviewSession, candidate_id: str) -> list[str]:
    smell = session.candidate_smells.get(candidate_id)
    if smell is None:
        raise UnknownCandidate(candidate_id)
    return [it.id for it in items_for(smell)]


# -- persistence -------------------------------------------------------------

def dumps_session(session: ReviewSession) -> str:
    return json.dumps(session.as_dict(), indent=2, sort_keys=True) + "\n"


def save_session(session: ReviewSession, path: str | Path) -> None:
    Path(path).write_text(dumps_session(session), encoding="utf-8")


def load_session(path: str | Path) -> ReviewSession:
    return ReviewSession.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def session_fingerprint(session: ReviewSession) -> str:
    """Identity hash over session content, timestamps excluded."""
    shadow = copy.deepcopy(session.as_dict())
    shadow.pop("createdAt", None)
    shadow.pop("updatedAt", None)
    for history in shadow.get("verdicts", {}).values():
        for v in history:
            v.pop("recordedAt", None)
    blob = json.dumps(shadow, sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# -- aggregate statistics -----------------------------------------------------

@dataclass(frozen=True)
class SessionStats:
    validations: int
    arguments_total: int
    discarded: int
    discard_rate_pct: float
    accept_share_pct: float
    reject_share_pct: float
    unjustified_verdicts: int

    def as_dict(self) -> dict:
        return {
            "validations": self.validations,
            "argumentsTotal": self.arguments_total,
            "discarded": self.discarded,
            "discardRatePct": self.discard_rate_pct,
            "acceptSharePct": self.accept_share_pct,
            "rejectSharePct": self.reject_share_pct,
            "unjustifiedVerdicts": self.unjustified_verdicts,
        }


def session_stats(sessions: list[ReviewSession]) -> SessionStats:
    """Counts over current verdicts.

    A validation is a candidate whose current decision is accept or reject.
    The discard rate uses the non-discarded remainder as its base, and the
    accept/reject shares are computed over non-discarded arguments, attributed
    by their verdict's decision.
    """
    validations = 0
    arguments_total = 0
    discarded = 0
    accept_args = 0
    reject_args = 0
    unjustified = 0
    for session in sessions:
        for cid in session.candidate_set:
            verdict = session.current_verdict(cid)
            if verdict is None or verdict.decision == "skip":
                continue
            validations += 1
            if verdict.unjustified:
                unjustified += 1
            for arg in verdict.arguments:
                arguments_total += 1
                if arg.discarded:
                    discarded += 1
                elif verdict.decision == "accept":
                    accept_args += 1
                else:
                    reject_args += 1
    remaining = arguments_total - discarded
    return SessionStats(
        validations=validations,
        arguments_total=arguments_total,
        discarded=discarded,
        discard_rate_pct=(discarded / remaining * 100.0) if remaining else 0.0,
        accept_share_pct=(accept_args / remaining * 100.0) if remaining else 0.0,
        reject_share_pct=(reject_args / remaining * 100.0) if remaining else 0.0,
        unjustified_verdicts=unjustified,
    )
