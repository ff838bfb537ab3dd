"""Fleiss' kappa over multi-reviewer verdicts.

kappa = (P_bar - P_e) / (1 - P_e), with P_bar the mean per-subject pairwise
agreement and P_e the chance agreement from the marginal category shares.
When every rating lands in one single category, P_e = 1 and kappa is
undefined; that case returns None as the explicit undefined marker.
"""

from __future__ import annotations

from dataclasses import dataclass

from smellvet.sessions import ReviewSession
from smellvet.smells import Smell

CATEGORIES = ("accept", "reject")


class RaggedMatrix(ValueError):
    """Rows differ in length or in total rater count, or raters < 2."""


class DisjointCandidateSets(ValueError):
    """Sessions to compare do not cover the same candidate set."""


def fleiss_kappa(ratings: list[list[int]]) -> float | None:
    """Fleiss' kappa for a subjects x categories count matrix.

    Every row must sum to the same rater count n >= 2.  Returns None when
    chance agreement is 1 (single used category), the undefined case.
    """
    if not ratings or not ratings[0]:
        raise RaggedMatrix("empty ratings matrix")
    width = len(ratings[0])
    if any(len(row) != width for row in ratings):
        raise RaggedMatrix("rows have different category counts")
    if any(cell < 0 for row in ratings for cell in row):
        raise RaggedMatrix("negative rating counts")
    n = sum(ratings[0])
    if any(sum(row) != n for row in ratings):
        raise RaggedMatrix("rows must all sum to the same rater count")
    if n < 2:
        raise RaggedMatrix("at least two raters per subject are required")

    subjects = len(ratings)
    total = subjects * n
    category_shares = [sum(row[j] for row in ratings) / total for j in range(width)]
    p_e = sum(share * share for share in category_shares)
    if p_e >= 1.0:
        return None
    p_bar = sum(
        (sum(cell * cell for cell in row) - n) / (n * (n - 1)) for row in ratings
    ) / subjects
    return (p_bar - p_e) / (1.0 - p_e)


@dataclass(frozen=True)
class AgreementReport:
    smell: str  # smell kind value or "all"
    raters: int
    subjects: int
    kappa: float | None
    category_shares: dict[str, float]

    def as_dict(self) -> dict:
        return {
            "smell": self.smell,
            "raters": self.raters,
            "subjects": self.subjects,
            "kappa": self.kappa,
            "categoryShares": dict(self.category_shares),
        }


def ratings_matrix(
    sessions: list[ReviewSession], smell: Smell | None = None
) -> tuple[list[list[int]], list[str]]:
    """Build the subjects x {accept, reject} matrix from current verdicts.

    Subjects are candidates every session decided (skips and missing verdicts
    drop the subject) so each row keeps a constant rater count.
    """
    if len(sessions) < 2:
        raise DisjointCandidateSets("agreement needs at least two sessions")
    base = sessions[0]
    base_set = set(base.candidate_set)
    for other in sessions[1:]:
        if set(other.candidate_set) != base_set:
            raise DisjointCandidateSets(
                f"session {other.session_id} covers a different candidate set"
            )
    rows: list[list[int]] = []
    subjects: list[str] = []
    for cid in base.candidate_set:
        if smell is not None and base.candidate_smells.get(cid) != smell:
            continue
        counts = {c: 0 for c in CATEGORIES}
        complete = True
        for session in sessions:
            verdict = session.current_verdict(cid)
            if verdict is None or verdict.decision == "skip":
                complete = False
                break
            counts[verdict.decision] += 1
        if complete:
            rows.append([counts[c] for c in CATEGORIES])
            subjects.append(cid)
    return rows, subjects


def agreement_report(
    sessions: list[ReviewSession], smell: Smell | None = None
) -> AgreementReport:
    rows, subjects = ratings_matrix(sessions, smell)
    label = smell.value if smell is not None else "all"
    if not rows:
        return AgreementReport(label, len(sessions), 0, None, {c: 0.0 for c in CATEGORIES})
    total = sum(sum(row) for row in rows)
    shares = {
        c: sum(row[j] for row in rows) / total for j, c in enumerate(CATEGORIES)
    }
    return AgreementReport(
        smell=label,
        raters=len(sessions),
        subjects=len(rows),
        kappa=fleiss_kappa(rows),
        category_shares=shares,
    )


def agreement_by_smell(sessions: list[ReviewSession]) -> list[AgreementReport]:
    """Overall report plus one per smell kind present in the candidate set."""
    reports = [agreement_report(sessions)]
    smells_present: list[Smell] = []
    for smell in sessions[0].candidate_smells.values():
        if smell not in smells_present:
            smells_present.append(smell)
    for smell in sorted(smells_present, key=lambda s: s.value):
        reports.append(agreement_report(sessions, smell))
    return reports
