#!/usr/bin/env python3
"""Construct the 12-reviewer x 24-candidate study fixture.

The verdict pattern is searched (deterministic seed) so that:
  * every one of the 24 candidates gets a verdict from all 12 reviewers,
  * total accepting verdicts = 157, so the argument bookkeeping reproduces
    the published totals (303 arguments, 32 discarded, 271 remaining,
    57.93% accepting share),
  * the 24x2 ratings matrix has Fleiss kappa ~ 0.28, inside the 0.24..0.32
    band reported for this kind of task.

The expected kappa is computed here with exact Fraction arithmetic (the
independent oracle) and frozen into fixtures/expected_agreement.json.
"""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from smellvet.sessions import Argument, ReviewSession, Verdict  # noqa: E402
from smellvet.smells import Smell  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
OUT_SESSIONS = ROOT / "fixtures" / "sessions" / "study"
OUT_EXPECTED = ROOT / "fixtures" / "expected_agreement.json"

RATERS = 12
TARGET_KAPPA = Fraction(28, 100)
TOTAL_ACCEPTS = 157
FIXED_TS = "2021-04-01T00:00:00Z"

SMELL_ORDER = [
    Smell.DATA_CLASS,
    Smell.FEATURE_ENVY,
    Smell.GOD_CLASS,
    Smell.LONG_PARAMETER_LIST,
    Smell.MIDDLE_MAN,
    Smell.PRIMITIVE_OBSESSION,
    Smell.REFUSED_BEQUEST,
    Smell.SPECULATIVE_GENERALITY,
]


def study_candidates() -> list[tuple[str, Smell]]:
    """Three tasks per smell kind, mirroring the study's 24 snippets."""
    out = []
    for smell in SMELL_ORDER:
        prefix = smell.value.replace("_", "-")
        for i in (1, 2, 3):
            out.append((f"study-{prefix}-{i}", smell))
    return out


def kappa_exact(rows: list[list[int]]) -> Fraction:
    n = sum(rows[0])
    subjects = len(rows)
    total = subjects * n
    shares = [
        Fraction(sum(row[j] for row in rows), total) for j in range(len(rows[0]))
    ]
    p_e = sum(s * s for s in shares)
    p_bar = Fraction(
        sum(sum(c * c for c in row) - n for row in rows), subjects * n * (n - 1)
    )
    return (p_bar - p_e) / (1 - p_e)


def search_accept_counts(rng: random.Random) -> list[int]:
    """Hill-climb 24 accept counts summing to 157 toward kappa = 0.28."""
    counts = [7] * 11 + [6] * 13  # 77 + 78 = 155
    counts[0] += 1
    counts[1] += 1  # sum = 157
    assert sum(counts) == TOTAL_ACCEPTS

    def score(cs: list[int]) -> Fraction:
        rows = [[a, RATERS - a] for a in cs]
        return abs(kappa_exact(rows) - TARGET_KAPPA)

    best = list(counts)
    best_score = score(best)
    for _ in range(20000):
        trial = list(best)
        i, j = rng.randrange(24), rng.randrange(24)
        if i == j:
            continue
        delta = rng.choice([1, 2])
        if trial[i] + delta > RATERS or trial[j] - delta < 0:
            continue
        trial[i] += delta
        trial[j] -= delta
        trial_score = score(trial)
        if trial_score < best_score:
            best, best_score = trial, trial_score
        if best_score == 0:
            break
    return best


def build() -> None:
    rng = random.Random(20210401)
    candidates = study_candidates()
    accept_counts = search_accept_counts(rng)
    rows = [[a, RATERS - a] for a in accept_counts]
    kappa = kappa_exact(rows)
    assert Fraction(24, 100) <= kappa <= Fraction(32, 100), f"kappa {float(kappa)} out of band"

    # Reviewer r accepts candidate i iff r < accept_counts[i].
    decisions: dict[tuple[int, str], str] = {}
    for (cid, _smell), accepts in zip(candidates, accept_counts):
        for r in range(RATERS):
            decisions[(r, cid)] = "accept" if r < accepts else "reject"

    accept_slots = [(r, cid) for r in range(RATERS) for (cid, _s) in candidates
                    if decisions[(r, cid)] == "accept"]
    reject_slots = [(r, cid) for r in range(RATERS) for (cid, _s) in candidates
                    if decisions[(r, cid)] == "reject"]
    assert len(accept_slots) == TOTAL_ACCEPTS and len(reject_slots) == 288 - TOTAL_ACCEPTS

    # 157 accepting + 114 rejecting supported arguments, 32 evasive discards:
    # 15 extra discards ride on accepting verdicts, and the 17 rejecting
    # verdicts beyond the first 114 carry only an evasive (discarded) argument.
    extra_discard_on_accept = set(accept_slots[:15])
    evasive_only_rejects = set(reject_slots[114:])
    assert len(evasive_only_rejects) == 17

    OUT_SESSIONS.mkdir(parents=True, exist_ok=True)
    for old in OUT_SESSIONS.glob("*.json"):
        old.unlink()
    for r in range(RATERS):
        session = ReviewSession(
            session_id=f"study-r{r + 1:02d}",
            reviewer_id=f"reviewer-{r + 1:02d}",
            candidate_set=[cid for cid, _ in candidates],
            candidate_smells={cid: smell for cid, smell in candidates},
            created_at=FIXED_TS,
            updated_at=FIXED_TS,
        )
        for cid, _smell in candidates:
            decision = decisions[(r, cid)]
            args: list[Argument] = []
            if decision == "accept":
                args.append(Argument(text=f"Accepting rationale of {session.reviewer_id} on {cid}."))
                if (r, cid) in extra_discard_on_accept:
                    args.append(Argument(text="It has a smell.", discarded=True))
            else:
                if (r, cid) in evasive_only_rejects:
                    args.append(Argument(text="It has not a smell.", discarded=True))
                else:
                    args.append(Argument(text=f"Rejecting rationale of {session.reviewer_id} on {cid}."))
            session.verdicts[cid] = [
                Verdict(decision=decision, arguments=args, recorded_at=FIXED_TS)
            ]
        path = OUT_SESSIONS / f"{session.session_id}.json"
        path.write_text(
            json.dumps(session.as_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    expected = {
        "comment": "Engineered agreement fixture; kappa computed with exact Fraction arithmetic.",
        "raters": RATERS,
        "subjects": len(candidates),
        "acceptCounts": accept_counts,
        "ratingsMatrix": rows,
        "kappaExact": f"{kappa.numerator}/{kappa.denominator}",
        "kappa": float(kappa),
        "totals": {
            "validations": 288,
            "argumentsTotal": 303,
            "discarded": 32,
            "remaining": 271,
            "acceptSharePct": 157 / 271 * 100.0,
        },
    }
    OUT_EXPECTED.write_text(json.dumps(expected, indent=2) + "\n", encoding="utf-8")
    print(f"kappa = {float(kappa):.9f} ({kappa})")
    print(f"wrote {RATERS} sessions to {OUT_SESSIONS}")


if __name__ == "__main__":
    build()
