"""Codebook for open coding of verdict arguments.

Tags live on the arguments themselves (Argument.codes, duplicates allowed so
that merges stay frequency-preserving); the codebook owns the code
definitions plus their merge/split history and holds a reference to the
sessions it codes over.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from smellvet.sessions import Argument, ReviewSession
from smellvet.smells import Smell

CODEBOOK_SCHEMA_VERSION = 1

STANCES = ("accepting", "rejecting")

# (session id, candidate id, argument index within the current verdict)
ArgumentRef = tuple[str, str, int]


class MixedStanceMerge(ValueError):
    """Accepting and rejecting codes cannot be merged."""


class UnknownCode(KeyError):
    pass


class UnknownArgument(KeyError):
    pass


class BadSplit(ValueError):
    pass


@dataclass
class HeuristicCode:
    code_id: str
    label: str
    smell: Smell
    stance: str
    merged_from: list[str] = field(default_factory=list)
    split_from: str | None = None

    def __post_init__(self) -> None:
        if self.stance not in STANCES:
            raise ValueError(f"stance must be one of {STANCES}")

    def as_dict(self) -> dict:
        out = {
            "codeId": self.code_id,
            "label": self.label,
            "smell": self.smell.value,
            "stance": self.stance,
            "mergedFrom": list(self.merged_from),
        }
        if self.split_from is not None:
            out["splitFrom"] = self.split_from
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "HeuristicCode":
        return cls(
            code_id=raw["codeId"],
            label=raw["label"],
            smell=Smell(raw["smell"]),
            stance=raw["stance"],
            merged_from=list(raw.get("mergedFrom", [])),
            split_from=raw.get("splitFrom"),
        )


def slugify(label: str, stance: str, smell: Smell) -> str:
    stem = re.sub(r"[^a-z0-9]+", "-", label.lower()).strip("-")
    return f"{smell.value}:{stance}:{stem}"


@dataclass
class Codebook:
    sessions: list[ReviewSession]
    codes: dict[str, HeuristicCode] = field(default_factory=dict)
    retired: dict[str, HeuristicCode] = field(default_factory=dict)

    # -- argument addressing --------------------------------------------------

    def _argument(self, ref: ArgumentRef) -> tuple[Argument, Smell, str]:
        session_id, candidate_id, index = ref
        for session in self.sessions:
            if session.session_id != session_id:
                continue
            verdict = session.current_verdict(candidate_id)
            if verdict is None or not (0 <= index < len(verdict.arguments)):
                raise UnknownArgument(str(ref))
            smell = session.candidate_smells[candidate_id]
            return verdict.arguments[index], smell, verdict.decision
        raise UnknownArgument(str(ref))

    def iter_arguments(self, smell: Smell | None = None):
        """Yield (ref, argument, smell, decision) over current verdicts."""
        for session in self.sessions:
            for cid in session.candidate_set:
                verdict = session.current_verdict(cid)
                if verdict is None:
                    continue
                arg_smell = session.candidate_smells[cid]
                if smell is not None and arg_smell != smell:
                    continue
                for i, arg in enumerate(verdict.arguments):
                    yield (session.session_id, cid, i), arg, arg_smell, verdict.decision

    # -- code management ------------------------------------------------------

    def define_code(
        self,
        label: str,
        smell: Smell,
        stance: str,
        code_id: str | None = None,
    ) -> HeuristicCode:
        code = HeuristicCode(code_id or slugify(label, stance, smell), label, smell, stance)
        if code.code_id in self.codes:
            raise ValueError(f"code id already defined: {code.code_id}")
        self.codes[code.code_id] = code
        return code

    def code(self, code_id: str) -> HeuristicCode:
        try:
            return self.codes[code_id]
        except KeyError:
            raise UnknownCode(code_id) from None


def code_argument(codebook: Codebook, ref: ArgumentRef, code_id: str) -> Codebook:
    """Tag one argument with one code (repeat tags allowed)."""
    code = codebook.code(code_id)
    argument, smell, _decision = codebook._argument(ref)
    if argument.discarded:
        raise ValueError("discarded arguments carry no codes")
    if smell != code.smell:
        raise ValueError(
            f"code {code_id} addresses {code.smell.value}, argument addresses {smell.value}"
        )
    argument.codes.append(code_id)
    return codebook


def merge_codes(codebook: Codebook, ids: list[str], new_label: str) -> Codebook:
    """Merge codes into one; total tag count is preserved by construction."""
    if len(ids) < 2:
        raise ValueError("merging needs at least two codes")
    merged = [codebook.code(i) for i in ids]
    stances = {c.stance for c in merged}
    if len(stances) > 1:
        raise MixedStanceMerge(f"cannot merge stances {sorted(stances)}")
    smells = {c.smell for c in merged}
    if len(smells) > 1:
        raise ValueError("cannot merge codes of different smell kinds")
    stance = merged[0].stance
    smell = merged[0].smell
    new_code = HeuristicCode(
        code_id=slugify(new_label, stance, smell),
        label=new_label,
        smell=smell,
        stance=stance,
        merged_from=list(ids),
    )
    if new_code.code_id in codebook.codes and new_code.code_id not in ids:
        raise ValueError(f"code id already defined: {new_code.code_id}")
    old = set(ids)
    for _ref, argument, _smell, _decision in codebook.iter_arguments():
        argument.codes = [new_code.code_id if c in old else c for c in argument.codes]
    for code_id in ids:
        codebook.retired[code_id] = codebook.codes.pop(code_id)
    codebook.codes[new_code.code_id] = new_code
    return codebook


def split_code(codebook: Codebook, code_id: str, labels: dict[str, list[ArgumentRef]]) -> Codebook:
    """Split one code into several, re-tagging its arguments.

    `labels` maps each new label to the argument refs it takes over; together
    the refs must exactly partition the split code's tagged arguments, which
    keeps the total tag count invariant.
    """
    source = codebook.code(code_id)
    if len(labels) < 2:
        raise BadSplit("a split produces at least two codes")
    tagged: dict[ArgumentRef, Argument] = {}
    for ref, argument, _smell, _decision in codebook.iter_arguments():
        if code_id in argument.codes:
            tagged[ref] = argument
    assigned: dict[ArgumentRef, str] = {}
    for label, refs in labels.items():
        for ref in refs:
            if ref in assigned:
                raise BadSplit(f"argument {ref} assigned to more than one part")
            assigned[ref] = label
    if set(assigned) != set(tagged):
        missing = set(tagged) - set(assigned)
        extra = set(assigned) - set(tagged)
        raise BadSplit(
            f"split assignment must partition the code's arguments "
            f"(missing={sorted(missing)}, extraneous={sorted(extra)})"
        )
    new_codes: dict[str, HeuristicCode] = {}
    for label in labels:
        code = HeuristicCode(
            code_id=slugify(label, source.stance, source.smell),
            label=label,
            smell=source.smell,
            stance=source.stance,
            split_from=code_id,
        )
        if code.code_id in codebook.codes or code.code_id in new_codes:
            raise BadSplit(f"code id already defined: {code.code_id}")
        new_codes[label] = code
    for ref, argument in tagged.items():
        replacement = new_codes[assigned[ref]].code_id
        argument.codes = [replacement if c == code_id else c for c in argument.codes]
    codebook.retired[code_id] = codebook.codes.pop(code_id)
    for code in new_codes.values():
        codebook.codes[code.code_id] = code
    return codebook


@dataclass(frozen=True)
class FrequencyTable:
    smell: Smell
    accepting: tuple[tuple[str, int], ...]
    rejecting: tuple[tuple[str, int], ...]

    @property
    def accepting_total(self) -> int:
        return sum(f for _, f in self.accepting)

    @property
    def rejecting_total(self) -> int:
        return sum(f for _, f in self.rejecting)

    def as_dict(self) -> dict:
        return {
            "smell": self.smell.value,
            "accepting": [[label, f] for label, f in self.accepting],
            "acceptingTotal": self.accepting_total,
            "rejecting": [[label, f] for label, f in self.rejecting],
            "rejectingTotal": self.rejecting_total,
        }


def frequency_table(
    codebook: Codebook, sessions: list[ReviewSession], smell: Smell
) -> FrequencyTable:
    """Per-code tag frequencies over non-discarded arguments, by stance.

    Sorted descending by frequency, ties alphabetical by label.
    """
    session_ids = {s.session_id for s in sessions}
    counts: dict[str, int] = {}
    for (sid, _cid, _i), argument, _smell, _decision in codebook.iter_arguments(smell):
        if sid not in session_ids or argument.discarded:
            continue
        for code_id in argument.codes:
            counts[code_id] = counts.get(code_id, 0) + 1
    rows: dict[str, list[tuple[str, int]]] = {"accepting": [], "rejecting": []}
    for code_id, f in counts.items():
        code = codebook.codes.get(code_id)
        if code is None or code.smell != smell:
            continue
        rows[code.stance].append((code.label, f))
    for stance in rows:
        rows[stance].sort(key=lambda pair: (-pair[1], pair[0]))
    return FrequencyTable(
        smell=smell,
        accepting=tuple(rows["accepting"]),
        rejecting=tuple(rows["rejecting"]),
    )


def total_tags(codebook: Codebook, smell: Smell | None = None) -> int:
    """Tag count over non-discarded arguments; invariant under merge/split."""
    total = 0
    for _ref, argument, _smell, _decision in codebook.iter_arguments(smell):
        if not argument.discarded:
            total += len(argument.codes)
    return total


# -- persistence ---------------------------------------------------------------

def dumps_codebook(codebook: Codebook) -> str:
    payload = {
        "schemaVersion": CODEBOOK_SCHEMA_VERSION,
        "codes": [codebook.codes[k].as_dict() for k in sorted(codebook.codes)],
        "retired": [codebook.retired[k].as_dict() for k in sorted(codebook.retired)],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def save_codebook(codebook: Codebook, path: str | Path) -> None:
    Path(path).write_text(dumps_codebook(codebook), encoding="utf-8")


def load_codebook(path: str | Path, sessions: list[ReviewSession]) -> Codebook:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if raw.get("schemaVersion") != CODEBOOK_SCHEMA_VERSION:
        raise ValueError(f"unsupported codebook schema: {raw.get('schemaVersion')!r}")
    book = Codebook(sessions=sessions)
    for code_raw in raw.get("codes", []):
        code = HeuristicCode.from_dict(code_raw)
        book.codes[code.code_id] = code
    for code_raw in raw.get("retired", []):
        code = HeuristicCode.from_dict(code_raw)
        book.retired[code.code_id] = code
    return book
