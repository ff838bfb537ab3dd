"""Validation-item catalog and evidence evaluators.

Each item is a question a reviewer answers before deciding a candidate.
Three evaluator modes exist: `auto` items compute a yes/no/indeterminate
finding from metrics, `assistive` items compute facts but leave the finding
indeterminate (the judgment is the human's), and `judgment` items are
human-only, with assistive facts where the model has anything useful to show.

Item texts for the seven cataloged smell kinds are fixed verbatim and are
diffed byte-for-byte against fixtures/table3_reference.json by the acceptance
suite.  The four Speculative Generality items are derived (flagged
`derived: true`): their kind lacks cataloged questions, so the questions
mechanize its documented heuristics instead.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from smellvet.detector import DetectionConfig, SmellCandidate
from smellvet.metrics import (
    AccessorKind,
    MetricSet,
    classify_accessor,
    compute_method_metrics,
    compute_type_metrics,
    is_delegation,
)
from smellvet.project import ProjectModel
from smellvet.smells import Smell, UnknownSmellKind

CATALOG_SCHEMA_VERSION = 1

# "Too many parameters composed of complex types" needs a number; the rules
# catalog fixes none, so this is a documented engineering constant.
COMPLEX_PARAMS_TOO_MANY = 3


class EntityVanished(KeyError):
    """The model no longer contains the candidate's entity."""


@dataclass(frozen=True)
class ValidationItem:
    id: str
    smell: Smell
    text: str
    mode: str  # auto | assistive | judgment
    polarity: str  # the answer ("yes" | "no") that supports accepting the smell
    derived: bool = False

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "smell": self.smell.value,
            "text": self.text,
            "mode": self.mode,
            "polarity": self.polarity,
            "derived": self.derived,
        }


@dataclass(frozen=True)
class EvidenceResult:
    item: str
    finding: str  # yes | no | indeterminate | humanOnly
    facts: tuple[tuple[str, object], ...]
    computed_from: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "item": self.item,
            "finding": self.finding,
            "facts": [[label, value] for label, value in self.facts],
            "computedFrom": list(self.computed_from),
        }


def _item(id_: str, smell: Smell, text: str, mode: str, polarity: str, derived: bool = False):
    return ValidationItem(id_, smell, text, mode, polarity, derived)


ITEMS: tuple[ValidationItem, ...] = (
    _item("DC-1", Smell.DATA_CLASS,
          "Does the class have other methods than getters and setters?", "auto", "no"),
    _item("DC-2", Smell.DATA_CLASS,
          "Does the class have other methods than its constructor?", "auto", "no"),
    _item("DC-3", Smell.DATA_CLASS,
          "Is the class data being externally manipulated?", "auto", "yes"),
    _item("FE-1", Smell.FEATURE_ENVY,
          "Does the method call external methods too frequently?", "auto", "yes"),
    _item("FE-2", Smell.FEATURE_ENVY,
          "Can you visualize an alternative implementation of this method focused on "
          "manipulating its own data?", "judgment", "yes"),
    _item("GC-1", Smell.GOD_CLASS,
          "Does the class have clear responsibilities from other classes?", "judgment", "no"),
    _item("GC-2", Smell.GOD_CLASS,
          "Does it make sense for you to split this class into two or more classes?",
          "judgment", "yes"),
    _item("GC-3", Smell.GOD_CLASS,
          "Does the class size hinder its readability/comprehensibility?", "assistive", "yes"),
    _item("LPL-1", Smell.LONG_PARAMETER_LIST,
          "Does the method signature have too many parameters?", "auto", "yes"),
    _item("LPL-2", Smell.LONG_PARAMETER_LIST,
          "Are there too many parameters composed of complex types?", "auto", "yes"),
    _item("LPL-3", Smell.LONG_PARAMETER_LIST,
          "Do the parameters' names contribute to reaching a clear understanding "
          "of their purpose?", "judgment", "no"),
    _item("LPL-4", Smell.LONG_PARAMETER_LIST,
          "Does the method actually use all its parameters?", "auto", "no"),
    _item("LPL-5", Smell.LONG_PARAMETER_LIST,
          "Are all parameters actually needed?", "judgment", "no"),
    _item("LPL-6", Smell.LONG_PARAMETER_LIST,
          "May the parameters be passed more simply?", "judgment", "yes"),
    _item("MM-1", Smell.MIDDLE_MAN,
          "Does the class perform any relevant logical task?", "judgment", "no"),
    _item("MM-2", Smell.MIDDLE_MAN,
          "Does the class clearly delegate its responsibilities to other classes?",
          "auto", "yes"),
    _item("PO-1", Smell.PRIMITIVE_OBSESSION,
          "Does replacing one or more primitive variables with objects sound to be "
          "the best choice?", "judgment", "yes"),
    _item("PO-2", Smell.PRIMITIVE_OBSESSION,
          "May two or more variables be consolidated into a single complex type?",
          "judgment", "yes"),
    _item("RB-1", Smell.REFUSED_BEQUEST,
          "Does the inheritance conceptually make sense?", "judgment", "no"),
    _item("RB-2", Smell.REFUSED_BEQUEST,
          "Does the class inherit methods never used?", "auto", "yes"),
    _item("RB-3", Smell.REFUSED_BEQUEST,
          "Does the class inherit methods that are not adherent with its definition?",
          "judgment", "yes"),
    _item("RB-4", Smell.REFUSED_BEQUEST,
          "Are there too many methods being overridden?", "auto", "yes"),
    _item("SG-1", Smell.SPECULATIVE_GENERALITY,
          "Does the class lack any concrete methods?", "auto", "yes", derived=True),
    _item("SG-2", Smell.SPECULATIVE_GENERALITY,
          "Is the inheritance relationship actually needed today?", "judgment", "no",
          derived=True),
    _item("SG-3", Smell.SPECULATIVE_GENERALITY,
          "Is the element used anywhere outside its own declaration?", "auto", "no",
          derived=True),
    _item("SG-4", Smell.SPECULATIVE_GENERALITY,
          "Does the element carry responsibilities beyond accommodating future features?",
          "judgment", "no", derived=True),
)

_BY_SMELL: dict[Smell, list[ValidationItem]] = defaultdict(list)
for _it in ITEMS:
    _BY_SMELL[_it.smell].append(_it)

_BY_ID: dict[str, ValidationItem] = {it.id: it for it in ITEMS}


def items_for(smell: Smell | str) -> list[ValidationItem]:
    """Catalog items for one smell kind, in catalog order."""
    if isinstance(smell, str):
        try:
            smell = Smell(smell)
        except ValueError:
            raise UnknownSmellKind(f"unknown smell kind: {smell!r}") from None
    return list(_BY_SMELL[smell])


def item_by_id(item_id: str) -> ValidationItem:
    try:
        return _BY_ID[item_id]
    except KeyError:
        raise KeyError(f"unknown validation item: {item_id}") from None


def catalog_as_dict() -> dict:
    return {
        "schemaVersion": CATALOG_SCHEMA_VERSION,
        "items": [it.as_dict() for it in ITEMS],
    }


def export_catalog(out_path: str | Path | None = None) -> str:
    text = json.dumps(catalog_as_dict(), indent=2, sort_keys=True) + "\n"
    if out_path is not None:
        Path(out_path).write_text(text, encoding="utf-8")
    return text


# ---------------------------------------------------------------------------
# Auto findings: pure functions of the MetricSet, keyed by item id.  Keeping
# them metric-pure is what makes the evidence re-derivable (and testable) from
# the MetricSet alone.
# ---------------------------------------------------------------------------

def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def auto_finding(item_id: str, metrics: MetricSet, cfg: DetectionConfig) -> str:
    """Finding for an auto/assistive item given the entity's MetricSet."""
    if item_id == "DC-1":
        return _yesno(metrics["nonAccessorMethodCount"] > 0)
    if item_id == "DC-2":
        return _yesno(metrics["nom"] > 0)
    if item_id == "DC-3":
        return _yesno(metrics["externalDataRefCount"] > 0)
    if item_id == "FE-1":
        return _yesno(metrics["foreignCallCount"] >= cfg.envy_min_foreign_calls)
    if item_id == "GC-3":
        return "indeterminate"  # size is judged; the facts carry loc/nom
    if item_id == "LPL-1":
        return _yesno(metrics["paramCount"] >= cfg.lpl_min_params)
    if item_id == "LPL-2":
        return _yesno(metrics["complexParamCount"] >= COMPLEX_PARAMS_TOO_MANY)
    if item_id == "LPL-4":
        return _yesno(metrics["unusedParamCount"] == 0)
    if item_id == "MM-2":
        return _yesno(metrics["delegationRatio"] >= cfg.middle_min_delegation_ratio)
    if item_id == "RB-2":
        if metrics["hasLocalParent"] == 0:
            return "indeterminate"  # nothing knowable about an external parent
        return _yesno(metrics["inheritedUnusedCount"] >= 1)
    if item_id == "RB-4":
        if metrics["nom"] == 0:
            return "indeterminate"
        return _yesno(metrics["overrideRatio"] >= cfg.bequest_min_override_ratio)
    if item_id == "SG-1":
        if "concreteMethodCount" not in metrics:
            return "indeterminate"  # method entity: class-shaped question
        return _yesno(metrics["concreteMethodCount"] == 0)
    if item_id == "SG-3":
        return _yesno(metrics["incomingRefCount"] > 0)
    raise KeyError(f"no auto finding defined for {item_id}")


AUTO_INPUTS: dict[str, tuple[str, ...]] = {
    "DC-1": ("nonAccessorMethodCount",),
    "DC-2": ("nom",),
    "DC-3": ("externalDataRefCount",),
    "FE-1": ("foreignCallCount",),
    "GC-3": ("loc", "nom"),
    "LPL-1": ("paramCount",),
    "LPL-2": ("complexParamCount",),
    "LPL-4": ("unusedParamCount",),
    "MM-2": ("delegationRatio",),
    "RB-2": ("hasLocalParent", "inheritedUnusedCount"),
    "RB-4": ("nom", "overrideRatio"),
    "SG-1": ("concreteMethodCount",),
    "SG-3": ("incomingRefCount",),
}


# ---------------------------------------------------------------------------
# Evidence evaluation
# ---------------------------------------------------------------------------

def _entity_metrics(model: ProjectModel, candidate: SmellCandidate) -> MetricSet:
    if candidate.entity_kind == "method":
        metrics = compute_method_metrics(model, candidate.entity)
    else:
        metrics = compute_type_metrics(model, candidate.entity)
        metrics["hasLocalParent"] = (
            1 if model.parent_of.get(candidate.entity) is not None else 0
        )
    return metrics


def _name_prefix(name: str) -> str:
    """Leading lowercase word of a camelCase identifier."""
    for i, ch in enumerate(name):
        if ch.isupper() or ch == "_":
            return name[:i] if i else name
    return name


def _grouped_facts(names: list[str], label: str) -> list[tuple[str, object]]:
    groups: dict[str, list[str]] = defaultdict(list)
    for n in names:
        groups[_name_prefix(n)].append(n)
    facts: list[tuple[str, object]] = []
    for prefix in sorted(groups, key=lambda p: (-len(groups[p]), p)):
        members = groups[prefix]
        if len(members) > 1:
            facts.append((f"{label} sharing prefix '{prefix}'", ", ".join(sorted(members))))
    if not facts and names:
        facts.append((label, ", ".join(sorted(names))))
    return facts


def evaluate_evidence(
    model: ProjectModel,
    candidate: SmellCandidate,
    item: ValidationItem,
    cfg: DetectionConfig | None = None,
) -> EvidenceResult:
    """Compute the tool's evidence for one item on one candidate."""
    if item.smell != candidate.smell:
        raise ValueError(f"item {item.id} does not apply to a {candidate.smell.value} candidate")
    if not model.has_entity(candidate.entity):
        raise EntityVanished(candidate.entity)
    cfg = cfg or DetectionConfig()
    metrics = _entity_metrics(model, candidate)
    facts = _facts_for(model, candidate, item, metrics, cfg)
    if item.mode == "judgment":
        return EvidenceResult(item.id, "humanOnly", tuple(facts), ())
    inputs = AUTO_INPUTS[item.id]
    finding = auto_finding(item.id, metrics, cfg)
    return EvidenceResult(item.id, finding, tuple(facts), inputs)


def _facts_for(
    model: ProjectModel,
    candidate: SmellCandidate,
    item: ValidationItem,
    metrics: MetricSet,
    cfg: DetectionConfig,
) -> list[tuple[str, object]]:
    facts: list[tuple[str, object]] = []
    fqn = candidate.entity.split("#")[0]
    t = model.type(fqn)

    if item.id == "DC-1":
        facts.append(("non-accessor methods", int(metrics["nonAccessorMethodCount"])))
        others = sorted(
            m.name for m in t.methods if classify_accessor(m) is AccessorKind.OTHER
        )
        if others:
            facts.append(("non-accessor method names", ", ".join(others)))
    elif item.id == "DC-2":
        facts.append(("methods excluding constructors", int(metrics["nom"])))
    elif item.id == "DC-3":
        facts.append(("external references to data members", int(metrics["externalDataRefCount"])))
        referrers = sorted(
            {
                ref_type
                for f in t.fields
                for ref_type, _ in model.refs_to_member(fqn, f.name)
                if ref_type != fqn
            }
            | {
                ref_type
                for m in t.methods
                if classify_accessor(m) in (AccessorKind.GETTER, AccessorKind.SETTER)
                for ref_type, _ in model.refs_to_member(fqn, m.name)
                if ref_type != fqn
            }
        )
        if referrers:
            facts.append(("referencing types", ", ".join(referrers)))
    elif item.id in ("FE-1", "FE-2"):
        facts.append(("foreign calls", int(metrics["foreignCallCount"])))
        facts.append(("distinct foreign providers", int(metrics["foreignProviderCount"])))
        facts.append(("own accesses", int(metrics["ownAccessCount"])))
    elif item.id in ("GC-1", "GC-2"):
        names = [m.name for m in t.methods if not m.is_constructor]
        facts.extend(_grouped_facts(names, "method names"))
        facts.append(("methods", int(metrics["nom"])))
    elif item.id == "GC-3":
        facts.append(("lines of code", int(metrics["loc"])))
        facts.append(("methods", int(metrics["nom"])))
    elif item.id in ("LPL-1", "LPL-3", "LPL-5", "LPL-6"):
        _t, m = model.method(candidate.entity)
        facts.append(("parameters", int(metrics["paramCount"])))
        facts.append(
            ("parameter list", ", ".join(f"{p.type_name} {p.name}" for p in m.params))
        )
        if item.id == "LPL-6":
            prim_names = [p.name for p in m.params if p.is_primitive]
            facts.extend(_grouped_facts(prim_names, "primitive parameters"))
    elif item.id == "LPL-2":
        _t, m = model.method(candidate.entity)
        facts.append(("complex-typed parameters", int(metrics["complexParamCount"])))
        complex_names = sorted(p.name for p in m.params if not p.is_primitive)
        if complex_names:
            facts.append(("complex parameter names", ", ".join(complex_names)))
    elif item.id == "LPL-4":
        _t, m = model.method(candidate.entity)
        facts.append(("unused parameters", int(metrics["unusedParamCount"])))
        unused = sorted(p.name for p in m.params if not p.used_in_body)
        if unused:
            facts.append(("unused parameter names", ", ".join(unused)))
    elif item.id in ("MM-1", "MM-2"):
        plain = [m for m in t.methods if not m.is_constructor]
        delegating = sorted(m.name for m in plain if is_delegation(m))
        working = sorted(m.name for m in plain if not is_delegation(m))
        facts.append(("delegation ratio", round(metrics["delegationRatio"], 4)))
        if delegating:
            facts.append(("delegating methods", ", ".join(delegating)))
        if working:
            facts.append(("non-delegating methods", ", ".join(working)))
    elif item.id in ("PO-1", "PO-2"):
        if candidate.entity_kind == "type":
            prim = [f.name for f in t.fields if f.is_primitive]
            facts.append(("primitive fields", len(prim)))
            facts.extend(_grouped_facts(prim, "primitive fields"))
        else:
            _t, m = model.method(candidate.entity)
            prim = [p.name for p in m.params if p.is_primitive]
            facts.append(("primitive parameters", len(prim)))
            facts.extend(_grouped_facts(prim, "primitive parameters"))
    elif item.id in ("RB-1", "RB-2", "RB-3"):
        parent = model.parent_of.get(fqn)
        facts.append(("declared parent", t.superclass or "(none)"))
        if parent is not None:
            own_names = {m.name for m in t.methods}
            inherited = sorted(
                {
                    m.name
                    for anc in model.ancestors(fqn)
                    for m in model.type_index[anc].methods
                    if not m.is_constructor and m.name not in own_names
                }
            )
            facts.append(("inherited methods not overridden", ", ".join(inherited) or "(none)"))
            facts.append(("inherited methods never used", int(metrics["inheritedUnusedCount"])))
    elif item.id == "RB-4":
        facts.append(("overridden methods", int(metrics["overrideCount"])))
        facts.append(("methods", int(metrics["nom"])))
    elif item.id in ("SG-1", "SG-2", "SG-4"):
        if candidate.entity_kind == "type":
            facts.append(("concrete methods", int(metrics["concreteMethodCount"])))
            facts.append(("declared parent", t.superclass or "(none)"))
            facts.append(("project-local subtypes", int(metrics["subtypeCount"])))
        else:
            facts.append(("body statements", int(metrics["statementCount"])))
    elif item.id == "SG-3":
        facts.append(("incoming references", int(metrics["incomingRefCount"])))
        if candidate.entity_kind == "type":
            users = sorted(model.clients_of(fqn))
            if users:
                facts.append(("referencing types", ", ".join(users)))
    return facts
