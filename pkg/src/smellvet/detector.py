"""Threshold-rule detection of smell candidates.

Every numeric default is a documented, overridable starting point, not a
claim about truth: candidates only gate what reaches human validation.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, fields as dataclass_fields
from pathlib import Path

from smellvet.javamodel import Span
from smellvet.metrics import MetricSet, compute_method_metrics, compute_type_metrics
from smellvet.project import ProjectModel, method_ref
from smellvet.smells import Smell

CANDIDATES_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DetectionConfig:
    lpl_min_params: int = 5
    god_min_loc: int = 200
    god_min_nom: int = 15
    data_max_non_accessor: int = 0
    middle_min_delegation_ratio: float = 0.5
    envy_min_foreign_calls: int = 5
    envy_max_own_ratio: float = 0.33
    bequest_min_unused_inherited: int = 2
    bequest_min_override_ratio: float = 0.5
    prim_obs_min_primitive_fields: int = 6
    spec_gen_empty_type: bool = True
    spec_gen_lonely_abstract: bool = True
    spec_gen_unused_hollow_method: bool = True

    def __post_init__(self) -> None:
        for name in (
            "lpl_min_params",
            "god_min_loc",
            "god_min_nom",
            "envy_min_foreign_calls",
            "bequest_min_unused_inherited",
            "prim_obs_min_primitive_fields",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in (
            "middle_min_delegation_ratio",
            "envy_max_own_ratio",
            "bequest_min_override_ratio",
        ):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be within [0, 1]")
        if self.data_max_non_accessor < 0:
            raise ValueError("data_max_non_accessor must be >= 0")

    @classmethod
    def from_file(cls, path: str | Path) -> "DetectionConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f.name for f in dataclass_fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in dataclass_fields(self)}


@dataclass(frozen=True)
class Trigger:
    metric: str
    value: float
    threshold: float

    def as_dict(self) -> dict:
        return {"metric": self.metric, "value": self.value, "threshold": self.threshold}


@dataclass(frozen=True)
class SmellCandidate:
    id: str
    smell: Smell
    entity: str  # type fqn, or "fqn#signature" for methods
    entity_kind: str  # "type" | "method"
    path: str
    span: Span
    triggered_by: tuple[Trigger, ...]

    def __post_init__(self) -> None:
        if not self.triggered_by:
            raise ValueError("a candidate must carry at least one trigger")
        if self.entity_kind not in ("type", "method"):
            raise ValueError(f"bad entity kind {self.entity_kind!r}")
        if self.entity_kind == "method" and "#" not in self.entity:
            raise ValueError("method candidates need a 'fqn#signature' entity")

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "smell": self.smell.value,
            "entity": self.entity,
            "entityKind": self.entity_kind,
            "path": self.path,
            "span": self.span.as_list(),
            "triggeredBy": [t.as_dict() for t in self.triggered_by],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "SmellCandidate":
        return cls(
            id=raw["id"],
            smell=Smell(raw["smell"]),
            entity=raw["entity"],
            entity_kind=raw["entityKind"],
            path=raw["path"],
            span=Span(*raw["span"]),
            triggered_by=tuple(
                Trigger(t["metric"], t["value"], t["threshold"]) for t in raw["triggeredBy"]
            ),
        )


def candidate_id(smell: Smell, entity: str, path: str) -> str:
    digest = hashlib.sha256(f"{smell.value}|{entity}|{path}".encode("utf-8")).hexdigest()
    return digest[:12]


def _make(
    smell: Smell,
    entity: str,
    entity_kind: str,
    path: str,
    span: Span,
    triggers: list[Trigger],
) -> SmellCandidate:
    return SmellCandidate(
        id=candidate_id(smell, entity, path),
        smell=smell,
        entity=entity,
        entity_kind=entity_kind,
        path=path,
        span=span,
        triggered_by=tuple(triggers),
    )


def inspection_candidate(model: ProjectModel, smell: Smell, entity: str) -> SmellCandidate:
    """A hand-made candidate for evaluating evidence on an arbitrary entity.

    Used to run validation items against entities the detector did not flag
    (e.g. the clean twin of a fixture pair).  Carries a sentinel trigger.
    """
    if "#" in entity:
        t, m = model.method(entity)
        span, kind = m.span, "method"
        path = model.unit_of[t.qualified_name].path
    else:
        t = model.type(entity)
        span, kind = t.span, "type"
        path = model.unit_of[entity].path
    return _make(smell, entity, kind, path, span, [Trigger("inspection", 0, 0)])


def detect(model: ProjectModel, cfg: DetectionConfig | None = None) -> list[SmellCandidate]:
    """Apply all eight rules; deterministic and order-stable."""
    cfg = cfg or DetectionConfig()
    out: list[SmellCandidate] = []
    for unit in model.units:
        for t in unit.all_types():
            fqn = t.qualified_name
            tm = compute_type_metrics(model, fqn)
            out.extend(_type_rules(model, cfg, unit.path, fqn, tm))
            for m in t.methods:
                ref = method_ref(fqn, m)
                mm = compute_method_metrics(model, ref)
                out.extend(_method_rules(cfg, unit.path, ref, m.span, mm))
    out.sort(key=lambda c: (c.path, c.span.start, c.smell.value, c.entity))
    return out


def _type_rules(
    model: ProjectModel, cfg: DetectionConfig, path: str, fqn: str, tm: MetricSet
) -> list[SmellCandidate]:
    t = model.type(fqn)
    span = t.span
    found: list[SmellCandidate] = []

    if tm["loc"] >= cfg.god_min_loc and tm["nom"] >= cfg.god_min_nom:
        found.append(
            _make(
                Smell.GOD_CLASS, fqn, "type", path, span,
                [
                    Trigger("loc", tm["loc"], cfg.god_min_loc),
                    Trigger("nom", tm["nom"], cfg.god_min_nom),
                ],
            )
        )

    if tm["nom"] > 0 and tm["nonAccessorMethodCount"] <= cfg.data_max_non_accessor:
        found.append(
            _make(
                Smell.DATA_CLASS, fqn, "type", path, span,
                [
                    Trigger("nonAccessorMethodCount", tm["nonAccessorMethodCount"],
                            cfg.data_max_non_accessor),
                    Trigger("nom", tm["nom"], 1),
                ],
            )
        )

    if tm["delegationRatio"] >= cfg.middle_min_delegation_ratio and tm["nom"] >= 3:
        found.append(
            _make(
                Smell.MIDDLE_MAN, fqn, "type", path, span,
                [
                    Trigger("delegationRatio", tm["delegationRatio"],
                            cfg.middle_min_delegation_ratio),
                    Trigger("nom", tm["nom"], 3),
                ],
            )
        )

    if model.parent_of.get(fqn) is not None:
        triggers: list[Trigger] = []
        if tm["inheritedUnusedCount"] >= cfg.bequest_min_unused_inherited:
            triggers.append(
                Trigger("inheritedUnusedCount", tm["inheritedUnusedCount"],
                        cfg.bequest_min_unused_inherited)
            )
        if tm["overrideRatio"] >= cfg.bequest_min_override_ratio and tm["nom"] > 0:
            triggers.append(
                Trigger("overrideRatio", tm["overrideRatio"], cfg.bequest_min_override_ratio)
            )
        if triggers:
            found.append(_make(Smell.REFUSED_BEQUEST, fqn, "type", path, span, triggers))

    if tm["primitiveFieldCount"] >= cfg.prim_obs_min_primitive_fields:
        found.append(
            _make(
                Smell.PRIMITIVE_OBSESSION, fqn, "type", path, span,
                [
                    Trigger("primitiveFieldCount", tm["primitiveFieldCount"],
                            cfg.prim_obs_min_primitive_fields)
                ],
            )
        )

    sg_triggers: list[Trigger] = []
    if cfg.spec_gen_empty_type and tm["nom"] == 0:
        sg_triggers.append(Trigger("nom", tm["nom"], 0))
    if cfg.spec_gen_lonely_abstract and t.is_abstract and tm["subtypeCount"] <= 1:
        sg_triggers.append(Trigger("subtypeCount", tm["subtypeCount"], 1))
    if sg_triggers:
        found.append(_make(Smell.SPECULATIVE_GENERALITY, fqn, "type", path, span, sg_triggers))

    return found


def _method_rules(
    cfg: DetectionConfig, path: str, ref: str, span: Span, mm: MetricSet
) -> list[SmellCandidate]:
    found: list[SmellCandidate] = []

    if mm["paramCount"] >= cfg.lpl_min_params:
        found.append(
            _make(
                Smell.LONG_PARAMETER_LIST, ref, "method", path, span,
                [Trigger("paramCount", mm["paramCount"], cfg.lpl_min_params)],
            )
        )

    if (
        mm["foreignCallCount"] >= cfg.envy_min_foreign_calls
        and mm["ownAccessRatio"] <= cfg.envy_max_own_ratio
    ):
        found.append(
            _make(
                Smell.FEATURE_ENVY, ref, "method", path, span,
                [
                    Trigger("foreignCallCount", mm["foreignCallCount"],
                            cfg.envy_min_foreign_calls),
                    Trigger("ownAccessRatio", mm["ownAccessRatio"], cfg.envy_max_own_ratio),
                ],
            )
        )

    if mm["paramCount"] >= 4 and mm["primitiveParamRatio"] == 1.0:
        found.append(
            _make(
                Smell.PRIMITIVE_OBSESSION, ref, "method", path, span,
                [
                    Trigger("paramCount", mm["paramCount"], 4),
                    Trigger("primitiveParamRatio", mm["primitiveParamRatio"], 1.0),
                ],
            )
        )

    if (
        cfg.spec_gen_unused_hollow_method
        and mm["incomingRefCount"] == 0
        and mm["statementCount"] == 0
    ):
        found.append(
            _make(
                Smell.SPECULATIVE_GENERALITY, ref, "method", path, span,
                [
                    Trigger("incomingRefCount", mm["incomingRefCount"], 0),
                    Trigger("statementCount", mm["statementCount"], 0),
                ],
            )
        )

    return found


# Comparison operator each rule applies, for explain() rendering.
_TRIGGER_OPS: dict[tuple[Smell, str], str] = {
    (Smell.GOD_CLASS, "loc"): ">=",
    (Smell.GOD_CLASS, "nom"): ">=",
    (Smell.DATA_CLASS, "nonAccessorMethodCount"): "<=",
    (Smell.DATA_CLASS, "nom"): ">=",
    (Smell.MIDDLE_MAN, "delegationRatio"): ">=",
    (Smell.MIDDLE_MAN, "nom"): ">=",
    (Smell.REFUSED_BEQUEST, "inheritedUnusedCount"): ">=",
    (Smell.REFUSED_BEQUEST, "overrideRatio"): ">=",
    (Smell.PRIMITIVE_OBSESSION, "primitiveFieldCount"): ">=",
    (Smell.PRIMITIVE_OBSESSION, "paramCount"): ">=",
    (Smell.PRIMITIVE_OBSESSION, "primitiveParamRatio"): "=",
    (Smell.SPECULATIVE_GENERALITY, "nom"): "=",
    (Smell.SPECULATIVE_GENERALITY, "subtypeCount"): "<=",
    (Smell.SPECULATIVE_GENERALITY, "incomingRefCount"): "=",
    (Smell.SPECULATIVE_GENERALITY, "statementCount"): "=",
    (Smell.LONG_PARAMETER_LIST, "paramCount"): ">=",
    (Smell.FEATURE_ENVY, "foreignCallCount"): ">=",
    (Smell.FEATURE_ENVY, "ownAccessRatio"): "<=",
}


def _fmt_number(x: float) -> str:
    if isinstance(x, float) and not x.is_integer():
        return f"{x:.2f}"
    return str(int(x))


def explain(candidate: SmellCandidate) -> str:
    """Stable one-line rationale naming every triggered metric."""
    parts = []
    for trig in sorted(candidate.triggered_by, key=lambda t: t.metric):
        op = _TRIGGER_OPS.get((candidate.smell, trig.metric), ">=")
        parts.append(f"{trig.metric} {_fmt_number(trig.value)} {op} {_fmt_number(trig.threshold)}")
    return "; ".join(parts)


def save_candidates(
    candidates: list[SmellCandidate],
    out_path: str | Path,
    roots: list[str],
    cfg: DetectionConfig,
) -> None:
    payload = {
        "schemaVersion": CANDIDATES_SCHEMA_VERSION,
        "roots": roots,
        "config": cfg.as_dict(),
        "candidates": [c.as_dict() for c in candidates],
    }
    Path(out_path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_candidates(path: str | Path) -> tuple[list[SmellCandidate], list[str], DetectionConfig]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if raw.get("schemaVersion") != CANDIDATES_SCHEMA_VERSION:
        raise ValueError(f"unsupported candidates schema: {raw.get('schemaVersion')!r}")
    cands = [SmellCandidate.from_dict(c) for c in raw["candidates"]]
    cfg = DetectionConfig(**raw.get("config", {}))
    return cands, list(raw.get("roots", [])), cfg
