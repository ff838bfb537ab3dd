"""Pure metric functions over the resolved project model.

A MetricSet is a plain dict of metric-id -> number.  Everything the detector
and the evidence evaluators decide on must be present here, so that every
downstream finding is re-derivable from the MetricSet alone.
"""

from __future__ import annotations

from enum import Enum

from smellvet.javamodel import MethodDecl, TypeDecl
from smellvet.project import ProjectModel, UnknownMethod, UnknownType  # noqa: F401

MetricSet = dict[str, float]


class AccessorKind(str, Enum):
    GETTER = "getter"
    SETTER = "setter"
    CONSTRUCTOR = "constructor"
    OTHER = "other"


def classify_accessor(m: MethodDecl) -> AccessorKind:
    """Deterministic accessor classification from name shape and body profile.

    getter: get*/is* name, no params, body is a single read of one own field;
    setter: set* name, one param, exactly one own-field write, no calls.
    """
    if m.is_constructor:
        return AccessorKind.CONSTRUCTOR
    b = m.body
    if b is None:
        return AccessorKind.OTHER
    calls = sum(b.local_call_names.values()) + sum(b.qualified_calls.values())
    if (
        (m.name.startswith("get") or m.name.startswith("is"))
        and not m.params
        and b.statement_count == 1
        and sum(b.own_field_reads.values()) == 1
        and sum(b.own_field_writes.values()) == 0
        and calls == 0
    ):
        return AccessorKind.GETTER
    if (
        m.name.startswith("set")
        and len(m.params) == 1
        and sum(b.own_field_writes.values()) == 1
        and calls == 0
    ):
        return AccessorKind.SETTER
    return AccessorKind.OTHER


def is_delegation(m: MethodDecl) -> bool:
    """A body that is exactly one qualified call, optionally returned."""
    if m.is_constructor or m.body is None:
        return False
    b = m.body
    return (
        b.statement_count == 1
        and sum(b.qualified_calls.values()) == 1
        and sum(b.local_call_names.values()) == 0
    )


def _own_field_names(t: TypeDecl) -> set[str]:
    return {f.name for f in t.fields}


def compute_type_metrics(model: ProjectModel, fqn: str) -> MetricSet:
    t = model.type(fqn)
    methods = t.methods
    constructors = [m for m in methods if m.is_constructor]
    plain = [m for m in methods if not m.is_constructor]
    kinds = [classify_accessor(m) for m in methods]
    accessor_count = sum(1 for k in kinds if k in (AccessorKind.GETTER, AccessorKind.SETTER))
    non_accessor = sum(1 for k in kinds if k is AccessorKind.OTHER)
    nom = len(plain)
    delegations = sum(1 for m in plain if is_delegation(m))
    override_count = sum(1 for m in plain if m.is_override)
    concrete = sum(1 for m in plain if not m.is_abstract)

    inherited_unused = _inherited_unused_count(model, fqn, t)
    external_data_refs = _external_data_ref_count(model, fqn, t)

    return {
        "loc": t.span.length,
        "nom": nom,
        "noa": len(t.fields),
        "constructorCount": len(constructors),
        "accessorCount": accessor_count,
        "nonAccessorMethodCount": non_accessor,
        "concreteMethodCount": concrete,
        "delegationRatio": delegations / nom if nom else 0.0,
        "overrideCount": override_count,
        "overrideRatio": override_count / nom if nom else 0.0,
        "inheritedUnusedCount": inherited_unused,
        "primitiveFieldCount": sum(1 for f in t.fields if f.is_primitive),
        "subtypeCount": len(model.subtypes.get(fqn, [])),
        "incomingRefCount": len(model.clients_of(fqn)),
        "externalDataRefCount": external_data_refs,
    }


def _inherited_unused_count(model: ProjectModel, fqn: str, t: TypeDecl) -> int:
    """Inherited concrete public methods with no use by this type or its clients.

    Project-local approximation: only project-local ancestors are knowable,
    and "use" means a name-based reverse reference from this type's methods or
    from methods of types that reference this type.
    """
    ancestors = model.ancestors(fqn)
    if not ancestors:
        return 0
    own_names = {m.name for m in t.methods}
    interested = {fqn} | model.clients_of(fqn)
    count = 0
    seen: set[str] = set()
    for anc_fqn in ancestors:
        anc = model.type_index[anc_fqn]
        for m in anc.methods:
            if m.is_constructor or m.is_abstract or "public" not in m.modifiers:
                continue
            if m.name in own_names or m.name in seen:
                continue
            seen.add(m.name)
            refs = model.refs_to_member(anc_fqn, m.name)
            if not any(referrer in interested for referrer, _ in refs):
                count += 1
    return count


def _external_data_ref_count(model: ProjectModel, fqn: str, t: TypeDecl) -> int:
    """References from other types into this type's fields or accessors."""
    data_members = {f.name for f in t.fields}
    for m in t.methods:
        if classify_accessor(m) in (AccessorKind.GETTER, AccessorKind.SETTER):
            data_members.add(m.name)
    count = 0
    for name in data_members:
        for referrer, _sig in model.refs_to_member(fqn, name):
            if referrer != fqn:
                count += 1
    return count


def compute_method_metrics(model: ProjectModel, ref: str) -> MetricSet:
    t, m = model.method(ref)
    own_fields = _own_field_names(t)
    b = m.body
    param_count = len(m.params)
    complex_params = sum(1 for p in m.params if not p.is_primitive)
    unused_params = sum(1 for p in m.params if not p.used_in_body)
    primitive_params = param_count - complex_params

    foreign_calls = 0
    own_access = 0
    providers: set[str] = set()
    statements = 0
    if b is not None:
        foreign_calls = sum(
            n for (recv, _mem), n in b.qualified_calls.items()
            if recv not in own_fields
        )
        own_access = (
            sum(b.own_field_reads.values())
            + sum(b.own_field_writes.values())
            + sum(b.local_call_names.values())
        )
        for recv, _mem in list(b.qualified_calls) + list(b.foreign_accesses):
            if recv not in own_fields:
                providers.add(recv)
        statements = b.statement_count

    incoming = sum(
        1
        for referrer, sig in model.refs_to_member(t.qualified_name, m.name)
        if (referrer, sig) != (t.qualified_name, m.signature())
    )
    total_access = own_access + foreign_calls
    return {
        "loc": m.span.length,
        "paramCount": param_count,
        "complexParamCount": complex_params,
        "unusedParamCount": unused_params,
        "primitiveParamRatio": primitive_params / param_count if param_count else 0.0,
        "foreignCallCount": foreign_calls,
        "ownAccessCount": own_access,
        "ownAccessRatio": own_access / total_access if total_access else 1.0,
        "foreignProviderCount": len(providers),
        "statementCount": statements,
        "incomingRefCount": incoming,
    }
