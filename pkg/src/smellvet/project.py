"""Cross-unit resolution: type index, inheritance, name-based reverse references."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from smellvet.javamodel import MethodDecl, SourceUnit, TypeDecl
from smellvet.parser import parse_unit

MODEL_SCHEMA_VERSION = 1


class DuplicateTypeName(ValueError):
    """Two project-local types share a fully-qualified name."""


class InheritanceCycle(ValueError):
    """extends edges among project-local types form a cycle."""


class UnknownType(KeyError):
    pass


class UnknownMethod(KeyError):
    pass


def method_ref(type_fqn: str, method: MethodDecl) -> str:
    return f"{type_fqn}#{method.signature()}"


@dataclass
class ProjectModel:
    units: list[SourceUnit]
    type_index: dict[str, TypeDecl] = field(default_factory=dict)
    unit_of: dict[str, SourceUnit] = field(default_factory=dict)
    # child fqn -> resolved parent fqn (project-local) or None when external
    parent_of: dict[str, str | None] = field(default_factory=dict)
    subtypes: dict[str, list[str]] = field(default_factory=dict)
    # (owner fqn, member name) -> {(referrer type fqn, referrer method signature)}
    member_refs: dict[tuple[str, str], set[tuple[str, str]]] = field(default_factory=dict)
    # referenced type fqn -> {referrer type fqn}
    type_refs: dict[str, set[str]] = field(default_factory=dict)

    def type(self, fqn: str) -> TypeDecl:
        try:
            return self.type_index[fqn]
        except KeyError:
            raise UnknownType(fqn) from None

    def method(self, ref: str) -> tuple[TypeDecl, MethodDecl]:
        type_fqn, _, signature = ref.partition("#")
        t = self.type(type_fqn)
        m = t.method(signature)
        if m is None:
            raise UnknownMethod(ref)
        return t, m

    def has_entity(self, ref: str) -> bool:
        try:
            if "#" in ref:
                self.method(ref)
            else:
                self.type(ref)
            return True
        except KeyError:
            return False

    def ancestors(self, fqn: str) -> list[str]:
        """Project-local ancestor chain, nearest first."""
        out: list[str] = []
        cur = self.parent_of.get(fqn)
        while cur is not None and cur not in out:
            out.append(cur)
            cur = self.parent_of.get(cur)
        return out

    def clients_of(self, fqn: str) -> set[str]:
        return {r for r in self.type_refs.get(fqn, set()) if r != fqn}

    def refs_to_member(self, owner_fqn: str, member_name: str) -> set[tuple[str, str]]:
        return self.member_refs.get((owner_fqn, member_name), set())


def resolve_project(units: list[SourceUnit]) -> ProjectModel:
    """Join parsed units into one model.

    Superclass names are resolved to project-local types where possible
    (same unit, imports, same package, then unique simple-name match) and
    marked external otherwise.  Reverse references are name-based
    approximations: a body mentioning `frob` references every declared
    member named `frob`.
    """
    if not units:
        raise ValueError("resolve_project requires at least one unit")
    model = ProjectModel(units=units)
    for unit in units:
        for t in unit.all_types():
            if t.qualified_name in model.type_index:
                raise DuplicateTypeName(t.qualified_name)
            model.type_index[t.qualified_name] = t
            model.unit_of[t.qualified_name] = unit

    simple_index: dict[str, list[str]] = defaultdict(list)
    for fqn, t in model.type_index.items():
        simple_index[t.name].append(fqn)

    member_owners: dict[str, list[str]] = defaultdict(list)
    for fqn, t in model.type_index.items():
        for f in t.fields:
            member_owners[f.name].append(fqn)
        for m in t.methods:
            member_owners[m.name].append(fqn)

    def resolve_name(name: str, unit: SourceUnit) -> str | None:
        if name in model.type_index:
            return name
        simple = name.rsplit(".", 1)[-1]
        for imp in unit.imports:
            if imp.endswith("." + simple) and imp in model.type_index:
                return imp
        in_package = f"{unit.package}.{simple}" if unit.package else simple
        if in_package in model.type_index:
            return in_package
        candidates = simple_index.get(simple, [])
        if len(candidates) == 1:
            return candidates[0]
        return None

    for unit in units:
        for t in unit.all_types():
            fqn = t.qualified_name
            if t.superclass:
                model.parent_of[fqn] = resolve_name(t.superclass, unit)
            else:
                model.parent_of[fqn] = None

    _check_cycles(model)

    for child, parent in model.parent_of.items():
        if parent is not None:
            model.subtypes.setdefault(parent, []).append(child)

    _augment_overrides(model)
    _build_refs(model, member_owners, simple_index)
    return model


def _check_cycles(model: ProjectModel) -> None:
    state: dict[str, int] = {}  # 0 visiting, 1 done

    for start in model.parent_of:
        if start in state:
            continue
        path: list[str] = []
        cur: str | None = start
        while cur is not None and cur not in state:
            if cur in path:
                cycle = path[path.index(cur) :] + [cur]
                raise InheritanceCycle(" -> ".join(cycle))
            path.append(cur)
            cur = model.parent_of.get(cur)
        for seen in path:
            state[seen] = 1


def _augment_overrides(model: ProjectModel) -> None:
    """Mark signature-based overrides against project-local ancestors."""
    for fqn, t in model.type_index.items():
        ancestors = [model.type_index[a] for a in model.ancestors(fqn)]
        if not ancestors:
            continue
        inherited: set[tuple[str, int]] = set()
        for anc in ancestors:
            for m in anc.methods:
                if not m.is_constructor:
                    inherited.add((m.name, m.arity))
        for m in t.methods:
            if not m.is_constructor and (m.name, m.arity) in inherited:
                m.is_override = True


def _build_refs(
    model: ProjectModel,
    member_owners: dict[str, list[str]],
    simple_index: dict[str, list[str]],
) -> None:
    for fqn in model.type_index:
        model.type_refs.setdefault(fqn, set())

    def add_type_ref(name: str | None, referrer: str, unit: SourceUnit) -> None:
        if not name:
            return
        raw = name.replace("[]", "").strip()
        if not raw:
            return
        target = None
        if raw in model.type_index:
            target = raw
        else:
            simple = raw.rsplit(".", 1)[-1]
            candidates = simple_index.get(simple, [])
            if len(candidates) == 1:
                target = candidates[0]
            else:
                for imp in unit.imports:
                    if imp.endswith("." + simple) and imp in model.type_index:
                        target = imp
                        break
        if target is not None and target != referrer:
            model.type_refs[target].add(referrer)

    for unit in model.units:
        for t in unit.all_types():
            fqn = t.qualified_name
            if t.superclass:
                add_type_ref(t.superclass, fqn, unit)
            for iface in t.interfaces:
                add_type_ref(iface, fqn, unit)
            for f in t.fields:
                add_type_ref(f.type_name, fqn, unit)
            for m in t.methods:
                add_type_ref(m.return_type, fqn, unit)
                for p in m.params:
                    add_type_ref(p.type_name, fqn, unit)
                if m.body is None:
                    continue
                referrer = (fqn, m.signature())
                mentioned: set[str] = set(m.body.local_call_names)
                mentioned.update(member for _, member in m.body.qualified_calls)
                mentioned.update(member for _, member in m.body.foreign_accesses)
                mentioned.update(m.body.own_field_reads)
                mentioned.update(m.body.own_field_writes)
                for name in mentioned:
                    for owner in member_owners.get(name, []):
                        model.member_refs.setdefault((owner, name), set()).add(referrer)
                # Receivers and constructor calls that name a type count as
                # references to that type (static access / instantiation).
                for recv, _ in list(m.body.qualified_calls) + list(m.body.foreign_accesses):
                    if recv in simple_index:
                        add_type_ref(recv, fqn, unit)
                for called in m.body.local_call_names:
                    if called in simple_index:
                        add_type_ref(called, fqn, unit)


def model_to_dict(model: ProjectModel) -> dict:
    """JSON-friendly dump of the structural model (debugging aid)."""

    def type_dict(t: TypeDecl) -> dict:
        return {
            "name": t.name,
            "kind": t.kind,
            "qualifiedName": t.qualified_name,
            "superclass": t.superclass,
            "resolvedParent": model.parent_of.get(t.qualified_name),
            "interfaces": t.interfaces,
            "modifiers": sorted(t.modifiers),
            "span": t.span.as_list(),
            "fields": [
                {
                    "name": f.name,
                    "type": f.type_name,
                    "primitive": f.is_primitive,
                    "modifiers": sorted(f.modifiers),
                }
                for f in t.fields
            ],
            "methods": [
                {
                    "name": m.name,
                    "signature": m.signature(),
                    "returnType": m.return_type,
                    "modifiers": sorted(m.modifiers),
                    "constructor": m.is_constructor,
                    "override": m.is_override,
                    "abstract": m.is_abstract,
                    "span": m.span.as_list(),
                    "params": [
                        {
                            "name": p.name,
                            "type": p.type_name,
                            "primitive": p.is_primitive,
                            "used": p.used_in_body,
                        }
                        for p in m.params
                    ],
                }
                for m in t.methods
            ],
            "nested": [type_dict(x) for x in t.nested],
        }

    return {
        "schemaVersion": MODEL_SCHEMA_VERSION,
        "units": [
            {
                "path": u.path,
                "package": u.package,
                "imports": u.imports,
                "diagnostics": [{"line": d.line, "message": d.message} for d in u.diagnostics],
                "types": [type_dict(t) for t in u.types],
            }
            for u in model.units
        ],
    }


def load_project(paths: list[str | Path]) -> ProjectModel:
    """Parse every `.java` file under the given roots and resolve them."""
    files: list[Path] = []
    for root in paths:
        p = Path(root)
        if p.is_file():
            files.append(p)
        elif p.is_dir():
            files.extend(sorted(p.rglob("*.java")))
        else:
            raise FileNotFoundError(str(p))
    units = [parse_unit(f.read_bytes(), str(f)) for f in sorted(set(files))]
    if not units:
        # An empty root is a valid (empty) project; resolve_project itself
        # keeps its non-empty precondition.
        return ProjectModel(units=[])
    return resolve_project(units)


def dump_model_json(model: ProjectModel, out_path: str | Path) -> None:
    Path(out_path).write_text(
        json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
