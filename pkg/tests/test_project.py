from __future__ import annotations

import json

import pytest

from smellvet.parser import parse_unit
from smellvet.project import (
    DuplicateTypeName,
    InheritanceCycle,
    UnknownMethod,
    UnknownType,
    load_project,
    model_to_dict,
    resolve_project,
)

from conftest import CORPUS


def units(*sources: str):
    return [parse_unit(src, f"u{i}.java") for i, src in enumerate(sources)]


def test_local_extends_resolves_to_edge():
    model = resolve_project(
        units("package p; class A { public void base() { } }", "package p; class B extends A { }")
    )
    assert model.parent_of["p.B"] == "p.A"
    assert model.parent_of["p.A"] is None
    assert model.subtypes["p.A"] == ["p.B"]


def test_external_superclass_is_marked_external_not_an_error():
    model = resolve_project(units("package p; class B extends javax.swing.JFrame { }"))
    assert model.parent_of["p.B"] is None
    assert model.type("p.B").superclass == "javax.swing.JFrame"


def test_inheritance_cycle_raises():
    with pytest.raises(InheritanceCycle):
        resolve_project(
            units("package p; class A extends B { }", "package p; class B extends A { }")
        )


def test_duplicate_type_name_raises():
    with pytest.raises(DuplicateTypeName):
        resolve_project(units("package p; class A { }", "package p; class A { int x; }"))


def test_resolution_via_import():
    model = resolve_project(
        units(
            "package lib; public class Base { }",
            "package app; import lib.Base; class Child extends Base { }",
        )
    )
    assert model.parent_of["app.Child"] == "lib.Base"


def test_resolve_project_requires_units():
    with pytest.raises(ValueError):
        resolve_project([])


def test_member_reverse_refs_are_name_based():
    model = resolve_project(
        units(
            "package p; class A { public void frob() { } }",
            "package p; class B { void go(A a) { a.frob(); } }",
        )
    )
    refs = model.refs_to_member("p.A", "frob")
    assert ("p.B", "go(A)") in refs
    assert "p.B" in model.clients_of("p.A")


def test_signature_based_override_augmentation():
    model = resolve_project(
        units(
            "package p; class A { public void hook(int x) { } }",
            "package p; class B extends A { public void hook(int x) { } }",
        )
    )
    b = model.type("p.B")
    assert b.methods[0].is_override


def test_unknown_lookups_raise():
    model = resolve_project(units("package p; class A { }"))
    with pytest.raises(UnknownType):
        model.type("p.Nope")
    with pytest.raises(UnknownMethod):
        model.method("p.A#nope()")


def test_load_project_on_empty_dir(tmp_path):
    model = load_project([tmp_path])
    assert model.units == []


def test_load_project_missing_path_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_project([tmp_path / "missing"])


def test_model_dump_is_json_serializable(corpus_model):
    blob = json.dumps(model_to_dict(corpus_model), sort_keys=True)
    raw = json.loads(blob)
    assert raw["schemaVersion"] == 1
    assert len(raw["units"]) == len(list(CORPUS.glob("*.java")))


def test_type_index_covers_every_declared_type(corpus_model):
    declared = [t.qualified_name for u in corpus_model.units for t in u.all_types()]
    assert sorted(declared) == sorted(corpus_model.type_index)
    assert len(set(declared)) == len(declared)
