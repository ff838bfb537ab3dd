"""Structural model of parsed Java source.

The model is intentionally shallow: declaration headers are parsed, method
bodies are only token-scanned into a BodyProfile (call/access counts), never
into an AST.  That is all the downstream metrics need.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    """Inclusive 1-based line range of a declaration."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 1 or self.end < self.start:
            raise ValueError(f"invalid span {self.start}..{self.end}")

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def as_list(self) -> list[int]:
        return [self.start, self.end]


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    message: str


@dataclass
class ParamDecl:
    name: str
    type_name: str  # raw type, generics stripped
    is_primitive: bool
    used_in_body: bool = False


@dataclass
class FieldDecl:
    name: str
    type_name: str
    is_primitive: bool
    modifiers: frozenset[str]
    line: int


@dataclass
class BodyProfile:
    """Token-scan summary of one method body.

    local_call_names: receiverless or this-qualified calls (includes `new T(...)`
    constructor invocations, recorded under the type name).
    qualified_calls: `receiver.member(...)` calls with receiver != this.
    foreign_accesses: `receiver.member` non-call accesses with receiver != this.
    Own-field reads/writes cover `this.x`, bare identifiers matching a declared
    field of the enclosing type, and own-field receivers of qualified accesses.
    """

    local_call_names: Counter = field(default_factory=Counter)
    qualified_calls: Counter = field(default_factory=Counter)  # (recv, member) -> n
    own_field_reads: Counter = field(default_factory=Counter)
    own_field_writes: Counter = field(default_factory=Counter)
    foreign_accesses: Counter = field(default_factory=Counter)  # (recv, member) -> n
    statement_count: int = 0
    line_count: int = 0


@dataclass
class MethodDecl:
    name: str
    params: list[ParamDecl]
    return_type: str | None  # None for constructors
    modifiers: frozenset[str]
    is_constructor: bool
    is_override: bool
    is_abstract: bool
    body: BodyProfile | None  # None when the declaration has no body
    span: Span
    body_source: str = ""  # verbatim body text incl. braces, for pretty-printing

    @property
    def arity(self) -> int:
        return len(self.params)

    def signature(self) -> str:
        return f"{self.name}({', '.join(p.type_name for p in self.params)})"


@dataclass
class TypeDecl:
    name: str
    kind: str  # class | interface | enum
    qualified_name: str
    superclass: str | None
    interfaces: list[str]
    fields: list[FieldDecl]
    methods: list[MethodDecl]
    nested: list[TypeDecl]
    modifiers: frozenset[str]
    span: Span

    @property
    def is_abstract(self) -> bool:
        return "abstract" in self.modifiers or self.kind == "interface"

    def method(self, signature: str) -> MethodDecl | None:
        for m in self.methods:
            if m.signature() == signature:
                return m
        return None


@dataclass
class SourceUnit:
    path: str
    package: str
    imports: list[str]
    types: list[TypeDecl]
    diagnostics: list[ParseDiagnostic]

    def all_types(self) -> list[TypeDecl]:
        """Top-level and nested types, declaration order."""
        out: list[TypeDecl] = []
        stack = list(self.types)
        while stack:
            t = stack.pop(0)
            out.append(t)
            stack = list(t.nested) + stack
        return out
