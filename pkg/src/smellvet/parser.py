"""Tolerant structural parser for a pragmatic subset of Java.

Supported: package/import declarations; class/interface/enum headers with
extends/implements; fields; methods and constructors with modifiers,
parameters and throws clauses; `@Override`; nested types.  Method bodies are
never parsed into an AST: they are tokenized and pattern-scanned into a
BodyProfile (`ident(` = call, `recv.member` = qualified access, `this.x` =
own access).  Anything unrecognizable is skipped with a ParseDiagnostic; a
parse never aborts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from smellvet.javamodel import (
    BodyProfile,
    FieldDecl,
    MethodDecl,
    ParamDecl,
    ParseDiagnostic,
    SourceUnit,
    Span,
    TypeDecl,
)

JAVA_VALUE_PRIMITIVES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double"}
)

# String counts as primitive-like by default; callers may override the set.
DEFAULT_PRIMITIVE_TYPES = JAVA_VALUE_PRIMITIVES | {"String"}

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null""".split()
)

MODIFIER_WORDS = frozenset(
    """public private protected static final abstract synchronized native
    transient volatile strictfp default""".split()
)

TYPE_KIND_WORDS = frozenset({"class", "interface", "enum"})

_ASSIGN_OPS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
)

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<line_comment>//[^\n]*)
    | (?P<block_comment>/\*.*?\*/)
    | (?P<str>"(?:\\.|[^"\\\n])*")
    | (?P<char>'(?:\\.|[^'\\\n])*')
    | (?P<num>\d[\w.]*)
    | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
    | (?P<punct>>>>=|>>=|<<=|>>>|\.\.\.|==|!=|<=|>=|&&|\|\||\+\+|--|\+=|-=|\*=|/=|%=|&=|\|=|\^=|<<|>>|->|::|[{}()\[\];,.<>=+\-*/%!&|^~?:@])
    """,
    re.DOTALL | re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | num | str | char | punct
    text: str
    line: int
    pos: int
    end: int


def tokenize(text: str) -> tuple[list[Token], list[ParseDiagnostic]]:
    tokens: list[Token] = []
    diagnostics: list[ParseDiagnostic] = []
    line = 1
    pos = 0
    n = len(text)
    bad_run_start_line: int | None = None
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if text.startswith("/*", pos) and (m is None or m.lastgroup != "block_comment"):
            # Unterminated block comment swallows the rest of the file.
            diagnostics.append(ParseDiagnostic(line, "unterminated block comment"))
            line += text.count("\n", pos)
            pos = n
            continue
        if m is None:
            if bad_run_start_line is None:
                bad_run_start_line = line
            if text[pos] == "\n":
                line += 1
            pos += 1
            continue
        if bad_run_start_line is not None:
            diagnostics.append(
                ParseDiagnostic(bad_run_start_line, "unrecognized characters skipped")
            )
            bad_run_start_line = None
        kind = m.lastgroup or "punct"
        chunk = m.group()
        if kind not in ("ws", "line_comment", "block_comment"):
            tokens.append(Token(kind, chunk, line, m.start(), m.end()))
        line += chunk.count("\n")
        pos = m.end()
    if bad_run_start_line is not None:
        diagnostics.append(
            ParseDiagnostic(bad_run_start_line, "unrecognized characters skipped")
        )
    return tokens, diagnostics


class _Cursor:
    """Token stream cursor with lookahead and balanced skipping."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def eof(self) -> bool:
        return self.i >= len(self.tokens)

    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.i += 1
            return True
        return False

    def line(self) -> int:
        tok = self.peek()
        if tok is not None:
            return tok.line
        return self.tokens[-1].line if self.tokens else 1

    def skip_balanced(self, open_text: str, close_text: str) -> int:
        """Consume from an already-peeked opener through its matching closer.

        Returns the index of the closing token, or the last index if the
        stream ends unbalanced.
        """
        depth = 0
        last = self.i
        while not self.eof():
            tok = self.next()
            last = self.i - 1
            if tok.text == open_text:
                depth += 1
            elif tok.text == close_text:
                depth -= 1
                if depth == 0:
                    return last
        return last

    def skip_generics(self) -> None:
        """Consume a `<...>` section.  `>>`/`>>>` tokens close 2/3 levels."""
        depth = 0
        while not self.eof():
            tok = self.next()
            if tok.text == "<":
                depth += 1
            elif tok.text == ">":
                depth -= 1
            elif tok.text == ">>":
                depth -= 2
            elif tok.text == ">>>":
                depth -= 3
            elif tok.text in ("(", "{") or tok.text == ";":
                # Not generics after all; back off one token and bail out.
                self.i -= 1
                return
            if depth <= 0:
                return


class _UnitParser:
    def __init__(self, text: str, path: str, primitive_types: frozenset[str]):
        self.text = text
        self.path = path
        self.primitive_types = primitive_types
        self.tokens, self.diagnostics = tokenize(text)
        self.cur = _Cursor(self.tokens)
        self.package = ""
        self.imports: list[str] = []
        self.types: list[TypeDecl] = []

    # -- helpers ------------------------------------------------------------

    def _diag(self, line: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(line, message))

    def _is_primitive(self, type_name: str) -> bool:
        return type_name in self.primitive_types

    def _dotted_name(self) -> str:
        """Parse `a.b.C`, skipping generic arguments between segments."""
        parts: list[str] = []
        cur = self.cur
        tok = cur.peek()
        if tok is None or tok.kind != "ident":
            return ""
        parts.append(cur.next().text)
        while True:
            if cur.peek() is not None and cur.peek().text == "<":
                cur.skip_generics()
            dot = cur.peek()
            nxt = cur.peek(1)
            if dot is not None and dot.text == "." and nxt is not None and nxt.kind == "ident":
                cur.next()
                parts.append(cur.next().text)
            else:
                break
        return ".".join(parts)

    def _recover_top_level(self) -> None:
        """Skip garbage until something that can start a declaration."""
        cur = self.cur
        start_line = cur.line()
        skipped = 0
        while not cur.eof():
            tok = cur.peek()
            if tok.text in TYPE_KIND_WORDS or tok.text in MODIFIER_WORDS:
                break
            if tok.text in ("package", "import", "@"):
                break
            cur.next()
            skipped += 1
            if tok.text == ";":
                break
        if skipped:
            self._diag(start_line, "unrecognized top-level tokens skipped")

    # -- grammar ------------------------------------------------------------

    def parse(self) -> SourceUnit:
        cur = self.cur
        pending_mods: set[str] = set()
        pending_override = False
        while not cur.eof():
            tok = cur.peek()
            if tok.text == "package":
                cur.next()
                self.package = self._dotted_name()
                cur.accept(";")
            elif tok.text == "import":
                cur.next()
                cur.accept("static")
                name = self._dotted_name()
                if cur.accept("."):
                    if cur.accept("*"):
                        name += ".*"
                cur.accept(";")
                if name:
                    self.imports.append(name)
            elif tok.text == "@":
                name, _ = self._parse_annotation()
                if name == "Override":
                    pending_override = True
            elif tok.text in MODIFIER_WORDS:
                pending_mods.add(cur.next().text)
            elif tok.text in TYPE_KIND_WORDS:
                decl = self._parse_type(frozenset(pending_mods), enclosing=None)
                if decl is not None:
                    self.types.append(decl)
                pending_mods.clear()
                pending_override = False
            elif tok.text == ";":
                cur.next()  # stray top-level semicolon is legal Java
                pending_mods.clear()
            else:
                pending_mods.clear()
                pending_override = False
                self._recover_top_level()
        if not self.types and not self.diagnostics:
            self._diag(1, "empty unit" if not self.tokens else "no type declarations found")
        seen: set[str] = set()
        for t in self.types:
            if t.qualified_name in seen:
                self._diag(t.span.start, f"duplicate type name {t.qualified_name}")
            seen.add(t.qualified_name)
        return SourceUnit(
            path=self.path,
            package=self.package,
            imports=self.imports,
            types=self.types,
            diagnostics=self.diagnostics,
        )

    def _parse_annotation(self) -> tuple[str, int]:
        cur = self.cur
        at = cur.next()  # '@'
        name = ""
        if cur.peek() is not None and cur.peek().kind == "ident":
            name = self._dotted_name()
        if cur.peek() is not None and cur.peek().text == "(":
            cur.skip_balanced("(", ")")
        return name, at.line

    def _parse_type(self, modifiers: frozenset[str], enclosing: TypeDecl | None) -> TypeDecl | None:
        cur = self.cur
        kind_tok = cur.next()
        kind = kind_tok.text
        name_tok = cur.peek()
        if name_tok is None or name_tok.kind != "ident":
            self._diag(kind_tok.line, f"{kind} declaration without a name")
            return None
        name = cur.next().text
        if cur.peek() is not None and cur.peek().text == "<":
            cur.skip_generics()
        superclass: str | None = None
        interfaces: list[str] = []
        if cur.accept("extends"):
            first = self._dotted_name()
            if kind == "interface":
                if first:
                    interfaces.append(first)
                while cur.accept(","):
                    nxt = self._dotted_name()
                    if nxt:
                        interfaces.append(nxt)
            else:
                superclass = first or None
        if cur.accept("implements"):
            nxt = self._dotted_name()
            if nxt:
                interfaces.append(nxt)
            while cur.accept(","):
                nxt = self._dotted_name()
                if nxt:
                    interfaces.append(nxt)
        if cur.peek() is None or cur.peek().text != "{":
            self._diag(name_tok.line, f"type {name} has no body; header only")
            qualified = self._qualify(name, enclosing)
            span = Span(kind_tok.line, name_tok.line)
            return TypeDecl(name, kind, qualified, superclass, interfaces, [], [], [], modifiers, span)
        open_tok = cur.next()  # '{'
        decl = TypeDecl(
            name=name,
            kind=kind,
            qualified_name=self._qualify(name, enclosing),
            superclass=superclass,
            interfaces=interfaces,
            fields=[],
            methods=[],
            nested=[],
            modifiers=modifiers,
            span=Span(kind_tok.line, open_tok.line),  # end patched below
        )
        end_line = self._parse_members(decl)
        decl.span = Span(kind_tok.line, max(end_line, kind_tok.line))
        self._profile_bodies(decl)
        return decl

    def _qualify(self, name: str, enclosing: TypeDecl | None) -> str:
        if enclosing is not None:
            return f"{enclosing.qualified_name}.{name}"
        return f"{self.package}.{name}" if self.package else name

    def _parse_members(self, decl: TypeDecl) -> int:
        """Parse the body of `decl` up to its closing brace; returns end line."""
        cur = self.cur
        if decl.kind == "enum":
            self._skip_enum_constants()
        pending_mods: set[str] = set()
        pending_override = False
        member_start: int | None = None
        while not cur.eof():
            tok = cur.peek()
            if tok.text == "}":
                return cur.next().line
            if member_start is None:
                member_start = tok.line
            if tok.text == ";":
                cur.next()
                pending_mods.clear()
                pending_override = False
                member_start = None
            elif tok.text == "@":
                name, _ = self._parse_annotation()
                if name == "Override":
                    pending_override = True
            elif tok.text in MODIFIER_WORDS:
                pending_mods.add(cur.next().text)
            elif tok.text in TYPE_KIND_WORDS:
                nested = self._parse_type(frozenset(pending_mods), enclosing=decl)
                if nested is not None:
                    decl.nested.append(nested)
                pending_mods.clear()
                pending_override = False
                member_start = None
            elif tok.text == "{":
                cur.skip_balanced("{", "}")  # instance/static initializer
                pending_mods.clear()
                member_start = None
            else:
                self._parse_field_or_method(
                    decl, frozenset(pending_mods), pending_override, member_start or tok.line
                )
                pending_mods.clear()
                pending_override = False
                member_start = None
        self._diag(decl.span.start, f"unterminated body of {decl.name}")
        return cur.line()

    def _skip_enum_constants(self) -> None:
        """Consume the constant list of an enum body (up to `;` or `}`)."""
        cur = self.cur
        depth = 0
        while not cur.eof():
            tok = cur.peek()
            if depth == 0 and tok.text in (";", "}"):
                if tok.text == ";":
                    cur.next()
                return
            tok = cur.next()
            if tok.text in ("(", "{"):
                depth += 1
            elif tok.text in (")", "}"):
                depth -= 1

    def _collect_head(self) -> tuple[list[Token], str]:
        """Collect declaration-head tokens up to a decision point.

        Returns (head tokens, stop text).  Generic arguments are dropped;
        `[]` pairs are folded into a synthetic `[]` token.
        """
        cur = self.cur
        head: list[Token] = []
        while not cur.eof():
            tok = cur.peek()
            if tok.text in ("(", "=", ";", ",", "{", "}"):
                return head, tok.text
            if tok.text == "<":
                cur.skip_generics()
                continue
            if tok.text == "[":
                open_tok = cur.next()
                cur.accept("]")
                head.append(Token("punct", "[]", open_tok.line, open_tok.pos, open_tok.end))
                continue
            head.append(cur.next())
        return head, ""

    def _parse_field_or_method(
        self,
        decl: TypeDecl,
        modifiers: frozenset[str],
        is_override: bool,
        start_line: int,
    ) -> None:
        cur = self.cur
        head, stop = self._collect_head()
        if stop == "(":
            self._parse_method(decl, head, modifiers, is_override, start_line)
        elif stop in ("=", ";", ","):
            self._parse_fields(decl, head, modifiers, start_line)
        else:
            self._diag(start_line, "unrecognized member skipped")
            if stop == "{":
                cur.skip_balanced("{", "}")
            # '}' or EOF: leave for the member loop to close the type

    @staticmethod
    def _head_type_name(head: list[Token]) -> str:
        """Join head tokens (minus the trailing name) into a raw type name."""
        parts: list[str] = []
        for tok in head:
            if tok.kind == "ident" and tok.text not in MODIFIER_WORDS:
                parts.append(tok.text)
            elif tok.text in (".", "[]"):
                parts.append(tok.text)
        out = ""
        for p in parts:
            if p == "." or p == "[]" or not out or out.endswith("."):
                out += p
            else:
                out += " " + p
        # A multi-word head like `final int` keeps only the last word group.
        return out.split(" ")[-1] if out else ""

    def _parse_fields(
        self, decl: TypeDecl, head: list[Token], modifiers: frozenset[str], start_line: int
    ) -> None:
        cur = self.cur
        idents = [t for t in head if t.kind == "ident" and t.text not in MODIFIER_WORDS]
        if len(idents) < 2:
            self._diag(start_line, "unrecognized member skipped")
            self._skip_statement()
            return
        name = idents[-1].text
        type_name = self._head_type_name(head[: self._index_of(head, idents[-1])])
        if any(t.text == "[]" for t in head[self._index_of(head, idents[-1]) :]):
            type_name += "[]"
        self._append_field(decl, name, type_name, modifiers, start_line)
        while True:
            tok = cur.peek()
            if tok is None:
                return
            if tok.text == "=":
                cur.next()
                self._skip_initializer()
                tok = cur.peek()
                if tok is None:
                    return
            if tok.text == ",":
                cur.next()
                nxt = cur.peek()
                if nxt is not None and nxt.kind == "ident":
                    extra = cur.next().text
                    while cur.accept("["):
                        cur.accept("]")
                    self._append_field(decl, extra, type_name, modifiers, tok.line)
                continue
            if tok.text == ";":
                cur.next()
                return
            self._diag(tok.line, "malformed field declaration; skipped to next statement")
            self._skip_statement()
            return

    @staticmethod
    def _index_of(tokens: list[Token], target: Token) -> int:
        for i, t in enumerate(tokens):
            if t is target:
                return i
        return len(tokens)

    def _append_field(
        self, decl: TypeDecl, name: str, type_name: str, modifiers: frozenset[str], line: int
    ) -> None:
        decl.fields.append(
            FieldDecl(
                name=name,
                type_name=type_name,
                is_primitive=self._is_primitive(type_name),
                modifiers=modifiers,
                line=line,
            )
        )

    def _skip_initializer(self) -> None:
        """Skip an initializer expression up to a top-level `,` or `;`."""
        cur = self.cur
        depth = 0
        while not cur.eof():
            tok = cur.peek()
            if depth == 0 and tok.text in (",", ";"):
                return
            if depth == 0 and tok.text == "}":
                return
            tok = cur.next()
            if tok.text in ("(", "{", "["):
                depth += 1
            elif tok.text in (")", "}", "]"):
                depth -= 1

    def _skip_statement(self) -> None:
        cur = self.cur
        depth = 0
        while not cur.eof():
            tok = cur.peek()
            if depth == 0 and tok.text == ";":
                cur.next()
                return
            if depth == 0 and tok.text == "}":
                return
            tok = cur.next()
            if tok.text in ("(", "{", "["):
                depth += 1
            elif tok.text in (")", "}", "]"):
                depth -= 1

    def _parse_method(
        self,
        decl: TypeDecl,
        head: list[Token],
        modifiers: frozenset[str],
        is_override: bool,
        start_line: int,
    ) -> None:
        cur = self.cur
        idents = [t for t in head if t.kind == "ident" and t.text not in MODIFIER_WORDS]
        if not idents:
            self._diag(start_line, "call-like tokens outside a method; skipped")
            cur.skip_balanced("(", ")")
            self._skip_statement()
            return
        name = idents[-1].text
        return_tokens = head[: self._index_of(head, idents[-1])]
        return_type = self._head_type_name(return_tokens) or None
        is_constructor = name == decl.name and return_type is None
        params = self._parse_params()
        if cur.accept("throws"):
            self._dotted_name()
            while cur.accept(","):
                self._dotted_name()
        body_tokens: list[Token] | None = None
        body_source = ""
        end_line = cur.line()
        tok = cur.peek()
        if tok is not None and tok.text == "{":
            open_idx = cur.i
            close_idx = cur.skip_balanced("{", "}")
            body_tokens = self.tokens[open_idx + 1 : close_idx]
            open_tok = self.tokens[open_idx]
            close_tok = self.tokens[close_idx]
            body_source = self.text[open_tok.pos : close_tok.end]
            end_line = close_tok.line
        elif tok is not None and tok.text == ";":
            cur.next()
            end_line = tok.line
        else:
            self._diag(start_line, f"method {name} has neither body nor ';'")
        is_abstract = body_tokens is None
        method = MethodDecl(
            name=name,
            params=params,
            return_type=None if is_constructor else return_type,
            modifiers=modifiers,
            is_constructor=is_constructor,
            is_override=is_override,
            is_abstract=is_abstract,
            body=None,
            span=Span(start_line, max(end_line, start_line)),
            body_source=body_source,
        )
        method._body_tokens = body_tokens  # type: ignore[attr-defined]
        decl.methods.append(method)

    def _parse_params(self) -> list[ParamDecl]:
        cur = self.cur
        params: list[ParamDecl] = []
        seen_names: set[str] = set()
        if not cur.accept("("):
            return params

        def push(candidate: ParamDecl | None, line: int) -> None:
            if candidate is None:
                return
            if candidate.name in seen_names:
                # Parameter names must be unique; keep the first declaration.
                self._diag(line, f"duplicate parameter name {candidate.name!r} dropped")
                return
            seen_names.add(candidate.name)
            params.append(candidate)

        group: list[Token] = []
        depth = 0
        while not cur.eof():
            tok = cur.peek()
            if depth == 0 and tok.text in (")", ","):
                cur.next()
                push(self._param_from(group), tok.line)
                group = []
                if tok.text == ")":
                    return params
                continue
            if tok.text == "<":
                cur.skip_generics()
                continue
            if tok.text == "@":
                self._parse_annotation()
                continue
            tok = cur.next()
            if tok.text in ("(", "["):
                depth += 1
            elif tok.text in (")", "]"):
                depth -= 1
            group.append(tok)
        return params

    def _param_from(self, group: list[Token]) -> ParamDecl | None:
        idents = [t for t in group if t.kind == "ident" and t.text not in ("final",)]
        if not idents:
            return None
        name = idents[-1].text
        type_parts: list[str] = []
        varargs = any(t.text == "..." for t in group)
        arrayed = any(t.text == "[" for t in group)
        for t in group:
            if t is idents[-1]:
                break
            if t.kind == "ident" and t.text != "final":
                type_parts.append(t.text)
            elif t.text == ".":
                type_parts.append(".")
        type_name = ""
        for p in type_parts:
            if p == "." or not type_name or type_name.endswith("."):
                type_name += p
            else:
                type_name = p  # keep the last word group (drops stray modifiers)
        if varargs or arrayed:
            type_name += "[]"
        return ParamDecl(
            name=name,
            type_name=type_name,
            is_primitive=self._is_primitive(type_name),
        )

    # -- body profiling -----------------------------------------------------

    def _profile_bodies(self, decl: TypeDecl) -> None:
        field_names = {f.name for f in decl.fields}
        for method in decl.methods:
            body_tokens = getattr(method, "_body_tokens", None)
            if body_tokens is None:
                method.body = None
                for p in method.params:
                    p.used_in_body = False
                continue
            method.body = _scan_body(body_tokens, field_names, {p.name for p in method.params})
            used = _bare_idents(body_tokens)
            for p in method.params:
                p.used_in_body = p.name in used
            del method._body_tokens  # type: ignore[attr-defined]


def _bare_idents(tokens: list[Token]) -> set[str]:
    """Identifiers not in member position (not right after a dot)."""
    out: set[str] = set()
    for i, tok in enumerate(tokens):
        if tok.kind != "ident" or tok.text in KEYWORDS:
            continue
        if i > 0 and tokens[i - 1].text == ".":
            continue
        out.add(tok.text)
    return out


def _scan_body(tokens: list[Token], field_names: set[str], param_names: set[str]) -> BodyProfile:
    profile = BodyProfile()
    n = len(tokens)

    def text(j: int) -> str:
        return tokens[j].text if 0 <= j < n else ""

    def is_ident(j: int) -> bool:
        return 0 <= j < n and tokens[j].kind == "ident"

    for i, tok in enumerate(tokens):
        if tok.text == ";":
            profile.statement_count += 1
        if tok.kind != "ident":
            continue
        if tok.text in KEYWORDS and tok.text not in ("this", "super"):
            continue
        name = tok.text
        after = text(i + 1)
        prev = text(i - 1)
        if prev == ".":
            # Member position: handled from the receiver side below.
            continue
        if after == "(":
            # Covers plain calls and `new T(...)` constructor invocations alike.
            profile.local_call_names[name] += 1
            continue
        if after == "." and is_ident(i + 2):
            member = text(i + 2)
            is_call = text(i + 3) == "("
            if name == "this":
                if member in KEYWORDS:
                    continue
                if is_call:
                    profile.local_call_names[member] += 1
                elif _is_written(tokens, i + 2):
                    profile.own_field_writes[member] += 1
                else:
                    profile.own_field_reads[member] += 1
                continue
            if name == "super":
                if is_call:
                    profile.local_call_names[member] += 1
                continue
            if name in field_names and name not in param_names:
                profile.own_field_reads[name] += 1
            if is_call:
                profile.qualified_calls[(name, member)] += 1
            else:
                profile.foreign_accesses[(name, member)] += 1
            continue
        if name in field_names and name not in param_names:
            if _is_written(tokens, i):
                profile.own_field_writes[name] += 1
            else:
                profile.own_field_reads[name] += 1
    if tokens:
        profile.line_count = tokens[-1].line - tokens[0].line + 1
    return profile


def _is_written(tokens: list[Token], i: int) -> bool:
    after = tokens[i + 1].text if i + 1 < len(tokens) else ""
    before = tokens[i - 1].text if i > 0 else ""
    if after in _ASSIGN_OPS or after in ("++", "--"):
        return True
    return before in ("++", "--")


def parse_unit(
    text: str | bytes,
    path: str,
    primitive_types: frozenset[str] = DEFAULT_PRIMITIVE_TYPES,
) -> SourceUnit:
    """Parse one Java source file into a SourceUnit.  Never raises on content.

    Byte input is decoded as UTF-8; undecodable bytes are replaced and noted
    as a diagnostic rather than an error.
    """
    decode_diag: ParseDiagnostic | None = None
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError:
            text = text.decode("utf-8", errors="replace")
            decode_diag = ParseDiagnostic(1, "undecodable bytes replaced during decoding")
    unit = _UnitParser(text, path, primitive_types).parse()
    if decode_diag is not None:
        unit.diagnostics.insert(0, decode_diag)
    return unit


def pretty_print(unit: SourceUnit) -> str:
    """Serialize the structural model back to Java-ish source.

    Bodies are emitted verbatim, so reparsing the output reproduces the same
    structural model (modulo line numbers).
    """
    out: list[str] = []
    if unit.package:
        out.append(f"package {unit.package};")
        out.append("")
    for imp in unit.imports:
        out.append(f"import {imp};")
    if unit.imports:
        out.append("")
    for t in unit.types:
        out.extend(_print_type(t, indent=""))
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


_MODIFIER_ORDER = [
    "public", "protected", "private", "abstract", "default", "static", "final",
    "synchronized", "native", "transient", "volatile", "strictfp",
]


def _fmt_modifiers(mods: frozenset[str]) -> str:
    ordered = [m for m in _MODIFIER_ORDER if m in mods]
    return " ".join(ordered) + (" " if ordered else "")


def _print_type(t: TypeDecl, indent: str) -> list[str]:
    header = f"{indent}{_fmt_modifiers(t.modifiers)}{t.kind} {t.name}"
    if t.superclass:
        header += f" extends {t.superclass}"
    if t.interfaces:
        joiner = "extends" if t.kind == "interface" else "implements"
        header += f" {joiner} {', '.join(t.interfaces)}"
    lines = [header + " {"]
    inner = indent + "    "
    for f in t.fields:
        lines.append(f"{inner}{_fmt_modifiers(f.modifiers)}{f.type_name} {f.name};")
    for m in t.methods:
        if m.is_override:
            lines.append(f"{inner}@Override")
        sig_params = ", ".join(f"{p.type_name} {p.name}" for p in m.params)
        ret = "" if m.is_constructor else f"{m.return_type or 'void'} "
        decl_line = f"{inner}{_fmt_modifiers(m.modifiers)}{ret}{m.name}({sig_params})"
        if m.body_source:
            body = m.body_source
            lines.append(f"{decl_line} {body}")
        else:
            lines.append(f"{decl_line};")
    for nested in t.nested:
        lines.extend(_print_type(nested, inner))
    lines.append(indent + "}")
    return lines


def structural_key(unit: SourceUnit) -> tuple:
    """Span-free structural fingerprint, for round-trip and tolerance tests."""

    def key_type(t: TypeDecl) -> tuple:
        return (
            t.name,
            t.kind,
            t.superclass,
            tuple(t.interfaces),
            tuple(sorted(t.modifiers)),
            tuple(
                (f.name, f.type_name, f.is_primitive, tuple(sorted(f.modifiers)))
                for f in t.fields
            ),
            tuple(
                (
                    m.name,
                    tuple((p.name, p.type_name, p.is_primitive, p.used_in_body) for p in m.params),
                    m.return_type,
                    tuple(sorted(m.modifiers)),
                    m.is_constructor,
                    m.is_override,
                    m.is_abstract,
                    _key_profile(m),
                )
                for m in t.methods
            ),
            tuple(key_type(x) for x in t.nested),
        )

    return (unit.package, tuple(unit.imports), tuple(key_type(t) for t in unit.types))


def _key_profile(m: MethodDecl) -> tuple:
    b = m.body
    if b is None:
        return ()
    return (
        tuple(sorted(b.local_call_names.items())),
        tuple(sorted(b.qualified_calls.items())),
        tuple(sorted(b.own_field_reads.items())),
        tuple(sorted(b.own_field_writes.items())),
        tuple(sorted(b.foreign_accesses.items())),
        b.statement_count,
    )
