"""Parser and serializer for the Turtle subset used by this toolkit.

Supported syntax::

    @prefix p: <iri> .
    subject predicate object .
    subject pred1 obj1 ; pred2 obj2 .

with ``#`` comments, ``<iri>`` references, ``prefix:local`` names, the
``a`` keyword, and plain or language-tagged string literals.  Supported
predicates are ``rdf:type`` (declarations with ``owl:Class``,
``owl:ObjectProperty``, ``owl:DatatypeProperty``, ``owl:NamedIndividual``,
``owl:Ontology``, or a class assertion), ``rdfs:label``,
``rdfs:subClassOf``, ``rdfs:subPropertyOf``, ``rdfs:domain``,
``rdfs:range``, and declared property IRIs for assertions.  Anything
else is a syntax error with a 1-based line and column.

IRIs used without an explicit type declaration are auto-declared with a
kind inferred from their syntactic position and reported as a load
warning, so declaration order never changes the parse result.
"""

import re
from typing import NamedTuple, Union

from .errors import OntologyLoadError, TurtleParseError
from .model import (
    Axiom,
    ClassAssertion,
    Domain,
    Entity,
    EntityKind,
    Iri,
    Label,
    Literal,
    Ontology,
    PropertyAssertion,
    Range,
    SubClassOf,
    SubPropertyOf,
    make_ontology,
)

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"

_RDF_TYPE = Iri(RDF_NS + "type")
_RDFS_LABEL = Iri(RDFS_NS + "label")
_RDFS_SUBCLASS = Iri(RDFS_NS + "subClassOf")
_RDFS_SUBPROP = Iri(RDFS_NS + "subPropertyOf")
_RDFS_DOMAIN = Iri(RDFS_NS + "domain")
_RDFS_RANGE = Iri(RDFS_NS + "range")
_OWL_ONTOLOGY = Iri(OWL_NS + "Ontology")

_KIND_BY_META = {
    Iri(OWL_NS + "Class"): EntityKind.CLASS,
    Iri(OWL_NS + "ObjectProperty"): EntityKind.OBJECT_PROPERTY,
    Iri(OWL_NS + "DatatypeProperty"): EntityKind.DATA_PROPERTY,
    Iri(OWL_NS + "NamedIndividual"): EntityKind.NAMED_INDIVIDUAL,
}
_META_BY_KIND = {kind: meta for meta, kind in _KIND_BY_META.items()}

_RESERVED_PREFIXES = (RDF_NS, RDFS_NS, OWL_NS)

_LOCAL_RE = re.compile(r"[\w\-]*\Z")
_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}
_UNESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


class _Token(NamedTuple):
    kind: str  # prefix_kw | iriref | pname | a | string | dot | semicolon | eof
    value: object
    line: int
    column: int


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def _error(self, message: str, line: "int | None" = None, column: "int | None" = None):
        raise TurtleParseError(message, line or self.line, column or self.column)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text):
                if self.text[self.pos] == "\n":
                    self.line += 1
                    self.column = 1
                else:
                    self.column += 1
                self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def _skip_trivia(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def next_token(self) -> _Token:
        self._skip_trivia()
        line, column = self.line, self.column
        ch = self._peek()
        if not ch:
            return _Token("eof", None, line, column)
        if ch == ".":
            self._advance()
            return _Token("dot", ".", line, column)
        if ch == ";":
            self._advance()
            return _Token("semicolon", ";", line, column)
        if ch == ",":
            self._error("object lists (',') are not supported", line, column)
        if ch == "@":
            self._advance()
            word = self._read_word()
            if word == "prefix":
                return _Token("prefix_kw", "@prefix", line, column)
            self._error(f"unsupported directive: @{word}", line, column)
        if ch == "<":
            return self._read_iriref(line, column)
        if ch == '"':
            return self._read_string(line, column)
        if ch.isalnum() or ch in "_:":
            return self._read_name(line, column)
        self._error(f"unexpected character: {ch!r}", line, column)
        raise AssertionError("unreachable")

    def _read_word(self) -> str:
        start = self.pos
        while self._peek().isalpha():
            self._advance()
        return self.text[start : self.pos]

    def _read_iriref(self, line: int, column: int) -> _Token:
        self._advance()  # consume '<'
        start = self.pos
        while True:
            ch = self._peek()
            if not ch or ch == "\n":
                self._error("unterminated IRI reference", line, column)
            if ch == ">":
                break
            if ch in ' "<{}|^`\\':
                self._error(f"illegal character in IRI reference: {ch!r}")
            self._advance()
        value = self.text[start : self.pos]
        self._advance()  # consume '>'
        try:
            iri = Iri(value)
        except ValueError as exc:
            self._error(str(exc), line, column)
        return _Token("iriref", iri, line, column)

    def _read_string(self, line: int, column: int) -> _Token:
        self._advance()  # consume opening quote
        pieces: list[str] = []
        while True:
            ch = self._peek()
            if not ch or ch == "\n":
                self._error("unterminated string literal", line, column)
            if ch == '"':
                self._advance()
                break
            if ch == "\\":
                esc = self._peek(1)
                if esc not in _ESCAPES:
                    self._error(f"unsupported escape: \\{esc}")
                pieces.append(_ESCAPES[esc])
                self._advance(2)
            else:
                pieces.append(ch)
                self._advance()
        lang: "str | None" = None
        if self._peek() == "@":
            self._advance()
            start = self.pos
            while self._peek().isalnum() or self._peek() == "-":
                self._advance()
            lang = self.text[start : self.pos]
            if not lang:
                self._error("empty language tag", line, column)
        if self._peek() == "^" and self._peek(1) == "^":
            self._error("typed literals are not supported", self.line, self.column)
        return _Token("string", ("".join(pieces), lang), line, column)

    def _read_name(self, line: int, column: int) -> _Token:
        start = self.pos
        colon = -1
        while True:
            ch = self._peek()
            if ch == ":" and colon < 0:
                colon = self.pos - start
                self._advance()
            elif ch.isalnum() or ch in "_-":
                self._advance()
            else:
                break
        word = self.text[start : self.pos]
        if colon < 0:
            if word == "a":
                return _Token("a", "a", line, column)
            self._error(f"expected an IRI or keyword, found {word!r}", line, column)
        prefix, local = word[:colon], word[colon + 1 :]
        return _Token("pname", (prefix, local), line, column)


class _RawTriple(NamedTuple):
    subject: Iri
    predicate: Iri
    obj: Union[Iri, Literal]
    line: int
    column: int  # position of the object, for follow-up errors


class _Parser:
    def __init__(self, text: str):
        self.scanner = _Scanner(text)
        self.prefixes: dict[str, str] = {}
        self.triples: list[_RawTriple] = []
        self.token = self.scanner.next_token()

    def _advance(self) -> None:
        self.token = self.scanner.next_token()

    def _error(self, message: str, token: "_Token | None" = None):
        tok = token or self.token
        raise TurtleParseError(message, tok.line, tok.column)

    def _expect(self, kind: str, what: str) -> _Token:
        if self.token.kind != kind:
            self._error(f"expected {what}")
        tok = self.token
        self._advance()
        return tok

    def _resolve_pname(self, token: _Token) -> Iri:
        prefix, local = token.value  # type: ignore[misc]
        if prefix not in self.prefixes:
            self._error(f"undeclared prefix: {prefix}:", token)
        try:
            return Iri(self.prefixes[prefix] + local)
        except ValueError as exc:
            self._error(str(exc), token)
        raise AssertionError("unreachable")

    def _read_iri(self, what: str) -> "tuple[Iri, _Token]":
        tok = self.token
        if tok.kind == "iriref":
            self._advance()
            return tok.value, tok  # type: ignore[return-value]
        if tok.kind == "pname":
            iri = self._resolve_pname(tok)
            self._advance()
            return iri, tok
        self._error(f"expected {what}")
        raise AssertionError("unreachable")

    def parse_document(self) -> None:
        while self.token.kind != "eof":
            if self.token.kind == "prefix_kw":
                self._parse_prefix()
            else:
                self._parse_triples()

    def _parse_prefix(self) -> None:
        self._advance()
        tok = self._expect("pname", "a prefix name ending in ':'")
        prefix, local = tok.value  # type: ignore[misc]
        if local:
            self._error("prefix declaration must end in ':'", tok)
        ns = self._expect("iriref", "a namespace IRI")
        self._expect("dot", "'.'")
        self.prefixes[prefix] = str(ns.value)

    def _parse_triples(self) -> None:
        subject, _ = self._read_iri("a subject IRI")
        while True:
            if self.token.kind == "a":
                predicate = _RDF_TYPE
                self._advance()
            else:
                predicate, _ = self._read_iri("a predicate IRI")
            obj_tok = self.token
            obj: Union[Iri, Literal]
            if obj_tok.kind == "string":
                text, lang = obj_tok.value  # type: ignore[misc]
                obj = Literal(text, lang)
                self._advance()
            else:
                obj, _ = self._read_iri("an object IRI or literal")
            self.triples.append(
                _RawTriple(subject, predicate, obj, obj_tok.line, obj_tok.column)
            )
            if self.token.kind == "semicolon":
                self._advance()
                if self.token.kind == "dot":  # tolerate a trailing ';'
                    self._advance()
                    return
                continue
            self._expect("dot", "'.' or ';'")
            return


def _is_reserved(iri: Iri) -> bool:
    return any(str(iri).startswith(ns) for ns in _RESERVED_PREFIXES)


# Positional evidence for auto-declaration, strongest first.  An explicit
# declaration always wins; among inferred kinds, schema positions beat
# usage positions so that e.g. a type object stays a class even when the
# same IRI also shows up as the object of an assertion.
_EVIDENCE_CLASS = 3
_EVIDENCE_PROPERTY = 2
_EVIDENCE_INDIVIDUAL = 1


def parse_turtle(text: str) -> Ontology:
    """Parse a Turtle document into a validated :class:`Ontology`.

    Raises:
        TurtleParseError: on any syntax error, with line and column.
        OntologyLoadError: on conflicting declarations, duplicate labels
            for one language, or a subclass cycle.
    """
    parser = _Parser(text)
    parser.parse_document()

    declared: dict[Iri, EntityKind] = {}
    ontology_iri: "Iri | None" = None
    rest: list[_RawTriple] = []
    for triple in parser.triples:
        if triple.predicate == _RDF_TYPE and isinstance(triple.obj, Iri):
            if triple.obj in _KIND_BY_META:
                kind = _KIND_BY_META[triple.obj]
                prior = declared.get(triple.subject)
                if prior is not None and prior != kind:
                    raise OntologyLoadError(
                        f"conflicting declarations for {triple.subject}: "
                        f"{prior.value} vs {kind.value}"
                    )
                declared[triple.subject] = kind
                continue
            if triple.obj == _OWL_ONTOLOGY:
                if ontology_iri is not None and ontology_iri != triple.subject:
                    raise OntologyLoadError(
                        f"conflicting ontology IRIs: {ontology_iri} vs {triple.subject}"
                    )
                ontology_iri = triple.subject
                continue
        rest.append(triple)

    evidence: dict[Iri, int] = {}
    saw_iri_object: dict[Iri, bool] = {}
    labels: dict[Iri, list[Label]] = {}
    axioms: list[Axiom] = []

    def note(iri: Iri, strength: int) -> None:
        if evidence.get(iri, 0) < strength:
            evidence[iri] = strength

    def require_iri_object(triple: _RawTriple) -> Iri:
        if not isinstance(triple.obj, Iri):
            raise TurtleParseError(
                "expected an IRI object for this predicate", triple.line, triple.column
            )
        if _is_reserved(triple.obj):
            raise TurtleParseError(
                f"reserved vocabulary cannot be used here: {triple.obj}",
                triple.line,
                triple.column,
            )
        return triple.obj

    for triple in rest:
        subject, predicate = triple.subject, triple.predicate
        if _is_reserved(subject):
            raise TurtleParseError(
                f"reserved vocabulary cannot be used as a subject: {subject}",
                triple.line,
                triple.column,
            )
        if predicate == _RDFS_LABEL:
            if not isinstance(triple.obj, Literal):
                raise TurtleParseError(
                    "rdfs:label requires a literal object", triple.line, triple.column
                )
            try:
                label = Label(triple.obj.text, triple.obj.lang)
            except ValueError as exc:
                raise TurtleParseError(str(exc), triple.line, triple.column) from None
            labels.setdefault(subject, []).append(label)
        elif predicate == _RDFS_SUBCLASS:
            obj = require_iri_object(triple)
            axioms.append(SubClassOf(subject, obj))
            note(subject, _EVIDENCE_CLASS)
            note(obj, _EVIDENCE_CLASS)
        elif predicate == _RDFS_SUBPROP:
            obj = require_iri_object(triple)
            axioms.append(SubPropertyOf(subject, obj))
            note(subject, _EVIDENCE_PROPERTY)
            note(obj, _EVIDENCE_PROPERTY)
            saw_iri_object.setdefault(subject, True)
            saw_iri_object.setdefault(obj, True)
        elif predicate == _RDFS_DOMAIN:
            obj = require_iri_object(triple)
            axioms.append(Domain(subject, obj))
            note(subject, _EVIDENCE_PROPERTY)
            saw_iri_object.setdefault(subject, True)
            note(obj, _EVIDENCE_CLASS)
        elif predicate == _RDFS_RANGE:
            obj = require_iri_object(triple)
            axioms.append(Range(subject, obj))
            note(subject, _EVIDENCE_PROPERTY)
            saw_iri_object.setdefault(subject, True)
            note(obj, _EVIDENCE_CLASS)
        elif predicate == _RDF_TYPE:
            obj = require_iri_object(triple)
            axioms.append(ClassAssertion(obj, subject))
            note(subject, _EVIDENCE_INDIVIDUAL)
            note(obj, _EVIDENCE_CLASS)
        elif _is_reserved(predicate):
            raise TurtleParseError(
                f"unsupported predicate: {predicate}", triple.line, triple.column
            )
        else:
            axioms.append(PropertyAssertion(subject, predicate, triple.obj))
            note(subject, _EVIDENCE_INDIVIDUAL)
            note(predicate, _EVIDENCE_PROPERTY)
            if isinstance(triple.obj, Iri):
                if _is_reserved(triple.obj):
                    raise TurtleParseError(
                        f"reserved vocabulary cannot be used here: {triple.obj}",
                        triple.line,
                        triple.column,
                    )
                note(triple.obj, _EVIDENCE_INDIVIDUAL)
                saw_iri_object[predicate] = True
            else:
                saw_iri_object.setdefault(predicate, False)

    warnings: list[str] = []
    resolved: dict[Iri, EntityKind] = dict(declared)
    mentioned = set(evidence) | set(labels)
    for iri in sorted(mentioned - set(declared)):
        strength = evidence.get(iri, 0)
        if strength == _EVIDENCE_CLASS:
            kind = EntityKind.CLASS
        elif strength == _EVIDENCE_PROPERTY:
            kind = (
                EntityKind.OBJECT_PROPERTY
                if saw_iri_object.get(iri, True)
                else EntityKind.DATA_PROPERTY
            )
        elif strength == _EVIDENCE_INDIVIDUAL:
            kind = EntityKind.NAMED_INDIVIDUAL
        else:  # label-only subject: treat as a concept
            kind = EntityKind.CLASS
        resolved[iri] = kind
        warnings.append(f"auto-declared {iri} as {kind.value}")

    entities = [
        Entity(iri, kind, tuple(labels.get(iri, ()))) for iri, kind in resolved.items()
    ]
    return make_ontology(
        entities,
        axioms,
        iri=ontology_iri,
        prefixes=parser.prefixes,
        warnings=warnings,
    )


def _emitted_prefixes(ontology: Ontology) -> "dict[str, str]":
    emitted = {"owl": OWL_NS, "rdf": RDF_NS, "rdfs": RDFS_NS}
    for name, ns in ontology.prefixes.items():
        if name not in emitted:
            emitted[name] = ns
    return emitted


def _compactor(prefixes: "dict[str, str]"):
    by_length = sorted(prefixes.items(), key=lambda kv: (-len(kv[1]), kv[0]))

    def compact(iri: Iri) -> str:
        for name, ns in by_length:
            if str(iri).startswith(ns):
                local = str(iri)[len(ns) :]
                if _LOCAL_RE.match(local):
                    return f"{name}:{local}"
        return f"<{iri}>"

    return compact


def _render_literal(text: str, lang: "str | None") -> str:
    escaped = "".join(_UNESCAPES.get(ch, ch) for ch in text)
    rendered = f'"{escaped}"'
    return f"{rendered}@{lang}" if lang else rendered


def serialize_turtle(ontology: Ontology) -> str:
    """Render an ontology as canonical Turtle.

    Output is deterministic: prefixes sorted by name, entities sorted by
    IRI with their declaration and labels, then axioms in the canonical
    axiom order, one statement per line.  ``parse_turtle`` of the result
    is structurally equal to the input.
    """
    prefixes = _emitted_prefixes(ontology)
    compact = _compactor(prefixes)

    lines: list[str] = []
    for name in sorted(prefixes):
        lines.append(f"@prefix {name}: <{prefixes[name]}> .")
    lines.append("")

    if ontology.iri is not None:
        lines.append(f"{compact(ontology.iri)} a owl:Ontology .")
        lines.append("")

    for iri in sorted(ontology.entities):
        entity = ontology.entities[iri]
        block = f"{compact(iri)} a {compact(_META_BY_KIND[entity.kind])}"
        for label in entity.labels:
            block += f" ;\n    rdfs:label {_render_literal(label.text, label.lang)}"
        lines.append(block + " .")

    if ontology.axioms:
        lines.append("")
    for axiom in ontology.axioms:
        lines.append(_render_axiom(axiom, compact))
    return "\n".join(lines) + "\n"


def _render_axiom(axiom: Axiom, compact) -> str:
    if isinstance(axiom, SubClassOf):
        return f"{compact(axiom.sub)} rdfs:subClassOf {compact(axiom.sup)} ."
    if isinstance(axiom, SubPropertyOf):
        return f"{compact(axiom.sub)} rdfs:subPropertyOf {compact(axiom.sup)} ."
    if isinstance(axiom, Domain):
        return f"{compact(axiom.prop)} rdfs:domain {compact(axiom.cls)} ."
    if isinstance(axiom, Range):
        return f"{compact(axiom.prop)} rdfs:range {compact(axiom.target)} ."
    if isinstance(axiom, ClassAssertion):
        return f"{compact(axiom.individual)} a {compact(axiom.cls)} ."
    obj = (
        _render_literal(axiom.obj.text, axiom.obj.lang)
        if isinstance(axiom.obj, Literal)
        else compact(axiom.obj)
    )
    return f"{compact(axiom.subject)} {compact(axiom.prop)} {obj} ."


def parse_turtle_file(path) -> Ontology:
    """Parse a Turtle file (UTF-8)."""
    with open(path, encoding="utf-8") as handle:
        return parse_turtle(handle.read())


__all__ = [
    "OWL_NS",
    "RDF_NS",
    "RDFS_NS",
    "parse_turtle",
    "parse_turtle_file",
    "serialize_turtle",
]
