"""Ontology data model: IRIs, labels, entities, axioms, and metrics.

Ontologies are immutable values.  Structural equality deliberately
ignores prefix bindings and load warnings: two documents that differ
only in namespace sugar describe the same ontology.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Union

from .errors import OntologyError, OntologyLoadError

_LANG_RE = re.compile(r"[a-z]{2,8}(-[a-z0-9]{1,8})*\Z")


class Iri(str):
    """An IRI reference compared by exact string equality.

    The value must be non-empty and contain a scheme separator ``:``
    before any ``/`` or ``#``, which admits both absolute IRIs and
    compact ``prefix:local`` forms used in hand-written alignments.
    """

    __slots__ = ()

    def __new__(cls, value: str) -> "Iri":
        if not value:
            raise ValueError("IRI must be non-empty")
        colon = value.find(":")
        first_sep = min(
            (i for i in (value.find("/"), value.find("#")) if i >= 0),
            default=len(value),
        )
        if colon < 0 or colon > first_sep:
            raise ValueError(f"not an IRI (no scheme separator before '/' or '#'): {value!r}")
        return super().__new__(cls, value)

    @property
    def fragment(self) -> str:
        """Local name: the text after the last ``#``, ``/``, or ``:``."""
        cut = max(self.rfind("#"), self.rfind("/"), self.rfind(":"))
        local = self[cut + 1 :]
        return local if local else str(self)


@dataclass(frozen=True)
class Label:
    """A human-readable name, optionally tagged with a BCP-47-style language."""

    text: str
    lang: "str | None" = None

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("label text must be non-empty")
        if self.lang is not None and not _LANG_RE.match(self.lang):
            raise ValueError(f"invalid language tag: {self.lang!r}")


class EntityKind(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    NAMED_INDIVIDUAL = "NamedIndividual"

    @property
    def is_property(self) -> bool:
        return self in (EntityKind.OBJECT_PROPERTY, EntityKind.DATA_PROPERTY)


@dataclass(frozen=True)
class Entity:
    """A named ontology term: one IRI, one kind, any number of labels.

    At most one label per language is allowed; labels are stored in a
    canonical (lang, text) order so equality is order-insensitive.
    """

    iri: Iri
    kind: EntityKind
    labels: "tuple[Label, ...]" = ()

    def __post_init__(self) -> None:
        seen: dict[str | None, str] = {}
        for label in self.labels:
            if label.lang in seen and seen[label.lang] != label.text:
                tag = label.lang or "(untagged)"
                raise OntologyLoadError(
                    f"duplicate label for {self.iri} in language {tag}: "
                    f"{seen[label.lang]!r} vs {label.text!r}"
                )
            seen[label.lang] = label.text
        ordered = tuple(sorted(set(self.labels), key=lambda l: (l.lang or "", l.text)))
        object.__setattr__(self, "labels", ordered)

    def label_for(self, lang: "str | None") -> "Label | None":
        for label in self.labels:
            if label.lang == lang:
                return label
        return None


@dataclass(frozen=True)
class Literal:
    """An opaque data value used as the object of a property assertion."""

    text: str
    lang: "str | None" = None


@dataclass(frozen=True)
class SubClassOf:
    sub: Iri
    sup: Iri


@dataclass(frozen=True)
class SubPropertyOf:
    sub: Iri
    sup: Iri


@dataclass(frozen=True)
class Domain:
    prop: Iri
    cls: Iri


@dataclass(frozen=True)
class Range:
    prop: Iri
    target: Iri


@dataclass(frozen=True)
class ClassAssertion:
    cls: Iri
    individual: Iri


@dataclass(frozen=True)
class PropertyAssertion:
    subject: Iri
    prop: Iri
    obj: Union[Iri, Literal]


Axiom = Union[SubClassOf, SubPropertyOf, Domain, Range, ClassAssertion, PropertyAssertion]

_AXIOM_RANK = {
    SubClassOf: 0,
    SubPropertyOf: 1,
    Domain: 2,
    Range: 3,
    ClassAssertion: 4,
    PropertyAssertion: 5,
}


def _axiom_sort_key(axiom: Axiom):
    rank = _AXIOM_RANK[type(axiom)]
    if isinstance(axiom, PropertyAssertion):
        if isinstance(axiom.obj, Literal):
            obj_key = ("literal", axiom.obj.text, axiom.obj.lang or "")
        else:
            obj_key = ("iri", str(axiom.obj), "")
        return (rank, str(axiom.subject), str(axiom.prop)) + obj_key
    values = tuple(str(v) for v in vars(axiom).values())
    return (rank,) + values


def axiom_iris(axiom: Axiom) -> "tuple[Iri, ...]":
    """Every IRI an axiom mentions (literal objects excluded)."""
    if isinstance(axiom, PropertyAssertion):
        iris = [axiom.subject, axiom.prop]
        if isinstance(axiom.obj, Iri):
            iris.append(axiom.obj)
        return tuple(iris)
    return tuple(v for v in vars(axiom).values() if isinstance(v, Iri))


@dataclass(frozen=True)
class Ontology:
    """An immutable ontology: entities keyed by IRI plus a canonical axiom list.

    ``prefixes`` and ``warnings`` are carried for serialization and
    diagnostics but do not participate in equality.
    """

    iri: "Iri | None"
    entities: Mapping[Iri, Entity]
    axioms: "tuple[Axiom, ...]"
    prefixes: Mapping[str, str] = field(default_factory=dict, compare=False)
    warnings: "tuple[str, ...]" = field(default=(), compare=False)

    def entity(self, iri: Iri) -> Entity:
        try:
            return self.entities[iri]
        except KeyError:
            raise OntologyError(f"unknown entity: {iri}") from None

    def entities_of_kind(self, kind: EntityKind) -> "tuple[Entity, ...]":
        return tuple(e for e in self.entities.values() if e.kind == kind)


def make_ontology(
    entities: Iterable[Entity],
    axioms: Iterable[Axiom],
    iri: "Iri | None" = None,
    prefixes: "Mapping[str, str] | None" = None,
    warnings: Iterable[str] = (),
) -> Ontology:
    """Build a validated ontology with canonical entity and axiom order.

    Args:
        entities: entity records; duplicate IRIs must agree exactly.
        axioms: axiom records; exact duplicates are coalesced.
        iri: optional ontology IRI.
        prefixes: namespace bindings used for serialization only.
        warnings: load diagnostics to carry along.

    Raises:
        OntologyLoadError: on duplicate conflicting entities, axioms that
            reference undeclared IRIs, axioms whose slots resolve to the
            wrong entity kind, or a cycle in the subclass graph.
    """
    by_iri: dict[Iri, Entity] = {}
    for entity in entities:
        prior = by_iri.get(entity.iri)
        if prior is not None and prior != entity:
            raise OntologyLoadError(f"conflicting declarations for {entity.iri}")
        by_iri[entity.iri] = entity

    unique_axioms = sorted(set(axioms), key=_axiom_sort_key)
    for axiom in unique_axioms:
        for ref in axiom_iris(axiom):
            if ref not in by_iri:
                raise OntologyLoadError(f"axiom references undeclared entity: {ref}")
    _check_axiom_kinds(by_iri, unique_axioms)
    _check_subclass_acyclic(unique_axioms)

    ordered = {iri_: by_iri[iri_] for iri_ in sorted(by_iri)}
    return Ontology(
        iri=iri,
        entities=ordered,
        axioms=tuple(unique_axioms),
        prefixes=dict(prefixes or {}),
        warnings=tuple(warnings),
    )


def _check_axiom_kinds(entities: Mapping[Iri, Entity], axioms: Iterable[Axiom]) -> None:
    def expect(iri: Iri, ok: "tuple[EntityKind, ...]", role: str) -> None:
        kind = entities[iri].kind
        if kind not in ok:
            raise OntologyLoadError(f"{role} {iri} is declared as {kind.value}")

    properties = (EntityKind.OBJECT_PROPERTY, EntityKind.DATA_PROPERTY)
    for axiom in axioms:
        if isinstance(axiom, SubClassOf):
            expect(axiom.sub, (EntityKind.CLASS,), "subclass")
            expect(axiom.sup, (EntityKind.CLASS,), "superclass")
        elif isinstance(axiom, SubPropertyOf):
            expect(axiom.sub, properties, "subproperty")
            expect(axiom.sup, properties, "superproperty")
        elif isinstance(axiom, (Domain, Range)):
            expect(axiom.prop, properties, "property")
        elif isinstance(axiom, ClassAssertion):
            expect(axiom.cls, (EntityKind.CLASS,), "asserted class")
            expect(axiom.individual, (EntityKind.NAMED_INDIVIDUAL,), "individual")
        elif isinstance(axiom, PropertyAssertion):
            expect(axiom.prop, properties, "predicate")


def _check_subclass_acyclic(axioms: Iterable[Axiom]) -> None:
    supers: dict[Iri, set[Iri]] = {}
    for axiom in axioms:
        if isinstance(axiom, SubClassOf):
            supers.setdefault(axiom.sub, set()).add(axiom.sup)

    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[Iri, int] = {}

    def visit(node: Iri, trail: "list[Iri]") -> None:
        color[node] = GRAY
        trail.append(node)
        for nxt in sorted(supers.get(node, ())):
            state = color.get(nxt, WHITE)
            if state == GRAY:
                cycle = trail[trail.index(nxt) :] + [nxt]
                raise OntologyLoadError(
                    "subclass cycle: " + " -> ".join(str(i) for i in cycle)
                )
            if state == WHITE:
                visit(nxt, trail)
        trail.pop()
        color[node] = BLACK

    for start in sorted(supers):
        if color.get(start, WHITE) == WHITE:
            visit(start, [])


@dataclass(frozen=True)
class EntityContext:
    """One-hop structural neighborhood of an entity, all slots IRI-sorted.

    Slot meaning depends on the entity kind:

    * ``domains``/``ranges`` hold the declared domain/range classes for a
      property, and the properties declaring the class as domain/range
      for a class.
    * ``members`` holds asserted individuals for a class and asserted
      classes for an individual.
    """

    supers: "tuple[Iri, ...]" = ()
    subs: "tuple[Iri, ...]" = ()
    domains: "tuple[Iri, ...]" = ()
    ranges: "tuple[Iri, ...]" = ()
    members: "tuple[Iri, ...]" = ()

    def slots(self) -> "Iterator[tuple[Iri, ...]]":
        yield self.supers
        yield self.subs
        yield self.domains
        yield self.ranges
        yield self.members

    def neighbors(self) -> "tuple[Iri, ...]":
        merged: set[Iri] = set()
        for slot in self.slots():
            merged.update(slot)
        return tuple(sorted(merged))


def all_contexts(ontology: Ontology) -> "dict[Iri, EntityContext]":
    """One-hop context for every entity, computed in a single axiom pass."""
    acc: dict[Iri, dict[str, set[Iri]]] = {
        iri: {"supers": set(), "subs": set(), "domains": set(), "ranges": set(), "members": set()}
        for iri in ontology.entities
    }
    for axiom in ontology.axioms:
        if isinstance(axiom, (SubClassOf, SubPropertyOf)):
            acc[axiom.sub]["supers"].add(axiom.sup)
            acc[axiom.sup]["subs"].add(axiom.sub)
        elif isinstance(axiom, Domain):
            acc[axiom.prop]["domains"].add(axiom.cls)
            acc[axiom.cls]["domains"].add(axiom.prop)
        elif isinstance(axiom, Range):
            acc[axiom.prop]["ranges"].add(axiom.target)
            acc[axiom.target]["ranges"].add(axiom.prop)
        elif isinstance(axiom, ClassAssertion):
            acc[axiom.cls]["members"].add(axiom.individual)
            acc[axiom.individual]["members"].add(axiom.cls)
    return {
        iri: EntityContext(**{slot: tuple(sorted(vals)) for slot, vals in slots.items()})
        for iri, slots in acc.items()
    }


def structural_context(ontology: Ontology, iri: Iri) -> EntityContext:
    """One-hop structural context of a single entity.

    Raises:
        OntologyError: if ``iri`` is not declared in the ontology.
    """
    ontology.entity(iri)
    return all_contexts(ontology)[iri]


class SizeClass(Enum):
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"
    EXTRA_LARGE = "extra-large"


class StructureClass(Enum):
    SIMPLE = "simple"
    COMPLEX = "complex"


@dataclass(frozen=True)
class OntologyMetrics:
    concept_count: int
    property_count: int
    individual_count: int
    primitive_count: int
    axiom_count: int
    size_class: SizeClass
    structure_class: StructureClass

    def as_dict(self) -> "dict[str, int | str]":
        return {
            "concepts": self.concept_count,
            "properties": self.property_count,
            "individuals": self.individual_count,
            "primitives": self.primitive_count,
            "axioms": self.axiom_count,
            "size_class": self.size_class.value,
            "structure_class": self.structure_class.value,
        }


def classify_size(primitive_count: int) -> SizeClass:
    """Size class by primitive count: <=100 small, 101-500 medium,
    501-1000 large, above that extra-large."""
    if primitive_count < 0:
        raise ValueError("primitive count must be non-negative")
    if primitive_count <= 100:
        return SizeClass.SMALL
    if primitive_count <= 500:
        return SizeClass.MEDIUM
    if primitive_count <= 1000:
        return SizeClass.LARGE
    return SizeClass.EXTRA_LARGE


def compute_metrics(ontology: Ontology) -> OntologyMetrics:
    """Count primitives and axioms and classify size and structure.

    Primitives are classes, properties, and individuals together.  The
    structure is simple when the subclass graph is a forest (every class
    has at most one named superclass), complex otherwise.
    """
    concepts = sum(1 for e in ontology.entities.values() if e.kind == EntityKind.CLASS)
    properties = sum(1 for e in ontology.entities.values() if e.kind.is_property)
    individuals = sum(
        1 for e in ontology.entities.values() if e.kind == EntityKind.NAMED_INDIVIDUAL
    )
    primitives = concepts + properties + individuals

    super_count: dict[Iri, int] = {}
    for axiom in ontology.axioms:
        if isinstance(axiom, SubClassOf):
            super_count[axiom.sub] = super_count.get(axiom.sub, 0) + 1
    is_forest = all(n <= 1 for n in super_count.values())

    return OntologyMetrics(
        concept_count=concepts,
        property_count=properties,
        individual_count=individuals,
        primitive_count=primitives,
        axiom_count=len(ontology.axioms),
        size_class=classify_size(primitives),
        structure_class=StructureClass.SIMPLE if is_forest else StructureClass.COMPLEX,
    )
