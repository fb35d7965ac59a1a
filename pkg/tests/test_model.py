"""Tests for the ontology data model, contexts, and metrics."""

import random

import pytest

from pivot_align import (
    ClassAssertion,
    Domain,
    Entity,
    EntityKind,
    Iri,
    Label,
    Literal,
    Ontology,
    OntologyError,
    OntologyLoadError,
    PropertyAssertion,
    Range,
    SizeClass,
    StructureClass,
    SubClassOf,
    SubPropertyOf,
    all_contexts,
    classify_size,
    compute_metrics,
    make_ontology,
    structural_context,
)

EX = "http://example.org/t#"


def iri(local: str) -> Iri:
    return Iri(EX + local)


def cls(local: str, *labels: Label) -> Entity:
    return Entity(iri(local), EntityKind.CLASS, labels)


def test_iri_requires_scheme_separator():
    assert Iri("http://example.org/a") == "http://example.org/a"
    assert Iri("ex:Thing") == "ex:Thing"
    with pytest.raises(ValueError):
        Iri("")
    with pytest.raises(ValueError):
        Iri("no-scheme-here")
    with pytest.raises(ValueError):
        Iri("http//broken#x")  # separator after the '/'


def test_iri_fragment_prefers_last_separator():
    assert iri("Dean").fragment == "Dean"
    assert Iri("http://example.org/path/Leaf").fragment == "Leaf"
    assert Iri("ex:Local").fragment == "Local"
    assert Iri("http://example.org/trailing#").fragment == "http://example.org/trailing#"


def test_label_validation():
    assert Label("Dean").lang is None
    assert Label("Dekan", "de").lang == "de"
    assert Label("x", "de-at").lang == "de-at"
    with pytest.raises(ValueError):
        Label("")
    with pytest.raises(ValueError):
        Label("Dean", "EN")  # upper case tags are rejected
    with pytest.raises(ValueError):
        Label("Dean", "d")


def test_entity_orders_labels_and_rejects_same_language_conflicts():
    a = Entity(iri("C"), EntityKind.CLASS, (Label("b", "en"), Label("a", "de")))
    b = Entity(iri("C"), EntityKind.CLASS, (Label("a", "de"), Label("b", "en")))
    assert a == b
    assert [l.lang for l in a.labels] == ["de", "en"]
    # The same text twice is tolerated, different text is not.
    same = Entity(iri("C"), EntityKind.CLASS, (Label("x", "en"), Label("x", "en")))
    assert len(same.labels) == 1
    with pytest.raises(OntologyLoadError):
        Entity(iri("C"), EntityKind.CLASS, (Label("x", "en"), Label("y", "en")))


def test_entity_kind_is_property():
    assert EntityKind.OBJECT_PROPERTY.is_property
    assert EntityKind.DATA_PROPERTY.is_property
    assert not EntityKind.CLASS.is_property
    assert not EntityKind.NAMED_INDIVIDUAL.is_property


def test_make_ontology_sorts_and_dedupes():
    onto = make_ontology(
        [cls("B"), cls("A"), cls("B")],
        [SubClassOf(iri("B"), iri("A")), SubClassOf(iri("B"), iri("A"))],
    )
    assert list(onto.entities) == [iri("A"), iri("B")]
    assert onto.axioms == (SubClassOf(iri("B"), iri("A")),)


def test_make_ontology_rejects_conflicting_duplicate():
    with pytest.raises(OntologyLoadError, match="conflicting declarations"):
        make_ontology(
            [cls("A"), Entity(iri("A"), EntityKind.NAMED_INDIVIDUAL)], []
        )


def test_make_ontology_rejects_undeclared_axiom_reference():
    with pytest.raises(OntologyLoadError, match="undeclared"):
        make_ontology([cls("A")], [SubClassOf(iri("A"), iri("Ghost"))])


def test_make_ontology_checks_axiom_slot_kinds():
    prop = Entity(iri("p"), EntityKind.OBJECT_PROPERTY)
    ind = Entity(iri("i"), EntityKind.NAMED_INDIVIDUAL)
    with pytest.raises(OntologyLoadError, match="declared as"):
        make_ontology([cls("A"), ind], [SubClassOf(iri("i"), iri("A"))])
    with pytest.raises(OntologyLoadError, match="declared as"):
        make_ontology([cls("A"), prop], [SubPropertyOf(iri("A"), iri("p"))])
    with pytest.raises(OntologyLoadError, match="declared as"):
        make_ontology([cls("A"), cls("B")], [Domain(iri("A"), iri("B"))])
    with pytest.raises(OntologyLoadError, match="declared as"):
        make_ontology([cls("A"), ind], [ClassAssertion(iri("i"), iri("A"))])
    with pytest.raises(OntologyLoadError, match="declared as"):
        make_ontology(
            [cls("A"), ind], [PropertyAssertion(iri("i"), iri("A"), iri("i"))]
        )


def test_make_ontology_rejects_subclass_cycle():
    entities = [cls("A"), cls("B"), cls("C")]
    axioms = [
        SubClassOf(iri("A"), iri("B")),
        SubClassOf(iri("B"), iri("C")),
        SubClassOf(iri("C"), iri("A")),
    ]
    with pytest.raises(OntologyLoadError, match="subclass cycle"):
        make_ontology(entities, axioms)
    # Self loops are cycles too.
    with pytest.raises(OntologyLoadError, match="subclass cycle"):
        make_ontology([cls("A")], [SubClassOf(iri("A"), iri("A"))])


def test_ontology_equality_ignores_prefixes_and_warnings():
    a = make_ontology([cls("A")], [], prefixes={"": EX}, warnings=["w"])
    b = make_ontology([cls("A")], [], prefixes={"x": "http://other/"})
    assert a == b


def test_ontology_entity_lookup():
    onto = make_ontology([cls("A")], [])
    assert onto.entity(iri("A")).kind == EntityKind.CLASS
    with pytest.raises(OntologyError, match="unknown entity"):
        onto.entity(iri("Nope"))


def _school() -> Ontology:
    person = cls("Person")
    staff = cls("Staff")
    works = Entity(iri("worksAt"), EntityKind.OBJECT_PROPERTY)
    unit = cls("Unit")
    anna = Entity(iri("anna"), EntityKind.NAMED_INDIVIDUAL)
    return make_ontology(
        [person, staff, works, unit, anna],
        [
            SubClassOf(iri("Staff"), iri("Person")),
            Domain(iri("worksAt"), iri("Person")),
            Range(iri("worksAt"), iri("Unit")),
            ClassAssertion(iri("Staff"), iri("anna")),
            PropertyAssertion(iri("anna"), iri("worksAt"), iri("anna")),
        ],
    )


def test_contexts_cover_all_five_slots():
    contexts = all_contexts(_school())
    staff = contexts[iri("Staff")]
    assert staff.supers == (iri("Person"),)
    assert staff.members == (iri("anna"),)
    person = contexts[iri("Person")]
    assert person.subs == (iri("Staff"),)
    assert person.domains == (iri("worksAt"),)  # class side of a domain axiom
    works = contexts[iri("worksAt")]
    assert works.domains == (iri("Person"),)
    assert works.ranges == (iri("Unit"),)
    unit = contexts[iri("Unit")]
    assert unit.ranges == (iri("worksAt"),)
    anna = contexts[iri("anna")]
    assert anna.members == (iri("Staff"),)
    # Property assertions never contribute context.
    assert anna.supers == anna.subs == anna.domains == anna.ranges == ()


def test_structural_context_single_entity():
    ctx = structural_context(_school(), iri("Staff"))
    assert ctx.supers == (iri("Person"),)
    assert set(ctx.neighbors()) == {iri("Person"), iri("anna")}
    with pytest.raises(OntologyError):
        structural_context(_school(), iri("Ghost"))


def test_classify_size_boundaries():
    assert classify_size(0) == SizeClass.SMALL
    assert classify_size(100) == SizeClass.SMALL
    assert classify_size(101) == SizeClass.MEDIUM
    assert classify_size(500) == SizeClass.MEDIUM
    assert classify_size(501) == SizeClass.LARGE
    assert classify_size(1000) == SizeClass.LARGE
    assert classify_size(1001) == SizeClass.EXTRA_LARGE
    with pytest.raises(ValueError):
        classify_size(-1)


def test_compute_metrics_counts_and_classes():
    metrics = compute_metrics(_school())
    assert metrics.concept_count == 3
    assert metrics.property_count == 1
    assert metrics.individual_count == 1
    assert metrics.primitive_count == 5
    assert metrics.axiom_count == 5
    assert metrics.size_class == SizeClass.SMALL
    assert metrics.structure_class == StructureClass.SIMPLE
    assert metrics.as_dict() == {
        "concepts": 3,
        "properties": 1,
        "individuals": 1,
        "primitives": 5,
        "axioms": 5,
        "size_class": "small",
        "structure_class": "simple",
    }


def test_structure_class_complex_when_multiple_superclasses():
    entities = [cls("A"), cls("B"), cls("C")]
    axioms = [SubClassOf(iri("C"), iri("A")), SubClassOf(iri("C"), iri("B"))]
    metrics = compute_metrics(make_ontology(entities, axioms))
    assert metrics.structure_class == StructureClass.COMPLEX


def test_metrics_on_random_ontologies_sum_consistently():
    from util import random_ontology

    rng = random.Random(20260819)
    for _ in range(25):
        onto = random_ontology(rng, max_entities=60)
        metrics = compute_metrics(onto)
        assert metrics.primitive_count == len(onto.entities)
        assert (
            metrics.concept_count + metrics.property_count + metrics.individual_count
            == metrics.primitive_count
        )
        assert metrics.axiom_count == len(onto.axioms)


def test_property_assertion_accepts_literal_objects():
    ind = Entity(iri("i"), EntityKind.NAMED_INDIVIDUAL)
    prop = Entity(iri("p"), EntityKind.DATA_PROPERTY)
    onto = make_ontology(
        [ind, prop], [PropertyAssertion(iri("i"), iri("p"), Literal("42"))]
    )
    assert onto.axioms[0].obj == Literal("42")
