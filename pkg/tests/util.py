"""Shared builders for fixture paths and randomized test data."""

import random
from pathlib import Path

from pivot_align import (
    Alignment,
    ClassAssertion,
    Correspondence,
    Domain,
    Entity,
    EntityKind,
    Iri,
    Label,
    Literal,
    Ontology,
    PropertyAssertion,
    Range,
    Relation,
    SubClassOf,
    make_alignment,
    make_ontology,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
FIGURE = FIXTURES / "figure"
UNI = FIXTURES / "uni"
BUNDLE = FIXTURES / "bundle"

_WORDS = (
    "amber", "basalt", "cedar", "delta", "ember", "fjord", "garnet",
    "harbor", "indigo", "juniper", "krypton", "lagoon", "meadow",
    "nickel", "onyx", "pepper", "quartz", "raven", "slate", "topaz",
)


def sim7(rng: random.Random) -> float:
    """A similarity that survives 7-decimal formatting exactly."""
    return rng.randint(0, 10**7) / 10**7


def random_label(rng: random.Random, lang: "str | None" = "de") -> Label:
    words = rng.sample(_WORDS, rng.randint(1, 3))
    return Label(" ".join(words), lang)


def random_ontology(rng: random.Random, max_entities: int = 200) -> Ontology:
    """A valid random ontology: classes with an acyclic subclass forest,
    properties with domains/ranges, individuals with assertions."""
    base = f"http://fuzz.example/o{rng.randint(0, 10**6)}#"
    n_classes = rng.randint(1, max(1, max_entities // 2))
    n_props = rng.randint(0, max(0, max_entities // 4))
    n_inds = rng.randint(0, max_entities - n_classes - n_props)

    entities = []
    classes = [Iri(f"{base}C{i}") for i in range(n_classes)]
    props = [Iri(f"{base}p{i}") for i in range(n_props)]
    individuals = [Iri(f"{base}i{i}") for i in range(n_inds)]
    prop_kinds = {}
    for iri in classes:
        entities.append(Entity(iri, EntityKind.CLASS, (random_label(rng),)))
    for iri in props:
        kind = rng.choice((EntityKind.OBJECT_PROPERTY, EntityKind.DATA_PROPERTY))
        prop_kinds[iri] = kind
        entities.append(Entity(iri, kind, (random_label(rng),)))
    for iri in individuals:
        labels = (random_label(rng),) if rng.random() < 0.8 else ()
        entities.append(Entity(iri, EntityKind.NAMED_INDIVIDUAL, labels))

    axioms = []
    # Linking only to lower-numbered classes keeps the subclass graph acyclic.
    for i, sub in enumerate(classes[1:], start=1):
        if rng.random() < 0.6:
            axioms.append(SubClassOf(sub, classes[rng.randrange(i)]))
    for prop in props:
        if rng.random() < 0.7:
            axioms.append(Domain(prop, rng.choice(classes)))
        if rng.random() < 0.7:
            axioms.append(Range(prop, rng.choice(classes)))
    for ind in individuals:
        if rng.random() < 0.8:
            axioms.append(ClassAssertion(rng.choice(classes), ind))
    object_props = [p for p in props if prop_kinds[p] == EntityKind.OBJECT_PROPERTY]
    data_props = [p for p in props if prop_kinds[p] == EntityKind.DATA_PROPERTY]
    for ind in individuals:
        if object_props and individuals and rng.random() < 0.4:
            axioms.append(
                PropertyAssertion(ind, rng.choice(object_props), rng.choice(individuals))
            )
        if data_props and rng.random() < 0.4:
            axioms.append(
                PropertyAssertion(
                    ind, rng.choice(data_props), Literal(rng.choice(_WORDS), None)
                )
            )

    iri = Iri(base.rstrip("#")) if rng.random() < 0.8 else None
    return make_ontology(entities, axioms, iri=iri, prefixes={"": base})


def random_alignment(rng: random.Random, max_rows: int = 30) -> Alignment:
    """A valid random alignment with unique (entity1, entity2, relation) keys."""
    count = rng.randint(0, max_rows)
    onto1 = "http://fuzz.example/left" if rng.random() < 0.7 else None
    onto2 = "http://fuzz.example/right" if rng.random() < 0.7 else None
    keys = set()
    rows = []
    for _ in range(count):
        key = (
            Iri(f"http://fuzz.example/left#e{rng.randint(0, 40)}"),
            Iri(f"http://fuzz.example/right#e{rng.randint(0, 40)}"),
            rng.choice(list(Relation)),
        )
        if key in keys:
            continue
        keys.add(key)
        rows.append(Correspondence(0, key[0], key[1], key[2], sim7(rng)))
    return make_alignment(onto1, onto2, rows)
