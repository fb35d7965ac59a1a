"""Alignment scoring against references and competency-question checks.

Precision, recall, and F1 use a tagged Undefined value (``None``) rather
than floating-point NaN; textual reports render it as the literal
``NaN``.
"""

from dataclasses import dataclass
from typing import Optional

from .alignment import Alignment
from .errors import EvaluationError
from .model import Iri, Ontology, PropertyAssertion


@dataclass(frozen=True)
class EvalReport:
    """Counts and scores from comparing an alignment to a reference.

    ``precision`` is undefined (None) when the result is empty,
    ``recall`` when the reference is empty, and ``f1`` when either score
    is undefined or both are zero.
    """

    result_count: int
    reference_count: int
    common_count: int
    precision: Optional[float]
    recall: Optional[float]
    f1: Optional[float]

    def to_dict(self) -> dict:
        return {
            "result_count": self.result_count,
            "reference_count": self.reference_count,
            "common_count": self.common_count,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }

    def to_text(self) -> str:
        lines = [
            f"precision\t{_render(self.precision)}",
            f"recall\t{_render(self.recall)}",
            f"f1\t{_render(self.f1)}",
            f"result_count\t{self.result_count}",
            f"reference_count\t{self.reference_count}",
            f"common_count\t{self.common_count}",
        ]
        return "\n".join(lines) + "\n"


def _render(value: Optional[float]) -> str:
    return "NaN" if value is None else f"{value:.4f}"


def evaluate(result: Alignment, reference: Alignment) -> EvalReport:
    """Score a computed alignment against a reference alignment.

    Correspondences match on (entity1, entity2, relation); similarities
    are ignored.

    Raises:
        EvaluationError: when both alignments declare ontology
            references and they disagree.
    """
    for slot in ("onto1", "onto2"):
        a, b = getattr(result, slot), getattr(reference, slot)
        if a is not None and b is not None and a != b:
            raise EvaluationError(
                f"alignments cover different ontology pairs: {slot} is {a} vs {b}"
            )
    result_count = len(result)
    reference_count = len(reference)
    common_count = len(result.keys() & reference.keys())

    precision = common_count / result_count if result_count else None
    recall = common_count / reference_count if reference_count else None
    if precision is None or recall is None or precision + recall == 0.0:
        f1 = None
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return EvalReport(result_count, reference_count, common_count, precision, recall, f1)


@dataclass(frozen=True)
class RoleBindings:
    """Which properties play the membership roles in a given ontology.

    ``university_root`` names the entity that represents the whole
    institution for the membership question.
    """

    works_at: Iri
    supervisor_of: Iri
    sub_unit_of: Iri
    university_root: Iri


@dataclass(frozen=True)
class CompetencyAnswer:
    """Answer to one numbered competency question: sorted entity IRIs."""

    question: int
    bindings: "tuple[Iri, ...]"


def _require_entity(ontology: Ontology, iri: Iri, what: str) -> None:
    if iri not in ontology.entities:
        raise EvaluationError(f"{what} {iri} is not declared in the ontology")


def _require_role(ontology: Ontology, iri: Iri, role: str) -> None:
    entity = ontology.entities.get(iri)
    if entity is None or not entity.kind.is_property:
        raise EvaluationError(f"role {role!r} is not bound to a property: {iri}")


def _assertions_of(ontology: Ontology, prop: Iri) -> "dict[Iri, set[Iri]]":
    objects: "dict[Iri, set[Iri]]" = {}
    for axiom in ontology.axioms:
        if (
            isinstance(axiom, PropertyAssertion)
            and axiom.prop == prop
            and isinstance(axiom.obj, Iri)
        ):
            objects.setdefault(axiom.subject, set()).add(axiom.obj)
    return objects


def _reachable(starts: "set[Iri]", edges: "dict[Iri, set[Iri]]") -> "set[Iri]":
    seen = set(starts)
    frontier = list(starts)
    while frontier:
        node = frontier.pop()
        for target in edges.get(node, ()):
            if target not in seen:
                seen.add(target)
                frontier.append(target)
    return seen


def competency_check(
    ontology: Ontology,
    roles: RoleBindings,
    person: Iri,
    unit: Iri,
) -> "list[CompetencyAnswer]":
    """Answer the six membership/supervision/unit questions.

    1. Does the person work at the institution (directly or through a
       chain of sub-units reaching the root)?  Answer holds the root
       when yes, else nothing.
    2. Which units does the person directly work at?
    3. Who supervises the person?
    4. Who are the person's co-workers in a shared unit?
    5. Which units is the given unit directly part of?
    6. Which units belong to the given unit, transitively?

    Raises:
        EvaluationError: on an unbound role property or an unknown
            person/unit IRI.
    """
    _require_role(ontology, roles.works_at, "works_at")
    _require_role(ontology, roles.supervisor_of, "supervisor_of")
    _require_role(ontology, roles.sub_unit_of, "sub_unit_of")
    _require_entity(ontology, roles.university_root, "university root")
    _require_entity(ontology, person, "person")
    _require_entity(ontology, unit, "unit")

    works_at = _assertions_of(ontology, roles.works_at)
    supervises = _assertions_of(ontology, roles.supervisor_of)
    parents = _assertions_of(ontology, roles.sub_unit_of)
    children: "dict[Iri, set[Iri]]" = {}
    for child, parent_set in parents.items():
        for parent in parent_set:
            children.setdefault(parent, set()).add(child)

    my_units = works_at.get(person, set())
    q1 = (
        (roles.university_root,)
        if roles.university_root in _reachable(set(my_units), parents)
        else ()
    )
    q2 = tuple(sorted(my_units))
    q3 = tuple(sorted(s for s, targets in supervises.items() if person in targets))
    q4 = tuple(
        sorted(
            s
            for s, units in works_at.items()
            if s != person and units & my_units
        )
    )
    q5 = tuple(sorted(parents.get(unit, set())))
    q6 = tuple(sorted(_reachable(set(children.get(unit, set())), children)))

    answers = (q1, q2, q3, q4, q5, q6)
    return [CompetencyAnswer(i, iris) for i, iris in enumerate(answers, start=1)]
