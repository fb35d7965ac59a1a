"""Alignments: correspondence lists with TSV serialization, merging of
input alignments, and composition across a shared pivot ontology."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .errors import AlignmentError, AlignmentFormatError
from .model import Iri

logger = logging.getLogger(__name__)

HEADER = "ID\tOntology1\tOntology2\tSimilarity\tRelation"


class Relation(Enum):
    EQUIVALENCE = "="
    SUBSUMES = ">"
    SUBSUMED_BY = "<"
    CROSS_TYPE = "~"

    @classmethod
    def from_symbol(cls, symbol: str) -> "Relation":
        for member in cls:
            if member.value == symbol:
                return member
        raise AlignmentFormatError(f"unknown relation symbol: {symbol!r}")


class Cardinality(Enum):
    ONE_TO_ONE = "one-to-one"
    MANY_TO_MANY = "many-to-many"


@dataclass(frozen=True)
class Correspondence:
    """One matched entity pair with a relation and a confidence score."""

    id: int
    entity1: Iri
    entity2: Iri
    relation: Relation
    similarity: float

    def __post_init__(self) -> None:
        if self.id < 0:
            raise AlignmentError(f"correspondence id must be non-negative: {self.id}")
        if math.isnan(self.similarity) or not 0.0 <= self.similarity <= 1.0:
            raise AlignmentError(
                f"similarity out of range for ({self.entity1}, {self.entity2}): "
                f"{self.similarity!r}"
            )

    def key(self) -> "tuple[Iri, Iri, Relation]":
        return (self.entity1, self.entity2, self.relation)


@dataclass(frozen=True)
class Alignment:
    """An ordered set of correspondences between two ontologies.

    ``onto1``/``onto2`` hold ontology IRIs (or file references) when
    known.  ``config_snapshot`` records the matcher configuration that
    produced a computed alignment and is consulted for the one-to-one
    cardinality invariant.
    """

    onto1: Optional[str]
    onto2: Optional[str]
    correspondences: "tuple[Correspondence, ...]"
    config_snapshot: Optional[object] = None

    def keys(self) -> "set[tuple[Iri, Iri, Relation]]":
        return {c.key() for c in self.correspondences}

    def __len__(self) -> int:
        return len(self.correspondences)


def _is_one_to_one(snapshot) -> bool:
    return getattr(snapshot, "cardinality", None) == Cardinality.ONE_TO_ONE


def make_alignment(
    onto1: Optional[str],
    onto2: Optional[str],
    correspondences: Iterable[Correspondence],
    config_snapshot: Optional[object] = None,
) -> Alignment:
    """Build a validated alignment, renumbering ids to 0..n-1 in order.

    Raises:
        AlignmentError: on duplicate (entity1, entity2, relation) triples,
            or on shared endpoints when the snapshot says one-to-one.
    """
    ordered = [
        Correspondence(i, c.entity1, c.entity2, c.relation, c.similarity)
        for i, c in enumerate(correspondences)
    ]
    seen: set = set()
    for corr in ordered:
        if corr.key() in seen:
            raise AlignmentError(
                f"duplicate correspondence: {corr.entity1} {corr.relation.value} {corr.entity2}"
            )
        seen.add(corr.key())
    if _is_one_to_one(config_snapshot):
        for slot in ("entity1", "entity2"):
            used: set = set()
            for corr in ordered:
                value = getattr(corr, slot)
                if value in used:
                    raise AlignmentError(
                        f"one-to-one alignment reuses {slot} endpoint {value}"
                    )
                used.add(value)
    return Alignment(onto1, onto2, tuple(ordered), config_snapshot)


def serialize_alignment_tsv(alignment: Alignment) -> str:
    """Render an alignment as TSV with a fixed header.

    Ontology references, when present, are kept in leading ``#`` comment
    lines so the round trip is lossless.  Similarities are printed with
    exactly seven decimals using round-half-even.
    """
    lines: list[str] = []
    if alignment.onto1 is not None:
        lines.append(f"# onto1: {alignment.onto1}")
    if alignment.onto2 is not None:
        lines.append(f"# onto2: {alignment.onto2}")
    lines.append(HEADER)
    for corr in alignment.correspondences:
        lines.append(
            f"{corr.id}\t{corr.entity1}\t{corr.entity2}"
            f"\t{corr.similarity:.7f}\t{corr.relation.value}"
        )
    return "\n".join(lines) + "\n"


def parse_alignment_tsv(text: str) -> Alignment:
    """Parse an alignment TSV document.

    Leading ``#`` comments may carry ``onto1``/``onto2`` references.
    Rows whose ids are not consecutive from zero are renumbered in file
    order, with a warning.

    Raises:
        AlignmentFormatError: on a missing or wrong header, a malformed
            row, an out-of-range similarity, or an unknown relation.
    """
    onto1: Optional[str] = None
    onto2: Optional[str] = None
    lines = text.splitlines()
    index = 0
    while index < len(lines) and lines[index].startswith("#"):
        comment = lines[index][1:].strip()
        if comment.startswith("onto1:"):
            onto1 = comment[len("onto1:") :].strip() or None
        elif comment.startswith("onto2:"):
            onto2 = comment[len("onto2:") :].strip() or None
        index += 1
    if index >= len(lines) or lines[index] != HEADER:
        raise AlignmentFormatError(f"missing alignment header: {HEADER!r}")
    index += 1

    raw: list[Correspondence] = []
    file_ids: list[int] = []
    for number, line in enumerate(lines[index:], start=index + 1):
        if not line.strip() or line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) != 5:
            raise AlignmentFormatError(f"row {number}: expected 5 columns, got {len(columns)}")
        id_text, left, right, sim_text, rel_text = columns
        try:
            row_id = int(id_text)
        except ValueError:
            raise AlignmentFormatError(f"row {number}: bad id {id_text!r}") from None
        try:
            entity1, entity2 = Iri(left), Iri(right)
        except ValueError as exc:
            raise AlignmentFormatError(f"row {number}: {exc}") from None
        try:
            similarity = float(sim_text)
        except ValueError:
            raise AlignmentFormatError(f"row {number}: bad similarity {sim_text!r}") from None
        if math.isnan(similarity) or math.isinf(similarity) or not 0.0 <= similarity <= 1.0:
            raise AlignmentFormatError(f"row {number}: similarity out of range: {sim_text}")
        relation = Relation.from_symbol(rel_text)
        file_ids.append(row_id)
        raw.append(Correspondence(max(row_id, 0), entity1, entity2, relation, similarity))

    if file_ids != list(range(len(file_ids))):
        logger.warning("alignment ids are not consecutive from 0; renumbering in file order")
    try:
        return make_alignment(onto1, onto2, raw)
    except AlignmentError as exc:
        raise AlignmentFormatError(str(exc)) from None


def parse_alignment_file(path) -> Alignment:
    """Parse an alignment TSV file (UTF-8)."""
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_alignment_tsv(handle.read())
    except OSError as exc:
        raise AlignmentFormatError(f"cannot read alignment {path}: {exc}") from exc


def _check_same_pair(left: Alignment, right: Alignment, what: str) -> None:
    for slot in ("onto1", "onto2"):
        a, b = getattr(left, slot), getattr(right, slot)
        if a is not None and b is not None and a != b:
            raise AlignmentError(f"{what}: {slot} mismatch ({a} vs {b})")


def merge_input_alignment(computed: Alignment, given: Alignment) -> Alignment:
    """Pin every given correspondence and add non-conflicting computed ones.

    Given correspondences keep their own similarities.  A computed
    correspondence is dropped when its (entity1, entity2, relation)
    triple is already pinned, or, under a one-to-one configuration, when
    it shares either endpoint with a pinned correspondence.
    """
    _check_same_pair(computed, given, "cannot merge alignments for different ontology pairs")
    one_to_one = _is_one_to_one(computed.config_snapshot)
    pinned_keys = given.keys()
    used1 = {c.entity1 for c in given.correspondences}
    used2 = {c.entity2 for c in given.correspondences}

    merged = list(given.correspondences)
    for corr in computed.correspondences:
        if corr.key() in pinned_keys:
            continue
        if one_to_one and (corr.entity1 in used1 or corr.entity2 in used2):
            continue
        merged.append(corr)
    return make_alignment(
        computed.onto1 if computed.onto1 is not None else given.onto1,
        computed.onto2 if computed.onto2 is not None else given.onto2,
        merged,
        computed.config_snapshot,
    )


_INVERSE = {
    Relation.EQUIVALENCE: Relation.EQUIVALENCE,
    Relation.SUBSUMES: Relation.SUBSUMED_BY,
    Relation.SUBSUMED_BY: Relation.SUBSUMES,
    Relation.CROSS_TYPE: Relation.CROSS_TYPE,
}


def _chain_relations(first: Relation, second: Relation) -> Optional[Relation]:
    """Compose two relations oriented along the chain e1 -> pivot -> e2.

    Equivalence composed with anything keeps the other relation; any
    cross-type link makes the whole chain cross-type; two inequalities
    compose only when they point the same way, otherwise the chain is
    indeterminate and dropped.
    """
    if Relation.CROSS_TYPE in (first, second):
        return Relation.CROSS_TYPE
    if first == Relation.EQUIVALENCE:
        return second
    if second == Relation.EQUIVALENCE:
        return first
    if first == second:
        return first
    return None


def compose_alignments(a13: Alignment, a23: Alignment) -> Alignment:
    """Compose two alignments sharing their second ontology as pivot.

    ``a13`` links O1 to O3 and ``a23`` links O2 to O3; the result links
    O1 to O2 through every shared pivot entity.  Similarities multiply;
    when several pivot chains yield the same correspondence the highest
    product is kept.

    Raises:
        AlignmentError: when the declared pivot ontology references differ.
    """
    if (
        a13.onto2 is not None
        and a23.onto2 is not None
        and a13.onto2 != a23.onto2
    ):
        raise AlignmentError(
            f"no shared pivot ontology: {a13.onto2} vs {a23.onto2}"
        )
    by_pivot: dict[Iri, list[Correspondence]] = {}
    for corr in a23.correspondences:
        by_pivot.setdefault(corr.entity2, []).append(corr)

    best: dict[tuple, Correspondence] = {}
    order: list[tuple] = []
    for c1 in a13.correspondences:
        for c2 in by_pivot.get(c1.entity2, ()):
            relation = _chain_relations(c1.relation, _INVERSE[c2.relation])
            if relation is None:
                continue
            similarity = c1.similarity * c2.similarity
            key = (c1.entity1, c2.entity1, relation)
            prior = best.get(key)
            if prior is None:
                order.append(key)
                best[key] = Correspondence(0, c1.entity1, c2.entity1, relation, similarity)
            elif similarity > prior.similarity:
                best[key] = Correspondence(0, c1.entity1, c2.entity1, relation, similarity)
    return make_alignment(a13.onto1, a23.onto1, [best[k] for k in order])
