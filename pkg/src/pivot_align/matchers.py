"""Matcher stack: string and token similarities, the lexical, semantic,
structural, and cross-type matchers, weighted aggregation, and alignment
extraction.

All matchers compare entities through their pivot-language labels and
return sparse similarity matrices; exact zeros are never stored.
"""

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .alignment import (
    Alignment,
    Cardinality,
    Correspondence,
    Relation,
    make_alignment,
)
from .errors import MatchError
from .lexicon import SynonymLexicon, tokenize
from .model import Entity, EntityKind, Iri, Ontology, all_contexts

DEFAULT_THRESHOLD = 0.8
DEFAULT_STRUCTURAL_ALPHA = 0.25
DEFAULT_STRUCTURAL_ROUNDS = 2

LEXICAL = "lexical"
SEMANTIC = "semantic"
STRUCTURAL = "structural"
CROSS_TYPE = "crosstype"

#: Producers whose scores apply to pairs of entities of the same kind.
_SAME_KIND_PRODUCERS = frozenset({LEXICAL, SEMANTIC, STRUCTURAL})
#: Producers whose scores apply to pairs of entities of different kinds.
_CROSS_KIND_PRODUCERS = frozenset({CROSS_TYPE})


@dataclass(frozen=True)
class MatchConfig:
    """Knobs for the matcher pipeline.

    ``weights`` maps matcher identifiers to non-negative aggregation
    weights; a matcher with weight zero is skipped entirely.  The
    ``stopwords`` set feeds token-level similarity when
    ``stopwords_enabled`` is true.
    """

    weights: "Mapping[str, float]" = field(
        default_factory=lambda: {LEXICAL: 1.0, SEMANTIC: 1.0, STRUCTURAL: 1.0, CROSS_TYPE: 1.0}
    )
    threshold: float = DEFAULT_THRESHOLD
    cardinality: Cardinality = Cardinality.ONE_TO_ONE
    cross_type_enabled: bool = True
    structural_alpha: float = DEFAULT_STRUCTURAL_ALPHA
    structural_rounds: int = DEFAULT_STRUCTURAL_ROUNDS
    stopwords_enabled: bool = False
    stopwords: "frozenset[str]" = frozenset()
    pivot_lang: str = "en"

    def __post_init__(self) -> None:
        for name, weight in self.weights.items():
            if weight < 0:
                raise MatchError(f"negative weight for matcher {name!r}: {weight}")
        if not 0.0 <= self.threshold <= 1.0:
            raise MatchError(f"threshold out of range: {self.threshold}")
        if not 0.0 <= self.structural_alpha <= 1.0:
            raise MatchError(f"structural alpha out of range: {self.structural_alpha}")
        if self.structural_rounds < 0:
            raise MatchError(f"structural rounds must be non-negative: {self.structural_rounds}")

    def active_stopwords(self) -> "frozenset[str]":
        return self.stopwords if self.stopwords_enabled else frozenset()

    def weight_of(self, producer: str) -> float:
        if producer not in self.weights:
            raise MatchError(f"no aggregation weight configured for matcher {producer!r}")
        return self.weights[producer]


@dataclass(frozen=True)
class CandidatePair:
    """An ordered entity pair, left from the first ontology."""

    left: Iri
    right: Iri
    kind_left: EntityKind
    kind_right: EntityKind

    @property
    def same_kind(self) -> bool:
        return self.kind_left == self.kind_right


@dataclass(frozen=True)
class SimilarityMatrix:
    """Sparse pair scores from one matcher; missing pairs score zero."""

    producer: str
    scores: "Mapping[CandidatePair, float]"

    def __post_init__(self) -> None:
        for pair, score in self.scores.items():
            if not 0.0 <= score <= 1.0:
                raise MatchError(
                    f"{self.producer} produced an out-of-range score for "
                    f"({pair.left}, {pair.right}): {score}"
                )

    def get(self, pair: CandidatePair) -> float:
        return self.scores.get(pair, 0.0)

    def __len__(self) -> int:
        return len(self.scores)


_FOLD_DROP = str.maketrans("", "", "_- ")


def _fold(text: str) -> str:
    return text.lower().translate(_FOLD_DROP)


def levenshtein_sim(a: str, b: str) -> float:
    """Edit-distance similarity on case- and separator-folded strings.

    Both strings are lowercased and stripped of underscores, hyphens,
    and spaces before comparison; the similarity is
    ``1 - distance / max(len)``.  Two strings that fold to empty are
    identical, hence 1.0.
    """
    fa, fb = _fold(a), _fold(b)
    if not fa and not fb:
        return 1.0
    if not fa or not fb:
        return 0.0
    if len(fa) < len(fb):
        fa, fb = fb, fa
    previous = list(range(len(fb) + 1))
    for i, ca in enumerate(fa, start=1):
        current = [i]
        for j, cb in enumerate(fb, start=1):
            cost = 0 if ca == cb else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return 1.0 - previous[-1] / max(len(fa), len(fb))


def token_jaccard_sim(
    a_tokens: Sequence[str],
    b_tokens: Sequence[str],
    stopwords: "frozenset[str]" = frozenset(),
) -> float:
    """Jaccard similarity of two token sets after stopword removal.

    Two sets that are both empty after filtering score 0.0.
    """
    a_set = {t for t in a_tokens if t not in stopwords}
    b_set = {t for t in b_tokens if t not in stopwords}
    union = a_set | b_set
    if not union:
        return 0.0
    return len(a_set & b_set) / len(union)


@dataclass(frozen=True)
class _LabelView:
    """Preprocessed pivot label: raw text plus its filtered token set."""

    text: str
    tokens: "frozenset[str]"


def _pivot_views(entity: Entity, cfg: MatchConfig) -> "tuple[_LabelView, ...]":
    stopwords = cfg.active_stopwords()
    views = []
    for label in entity.labels:
        if label.lang != cfg.pivot_lang:
            continue
        tokens = frozenset(t for t in tokenize(label.text) if t not in stopwords)
        views.append(_LabelView(label.text, tokens))
    if not views:
        raise MatchError(
            f"entity {entity.iri} has no {cfg.pivot_lang!r} label; translate first"
        )
    return tuple(views)


def _lexical_label_score(a: _LabelView, b: _LabelView) -> float:
    return max(levenshtein_sim(a.text, b.text), token_jaccard_sim(a.tokens, b.tokens))


def _pairs_of_kind(
    onto1: Ontology, onto2: Ontology, kind: EntityKind
) -> "Iterable[tuple[Entity, Entity]]":
    lefts = onto1.entities_of_kind(kind)
    rights = onto2.entities_of_kind(kind)
    for left in lefts:
        for right in rights:
            yield left, right


def _view_index(
    entities: Iterable[Entity], cfg: MatchConfig
) -> "dict[Iri, tuple[_LabelView, ...]]":
    return {entity.iri: _pivot_views(entity, cfg) for entity in entities}


def lexical_matcher(onto1: Ontology, onto2: Ontology, cfg: MatchConfig) -> SimilarityMatrix:
    """Score same-kind pairs by their best label-to-label string match.

    Each pair scores the maximum over all pivot-label combinations of
    the larger of edit-distance similarity and token Jaccard.
    """
    views1 = _view_index(onto1.entities.values(), cfg)
    views2 = _view_index(onto2.entities.values(), cfg)
    scores: "dict[CandidatePair, float]" = {}
    for kind in EntityKind:
        for left, right in _pairs_of_kind(onto1, onto2, kind):
            best = max(
                _lexical_label_score(a, b)
                for a in views1[left.iri]
                for b in views2[right.iri]
            )
            if best > 0.0:
                scores[CandidatePair(left.iri, right.iri, kind, kind)] = best
    return SimilarityMatrix(LEXICAL, scores)


def _expansion_overlap(
    a_exp: Sequence["frozenset[str]"], b_exp: Sequence["frozenset[str]"]
) -> int:
    """Size of a maximum matching between tokens with intersecting expansions."""
    matched_to: "list[Optional[int]]" = [None] * len(b_exp)

    def assign(i: int, visited: "set[int]") -> bool:
        for j in range(len(b_exp)):
            if j in visited or not (a_exp[i] & b_exp[j]):
                continue
            visited.add(j)
            previous = matched_to[j]
            if previous is None or assign(previous, visited):
                matched_to[j] = i
                return True
        return False

    count = 0
    for i in range(len(a_exp)):
        if assign(i, set()):
            count += 1
    return count


def _semantic_label_score(a: _LabelView, b: _LabelView, lexicon: SynonymLexicon) -> float:
    a_tokens = sorted(a.tokens)
    b_tokens = sorted(b.tokens)
    if not a_tokens and not b_tokens:
        return 0.0
    a_exp = [lexicon.expand(t) for t in a_tokens]
    b_exp = [lexicon.expand(t) for t in b_tokens]
    matched = _expansion_overlap(a_exp, b_exp)
    union = len(a_tokens) + len(b_tokens) - matched
    return matched / union if union else 0.0


def semantic_matcher(
    onto1: Ontology, onto2: Ontology, cfg: MatchConfig, lexicon: SynonymLexicon
) -> SimilarityMatrix:
    """Token Jaccard where tokens count as equal when their synonym
    expansions intersect; overlap is a maximum one-to-one token matching."""
    views1 = _view_index(onto1.entities.values(), cfg)
    views2 = _view_index(onto2.entities.values(), cfg)
    scores: "dict[CandidatePair, float]" = {}
    for kind in EntityKind:
        for left, right in _pairs_of_kind(onto1, onto2, kind):
            best = max(
                _semantic_label_score(a, b, lexicon)
                for a in views1[left.iri]
                for b in views2[right.iri]
            )
            if best > 0.0:
                scores[CandidatePair(left.iri, right.iri, kind, kind)] = best
    return SimilarityMatrix(SEMANTIC, scores)


def _slot_boost(
    left_slot: "tuple[Iri, ...]",
    right_slot: "tuple[Iri, ...]",
    current: "Mapping[tuple[Iri, Iri], float]",
    fallback: float,
) -> Optional[float]:
    """Boost contribution of one context slot, or None when both sides are empty.

    A slot populated on exactly one side contributes the pair's current
    score unchanged; a slot populated on both sides contributes the best
    current score among its member pairs.
    """
    if not left_slot and not right_slot:
        return None
    if not left_slot or not right_slot:
        return fallback
    return max(current.get((l, r), 0.0) for l in left_slot for r in right_slot)


def structural_matcher(
    seed: SimilarityMatrix,
    onto1: Ontology,
    onto2: Ontology,
    cfg: MatchConfig,
) -> SimilarityMatrix:
    """Propagate seed similarities through neighborhood structure.

    Runs ``structural_rounds`` simultaneous update rounds over every
    same-kind pair.  Each round recomputes

        s'(p) = (1 - alpha) * s(p) + alpha * boost(p)

    where the boost averages per-slot contributions over the five
    context slots (superclasses, subclasses, domains, ranges, members);
    slots empty on both sides are left out of the average, and a pair
    with no populated slot anywhere keeps its current score as boost.
    """
    contexts1 = all_contexts(onto1)
    contexts2 = all_contexts(onto2)
    pairs: "list[CandidatePair]" = []
    current: "dict[tuple[Iri, Iri], float]" = {}
    for kind in EntityKind:
        for left, right in _pairs_of_kind(onto1, onto2, kind):
            pairs.append(CandidatePair(left.iri, right.iri, kind, kind))
            current[(left.iri, right.iri)] = seed.get(pairs[-1])

    alpha = cfg.structural_alpha
    for _ in range(cfg.structural_rounds):
        if alpha == 0.0:
            break
        updated: "dict[tuple[Iri, Iri], float]" = {}
        for pair in pairs:
            key = (pair.left, pair.right)
            score = current[key]
            slots1 = contexts1[pair.left].slots()
            slots2 = contexts2[pair.right].slots()
            contributions = [
                boost
                for left_slot, right_slot in zip(slots1, slots2)
                if (boost := _slot_boost(left_slot, right_slot, current, score)) is not None
            ]
            boost = sum(contributions) / len(contributions) if contributions else score
            updated[key] = min(1.0, max(0.0, (1.0 - alpha) * score + alpha * boost))
        current = updated

    scores = {
        pair: current[(pair.left, pair.right)]
        for pair in pairs
        if current[(pair.left, pair.right)] > 0.0
    }
    return SimilarityMatrix(STRUCTURAL, scores)


def cross_type_matcher(
    onto1: Ontology, onto2: Ontology, cfg: MatchConfig, lexicon: SynonymLexicon
) -> SimilarityMatrix:
    """Compare classes against named individuals across the ontologies.

    Scores the two directions (class left vs. individual right and the
    reverse) with the better of the lexical and semantic label scores.
    """
    crossable = (EntityKind.CLASS, EntityKind.NAMED_INDIVIDUAL)
    views1 = _view_index(
        (e for kind in crossable for e in onto1.entities_of_kind(kind)), cfg
    )
    views2 = _view_index(
        (e for kind in crossable for e in onto2.entities_of_kind(kind)), cfg
    )
    scores: "dict[CandidatePair, float]" = {}
    kind_pairs = (
        (EntityKind.CLASS, EntityKind.NAMED_INDIVIDUAL),
        (EntityKind.NAMED_INDIVIDUAL, EntityKind.CLASS),
    )
    for kind_left, kind_right in kind_pairs:
        for left in onto1.entities_of_kind(kind_left):
            for right in onto2.entities_of_kind(kind_right):
                best = max(
                    max(
                        _lexical_label_score(a, b),
                        _semantic_label_score(a, b, lexicon),
                    )
                    for a in views1[left.iri]
                    for b in views2[right.iri]
                )
                if best > 0.0:
                    pair = CandidatePair(left.iri, right.iri, kind_left, kind_right)
                    scores[pair] = best
    return SimilarityMatrix(CROSS_TYPE, scores)


def _applies(producer: str, pair: CandidatePair) -> bool:
    if producer in _SAME_KIND_PRODUCERS:
        return pair.same_kind
    if producer in _CROSS_KIND_PRODUCERS:
        return not pair.same_kind
    return True


def aggregate(matrices: Sequence[SimilarityMatrix], cfg: MatchConfig) -> SimilarityMatrix:
    """Combine matcher outputs into one weighted-average matrix.

    Each pair averages only the matrices applicable to its kind
    combination (same-kind matchers for same-kind pairs, the cross-type
    matcher for cross-kind pairs; unrecognized producers apply to all),
    weighting by the configured matcher weights.  A matrix that did not
    score a pair contributes zero.

    Raises:
        MatchError: when a matrix's producer has no configured weight.
    """
    for matrix in matrices:
        cfg.weight_of(matrix.producer)

    pairs: "set[CandidatePair]" = set()
    for matrix in matrices:
        pairs.update(matrix.scores)

    combined: "dict[CandidatePair, float]" = {}
    for pair in pairs:
        total_weight = 0.0
        total_score = 0.0
        for matrix in matrices:
            if not _applies(matrix.producer, pair):
                continue
            weight = cfg.weight_of(matrix.producer)
            total_weight += weight
            total_score += weight * matrix.get(pair)
        if total_weight > 0.0 and total_score > 0.0:
            combined[pair] = total_score / total_weight
    return SimilarityMatrix("aggregate", combined)


def extract_alignment(
    matrix: SimilarityMatrix,
    onto1: Ontology,
    onto2: Ontology,
    cfg: MatchConfig,
) -> Alignment:
    """Select final correspondences from an aggregated matrix.

    Pairs at or above the threshold are ordered by descending score with
    ties broken by entity IRIs; under one-to-one cardinality a greedy
    sweep keeps each endpoint at most once.  Same-kind pairs become
    equivalences, cross-kind pairs become cross-type correspondences.
    """
    survivors = [
        (pair, score)
        for pair, score in matrix.scores.items()
        if score >= cfg.threshold
    ]
    survivors.sort(key=lambda item: (-item[1], item[0].left, item[0].right))

    chosen: "list[Correspondence]" = []
    used_left: "set[Iri]" = set()
    used_right: "set[Iri]" = set()
    one_to_one = cfg.cardinality == Cardinality.ONE_TO_ONE
    for pair, score in survivors:
        if one_to_one and (pair.left in used_left or pair.right in used_right):
            continue
        relation = Relation.EQUIVALENCE if pair.same_kind else Relation.CROSS_TYPE
        chosen.append(Correspondence(len(chosen), pair.left, pair.right, relation, score))
        used_left.add(pair.left)
        used_right.add(pair.right)
    ref1 = str(onto1.iri) if onto1.iri is not None else None
    ref2 = str(onto2.iri) if onto2.iri is not None else None
    return make_alignment(ref1, ref2, chosen, cfg)
