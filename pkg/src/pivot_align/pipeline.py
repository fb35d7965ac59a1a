"""End-to-end orchestration: translate both ontologies to the pivot
language, run the enabled matchers, aggregate, extract, and optionally
merge a given input alignment.

Every stage failure is re-raised as a StageError tagged with the stage
name (``lexicon``, ``match``, or ``extract``) so callers can map it to
their own error surface.
"""

import time
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .alignment import Alignment, merge_input_alignment
from .config import PipelineConfig
from .errors import LexiconError, PivotAlignError, StageError
from .evaluation import EvalReport
from .lexicon import (
    ResourceBundle,
    SynonymLexicon,
    TranslationStatus,
    load_glossary,
    load_stopwords,
    load_synonyms,
    translate_ontology,
)
from .matchers import (
    CROSS_TYPE,
    LEXICAL,
    SEMANTIC,
    STRUCTURAL,
    MatchConfig,
    SimilarityMatrix,
    aggregate,
    cross_type_matcher,
    extract_alignment,
    lexical_matcher,
    semantic_matcher,
    structural_matcher,
)
from .model import Ontology, OntologyMetrics, compute_metrics


@dataclass(frozen=True)
class PipelineReport:
    """What happened during one pivot-match run.

    Translation counts map status names to entity counts and sum to
    each ontology's entity count.
    """

    stage_seconds: "Mapping[str, float]"
    translation1: "Mapping[str, int]"
    translation2: "Mapping[str, int]"
    metrics1: OntologyMetrics
    metrics2: OntologyMetrics
    correspondence_count: int
    relation_counts: "Mapping[str, int]"
    evaluation: Optional[EvalReport] = None

    def to_dict(self) -> dict:
        return {
            "stages": {name: round(secs, 6) for name, secs in self.stage_seconds.items()},
            "translation": {
                "ontology1": dict(self.translation1),
                "ontology2": dict(self.translation2),
            },
            "metrics": {
                "ontology1": self.metrics1.as_dict(),
                "ontology2": self.metrics2.as_dict(),
            },
            "alignment": {
                "correspondences": self.correspondence_count,
                "relations": dict(self.relation_counts),
            },
            "evaluation": self.evaluation.to_dict() if self.evaluation else None,
        }


def load_bundle(cfg: PipelineConfig) -> ResourceBundle:
    """Load the glossaries, synonyms, and stopwords a config points at.

    Raises:
        StageError: tagged ``lexicon`` when any resource fails to load.
    """
    try:
        glossaries = {
            lang: load_glossary(path, lang, cfg.pivot_lang)
            for lang, path in sorted(cfg.glossary_paths.items())
        }
        synonyms = (
            load_synonyms(cfg.synonyms_path)
            if cfg.synonyms_path is not None
            else SynonymLexicon(())
        )
        stopwords = (
            load_stopwords(cfg.stopwords_path)
            if cfg.stopwords_path is not None
            else frozenset()
        )
    except LexiconError as exc:
        raise StageError("lexicon", str(exc)) from exc
    return ResourceBundle(
        glossaries=glossaries,
        synonyms=synonyms,
        stopwords=stopwords,
        target_lang=cfg.pivot_lang,
    )


def _status_counts(outcomes) -> "dict[str, int]":
    counts = {status.value: 0 for status in TranslationStatus}
    for outcome in outcomes.values():
        counts[outcome.status.value] += 1
    return counts


def _effective_match_config(cfg: PipelineConfig, bundle: ResourceBundle) -> MatchConfig:
    """Fold the bundle's stopwords into the matcher config when enabled."""
    match = cfg.match
    if match.stopwords_enabled and bundle.stopwords and not match.stopwords:
        match = replace(match, stopwords=frozenset(bundle.stopwords))
    return match


class _Stopwatch:
    """Accumulates wall-clock seconds per named stage."""

    def __init__(self) -> None:
        self.seconds: "dict[str, float]" = {}

    def run(self, name: str, func):
        start = time.perf_counter()
        try:
            result = func()
        except StageError:
            raise
        except PivotAlignError as exc:
            raise StageError(name, str(exc)) from exc
        self.seconds[name] = time.perf_counter() - start
        return result


def pivot_match(
    onto1: Ontology,
    onto2: Ontology,
    bundle: ResourceBundle,
    cfg: PipelineConfig,
    input_alignment: Optional[Alignment] = None,
) -> "tuple[Alignment, PipelineReport]":
    """Translate, match, and extract an alignment between two ontologies.

    Matchers run when their aggregation weight is positive; the
    cross-type matcher additionally requires ``cross_type_enabled``.
    The structural matcher is seeded with the aggregate of the lexical
    and semantic matrices.  When an input alignment is given its
    correspondences are pinned into the result.

    Returns the alignment (referencing original IRIs) and a report.
    """
    watch = _Stopwatch()
    match_cfg = _effective_match_config(cfg, bundle)

    def translate_both():
        t1, outcomes1 = translate_ontology(onto1, bundle)
        t2, outcomes2 = translate_ontology(onto2, bundle)
        return t1, outcomes1, t2, outcomes2

    t1, outcomes1, t2, outcomes2 = watch.run("lexicon", translate_both)

    def run_matchers() -> SimilarityMatrix:
        weights = match_cfg.weights
        matrices: "list[SimilarityMatrix]" = []
        seed_parts: "list[SimilarityMatrix]" = []
        if weights.get(LEXICAL, 0.0) > 0.0:
            lexical = lexical_matcher(t1, t2, match_cfg)
            matrices.append(lexical)
            seed_parts.append(lexical)
        if weights.get(SEMANTIC, 0.0) > 0.0:
            semantic = semantic_matcher(t1, t2, match_cfg, bundle.synonyms)
            matrices.append(semantic)
            seed_parts.append(semantic)
        if weights.get(STRUCTURAL, 0.0) > 0.0:
            seed = aggregate(seed_parts, match_cfg)
            matrices.append(structural_matcher(seed, t1, t2, match_cfg))
        if match_cfg.cross_type_enabled and weights.get(CROSS_TYPE, 0.0) > 0.0:
            matrices.append(cross_type_matcher(t1, t2, match_cfg, bundle.synonyms))
        return aggregate(matrices, match_cfg)

    combined = watch.run("match", run_matchers)

    def extract() -> Alignment:
        alignment = extract_alignment(combined, t1, t2, match_cfg)
        if input_alignment is not None:
            alignment = merge_input_alignment(alignment, input_alignment)
        return alignment

    alignment = watch.run("extract", extract)

    relation_counts: "dict[str, int]" = {}
    for corr in alignment.correspondences:
        symbol = corr.relation.value
        relation_counts[symbol] = relation_counts.get(symbol, 0) + 1
    report = PipelineReport(
        stage_seconds=watch.seconds,
        translation1=_status_counts(outcomes1),
        translation2=_status_counts(outcomes2),
        metrics1=compute_metrics(onto1),
        metrics2=compute_metrics(onto2),
        correspondence_count=len(alignment),
        relation_counts=relation_counts,
    )
    return alignment, report


def attach_evaluation(report: PipelineReport, evaluation: EvalReport) -> PipelineReport:
    """Return a copy of the report with evaluation results filled in."""
    return replace(report, evaluation=evaluation)
