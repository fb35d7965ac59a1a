"""Multilingual ontology matching through a pivot language.

Parse lightweight Turtle ontologies, translate their labels into a
pivot language with file-based glossaries, run a hybrid matcher stack,
and extract, compose, and evaluate alignments.
"""

from .alignment import (
    Alignment,
    Cardinality,
    Correspondence,
    Relation,
    compose_alignments,
    make_alignment,
    merge_input_alignment,
    parse_alignment_file,
    parse_alignment_tsv,
    serialize_alignment_tsv,
)
from .config import (
    PipelineConfig,
    apply_overrides,
    load_config,
    load_role_bindings,
    parse_props,
)
from .errors import (
    AlignmentError,
    AlignmentFormatError,
    ConfigError,
    EvaluationError,
    LexiconError,
    MatchError,
    OntologyError,
    OntologyLoadError,
    PivotAlignError,
    StageError,
    TurtleParseError,
)
from .evaluation import (
    CompetencyAnswer,
    EvalReport,
    RoleBindings,
    competency_check,
    evaluate,
)
from .lexicon import (
    Glossary,
    GlossarySense,
    ResourceBundle,
    SynonymLexicon,
    TranslationOutcome,
    TranslationStatus,
    load_glossary,
    load_stopwords,
    load_synonyms,
    tokenize,
    translate_label,
    translate_ontology,
)
from .matchers import (
    CandidatePair,
    MatchConfig,
    SimilarityMatrix,
    aggregate,
    cross_type_matcher,
    extract_alignment,
    levenshtein_sim,
    lexical_matcher,
    semantic_matcher,
    structural_matcher,
    token_jaccard_sim,
)
from .model import (
    ClassAssertion,
    Domain,
    Entity,
    EntityContext,
    EntityKind,
    Iri,
    Label,
    Literal,
    Ontology,
    OntologyMetrics,
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
from .pipeline import PipelineReport, attach_evaluation, load_bundle, pivot_match
from .turtle import parse_turtle, parse_turtle_file, serialize_turtle

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "AlignmentError",
    "AlignmentFormatError",
    "CandidatePair",
    "Cardinality",
    "ClassAssertion",
    "CompetencyAnswer",
    "ConfigError",
    "Correspondence",
    "Domain",
    "Entity",
    "EntityContext",
    "EntityKind",
    "EvalReport",
    "EvaluationError",
    "Glossary",
    "GlossarySense",
    "Iri",
    "Label",
    "LexiconError",
    "Literal",
    "MatchConfig",
    "MatchError",
    "Ontology",
    "OntologyError",
    "OntologyLoadError",
    "OntologyMetrics",
    "PipelineConfig",
    "PipelineReport",
    "PivotAlignError",
    "PropertyAssertion",
    "Range",
    "Relation",
    "ResourceBundle",
    "RoleBindings",
    "SimilarityMatrix",
    "SizeClass",
    "StageError",
    "StructureClass",
    "SubClassOf",
    "SubPropertyOf",
    "SynonymLexicon",
    "TranslationOutcome",
    "TranslationStatus",
    "TurtleParseError",
    "aggregate",
    "all_contexts",
    "apply_overrides",
    "attach_evaluation",
    "classify_size",
    "competency_check",
    "compose_alignments",
    "compute_metrics",
    "cross_type_matcher",
    "evaluate",
    "extract_alignment",
    "levenshtein_sim",
    "lexical_matcher",
    "load_bundle",
    "load_config",
    "load_glossary",
    "load_role_bindings",
    "load_stopwords",
    "load_synonyms",
    "make_alignment",
    "make_ontology",
    "merge_input_alignment",
    "parse_alignment_file",
    "parse_alignment_tsv",
    "parse_props",
    "parse_turtle",
    "parse_turtle_file",
    "pivot_match",
    "semantic_matcher",
    "serialize_alignment_tsv",
    "serialize_turtle",
    "structural_context",
    "structural_matcher",
    "token_jaccard_sim",
    "tokenize",
    "translate_label",
    "translate_ontology",
]
