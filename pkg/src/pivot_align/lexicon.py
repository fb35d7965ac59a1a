"""Label tokenization and glossary-based translation to a pivot language.

Translation is file-driven and deterministic: a label is first looked
up as a whole multiword term, then token by token.  Entries with
several senses are disambiguated by cue overlap with the entity's
one-hop neighborhood; ties fall back to glossary file order.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import LexiconError
from .model import Entity, Iri, Label, Ontology, all_contexts, make_ontology

TokenSequence = tuple[str, ...]

_SEPARATORS_RE = re.compile(r"[\s_\-]+")


def tokenize(name: str) -> TokenSequence:
    """Split a term into lowercase tokens.

    Boundaries are underscores, hyphens, whitespace, and lower-to-upper
    camel-case transitions.  Digits stay attached to adjacent letters.

    Raises:
        ValueError: if the name is empty.
    """
    if not name:
        raise ValueError("cannot tokenize an empty name")
    tokens: list[str] = []
    for part in _SEPARATORS_RE.split(name):
        if not part:
            continue
        start = 0
        for i in range(1, len(part)):
            if part[i - 1].islower() and part[i].isupper():
                tokens.append(part[start:i].lower())
                start = i
        tokens.append(part[start:].lower())
    return tuple(tokens)


@dataclass(frozen=True)
class GlossarySense:
    """One translation option: a pivot-language term plus cue tokens."""

    target: str
    cues: frozenset = frozenset()

    def __post_init__(self) -> None:
        if not self.target:
            raise LexiconError("glossary sense target must be non-empty")


@dataclass(frozen=True)
class Glossary:
    """Sense-ordered term mappings for one source language.

    Entry keys are lowercase source terms (multiword keys use single
    spaces); the sense tuple preserves file order, which is the
    disambiguation tie-break priority.
    """

    source_lang: str
    target_lang: str
    entries: Mapping[str, "tuple[GlossarySense, ...]"]

    def __post_init__(self) -> None:
        for term, senses in self.entries.items():
            if term != term.lower():
                raise LexiconError(f"glossary keys must be lowercase: {term!r}")
            if not senses:
                raise LexiconError(f"glossary entry without senses: {term!r}")

    def lookup(self, term: str) -> "tuple[GlossarySense, ...] | None":
        return self.entries.get(term)


@dataclass(frozen=True)
class SynonymLexicon:
    """Pivot-language synonym sets; tokens inside one set are equivalent."""

    sets: "tuple[frozenset, ...]" = ()
    _index: Mapping[str, frozenset] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        index: dict[str, set] = {}
        for group in self.sets:
            if len(group) < 2:
                raise LexiconError("synonym sets need at least two members")
            for token in group:
                index.setdefault(token, set()).update(group)
        object.__setattr__(
            self, "_index", {tok: frozenset(grp) for tok, grp in index.items()}
        )

    def expand(self, token: str) -> frozenset:
        """The union of all synonym sets containing the token, plus itself."""
        return self._index.get(token, frozenset()) | {token}


def expand_synonyms(tokens: Sequence[str], lexicon: SynonymLexicon) -> "tuple[frozenset, ...]":
    """Expansion set for each token, in token order."""
    return tuple(lexicon.expand(token) for token in tokens)


@dataclass(frozen=True)
class ResourceBundle:
    """Everything translation needs: glossaries per source language,
    a synonym lexicon, and a stopword set, all targeting one pivot."""

    glossaries: Mapping[str, Glossary]
    synonyms: SynonymLexicon = SynonymLexicon()
    stopwords: frozenset = frozenset()
    target_lang: str = "en"

    def __post_init__(self) -> None:
        for lang, glossary in self.glossaries.items():
            if glossary.source_lang != lang:
                raise LexiconError(
                    f"glossary keyed as {lang!r} declares source {glossary.source_lang!r}"
                )
            if glossary.target_lang != self.target_lang:
                raise LexiconError(
                    f"glossary {lang!r} targets {glossary.target_lang!r}, "
                    f"bundle targets {self.target_lang!r}"
                )


class TranslationStatus(Enum):
    TRANSLATED = "Translated"
    PASSTHROUGH = "Passthrough"
    DISAMBIGUATED = "Disambiguated"


@dataclass(frozen=True)
class TranslationOutcome:
    """Result of translating one label: the original, the emitted pivot
    label first in ``translated`` with logged alternatives after it, and
    a status.  ``Disambiguated`` means some consulted entry had at least
    two senses."""

    original: Label
    translated: "tuple[Label, ...]"
    status: TranslationStatus

    @property
    def primary(self) -> Label:
        return self.translated[0]


def _pick_sense(
    senses: "tuple[GlossarySense, ...]", context: Sequence[str]
) -> GlossarySense:
    """Highest cue overlap with the context wins; ties keep file order."""
    if len(senses) == 1:
        return senses[0]
    context_tokens = set(context)
    best = senses[0]
    best_overlap = len(best.cues & context_tokens)
    for sense in senses[1:]:
        overlap = len(sense.cues & context_tokens)
        if overlap > best_overlap:
            best, best_overlap = sense, overlap
    return best


def _target_pieces(target: str) -> "list[str]":
    return target.split()


def _glossaries_for(label: Label, bundle: ResourceBundle) -> "list[Glossary]":
    if label.lang is None:
        return [bundle.glossaries[lang] for lang in sorted(bundle.glossaries)]
    glossary = bundle.glossaries.get(label.lang)
    if glossary is None:
        raise LexiconError(f"no glossary for language {label.lang!r}")
    return [glossary]


def translate_label(
    label: Label, bundle: ResourceBundle, context: Sequence[str] = ()
) -> TranslationOutcome:
    """Translate one label into the bundle's pivot language.

    The full multiword term is tried first, then each token; tokens with
    no entry pass through unchanged.  When nothing matched at all the
    original text is kept verbatim and the outcome is ``Passthrough``.

    Args:
        label: the source label.  A label already in the pivot language
            passes through without consulting any glossary.
        bundle: glossaries and lexicons; a glossary for ``label.lang``
            must exist (untagged labels try all glossaries in language
            order).
        context: lowercase tokens from the entity's one-hop neighbors,
            used for cue-based sense disambiguation.

    Raises:
        LexiconError: when the label carries a language the bundle has
            no glossary for.
    """
    pivot = bundle.target_lang
    if label.lang == pivot:
        return TranslationOutcome(
            original=label,
            translated=(Label(label.text, pivot),),
            status=TranslationStatus.PASSTHROUGH,
        )

    glossaries = _glossaries_for(label, bundle)
    tokens = tokenize(label.text)

    # Whole-term lookup takes precedence over per-token translation.
    full_term = " ".join(tokens)
    for glossary in glossaries:
        senses = glossary.lookup(full_term)
        if senses:
            chosen = _pick_sense(senses, context)
            primary = Label("_".join(_target_pieces(chosen.target)), pivot)
            alternatives = tuple(
                Label("_".join(_target_pieces(s.target)), pivot)
                for s in senses
                if s is not chosen
            )
            status = (
                TranslationStatus.DISAMBIGUATED
                if len(senses) > 1
                else TranslationStatus.TRANSLATED
            )
            return TranslationOutcome(label, (primary,) + alternatives, status)

    pieces: list[str] = []
    piece_spans: list[tuple[int, int]] = []
    ambiguous: list[tuple[int, int, "tuple[GlossarySense, ...]"]] = []
    any_hit = False
    for index, token in enumerate(tokens):
        senses = None
        for glossary in glossaries:
            senses = glossary.lookup(token)
            if senses:
                break
        if not senses:
            piece_spans.append((len(pieces), 1))
            pieces.append(token)
            continue
        any_hit = True
        chosen = _pick_sense(senses, context)
        chosen_pieces = _target_pieces(chosen.target)
        piece_spans.append((len(pieces), len(chosen_pieces)))
        pieces.extend(chosen_pieces)
        if len(senses) > 1:
            ambiguous.append((index, len(ambiguous), senses))

    if not any_hit:
        return TranslationOutcome(
            original=label,
            translated=(Label(label.text, pivot),),
            status=TranslationStatus.PASSTHROUGH,
        )

    primary_text = "_".join(pieces)
    alternatives: list[Label] = []
    seen = {primary_text}
    for index, _, senses in ambiguous:
        chosen = _pick_sense(senses, context)
        start, length = piece_spans[index]
        for sense in senses:
            if sense is chosen:
                continue
            variant = pieces[:start] + _target_pieces(sense.target) + pieces[start + length :]
            text = "_".join(variant)
            if text not in seen:
                seen.add(text)
                alternatives.append(Label(text, pivot))

    status = (
        TranslationStatus.DISAMBIGUATED if ambiguous else TranslationStatus.TRANSLATED
    )
    return TranslationOutcome(label, (Label(primary_text, pivot),) + tuple(alternatives), status)


def _context_tokens(ontology: Ontology, neighbors: Iterable[Iri]) -> "list[str]":
    tokens: list[str] = []
    for iri in neighbors:
        for label in ontology.entities[iri].labels:
            tokens.extend(tokenize(label.text))
    return tokens


def _source_label(entity: Entity, bundle: ResourceBundle) -> Label:
    """Best source label: an existing pivot label, then a language some
    glossary covers, then an untagged label, then the IRI fragment."""
    pivot_label = entity.label_for(bundle.target_lang)
    if pivot_label is not None:
        return pivot_label
    covered = sorted(
        (label for label in entity.labels if label.lang in bundle.glossaries),
        key=lambda l: l.lang or "",
    )
    if covered:
        return covered[0]
    untagged = entity.label_for(None)
    if untagged is not None:
        return untagged
    if entity.labels:
        # Labels exist but none is translatable: surface the language gap.
        langs = sorted({label.lang for label in entity.labels if label.lang})
        raise LexiconError(
            f"no glossary covers the labels of {entity.iri} (languages: {', '.join(langs)})"
        )
    return Label(entity.iri.fragment, None)


def translate_ontology(
    ontology: Ontology, bundle: ResourceBundle
) -> "tuple[Ontology, dict[Iri, TranslationOutcome]]":
    """Add one pivot-language label to every entity, preserving structure.

    IRIs, entity kinds, and axioms are untouched; source labels are
    retained.  Any prior pivot-language label is replaced by the fresh
    translation, which keeps the operation idempotent for ontologies
    already labeled in the pivot language.

    Returns:
        The translated ontology and a per-entity outcome log in IRI order.
    """
    contexts = all_contexts(ontology)
    outcomes: dict[Iri, TranslationOutcome] = {}
    entities: list[Entity] = []
    for iri in sorted(ontology.entities):
        entity = ontology.entities[iri]
        source = _source_label(entity, bundle)
        context = _context_tokens(ontology, contexts[iri].neighbors())
        outcome = translate_label(source, bundle, context)
        outcomes[iri] = outcome
        kept = tuple(l for l in entity.labels if l.lang != bundle.target_lang)
        entities.append(Entity(entity.iri, entity.kind, kept + (outcome.primary,)))
    translated = make_ontology(
        entities,
        ontology.axioms,
        iri=ontology.iri,
        prefixes=ontology.prefixes,
        warnings=ontology.warnings,
    )
    return translated, outcomes


def _strip_comments(lines: Iterable[str]) -> "list[tuple[int, str]]":
    kept = []
    for number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        kept.append((number, line))
    return kept


def load_glossary(path, source_lang: str, target_lang: str) -> Glossary:
    """Load a glossary TSV: ``source<TAB>target<TAB>cue1,cue2,...``.

    Line order defines sense priority.  Repeated source terms add
    further senses to the same entry.  ``#`` lines and blank lines are
    ignored.
    """
    entries: dict[str, list[GlossarySense]] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            rows = _strip_comments(handle)
    except OSError as exc:
        raise LexiconError(f"cannot read glossary {path}: {exc}") from exc
    for number, line in rows:
        columns = line.split("\t")
        if len(columns) < 2 or len(columns) > 3:
            raise LexiconError(
                f"{path}:{number}: expected 2 or 3 tab-separated columns"
            )
        term = columns[0].strip().lower()
        target = columns[1].strip()
        if not term or not target:
            raise LexiconError(f"{path}:{number}: empty source or target term")
        cues: frozenset = frozenset()
        if len(columns) == 3:
            cues = frozenset(
                cue.strip().lower() for cue in columns[2].split(",") if cue.strip()
            )
        entries.setdefault(term, []).append(GlossarySense(target, cues))
    return Glossary(
        source_lang=source_lang,
        target_lang=target_lang,
        entries={term: tuple(senses) for term, senses in entries.items()},
    )


def load_synonyms(path) -> SynonymLexicon:
    """Load synonym sets: one comma-separated set per line."""
    try:
        with open(path, encoding="utf-8") as handle:
            rows = _strip_comments(handle)
    except OSError as exc:
        raise LexiconError(f"cannot read synonym lexicon {path}: {exc}") from exc
    sets = []
    for number, line in rows:
        members = frozenset(tok.strip().lower() for tok in line.split(",") if tok.strip())
        if len(members) < 2:
            raise LexiconError(f"{path}:{number}: synonym sets need at least two members")
        sets.append(members)
    return SynonymLexicon(tuple(sets))


def load_stopwords(path) -> frozenset:
    """Load a stopword file: one token per line."""
    try:
        with open(path, encoding="utf-8") as handle:
            rows = _strip_comments(handle)
    except OSError as exc:
        raise LexiconError(f"cannot read stopword list {path}: {exc}") from exc
    return frozenset(line.strip().lower() for _, line in rows)
