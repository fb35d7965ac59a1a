"""Flat key=value configuration for the matching pipeline.

The on-disk grammar is one ``key=value`` pair per line with ``#``
comments; keys use dotted paths (``match.threshold=0.8``).  Relative
paths are resolved against the config file's directory.

Recognized keys::

    pivot_lang              pivot language tag (default "en")
    glossary.<lang>         glossary TSV for one source language
    synonyms                synonym lexicon file
    stopwords               stopword file
    match.threshold         extraction threshold in [0, 1]
    match.cardinality       one-to-one | many-to-many
    match.crosstype         true | false
    match.stopwords_enabled true | false
    match.structural_alpha  propagation weight in [0, 1]
    match.structural_rounds non-negative round count
    match.weight.<id>       aggregation weight per matcher id
    output.alignment        default output path for alignments
"""

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Optional

from .alignment import Cardinality
from .errors import ConfigError, MatchError
from .evaluation import RoleBindings
from .matchers import CROSS_TYPE, LEXICAL, SEMANTIC, STRUCTURAL, MatchConfig
from .model import Iri

_MATCHER_IDS = (LEXICAL, SEMANTIC, STRUCTURAL, CROSS_TYPE)


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved pipeline settings: resource paths plus matcher knobs."""

    pivot_lang: str = "en"
    glossary_paths: "Mapping[str, Path]" = field(default_factory=dict)
    synonyms_path: Optional[Path] = None
    stopwords_path: Optional[Path] = None
    match: MatchConfig = field(default_factory=MatchConfig)
    output_alignment: Optional[Path] = None


def parse_props(text: str, origin: str = "<config>") -> "dict[str, str]":
    """Parse ``key=value`` lines into an ordered mapping.

    Raises:
        ConfigError: on a line without ``=``, an empty key or value, or
            a repeated key.
    """
    props: "dict[str, str]" = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{number}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"{origin}:{number}: empty key")
        if not value:
            raise ConfigError(f"{origin}:{number}: empty value for {key!r}")
        if key in props:
            raise ConfigError(f"{origin}:{number}: repeated key {key!r}")
        props[key] = value
    return props


def _parse_bool(key: str, value: str) -> bool:
    if value == "true":
        return True
    if value == "false":
        return False
    raise ConfigError(f"{key}: expected true or false, got {value!r}")


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {value!r}") from None


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def _parse_cardinality(key: str, value: str) -> Cardinality:
    for member in Cardinality:
        if member.value == value:
            return member
    choices = ", ".join(m.value for m in Cardinality)
    raise ConfigError(f"{key}: expected one of {choices}, got {value!r}")


def config_from_props(
    props: "Mapping[str, str]", base_dir: Optional[Path] = None
) -> PipelineConfig:
    """Build a PipelineConfig from parsed properties.

    Raises:
        ConfigError: on unknown keys or malformed values.
    """
    base = Path(base_dir) if base_dir is not None else Path(".")

    def resolve(value: str) -> Path:
        path = Path(value)
        return path if path.is_absolute() else base / path

    pivot_lang = "en"
    glossaries: "dict[str, Path]" = {}
    synonyms: Optional[Path] = None
    stopwords: Optional[Path] = None
    output_alignment: Optional[Path] = None
    match_kwargs: dict = {}
    weights = dict(MatchConfig().weights)

    for key, value in props.items():
        if key == "pivot_lang":
            pivot_lang = value
        elif key.startswith("glossary."):
            lang = key[len("glossary.") :]
            if not lang:
                raise ConfigError(f"{key}: missing language tag")
            glossaries[lang] = resolve(value)
        elif key == "synonyms":
            synonyms = resolve(value)
        elif key == "stopwords":
            stopwords = resolve(value)
        elif key == "output.alignment":
            output_alignment = resolve(value)
        elif key == "match.threshold":
            match_kwargs["threshold"] = _parse_float(key, value)
        elif key == "match.cardinality":
            match_kwargs["cardinality"] = _parse_cardinality(key, value)
        elif key == "match.crosstype":
            match_kwargs["cross_type_enabled"] = _parse_bool(key, value)
        elif key == "match.stopwords_enabled":
            match_kwargs["stopwords_enabled"] = _parse_bool(key, value)
        elif key == "match.structural_alpha":
            match_kwargs["structural_alpha"] = _parse_float(key, value)
        elif key == "match.structural_rounds":
            match_kwargs["structural_rounds"] = _parse_int(key, value)
        elif key.startswith("match.weight."):
            matcher = key[len("match.weight.") :]
            if matcher not in _MATCHER_IDS:
                known = ", ".join(_MATCHER_IDS)
                raise ConfigError(f"{key}: unknown matcher id (known: {known})")
            weights[matcher] = _parse_float(key, value)
        else:
            raise ConfigError(f"unknown configuration key {key!r}")

    try:
        match = MatchConfig(weights=weights, pivot_lang=pivot_lang, **match_kwargs)
    except MatchError as exc:
        raise ConfigError(str(exc)) from None
    return PipelineConfig(
        pivot_lang=pivot_lang,
        glossary_paths=glossaries,
        synonyms_path=synonyms,
        stopwords_path=stopwords,
        match=match,
        output_alignment=output_alignment,
    )


def load_config(path) -> PipelineConfig:
    """Read and parse a config file; relative paths resolve against it."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    props = parse_props(text, origin=str(path))
    return config_from_props(props, base_dir=path.parent)


def apply_overrides(cfg: PipelineConfig, overrides: "Mapping[str, str]") -> PipelineConfig:
    """Apply request-scoped overrides limited to matcher knobs.

    Only ``match.*`` keys and ``pivot_lang`` may be overridden; file
    paths are part of the host configuration.

    Raises:
        ConfigError: on a non-overridable or unknown key, or a
            malformed value.
    """
    weights = dict(cfg.match.weights)
    changes: dict = {}
    pivot = cfg.pivot_lang
    for key, value in overrides.items():
        if key == "pivot_lang":
            pivot = value
        elif key == "match.threshold":
            changes["threshold"] = _parse_float(key, value)
        elif key == "match.cardinality":
            changes["cardinality"] = _parse_cardinality(key, value)
        elif key == "match.crosstype":
            changes["cross_type_enabled"] = _parse_bool(key, value)
        elif key == "match.stopwords_enabled":
            changes["stopwords_enabled"] = _parse_bool(key, value)
        elif key == "match.structural_alpha":
            changes["structural_alpha"] = _parse_float(key, value)
        elif key == "match.structural_rounds":
            changes["structural_rounds"] = _parse_int(key, value)
        elif key.startswith("match.weight."):
            matcher = key[len("match.weight.") :]
            if matcher not in _MATCHER_IDS:
                known = ", ".join(_MATCHER_IDS)
                raise ConfigError(f"{key}: unknown matcher id (known: {known})")
            weights[matcher] = _parse_float(key, value)
        else:
            raise ConfigError(f"key {key!r} cannot be overridden per request")
    changes["weights"] = weights
    changes["pivot_lang"] = pivot
    try:
        match = replace(cfg.match, **changes)
    except MatchError as exc:
        raise ConfigError(str(exc)) from None
    return replace(cfg, pivot_lang=pivot, match=match)


def with_match_options(
    cfg: PipelineConfig,
    threshold: Optional[float] = None,
    cardinality: Optional[Cardinality] = None,
    cross_type_enabled: Optional[bool] = None,
) -> PipelineConfig:
    """Return a config with individual matcher knobs replaced."""
    changes: dict = {}
    if threshold is not None:
        changes["threshold"] = threshold
    if cardinality is not None:
        changes["cardinality"] = cardinality
    if cross_type_enabled is not None:
        changes["cross_type_enabled"] = cross_type_enabled
    if not changes:
        return cfg
    try:
        return replace(cfg, match=replace(cfg.match, **changes))
    except MatchError as exc:
        raise ConfigError(str(exc)) from None


def add_glossary(cfg: PipelineConfig, lang: str, path) -> PipelineConfig:
    """Return a config with one more glossary path registered."""
    glossaries = dict(cfg.glossary_paths)
    glossaries[lang] = Path(path)
    return replace(cfg, glossary_paths=glossaries)


def parse_glossary_flag(value: str) -> "tuple[str, str]":
    """Split a ``--glossary`` argument into (language, path).

    Accepts ``LANG=PATH`` or a bare path whose stem is ``src_tgt``
    (e.g. ``de_en.tsv`` registers a German glossary).
    """
    if "=" in value:
        lang, _, path = value.partition("=")
        lang, path = lang.strip(), path.strip()
        if lang and path:
            return lang, path
        raise ConfigError(f"--glossary {value!r}: expected LANG=PATH")
    stem = Path(value).stem
    parts = stem.split("_")
    if len(parts) == 2 and all(parts):
        return parts[0], value
    raise ConfigError(
        f"--glossary {value!r}: cannot infer language; use LANG=PATH or a src_tgt file stem"
    )


def load_role_bindings(path) -> "tuple[RoleBindings, Iri]":
    """Read a fixture manifest mapping role names to property IRIs.

    Expected keys: ``root``, ``role.works_at``, ``role.supervisor_of``,
    ``role.sub_unit_of``.  Returns the bindings and the root IRI.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read manifest {path}: {exc}") from exc
    props = parse_props(text, origin=str(path))
    required = ("root", "role.works_at", "role.supervisor_of", "role.sub_unit_of")
    for key in required:
        if key not in props:
            raise ConfigError(f"{path}: missing manifest key {key!r}")
    extra = set(props) - set(required)
    if extra:
        raise ConfigError(f"{path}: unknown manifest keys: {', '.join(sorted(extra))}")
    try:
        bindings = RoleBindings(
            works_at=Iri(props["role.works_at"]),
            supervisor_of=Iri(props["role.supervisor_of"]),
            sub_unit_of=Iri(props["role.sub_unit_of"]),
            university_root=Iri(props["root"]),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return bindings, bindings.university_root
