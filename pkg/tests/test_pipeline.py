"""End-to-end tests for the pivot matching pipeline on the bundled
fixture ontologies."""

import pytest

from pivot_align import (
    Correspondence,
    Iri,
    Relation,
    StageError,
    apply_overrides,
    evaluate,
    load_bundle,
    load_config,
    make_alignment,
    parse_alignment_file,
    parse_turtle_file,
    pivot_match,
    serialize_alignment_tsv,
)
from pivot_align.config import config_from_props

from util import FIGURE, UNI

DE = "http://matching.example/uni/de#"
AR = "http://matching.example/uni/ar#"


def uni_setup():
    cfg = load_config(UNI / "pipeline.cfg")
    bundle = load_bundle(cfg)
    onto1 = parse_turtle_file(UNI / "uni_de.ttl")
    onto2 = parse_turtle_file(UNI / "uni_ar.ttl")
    return cfg, bundle, onto1, onto2


def test_pipeline_recovers_the_reference_alignment():
    cfg, bundle, onto1, onto2 = uni_setup()
    alignment, report = pivot_match(onto1, onto2, bundle, cfg)
    reference = parse_alignment_file(UNI / "reference.tsv")
    assert alignment.keys() == reference.keys()
    scores = evaluate(alignment, reference)
    assert scores.precision == 1.0
    assert scores.recall == 1.0
    assert scores.f1 == 1.0
    assert report.correspondence_count == len(reference)
    assert alignment.onto1 == "http://matching.example/uni/de"
    assert alignment.onto2 == "http://matching.example/uni/ar"


def test_pipeline_report_counts():
    cfg, bundle, onto1, onto2 = uni_setup()
    alignment, report = pivot_match(onto1, onto2, bundle, cfg)
    # Translation status counts sum to the entity counts.
    assert sum(report.translation1.values()) == len(onto1.entities)
    assert sum(report.translation2.values()) == len(onto2.entities)
    assert report.translation1 == {"Translated": 16, "Passthrough": 3, "Disambiguated": 1}
    assert report.translation2 == {"Translated": 18, "Passthrough": 1, "Disambiguated": 0}
    assert report.metrics1.primitive_count == 20
    assert report.metrics2.primitive_count == 19
    assert report.relation_counts == {"=": 13, "~": 1}
    assert sum(report.relation_counts.values()) == report.correspondence_count
    assert set(report.stage_seconds) == {"lexicon", "match", "extract"}
    assert all(seconds >= 0 for seconds in report.stage_seconds.values())
    as_dict = report.to_dict()
    assert as_dict["alignment"]["correspondences"] == 14
    assert as_dict["metrics"]["ontology1"]["size_class"] == "small"
    assert as_dict["evaluation"] is None


def test_pipeline_cross_type_ablation_removes_only_that_pair():
    cfg, bundle, onto1, onto2 = uni_setup()
    with_cross, _ = pivot_match(onto1, onto2, bundle, cfg)
    disabled = apply_overrides(cfg, {"match.crosstype": "false"})
    without_cross, _ = pivot_match(onto1, onto2, bundle, disabled)

    cross_pair = (Iri(DE + "Dekan"), Iri(AR + "ameedWazifa"), Relation.CROSS_TYPE)
    assert cross_pair in with_cross.keys()
    assert cross_pair not in without_cross.keys()
    assert with_cross.keys() - without_cross.keys() == {cross_pair}
    # The shared correspondences carry identical similarities.
    without_by_key = {c.key(): c.similarity for c in without_cross.correspondences}
    for corr in with_cross.correspondences:
        if corr.key() == cross_pair:
            assert corr.similarity == 1.0
            continue
        assert without_by_key[corr.key()] == pytest.approx(corr.similarity)


def test_pipeline_self_match_is_identity():
    cfg, bundle, onto1, _ = uni_setup()
    alignment, _ = pivot_match(onto1, onto1, bundle, cfg)
    same_kind = [c for c in alignment.correspondences if c.relation == Relation.EQUIVALENCE]
    assert {(c.entity1, c.entity2) for c in same_kind} >= {
        (iri, iri) for iri in onto1.entities
    }
    for corr in same_kind:
        if corr.entity1 == corr.entity2:
            assert corr.similarity == 1.0


def test_pipeline_input_alignment_rows_are_pinned():
    cfg, bundle, onto1, onto2 = uni_setup()
    pinned = make_alignment(
        "http://matching.example/uni/de",
        "http://matching.example/uni/ar",
        [
            # Deliberately wrong pairing with a low confidence: it must
            # survive verbatim and push out the computed rows that share
            # its endpoints.
            Correspondence(0, Iri(DE + "Universitaet"), Iri(AR + "Maktaba"),
                           Relation.EQUIVALENCE, 0.3),
        ],
    )
    alignment, _ = pivot_match(onto1, onto2, bundle, cfg, input_alignment=pinned)
    by_key = {c.key(): c for c in alignment.correspondences}
    pinned_key = (Iri(DE + "Universitaet"), Iri(AR + "Maktaba"), Relation.EQUIVALENCE)
    assert pinned_key in by_key
    assert by_key[pinned_key].similarity == 0.3
    # One-to-one: the computed rows using these endpoints are gone.
    assert (Iri(DE + "Universitaet"), Iri(AR + "Jamia"), Relation.EQUIVALENCE) not in by_key
    assert (Iri(DE + "Bibliothek"), Iri(AR + "Maktaba"), Relation.EQUIVALENCE) not in by_key


def test_pipeline_zero_weight_disables_a_matcher():
    cfg, bundle, onto1, onto2 = uni_setup()
    # With only the lexical matcher the planted pairs still align 1:1,
    # because every reference pair agrees lexically after translation.
    lexical_only = apply_overrides(cfg, {
        "match.weight.semantic": "0",
        "match.weight.structural": "0",
        "match.weight.crosstype": "0",
    })
    alignment, _ = pivot_match(onto1, onto2, bundle, lexical_only)
    reference = parse_alignment_file(UNI / "reference.tsv")
    equivalences = {k for k in reference.keys() if k[2] == Relation.EQUIVALENCE}
    assert equivalences <= alignment.keys()


def test_pipeline_missing_glossary_coverage_raises_lexicon_stage_error():
    cfg, bundle, onto1, onto2 = uni_setup()
    # Rebuild the bundle with only the German glossary: the Arabic labels
    # have no coverage and the lexicon stage must own the failure.
    thin_cfg = config_from_props(
        {"glossary.de": str(UNI / "de_en.tsv")}, base_dir=UNI
    )
    thin_bundle = load_bundle(thin_cfg)
    with pytest.raises(StageError) as err:
        pivot_match(onto1, onto2, thin_bundle, thin_cfg)
    assert err.value.stage == "lexicon"
    assert "no glossary covers" in str(err.value)


def test_pipeline_pivot_mismatch_is_a_match_stage_error():
    cfg, bundle, onto1, onto2 = uni_setup()
    # The bundle still translates into English but the matchers look for
    # Spanish labels: the match stage must own the failure.
    skewed = apply_overrides(cfg, {"pivot_lang": "es"})
    with pytest.raises(StageError) as err:
        pivot_match(onto1, onto2, bundle, skewed)
    assert err.value.stage == "match"
    assert "translate first" in str(err.value)


def test_pipeline_is_deterministic():
    cfg, bundle, onto1, onto2 = uni_setup()
    first, _ = pivot_match(onto1, onto2, bundle, cfg)
    outputs = {serialize_alignment_tsv(first)}
    for _ in range(4):
        alignment, _ = pivot_match(onto1, onto2, bundle, cfg)
        outputs.add(serialize_alignment_tsv(alignment))
    assert len(outputs) == 1


def test_figure_pipeline_hits_expected_quality():
    cfg = load_config(FIGURE / "match.cfg")
    bundle = load_bundle(cfg)
    onto1 = parse_turtle_file(FIGURE / "left_de.ttl")
    onto2 = parse_turtle_file(FIGURE / "right_ar.ttl")
    alignment, _ = pivot_match(onto1, onto2, bundle, cfg)
    reference = parse_alignment_file(FIGURE / "reference.tsv")
    scores = evaluate(alignment, reference)
    assert scores.recall == 1.0
    assert scores.precision >= 0.8
