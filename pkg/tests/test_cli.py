"""Tests for the command-line interface: all subcommands and exit codes."""

import pytest

from pivot_align import parse_alignment_tsv, parse_turtle, parse_turtle_file
from pivot_align.cli import main

from util import FIGURE, UNI


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_stats_prints_metric_lines(capsys):
    code, out, err = run_cli(capsys, "stats", str(UNI / "uni_ar.ttl"))
    assert code == 0
    lines = out.splitlines()
    assert "concepts\t9" in lines
    assert "properties\t4" in lines
    assert "individuals\t6" in lines
    assert "primitives\t19" in lines
    assert "axioms\t20" in lines
    assert "size_class\tsmall" in lines
    assert "structure_class\tsimple" in lines


def test_stats_multiple_files_are_labeled(capsys):
    code, out, _ = run_cli(
        capsys, "stats", str(UNI / "uni_de.ttl"), str(UNI / "uni_ar.ttl")
    )
    assert code == 0
    blocks = out.strip().split("\n\n")
    assert len(blocks) == 2
    assert blocks[0].startswith(f"file\t{UNI / 'uni_de.ttl'}")
    assert "primitives\t20" in blocks[0]
    assert "primitives\t19" in blocks[1]


def test_translate_writes_turtle_with_pivot_labels(capsys, tmp_path):
    out_file = tmp_path / "translated.ttl"
    code, out, err = run_cli(
        capsys,
        "translate",
        str(UNI / "uni_de.ttl"),
        "--config", str(UNI / "pipeline.cfg"),
        "--out", str(out_file),
    )
    assert code == 0
    assert out == ""  # everything went to the file
    assert "translated 20 entities" in err
    assert "Translated: 16" in err
    translated = parse_turtle_file(out_file)
    uni = translated.entities[
        next(iri for iri in translated.entities if str(iri).endswith("#Universitaet"))
    ]
    assert uni.label_for("en").text == "university"
    assert uni.label_for("de").text == "Universität"


def test_translate_to_stdout(capsys):
    code, out, _ = run_cli(
        capsys,
        "translate",
        str(UNI / "uni_ar.ttl"),
        "--config", str(UNI / "pipeline.cfg"),
    )
    assert code == 0
    translated = parse_turtle(out)
    assert any(
        entity.label_for("en") is not None for entity in translated.entities.values()
    )


def test_match_writes_alignment(capsys, tmp_path):
    out_file = tmp_path / "alignment.tsv"
    code, out, err = run_cli(
        capsys,
        "match",
        str(UNI / "uni_de.ttl"),
        str(UNI / "uni_ar.ttl"),
        "--config", str(UNI / "pipeline.cfg"),
        "--out", str(out_file),
    )
    assert code == 0
    assert "14 correspondences (threshold 0.8)" in err
    written = parse_alignment_tsv(out_file.read_text(encoding="utf-8"))
    reference = parse_alignment_tsv((UNI / "reference.tsv").read_text(encoding="utf-8"))
    assert written.keys() == reference.keys()
    assert written.onto1 == reference.onto1
    assert written.onto2 == reference.onto2


def test_match_flags_override_config(capsys):
    code, out, err = run_cli(
        capsys,
        "match",
        str(UNI / "uni_de.ttl"),
        str(UNI / "uni_ar.ttl"),
        "--config", str(UNI / "pipeline.cfg"),
        "--no-crosstype",
        "--threshold", "0.95",
    )
    assert code == 0
    alignment = parse_alignment_tsv(out)
    assert all(c.relation.value != "~" for c in alignment.correspondences)
    assert all(c.similarity >= 0.95 for c in alignment.correspondences)
    assert "threshold 0.95" in err


def test_match_with_explicit_glossary_flags(capsys):
    # Bare src_tgt stems infer the language; no config file involved.
    code, out, _ = run_cli(
        capsys,
        "match",
        str(FIGURE / "left_de.ttl"),
        str(FIGURE / "right_ar.ttl"),
        "--glossary", str(FIGURE / "de_en.tsv"),
        "--glossary", f"ar={FIGURE / 'ar_en.tsv'}",
        "--threshold", "0.9",
    )
    assert code == 0
    alignment = parse_alignment_tsv(out)
    assert len(alignment) >= 4
    assert all(c.similarity >= 0.9 for c in alignment.correspondences)
    fragments = {(c.entity1.fragment, c.entity2.fragment) for c in alignment.correspondences}
    assert ("Dekan", "Amid") in fragments


def test_match_input_alignment_is_pinned(capsys, tmp_path):
    pinned_file = tmp_path / "pinned.tsv"
    pinned_file.write_text(
        "ID\tOntology1\tOntology2\tSimilarity\tRelation\n"
        "0\thttp://matching.example/uni/de#Universitaet"
        "\thttp://matching.example/uni/ar#Maktaba\t0.3000000\t=\n",
        encoding="utf-8",
    )
    code, out, _ = run_cli(
        capsys,
        "match",
        str(UNI / "uni_de.ttl"),
        str(UNI / "uni_ar.ttl"),
        "--config", str(UNI / "pipeline.cfg"),
        "--input-alignment", str(pinned_file),
    )
    assert code == 0
    assert "http://matching.example/uni/de#Universitaet\thttp://matching.example/uni/ar#Maktaba\t0.3000000\t=" in out


def test_compose_identity(capsys, tmp_path):
    identity = tmp_path / "identity.tsv"
    lines = ["# onto1: http://matching.example/uni/ar",
             "# onto2: http://matching.example/uni/ar",
             "ID\tOntology1\tOntology2\tSimilarity\tRelation"]
    reference = (UNI / "reference.tsv").read_text(encoding="utf-8")
    rights = [line.split("\t")[2] for line in reference.splitlines()[3:]]
    for i, iri in enumerate(sorted(set(rights))):
        lines.append(f"{i}\t{iri}\t{iri}\t1.0000000\t=")
    identity.write_text("\n".join(lines) + "\n", encoding="utf-8")

    out_file = tmp_path / "composed.tsv"
    code, _, err = run_cli(
        capsys,
        "compose",
        str(UNI / "reference.tsv"),
        str(identity),
        "--out", str(out_file),
    )
    assert code == 0
    assert "composed correspondences" in err
    composed = parse_alignment_tsv(out_file.read_text(encoding="utf-8"))
    original = parse_alignment_tsv(reference)
    assert composed.keys() == original.keys()


def test_eval_prints_report(capsys):
    code, out, _ = run_cli(
        capsys, "eval", str(UNI / "reference.tsv"), str(UNI / "reference.tsv")
    )
    assert code == 0
    assert out == (
        "precision\t1.0000\n"
        "recall\t1.0000\n"
        "f1\t1.0000\n"
        "result_count\t14\n"
        "reference_count\t14\n"
        "common_count\t14\n"
    )


def test_usage_errors_exit_1(capsys):
    code, _, err = run_cli(capsys, "match", "only-one.ttl")
    assert code == 1
    assert "usage:" in err
    assert "error:" in err

    code, _, err = run_cli(capsys, "frobnicate")
    assert code == 1

    code, _, err = run_cli(capsys)
    assert code == 1


def test_missing_files_exit_2(capsys):
    code, _, err = run_cli(capsys, "stats", "/nonexistent/onto.ttl")
    assert code == 2
    assert err.startswith("error:")

    code, _, err = run_cli(capsys, "eval", "/nonexistent/a.tsv", str(UNI / "reference.tsv"))
    assert code == 2
    assert "error:" in err


def test_bad_data_exits_2(capsys, tmp_path):
    broken = tmp_path / "broken.ttl"
    broken.write_text("@prefix : <http://e/#> .\n:A , :B .\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "stats", str(broken))
    assert code == 2
    assert "error:" in err
    assert "line 2" in err

    bad_config = tmp_path / "bad.cfg"
    bad_config.write_text("unknown.key=1\n", encoding="utf-8")
    code, _, err = run_cli(
        capsys,
        "match",
        str(UNI / "uni_de.ttl"),
        str(UNI / "uni_ar.ttl"),
        "--config", str(bad_config),
    )
    assert code == 2
    assert "unknown configuration key" in err


def test_translate_without_coverage_exits_2(capsys):
    code, _, err = run_cli(
        capsys,
        "translate",
        str(UNI / "uni_ar.ttl"),
        "--glossary", f"de={UNI / 'de_en.tsv'}",
    )
    assert code == 2
    assert "no glossary covers" in err
