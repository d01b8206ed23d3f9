"""Smoke tests for the python module: end-to-end generation on the shipped
fixtures plus the scoring helpers."""

import os
import pathlib

import pytest

import unlgen

FIXTURES = pathlib.Path(os.environ.get("UNLGEN_FIXTURES", "fixtures"))


def read(path):
    return path.read_text(encoding="utf-8")


@pytest.fixture(scope="module")
def resources():
    return {
        "dict": read(FIXTURES / "punjabi.dic"),
        "grammar": read(FIXTURES / "punjabi.grm"),
    }


def test_generate_verb_sentence(resources):
    unl = read(FIXTURES / "cases" / "verb_present_perfect.unl")
    result = unlgen.generate(unl, resources["dict"], resources["grammar"])
    assert result["text"] == "ਉਹ ਪਹੁੰਚ ਚੁੱਕਾ ਹੈ"
    assert result["rule_sequence"] == [0, 1, 3, 4, 14, 19, 19]
    assert not result["cap_exceeded"]
    assert not result["unresolved_relations"]


def test_generate_all_cases(resources):
    for unl_path in sorted((FIXTURES / "cases").glob("*.unl")):
        ref = read(unl_path.with_suffix(".ref")).splitlines()[0]
        result = unlgen.generate(read(unl_path), resources["dict"], resources["grammar"])
        assert result["text"] == ref, unl_path.stem


def test_trace_levels(resources):
    unl = read(FIXTURES / "cases" / "pronoun_reciprocal.unl")
    quiet = unlgen.generate(unl, resources["dict"], resources["grammar"], trace_level=0)
    loud = unlgen.generate(unl, resources["dict"], resources["grammar"], trace_level=2)
    assert quiet["trace"] == []
    assert any(line.startswith("#1 fire r1:") for line in loud["trace"])


def test_parse_and_validate():
    text = "{unl}\nagt(arrive:0B.@present, 00:01.@3)\n{/unl}\n"
    assert unlgen.parse_unl(text) == text
    assert unlgen.validate_unl(text) == []
    assert unlgen.validate_unl("{unl}\nzzz(a:01, b:02)\n{/unl}") != []


def test_scoring_helpers():
    assert unlgen.tokenize("  a  b ") == ["a", "b"]
    assert unlgen.lcs_length(["a", "b"], ["b", "a"]) == 1
    assert unlgen.f_measure("a b c", "a b c") == 1.0
    assert abs(unlgen.f_measure("ਉਹ ਪਹੁੰਚ ਚੁੱਕਾ", "ਉਹ ਪਹੁੰਚ ਚੁੱਕਾ ਹੈ") - 6 / 7) < 1e-12

    report = unlgen.evaluate_corpus([("s1", "a b", "a b"), ("s2", "x", "y")])
    assert 0.0 <= report["aggregate_f"] <= 1.0
    assert [row["id"] for row in report["sentences"]] == ["s1", "s2"]


def test_lint_and_dump(resources):
    assert unlgen.lint(resources["dict"], resources["grammar"]) == []
    ast = unlgen.dump_ast(resources["grammar"])
    assert ast.splitlines()[0].startswith("r0: (%x,M7):=")
