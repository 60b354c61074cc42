import json
from pathlib import Path

import jsonschema
import pytest

from credalbox import (
    CredalLevel,
    CredalSequence,
    ProbInterval,
    ProblemFormatError,
    ToleranceSpec,
    document_to_dict,
    dumps,
    load_fixture,
    load_path,
    loads,
    parse_document,
    sequence_bytes,
    sequence_to_dict,
)
from credalbox.replicate import fixture_text

FIXTURES = ("example_a", "example_b", "example_c_berry",
            "example_c_lottery", "example_d")

PROBLEM_SCHEMA = Path(__file__).resolve().parent.parent / "schema" / "problem.schema.json"

MINIMAL = {
    "problem": "tiny",
    "acts": [
        {"name": "a1", "outcomes": [
            {"label": "G", "utility": 10.0},
            {"label": "not-G", "utility": -30.0},
        ]},
        {"name": "a2", "outcomes": [
            {"label": "pass", "utility": 0.0},
        ]},
    ],
}


def doc_with(**extras):
    data = json.loads(json.dumps(MINIMAL))
    data.update(extras)
    return data


def error_path(data):
    with pytest.raises(ProblemFormatError) as exc_info:
        parse_document(data)
    return str(exc_info.value)


class TestRoundTrip:
    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixture_survives_a_cycle(self, name):
        doc = load_fixture(name)
        again = loads(dumps(doc))
        assert again == doc
        assert document_to_dict(again) == document_to_dict(doc)

    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixture_sequences_are_stable(self, name):
        doc = load_fixture(name)
        assert sequence_bytes(doc.build_sequence()) == \
            sequence_bytes(doc.build_sequence())

    def test_statements_document_round_trip(self):
        doc = load_fixture("example_b")
        assert doc.rule == "threshold"
        again = loads(dumps(doc))
        assert again.statements == doc.statements
        assert again.error_levels == doc.error_levels
        assert again.refs == doc.refs

    def test_load_path_matches_fixture_loader(self, tmp_path):
        text = fixture_text("example_a")
        target = tmp_path / "problem.json"
        target.write_text(text, encoding="utf-8")
        assert load_path(target) == loads(text)


class TestSchema:
    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixture_matches_problem_schema(self, name):
        schema = json.loads(PROBLEM_SCHEMA.read_text(encoding="utf-8"))
        jsonschema.validate(json.loads(fixture_text(name)), schema)

    @pytest.mark.parametrize("name", FIXTURES)
    def test_serialized_form_matches_problem_schema(self, name):
        schema = json.loads(PROBLEM_SCHEMA.read_text(encoding="utf-8"))
        jsonschema.validate(document_to_dict(load_fixture(name)), schema)


class TestParsing:
    def test_minimal_document(self):
        doc = parse_document(MINIMAL)
        assert doc.problem.name == "tiny"
        assert doc.problem.act_names == ("a1", "a2")
        assert doc.tolerance == ToleranceSpec.explicit(1.0)
        assert doc.level_specs is None

    def test_default_sequence_is_one_vacuous_level(self):
        seq = parse_document(MINIMAL).build_sequence()
        assert seq == CredalSequence((CredalLevel(0, 0.0, {}),))

    def test_outcome_probs_parsed(self):
        data = doc_with()
        data["acts"][0]["outcomes"][0]["prob"] = [0.6, 0.8]
        doc = parse_document(data)
        assert doc.problem.act("a1").outcome("G").prob == ProbInterval(0.6, 0.8)

    def test_tolerance_modes(self):
        doc = parse_document(doc_with(
            tolerance={"mode": "explicit", "max_error": 0.25}))
        assert doc.tolerance == ToleranceSpec.explicit(0.25)
        doc = parse_document(doc_with(tolerance={"mode": "odds-derived"}))
        assert doc.tolerance == ToleranceSpec.odds_derived()

    def test_levels_build_constraint_driven_sequence(self):
        data = doc_with(levels=[
            {"error": 0.0, "constraints": []},
            {"error": 0.1, "constraints": [
                {"kind": "event-interval", "event": "G",
                 "interval": [0.6, 0.8]},
            ]},
        ])
        seq = parse_document(data).build_sequence()
        assert seq.levels[1].assignments["a1"]["G"] == ProbInterval(0.6, 0.8)
        forced = seq.levels[1].assignments["a1"]["not-G"]
        assert forced.lo == pytest.approx(0.2)
        assert forced.hi == pytest.approx(0.4)

    def test_level_overrides_parsed(self):
        data = doc_with(levels=[
            {"error": 0.0, "overrides": {"a1": {"G": [0.5, 0.9]}}},
        ])
        seq = parse_document(data).build_sequence()
        assert seq.levels[0].assignments["a1"]["G"] == ProbInterval(0.5, 0.9)

    def test_statement_ids_default_by_position(self):
        data = doc_with(
            statements=[
                {"kind": "condition", "event": "G", "prob": 0.9},
            ],
            acceptance={"rule": "next-most-probable"},
        )
        doc = parse_document(data)
        assert doc.statements[0].id == "s0"


class TestValidationErrors:
    def test_unknown_root_key(self):
        assert "unknown key 'extra'" in error_path(doc_with(extra=1))

    def test_missing_problem_name(self):
        data = doc_with()
        del data["problem"]
        assert "missing required key 'problem'" in error_path(data)

    def test_act_path_in_message(self):
        data = doc_with()
        data["acts"][1]["outcomes"] = []
        assert "$.acts[1]" in error_path(data)

    def test_outcome_utility_must_be_number(self):
        data = doc_with()
        data["acts"][0]["outcomes"][0]["utility"] = "ten"
        message = error_path(data)
        assert "$.acts[0].outcomes[0].utility" in message
        assert "expected a number" in message

    def test_bad_interval_shape(self):
        data = doc_with()
        data["acts"][0]["outcomes"][0]["prob"] = [0.1, 0.2, 0.3]
        assert "expected [lo, hi]" in error_path(data)

    def test_interval_out_of_unit_range(self):
        data = doc_with()
        data["acts"][0]["outcomes"][0]["prob"] = [0.5, 1.5]
        assert "$.acts[0].outcomes[0].prob" in error_path(data)

    def test_duplicate_act_names(self):
        data = doc_with()
        data["acts"][1]["name"] = "a1"
        assert "$.acts" in error_path(data)

    def test_levels_and_statements_conflict(self):
        data = doc_with(
            levels=[{"error": 0.0}],
            statements=[{"kind": "condition", "event": "G"}],
            acceptance={"rule": "next-most-probable"},
        )
        assert "pick one" in error_path(data)

    def test_statements_without_acceptance(self):
        data = doc_with(statements=[{"kind": "condition", "event": "G"}])
        assert "must appear together" in error_path(data)

    def test_acceptance_without_statements(self):
        data = doc_with(acceptance={"rule": "next-most-probable"})
        assert "must appear together" in error_path(data)

    def test_unknown_acceptance_rule(self):
        data = doc_with(
            statements=[{"kind": "condition", "event": "G"}],
            acceptance={"rule": "by-feel"},
        )
        assert "unknown acceptance rule" in error_path(data)

    def test_threshold_needs_error_levels(self):
        data = doc_with(
            statements=[{"kind": "condition", "event": "G"}],
            acceptance={"rule": "threshold"},
        )
        assert "missing required key 'error_levels'" in error_path(data)

    def test_next_most_probable_takes_no_error_levels(self):
        data = doc_with(
            statements=[{"kind": "condition", "event": "G"}],
            acceptance={"rule": "next-most-probable", "error_levels": [0.1]},
        )
        assert "takes no error_levels" in error_path(data)

    def test_repeated_statement_ids(self):
        data = doc_with(
            statements=[
                {"id": "dup", "kind": "condition", "event": "G"},
                {"id": "dup", "kind": "condition", "event": "H"},
            ],
            acceptance={"rule": "next-most-probable"},
        )
        assert "statement ids repeat" in error_path(data)

    def test_level_constraints_must_be_certain(self):
        data = doc_with(levels=[
            {"error": 0.0, "constraints": [
                {"kind": "event-interval", "event": "G",
                 "interval": [0.1, 0.2], "prob": 0.9},
            ]},
        ])
        assert "prob must stay 1" in error_path(data)

    def test_tolerance_mode_errors(self):
        assert "unknown tolerance mode" in error_path(
            doc_with(tolerance={"mode": "loose"}))
        assert "missing required key 'max_error'" in error_path(
            doc_with(tolerance={"mode": "explicit"}))
        assert "no max_error" in error_path(
            doc_with(tolerance={"mode": "odds-derived", "max_error": 0.2}))

    def test_reference_class_cycle_reported_at_path(self):
        data = doc_with(reference_classes={
            "specificity": [["a", "b"], ["b", "a"]],
        })
        message = error_path(data)
        assert "$.reference_classes" in message
        assert "cyclic" in message

    def test_statement_kind_required(self):
        data = doc_with(levels=[
            {"error": 0.0, "constraints": [{"event": "G"}]},
        ])
        assert "missing required key 'kind'" in error_path(data)

    def test_invalid_json_text(self):
        with pytest.raises(ProblemFormatError, match="not valid JSON"):
            loads("{problem:")

    def test_non_object_root(self):
        assert "expected an object" in error_path([1, 2, 3])


class TestSequenceSerialization:
    def test_canonical_shape(self):
        seq = CredalSequence((
            CredalLevel(0, 0.0, {}),
            CredalLevel(1, 0.1, {"b": {"y": ProbInterval(0.2, 0.4),
                                       "x": ProbInterval(0.1, 0.3)},
                                 "a": {"z": ProbInterval(0.0, 1.0)}}),
        ))
        doc = sequence_to_dict(seq)
        assert [lvl["index"] for lvl in doc["levels"]] == [0, 1]
        assert list(doc["levels"][1]["assignments"]) == ["a", "b"]
        assert list(doc["levels"][1]["assignments"]["b"]) == ["x", "y"]

    def test_bytes_ignore_assignment_insertion_order(self):
        forward = CredalLevel(0, 0.0, {"a": {"x": ProbInterval(0.1, 0.2)},
                                       "b": {"y": ProbInterval(0.3, 0.4)}})
        backward = CredalLevel(0, 0.0, {"b": {"y": ProbInterval(0.3, 0.4)},
                                        "a": {"x": ProbInterval(0.1, 0.2)}})
        assert sequence_bytes(CredalSequence((forward,))) == \
            sequence_bytes(CredalSequence((backward,)))
