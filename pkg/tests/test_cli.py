import json

import pytest
from pydantic import ValidationError

from total_cofibre.chains import homology
from total_cofibre.cli import (
    JobSpec,
    main,
    parse_diagram_json,
    parse_poset_json,
    run,
    serialize_diagram,
    serialize_poset,
)
from total_cofibre.cli.serialize import dumps
from total_cofibre.diagrams import holim_total, random_diagram
from total_cofibre.errors import DuplicateLabelError, NotAnIdealError, ParseError

HALF_OPEN = {"elements": ["a", "b", "ab"], "covers": [["a", "ab"], ["b", "ab"]], "ideal": ["a"]}


def _invoke(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


# --- Poset documents ---
def test_parse_segment_document(segment):
    text = json.dumps(serialize_poset(segment))
    pair = parse_poset_json(text)
    assert pair == segment
    assert pair.ball_dimension == 1


def test_parse_closes_covers_transitively():
    text = json.dumps({"elements": ["0", "1", "2"], "covers": [["0", "1"], ["1", "2"]], "ideal": ["0"]})
    assert parse_poset_json(text).ambient.is_less("0", "2")


def test_parse_rejects_non_ideal():
    with pytest.raises(NotAnIdealError) as info:
        parse_poset_json(json.dumps({**HALF_OPEN, "ideal": ["ab"]}))
    assert info.value.pair in (("a", "ab"), ("b", "ab"))


def test_parse_rejects_duplicates():
    with pytest.raises(DuplicateLabelError):
        parse_poset_json(json.dumps({**HALF_OPEN, "elements": ["a", "a", "ab"]}))


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as info:
        parse_poset_json('{\n  "elements": [\n')
    assert info.value.line is not None and info.value.column is not None


def test_unknown_keys_are_rejected():
    with pytest.raises(ParseError):
        parse_poset_json(json.dumps({**HALF_OPEN, "extra": 1}))


def test_serialization_is_idempotent(square):
    once = serialize_poset(square)
    twice = serialize_poset(parse_poset_json(json.dumps(once)))
    assert once == twice
    assert dumps({"b": 1, "a": [2]}) == dumps({"a": [2], "b": 1})


def test_diagram_document_round_trip(square):
    for seed in range(4):
        diagram = random_diagram(square.ambient, seed)
        parsed = parse_diagram_json(json.dumps(serialize_diagram(diagram)), square)
        before = homology(holim_total(diagram).chain_complex)
        after = homology(holim_total(parsed).chain_complex)
        assert before.to_records() == after.to_records()


def test_diagram_document_rejects_duplicate_maps(segment):
    document = {
        "values": {"a": {"bases": {"0": ["e"]}}, "ab": {"bases": {"0": ["e"]}}},
        "maps": [
            {"source": "a", "target": "ab", "components": {"0": {"rows": 1, "cols": 1, "triplets": [[0, 0, "1"]]}}},
        ]
        * 2,
    }
    with pytest.raises(ParseError):
        parse_diagram_json(json.dumps(document), segment)


# --- Jobs ---
def test_job_needs_exactly_one_poset_source(tmp_path):
    with pytest.raises(ValidationError):
        JobSpec(command="check", generate="cube:2", poset_path=tmp_path / "p.json")
    with pytest.raises(ValidationError):
        JobSpec(command="check")
    with pytest.raises(ValidationError):
        JobSpec(command="gamma", generate="cube:2", constant="Z", representable="xx")


def test_job_window_parsing():
    assert JobSpec(command="homology", generate="cube:1", degrees="-1..2").degrees == (-1, 2)
    with pytest.raises(ValidationError):
        JobSpec(command="homology", generate="cube:1", degrees="2..1")


def test_run_reports_errors_in_the_envelope():
    code, report = run(JobSpec(command="check", generate="tetra:2"))
    assert code == 2
    assert report["status"] == "error"
    assert report["result"]["error"]["type"] == "UnsupportedGeneratorError"


# --- Commands ---
def test_check_cube(capsys):
    code, report = _invoke(capsys, "check", "--generate", "cube:2")
    assert code == 0
    assert report["status"] == "success"
    assert report["command"] == "check"
    assert "hocolim" in report["conventions"]


def test_check_strict_failure(capsys, tmp_path):
    poset = tmp_path / "half_open.json"
    poset.write_text(json.dumps(HALF_OPEN))
    code, report = _invoke(capsys, "check", "--poset", str(poset), "--strict")
    assert code == 1
    assert report["status"] == "failure"
    assert report["result"]["conditions"]["witnesses"]


def test_homology_of_square(capsys):
    code, report = _invoke(capsys, "homology", "--generate", "cube:2")
    assert code == 0
    assert report["result"]["relative"] == [{"degree": 2, "free_rank": 1, "torsion": []}]


def test_limp_on_circle(capsys):
    code, report = _invoke(capsys, "limp", "--generate", "cube:2-boundary", "--constant", "Z", "--p", "1")
    assert code == 0
    assert [row["group"] for row in report["result"]["lim"]] == ["Z"]


def test_gamma_with_torsion_constant(capsys):
    code, report = _invoke(capsys, "gamma", "--generate", "simplex:1", "--constant", "Z/2")
    assert code == 0
    assert report["result"]["homology"] == [{"degree": 1, "free_rank": 0, "torsion": [2]}]


def test_verify_random_diagram(capsys):
    code, report = _invoke(capsys, "verify", "--generate", "cube:2", "--random-diagram", "seed=7")
    assert code == 0
    assert report["status"] == "success"
    assert report["result"]["shift"] == 2
    assert report["result"]["mismatches"] == []


def test_verify_refuses_failing_pair(capsys, tmp_path):
    poset = tmp_path / "half_open.json"
    poset.write_text(json.dumps(HALF_OPEN))
    code, report = _invoke(capsys, "verify", "--poset", str(poset), "--shift", "1")
    assert code == 1
    assert report["status"] == "failure"


def test_unsupported_generator_exits_2(capsys):
    code, report = _invoke(capsys, "check", "--generate", "tetra:2")
    assert code == 2
    assert report["status"] == "error"


def test_bad_field_exits_2(capsys):
    code, report = _invoke(capsys, "ss", "--generate", "simplex:1", "--field", "fp:4")
    assert code == 2
    assert report["result"]["error"]["type"] == "InputError"


def test_ss_over_f2(capsys):
    code, report = _invoke(capsys, "ss", "--generate", "cube:2", "--random-diagram", "seed=3", "--field", "fp:2")
    assert code == 0
    assert report["result"]["field"] == "fp:2"
    assert report["result"]["e2_check"]["mismatches"] == []
    assert report["result"]["abutment_check"]["mismatches"] == []


def test_ss_r_max_only_truncates_the_listed_pages(capsys):
    code, report = _invoke(capsys, "ss", "--generate", "cube:2", "--random-diagram", "seed=3", "--r-max", "1")
    assert code == 0
    assert report["status"] == "success"
    assert [page["r"] for page in report["result"]["pages"]] == [0, 1]
    assert report["result"]["e2_check"]["mismatches"] == []
    assert report["result"]["abutment_check"]["mismatches"] == []


def test_ss_text_output(capsys):
    assert main(["ss", "--generate", "simplex:1", "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("ss: success")
    assert "E_2 (q)" in text


def test_output_is_deterministic(tmp_path):
    first, second = tmp_path / "1.json", tmp_path / "2.json"
    for path in (first, second):
        assert main(["holim", "--generate", "cube:2", "--random-diagram", "seed=5", "--out", str(path)]) == 0
    assert first.read_text() == second.read_text()


def test_diagram_file_input(capsys, tmp_path, segment):
    diagram = tmp_path / "diagram.json"
    diagram.write_text(json.dumps(serialize_diagram(random_diagram(segment.ambient, 4))))
    code, report = _invoke(capsys, "verify", "--generate", "simplex:1", "--diagram", str(diagram))
    assert code == 0
    assert report["result"]["mismatches"] == []
