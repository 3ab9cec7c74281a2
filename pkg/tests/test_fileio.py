import json
from pathlib import Path

import pytest
from hypothesis import given

from gscone.errors import ParseError
from gscone.fileio import (
    format_matroid_text,
    format_valuation_text,
    load_matroid,
    load_valuation,
    parse_matroid_text,
    parse_valuation_text,
    save_valuation,
    valuation_from_json,
    valuation_to_json,
)
from gscone.matroid import uniform_matroid
from gscone.reproduction import (
    counterexample_valuation,
    group_labels,
    reference_certificate,
    submodular_not_gs_function,
)
from gscone.subsets import mask_of

from strategies import valuations

DATA = Path(__file__).resolve().parent.parent / "data"


@given(valuations())
def test_text_round_trip(v):
    assert parse_valuation_text(format_valuation_text(v)) == v
    assert parse_valuation_text(format_valuation_text(v, skip_zero=True)) == v


@given(valuations())
def test_json_round_trip(v):
    obj = json.loads(json.dumps(valuation_to_json(v)))
    assert valuation_from_json(obj) == v


def test_unlisted_sets_default_to_zero_and_comments_are_ignored():
    v = parse_valuation_text("# header comment\nn=3\n\n{1,2}: -1/2   # trailing\n{ 1 , 2 , 3 }: 4\n")
    assert v.values[mask_of((1, 2))] == -0.5
    assert v.values[mask_of((1, 2, 3))] == 4
    assert v.values[mask_of((1,))] == 0


@pytest.mark.parametrize(
    "text, line",
    [
        ("n=2\n{1}: 1\n{1}: 2\n", 3),
        ("n=2\n{1,3}: 1\n", 2),
        ("n=2\n{1}: 1.5\n", 2),
        ("n=2\n{1}: 1/0\n", 2),
        ("n=2\n\n{1} 1\n", 3),
        ("m=2\n", 1),
        ("", 1),
        ("n=2\n{1,1}: 0\n", 2),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_valuation_text(text, "f.val")
    assert info.value.line == line
    assert str(info.value).startswith("f.val:%d:" % line)


def test_json_errors():
    with pytest.raises(ParseError):
        valuation_from_json({"n": 2})
    with pytest.raises(ParseError):
        valuation_from_json({"n": 2, "values": {"1": "0", "{1}": "1"}})
    with pytest.raises(ParseError):
        valuation_from_json({"n": 2, "values": {"3": "0"}})


def test_save_and_load_pick_format_by_suffix(tmp_path):
    v = counterexample_valuation()
    for name in ("v.json", "v.val"):
        save_valuation(v, tmp_path / name)
        assert load_valuation(tmp_path / name) == v
    assert (tmp_path / "v.json").read_text().lstrip().startswith("{")
    assert (tmp_path / "v.val").read_text().startswith("n=5\n")


def test_bad_json_file_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2,\n "values": }\n')
    with pytest.raises(ParseError) as info:
        load_valuation(p)
    assert info.value.line == 2


@pytest.mark.parametrize(
    "name, make",
    [
        ("counterexample.val", counterexample_valuation),
        ("certificate.val", reference_certificate),
        ("groups.val", group_labels),
        ("submodular_not_gs.val", submodular_not_gs_function),
    ],
)
def test_shipped_tables_match_builtins_bit_exactly(name, make):
    path = DATA / name
    assert load_valuation(path) == make()
    assert path.read_text() == format_valuation_text(make())


def test_matroid_round_trip(tmp_path):
    m = uniform_matroid(4, 2)
    assert parse_matroid_text(format_matroid_text(m)) == m
    p = tmp_path / "m.txt"
    p.write_text("# uniform\nn=3\nbases: {1,2} {1,3} {2,3}\n")
    assert load_matroid(p) == uniform_matroid(3, 2)


@pytest.mark.parametrize(
    "text",
    [
        "n=4\nbases: {1,2} {3,4}\n",
        "n=3\nbases: {1,2} {1}\n",
        "n=3\n",
        "n=3\nbases: {1,2} junk\n",
        "n=3\nbases: {1,2}\nbases: {1,3}\n",
        "n=3\nbasis: {1}\n",
    ],
)
def test_matroid_parse_errors(text):
    with pytest.raises(ParseError):
        parse_matroid_text(text)
