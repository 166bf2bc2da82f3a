import json
from fractions import Fraction

import pytest

from spslab import StructureError
from spslab.io import ParseError, dump_instance, dumps, format_fraction, load, loads, parse_fraction

BASE = {
    "states": ["p", "q"],
    "properties": ["0", "a", "b", "I"],
    "leq": [["0", "a"], ["0", "b"], ["a", "I"], ["b", "I"]],
    "bottom": "0",
    "top": "I",
    "actual": {"p": ["a", "I"], "q": ["b", "I"]},
}


def text(**changes):
    doc = dict(BASE, **changes)
    return json.dumps(doc)


def test_round_trip_is_byte_stable(fixtures):
    for s in fixtures.values():
        once = dumps(s)
        assert dumps(loads(once)) == once


def test_file_round_trip(tmp_path, fixtures):
    path = tmp_path / "mo2.json"
    path.write_text(dumps(fixtures["MO2"]))
    back = load(path)
    assert back.mu_table == fixtures["MO2"].mu_table
    assert dump_instance(back)["format"] == "spslab-instance/1"


@pytest.mark.parametrize("raw, value", [(1, 1), ("1/3", Fraction(1, 3)), ("0.25", Fraction(1, 4)), (Fraction(1, 2), Fraction(1, 2))])
def test_parse_fraction(raw, value):
    assert parse_fraction(raw, "$") == value


@pytest.mark.parametrize("raw", [0.5, True, "x", "1/0", None])
def test_parse_fraction_rejects(raw):
    with pytest.raises(ParseError):
        parse_fraction(raw, "$")


def test_format_fraction():
    assert format_fraction(Fraction(2, 4)) == "1/2"
    assert format_fraction(Fraction(3)) == "3"


def test_unquoted_decimals_are_exact():
    mu = [{"state": "p", "property": "a", "value": 0.1}]
    s = loads(text(mu=mu, testable=["0", "a", "I"]))
    assert s.mu_table[0, s.prop("a")] == Fraction(1, 10)


def test_out_of_range_probability_points_at_the_entry():
    mu = [{"state": "p", "property": "a", "value": "1.1"}]
    with pytest.raises(ParseError) as err:
        loads(text(mu=mu))
    assert err.value.location == "$.mu[0].value"
    assert "out of range" in str(err.value)


def test_missing_and_malformed_fields():
    doc = dict(BASE)
    del doc["bottom"]
    with pytest.raises(ParseError, match="missing field 'bottom'"):
        loads(json.dumps(doc))
    with pytest.raises(ParseError):
        loads(text(leq=[["0"]]))
    with pytest.raises(ParseError):
        loads("{not json")
    with pytest.raises(ParseError):
        loads("[]")


def test_duplicate_mu_entries():
    mu = [{"state": "p", "property": "a", "value": 1}] * 2
    with pytest.raises(ParseError, match="duplicate"):
        loads(text(mu=mu))


def test_unknown_names_are_structural():
    with pytest.raises(StructureError):
        loads(text(actual={"p": ["a", "zz"], "q": ["I"]}))


def test_orthogonality_and_name_survive():
    s = loads(text(orthogonality=[["p", "q"]], name="square"))
    assert s.name == "square"
    back = json.loads(dumps(s))
    assert back["orthogonality"] == [["p", "q"]]
