from __future__ import annotations

import json
from fractions import Fraction

import pytest

from abelcheck import (
    InputError,
    chain_from_dict,
    collection_from_dict,
    curve_from_dict,
    format_fraction,
    load_curve,
    load_schedule,
    parse_fraction,
    parse_integer,
    read_json,
    schedule_from_dict,
)


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_parse_fraction_accepts_ints_and_slash_strings():
    assert parse_fraction(3) == Fraction(3)
    assert parse_fraction(-2) == Fraction(-2)
    assert parse_fraction("3/4") == Fraction(3, 4)
    assert parse_fraction(" -1/2 ") == Fraction(-1, 2)
    assert parse_fraction("5") == Fraction(5)


def test_parse_fraction_rejects_floats_bools_and_junk():
    with pytest.raises(InputError):
        parse_fraction(0.5)
    with pytest.raises(InputError):
        parse_fraction(True)
    with pytest.raises(InputError):
        parse_fraction("one half")
    with pytest.raises(InputError):
        parse_fraction("0.5")
    with pytest.raises(InputError):
        parse_fraction("1e2")
    with pytest.raises(InputError):
        parse_fraction("1/0")
    with pytest.raises(InputError):
        parse_fraction(None)
    with pytest.raises(InputError):
        parse_fraction([1, 2])


def test_parse_integer_rejects_floats_even_when_integral():
    assert parse_integer(7) == 7
    assert parse_integer("-3") == -3
    with pytest.raises(InputError):
        parse_integer(2.0)
    with pytest.raises(InputError):
        parse_integer(1.5)
    with pytest.raises(InputError):
        parse_integer(False)
    with pytest.raises(InputError):
        parse_integer("2.5")


def test_format_fraction_round_trips_through_parse():
    for f in (Fraction(0), Fraction(3, 4), Fraction(-7, 2), Fraction(5)):
        assert parse_fraction(format_fraction(f)) == f


def test_curve_from_dict_builds_the_three_objects():
    g, pol, md = curve_from_dict(
        {
            "components": 2,
            "nodes": [[1, 2], [1, 2]],
            "polarization": ["1/2", "1/2"],
            "multidegree": [2, -1],
        }
    )
    assert g.components == 2
    assert g.nodes == ((1, 2), (1, 2))
    assert g.marked == 1
    assert pol.weights == (Fraction(1, 2), Fraction(1, 2))
    assert md.degs == (2, -1)


def test_curve_from_dict_honors_the_marked_field():
    g, _, _ = curve_from_dict(
        {
            "components": 2,
            "nodes": [[1, 2]],
            "marked": 2,
            "polarization": [0, 0],
            "multidegree": [0, 0],
        }
    )
    assert g.marked == 2


def test_curve_from_dict_rejects_bad_content():
    with pytest.raises(InputError):
        curve_from_dict([1, 2, 3])
    with pytest.raises(InputError):
        curve_from_dict({"components": 2})
    base = {
        "components": 2,
        "nodes": [[1, 2]],
        "polarization": [0, 0],
        "multidegree": [0, 0],
    }
    with pytest.raises(InputError):
        curve_from_dict({**base, "polarization": [0.5, 0.5]})
    with pytest.raises(InputError):
        curve_from_dict({**base, "multidegree": [1.5, -1]})
    with pytest.raises(InputError):
        curve_from_dict({**base, "multidegree": [0, 0, 0]})
    with pytest.raises(InputError):
        curve_from_dict({**base, "nodes": [[1, 1]]})
    with pytest.raises(InputError):
        curve_from_dict({**base, "polarization": [0, "1/2"]})


def test_chain_from_dict_fills_missing_rows_with_zeros():
    c = chain_from_dict(
        {
            "base": {"components": 2, "nodes": [[1, 2], [1, 2]]},
            "d": 2,
            "base_degs": [1, -1],
            "chain_degs": {"1": [1, -1]},
        }
    )
    assert c.chain_len == 2
    assert c.base_degs == (1, -1)
    assert c.chain_degs == ((0, 0), (1, -1))


def test_chain_from_dict_rejects_malformed_input():
    with pytest.raises(InputError):
        chain_from_dict("nope")
    with pytest.raises(InputError):
        chain_from_dict({"base": {"components": 1, "nodes": []}, "d": 1})
    with pytest.raises(InputError):
        chain_from_dict(
            {
                "base": {"components": 2, "nodes": [[1, 2]]},
                "d": 2,
                "base_degs": [0, 0],
                "chain_degs": {"0": [1]},
            }
        )
    with pytest.raises(InputError):
        chain_from_dict(
            {
                "base": {"components": 2, "nodes": [[1, 2]]},
                "d": 1,
                "base_degs": [0, 0],
                "chain_degs": {"0": [0.5]},
            }
        )


def test_collection_from_dict_normalizes_y_kind_sets():
    col = collection_from_dict(
        {
            "d_plus_1": 3,
            "sets": [[1], [1, 2]],
            "kinds": ["x", "y"],
        }
    )
    assert col.sets == (frozenset({1}), frozenset({3}))
    plain = collection_from_dict({"d_plus_1": 3, "sets": [[2], [1]]})
    assert plain.sets == (frozenset({2}), frozenset({1}))


def test_collection_from_dict_rejects_malformed_input():
    with pytest.raises(InputError):
        collection_from_dict({"d_plus_1": 3, "sets": [[1]], "kinds": []})
    with pytest.raises(InputError):
        collection_from_dict({"d_plus_1": 3, "sets": [[4]]})
    with pytest.raises(InputError):
        collection_from_dict({"d_plus_1": 3, "sets": [[1, 2, 3]]})
    with pytest.raises(InputError):
        collection_from_dict({"d_plus_1": 3, "sets": [[1]], "kinds": ["w"]})


def test_schedule_from_dict_checks_the_move_names():
    sched = schedule_from_dict(
        {"moves": ["diagonals-descending", "components-lex"]}
    )
    assert sched.moves == ("diagonals-descending", "components-lex")
    with pytest.raises(InputError):
        schedule_from_dict({"moves": ["diagonal"]})
    with pytest.raises(InputError):
        schedule_from_dict({"moves": []})
    with pytest.raises(InputError):
        schedule_from_dict({})


def test_read_json_failures_are_input_errors(tmp_path):
    with pytest.raises(InputError):
        read_json(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        read_json(str(broken))


def test_loaders_read_files_from_disk(tmp_path):
    path = _write(
        tmp_path,
        "curve.json",
        {
            "components": 2,
            "nodes": [[1, 2]],
            "polarization": [0, 0],
            "multidegree": [1, -1],
        },
    )
    g, pol, md = load_curve(path)
    assert md.degs == (1, -1)

    sched_path = _write(tmp_path, "sched.json", {"moves": ["components-lex"]})
    assert load_schedule(sched_path).moves == ("components-lex",)
