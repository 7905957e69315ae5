"""Front complex data model, validator and JSON format."""
from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellular_dga import builders
from cellular_dga.front_model import (Cell, SchemaError, Sheet, dumps, linearize, linearize_sheets, load, save,
                                      validate)

ALL_BUILDERS = sorted(builders.BUILDERS)


def _cell(sheets, order, dim=0):
    return Cell("x", dim, tuple(Sheet(s, 0) for s in sheets), frozenset(order))


@pytest.mark.parametrize("name", ALL_BUILDERS)
def test_builders_validate(name):
    assert validate(builders.BUILDERS[name]()) == []


@pytest.mark.parametrize("name", ALL_BUILDERS)
def test_roundtrip(name):
    fc = builders.BUILDERS[name]()
    again = load(save(fc))
    assert again == fc
    assert dumps(again) == dumps(fc)
    assert load(dumps(fc)) == fc


def test_bad_cusp_step_is_reported():
    doc = save(builders.flying_saucer())
    doc["cells"]["c2"][0]["sheets"][0]["maslov"] = 2
    report = validate(load(doc))
    assert len(report) == 1 and "cusp maslov step" in report[0]


def test_comparable_crossing_is_reported():
    doc = save(builders.torus_curve())
    for c in doc["cells"]["c1"]:
        if c["crossing"]:
            c["order"] = [[1, 2]]
    report = validate(load(doc))
    assert any("crossing pair must be incomparable" in r for r in report)


def test_missing_field_is_named():
    doc = save(builders.flying_saucer())
    del doc["maslov_number"]
    with pytest.raises(SchemaError, match="maslov_number"):
        load(doc)


def test_unknown_schema_rejected():
    doc = save(builders.flying_saucer())
    doc["schema"] = "cellular-front/2"
    with pytest.raises(SchemaError, match="cellular-front/1"):
        load(doc)


def test_bad_json_reports_line():
    with pytest.raises(SchemaError, match="line"):
        load("{\n  \"schema\": \n}")


def test_linearize_examples():
    assert linearize(_cell([1, 2, 3], [(1, 2), (2, 3), (1, 3)])) == (1, 2, 3)
    assert linearize(_cell([1, 2], [], dim=1)) == (1, 2)
    assert linearize(_cell([1, 2, 3, 4], [(1, 2), (2, 4), (1, 3), (3, 4), (1, 4)])) == (1, 2, 3, 4)


def test_linearize_rejects_cycles():
    with pytest.raises(ValueError):
        linearize_sheets([1, 2], [(1, 2), (2, 1)])


@settings(max_examples=200)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12),
    st.permutations(list(range(1, n + 1))))))
def test_linearize_is_a_stable_topological_sort(data):
    n, raw, ids = data
    # orient every pair along a hidden permutation so the order is acyclic
    pairs = {(ids[min(a, b)], ids[max(a, b)]) for a, b in raw if a != b}
    lin = linearize_sheets(range(1, n + 1), pairs)
    pos = {s: i for i, s in enumerate(lin)}
    assert sorted(lin) == list(range(1, n + 1))
    assert all(pos[p] < pos[q] for p, q in pairs)
    assert linearize_sheets(lin, pairs) == lin


@pytest.mark.parametrize("name", ALL_BUILDERS)
def test_inclusions_embed_linear_orders(name):
    fc = builders.BUILDERS[name]()
    for inc in fc.inclusions:
        small, big = fc.order_of(inc.small), fc.order_of(inc.big)
        cell = fc.cell(inc.small)
        for i, p in enumerate(small):
            for q in small[i + 1:]:
                if cell.precedes(p, q):
                    assert big.index(inc.mapping[p]) < big.index(inc.mapping[q])


def test_validator_reports_every_violation_of_a_stage():
    doc = save(builders.torus_curve())
    doc["cells"]["c0"][0]["sheets"][0]["maslov"] = 5
    report = validate(load(json.loads(json.dumps(doc))))
    assert len(report) >= 2
    assert all("Maslov potential" in r for r in report)
