"""Generators, symbolic differential, grading and evaluation."""
from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cellular_dga import builders
from cellular_dga.chd import corner_marks
from cellular_dga.free_dga import CellularDGA, GenId, InvalidComplex, Poly, evaluate, generators
from cellular_dga.front_model import load, save, validate


def _doc(cells, inclusions=(), m=0):
    return {"schema": "cellular-front/1", "maslov_number": m,
            "cells": {"c0": cells.get(0, []), "c1": cells.get(1, []), "c2": cells.get(2, [])},
            "inclusions": list(inclusions), "swallowtails": []}


def _sheets(*maslov):
    return [{"id": i + 1, "maslov": mu} for i, mu in enumerate(maslov)]


def _chain(n):
    return [[i, j] for i in range(1, n + 1) for j in range(i + 1, n + 1)]


THREE_SHEET_POINT = _doc({0: [{"id": "x", "sheets": _sheets(2, 1, 0), "order": _chain(3)}]})
SEGMENT = _doc({
    0: [{"id": "x", "sheets": _sheets(1, 0), "order": [[1, 2]]},
        {"id": "y", "sheets": _sheets(1, 0), "order": [[1, 2]]}],
    1: [{"id": "e", "sheets": _sheets(1, 0), "order": [[1, 2]], "from": "x", "to": "y", "crossing": False}]},
    [{"id": "x>e", "small": "x", "big": "e", "map": {"1": 1, "2": 2}, "cusp_pairs": []},
     {"id": "y>e", "small": "y", "big": "e", "map": {"1": 1, "2": 2}, "cusp_pairs": []}])


def _d(dga: CellularDGA, label: str) -> str:
    for i, g in enumerate(dga.gens):
        if g.label() == label:
            return dga.format_poly(dga.differential()[i])
    raise KeyError(label)


def test_saucer_generators():
    gens = generators(builders.flying_saucer())
    assert gens == [(GenId("c", "D", 1, 2), 2)]


def test_torus_generators():
    gens = dict(generators(builders.torus_curve()))
    bs = {g.cell: deg for g, deg in gens.items() if g.kind == "b"}
    assert bs == {"h1": 0, "h2": 0, "ev": 0}
    assert not any(g.cell == "c" for g in gens)


def test_single_sheet_point_has_no_generators():
    fc = load(_doc({0: [{"id": "x", "sheets": _sheets(0), "order": []}]}))
    assert validate(fc) == [] and generators(fc) == []


def test_vertex_differential_is_a_squared():
    dga = CellularDGA(load(THREE_SHEET_POINT))
    assert _d(dga, "a[x](1,3)") == "a[x](1,2)*a[x](2,3)"
    assert _d(dga, "a[x](1,2)") == "0"


def test_edge_differential_without_cusps():
    dga = CellularDGA(load(SEGMENT))
    assert _d(dga, "b[e](1,2)") in ("a[x](1,2) + a[y](1,2)", "a[y](1,2) + a[x](1,2)")


def test_saucer_differential_vanishes():
    dga = CellularDGA(builders.flying_saucer())
    assert _d(dga, "c[D](1,2)") == "0"
    assert dga.dump() == "d c[D](1,2) = 0\n"


def test_cusp_blocks():
    dga = CellularDGA(builders.flying_saucer())
    fc = dga.fc
    vert = dga.placed_matrix("v", "D", {}, [(1, 2)])
    assert vert[0, 1] == Poly([()]) and vert[1, 0] == Poly()
    edge = dga.placed_matrix("e", "D", {}, [(1, 2)])
    assert all(not edge[i, j] for i in range(2) for j in range(2))
    assert fc.order_of("D") == (1, 2)


def test_swallowtail_block_into_t_cell():
    # two vertex sheets, merging sheets at positions 1..3: the constant part is E_{1,2} + E_{1,3}
    dga = CellularDGA(builders.tz_local())
    st = dga.fc.swallowtail_at("v.st0")
    a_t = dga.swallowtail_matrix(st, st.t_corner.cell)
    zero = [0] * len(dga.gens)
    const = [[evaluate(a_t[i, j], zero) for j in range(4)] for i in range(4)]
    assert const == [[0, 1, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]


def test_conormal_quadrant_factor_sequence():
    fc = builders.conormal_unknot()
    steps = [(s.edge, s.sign) for s in fc.cell("s.C2").steps]
    assert steps == [("s.A0-M1", 1), ("s.R-M1", -1), ("s.BR", 1), ("s.B0", -1)]
    marks = [[(m.vertex, which) for m, which in corner_marks(fc, "s.C2", i)] for i in range(4)]
    assert marks == [[("s.A0", "S")], [("s.R", "T")], [], []]
    dga = CellularDGA(fc)
    assert _d(dga, "c[s.C2](1,2)") == "1 + a[s.A0](1,2) + b[s.B0](1,2)"


@pytest.mark.parametrize("name", sorted(builders.BUILDERS))
def test_builders_d_squared_and_degrees(name):
    dga = CellularDGA(builders.BUILDERS[name]())
    assert dga.check_d_squared() == []
    assert dga.check_degrees() == []


def test_invalid_complex_rejected():
    doc = save(builders.flying_saucer())
    doc["cells"]["c2"][0]["sheets"][0]["maslov"] = 3
    with pytest.raises(InvalidComplex):
        CellularDGA(load(doc))


def test_evaluate_examples():
    assert evaluate(Poly([()]), []) == 1
    assert evaluate(Poly([(0, 1)]), [1, 0]) == 0
    assert evaluate(Poly([(2,), (0, 1)]), [1, 1, 1]) == 0


def test_poly_cancels_in_pairs():
    assert Poly([(0,), (0,)]) == Poly()
    assert Poly.gen(0) + Poly.gen(0) == Poly()


def test_dump_is_stable():
    a = CellularDGA(builders.torus_curve()).dump()
    b = CellularDGA(builders.torus_curve()).dump()
    assert a == b and a.count("\n") == 6


# ---------------------------------------------------------------------------
# randomized validator-passing mutations
# ---------------------------------------------------------------------------


def relabel_sheets(doc: dict, rng: random.Random) -> dict:
    """Rename the sheets of every cell by a random permutation, updating all references."""
    doc = save(load(doc))
    perms = {}
    for key in ("c0", "c1", "c2"):
        for c in doc["cells"][key]:
            ids = [s["id"] for s in c["sheets"]]
            new = ids[:]
            rng.shuffle(new)
            perm = dict(zip(ids, new))
            perms[c["id"]] = perm
            for s in c["sheets"]:
                s["id"] = perm[s["id"]]
            c["order"] = [[perm[p], perm[q]] for p, q in c["order"]]
    for inc in doc["inclusions"]:
        ps, pb = perms[inc["small"]], perms[inc["big"]]
        inc["map"] = {str(ps[int(a)]): pb[b] for a, b in inc["map"].items()}
        inc["cusp_pairs"] = [[pb[a], pb[b]] for a, b in inc["cusp_pairs"]]
    return doc


def shift_maslov(doc: dict, k: int) -> dict:
    doc = save(load(doc))
    for key in ("c0", "c1", "c2"):
        for c in doc["cells"][key]:
            for s in c["sheets"]:
                s["maslov"] += k
    return doc


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(["saucer", "torus", "tz_local", "conormal"]), st.integers(0, 10_000), st.integers(-3, 3))
def test_d_squared_survives_mutations(name, seed, shift):
    doc = shift_maslov(relabel_sheets(save(builders.BUILDERS[name]()), random.Random(seed)), shift)
    fc = load(doc)
    assert validate(fc) == []
    dga = CellularDGA(fc)
    assert dga.check_d_squared() == []
    assert dga.check_degrees() == []
