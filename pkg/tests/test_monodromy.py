"""Fiber homology, continuation maps of loop words and the obstruction report."""
from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cellular_dga import builders
from cellular_dga.aug_search import list_augmentations, sample_augmentations
from cellular_dga.free_dga import CellularDGA
from cellular_dga.gf2_core import BitMatrix, GradedBasis, is_strictly_upper
from cellular_dga.monodromy import (LoopError, LoopWord, Move, continuation, dump_loops, fiber_complex,
                                    fiber_homology, homology_map, is_bijective_word, is_trivial_monodromy,
                                    load_loops, monodromy_on_homology, obstruction_report, random_loop)

I = BitMatrix.identity


@pytest.fixture(scope="module")
def torus():
    dga = CellularDGA(builders.torus_curve())
    return dga, list_augmentations(dga, 1), load_loops(builders.torus_loops())[0]


def test_empty_loop_is_identity(torus):
    dga, augs, _ = torus
    for aug in augs:
        assert continuation(dga, aug, LoopWord("w")) == I(2)


def test_torus_canonical_loop_swaps_the_sheets(torus):
    dga, augs, loop = torus
    seen = set()
    for aug in augs:
        m = continuation(dga, aug, loop)
        assert m.to_lists()[0] == [0, 1] and m.to_lists()[1][0] == 1
        seen.add(tuple(m.to_strings()))
        assert fiber_homology(dga, aug, "w") == {0: 2}
        assert not is_trivial_monodromy(dga, aug, loop)
    assert seen <= {("01", "10"), ("01", "11")}


def test_torus_report(torus):
    dga, _, loop = torus
    rep = obstruction_report(dga, [loop], rho=1)
    assert rep.method == "enumeration" and rep.augmentation_count == 16
    assert rep.obstructs_trivial_bundle and rep.obstructs_linear_at_infinity
    doc = rep.to_json()
    assert doc["schema"] == "obstruction/1" and doc["loops"] == ["transverse"]
    assert "NONTRIV" in rep.table()


def test_saucer_fiber_is_empty():
    dga = CellularDGA(builders.flying_saucer())
    for aug in list_augmentations(dga, 1):
        basis, d = fiber_complex(dga, aug, "v")
        assert basis.size == 0 and d.shape == (0, 0)
    rep = obstruction_report(dga, [], rho=1)
    assert rep.augmentation_count == 2 and not rep.obstructs_linear_at_infinity
    assert not rep.obstructs_trivial_bundle


def test_conormal_fiber_at_the_pole():
    dga = CellularDGA(builders.conormal_unknot())
    (aug,) = list_augmentations(dga, 0)
    basis, d = fiber_complex(dga, aug, "s.A0")
    assert basis.size == 2 and d.is_zero()
    assert fiber_homology(dga, aug, "s.A0") == {0: 1, 1: 1}
    rep = obstruction_report(dga, [], rho=0, basepoint="s.A0")
    assert rep.obstructs_linear_at_infinity and not rep.obstructs_trivial_bundle


def test_report_without_augmentations():
    g = {x.name: x for x in builders.graph_corpus()}["prism3"]
    rep = obstruction_report(CellularDGA(builders.tz_complex(g)), [], rho=1)
    assert rep.augmentation_count == 0
    assert not rep.obstructs_linear_at_infinity and not rep.obstructs_trivial_bundle


def test_homology_map_examples():
    d = BitMatrix.from_lists([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    # kernel spanned by e1, e3; image by e1; homology by e3
    assert homology_map(d, I(3)) == I(1)
    assert homology_map(BitMatrix.zeros(2), BitMatrix.from_lists([[0, 1], [1, 0]])).to_lists() == [[0, 1], [1, 0]]


# ---------------------------------------------------------------------------
# loop word IO
# ---------------------------------------------------------------------------


def test_loop_roundtrip(torus):
    _, _, loop = torus
    again = load_loops(dump_loops([loop, loop.reverse()]))
    assert again == [loop, loop.reverse()]
    assert again[1].reverse().moves == loop.moves


@pytest.mark.parametrize("doc,match", [
    ({"schema": "loop/2", "basepoint": "w"}, "loop/1"),
    ({"schema": "loop/1"}, "basepoint"),
    ({"schema": "loop/1", "basepoint": "w", "moves": [{"move": "jump"}]}, "unknown move"),
    ({"schema": "loop/1", "basepoint": "w", "moves": [{"move": "edge", "edge": "h1", "sign": 2}]}, "sign"),
    ({"schema": "loop/1", "basepoint": "w", "moves": [{"move": "edge"}]}, "missing field"),
])
def test_loop_document_errors(doc, match):
    with pytest.raises(LoopError, match=match):
        load_loops(doc)


def test_bad_words_are_rejected(torus):
    dga, augs, loop = torus
    with pytest.raises(LoopError, match="basepoint"):
        continuation(dga, augs[0], LoopWord("h1"))
    with pytest.raises(LoopError, match="ends at"):
        continuation(dga, augs[0], LoopWord("w", loop.moves[:2]))
    with pytest.raises(LoopError):
        continuation(dga, augs[0], LoopWord("w", (Move("edge", edge="h2", sign=1),)))
    with pytest.raises(LoopError, match="basepoints"):
        loop.then(LoopWord("v"))


def test_parallel_torus_loops_are_unipotent():
    dga = CellularDGA(builders.parallel_torus())
    rng = random.Random(4)
    basis = GradedBasis.total(3, (0, 0, 0), 0)
    seen = set()
    for aug in list_augmentations(dga, 0):
        for _ in range(3):
            m = continuation(dga, aug, random_loop(dga.fc, "x", rng, steps=6, regular_only=True))
            assert is_strictly_upper(m + I(3), basis)
            seen.add(m)
    assert len(seen) > 1


# ---------------------------------------------------------------------------
# continuation contracts on random words
# ---------------------------------------------------------------------------


def _cases():
    out = []
    torus_dga = CellularDGA(builders.torus_curve())
    out.append((torus_dga, list_augmentations(torus_dga, 1), "w"))
    local = CellularDGA(builders.tz_local())
    out.append((local, list_augmentations(local, 0) + sample_augmentations(local, 4, 1, seed=2), "v.A1"))
    con = CellularDGA(builders.conormal_unknot())
    out.append((con, list_augmentations(con, 0), "s.A0"))
    par = CellularDGA(builders.parallel_torus())
    out.append((par, list_augmentations(par, 1), "x"))
    return out


CASES = _cases()


def _check_contracts(dga, aug, base, rng):
    fc = dga.fc
    x = random_loop(fc, base, rng, steps=rng.randint(0, 10))
    y = random_loop(fc, base, rng, steps=rng.randint(0, 10))
    cx, cy = continuation(dga, aug, x), continuation(dga, aug, y)
    n = cx.nrows
    # traversing x then y composes right to left
    assert continuation(dga, aug, x.then(y)) == cy @ cx
    back = continuation(dga, aug, x.reverse())
    _, d = fiber_complex(dga, aug, base)
    assert homology_map(d, back @ cx) == I(homology_map(d, cx).nrows)
    if is_bijective_word(fc, x):
        assert back @ cx == I(n)
    basis = GradedBasis.total(n, tuple(s.maslov for s in fc.cell(base).sheets), fc.maslov_number)
    reg = random_loop(fc, base, rng, steps=rng.randint(0, 10), regular_only=True)
    c_reg = continuation(dga, aug, reg)
    assert is_strictly_upper(c_reg + I(n), basis)
    assert monodromy_on_homology(dga, aug, x).nrows == sum(fiber_homology(dga, aug, base).values())


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, len(CASES) - 1), st.integers(0, 2 ** 32 - 1))
def test_continuation_contracts(case, seed):
    dga, augs, base = CASES[case]
    rng = random.Random(seed)
    _check_contracts(dga, rng.choice(augs), base, rng)
