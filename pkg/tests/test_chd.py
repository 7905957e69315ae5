"""Chain homotopy diagrams: boundary constructions, validation and the bijection with augmentations."""
from __future__ import annotations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cellular_dga import builders
from cellular_dga.aug_search import SearchConfig, _Plan, list_augmentations, sample_augmentations
from cellular_dga.chd import (CHD, Augmentation, aug_to_chd, boundary_differential, boundary_morphism, chd_from_json,
                              chd_to_aug, chd_to_json, handleslide_factor, is_augmentation, swallowtail_differential,
                              validate_chd)
from cellular_dga.free_dga import CellularDGA
from cellular_dga.front_model import compose_inclusions
from cellular_dga.gf2_core import BitMatrix, is_chain_map

I = BitMatrix.identity


def _zero_chd(fc, rho=1):
    chd = CHD(rho=rho)
    for c in fc.cells:
        n = len(c.sheets)
        [chd.d, chd.f, chd.K][c.dim][c.id] = I(n) if c.dim == 1 else BitMatrix.zeros(n)
    return chd


def test_pure_cusp_block():
    fc = builders.flying_saucer()
    got = boundary_differential(fc, "v", BitMatrix.zeros(0), "D", {}, [(1, 2)])
    assert got == BitMatrix.from_lists([[0, 1], [0, 0]])


def test_swallowtail_boundary_differentials():
    fc = builders.tz_local()
    st_ = fc.swallowtail_at("v.st0")
    d_t = swallowtail_differential(fc, st_, BitMatrix.zeros(2), st_.t_corner.cell)
    # S_2 -> S_1 and S_3 -> S_1, nothing else
    assert d_t.to_strings() == ["0110", "0000", "0000", "0000"]
    d0 = BitMatrix.from_lists([[0, 1], [0, 0]])
    assert swallowtail_differential(fc, st_, d0, st_.t_corner.cell).to_strings() == ["0110", "0001", "0001", "0000"]
    for target in (st_.t_corner.cell, st_.s_corner.cell, st_.crossing_edge):
        d = swallowtail_differential(fc, st_, d0, target)
        assert (d @ d).is_zero()


def test_handleslide_factors():
    fc = builders.tz_local()
    st_ = fc.swallowtail_at("v.st0")
    h_t = handleslide_factor(fc, st_, "T", BitMatrix.zeros(2))
    assert h_t == I(4) + BitMatrix.from_strings(["0000", "0010", "0000", "0000"])
    # no sheets above the swallowtail sheet, so H_S is the bare handleslide
    assert handleslide_factor(fc, st_, "S", BitMatrix.zeros(2)) == h_t


def test_identity_morphism_with_cusp():
    fc = builders.flying_saucer()
    assert boundary_morphism(fc, "D", 0, I(0)) == I(2)


def test_zero_chd_on_saucer_is_valid():
    fc = builders.flying_saucer()
    assert validate_chd(fc, _zero_chd(fc)) == []


def test_zero_chd_on_torus_is_valid():
    # both boundary paths of each square meet the crossing once, so the swaps cancel
    fc = builders.torus_curve()
    assert validate_chd(fc, _zero_chd(fc)) == []


def test_unbalanced_torus_chd_names_the_failing_cells():
    fc = builders.torus_curve()
    chd = _zero_chd(fc)
    chd.f["ev"] = BitMatrix.from_lists([[1, 1], [0, 1]])
    report = validate_chd(fc, chd)
    assert [r.split(":")[0] for r in report] == ["L", "R"]


def test_saucer_zero_augmentation():
    dga = CellularDGA(builders.flying_saucer())
    chd = aug_to_chd(dga, Augmentation((0,), 1))
    assert chd.d["v"].shape == (0, 0) and chd.f["e"].shape == (0, 0) and chd.K["D"].is_zero()


def test_shape_and_triangularity_errors():
    fc = builders.torus_curve()
    chd = _zero_chd(fc)
    chd.d["v"] = BitMatrix.from_lists([[0, 0], [1, 0]])
    chd.K["L"] = BitMatrix.zeros(3)
    report = validate_chd(fc, chd)
    assert any("v: d is not strictly upper" in r for r in report)
    assert any("L: K has shape" in r for r in report)


@pytest.mark.parametrize("name,rho", [("saucer", 1), ("saucer", 0), ("torus", 1), ("torus", 0),
                                      ("tz_local", 0), ("conormal", 0)])
def test_bijection_on_full_lists(name, rho):
    dga = CellularDGA(builders.BUILDERS[name]())
    augs = list_augmentations(dga, rho)
    assert augs
    for aug in augs:
        chd = aug_to_chd(dga, aug)
        assert validate_chd(dga.fc, chd) == []
        assert chd_to_aug(dga, chd) == aug
        assert chd_from_json(chd_to_json(chd), dga.fc) == chd


def test_conormal_vertex_differential_vanishes():
    dga = CellularDGA(builders.conormal_unknot())
    for aug in list_augmentations(dga, 0):
        assert aug_to_chd(dga, aug).d["s.A0"].is_zero()


def test_chd_json_rejects_schema():
    with pytest.raises(ValueError):
        chd_from_json('{"schema": "chd/2"}', builders.flying_saucer())


def test_invalid_values_are_not_augmentations():
    dga = CellularDGA(builders.flying_saucer())
    assert is_augmentation(dga, (1,), 1)
    assert not is_augmentation(dga, (1,), 0)


@pytest.fixture(scope="module")
def samples():
    out = {}
    for name in ("tz_local", "torus"):
        dga = CellularDGA(builders.BUILDERS[name]())
        out[name] = (dga, sample_augmentations(dga, 6, 1, seed=11))
    return out


def test_sampled_chds_validate(samples):
    for dga, augs in samples.values():
        for aug in augs:
            chd = aug_to_chd(dga, aug)
            assert validate_chd(dga.fc, chd) == []
            assert chd_to_aug(dga, chd) == aug


def test_boundary_morphisms_are_chain_maps(samples):
    for dga, augs in samples.values():
        fc = dga.fc
        for aug in augs:
            chd = aug_to_chd(dga, aug)
            for face in fc.cells_of_dim(2):
                for i, step in enumerate(face.steps):
                    va, ma = fc.step_vertex_map(face.id, i, "start")
                    vb, mb = fc.step_vertex_map(face.id, i, "end")
                    inc = fc.step_inclusion(face.id, step)
                    # the morphism runs from the edge's initial end to its terminal end
                    (v_from, m_from), (v_to, m_to) = ((va, ma), (vb, mb)) if step.sign > 0 else ((vb, mb), (va, ma))
                    d_from = boundary_differential(fc, v_from, chd.d[v_from], face.id, m_from,
                                                   _cusp(fc, step.edge, "from", inc))
                    d_to = boundary_differential(fc, v_to, chd.d[v_to], face.id, m_to,
                                                 _cusp(fc, step.edge, "to", inc))
                    m = boundary_morphism(fc, face.id, i, chd.f[step.edge], chd.d)
                    assert is_chain_map(m, d_from, d_to), (face.id, i)


def _cusp(fc, edge, end, inc):
    return compose_inclusions(fc.edge_end_inclusion(edge, end), inc)[1]


@st.composite
def vertex_differential(draw, name):
    fc = builders.BUILDERS[name]()
    plan = _Plan(CellularDGA(fc), SearchConfig(rho=1))
    v = draw(st.sampled_from([c.id for c in fc.cells_of_dim(0)]))
    return fc, v, draw(st.sampled_from(plan.vertex_domain(v)))


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(["torus", "tz_local", "conormal"]).flatmap(vertex_differential))
def test_boundary_differential_squares_to_zero(data):
    fc, v, d = data
    assert (d @ d).is_zero()
    for inc in fc.inclusions:
        if inc.small != v:
            continue
        ext = boundary_differential(fc, v, d, inc.big, inc.mapping, inc.cusp_pairs)
        assert (ext @ ext).is_zero()
