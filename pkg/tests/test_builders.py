"""Builder complexes and the trivalent graph corpus."""
from __future__ import annotations

import itertools
import json

import pytest

from cellular_dga import builders
from cellular_dga.aug_search import count_augmentations
from cellular_dga.free_dga import CellularDGA
from cellular_dga.front_model import validate
from cellular_dga.gf2_core import BitMatrix

CORPUS = {g.name: g for g in builders.graph_corpus()}

# face lengths written out by hand for each corpus graph
FACE_LENGTHS = {
    "theta": [2, 2, 2], "tetrahedron": [3, 3, 3, 3], "cube": [4] * 6, "prism3": [3, 3, 4, 4, 4],
    "prism5": [5, 5] + [4] * 5, "prism6": [6, 6] + [4] * 6, "k4_truncated_once": [4, 4, 3, 4, 3],
    "truncated_tetrahedron": [6] * 4 + [3] * 4, "torus_theta": [6],
}


def test_corpus_covers_the_required_families():
    assert len(CORPUS) >= 8
    assert sum(g.genus == 1 for g in CORPUS.values()) == 1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_graphs_are_valid_trivalent_embeddings(name):
    g = CORPUS[name]
    assert g.validate() == []
    assert sorted(len(f) for f in g.faces) == sorted(FACE_LENGTHS[name])
    assert builders.even_faces(g) == all(n % 2 == 0 for n in FACE_LENGTHS[name])


def _brute_3_colorable(g) -> bool:
    adj = set()
    for f1, f2, _ in builders.dual_graph(g).edges(keys=True):
        adj.add((f1, f2))
    n = len(g.faces)
    return any(all(c[a] != c[b] for a, b in adj) for c in itertools.product(range(3), repeat=n))


@pytest.mark.parametrize("name", sorted(n for n, g in CORPUS.items() if g.genus == 0))
def test_sphere_graphs_even_faces_iff_dual_colorable(name):
    g = CORPUS[name]
    assert builders.even_faces(g) == builders.dual_3_colorable(g) == _brute_3_colorable(g)


def test_graph_roundtrip():
    for g in CORPUS.values():
        assert builders.load_graph(json.dumps(builders.save_graph(g))) == g


def test_graph_errors():
    doc = builders.save_graph(CORPUS["theta"])
    with pytest.raises(builders.GraphError, match="trigraph/1"):
        builders.load_graph(dict(doc, schema="trigraph/2"))
    with pytest.raises(builders.GraphError, match="missing"):
        builders.load_graph({k: v for k, v in doc.items() if k != "faces"})
    bad = dict(doc, faces=[["e0", "e1"], ["e1", "e2"]])
    with pytest.raises(builders.GraphError, match="appears 1 times"):
        builders.even_faces(builders.load_graph(bad))
    loop = dict(doc, edges=[{"id": "e0", "ends": ["u", "u"]}] + doc["edges"][1:])
    assert any("loop" in r for r in builders.load_graph(loop).validate())
    with pytest.raises(builders.GraphError):
        builders.tz_complex(builders.load_graph(bad))


@pytest.mark.parametrize("name,count", [("saucer", 1), ("torus", 6), ("conormal", 136), ("tz_local", 78),
                                        ("parallel_torus", 12)])
def test_generator_counts(name, count):
    assert len(CellularDGA(builders.BUILDERS[name]()).gens) == count


def test_tz_complex_sizes_scale_with_the_graph():
    theta = builders.tz_complex(CORPUS["theta"])
    assert validate(theta) == []
    local = builders.tz_local()
    # every graph vertex carries one copy of the local model
    n0 = sum(1 for c in local.cells if c.dim == 0)
    assert sum(1 for c in theta.cells if c.dim == 0) >= 2 * n0
    assert sum(1 for c in theta.cells if c.id.startswith("u.")) == len(local.cells)


def test_torus_loops_document():
    doc = builders.torus_loops()
    assert doc["schema"] == "loop/1" and doc["name"] == "transverse"


def _commuting_unipotent_pairs(n: int) -> int:
    """Pairs of commuting upper unitriangular n x n matrices over GF(2), by direct enumeration."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mats = []
    for bits in range(1 << len(slots)):
        m = BitMatrix.identity(n)
        for k, (i, j) in enumerate(slots):
            if (bits >> k) & 1:
                m = m.with_entry(i, j, 1)
        mats.append(m)
    return sum(a @ b == b @ a for a in mats for b in mats)


def test_parallel_torus_graded_augmentations_are_commuting_pairs():
    # with every sheet at Maslov 0 only the edge maps survive grading, and the square forces them to commute
    fc = builders.parallel_torus(3)
    assert validate(fc) == []
    assert count_augmentations(fc, 0) == _commuting_unipotent_pairs(3) == 40


def test_parallel_torus_needs_a_sheet():
    with pytest.raises(ValueError):
        builders.parallel_torus(0)
