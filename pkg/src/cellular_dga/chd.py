"""Chain homotopy diagrams and their correspondence with augmentations.

A CHD assigns a differential ``d`` to every 0-cell, a unipotent chain map
``f`` to every 1-cell and a homotopy ``K`` to every 2-cell.  The boundary
constructions below are numeric (``BitMatrix``) and are written separately
from the symbolic matrices in ``free_dga`` so the two can be checked against
each other.  Matrix positions are 0-based linear positions of a cell's sheets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .front_model import FrontComplex, Swallowtail, compose_inclusions
from .free_dga import CellularDGA, GenId, KIND_BY_DIM, swallowtail_frame, crossing_relabel
from .gf2_core import (BitMatrix, GradedBasis, has_degree, is_chain_map, is_strictly_upper, mat_mul,
                       neumann_inverse)


@dataclass(frozen=True)
class Augmentation:
    """Values of an augmentation, indexed like ``CellularDGA.gens``."""

    values: Tuple[int, ...]
    rho: int

    def value(self, dga: CellularDGA, gen: GenId) -> int:
        return self.values[dga.index[gen]]


@dataclass
class CHD:
    d: Dict[str, BitMatrix] = field(default_factory=dict)
    f: Dict[str, BitMatrix] = field(default_factory=dict)
    K: Dict[str, BitMatrix] = field(default_factory=dict)
    rho: int = 1


# ---------------------------------------------------------------------------
# boundary constructions
# ---------------------------------------------------------------------------


def _place(fc: FrontComplex, small: str, big: str, sheet_map: Mapping[int, int], mat: BitMatrix) -> BitMatrix:
    slin = fc.order_of(small)
    blin = fc.order_of(big)
    perm = [blin.index(sheet_map[s]) for s in slin]
    rows = [0] * len(blin)
    for i, j in mat.nonzero():
        rows[perm[i]] |= 1 << perm[j]
    return BitMatrix(len(blin), len(blin), tuple(rows))


def _cusp_block(fc: FrontComplex, big: str, cusp: Sequence[Tuple[int, int]]) -> BitMatrix:
    blin = fc.order_of(big)
    rows = [0] * len(blin)
    for a, b in cusp:
        rows[blin.index(a)] |= 1 << blin.index(b)
    return BitMatrix(len(blin), len(blin), tuple(rows))


def _handle(n: int, ij: Tuple[int, int]) -> BitMatrix:
    rows = [1 << i for i in range(n)]
    rows[ij[0]] ^= 1 << ij[1]
    return BitMatrix(n, n, tuple(rows))


def swallowtail_differential(fc: FrontComplex, st: Swallowtail, d0: BitMatrix, target: str) -> BitMatrix:
    """Boundary differential of a swallowtail vertex into its T cell, S cell or crossing edge."""
    fr = swallowtail_frame(fc, st, "T")
    rows = [0] * fr.n
    for i, j in d0.nonzero():
        rows[fr.embed[i]] |= 1 << fr.embed[j]
    rows[fr.cusp[0]] |= 1 << fr.cusp[1]
    hat = BitMatrix(fr.n, fr.n, tuple(rows))
    h = _handle(fr.n, fr.handle)
    d_t = h @ hat @ h
    if target == st.t_corner.cell:
        return d_t
    return d_t.permuted(crossing_relabel(fc, st, target))


def handleslide_factor(fc: FrontComplex, st: Swallowtail, which: str, d0: BitMatrix) -> BitMatrix:
    """H_S or H_T in the positions of the corresponding corner cell."""
    fr = swallowtail_frame(fc, st, which)
    h = _handle(fr.n, fr.handle)
    if which == "T":
        return h
    rows = list(h.rows)
    up, low = fr.cusp
    for i, j in d0.nonzero():
        if fr.direction == "up" and j == fr.tip:
            rows[fr.embed[i]] ^= 1 << up
        if fr.direction == "down" and i == fr.tip:
            rows[low] ^= 1 << fr.embed[j]
    return BitMatrix(fr.n, fr.n, tuple(rows))


def boundary_differential(fc: FrontComplex, vertex: str, d: BitMatrix, big: str,
                          sheet_map: Optional[Mapping[int, int]] = None,
                          cusp: Sequence[Tuple[int, int]] = ()) -> BitMatrix:
    """Extend a vertex differential to a neighbouring cell.

    Off swallowtails this is ``d`` relabelled plus ``S_b -> S_a`` on each cusp
    pair.  Into the crossing edge or the S/T cells of a swallowtail the
    handleslide-conjugated formulas are used instead.
    """
    st = fc.swallowtail_at(vertex)
    if st is not None and big in (st.crossing_edge, st.s_corner.cell, st.t_corner.cell):
        return swallowtail_differential(fc, st, d, big)
    if sheet_map is None:
        inc = fc.find_inclusion(vertex, big)
        sheet_map, cusp = inc.mapping, inc.cusp_pairs
    return _place(fc, vertex, big, sheet_map, d) + _cusp_block(fc, big, cusp)


def edge_differentials(fc: FrontComplex, edge: str, ds: Mapping[str, BitMatrix]) -> Tuple[BitMatrix, BitMatrix]:
    """(d_minus, d_plus) on an edge from its initial and terminal vertices."""
    out = []
    for end in ("from", "to"):
        inc = fc.edge_end_inclusion(edge, end)
        out.append(boundary_differential(fc, inc.small, ds[inc.small], edge, inc.mapping, inc.cusp_pairs))
    return out[0], out[1]


def corner_differential(fc: FrontComplex, face: str, which: str, ds: Mapping[str, BitMatrix]) -> BitMatrix:
    cell = fc.cell(face)
    path = cell.path_a or cell.path_b
    step = path[0] if which == "v0" else path[-1]
    end = fc.step_ends(step)[0 if which == "v0" else 1]
    vmap, cusp = compose_inclusions(fc.edge_end_inclusion(step.edge, end), fc.step_inclusion(face, step))
    vertex = cell.v0 if which == "v0" else cell.v1
    return boundary_differential(fc, vertex, ds[vertex], face, vmap, cusp)


def corner_marks(fc: FrontComplex, face: str, index: int) -> List[Tuple[Swallowtail, str]]:
    out = []
    for st in fc.swallowtails:
        for which in ("S", "T"):
            c = st.corner(which)
            if c.cell == face and c.position == index:
                out.append((st, which))
    return out


def boundary_morphism(fc: FrontComplex, face: str, index: int, f: BitMatrix,
                      ds: Optional[Mapping[str, BitMatrix]] = None) -> BitMatrix:
    """``f (+) id`` on the face for boundary step ``index``, times ``H_X`` at swallowtail corners.

    The result maps the differential at the edge's initial end to the one at
    its terminal end; the step's sign is not applied here.
    """
    step = fc.cell(face).steps[index]
    inc = fc.step_inclusion(face, step)
    n = len(fc.cell(face).sheets)
    ident = BitMatrix.identity(len(fc.cell(step.edge).sheets))
    out = _place(fc, step.edge, face, inc.mapping, f + ident) + BitMatrix.identity(n)
    for st, which in corner_marks(fc, face, index):
        d0 = ds[st.vertex] if ds is not None else BitMatrix.zeros(len(fc.cell(st.vertex).sheets))
        out = out @ handleslide_factor(fc, st, which, d0)
    return out


def path_composite(fc: FrontComplex, face: str, which: str, fs: Mapping[str, BitMatrix],
                   ds: Mapping[str, BitMatrix]) -> BitMatrix:
    cell = fc.cell(face)
    n = len(cell.sheets)
    offset = 0 if which == "a" else len(cell.path_a)
    path = cell.path_a if which == "a" else cell.path_b
    acc = BitMatrix.identity(n)
    for i, step in enumerate(path):
        m = boundary_morphism(fc, face, offset + i, fs[step.edge], ds)
        if step.sign < 0:
            m = neumann_inverse(m)
        acc = m @ acc
    return acc


def face_defect(fc: FrontComplex, face: str, chd: CHD) -> BitMatrix:
    """``d1 K + K d0 + P_a + P_b``; zero exactly when the homotopy condition holds."""
    k = chd.K[face]
    d0 = corner_differential(fc, face, "v0", chd.d)
    d1 = corner_differential(fc, face, "v1", chd.d)
    return (d1 @ k + k @ d0 + path_composite(fc, face, "a", chd.f, chd.d)
            + path_composite(fc, face, "b", chd.f, chd.d))


# ---------------------------------------------------------------------------
# validation and the bijection
# ---------------------------------------------------------------------------


def validate_chd(fc: FrontComplex, chd: CHD) -> List[str]:
    """Every violated condition; an empty list means ``chd`` is a valid CHD."""
    out: List[str] = []
    rho = chd.rho
    for c in fc.cells:
        basis = fc.basis(c.id, modulus=rho)
        n = basis.size
        store = (chd.d, chd.f, chd.K)[c.dim]
        name = ("d", "f", "K")[c.dim]
        if c.id not in store:
            out.append(f"{c.id}: missing {name}")
            continue
        m = store[c.id]
        if m.shape != (n, n):
            out.append(f"{c.id}: {name} has shape {m.shape}, expected {(n, n)}")
            continue
        core = m + BitMatrix.identity(n) if c.dim == 1 else m
        if not is_strictly_upper(core, basis):
            out.append(f"{c.id}: {name} is not strictly upper triangular" + (" after removing I" if c.dim == 1 else ""))
        shift = (1, 0, -1)[c.dim]
        if not has_degree(core, basis, shift):
            out.append(f"{c.id}: {name} has the wrong degree")
        if c.dim == 0 and not (m @ m).is_zero():
            out.append(f"{c.id}: d does not square to zero")
    if out:
        return out
    for c in fc.cells_of_dim(1):
        dm, dp = edge_differentials(fc, c.id, chd.d)
        if not is_chain_map(chd.f[c.id], dm, dp):
            out.append(f"{c.id}: f is not a chain map between the boundary differentials")
    for c in fc.cells_of_dim(2):
        if not face_defect(fc, c.id, chd).is_zero():
            out.append(f"{c.id}: K is not a homotopy between the two boundary composites")
    return out


def _cell_values(dga: CellularDGA, values: Sequence[int], cid: str) -> BitMatrix:
    fc = dga.fc
    lin = fc.order_of(cid)
    kind = KIND_BY_DIM[fc.cell(cid).dim]
    rows = [0] * len(lin)
    for i, p in enumerate(lin):
        for j in range(i + 1, len(lin)):
            g = GenId(kind, cid, p, lin[j])
            idx = dga.index.get(g)
            if idx is not None and values[idx]:
                rows[i] |= 1 << j
    return BitMatrix(len(lin), len(lin), tuple(rows))


def aug_to_chd(dga: CellularDGA, aug: Augmentation) -> CHD:
    """d = eps(A), f = I + eps(B), K = eps(C) cell by cell."""
    fc = dga.fc
    out = CHD(rho=aug.rho)
    for c in fc.cells:
        m = _cell_values(dga, aug.values, c.id)
        if c.dim == 0:
            out.d[c.id] = m
        elif c.dim == 1:
            out.f[c.id] = m + BitMatrix.identity(m.nrows)
        else:
            out.K[c.id] = m
    return out


def chd_to_aug(dga: CellularDGA, chd: CHD) -> Augmentation:
    fc = dga.fc
    values = [0] * len(dga.gens)
    for idx, g in enumerate(dga.gens):
        lin = fc.order_of(g.cell)
        i, j = lin.index(g.p), lin.index(g.q)
        m = {"a": chd.d, "b": chd.f, "c": chd.K}[g.kind][g.cell]
        values[idx] = m[i, j]
    return Augmentation(tuple(values), chd.rho)


def is_augmentation(dga: CellularDGA, values: Sequence[int], rho: int) -> bool:
    """Direct check of eps(d g) = 0 and the grading condition."""
    from .free_dga import evaluate
    for i, deg in enumerate(dga.degrees):
        if values[i] and not _degree_ok(deg, rho):
            return False
    return all(evaluate(p, values) == 0 for p in dga.differential())


def _degree_ok(deg: int, rho: int) -> bool:
    if rho == 1:
        return True
    if rho == 0:
        return deg == 0
    return deg % rho == 0


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def chd_to_json(chd: CHD) -> str:
    doc = {
        "schema": "chd/1",
        "rho": chd.rho,
        "d": {k: v.to_strings() for k, v in chd.d.items()},
        "f": {k: v.to_strings() for k, v in chd.f.items()},
        "K": {k: v.to_strings() for k, v in chd.K.items()},
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def chd_from_json(text: str, fc: FrontComplex) -> CHD:
    doc = json.loads(text)
    if doc.get("schema") != "chd/1":
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")

    def mats(key: str) -> Dict[str, BitMatrix]:
        return {k: BitMatrix.from_strings(v, ncols=len(fc.cell(k).sheets)) for k, v in doc[key].items()}

    return CHD(mats("d"), mats("f"), mats("K"), int(doc["rho"]))
