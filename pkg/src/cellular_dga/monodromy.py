"""Fiber homology, continuation maps along loop words, and obstruction reports.

A loop word is an explicit sequence of moves between *frames*.  A frame is a
vector space of sheets with a differential read off from a chain homotopy
diagram:

* ``V(v)``: the sheets over a 0-cell with its differential ``d_v``;
* ``E(e, end)``: the sheets over a 1-cell with the boundary differential
  coming from the vertex at ``end``;
* ``F(face, v, tag)``: the sheets over a 2-cell with the boundary
  differential coming from the corner vertex ``v``.

Each move contributes a chain map between consecutive frames and the
continuation map of a word is their composite, read right to left.
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .aug_search import CapExceeded, SearchConfig, staged_search, value_patterns
from .chd import (CHD, Augmentation, _degree_ok, aug_to_chd, boundary_differential, edge_differentials,
                  handleslide_factor)
from .free_dga import CellularDGA, GenId, crossing_relabel, swallowtail_frame
from .front_model import FrontComplex, Inclusion, compose_inclusions
from .gf2_core import (BitMatrix, GradedBasis, has_degree, homology_dims, is_chain_map, neumann_inverse,
                       row_reduce)

LOOP_SCHEMA = "loop/1"


class LoopError(ValueError):
    """Raised for malformed or non-composable loop words."""


# ---------------------------------------------------------------------------
# loop words
# ---------------------------------------------------------------------------

MOVE_KINDS = ("cusp_in", "cusp_out", "edge", "cross", "st_corner")


@dataclass(frozen=True)
class Move:
    kind: str
    inclusion: str = ""
    end: str = ""
    edge: str = ""
    sign: int = 1
    from_face: str = ""
    to_face: str = ""
    swallowtail: str = ""
    corner: str = ""
    direction: str = ""

    def inverse(self) -> "Move":
        if self.kind == "cusp_in":
            return Move("cusp_out", inclusion=self.inclusion, end=self.end)
        if self.kind == "cusp_out":
            return Move("cusp_in", inclusion=self.inclusion, end=self.end)
        if self.kind == "edge":
            return Move("edge", edge=self.edge, sign=-self.sign)
        if self.kind == "cross":
            return Move("cross", edge=self.edge, from_face=self.to_face, to_face=self.from_face, end=self.end)
        back = "exit" if self.direction == "enter" else "enter"
        return Move("st_corner", swallowtail=self.swallowtail, corner=self.corner, direction=back)

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"move": self.kind}
        if self.kind in ("cusp_in", "cusp_out"):
            out.update(inclusion=self.inclusion, end=self.end)
        elif self.kind == "edge":
            out.update(edge=self.edge, sign=self.sign)
        elif self.kind == "cross":
            out.update(edge=self.edge, from_face=self.from_face, to_face=self.to_face, end=self.end)
        else:
            out.update(swallowtail=self.swallowtail, corner=self.corner, direction=self.direction)
        return out

    @classmethod
    def from_json(cls, d: Mapping[str, Any]) -> "Move":
        kind = d.get("move")
        if kind not in MOVE_KINDS:
            raise LoopError(f"unknown move {kind!r}")
        try:
            if kind in ("cusp_in", "cusp_out"):
                end = d["end"]
                if end not in ("from", "to"):
                    raise LoopError("end must be 'from' or 'to'")
                return cls(kind, inclusion=str(d["inclusion"]), end=end)
            if kind == "edge":
                sign = int(d["sign"])
                if sign not in (1, -1):
                    raise LoopError("edge sign must be +1 or -1")
                return cls(kind, edge=str(d["edge"]), sign=sign)
            if kind == "cross":
                return cls(kind, edge=str(d["edge"]), from_face=str(d["from_face"]), to_face=str(d["to_face"]),
                           end=str(d["end"]))
            if d["corner"] not in ("S", "T") or d["direction"] not in ("enter", "exit"):
                raise LoopError("st_corner needs corner S|T and direction enter|exit")
            return cls(kind, swallowtail=str(d["swallowtail"]), corner=d["corner"], direction=d["direction"])
        except KeyError as exc:
            raise LoopError(f"move {kind}: missing field {exc}") from None


@dataclass(frozen=True)
class LoopWord:
    basepoint: str
    moves: Tuple[Move, ...] = ()
    name: str = ""

    def reverse(self) -> "LoopWord":
        return LoopWord(self.basepoint, tuple(m.inverse() for m in reversed(self.moves)), self.name + "^-1")

    def then(self, other: "LoopWord") -> "LoopWord":
        """Traverse ``self`` first, then ``other``."""
        if other.basepoint != self.basepoint:
            raise LoopError("loops have different basepoints")
        return LoopWord(self.basepoint, self.moves + other.moves, f"{self.name}*{other.name}")

    def to_json(self) -> Dict[str, Any]:
        return {"schema": LOOP_SCHEMA, "basepoint": self.basepoint, "name": self.name,
                "moves": [m.to_json() for m in self.moves]}


def load_loops(document: Any) -> List[LoopWord]:
    """Parse a ``loop/1`` document holding one loop or a ``loops`` list."""
    if isinstance(document, (str, bytes)):
        document = json.loads(document)
    if not isinstance(document, Mapping) or document.get("schema") != LOOP_SCHEMA:
        raise LoopError(f"unsupported schema {document.get('schema') if isinstance(document, Mapping) else None!r}; "
                        f"expected {LOOP_SCHEMA!r}")
    if "basepoint" not in document:
        raise LoopError("missing field 'basepoint'")
    base = str(document["basepoint"])
    if "loops" in document:
        return [LoopWord(base, tuple(Move.from_json(m) for m in lp.get("moves", [])), str(lp.get("name", f"loop{i}")))
                for i, lp in enumerate(document["loops"])]
    return [LoopWord(base, tuple(Move.from_json(m) for m in document.get("moves", [])),
                     str(document.get("name", "loop0")))]


def dump_loops(loops: Sequence[LoopWord]) -> Dict[str, Any]:
    if not loops:
        raise LoopError("no loops to write")
    return {"schema": LOOP_SCHEMA, "basepoint": loops[0].basepoint,
            "loops": [{"name": lp.name, "moves": [m.to_json() for m in lp.moves]} for lp in loops]}


# ---------------------------------------------------------------------------
# frames and move maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Frame:
    kind: str                     # V | E | F
    cell: str
    end: str = ""                 # E: "from" | "to"
    vertex: str = ""              # F: corner vertex
    tag: Tuple = ()               # F: sheet map and cusp pairs, or ("st",)


def _inclusion_matrix(fc: FrontComplex, small: str, big: str, mapping: Mapping[int, int]) -> BitMatrix:
    """Matrix of the sheet inclusion: column of small position i has a 1 at the big position of its image."""
    slin, blin = fc.order_of(small), fc.order_of(big)
    rows = [0] * len(blin)
    for i, s in enumerate(slin):
        rows[blin.index(mapping[s])] |= 1 << i
    return BitMatrix(len(blin), len(slin), tuple(rows))


def _is_st_cell(fc: FrontComplex, vertex: str, face: str) -> bool:
    st = fc.swallowtail_at(vertex)
    return st is not None and face in (st.s_corner.cell, st.t_corner.cell)


def _face_frame(fc: FrontComplex, face: str, vertex: str, mapping: Mapping[int, int],
                cusp: Sequence[Tuple[int, int]]) -> Frame:
    if _is_st_cell(fc, vertex, face):
        return Frame("F", face, vertex=vertex, tag=("st",))
    return Frame("F", face, vertex=vertex, tag=(tuple(sorted(mapping.items())), tuple(sorted(cusp))))


class FrameContext:
    """Differentials of frames and chain maps of moves for one CHD."""

    def __init__(self, fc: FrontComplex, chd: CHD) -> None:
        self.fc = fc
        self.chd = chd

    def differential(self, fr: Frame) -> BitMatrix:
        fc, ds = self.fc, self.chd.d
        if fr.kind == "V":
            return ds[fr.cell]
        if fr.kind == "E":
            dm, dp = edge_differentials(fc, fr.cell, ds)
            return dm if fr.end == "from" else dp
        if fr.tag == ("st",):
            return boundary_differential(fc, fr.vertex, ds[fr.vertex], fr.cell)
        mapping, cusp = fr.tag
        return boundary_differential(fc, fr.vertex, ds[fr.vertex], fr.cell, dict(mapping), cusp)

    def _h(self, st_vertex: str, which: str) -> BitMatrix:
        st = self.fc.swallowtail_at(st_vertex)
        h = handleslide_factor(self.fc, st, which, self.chd.d[st_vertex])
        return h

    def _corner_which(self, vertex: str, edge: str, face: str) -> Optional[str]:
        st = self.fc.swallowtail_at(vertex)
        if st is None:
            return None
        for which in ("S", "T"):
            if st.corner(which).cell == face and st.cusp_edge(which) == edge:
                return which
        return None

    def apply(self, fr: Frame, mv: Move) -> Tuple[Frame, BitMatrix]:
        """Next frame and the chain map of ``mv`` starting at ``fr``."""
        fc = self.fc
        if mv.kind == "edge":
            e = fc.cell(mv.edge) if fc.has_cell(mv.edge) else None
            if e is None or e.dim != 1:
                raise LoopError(f"edge move on unknown 1-cell {mv.edge}")
            start = "from" if mv.sign > 0 else "to"
            if fr != Frame("E", mv.edge, end=start):
                raise LoopError(f"edge move {mv.edge}{mv.sign:+d} needs frame E({mv.edge},{start}), at {fr}")
            f = self.chd.f[mv.edge]
            return Frame("E", mv.edge, end="to" if mv.sign > 0 else "from"), (f if mv.sign > 0 else neumann_inverse(f))
        if mv.kind == "cusp_in":
            _, dst, m = self._cusp_in(fr, _find(fc, mv.inclusion), mv.end)
            return dst, m
        if mv.kind == "cross":
            return self._cross(fr, mv)
        return self._st_corner(fr, mv)

    def _cusp_source(self, inc: Inclusion, end: str) -> Frame:
        fc = self.fc
        small = fc.cell(inc.small)
        if small.dim == 0:
            return Frame("V", inc.small)
        return Frame("E", inc.small, end=end)

    def _cusp_in(self, fr: Frame, inc: Inclusion, end: str) -> Tuple[Frame, Frame, BitMatrix]:
        fc = self.fc
        small, big = fc.cell(inc.small), fc.cell(inc.big)
        if small.dim == 0 and big.dim == 1:
            if fr != Frame("V", small.id):
                raise LoopError(f"cusp_in {inc.id} needs frame V({small.id}), at {fr}")
            if fc.edge_end_inclusion(big.id, end).id != inc.id:
                raise LoopError(f"inclusion {inc.id} is not the {end} end of {big.id}")
            dst = Frame("E", big.id, end=end)
            st = fc.swallowtail_at(small.id)
            if st is not None and big.id == st.crossing_edge:
                # through the T cell: H_T j, then relabel T positions to the crossing edge
                tfr = swallowtail_frame(fc, st, "T")
                j = _embed(tfr.embed, tfr.n)
                perm = crossing_relabel(fc, st, big.id)
                m = (self._h(small.id, "T") @ j)
                return fr, dst, _permute_rows(m, perm)
            return fr, dst, _inclusion_matrix(fc, small.id, big.id, inc.mapping)
        if small.dim == 1 and big.dim == 2:
            if fr.kind != "E" or fr.cell != small.id or fr.end != end:
                raise LoopError(f"cusp_in {inc.id} needs frame E({small.id},{end}), at {fr}")
            vinc = fc.edge_end_inclusion(small.id, end)
            vmap, cusp = compose_inclusions(vinc, inc)
            dst = _face_frame(fc, big.id, vinc.small, vmap, cusp)
            j = _inclusion_matrix(fc, small.id, big.id, inc.mapping)
            which = self._corner_which(vinc.small, small.id, big.id)
            if which is not None:
                j = self._h(vinc.small, which) @ j
            return fr, dst, j
        raise LoopError(f"inclusion {inc.id} is neither vertex-to-edge nor edge-to-face")

    def _cross(self, fr: Frame, mv: Move) -> Tuple[Frame, BitMatrix]:
        fc = self.fc
        if fr.kind != "F" or fr.cell != mv.from_face:
            raise LoopError(f"cross needs a frame over {mv.from_face}, at {fr}")
        vinc = fc.edge_end_inclusion(mv.edge, mv.end)
        if vinc.small != fr.vertex:
            raise LoopError(f"cross over {mv.edge} at its {mv.end} end does not meet {fr.vertex}")
        try:
            i1 = fc.find_inclusion(mv.edge, mv.from_face)
            i2 = fc.find_inclusion(mv.edge, mv.to_face)
        except Exception as exc:
            raise LoopError(str(exc)) from None
        if i1.cusp_pairs or i2.cusp_pairs:
            raise LoopError(f"cannot cross the cusp edge {mv.edge}")
        m1, m2 = i1.mapping, i2.mapping
        l1, l2 = fc.order_of(mv.from_face), fc.order_of(mv.to_face)
        rows = [0] * len(l2)
        for s in fc.order_of(mv.edge):
            rows[l2.index(m2[s])] |= 1 << l1.index(m1[s])
        vmap, cusp = compose_inclusions(vinc, i2)
        dst = _face_frame(fc, mv.to_face, fr.vertex, vmap, cusp)
        expect = _face_frame(fc, mv.from_face, fr.vertex, *compose_inclusions(vinc, i1))
        if expect != fr:
            raise LoopError(f"frame {fr} is not the one seen through {mv.edge}")
        return dst, BitMatrix(len(l2), len(l1), tuple(rows))

    def _st_corner(self, fr: Frame, mv: Move) -> Tuple[Frame, BitMatrix]:
        fc = self.fc
        st = fc.swallowtail_at(mv.swallowtail)
        if st is None:
            raise LoopError(f"{mv.swallowtail} is not a swallowtail point")
        sfr = swallowtail_frame(fc, st, mv.corner)
        cell = Frame("F", sfr.cell, vertex=st.vertex, tag=("st",))
        m = self._h(st.vertex, mv.corner) @ _embed(sfr.embed, sfr.n)
        if mv.direction == "enter":
            if fr != Frame("V", st.vertex):
                raise LoopError(f"st_corner enter needs frame V({st.vertex}), at {fr}")
            return cell, m
        raise LoopError("st_corner exit is handled by the inverse move table")


def _find(fc: FrontComplex, iid: str) -> Inclusion:
    try:
        return fc.inclusion(iid)
    except Exception:
        raise LoopError(f"unknown inclusion {iid}") from None


def _embed(embed: Sequence[int], n: int) -> BitMatrix:
    rows = [0] * n
    for i, p in enumerate(embed):
        rows[p] |= 1 << i
    return BitMatrix(n, len(embed), tuple(rows))


def _permute_rows(m: BitMatrix, perm: Sequence[int]) -> BitMatrix:
    rows = [0] * m.nrows
    for i, r in enumerate(m.rows):
        rows[perm[i]] = r
    return BitMatrix(m.nrows, m.ncols, tuple(rows))


def _invert(m: BitMatrix) -> BitMatrix:
    n = m.nrows
    rows = [m.rows[i] | (1 << (n + i)) for i in range(n)]
    reduced, pivots = row_reduce(rows, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise LoopError("move map is not invertible")
    out = [0] * n
    for r, p in zip(reduced, pivots):
        if p < n:
            out[p] = r >> n
    return BitMatrix(n, n, tuple(out))


# ---------------------------------------------------------------------------
# continuation and monodromy
# ---------------------------------------------------------------------------


def _chd(dga: CellularDGA, aug: Augmentation) -> CHD:
    return aug_to_chd(dga, aug)


def fiber_complex(dga: CellularDGA, aug: Augmentation, vertex: str) -> Tuple[GradedBasis, BitMatrix]:
    """The ordered complex over a 0-cell: its sheets with ``d S_q = sum eps(a_pq) S_p``."""
    fc = dga.fc
    if not fc.has_cell(vertex) or fc.cell(vertex).dim != 0:
        raise LoopError(f"{vertex} is not a 0-cell")
    return fc.basis(vertex, modulus=aug.rho), _chd(dga, aug).d[vertex]


def fiber_homology(dga: CellularDGA, aug: Augmentation, vertex: str) -> Dict[int, int]:
    basis, d = fiber_complex(dga, aug, vertex)
    return homology_dims(d, basis)


def continuation(dga: CellularDGA, aug: Augmentation, loop: LoopWord, check: bool = True) -> BitMatrix:
    """Composite chain map of a loop word on the basepoint fiber complex."""
    ctx = FrameContext(dga.fc, _chd(dga, aug))
    return _run(ctx, loop, check)


def _run(ctx: FrameContext, loop: LoopWord, check: bool = True) -> BitMatrix:
    fc = ctx.fc
    if not fc.has_cell(loop.basepoint) or fc.cell(loop.basepoint).dim != 0:
        raise LoopError(f"basepoint {loop.basepoint} is not a 0-cell")
    fr = Frame("V", loop.basepoint)
    n = len(fc.cell(loop.basepoint).sheets)
    acc = BitMatrix.identity(n)
    for mv in loop.moves:
        nxt, m = _move_map(ctx, fr, mv)
        if check and not is_chain_map(m, ctx.differential(fr), ctx.differential(nxt)):
            raise LoopError(f"move {mv.to_json()} does not give a chain map")
        acc = m @ acc
        fr = nxt
    if fr != Frame("V", loop.basepoint):
        raise LoopError(f"loop ends at {fr}, not at the basepoint")
    return acc


def _move_map(ctx: FrameContext, fr: Frame, mv: Move) -> Tuple[Frame, BitMatrix]:
    """Forward moves come from ``FrameContext.apply``; inverse moves invert each factor."""
    if mv.kind == "cusp_out":
        inc = _find(ctx.fc, mv.inclusion)
        src = ctx._cusp_source(inc, mv.end)
        _, dst, _ = ctx._cusp_in(src, inc, mv.end)
        if dst != fr:
            raise LoopError(f"cusp_out {inc.id} needs frame {dst}, at {fr}")
        return src, _cusp_out_matrix(ctx, inc, mv.end)
    if mv.kind == "st_corner" and mv.direction == "exit":
        fc = ctx.fc
        st = fc.swallowtail_at(mv.swallowtail)
        if st is None:
            raise LoopError(f"{mv.swallowtail} is not a swallowtail point")
        sfr = swallowtail_frame(fc, st, mv.corner)
        cell = Frame("F", sfr.cell, vertex=st.vertex, tag=("st",))
        if fr != cell:
            raise LoopError(f"st_corner exit needs frame {cell}, at {fr}")
        h = ctx._h(st.vertex, mv.corner)
        return Frame("V", st.vertex), _embed(sfr.embed, sfr.n).transpose() @ _invert(h)
    return ctx.apply(fr, mv)


def _cusp_out_matrix(ctx: FrameContext, inc: Inclusion, end: str) -> BitMatrix:
    """Projection ``p`` (or ``p H^{-1}``) reversing the matching cusp_in."""
    fc = ctx.fc
    small, big = fc.cell(inc.small), fc.cell(inc.big)
    if small.dim == 0:
        st = fc.swallowtail_at(small.id)
        if st is not None and big.id == st.crossing_edge:
            tfr = swallowtail_frame(fc, st, "T")
            perm = crossing_relabel(fc, st, big.id)
            back = [0] * len(perm)
            for i, q in enumerate(perm):
                back[q] = i
            h = _invert(ctx._h(small.id, "T"))
            # undo the relabelling, then H_T^{-1}, then project
            return _embed(tfr.embed, tfr.n).transpose() @ h @ _permute_rows(BitMatrix.identity(len(perm)), back)
        return _inclusion_matrix(fc, small.id, big.id, inc.mapping).transpose()
    j = _inclusion_matrix(fc, small.id, big.id, inc.mapping)
    vinc = fc.edge_end_inclusion(small.id, end)
    which = ctx._corner_which(vinc.small, small.id, big.id)
    if which is not None:
        return j.transpose() @ _invert(ctx._h(vinc.small, which))
    return j.transpose()


def homology_map(d: BitMatrix, m: BitMatrix) -> BitMatrix:
    """Matrix of the map induced by the chain map ``m`` on ``ker d / im d``.

    The homology basis is the set of kernel vectors completing the image,
    chosen by elimination with the lowest-index pivots first.
    """
    n = d.nrows
    image = [d.column(j) for j in range(n)]
    img_red, img_piv = row_reduce(image, n)
    kernel = _kernel_vectors(d)
    # extend the image basis to a kernel basis
    reps: List[int] = []
    basis = list(img_red)
    for v in kernel:
        trial = basis + [v]
        if len(row_reduce(trial, n)[1]) > len(row_reduce(basis, n)[1]):
            basis = trial
            reps.append(v)
    h = len(reps)
    cols = []
    for v in reps:
        w = _apply(m, v)
        coords = _coordinates(w, list(img_red) + reps, n)
        cols.append(coords >> len(img_red))
    rows = [0] * h
    for j, c in enumerate(cols):
        for i in range(h):
            if (c >> i) & 1:
                rows[i] |= 1 << j
    return BitMatrix(h, h, tuple(rows))


def _apply(m: BitMatrix, v: int) -> int:
    out = 0
    for i, r in enumerate(m.rows):
        if bin(r & v).count("1") & 1:
            out |= 1 << i
    return out


def _kernel_vectors(d: BitMatrix) -> List[int]:
    n = d.ncols
    red, piv = row_reduce(list(d.rows), n)
    piv_set = set(piv)
    out = []
    for free in range(n):
        if free in piv_set:
            continue
        v = 1 << free
        for r, p in zip(red, piv):
            if (r >> free) & 1:
                v |= 1 << p
        out.append(v)
    return out


def _coordinates(w: int, basis: Sequence[int], n: int) -> int:
    """Coordinates of ``w`` in an independent family ``basis`` (as a bitmask over the family)."""
    k = len(basis)
    cols = []
    for i in range(n):
        mask = 0
        for j, b in enumerate(basis):
            if (b >> i) & 1:
                mask |= 1 << j
        cols.append(mask)
    from .gf2_core import solve_affine
    sol = solve_affine(cols, [(w >> i) & 1 for i in range(n)], k)
    if sol is None:
        raise LoopError("vector is not in the span of the basis")
    return sol[0]


def is_bijective_word(fc: FrontComplex, loop: LoopWord) -> bool:
    """True when every move map is invertible, so reversing the word inverts the chain map exactly.

    Cusp inclusions and swallowtail corner moves are only invertible up to
    chain homotopy: ``j p`` differs from the identity on the cusp pair.
    """
    for mv in loop.moves:
        if mv.kind == "st_corner":
            return False
        if mv.kind in ("cusp_in", "cusp_out"):
            inc = fc.inclusion(mv.inclusion)
            if inc.cusp_pairs:
                return False
            st = fc.swallowtail_at(inc.small)
            if st is not None and inc.big == st.crossing_edge:
                return False
    return True


def monodromy_on_homology(dga: CellularDGA, aug: Augmentation, loop: LoopWord) -> BitMatrix:
    _, d = fiber_complex(dga, aug, loop.basepoint)
    return homology_map(d, continuation(dga, aug, loop))


def is_trivial_monodromy(dga: CellularDGA, aug: Augmentation, loop: LoopWord) -> bool:
    h = monodromy_on_homology(dga, aug, loop)
    return h == BitMatrix.identity(h.nrows)


# ---------------------------------------------------------------------------
# frame graph and random loops
# ---------------------------------------------------------------------------


def frame_moves(fc: FrontComplex, fr: Frame, regular_only: bool = False) -> List[Tuple[Move, Frame]]:
    """Moves available at a frame, with their target frames (structure only, no CHD needed).

    With ``regular_only`` the walk stays on totally ordered cells joined by
    cusp-free inclusions, where continuation maps are unipotent.
    """
    out: List[Tuple[Move, Frame]] = []

    def regular_cell(cid: str) -> bool:
        c = fc.cell(cid)
        return not c.incomparable_pairs() and fc.swallowtail_at(cid) is None

    def regular_inc(inc: Inclusion) -> bool:
        return not inc.cusp_pairs and regular_cell(inc.small) and regular_cell(inc.big)

    if regular_only and fr.kind == "V" and not regular_cell(fr.cell):
        return out
    if fr.kind == "V":
        for e in fc.cells_of_dim(1):
            for end in ("from", "to"):
                inc = fc.edge_end_inclusion(e.id, end)
                if inc.small != fr.cell or (regular_only and not regular_inc(inc)):
                    continue
                out.append((Move("cusp_in", inclusion=inc.id, end=end), Frame("E", e.id, end=end)))
        st = fc.swallowtail_at(fr.cell)
        if st is not None and not regular_only:
            for which in ("S", "T"):
                cell = st.corner(which).cell
                out.append((Move("st_corner", swallowtail=st.vertex, corner=which, direction="enter"),
                            Frame("F", cell, vertex=st.vertex, tag=("st",))))
    elif fr.kind == "E":
        e = fc.cell(fr.cell)
        sign = 1 if fr.end == "from" else -1
        out.append((Move("edge", edge=e.id, sign=sign), Frame("E", e.id, end="to" if sign > 0 else "from")))
        vinc = fc.edge_end_inclusion(e.id, fr.end)
        if not regular_only or regular_inc(vinc):
            out.append((Move("cusp_out", inclusion=vinc.id, end=fr.end), Frame("V", vinc.small)))
        if not regular_only:
            for inc in fc.inclusions:
                if inc.small != e.id:
                    continue
                vmap, cusp = compose_inclusions(vinc, inc)
                out.append((Move("cusp_in", inclusion=inc.id, end=fr.end),
                            _face_frame(fc, inc.big, vinc.small, vmap, cusp)))
    else:
        # back down to an edge, across an edge, or out of a swallowtail corner
        for inc in fc.inclusions:
            if inc.big != fr.cell or fc.cell(inc.small).dim != 1:
                continue
            for end in ("from", "to"):
                vinc = fc.edge_end_inclusion(inc.small, end)
                if vinc.small != fr.vertex:
                    continue
                vmap, cusp = compose_inclusions(vinc, inc)
                if _face_frame(fc, fr.cell, fr.vertex, vmap, cusp) != fr:
                    continue
                out.append((Move("cusp_out", inclusion=inc.id, end=end), Frame("E", inc.small, end=end)))
                if inc.cusp_pairs:
                    continue
                for other in fc.inclusions:
                    if other.small != inc.small or other.big == fr.cell or other.cusp_pairs:
                        continue
                    if fc.cell(other.big).dim != 2:
                        continue
                    vm2, c2 = compose_inclusions(vinc, other)
                    out.append((Move("cross", edge=inc.small, from_face=fr.cell, to_face=other.big, end=end),
                                _face_frame(fc, other.big, fr.vertex, vm2, c2)))
        if fr.tag == ("st",):
            st = fc.swallowtail_at(fr.vertex)
            for which in ("S", "T"):
                if st.corner(which).cell == fr.cell:
                    out.append((Move("st_corner", swallowtail=st.vertex, corner=which, direction="exit"),
                                Frame("V", st.vertex)))
    # a cross into a face that shares the same inclusion record twice is skipped by construction
    return out


def _path_home(fc: FrontComplex, start: Frame, home: Frame, regular_only: bool) -> List[Move]:
    prev: Dict[Frame, Tuple[Frame, Move]] = {}
    seen = {start}
    q = deque([start])
    while q:
        fr = q.popleft()
        if fr == home:
            break
        for mv, nxt in frame_moves(fc, fr, regular_only):
            if nxt not in seen:
                seen.add(nxt)
                prev[nxt] = (fr, mv)
                q.append(nxt)
    if home not in seen:
        raise LoopError(f"no path back to {home}")
    path: List[Move] = []
    cur = home
    while cur != start:
        fr, mv = prev[cur]
        path.append(mv)
        cur = fr
    return path[::-1]


def random_loop(fc: FrontComplex, basepoint: str, rng: random.Random, steps: int = 8,
                regular_only: bool = False) -> LoopWord:
    """A random walk of ``steps`` moves followed by a shortest return path."""
    home = Frame("V", basepoint)
    fr = home
    moves: List[Move] = []
    for _ in range(steps):
        options = frame_moves(fc, fr, regular_only)
        if not options:
            break
        mv, fr = rng.choice(options)
        moves.append(mv)
    moves += _path_home(fc, fr, home, regular_only)
    return LoopWord(basepoint, tuple(moves), "random")


# ---------------------------------------------------------------------------
# obstruction report
# ---------------------------------------------------------------------------


@dataclass
class ObstructionReport:
    rho: int
    basepoint: str
    augmentation_count: int
    method: str
    fiber_homology: List[Dict[int, int]] = field(default_factory=list)
    monodromy_trivial: List[Dict[str, bool]] = field(default_factory=list)
    loop_names: List[str] = field(default_factory=list)
    obstructs_linear_at_infinity: bool = False
    obstructs_trivial_bundle: bool = False
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": "obstruction/1",
            "rho": self.rho,
            "basepoint": self.basepoint,
            "augmentation_count": self.augmentation_count,
            "method": self.method,
            "fiber_homology": [{str(k): v for k, v in h.items()} for h in self.fiber_homology],
            "monodromy_trivial": self.monodromy_trivial,
            "loops": self.loop_names,
            "augmentations_exist": self.augmentation_count > 0,
            "obstructs_linear_at_infinity": self.obstructs_linear_at_infinity,
            "obstructs_trivial_bundle": self.obstructs_trivial_bundle,
            "notes": self.notes,
        }

    def table(self) -> str:
        lines = [f"basepoint {self.basepoint}  rho {self.rho}  augmentations {self.augmentation_count}"
                 f"  ({self.method})"]
        head = "row  H_total  " + "  ".join(self.loop_names)
        lines.append(head)
        for i, h in enumerate(self.fiber_homology):
            flags = self.monodromy_trivial[i] if i < len(self.monodromy_trivial) else {}
            cells = "  ".join("trivial" if flags.get(n, True) else "NONTRIV" for n in self.loop_names)
            lines.append(f"{i:<4} {sum(h.values()):<8} {cells}")
        lines.append(f"obstructs_linear_at_infinity: {str(self.obstructs_linear_at_infinity).lower()}")
        lines.append(f"obstructs_trivial_bundle: {str(self.obstructs_trivial_bundle).lower()}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def loop_generators(dga: CellularDGA, loops: Sequence[LoopWord]) -> List[GenId]:
    """Generators whose values the fiber complex and the loop maps depend on."""
    fc = dga.fc
    cells: List[str] = []

    def use(c: str) -> None:
        if c not in cells:
            cells.append(c)

    for lp in loops:
        use(lp.basepoint)
        for mv in lp.moves:
            if mv.kind == "edge":
                e = fc.cell(mv.edge)
                use(e.source)
                use(e.target)
                use(e.id)
            elif mv.kind in ("cusp_in", "cusp_out"):
                inc = fc.inclusion(mv.inclusion)
                if fc.cell(inc.small).dim == 0:
                    use(inc.small)
                else:
                    use(fc.edge_end_inclusion(inc.small, mv.end).small)
            elif mv.kind == "cross":
                use(fc.edge_end_inclusion(mv.edge, mv.end).small)
            else:
                use(mv.swallowtail)
    for e in list(cells):
        c = fc.cell(e)
        if c.dim == 1:
            use(c.source)
            use(c.target)
    return [g for g in dga.gens if g.cell in cells and g.kind in ("a", "b")]


def realizable_projections(dga: CellularDGA, gens: Sequence[GenId], rho: int) -> List[Tuple[int, ...]]:
    """Distinct value tuples of ``gens`` over all augmentations, by prefix-pinned existence queries."""
    out: List[Tuple[int, ...]] = []

    def rec(prefix: Tuple[int, ...]) -> None:
        if len(prefix) == len(gens):
            out.append(prefix)
            return
        g = gens[len(prefix)]
        for bit in (0, 1):
            if bit and not _degree_ok(dga.degrees[dga.index[g]], rho):
                continue
            pins = dict(zip(gens, prefix + (bit,)))
            if staged_search(dga, SearchConfig(rho=rho, mode="exists", pins=pins)).exists:
                rec(prefix + (bit,))

    if staged_search(dga, SearchConfig(rho=rho, mode="exists")).exists:
        rec(())
    return out


def obstruction_report(dga: CellularDGA, loops: Sequence[LoopWord], rho: int = 1,
                       basepoint: Optional[str] = None, solution_cap: int = 4096) -> ObstructionReport:
    """Fiber homology and loop monodromy over every augmentation, with the two verdicts."""
    fc = dga.fc
    bases = {lp.basepoint for lp in loops}
    if len(bases) > 1:
        raise LoopError("loops must share a basepoint")
    if basepoint is None:
        basepoint = bases.pop() if bases else fc.cells_of_dim(0)[0].id
    elif bases and basepoint not in bases:
        raise LoopError("basepoint differs from the loops' basepoint")
    count = staged_search(dga, SearchConfig(rho=rho, mode="count")).count
    names = [lp.name or f"loop{i}" for i, lp in enumerate(loops)]
    notes = ["monodromy verdicts only cover the supplied loops; untested loops cannot certify triviality"]
    if count <= solution_cap:
        augs = staged_search(dga, SearchConfig(rho=rho, mode="list", solution_cap=solution_cap)).augmentations
        method = "enumeration"
    else:
        # distinct restrictions to the generators the report reads; one representative each
        gens = loop_generators(dga, [LoopWord(basepoint)] + list(loops))
        patterns = realizable_projections(dga, gens, rho)
        augs = []
        for pat in patterns:
            values = [0] * len(dga.gens)
            for g, v in zip(gens, pat):
                values[dga.index[g]] = v
            augs.append(Augmentation(tuple(values), rho))
        method = f"projection onto {len(gens)} generators ({len(patterns)} classes)"
        notes.append("rows are classes of augmentations with equal values on the generators read by the report")
    report = ObstructionReport(rho, basepoint, count, method, loop_names=names, notes=notes)
    for aug in augs:
        basis, d = fiber_complex(dga, aug, basepoint)
        report.fiber_homology.append(homology_dims(d, basis))
        flags = {}
        for name, lp in zip(names, loops):
            cont = _run(FrameContext(fc, aug_to_chd(dga, aug)), lp, check=True)
            h = homology_map(d, cont)
            flags[name] = h == BitMatrix.identity(h.nrows)
        report.monodromy_trivial.append(flags)
    report.obstructs_linear_at_infinity = count > 0 and all(sum(h.values()) > 0 for h in report.fiber_homology)
    report.obstructs_trivial_bundle = count > 0 and bool(loops) and all(
        not all(flags.values()) for flags in report.monodromy_trivial)
    if count == 0:
        report.notes.append("no augmentations: both verdicts are reported false")
    return report
