"""Combinatorial model of a Legendrian front over a polygonal decomposition.

A ``FrontComplex`` lists 0-, 1- and 2-cells, each carrying its own table of
sheets (a partially ordered set with Maslov values).  Sheets of different
cells are related only through ``Inclusion`` records, which say how the sheets
of a boundary cell continue into a larger cell and which pairs of the larger
cell's sheets die at a cusp over the smaller one.

The on-disk format is a JSON document tagged ``"cellular-front/1"``.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .gf2_core import GradedBasis, transitive_closure

SCHEMA = "cellular-front/1"


class SchemaError(ValueError):
    """Raised by ``load`` for documents that do not fit the schema."""


class FrontError(ValueError):
    """Raised when a lookup on the complex cannot be resolved."""


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sheet:
    id: int
    maslov: int


@dataclass(frozen=True)
class PathStep:
    edge: str
    sign: int
    inclusion: Optional[str] = None


@dataclass(frozen=True)
class Cell:
    """A cell with its sheet table.

    ``order`` holds pairs ``(p, q)`` of sheet ids with ``p`` above ``q``
    (higher z-coordinate comes first).  It is stored transitively closed.
    """

    id: str
    dim: int
    sheets: Tuple[Sheet, ...]
    order: FrozenSet[Tuple[int, int]]
    source: Optional[str] = None
    target: Optional[str] = None
    crossing: bool = False
    source_inclusion: Optional[str] = None
    target_inclusion: Optional[str] = None
    v0: Optional[str] = None
    v1: Optional[str] = None
    path_a: Tuple[PathStep, ...] = ()
    path_b: Tuple[PathStep, ...] = ()

    @property
    def sheet_ids(self) -> Tuple[int, ...]:
        return tuple(s.id for s in self.sheets)

    def maslov(self, sheet: int) -> int:
        for s in self.sheets:
            if s.id == sheet:
                return s.maslov
        raise FrontError(f"cell {self.id} has no sheet {sheet}")

    def precedes(self, p: int, q: int) -> bool:
        return (p, q) in self.order

    def incomparable_pairs(self) -> List[Tuple[int, int]]:
        ids = sorted(self.sheet_ids)
        return [(p, q) for i, p in enumerate(ids) for q in ids[i + 1:]
                if (p, q) not in self.order and (q, p) not in self.order]

    @property
    def steps(self) -> Tuple[PathStep, ...]:
        return self.path_a + self.path_b


@dataclass(frozen=True)
class Inclusion:
    """Sheets of ``small`` continuing into ``big``; ``cusp_pairs`` are (upper, lower) big-cell sheets."""

    id: str
    small: str
    big: str
    sheet_map: Tuple[Tuple[int, int], ...]
    cusp_pairs: Tuple[Tuple[int, int], ...] = ()

    @property
    def mapping(self) -> Dict[int, int]:
        return dict(self.sheet_map)

    def same_data(self, other: "Inclusion") -> bool:
        return (self.small, self.big, self.sheet_map, tuple(sorted(self.cusp_pairs))) == (
            other.small, other.big, other.sheet_map, tuple(sorted(other.cusp_pairs)))


@dataclass(frozen=True)
class Corner:
    cell: str
    position: int


@dataclass(frozen=True)
class Swallowtail:
    """A swallowtail point; ``k`` is the top position of the three merging sheets in the T cell."""

    vertex: str
    direction: str
    k: int
    s_corner: Corner
    t_corner: Corner
    crossing_edge: str
    s_cusp_edge: str
    t_cusp_edge: str

    def corner(self, which: str) -> Corner:
        return self.s_corner if which == "S" else self.t_corner

    def cusp_edge(self, which: str) -> str:
        return self.s_cusp_edge if which == "S" else self.t_cusp_edge


def linearize_sheets(sheet_ids: Iterable[int], order: Iterable[Tuple[int, int]]) -> Tuple[int, ...]:
    """Topological sort of a sheet poset, ties broken by ascending sheet id."""
    ids = list(sheet_ids)
    succ: Dict[int, List[int]] = {s: [] for s in ids}
    indeg = {s: 0 for s in ids}
    for p, q in set(order):
        succ[p].append(q)
        indeg[q] += 1
    heap = [s for s in ids if indeg[s] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        s = heapq.heappop(heap)
        out.append(s)
        for t in succ[s]:
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, t)
    if len(out) != len(ids):
        raise FrontError("sheet order has a cycle")
    return tuple(out)


def linearize(cell: Cell) -> Tuple[int, ...]:
    """Canonical total order of the sheets of ``cell`` (top sheet first)."""
    return linearize_sheets(cell.sheet_ids, cell.order)


# ---------------------------------------------------------------------------
# the complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrontComplex:
    maslov_number: int
    cells: Tuple[Cell, ...]
    inclusions: Tuple[Inclusion, ...] = ()
    swallowtails: Tuple[Swallowtail, ...] = ()
    name: str = ""
    _index: Dict[str, Cell] = field(default_factory=dict, compare=False, repr=False)
    _incl: Dict[str, Inclusion] = field(default_factory=dict, compare=False, repr=False)
    _lin: Dict[str, Tuple[int, ...]] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._index.update({c.id: c for c in self.cells})
        self._incl.update({i.id: i for i in self.inclusions})

    # lookups -----------------------------------------------------------------
    def cell(self, cid: str) -> Cell:
        try:
            return self._index[cid]
        except KeyError:
            raise FrontError(f"unknown cell {cid!r}") from None

    def has_cell(self, cid: str) -> bool:
        return cid in self._index

    def cells_of_dim(self, dim: int) -> List[Cell]:
        return [c for c in self.cells if c.dim == dim]

    def inclusion(self, iid: str) -> Inclusion:
        try:
            return self._incl[iid]
        except KeyError:
            raise FrontError(f"unknown inclusion {iid!r}") from None

    def order_of(self, cid: str) -> Tuple[int, ...]:
        """Linearized sheet ids of a cell (cached)."""
        if cid not in self._lin:
            self._lin[cid] = linearize(self.cell(cid))
        return self._lin[cid]

    def position(self, cid: str, sheet: int) -> int:
        """0-based position of ``sheet`` in the linear order of ``cid``."""
        return self.order_of(cid).index(sheet)

    def basis(self, cid: str, modulus: Optional[int] = None) -> GradedBasis:
        """Graded basis over linear positions of a cell's sheets."""
        cell = self.cell(cid)
        lin = self.order_of(cid)
        pos = {s: i for i, s in enumerate(lin)}
        degrees = [cell.maslov(s) for s in lin]
        pairs = [(pos[p], pos[q]) for p, q in cell.order]
        m = self.maslov_number if modulus is None else modulus
        return GradedBasis(len(lin), tuple(degrees), frozenset(pairs), m)

    def swallowtail_at(self, vertex: str) -> Optional[Swallowtail]:
        for st in self.swallowtails:
            if st.vertex == vertex:
                return st
        return None

    def find_inclusion(self, small: str, big: str, explicit: Optional[str] = None) -> Inclusion:
        """Resolve the inclusion ``small -> big``.

        An explicit id wins.  Otherwise the match must be unique up to
        identical data.
        """
        if explicit is not None:
            inc = self.inclusion(explicit)
            if inc.small != small or inc.big != big:
                raise FrontError(f"inclusion {explicit} does not map {small} into {big}")
            return inc
        found = [i for i in self.inclusions if i.small == small and i.big == big]
        if not found:
            raise FrontError(f"no inclusion of {small} into {big}")
        first = found[0]
        if any(not first.same_data(i) for i in found[1:]):
            raise FrontError(f"ambiguous inclusion of {small} into {big}; name it explicitly")
        return first

    def edge_end_inclusion(self, edge: str, end: str) -> Inclusion:
        """Inclusion of the ``end`` ("from"/"to") vertex into ``edge``."""
        e = self.cell(edge)
        if end == "from":
            return self.find_inclusion(e.source, edge, e.source_inclusion)
        return self.find_inclusion(e.target, edge, e.target_inclusion)

    def step_inclusion(self, face: str, step: PathStep) -> Inclusion:
        return self.find_inclusion(step.edge, face, step.inclusion)

    def step_endpoints(self, step: PathStep) -> Tuple[str, str]:
        """(start vertex, end vertex) of a path step in the direction of travel."""
        e = self.cell(step.edge)
        return (e.source, e.target) if step.sign > 0 else (e.target, e.source)

    def step_ends(self, step: PathStep) -> Tuple[str, str]:
        """Edge ends ("from"/"to") met at the start and end of a step."""
        return ("from", "to") if step.sign > 0 else ("to", "from")

    def corner_inclusion_map(self, face: str, which: str) -> Dict[int, int]:
        """Composite sheet map of the ``v0`` or ``v1`` vertex into ``face``."""
        cell = self.cell(face)
        if which == "v0":
            path = cell.path_a or cell.path_b
            if not path:
                raise FrontError(f"2-cell {face} has no boundary edges")
            step = path[0]
            end = self.step_ends(step)[0]
        else:
            path = cell.path_a or cell.path_b
            step = path[-1]
            end = self.step_ends(step)[1]
        return compose_maps(self.edge_end_inclusion(step.edge, end).mapping,
                            self.step_inclusion(face, step).mapping)

    def step_vertex_map(self, face: str, index: int, at: str) -> Tuple[str, Dict[int, int]]:
        """Vertex and composite sheet map at the start or end of step ``index``."""
        cell = self.cell(face)
        step = cell.steps[index]
        ends = self.step_ends(step)
        end = ends[0] if at == "start" else ends[1]
        vertex = self.step_endpoints(step)[0 if at == "start" else 1]
        m = compose_maps(self.edge_end_inclusion(step.edge, end).mapping,
                         self.step_inclusion(face, step).mapping)
        return vertex, m


def compose_inclusions(first: Inclusion, second: Inclusion) -> Tuple[Dict[int, int], List[Tuple[int, int]]]:
    """Sheet map and cusp pairs of ``first`` followed by ``second``."""
    m2 = second.mapping
    cusp = [(m2[a], m2[b]) for a, b in first.cusp_pairs] + list(second.cusp_pairs)
    return compose_maps(first.mapping, m2), cusp


def compose_maps(first: Mapping[int, int], second: Mapping[int, int]) -> Dict[int, int]:
    return {a: second[b] for a, b in first.items()}


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(fc: FrontComplex) -> List[str]:
    """Return every violation found in ``fc``; an empty list means valid."""
    out: List[str] = []
    ids = [c.id for c in fc.cells]
    if len(set(ids)) != len(ids):
        out.append("duplicate cell ids")
    if fc.maslov_number < 0:
        out.append("maslov_number must be nonnegative")
    for inc in fc.inclusions:
        if not fc.has_cell(inc.small) or not fc.has_cell(inc.big):
            out.append(f"inclusion {inc.id}: unknown cell")
    if out:
        return out

    for c in fc.cells:
        _check_sheet_table(fc, c, out)
    if out:
        return out
    for inc in fc.inclusions:
        _check_inclusion(fc, inc, out)
    st_vertices = {st.vertex for st in fc.swallowtails}
    for c in fc.cells_of_dim(1):
        _check_edge(fc, c, out)
    for c in fc.cells_of_dim(2):
        _check_face(fc, c, st_vertices, out)
    seen = set()
    for st in fc.swallowtails:
        if st.vertex in seen:
            out.append(f"swallowtail {st.vertex}: listed twice")
        seen.add(st.vertex)
        _check_swallowtail(fc, st, out)
    return out


def _check_sheet_table(fc: FrontComplex, c: Cell, out: List[str]) -> None:
    sids = c.sheet_ids
    if len(set(sids)) != len(sids):
        out.append(f"cell {c.id}: duplicate sheet ids")
        return
    if c.dim not in (0, 1, 2):
        out.append(f"cell {c.id}: bad dimension {c.dim}")
    for p, q in c.order:
        if p not in sids or q not in sids:
            out.append(f"cell {c.id}: order mentions unknown sheet")
            return
        if p == q:
            out.append(f"cell {c.id}: order is cyclic")
            return
    incomparable = c.incomparable_pairs()
    if c.dim == 2 and incomparable:
        out.append(f"cell {c.id}: sheets over a 2-cell must be totally ordered")
    if c.dim == 1:
        if c.crossing and len(incomparable) != 1:
            out.append(f"cell {c.id}: crossing pair must be incomparable (exactly one incomparable pair)")
        if not c.crossing and incomparable:
            out.append(f"cell {c.id}: incomparable sheets on a non-crossing 1-cell")
    if c.crossing and c.dim != 1:
        out.append(f"cell {c.id}: only 1-cells may be crossing arcs")


def _check_inclusion(fc: FrontComplex, inc: Inclusion, out: List[str]) -> None:
    small, big = fc.cell(inc.small), fc.cell(inc.big)
    tag = f"inclusion {inc.id}"
    if small.dim >= big.dim:
        out.append(f"{tag}: small cell must have lower dimension")
    m = inc.mapping
    if set(m) != set(small.sheet_ids):
        out.append(f"{tag}: sheet map must cover every sheet of {small.id}")
        return
    img = list(m.values())
    if len(set(img)) != len(img) or not set(img) <= set(big.sheet_ids):
        out.append(f"{tag}: sheet map is not an injection into {big.id}")
        return
    for p, q in small.order:
        if not big.precedes(m[p], m[q]):
            out.append(f"{tag}: sheet map is not order preserving")
            break
    for s in small.sheet_ids:
        if small.maslov(s) != big.maslov(m[s]):
            out.append(f"{tag}: sheet map changes the Maslov potential of sheet {s}")
    cusp_sheets = [s for pair in inc.cusp_pairs for s in pair]
    if len(set(cusp_sheets)) != len(cusp_sheets):
        out.append(f"{tag}: cusp pairs overlap")
    if set(cusp_sheets) & set(img):
        out.append(f"{tag}: cusp sheet is also in the image")
    if set(img) | set(cusp_sheets) != set(big.sheet_ids):
        out.append(f"{tag}: image and cusp sheets must cover {big.id}")
    mod = fc.maslov_number
    for a, b in inc.cusp_pairs:
        if a not in big.sheet_ids or b not in big.sheet_ids:
            continue
        step = big.maslov(a) - big.maslov(b) - 1
        if (mod == 0 and step != 0) or (mod and step % mod):
            out.append(f"{tag}: cusp maslov step must be 1 for pair ({a},{b})")
        if not big.precedes(a, b):
            out.append(f"{tag}: cusp pair ({a},{b}) must have the upper sheet first")
        elif any(big.precedes(a, s) and big.precedes(s, b) for s in big.sheet_ids):
            out.append(f"{tag}: cusp pair ({a},{b}) is not adjacent")


def _check_edge(fc: FrontComplex, c: Cell, out: List[str]) -> None:
    for end, vid, expl in (("from", c.source, c.source_inclusion), ("to", c.target, c.target_inclusion)):
        if vid is None or not fc.has_cell(vid) or fc.cell(vid).dim != 0:
            out.append(f"1-cell {c.id}: {end} endpoint must be a 0-cell")
            continue
        try:
            fc.find_inclusion(vid, c.id, expl)
        except FrontError as exc:
            out.append(f"1-cell {c.id}: {exc}")


def _check_face(fc: FrontComplex, c: Cell, st_vertices: set, out: List[str]) -> None:
    tag = f"2-cell {c.id}"
    if not c.path_a and not c.path_b:
        out.append(f"{tag}: empty boundary")
        return
    for v in (c.v0, c.v1):
        if v is None or not fc.has_cell(v) or fc.cell(v).dim != 0:
            out.append(f"{tag}: v0/v1 must be 0-cells")
            return
    for step in c.steps:
        if not fc.has_cell(step.edge) or fc.cell(step.edge).dim != 1:
            out.append(f"{tag}: boundary step {step.edge} is not a 1-cell")
            return
        if step.sign not in (1, -1):
            out.append(f"{tag}: sign must be +1 or -1")
            return
        try:
            fc.step_inclusion(c.id, step)
            fc.edge_end_inclusion(step.edge, "from")
            fc.edge_end_inclusion(step.edge, "to")
        except FrontError as exc:
            out.append(f"{tag}: {exc}")
            return
    for name, path in (("path_a", c.path_a), ("path_b", c.path_b)):
        cur = c.v0
        for step in path:
            a, b = fc.step_endpoints(step)
            if a != cur:
                out.append(f"{tag}: {name} is not continuous at {step.edge}")
                break
            cur = b
        else:
            if cur != c.v1:
                out.append(f"{tag}: {name} does not end at v1")
    if not c.path_a and c.v0 != c.v1:
        out.append(f"{tag}: an empty path needs v0 == v1")
    # corner consistency: the two lifts of each corner vertex must agree
    exempt = set()
    for st in fc.swallowtails:
        if st.s_corner.cell == c.id:
            exempt.add((st.vertex, st.crossing_edge))
    cycle = list(c.path_a) + [PathStep(s.edge, -s.sign, s.inclusion) for s in reversed(c.path_b)]
    n = len(cycle)
    if n < 2:
        return
    for i in range(n):
        s1, s2 = cycle[i], cycle[(i + 1) % n]
        v = fc.step_endpoints(s1)[1]
        if (v, s1.edge) in exempt or (v, s2.edge) in exempt:
            continue
        m1 = compose_maps(fc.edge_end_inclusion(s1.edge, fc.step_ends(s1)[1]).mapping,
                          fc.step_inclusion(c.id, s1).mapping)
        m2 = compose_maps(fc.edge_end_inclusion(s2.edge, fc.step_ends(s2)[0]).mapping,
                          fc.step_inclusion(c.id, s2).mapping)
        if m1 != m2:
            out.append(f"{tag}: sheet maps disagree at the corner {v} between {s1.edge} and {s2.edge}")


def _check_swallowtail(fc: FrontComplex, st: Swallowtail, out: List[str]) -> None:
    tag = f"swallowtail {st.vertex}"
    if st.direction not in ("up", "down"):
        out.append(f"{tag}: direction must be up or down")
        return
    try:
        v = fc.cell(st.vertex)
        cr = fc.cell(st.crossing_edge)
        es = fc.cell(st.s_cusp_edge)
        et = fc.cell(st.t_cusp_edge)
        cs = fc.cell(st.s_corner.cell)
        ct = fc.cell(st.t_corner.cell)
    except FrontError as exc:
        out.append(f"{tag}: {exc}")
        return
    if v.dim != 0 or cr.dim != 1 or es.dim != 1 or et.dim != 1 or cs.dim != 2 or ct.dim != 2:
        out.append(f"{tag}: wrong cell dimensions")
        return
    for e in (cr, es, et):
        if e.source != st.vertex:
            out.append(f"{tag}: 1-cell {e.id} must be oriented away from the swallowtail point")
    if out and out[-1].startswith(tag):
        return
    if v.incomparable_pairs():
        out.append(f"{tag}: sheets over the vertex must be totally ordered")
    n = len(v.sheets) + 2
    if len(es.sheets) != n - 2 or len(et.sheets) != n - 2:
        out.append(f"{tag}: cusp edges must carry n-2 sheets")
    if len(cr.sheets) != n or not cr.crossing or len(cs.sheets) != n or len(ct.sheets) != n:
        out.append(f"{tag}: inside cells must carry n = {n} sheets")
        return
    if cs.id == ct.id:
        out.append(f"{tag}: S and T corners must lie in distinct 2-cells")
        return
    k = st.k
    if not 1 <= k <= n - 2:
        out.append(f"{tag}: k out of range")
        return
    for which, face, edge in (("S", cs, es), ("T", ct, et)):
        corner = st.corner(which)
        steps = face.steps
        if not 0 <= corner.position < len(steps) or steps[corner.position].edge != edge.id:
            out.append(f"{tag}: {which} corner position must index the {which} cusp edge in {face.id}")
            continue
        if cr.id not in [s.edge for s in steps]:
            out.append(f"{tag}: {which} cell {face.id} must border the crossing edge")
        lin = fc.order_of(face.id)
        inc = fc.step_inclusion(face.id, steps[corner.position])
        cusp = [tuple(lin.index(s) + 1 for s in pair) for pair in inc.cusp_pairs]
        want = (k, k + 1) if st.direction == "up" else (k + 1, k + 2)
        if cusp != [want]:
            out.append(f"{tag}: {which} cusp edge must pair positions {want} of {face.id}")
    # crossing pair sits at the expected positions in the T cell
    try:
        to_t = fc.find_inclusion(cr.id, ct.id).mapping
        lin_t = fc.order_of(ct.id)
        pair = cr.incomparable_pairs()[0]
        pos = tuple(sorted(lin_t.index(to_t[s]) + 1 for s in pair))
        want = (k + 1, k + 2) if st.direction == "up" else (k, k + 1)
        if pos != want:
            out.append(f"{tag}: crossing pair must sit at positions {want} of the T cell")
        to_s = fc.find_inclusion(cr.id, cs.id).mapping
        lin_s = fc.order_of(cs.id)
        if tuple(sorted(lin_s.index(to_s[s]) + 1 for s in pair)) != want:
            out.append(f"{tag}: crossing pair must sit at positions {want} of the S cell")
        # the vertex-to-crossing-edge inclusion is of T type
        via_cr = compose_maps(fc.edge_end_inclusion(cr.id, "from").mapping, to_t)
        via_t = compose_maps(fc.edge_end_inclusion(et.id, "from").mapping,
                             fc.step_inclusion(ct.id, ct.steps[st.t_corner.position]).mapping)
        if via_cr != via_t:
            out.append(f"{tag}: vertex-to-crossing inclusion must agree with the T cell labelling")
        for e in (es, et):
            if fc.edge_end_inclusion(e.id, "from").cusp_pairs:
                out.append(f"{tag}: cusp edge {e.id} carries no cusp pair at the vertex")
        if len(fc.edge_end_inclusion(cr.id, "from").cusp_pairs) != 1:
            out.append(f"{tag}: crossing edge needs exactly one cusp pair at the vertex")
    except (FrontError, IndexError, ValueError) as exc:
        out.append(f"{tag}: {exc}")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _require(obj: Mapping[str, Any], key: str, where: str) -> Any:
    if not isinstance(obj, Mapping) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    return obj[key]


def _uint(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise SchemaError(f"{where}: expected an unsigned integer, got {x!r}")
    return x


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{where}: expected an integer, got {x!r}")
    return x


def load(document: Any) -> FrontComplex:
    """Build a complex from a parsed JSON document (or a JSON string)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {exc.lineno}: {exc.msg}") from None
    schema = _require(document, "schema", "document")
    if schema != SCHEMA:
        raise SchemaError(f"unsupported schema {schema!r}; this reader accepts {SCHEMA!r}")
    mnum = _uint(_require(document, "maslov_number", "document"), "maslov_number")
    cells_doc = _require(document, "cells", "document")
    cells: List[Cell] = []
    for dim, key in enumerate(("c0", "c1", "c2")):
        for i, entry in enumerate(_require(cells_doc, key, "cells")):
            where = f"cells.{key}[{i}]"
            cid = str(_require(entry, "id", where))
            sheets = tuple(
                Sheet(_uint(_require(s, "id", f"{where}.sheets[{j}]"), where),
                      _int(_require(s, "maslov", f"{where}.sheets[{j}]"), where))
                for j, s in enumerate(_require(entry, "sheets", where)))
            raw = _require(entry, "order", where)
            pairs = []
            for pq in raw:
                if not isinstance(pq, list) or len(pq) != 2:
                    raise SchemaError(f"{where}.order: pairs must be [p, q]")
                pairs.append((_uint(pq[0], where), _uint(pq[1], where)))
            sid = [s.id for s in sheets]
            if any(p not in sid or q not in sid for p, q in pairs):
                raise SchemaError(f"{where}.order: unknown sheet id")
            idx = {s: n for n, s in enumerate(sid)}
            closed = transitive_closure(len(sid), [(idx[p], idx[q]) for p, q in pairs])
            order = frozenset((sid[a], sid[b]) for a, b in closed)
            kw: Dict[str, Any] = {}
            if dim == 1:
                kw["source"] = str(_require(entry, "from", where))
                kw["target"] = str(_require(entry, "to", where))
                crossing = _require(entry, "crossing", where)
                if not isinstance(crossing, bool):
                    raise SchemaError(f"{where}.crossing: expected a boolean")
                kw["crossing"] = crossing
                kw["source_inclusion"] = entry.get("from_inclusion")
                kw["target_inclusion"] = entry.get("to_inclusion")
            if dim == 2:
                kw["v0"] = str(_require(entry, "v0", where))
                kw["v1"] = str(_require(entry, "v1", where))
                for pk in ("path_a", "path_b"):
                    steps = []
                    for j, st in enumerate(_require(entry, pk, where)):
                        sign = _int(_require(st, "sign", f"{where}.{pk}[{j}]"), where)
                        if sign not in (1, -1):
                            raise SchemaError(f"{where}.{pk}[{j}].sign: must be 1 or -1")
                        steps.append(PathStep(str(_require(st, "edge", f"{where}.{pk}[{j}]")), sign,
                                              st.get("inclusion")))
                    kw[pk] = tuple(steps)
            cells.append(Cell(cid, dim, sheets, order, **kw))
    incs = []
    for i, entry in enumerate(_require(document, "inclusions", "document")):
        where = f"inclusions[{i}]"
        small = str(_require(entry, "small", where))
        big = str(_require(entry, "big", where))
        raw = _require(entry, "map", where)
        try:
            smap = tuple(sorted((int(a), _uint(b, where)) for a, b in raw.items()))
        except (AttributeError, ValueError):
            raise SchemaError(f"{where}.map: expected an object of sheet ids") from None
        cusp = tuple((_uint(a, where), _uint(b, where)) for a, b in _require(entry, "cusp_pairs", where))
        iid = str(entry.get("id", f"{small}>{big}#{i}"))
        incs.append(Inclusion(iid, small, big, smap, cusp))
    sts = []
    for i, entry in enumerate(document.get("swallowtails", [])):
        where = f"swallowtails[{i}]"

        def corner(key: str) -> Corner:
            c = _require(entry, key, where)
            return Corner(str(_require(c, "cell", f"{where}.{key}")),
                          _uint(_require(c, "position", f"{where}.{key}"), where))

        sts.append(Swallowtail(
            vertex=str(_require(entry, "vertex", where)),
            direction=str(_require(entry, "direction", where)),
            k=_uint(_require(entry, "k", where), where),
            s_corner=corner("s_corner"), t_corner=corner("t_corner"),
            crossing_edge=str(_require(entry, "crossing_edge", where)),
            s_cusp_edge=str(_require(entry, "s_cusp_edge", where)),
            t_cusp_edge=str(_require(entry, "t_cusp_edge", where))))
    return FrontComplex(mnum, tuple(cells), tuple(incs), tuple(sts), str(document.get("name", "")))


def save(fc: FrontComplex) -> Dict[str, Any]:
    """Canonical JSON-ready document for ``fc``."""
    cells: Dict[str, List[Dict[str, Any]]] = {"c0": [], "c1": [], "c2": []}
    for c in fc.cells:
        entry: Dict[str, Any] = {
            "id": c.id,
            "sheets": [{"id": s.id, "maslov": s.maslov} for s in c.sheets],
            "order": [list(p) for p in sorted(c.order)],
        }
        if c.dim == 1:
            entry.update({"from": c.source, "to": c.target, "crossing": c.crossing})
            if c.source_inclusion is not None:
                entry["from_inclusion"] = c.source_inclusion
            if c.target_inclusion is not None:
                entry["to_inclusion"] = c.target_inclusion
        if c.dim == 2:
            entry["v0"] = c.v0
            entry["v1"] = c.v1
            for pk in ("path_a", "path_b"):
                steps = []
                for s in getattr(c, pk):
                    d: Dict[str, Any] = {"edge": s.edge, "sign": s.sign}
                    if s.inclusion is not None:
                        d["inclusion"] = s.inclusion
                    steps.append(d)
                entry[pk] = steps
        cells[("c0", "c1", "c2")[c.dim]].append(entry)
    doc: Dict[str, Any] = {"schema": SCHEMA}
    if fc.name:
        doc["name"] = fc.name
    doc["maslov_number"] = fc.maslov_number
    doc["cells"] = cells
    doc["inclusions"] = [
        {"id": i.id, "small": i.small, "big": i.big,
         "map": {str(a): b for a, b in i.sheet_map},
         "cusp_pairs": [list(p) for p in i.cusp_pairs]}
        for i in fc.inclusions]
    doc["swallowtails"] = [
        {"vertex": s.vertex, "direction": s.direction, "k": s.k,
         "s_corner": {"cell": s.s_corner.cell, "position": s.s_corner.position},
         "t_corner": {"cell": s.t_corner.cell, "position": s.t_corner.position},
         "crossing_edge": s.crossing_edge, "s_cusp_edge": s.s_cusp_edge, "t_cusp_edge": s.t_cusp_edge}
        for s in fc.swallowtails]
    return doc


def dumps(fc: FrontComplex) -> str:
    return json.dumps(save(fc), indent=1) + "\n"


def read(path: str) -> FrontComplex:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())


def write(fc: FrontComplex, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(fc))
