"""Constructors for example fronts and the trivalent-graph utilities behind them.

Each builder returns a validator-clean ``FrontComplex``.  The hand-built
geometry is summarised in the docstrings; sheet ids are small integers named
at the top of each builder.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .front_model import Cell, Corner, FrontComplex, Inclusion, PathStep, Sheet, Swallowtail
from .gf2_core import transitive_closure


# ---------------------------------------------------------------------------
# assembly helper
# ---------------------------------------------------------------------------


def chain(ids: Sequence[int], skip: Iterable[Tuple[int, int]] = ()) -> List[Tuple[int, int]]:
    """All pairs (ids[i], ids[j]) with i < j except the listed incomparable ones."""
    bad = {frozenset(p) for p in skip}
    return [(ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids))
            if frozenset((ids[i], ids[j])) not in bad]


class ComplexBuilder:
    """Accumulates cells and inclusions; ``build`` freezes them."""

    def __init__(self, maslov_number: int, name: str = "") -> None:
        self.maslov_number = maslov_number
        self.name = name
        self.cells: Dict[int, List[Cell]] = {0: [], 1: [], 2: []}
        self.incs: List[Inclusion] = []
        self.sts: List[Swallowtail] = []
        self._ids: set = set()
        self._inc_ids: set = set()

    def _cell(self, cid: str, dim: int, sheets: Sequence[Tuple[int, int]], order: Iterable[Tuple[int, int]],
              **kw) -> str:
        if cid in self._ids:
            raise ValueError(f"duplicate cell id {cid}")
        self._ids.add(cid)
        sh = tuple(Sheet(s, m) for s, m in sheets)
        ids = [s.id for s in sh]
        idx = {s: i for i, s in enumerate(ids)}
        closed = transitive_closure(len(ids), [(idx[p], idx[q]) for p, q in order])
        self.cells[dim].append(Cell(cid, dim, sh, frozenset((ids[a], ids[b]) for a, b in closed), **kw))
        return cid

    def vertex(self, cid: str, sheets: Sequence[Tuple[int, int]], order: Optional[Iterable] = None) -> str:
        order = chain([s for s, _ in sheets]) if order is None else order
        return self._cell(cid, 0, sheets, order)

    def edge(self, cid: str, source: str, target: str, sheets: Sequence[Tuple[int, int]],
             order: Optional[Iterable] = None, crossing: bool = False) -> str:
        order = chain([s for s, _ in sheets]) if order is None else order
        return self._cell(cid, 1, sheets, order, source=source, target=target, crossing=crossing)

    def face(self, cid: str, sheets: Sequence[Tuple[int, int]], v0: str, v1: str,
             path_a: Sequence[Tuple[str, int]], path_b: Sequence[Tuple[str, int]] = ()) -> str:
        order = chain([s for s, _ in sheets])
        return self._cell(cid, 2, sheets, order, v0=v0, v1=v1,
                          path_a=tuple(PathStep(e, s) for e, s in path_a),
                          path_b=tuple(PathStep(e, s) for e, s in path_b))

    def include(self, small: str, big: str, mapping: Dict[int, int],
                cusp: Sequence[Tuple[int, int]] = ()) -> None:
        base = f"{small}>{big}"
        iid, n = base, 1
        while iid in self._inc_ids:
            n += 1
            iid = f"{base}#{n}"
        self._inc_ids.add(iid)
        self.incs.append(Inclusion(iid, small, big, tuple(sorted(mapping.items())), tuple(cusp)))

    def swallowtail(self, vertex: str, direction: str, k: int, s_corner: Tuple[str, int],
                    t_corner: Tuple[str, int], crossing_edge: str, s_cusp_edge: str, t_cusp_edge: str) -> None:
        self.sts.append(Swallowtail(vertex, direction, k, Corner(*s_corner), Corner(*t_corner),
                                    crossing_edge, s_cusp_edge, t_cusp_edge))

    def build(self) -> FrontComplex:
        cells = tuple(self.cells[0] + self.cells[1] + self.cells[2])
        return FrontComplex(self.maslov_number, cells, tuple(self.incs), tuple(self.sts), self.name)


def ident(ids: Iterable[int]) -> Dict[int, int]:
    return {s: s for s in ids}


# ---------------------------------------------------------------------------
# flying saucer
# ---------------------------------------------------------------------------


def flying_saucer() -> FrontComplex:
    """A two-sheeted disk bounded by a cusp circle.

    One vertex and one loop edge sit on the cusp circle (no sheets); the disk
    carries sheets 1 (Maslov 1) above 2 (Maslov 0).
    """
    b = ComplexBuilder(0, "flying_saucer")
    b.vertex("v", [])
    b.edge("e", "v", "v", [])
    b.face("D", [(1, 1), (2, 0)], "v", "v", [("e", 1)])
    b.include("v", "e", {})
    b.include("e", "D", {}, [(1, 2)])
    return b.build()


# ---------------------------------------------------------------------------
# torus with a crossing along a nonseparating curve
# ---------------------------------------------------------------------------

TORUS_LOOP = {
    "schema": "loop/1",
    "basepoint": "w",
    "name": "transverse",
    "moves": [
        {"move": "cusp_in", "inclusion": "w>h1", "end": "to"},
        {"move": "edge", "edge": "h1", "sign": -1},
        {"move": "cusp_out", "inclusion": "v>h1", "end": "from"},
        {"move": "cusp_in", "inclusion": "v>h2", "end": "to"},
        {"move": "edge", "edge": "h2", "sign": -1},
        {"move": "cusp_out", "inclusion": "w>h2", "end": "from"},
    ],
}


def torus_curve() -> FrontComplex:
    """Square torus, two sheets everywhere, crossing above the curve x = 1/2.

    Cells: vertex v at (0,0) with sheets 1 over 2, vertex w at (1/2,0) where
    the two sheets cross, edges h1: v->w and h2: w->v along y = 0, ev: v->v
    along x = 0, crossing edge c: w->w along x = 1/2, and the two squares L
    (left of the curve) and R (right of it).  Sheet 1 of L continues as
    sheet 2 of R.
    """
    b = ComplexBuilder(0, "torus_curve")
    two = [(1, 0), (2, 0)]
    b.vertex("v", two)
    b.vertex("w", two, order=[])
    b.edge("h1", "v", "w", two)
    b.edge("h2", "w", "v", two)
    b.edge("ev", "v", "v", two)
    b.edge("c", "w", "w", two, order=[], crossing=True)
    b.face("L", two, "v", "w", [("h1", 1), ("c", 1)], [("ev", 1), ("h1", 1)])
    b.face("R", two, "w", "v", [("h2", 1), ("ev", 1)], [("c", 1), ("h2", 1)])
    b.include("v", "h1", ident((1, 2)))
    b.include("w", "h1", ident((1, 2)))
    b.include("w", "h2", {1: 2, 2: 1})
    b.include("v", "h2", ident((1, 2)))
    b.include("v", "ev", ident((1, 2)))
    b.include("w", "c", ident((1, 2)))
    b.include("h1", "L", ident((1, 2)))
    b.include("c", "L", ident((1, 2)))
    b.include("ev", "L", ident((1, 2)))
    b.include("h2", "R", ident((1, 2)))
    b.include("ev", "R", ident((1, 2)))
    b.include("c", "R", {1: 2, 2: 1})
    return b.build()


def torus_loops() -> dict:
    """The transverse loop around the torus, crossing the curve once."""
    return json.loads(json.dumps(TORUS_LOOP))


def parallel_torus(n: int = 3) -> FrontComplex:
    """``n`` parallel copies of the zero section over a square torus.

    Sheets are totally ordered everywhere, so loop maps are unipotent.  One
    vertex x, loop edges ex and ey, one square D with boundary ex ey ex^-1 ey^-1.
    """
    if n < 1:
        raise ValueError("need at least one sheet")
    b = ComplexBuilder(0, f"parallel_torus{n}")
    sheets = [(i, 0) for i in range(1, n + 1)]
    ids = tuple(range(1, n + 1))
    b.vertex("x", sheets)
    b.edge("ex", "x", "x", sheets)
    b.edge("ey", "x", "x", sheets)
    b.face("D", sheets, "x", "x", [("ex", 1), ("ey", 1)], [("ey", 1), ("ex", 1)])
    b.include("x", "ex", ident(ids))
    b.include("x", "ey", ident(ids))
    b.include("ex", "D", ident(ids))
    b.include("ey", "D", ident(ids))
    return b.build()


# ---------------------------------------------------------------------------
# conormal of the unknot
# ---------------------------------------------------------------------------

# Inside a resolved cone point there are four sheets 1..4 (Maslov 1,1,0,0);
# outside, two sheets: 1 = upper (Maslov 1), 2 = lower (Maslov 0).
_QUADRANTS = {
    # name: (linear order of sheets, description)
    "C1": (1, 2, 4, 3),   # lower left: A0, L, X
    "C2": (1, 2, 3, 4),   # lower right: A0, R, X
    "C3": (2, 1, 3, 4),   # upper right: R, Top, X
    "C4": (2, 1, 4, 3),   # upper left: L, Top, X
}
_MU4 = {1: 1, 2: 1, 3: 0, 4: 0}
_MU2 = [(1, 1), (2, 0)]


def _diamond(b: ComplexBuilder, p: str) -> None:
    """One resolved cone point, with ids prefixed by ``p``.

    Swallowtails: A0 (bottom, up, k=2), R (right, down, k=1), Top (up, k=2),
    L (left, down, k=1).  Cusp arcs run A0-M1-R-M2-Top-M3-L-M4-A0 with a
    midpoint vertex M on each so that every cusp edge points away from its
    swallowtail.  The crossing edges meet at the centre X.
    """
    A0, R, T, L, X = (p + s for s in ("A0", "R", "Top", "L", "X"))
    M = [p + f"M{i}" for i in range(1, 5)]
    for v in (A0, R, T, L):
        b.vertex(v, _MU2)
    for m in M:
        b.vertex(m, _MU2)
    b.vertex(X, [(s, _MU4[s]) for s in (1, 2, 3, 4)], order=[(1, 3), (1, 4), (2, 3), (2, 4)])

    def four(order: Sequence[int]) -> List[Tuple[int, int]]:
        return [(s, _MU4[s]) for s in order]

    # crossing edges, oriented from each swallowtail to the centre
    cr = {A0: p + "B0", T: p + "BT", R: p + "BR", L: p + "BL"}
    b.edge(cr[A0], A0, X, four((1, 2, 3, 4)), order=chain((1, 2, 3, 4), [(3, 4)]), crossing=True)
    b.edge(cr[T], T, X, four((2, 1, 3, 4)), order=chain((2, 1, 3, 4), [(3, 4)]), crossing=True)
    b.edge(cr[R], R, X, four((1, 2, 3, 4)), order=chain((1, 2, 3, 4), [(1, 2)]), crossing=True)
    b.edge(cr[L], L, X, four((1, 2, 4, 3)), order=chain((1, 2, 4, 3), [(1, 2)]), crossing=True)
    for v in cr.values():
        b.include(X, v, ident((1, 2, 3, 4)))
    # cusp edges: (swallowtail, midpoint, quadrant, cusp pair in quadrant, image of outer sheets)
    cusp_edges = {
        (A0, 0): ("C2", (2, 3), {1: 1, 2: 4}),
        (R, 0): ("C2", (2, 3), {1: 1, 2: 4}),
        (R, 1): ("C3", (1, 3), {1: 2, 2: 4}),
        (T, 1): ("C3", (1, 3), {1: 2, 2: 4}),
        (T, 2): ("C4", (1, 4), {1: 2, 2: 3}),
        (L, 2): ("C4", (1, 4), {1: 2, 2: 3}),
        (L, 3): ("C1", (2, 4), {1: 1, 2: 3}),
        (A0, 3): ("C1", (2, 4), {1: 1, 2: 3}),
    }
    names = {}
    for (v, mi), (quad, pair, img) in cusp_edges.items():
        eid = f"{v}-{M[mi][len(p):]}"
        names[(v, mi)] = eid
        b.edge(eid, v, M[mi], _MU2)
        b.include(v, eid, ident((1, 2)))
        b.include(M[mi], eid, ident((1, 2)))
        b.include(eid, p + quad, img, [pair])
    # vertex into crossing edge: the labelling of the T cell
    b.include(A0, cr[A0], {1: 1, 2: 3}, [(2, 4)])   # T cell C1
    b.include(R, cr[R], {1: 1, 2: 4}, [(2, 3)])     # T cell C2
    b.include(T, cr[T], {1: 2, 2: 4}, [(1, 3)])     # T cell C3
    b.include(L, cr[L], {1: 1, 2: 3}, [(2, 4)])     # T cell C1
    quads = {
        "C2": (A0, [(names[(A0, 0)], 1), (names[(R, 0)], -1), (cr[R], 1), (cr[A0], -1)]),
        "C1": (A0, [(names[(A0, 3)], 1), (names[(L, 3)], -1), (cr[L], 1), (cr[A0], -1)]),
        "C3": (R, [(names[(R, 1)], 1), (names[(T, 1)], -1), (cr[T], 1), (cr[R], -1)]),
        "C4": (L, [(names[(L, 2)], 1), (names[(T, 2)], -1), (cr[T], 1), (cr[L], -1)]),
    }
    for q in ("C1", "C2", "C3", "C4"):
        base, path = quads[q]
        b.face(p + q, four(_QUADRANTS[q]), base, base, path)
    for q, edges in (("C2", (A0, R)), ("C1", (A0, L)), ("C3", (R, T)), ("C4", (L, T))):
        for v in edges:
            b.include(cr[v], p + q, ident((1, 2, 3, 4)))
    b.swallowtail(A0, "up", 2, (p + "C2", 0), (p + "C1", 0), cr[A0], names[(A0, 0)], names[(A0, 3)])
    b.swallowtail(R, "down", 1, (p + "C3", 0), (p + "C2", 1), cr[R], names[(R, 1)], names[(R, 0)])
    b.swallowtail(T, "up", 2, (p + "C4", 1), (p + "C3", 1), cr[T], names[(T, 2)], names[(T, 1)])
    b.swallowtail(L, "down", 1, (p + "C4", 0), (p + "C1", 1), cr[L], names[(L, 2)], names[(L, 3)])


def conormal_unknot() -> FrontComplex:
    """Two resolved cone points on the sphere joined by a two-sheeted annulus.

    The south diamond uses prefix ``s.`` and the north one ``n.``.  Radial
    edges join like-named cusp midpoints, cutting the annulus into four
    hexagons, one around each swallowtail.
    """
    b = ComplexBuilder(0, "conormal_unknot")
    for p in ("s.", "n."):
        _diamond(b, p)
    for i in range(1, 5):
        e = f"rad{i}"
        b.edge(e, f"s.M{i}", f"n.M{i}", _MU2)
        b.include(f"s.M{i}", e, ident((1, 2)))
        b.include(f"n.M{i}", e, ident((1, 2)))
    # hexagon around each swallowtail: (swallowtail, midpoint before, midpoint after)
    around = {"R": (1, 2), "Top": (2, 3), "L": (3, 4), "A0": (4, 1)}
    for v, (m1, m2) in around.items():
        s, n = f"s.{v}", f"n.{v}"
        fid = f"O.{v}"
        b.face(fid, _MU2, s, n,
               [(f"{s}-M{m1}", 1), (f"rad{m1}", 1), (f"{n}-M{m1}", -1)],
               [(f"{s}-M{m2}", 1), (f"rad{m2}", 1), (f"{n}-M{m2}", -1)])
        for e in (f"{s}-M{m1}", f"rad{m1}", f"{n}-M{m1}", f"{s}-M{m2}", f"rad{m2}", f"{n}-M{m2}"):
            b.include(e, fid, ident((1, 2)))
    return b.build()


# ---------------------------------------------------------------------------
# trivalent graphs
# ---------------------------------------------------------------------------


class GraphError(ValueError):
    """Raised for malformed trivalent graph data."""


@dataclass(frozen=True)
class TrivalentGraph:
    """A trivalent graph with faces given as cyclic edge lists."""

    name: str
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, str], ...]          # (id, u, v)
    faces: Tuple[Tuple[str, ...], ...]

    def endpoints(self, e: str) -> Tuple[str, str]:
        for eid, u, v in self.edges:
            if eid == e:
                return u, v
        raise GraphError(f"unknown edge {e}")

    def incident(self, v: str) -> List[str]:
        return [e for e, a, b in self.edges for end in (a, b) if end == v]

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def face_walk(self, face: Sequence[str]) -> List[str]:
        """Vertices x_0..x_{r-1} with face edge i joining x_i to x_{i+1}."""
        for start in self.endpoints(face[0]):
            xs = [start]
            ok = True
            for e in face:
                a, b = self.endpoints(e)
                if xs[-1] == a:
                    xs.append(b)
                elif xs[-1] == b:
                    xs.append(a)
                else:
                    ok = False
                    break
            if ok and xs[-1] == xs[0]:
                return xs[:-1]
        raise GraphError(f"face {list(face)} is not a closed walk")

    def corners(self) -> List[Tuple[int, int, str, str, str]]:
        """(face index, position, vertex, edge before, edge after) for every face corner."""
        out = []
        for fi, face in enumerate(self.faces):
            xs = self.face_walk(face)
            r = len(face)
            for i in range(r):
                out.append((fi, i, xs[i], face[i - 1], face[i]))
        return out

    def validate(self) -> List[str]:
        out = []
        ids = [e for e, _, _ in self.edges]
        if len(set(ids)) != len(ids):
            out.append("duplicate edge ids")
        for e, a, b in self.edges:
            if a == b:
                out.append(f"edge {e} is a loop")
            if a not in self.vertices or b not in self.vertices:
                out.append(f"edge {e} has an unknown endpoint")
        if out:
            return out
        for v in self.vertices:
            if len(self.incident(v)) != 3:
                out.append(f"vertex {v} does not have degree 3")
        count = {e: 0 for e in ids}
        for face in self.faces:
            for e in face:
                if e not in count:
                    out.append(f"face mentions unknown edge {e}")
                    return out
                count[e] += 1
        for e, c in count.items():
            if c != 2:
                out.append(f"edge {e} appears {c} times in faces, expected 2")
        if out:
            return out
        try:
            seen = {}
            for fi, i, v, e1, e2 in self.corners():
                if e1 == e2:
                    out.append(f"face {fi} turns back along edge {e1}")
                key = (v, frozenset((e1, e2)))
                seen[key] = seen.get(key, 0) + 1
            for v in self.vertices:
                inc = self.incident(v)
                for i in range(3):
                    key = (v, frozenset((inc[i], inc[(i + 1) % 3])))
                    if seen.get(key, 0) != 1:
                        out.append(f"corner of {v} between {sorted(key[1])} is used {seen.get(key, 0)} times")
        except GraphError as exc:
            out.append(str(exc))
        if not out and self.euler_characteristic % 2:
            out.append("odd Euler characteristic")
        return out


def even_faces(g: TrivalentGraph) -> bool:
    """Every face has an even number of corners (counted along the boundary walk)."""
    _require_valid(g)
    return all(len(face) % 2 == 0 for face in g.faces)


def dual_graph(g: TrivalentGraph) -> nx.MultiGraph:
    dual = nx.MultiGraph()
    dual.add_nodes_from(range(len(g.faces)))
    sides: Dict[str, List[int]] = {}
    for fi, face in enumerate(g.faces):
        for e in face:
            sides.setdefault(e, []).append(fi)
    for e, (f1, f2) in sides.items():
        dual.add_edge(f1, f2, key=e)
    return dual


def dual_3_colorable(g: TrivalentGraph) -> bool:
    """Exact search for a proper 3-colouring of the dual graph."""
    _require_valid(g)
    dual = dual_graph(g)
    if any(u == v for u, v in dual.edges()):
        return False
    nodes = sorted(dual.nodes, key=lambda n: -dual.degree(n))
    colour: Dict[int, int] = {}

    def place(i: int) -> bool:
        if i == len(nodes):
            return True
        n = nodes[i]
        for c in range(3):
            if all(colour.get(m) != c for m in dual.neighbors(n)):
                colour[n] = c
                if place(i + 1):
                    return True
                del colour[n]
        return False

    return place(0)


def _require_valid(g: TrivalentGraph) -> None:
    report = g.validate()
    if report:
        raise GraphError("; ".join(report))


def load_graph(document) -> TrivalentGraph:
    """Parse a ``trigraph/1`` document (dict or JSON string)."""
    if isinstance(document, (str, bytes)):
        document = json.loads(document)
    if document.get("schema") != "trigraph/1":
        raise GraphError(f"unsupported schema {document.get('schema')!r}; expected 'trigraph/1'")
    try:
        vertices = tuple(str(v) for v in document["vertices"])
        edges = tuple((str(e["id"]), str(e["ends"][0]), str(e["ends"][1])) for e in document["edges"])
        faces = tuple(tuple(str(x) for x in f) for f in document["faces"])
    except (KeyError, IndexError, TypeError) as exc:
        raise GraphError(f"malformed trigraph document: missing {exc}") from None
    return TrivalentGraph(str(document.get("name", "")), vertices, edges, faces)


def save_graph(g: TrivalentGraph) -> dict:
    return {"schema": "trigraph/1", "name": g.name, "vertices": list(g.vertices),
            "edges": [{"id": e, "ends": [a, b]} for e, a, b in g.edges],
            "faces": [list(f) for f in g.faces]}


def graph_from_faces(name: str, faces: Sequence[Sequence[str]]) -> TrivalentGraph:
    """Build a graph from faces written as vertex cycles; edge ids are 'u-v'."""
    edges: Dict[frozenset, str] = {}
    ends: Dict[str, Tuple[str, str]] = {}
    vertices: List[str] = []
    face_edges = []
    for cyc in faces:
        fe = []
        for i, u in enumerate(cyc):
            v = cyc[(i + 1) % len(cyc)]
            for x in (u, v):
                if x not in vertices:
                    vertices.append(x)
            key = frozenset((u, v))
            if key not in edges:
                eid = f"{min(u, v)}-{max(u, v)}"
                edges[key] = eid
                ends[eid] = (min(u, v), max(u, v))
            fe.append(edges[key])
        face_edges.append(tuple(fe))
    return TrivalentGraph(name, tuple(vertices), tuple((e, *ends[e]) for e in ends),
                          tuple(face_edges))


def _prism(n: int) -> TrivalentGraph:
    top = [f"t{i}" for i in range(n)]
    bot = [f"b{i}" for i in range(n)]
    faces = [top, list(reversed(bot))]
    for i in range(n):
        j = (i + 1) % n
        faces.append([top[j], top[i], bot[i], bot[j]])
    return graph_from_faces(f"prism{n}", faces)


def theta_graph() -> TrivalentGraph:
    return TrivalentGraph("theta", ("u", "v"), (("e0", "u", "v"), ("e1", "u", "v"), ("e2", "u", "v")),
                          (("e0", "e1"), ("e1", "e2"), ("e2", "e0")))


def tetrahedron_graph() -> TrivalentGraph:
    return graph_from_faces("tetrahedron", [["1", "2", "3"], ["1", "4", "2"], ["2", "4", "3"], ["3", "4", "1"]])


def cube_graph() -> TrivalentGraph:
    g = _prism(4)
    return TrivalentGraph("cube", g.vertices, g.edges, g.faces)


def prism_graph(n: int) -> TrivalentGraph:
    return _prism(n)


def k4_subdivision_graph() -> TrivalentGraph:
    """Tetrahedron with one vertex blown up into a triangle (faces 3, 3, 4, 4, 4)."""
    return graph_from_faces("k4_truncated_once", [
        ["13", "12", "2", "3"], ["12", "14", "4", "2"], ["2", "4", "3"], ["3", "4", "14", "13"],
        ["12", "13", "14"],
    ])


def truncated_tetrahedron_graph() -> TrivalentGraph:
    """Every vertex of the tetrahedron blown up into a triangle (faces 3,3,3,3,6,6,6,6)."""
    faces = []
    for f in (["1", "2", "3"], ["1", "4", "2"], ["2", "4", "3"], ["3", "4", "1"]):
        cyc = []
        for i, v in enumerate(f):
            cyc += [v + f[i - 1], v + f[(i + 1) % 3]]
        faces.append(cyc)
    for v in "1234":
        faces.append([v + w for w in "1234" if w != v])
    return graph_from_faces("truncated_tetrahedron", faces)


def torus_theta_graph() -> TrivalentGraph:
    """Theta graph embedded in the torus with a single hexagonal face."""
    return TrivalentGraph("torus_theta", ("u", "v"), (("e0", "u", "v"), ("e1", "u", "v"), ("e2", "u", "v")),
                          (("e0", "e1", "e2", "e0", "e1", "e2"),))


def graph_corpus() -> List[TrivalentGraph]:
    """Test graphs on the sphere plus one of genus one."""
    return [theta_graph(), tetrahedron_graph(), cube_graph(), prism_graph(3), prism_graph(5), prism_graph(6),
            k4_subdivision_graph(), truncated_tetrahedron_graph(), torus_theta_graph()]


# ---------------------------------------------------------------------------
# the tz family: a front over a trivalent graph
# ---------------------------------------------------------------------------

# Sheets over the four-sheeted neighbourhood of a graph vertex.
U, P, R, W = 1, 2, 3, 4
# For swallowtail i: (a, b, bottom).  Its T cell orders sheets (U, a, b, bottom),
# its S cell (U, b, a, bottom); a and b cross along the edge into the hub.
_ST = [(P, R, W), (W, P, R), (R, W, P)]
_MU_N = {U: 1, P: 0, R: 0, W: 0}


def _st_sheets(i: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    a, b, bot = _ST[i]
    return (U, a, b, bot), (U, b, a, bot)


def _vertex_model(b: ComplexBuilder, v: str) -> Dict[str, object]:
    """The six-triangle neighbourhood of a graph vertex.

    Hub ``{v}.A1`` carries U above the pairwise incomparable P, R, W.  Rays
    from the hub alternate between swallowtails ``{v}.st{i}`` and crossing
    points ``{v}.X{i}`` on the boundary circle (X{i} lies between st{i} and
    st{i+1}).  Returns the sheet data the face cells need.
    """
    hub = f"{v}.A1"
    b.vertex(hub, [(s, _MU_N[s]) for s in (U, P, R, W)], order=[(U, P), (U, R), (U, W)])
    xs, hi = [], {}
    for i in range(3):
        a, bb, bot = _ST[i]
        x = f"{v}.X{i}"
        xs.append(x)
        b.vertex(x, [(bb, 0), (bot, 0)], order=[])
    for i in range(3):
        st = f"{v}.st{i}"
        b.vertex(st, [(1, 0), (2, 0)])
    for i in range(3):
        a, bb, bot = _ST[i]
        st = f"{v}.st{i}"
        cr = f"{v}.cr{i}"
        b.edge(cr, st, hub, [(s, _MU_N[s]) for s in (U, a, bb, bot)],
               order=chain((U, a, bb, bot), [(a, bb)]), crossing=True)
        b.include(st, cr, {1: bb, 2: bot}, [(U, a)])
        b.include(hub, cr, ident((U, P, R, W)))
        ax = f"{v}.ax{i}"
        b.edge(ax, hub, xs[i], [(s, _MU_N[s]) for s in (U, a, bb, bot)],
               order=chain((U, a, bb, bot), [(bb, bot)]), crossing=True)
        b.include(hub, ax, ident((U, P, R, W)))
        b.include(xs[i], ax, ident((bb, bot)), [(U, a)])
        # cusp edge on the T side runs to X{i}; on the S side to X{i-1}
        cu_t = f"{v}.cuT{i}"
        b.edge(cu_t, st, xs[i], [(bb, 0), (bot, 0)])
        b.include(st, cu_t, {1: bb, 2: bot})
        b.include(xs[i], cu_t, ident((bb, bot)))
        cu_s = f"{v}.cuS{i}"
        xprev = xs[(i - 1) % 3]
        b.edge(cu_s, st, xprev, [(a, 0), (bot, 0)])
        b.include(st, cu_s, {1: a, 2: bot})
        b.include(xprev, cu_s, ident((a, bot)))
        hi[(i, "T")] = (xs[i], bb, bot, cu_t)
        hi[(i, "S")] = (xprev, a, bot, cu_s)
    for i in range(3):
        st, cr = f"{v}.st{i}", f"{v}.cr{i}"
        t_order, s_order = _st_sheets(i)
        a, bb, bot = _ST[i]
        t_face, s_face = f"{v}.T{i}", f"{v}.S{i}"
        ax_t, ax_s = f"{v}.ax{i}", f"{v}.ax{(i - 1) % 3}"
        cu_t, cu_s = f"{v}.cuT{i}", f"{v}.cuS{i}"
        b.face(t_face, [(s, _MU_N[s]) for s in t_order], hub, st, [(cr, -1)], [(ax_t, 1), (cu_t, -1)])
        b.face(s_face, [(s, _MU_N[s]) for s in s_order], hub, st, [(cr, -1)], [(ax_s, 1), (cu_s, -1)])
        for face in (t_face, s_face):
            b.include(cr, face, ident((U, P, R, W)))
        b.include(ax_t, t_face, ident((U, P, R, W)))
        b.include(ax_s, s_face, ident((U, P, R, W)))
        b.include(cu_t, t_face, ident((bb, bot)), [(U, a)])
        b.include(cu_s, s_face, ident((a, bot)), [(U, bb)])
        b.swallowtail(st, "up", 1, (s_face, 2), (t_face, 2), cr, cu_s, cu_t)
    return {"hi": hi, "xs": xs}


def _slot_corner(slots: Sequence[str], e1: str, e2: str) -> int:
    """Swallowtail index pointing into the corner between edges e1 and e2."""
    a, b = slots.index(e1), slots.index(e2)
    pair = {a, b}
    for i in range(3):
        if pair == {(i - 1) % 3, i}:
            return i
    raise GraphError("corner edges are not adjacent slots")


def tz_local() -> FrontComplex:
    """The four-sheeted neighbourhood of a single graph vertex, on its own."""
    b = ComplexBuilder(0, "tz_local")
    _vertex_model(b, "v")
    return b.build()


def tz_complex(g: TrivalentGraph) -> FrontComplex:
    """Front over a trivalent graph: three swallowtails per vertex, crossings over the edges.

    Each face of the graph is cut into 2-cells by a hub vertex with spokes to
    the crossing points: a quadrilateral (hub, X_in, st, X_out) at every
    corner and a triangle (hub, X, X') along every edge side.
    """
    _require_valid(g)
    b = ComplexBuilder(0, f"tz[{g.name}]")
    models = {v: _vertex_model(b, v) for v in g.vertices}
    slots = {v: g.incident(v) for v in g.vertices}

    def x_of(v: str, e: str) -> str:
        return f"{v}.X{slots[v].index(e)}"

    # hi sheet of X for each edge side: corners give, per side, the st at each end.
    corners = g.corners()
    side_of: Dict[Tuple[int, int], Tuple[str, str]] = {}
    for fi, face in enumerate(g.faces):
        xs = g.face_walk(face)
        for i, e in enumerate(face):
            side_of[(fi, i)] = (xs[i], xs[(i + 1) % len(face)])

    def hi_sheet(v: str, e1: str, e2: str, e: str) -> Tuple[int, str]:
        """Upper sheet at X(v, e) seen from the corner (e1, e2) of v, and the cusp edge used."""
        c = _slot_corner(slots[v], e1, e2)
        model = models[v]["hi"]
        x_t, up_t, _, cu_t = model[(c, "T")]
        x_s, up_s, _, cu_s = model[(c, "S")]
        if x_t == x_of(v, e):
            return up_t, cu_t
        return up_s, cu_s

    # first appearance of each edge fixes the arc's sheet 1 as that side's upper sheet
    first_side: Dict[str, Tuple[int, int]] = {}
    for fi, face in enumerate(g.faces):
        for i, e in enumerate(face):
            first_side.setdefault(e, (fi, i))

    def side_hi(fi: int, i: int) -> Dict[str, int]:
        """Upper sheet at both ends of face edge i of face fi."""
        face = g.faces[fi]
        xs = g.face_walk(face)
        e = face[i]
        r = len(face)
        start, end = xs[i], xs[(i + 1) % r]
        h_start, _ = hi_sheet(start, face[i - 1], e, e)
        h_end, _ = hi_sheet(end, e, face[(i + 1) % r], e)
        return {x_of(start, e): h_start, x_of(end, e): h_end}

    for e, u, v in g.edges:
        arc = f"arc.{e}"
        xu, xv = x_of(u, e), x_of(v, e)
        b.edge(arc, xu, xv, [(1, 0), (2, 0)], order=[], crossing=True)
        top = side_hi(*first_side[e])
        for x in (xu, xv):
            sheets = b_sheets(b, x)
            b.include(x, arc, {s: (1 if s == top[x] else 2) for s in sheets})

    for fi, face in enumerate(g.faces):
        hub = f"F{fi}.hub"
        b.vertex(hub, [(1, 0), (2, 0)])
        xs = g.face_walk(face)
        r = len(face)
        spokes = []
        for i in range(r):
            # spoke to the X at the start of face edge i (on the vertex xs[i])
            e = face[i]
            for which, vert in (("out", xs[i]), ("in", xs[(i + 1) % r])):
                sp = f"F{fi}.sp{i}{which}"
                x = x_of(vert, e)
                hi_map = side_hi(fi, i)
                b.edge(sp, hub, x, [(1, 0), (2, 0)])
                b.include(hub, sp, ident((1, 2)))
                b.include(x, sp, {s: (1 if s == hi_map[x] else 2) for s in b_sheets(b, x)})
                spokes.append(sp)
        for i in range(r):
            e = face[i]
            sp_out, sp_in = f"F{fi}.sp{i}out", f"F{fi}.sp{i}in"
            u_end, v_end = xs[i], xs[(i + 1) % r]
            arc = f"arc.{e}"
            arc_src = b_edge_source(b, arc)
            sign = 1 if arc_src == x_of(u_end, e) else -1
            tri = f"F{fi}.tri{i}"
            b.face(tri, [(1, 0), (2, 0)], hub, x_of(v_end, e), [(sp_out, 1), (arc, sign)], [(sp_in, 1)])
            b.include(sp_out, tri, ident((1, 2)))
            b.include(sp_in, tri, ident((1, 2)))
            flip = first_side[e] != (fi, i)
            b.include(arc, tri, {1: 2, 2: 1} if flip else ident((1, 2)))
            # corner quadrilateral at the vertex where face edge i ends
            nxt = (i + 1) % r
            vert = v_end
            st = f"{vert}.st{_slot_corner(slots[vert], e, face[nxt])}"
            _, cu_in = hi_sheet(vert, e, face[nxt], e)
            _, cu_out = hi_sheet(vert, e, face[nxt], face[nxt])
            quad = f"F{fi}.q{nxt}"
            b.face(quad, [(1, 0), (2, 0)], hub, st, [(sp_in, 1), (cu_in, -1)],
                   [(f"F{fi}.sp{nxt}out", 1), (cu_out, -1)])
            b.include(f"F{fi}.sp{nxt}out", quad, ident((1, 2)))
            b.include(sp_in, quad, ident((1, 2)))
            for cu in (cu_in, cu_out):
                up = b_edge_top(b, cu)
                b.include(cu, quad, {s: (1 if s == up else 2) for s in b_sheets(b, cu)})
    return b.build()


def b_sheets(b: ComplexBuilder, cid: str) -> Tuple[int, ...]:
    for dim in (0, 1, 2):
        for c in b.cells[dim]:
            if c.id == cid:
                return c.sheet_ids
    raise KeyError(cid)


def b_edge_source(b: ComplexBuilder, cid: str) -> str:
    for c in b.cells[1]:
        if c.id == cid:
            return c.source
    raise KeyError(cid)


def b_edge_top(b: ComplexBuilder, cid: str) -> int:
    for c in b.cells[1]:
        if c.id == cid:
            return c.sheets[0].id
    raise KeyError(cid)


BUILDERS = {
    "saucer": flying_saucer,
    "torus": torus_curve,
    "conormal": conormal_unknot,
    "tz_local": tz_local,
    "parallel_torus": parallel_torus,
}
