"""The cellular DGA: generators, boundary matrices and the differential.

Generators are indexed by integers in a canonical order (cells in document
order, then sheet pairs by linear position).  A ``Poly`` is a set of words,
each word a tuple of generator indices; the empty tuple is the unit.  Matrix
positions inside this module are 0-based linear positions of a cell's sheets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .front_model import FrontComplex, FrontError, Swallowtail, compose_inclusions, validate


class InvalidComplex(ValueError):
    """Raised when a DGA is requested for a complex that fails validation."""


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Element of the free Z/2 algebra; a set of words with mod-2 cancellation."""

    __slots__ = ("words",)

    def __init__(self, words: Iterable[Tuple[int, ...]] = ()) -> None:
        acc: set = set()
        for w in words:
            w = tuple(w)
            if w in acc:
                acc.remove(w)
            else:
                acc.add(w)
        self.words = frozenset(acc)

    @classmethod
    def _raw(cls, words: frozenset) -> "Poly":
        p = cls.__new__(cls)
        p.words = words
        return p

    @classmethod
    def gen(cls, index: int) -> "Poly":
        return cls._raw(frozenset({(index,)}))

    def __add__(self, other: "Poly") -> "Poly":
        return Poly._raw(self.words ^ other.words)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.words or not other.words:
            return ZERO
        if other.words == ONE.words:
            return self
        if self.words == ONE.words:
            return other
        acc: set = set()
        for u in self.words:
            for v in other.words:
                w = u + v
                if w in acc:
                    acc.remove(w)
                else:
                    acc.add(w)
        return Poly._raw(frozenset(acc))

    def __bool__(self) -> bool:
        return bool(self.words)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def sorted_words(self) -> List[Tuple[int, ...]]:
        return sorted(self.words, key=lambda w: (len(w), w))

    def variables(self) -> set:
        return {g for w in self.words for g in w}

    def __repr__(self) -> str:
        if not self.words:
            return "Poly(0)"
        return "Poly(" + " + ".join("*".join(map(str, w)) or "1" for w in self.sorted_words()) + ")"


ZERO = Poly()
ONE = Poly([()])


# ---------------------------------------------------------------------------
# matrices of polynomials
# ---------------------------------------------------------------------------


class PolyMatrix:
    """Sparse square matrix of ``Poly`` entries."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Optional[Mapping[Tuple[int, int], Poly]] = None) -> None:
        self.n = n
        self.entries: Dict[Tuple[int, int], Poly] = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(n, {(i, i): ONE for i in range(n)})

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "PolyMatrix":
        return cls(n, {(i, j): ONE})

    def __getitem__(self, ij: Tuple[int, int]) -> Poly:
        i, j = ij
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"entry {ij} outside a {self.n}x{self.n} matrix")
        return self.entries.get(ij, ZERO)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return PolyMatrix(self.n, out)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        rows: Dict[int, List[Tuple[int, Poly]]] = {}
        for (k, j), v in other.entries.items():
            rows.setdefault(k, []).append((j, v))
        out: Dict[Tuple[int, int], Poly] = {}
        for (i, k), u in self.entries.items():
            for j, v in rows.get(k, ()):
                out[(i, j)] = out.get((i, j), ZERO) + u * v
        return PolyMatrix(self.n, out)

    def _check(self, other: "PolyMatrix") -> None:
        if self.n != other.n:
            raise ValueError(f"size mismatch {self.n} vs {other.n}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyMatrix) and self.n == other.n and self.entries == other.entries

    def relabel(self, perm: Sequence[int]) -> "PolyMatrix":
        """Move entry (i, j) to (perm[i], perm[j])."""
        return PolyMatrix(self.n, {(perm[i], perm[j]): v for (i, j), v in self.entries.items()})

    def inverse_unipotent(self) -> "PolyMatrix":
        """Inverse of ``I + N`` with ``N`` nilpotent, by the Neumann series."""
        ident = PolyMatrix.identity(self.n)
        nil = self + ident
        acc, power = ident, ident
        for _ in range(self.n):
            power = power @ nil
            if not power.entries:
                break
            acc = acc + power
        return acc

    def is_strictly_upper(self) -> bool:
        return all(i < j for (i, j) in self.entries)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.n}, {self.entries!r})"


def product(mats: Sequence[PolyMatrix], n: int) -> PolyMatrix:
    acc = PolyMatrix.identity(n)
    for m in mats:
        acc = acc @ m
    return acc


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

KIND_BY_DIM = {0: "a", 1: "b", 2: "c"}


@dataclass(frozen=True, order=True)
class GenId:
    kind: str
    cell: str
    p: int
    q: int

    def label(self) -> str:
        return f"{self.kind}[{self.cell}]({self.p},{self.q})"


def generators(fc: FrontComplex) -> List[Tuple[GenId, int]]:
    """All generators in canonical order with their degrees."""
    out = []
    for cell in fc.cells:
        lin = fc.order_of(cell.id)
        shift = {0: -1, 1: 0, 2: 1}[cell.dim]
        for i, p in enumerate(lin):
            for q in lin[i + 1:]:
                if cell.precedes(p, q):
                    deg = cell.maslov(p) - cell.maslov(q) + shift
                    if fc.maslov_number:
                        deg %= fc.maslov_number
                    out.append((GenId(KIND_BY_DIM[cell.dim], cell.id, p, q), deg))
    return out


def reduce_degree(deg: int, modulus: int) -> int:
    if modulus == 0:
        return deg
    return deg % modulus


# ---------------------------------------------------------------------------
# swallowtail data in linear positions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SwallowtailFrame:
    """Positions needed by the S/T formulas inside one of the two corner cells.

    ``embed`` sends vertex linear positions to cell positions (through the
    corner's cusp edge); ``cusp`` is (upper, lower) cusp positions; ``tip`` is
    the vertex position of the swallowtail sheet.
    """

    cell: str
    n: int
    embed: Tuple[int, ...]
    cusp: Tuple[int, int]
    tip: int
    direction: str

    @property
    def handle(self) -> Tuple[int, int]:
        """The (row, col) of the handleslide matrix T = I + E."""
        if self.direction == "up":
            return (self.cusp[1], self.embed[self.tip])
        return (self.embed[self.tip], self.cusp[0])


def swallowtail_frame(fc: FrontComplex, st: Swallowtail, which: str) -> SwallowtailFrame:
    corner = st.corner(which)
    face = fc.cell(corner.cell)
    step = face.steps[corner.position]
    vmap, cusp = compose_inclusions(fc.edge_end_inclusion(step.edge, "from"), fc.step_inclusion(face.id, step))
    vlin = fc.order_of(st.vertex)
    clin = fc.order_of(face.id)
    embed = tuple(clin.index(vmap[s]) for s in vlin)
    (a, b), = cusp
    return SwallowtailFrame(face.id, len(clin), embed, (clin.index(a), clin.index(b)), st.k - 1, st.direction)


def crossing_relabel(fc: FrontComplex, st: Swallowtail, target: str) -> List[int]:
    """Permutation from T-cell positions to positions in ``target`` (via the crossing edge)."""
    cr = st.crossing_edge
    t_cell = st.t_corner.cell
    to_t = fc.find_inclusion(cr, t_cell).mapping
    lt = fc.order_of(t_cell)
    if target == cr:
        lin = fc.order_of(cr)
        inv = {v: k for k, v in to_t.items()}
        return [lin.index(inv[s]) for s in lt]
    to_x = fc.find_inclusion(cr, target).mapping
    lx = fc.order_of(target)
    inv = {v: k for k, v in to_t.items()}
    return [lx.index(to_x[inv[s]]) for s in lt]


# ---------------------------------------------------------------------------
# the DGA
# ---------------------------------------------------------------------------


class CellularDGA:
    """Generators and differential of the cellular DGA of a front complex."""

    def __init__(self, fc: FrontComplex, check: bool = True) -> None:
        if check:
            report = validate(fc)
            if report:
                raise InvalidComplex("; ".join(report))
        self.fc = fc
        pairs = generators(fc)
        self.gens: List[GenId] = [g for g, _ in pairs]
        self.degrees: List[int] = [d for _, d in pairs]
        self.index: Dict[GenId, int] = {g: i for i, g in enumerate(self.gens)}
        self._st = {st.vertex: st for st in fc.swallowtails}
        self._d: Optional[List[Poly]] = None

    # matrices ---------------------------------------------------------------
    def gen_index(self, kind: str, cell: str, p: int, q: int) -> int:
        return self.index[GenId(kind, cell, p, q)]

    def cell_matrix(self, cid: str) -> PolyMatrix:
        """The A, B or C matrix of a cell in its own linear order."""
        cell = self.fc.cell(cid)
        lin = self.fc.order_of(cid)
        kind = KIND_BY_DIM[cell.dim]
        ent = {}
        for i, p in enumerate(lin):
            for j in range(i + 1, len(lin)):
                g = GenId(kind, cid, p, lin[j])
                if g in self.index:
                    ent[(i, j)] = Poly.gen(self.index[g])
        return PolyMatrix(len(lin), ent)

    def placed_matrix(self, small: str, big: str, sheet_map: Mapping[int, int],
                      cusp: Sequence[Tuple[int, int]]) -> PolyMatrix:
        """Generators of ``small`` placed in ``big`` positions with cusp blocks."""
        sm = self.cell_matrix(small)
        slin = self.fc.order_of(small)
        blin = self.fc.order_of(big)
        perm = [blin.index(sheet_map[s]) for s in slin]
        out = PolyMatrix(len(blin), {(perm[i], perm[j]): v for (i, j), v in sm.entries.items()})
        if self.fc.cell(small).dim == 0:
            for a, b in cusp:
                out.entries[(blin.index(a), blin.index(b))] = ONE
        return out

    def swallowtail_matrix(self, st: Swallowtail, target: str) -> PolyMatrix:
        """Vertex boundary matrix into the crossing edge or the S/T cells."""
        frame = swallowtail_frame(self.fc, st, "T")
        a_hat = self.vertex_hat(st.vertex, frame)
        h = PolyMatrix.identity(frame.n) + PolyMatrix.unit(frame.n, *frame.handle)
        a_t = h @ a_hat @ h
        if target == st.t_corner.cell:
            return a_t
        return a_t.relabel(crossing_relabel(self.fc, st, target))

    def vertex_hat(self, vertex: str, frame: SwallowtailFrame) -> PolyMatrix:
        """Vertex matrix enlarged by the cusp block at ``frame.cusp``."""
        vm = self.cell_matrix(vertex)
        e = frame.embed
        out = PolyMatrix(frame.n, {(e[i], e[j]): v for (i, j), v in vm.entries.items()})
        out.entries[frame.cusp] = ONE
        return out

    def corner_factor(self, st: Swallowtail, which: str) -> PolyMatrix:
        """The S or T matrix in the corner cell's positions."""
        frame = swallowtail_frame(self.fc, st, which)
        out = PolyMatrix.identity(frame.n) + PolyMatrix.unit(frame.n, *frame.handle)
        if which == "S":
            vm = self.cell_matrix(st.vertex)
            e, tip = frame.embed, frame.tip
            up, low = frame.cusp
            for (i, j), v in vm.entries.items():
                if frame.direction == "up" and j == tip:
                    out = out + PolyMatrix(frame.n, {(e[i], up): v})
                if frame.direction == "down" and i == tip:
                    out = out + PolyMatrix(frame.n, {(low, e[j]): v})
        return out

    def vertex_into(self, vertex: str, big: str, sheet_map: Mapping[int, int],
                    cusp: Sequence[Tuple[int, int]]) -> PolyMatrix:
        st = self._st.get(vertex)
        if st is not None and big in (st.crossing_edge, st.s_corner.cell, st.t_corner.cell):
            return self.swallowtail_matrix(st, big)
        return self.placed_matrix(vertex, big, sheet_map, cusp)

    def edge_boundary(self, edge: str, end: str) -> PolyMatrix:
        """A_- (end="from") or A_+ (end="to") for a 1-cell."""
        inc = self.fc.edge_end_inclusion(edge, end)
        return self.vertex_into(inc.small, edge, inc.mapping, inc.cusp_pairs)

    def face_corner_boundary(self, face: str, which: str) -> PolyMatrix:
        """A_{v0} or A_{v1} for a 2-cell."""
        cell = self.fc.cell(face)
        path = cell.path_a or cell.path_b
        step = path[0] if which == "v0" else path[-1]
        end = self.fc.step_ends(step)[0 if which == "v0" else 1]
        vmap, cusp = compose_inclusions(self.fc.edge_end_inclusion(step.edge, end),
                                        self.fc.step_inclusion(face, step))
        vertex = cell.v0 if which == "v0" else cell.v1
        return self.vertex_into(vertex, face, vmap, cusp)

    def step_factor(self, face: str, index: int) -> PolyMatrix:
        """(I + B_i)^{eta_i}, with the S/T matrix folded in at swallowtail corners."""
        cell = self.fc.cell(face)
        step = cell.steps[index]
        inc = self.fc.step_inclusion(face, step)
        n = len(cell.sheets)
        mat = PolyMatrix.identity(n) + self.placed_matrix(step.edge, face, inc.mapping, inc.cusp_pairs)
        for st in self.fc.swallowtails:
            for which in ("S", "T"):
                c = st.corner(which)
                if c.cell == face and c.position == index:
                    mat = mat @ self.corner_factor(st, which)
        if step.sign < 0:
            mat = mat.inverse_unipotent()
        return mat

    def path_product(self, face: str, which: str) -> PolyMatrix:
        cell = self.fc.cell(face)
        n = len(cell.sheets)
        offset = 0 if which == "a" else len(cell.path_a)
        path = cell.path_a if which == "a" else cell.path_b
        acc = PolyMatrix.identity(n)
        for i in range(len(path)):
            acc = self.step_factor(face, offset + i) @ acc
        return acc

    # the differential -------------------------------------------------------
    def matrix_differential(self, cid: str) -> PolyMatrix:
        """The matrix whose entries are the differentials of the cell's generators."""
        cell = self.fc.cell(cid)
        n = len(cell.sheets)
        own = self.cell_matrix(cid)
        if cell.dim == 0:
            return own @ own
        if cell.dim == 1:
            ib = PolyMatrix.identity(n) + own
            return self.edge_boundary(cid, "to") @ ib + ib @ self.edge_boundary(cid, "from")
        a0 = self.face_corner_boundary(cid, "v0")
        a1 = self.face_corner_boundary(cid, "v1")
        return a1 @ own + own @ a0 + self.path_product(cid, "a") + self.path_product(cid, "b")

    def differential(self) -> List[Poly]:
        """``d[g]`` for every generator index ``g``."""
        if self._d is None:
            d: List[Poly] = [ZERO] * len(self.gens)
            for cell in self.fc.cells:
                if not any(g.cell == cell.id for g in self.gens):
                    continue
                m = self.matrix_differential(cell.id)
                lin = self.fc.order_of(cell.id)
                kind = KIND_BY_DIM[cell.dim]
                for i, p in enumerate(lin):
                    for q in lin[i + 1:]:
                        g = GenId(kind, cell.id, p, q)
                        if g in self.index:
                            d[self.index[g]] = m[(i, lin.index(q))]
            self._d = d
        return self._d

    def d_of(self, poly: Poly) -> Poly:
        """Extend the differential to a polynomial by the Leibniz rule."""
        d = self.differential()
        acc: set = set()
        for w in poly.words:
            for i, g in enumerate(w):
                left, right = w[:i], w[i + 1:]
                for u in d[g].words:
                    x = left + u + right
                    if x in acc:
                        acc.remove(x)
                    else:
                        acc.add(x)
        return Poly._raw(frozenset(acc))

    # checks -----------------------------------------------------------------
    def check_d_squared(self) -> List[GenId]:
        """Generators ``g`` with ``d(d g) != 0``; empty means d squares to zero."""
        d = self.differential()
        return [self.gens[i] for i in range(len(self.gens)) if self.d_of(d[i])]

    def word_degree(self, w: Tuple[int, ...]) -> int:
        return sum(self.degrees[g] for g in w)

    def check_degrees(self) -> List[GenId]:
        """Generators whose differential has a term of the wrong degree."""
        m = self.fc.maslov_number
        bad = []
        for i, p in enumerate(self.differential()):
            target = reduce_degree(self.degrees[i] - 1, m)
            if any(reduce_degree(self.word_degree(w), m) != target for w in p.words):
                bad.append(self.gens[i])
        return bad

    # output -----------------------------------------------------------------
    def format_word(self, w: Tuple[int, ...]) -> str:
        return "*".join(self.gens[g].label() for g in w) if w else "1"

    def format_poly(self, p: Poly) -> str:
        if not p:
            return "0"
        return " + ".join(self.format_word(w) for w in p.sorted_words())

    def dump(self) -> str:
        """One line per generator: ``d a[cell](p,q) = word + word``."""
        d = self.differential()
        return "".join(f"d {g.label()} = {self.format_poly(d[i])}\n" for i, g in enumerate(self.gens))


def evaluate(p: Poly, values: Sequence[int]) -> int:
    """Value of ``p`` under the algebra map sending generator ``g`` to ``values[g]``."""
    total = 0
    for w in p.words:
        v = 1
        for g in w:
            if g < 0 or g >= len(values):
                raise KeyError(f"unknown generator index {g}")
            if not values[g]:
                v = 0
                break
        total ^= v
    return total


def differential(fc: FrontComplex) -> Dict[GenId, Poly]:
    dga = CellularDGA(fc)
    return dict(zip(dga.gens, dga.differential()))


def check_d_squared(fc: FrontComplex) -> bool:
    return not CellularDGA(fc).check_d_squared()


def check_degrees(fc: FrontComplex) -> bool:
    return not CellularDGA(fc).check_degrees()
