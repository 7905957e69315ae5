"""Exact linear algebra over GF(2).

Matrices are stored as tuples of Python ints, one int per row, with bit ``j``
of row ``i`` holding entry ``(i, j)``.  Every size in this package is tiny, so
the point of the packing is cheap copying, hashing and xor-based row ops
inside the augmentation search.

Index conventions: ``m[i, j]`` is 0-based like any Python container.  The
helpers that mirror the usual sheet numbering (``unit``, ``handleslide_matrix``)
take 1-based indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np


class DimensionError(ValueError):
    """Raised when operand shapes do not fit together."""


class NotUnipotentError(ValueError):
    """Raised when ``u - I`` is not strictly upper triangular."""


class GradingError(ValueError):
    """Raised when a map does not have the required degree."""


@dataclass(frozen=True)
class BitMatrix:
    """Dense immutable matrix over GF(2)."""

    nrows: int
    ncols: int
    rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise DimensionError("row has bits outside the column range")

    # construction -----------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: Optional[int] = None) -> "BitMatrix":
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "BitMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise DimensionError("ragged rows")
            bits = 0
            for j, v in enumerate(row):
                if v & 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(nrows, ncols, tuple(rows))

    @classmethod
    def from_strings(cls, data: Sequence[str], ncols: Optional[int] = None) -> "BitMatrix":
        """Build from row strings such as ``["01", "00"]``."""
        if any(set(s) - {"0", "1"} for s in data):
            raise ValueError("row strings may only contain '0' and '1'")
        return cls.from_lists([[int(c) for c in s] for s in data], ncols=ncols if data else (ncols or 0))

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        a = np.asarray(arr, dtype=np.uint8) % 2
        if a.ndim != 2:
            raise DimensionError("expected a 2-d array")
        return cls.from_lists(a.tolist(), ncols=a.shape[1])

    # access -----------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry ({i}, {j}) outside a {self.nrows}x{self.ncols} matrix")
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        """Column ``j`` as a bitmask over rows."""
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} out of range")
        out = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                out |= 1 << i
        return out

    def nonzero(self) -> Iterator[Tuple[int, int]]:
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    yield (i, j)
                r >>= 1
                j += 1

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def to_lists(self) -> List[List[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_strings(self) -> List[str]:
        return ["".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_strings()!r})"

    # algebra ----------------------------------------------------------------
    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __sub__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.ncols, self.nrows, tuple(self.column(j) for j in range(self.ncols)))

    def with_entry(self, i: int, j: int, value: int) -> "BitMatrix":
        self[i, j]
        rows = list(self.rows)
        if value & 1:
            rows[i] |= 1 << j
        else:
            rows[i] &= ~(1 << j)
        return BitMatrix(self.nrows, self.ncols, tuple(rows))

    def permuted(self, perm: Sequence[int]) -> "BitMatrix":
        """Return ``P M P^-1`` where ``P`` sends basis vector ``i`` to ``perm[i]``."""
        n = self.nrows
        if not self.is_square() or sorted(perm) != list(range(n)):
            raise DimensionError("permuted needs a square matrix and a permutation")
        rows = [0] * n
        for i, j in self.nonzero():
            rows[perm[i]] |= 1 << perm[j]
        return BitMatrix(n, n, tuple(rows))

    def anti_transpose(self) -> "BitMatrix":
        """Reflect across the anti-diagonal: entry (i, j) moves to (n-1-j, m-1-i)."""
        rows = [0] * self.ncols
        for i, j in self.nonzero():
            rows[self.ncols - 1 - j] |= 1 << (self.nrows - 1 - i)
        return BitMatrix(self.ncols, self.nrows, tuple(rows))

    def rank(self) -> int:
        return rank(self)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2)."""
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc ^= brows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return BitMatrix(a.nrows, b.ncols, tuple(out))


def mat_prod(mats: Iterable[BitMatrix], n: Optional[int] = None) -> BitMatrix:
    """Left-to-right product; the empty product is ``I_n``."""
    acc: Optional[BitMatrix] = None
    for m in mats:
        acc = m if acc is None else mat_mul(acc, m)
    if acc is None:
        if n is None:
            raise ValueError("empty product needs a size")
        return BitMatrix.identity(n)
    return acc


def unit(n: int, i: int, j: int) -> BitMatrix:
    """The matrix unit with a single 1 at 1-based position (i, j)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"unit ({i}, {j}) out of range for n={n}")
    rows = [0] * n
    rows[i - 1] = 1 << (j - 1)
    return BitMatrix(n, n, tuple(rows))


def handleslide_matrix(n: int, u: int, l: int) -> BitMatrix:
    """``I + E_{u,l}``: the map sending ``v_l`` to ``v_l + v_u`` (1-based)."""
    if not (1 <= u <= n and 1 <= l <= n):
        raise IndexError(f"handleslide indices ({u}, {l}) out of range for n={n}")
    if u == l:
        raise ValueError("handleslide needs distinct indices")
    return BitMatrix.identity(n) + unit(n, u, l)


def permutation_matrix(perm: Sequence[int]) -> BitMatrix:
    """Matrix sending basis vector ``j`` to ``perm[j]`` (0-based)."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    rows = [0] * n
    for j, i in enumerate(perm):
        rows[i] |= 1 << j
    return BitMatrix(n, n, tuple(rows))


def transposition_matrix(n: int, i: int, j: int) -> BitMatrix:
    """Permutation matrix swapping 1-based basis vectors ``i`` and ``j``."""
    perm = list(range(n))
    perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
    return permutation_matrix(perm)


# ---------------------------------------------------------------------------
# graded, partially ordered bases
# ---------------------------------------------------------------------------


def transitive_closure(n: int, pairs: Iterable[Tuple[int, int]]) -> FrozenSet[Tuple[int, int]]:
    reach = [0] * n
    for p, q in pairs:
        reach[p] |= 1 << q
    changed = True
    while changed:
        changed = False
        for p in range(n):
            acc = reach[p]
            r = reach[p]
            k = 0
            while r:
                if r & 1:
                    acc |= reach[k]
                r >>= 1
                k += 1
            if acc != reach[p]:
                reach[p] = acc
                changed = True
    return frozenset((p, q) for p in range(n) for q in range(n) if (reach[p] >> q) & 1)


@dataclass(frozen=True)
class GradedBasis:
    """A basis ``0..size-1`` with degrees and a strict partial order.

    ``modulus`` 0 means integer degrees.  ``order`` holds pairs ``(p, q)`` for
    ``p`` strictly before ``q``; it is closed transitively on construction.
    """

    size: int
    degrees: Tuple[int, ...] = ()
    order: FrozenSet[Tuple[int, int]] = frozenset()
    modulus: int = 0
    _above: Tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        degrees = tuple(self.degrees) if self.degrees else (0,) * self.size
        if len(degrees) != self.size:
            raise ValueError("one degree per basis element is required")
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        if self.modulus:
            degrees = tuple(d % self.modulus for d in degrees)
        closed = transitive_closure(self.size, self.order)
        for p, q in closed:
            if p == q:
                raise ValueError("partial order has a cycle")
        above = [0] * self.size
        for p, q in closed:
            above[q] |= 1 << p
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "order", closed)
        object.__setattr__(self, "_above", tuple(above))

    @classmethod
    def total(cls, size: int, degrees: Sequence[int] = (), modulus: int = 0) -> "GradedBasis":
        pairs = [(p, q) for p in range(size) for q in range(p + 1, size)]
        return cls(size, tuple(degrees), frozenset(pairs), modulus)

    def precedes(self, p: int, q: int) -> bool:
        return (p, q) in self.order

    def above_mask(self, q: int) -> int:
        """Bitmask of basis elements strictly before ``q``."""
        return self._above[q]

    def comparable_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.order)

    def with_modulus(self, modulus: int) -> "GradedBasis":
        return GradedBasis(self.size, self.degrees, self.order, modulus)

    def degree_matches(self, p: int, q: int, shift: int) -> bool:
        """True when ``deg(p) - deg(q) == shift`` in the grading."""
        diff = self.degrees[p] - self.degrees[q] - shift
        if self.modulus == 1:
            return True
        if self.modulus == 0:
            return diff == 0
        return diff % self.modulus == 0


def is_strictly_upper(m: BitMatrix, order: GradedBasis) -> bool:
    """True iff every nonzero entry (p, q) has ``p`` strictly before ``q``."""
    if m.shape != (order.size, order.size):
        raise DimensionError(f"matrix {m.shape} does not match basis of size {order.size}")
    for q in range(m.ncols):
        col = m.column(q)
        if col & ~order.above_mask(q):
            return False
    return True


def has_degree(m: BitMatrix, basis: GradedBasis, shift: int, target: Optional[GradedBasis] = None) -> bool:
    """Check that ``m`` maps degree ``k`` into degree ``k + shift``.

    Entry (p, q) is the coefficient of target ``p`` in the image of source
    ``q``; it may be nonzero only if ``deg p = deg q + shift``.
    """
    target = basis if target is None else target
    if m.shape != (target.size, basis.size):
        raise DimensionError("matrix does not match the bases")
    mod = basis.modulus
    if mod == 1:
        return True
    for p, q in m.nonzero():
        diff = target.degrees[p] - basis.degrees[q] - shift
        if (mod == 0 and diff != 0) or (mod and diff % mod):
            return False
    return True


def unipotent_inverse(u: BitMatrix, order: GradedBasis) -> BitMatrix:
    """Inverse of ``I + N`` with ``N`` strictly upper, as ``I + N + N^2 + ...``."""
    n = order.size
    ident = BitMatrix.identity(n)
    nil = u + ident
    if not is_strictly_upper(nil, order):
        raise NotUnipotentError("u - I is not strictly upper triangular")
    return neumann_inverse(u)


def neumann_inverse(u: BitMatrix) -> BitMatrix:
    """Neumann series inverse of a unipotent matrix (no order check)."""
    n = u.nrows
    ident = BitMatrix.identity(n)
    nil = u + ident
    acc = ident
    power = ident
    for _ in range(n):
        power = mat_mul(power, nil)
        if power.is_zero():
            return acc
        acc = acc + power
    if not mat_mul(power, nil).is_zero():
        raise NotUnipotentError("u - I is not nilpotent")
    return acc


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def row_reduce(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form.  Pivot columns are taken lowest index first.

    Returns ``(reduced_rows, pivot_columns)`` with zero rows dropped.
    """
    work = [r for r in rows]
    pivots: List[int] = []
    out: List[int] = []
    for col in range(ncols):
        bit = 1 << col
        pivot_idx = None
        for idx, r in enumerate(work):
            if r & bit:
                pivot_idx = idx
                break
        if pivot_idx is None:
            continue
        prow = work.pop(pivot_idx)
        work = [r ^ prow if r & bit else r for r in work]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(col)
    return out, pivots


def rank(m: BitMatrix) -> int:
    return len(row_reduce(m.rows, m.ncols)[1])


def solve_affine(equations: Sequence[int], rhs: Sequence[int], nvars: int) -> Optional[Tuple[int, List[int]]]:
    """Solve ``E x = b`` over GF(2).

    ``equations[i]`` is a bitmask over the ``nvars`` unknowns and ``rhs[i]``
    its right-hand side bit.  Returns ``(particular, kernel_basis)`` as bitmasks,
    or ``None`` when the system is inconsistent.
    """
    aug = [eq | ((b & 1) << nvars) for eq, b in zip(equations, rhs)]
    reduced, pivots = row_reduce(aug, nvars + 1)
    if nvars in pivots:
        return None
    particular = 0
    for r, col in zip(reduced, pivots):
        if (r >> nvars) & 1:
            particular |= 1 << col
    pivot_set = set(pivots)
    kernel = []
    for free in range(nvars):
        if free in pivot_set:
            continue
        vec = 1 << free
        for r, col in zip(reduced, pivots):
            if (r >> free) & 1:
                vec |= 1 << col
        kernel.append(vec)
    return particular, kernel


def span(basis: Sequence[int], offset: int = 0) -> Iterator[int]:
    """All vectors ``offset + span(basis)`` in Gray-code order."""
    cur = offset
    yield cur
    for i in range(1, 1 << len(basis)):
        flip = (i & -i).bit_length() - 1
        cur ^= basis[flip]
        yield cur


def homology_dims(d: BitMatrix, basis: GradedBasis) -> Dict[int, int]:
    """Per-degree dimensions of ``ker d / im d``.

    With ``basis.modulus == 1`` everything sits in degree 0.  The total over
    all degrees equals ``size - 2 rank(d)``.
    """
    n = basis.size
    if d.shape != (n, n):
        raise DimensionError("differential does not match the basis")
    if not mat_mul(d, d).is_zero():
        raise ValueError("d squared is not zero")
    if not has_degree(d, basis, 1):
        raise GradingError("d does not raise degree by one")
    mod = basis.modulus
    degs = [0] * n if mod == 1 else list(basis.degrees)
    groups: Dict[int, List[int]] = {}
    for i, g in enumerate(degs):
        groups.setdefault(g, []).append(i)

    def block_rank(src_deg: int) -> int:
        # rank of d restricted to degree src_deg -> src_deg + 1
        src = groups.get(src_deg, [])
        if not src:
            return 0
        if mod == 1:
            tgt_deg = src_deg
        elif mod == 0:
            tgt_deg = src_deg + 1
        else:
            tgt_deg = (src_deg + 1) % mod
        tgt = groups.get(tgt_deg, [])
        if not tgt:
            return 0
        cols = []
        for q in src:
            col = 0
            for k, p in enumerate(tgt):
                if d[p, q]:
                    col |= 1 << k
            cols.append(col)
        return len(row_reduce(cols, len(tgt))[1])

    out: Dict[int, int] = {}
    for g, members in groups.items():
        if mod == 1:
            prev = g
        elif mod == 0:
            prev = g - 1
        else:
            prev = (g - 1) % mod
        out[g] = len(members) - block_rank(g) - (block_rank(prev) if prev in groups else 0)
    return dict(sorted(out.items()))


def total_homology(d: BitMatrix) -> int:
    return d.nrows - 2 * rank(d)


def is_chain_map(f: BitMatrix, d_src: BitMatrix, d_tgt: BitMatrix) -> bool:
    """``d_tgt f == f d_src``."""
    if f.ncols != d_src.nrows or f.nrows != d_tgt.nrows or not d_src.is_square() or not d_tgt.is_square():
        raise DimensionError("chain map dimensions do not match")
    return mat_mul(d_tgt, f) == mat_mul(f, d_src)


def is_homotopy(k: BitMatrix, d0: BitMatrix, d1: BitMatrix, g: BitMatrix, h: BitMatrix) -> bool:
    """``g + h == d1 k + k d0``."""
    if g.shape != h.shape or k.shape != g.shape or d1.nrows != k.nrows or d0.ncols != k.ncols:
        raise DimensionError("homotopy dimensions do not match")
    return g + h == mat_mul(d1, k) + mat_mul(k, d0)


def strictly_upper_positions(order: GradedBasis, degree_shift: Optional[int] = None, source: Optional[GradedBasis] = None) -> List[Tuple[int, int]]:
    """Positions (p, q) with p before q, optionally filtered by degree."""
    out = []
    for p, q in order.comparable_pairs():
        if degree_shift is None or order.degree_matches(p, q, degree_shift):
            out.append((p, q))
    return out


def all_pairs(n: int) -> List[Tuple[int, int]]:
    return list(combinations(range(n), 2))
