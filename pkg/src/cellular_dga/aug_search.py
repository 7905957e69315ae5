"""Enumeration of graded augmentations.

Two independent routes: ``brute_force`` assigns generator values directly
and checks ``eps(d g) = 0``; ``staged_search`` walks chain homotopy diagrams
(differentials on 0-cells, chain maps on 1-cells) and counts homotopies on
2-cells by linear algebra.  Their agreement is the main correctness oracle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .chd import (CHD, Augmentation, _degree_ok, chd_to_aug, corner_differential, corner_marks,
                  edge_differentials, path_composite)
from .free_dga import CellularDGA, GenId, evaluate
from .front_model import FrontComplex
from .gf2_core import BitMatrix, solve_affine, span


class SearchError(ValueError):
    """Base class for search failures."""


class CapExceeded(SearchError):
    """A generator cap or solution cap would be exceeded."""


class NoAugmentations(SearchError):
    """Raised by queries that need at least one augmentation."""


@dataclass(frozen=True)
class SearchConfig:
    rho: int = 1
    mode: str = "count"            # exists | count | list
    generator_cap: int = 24
    solution_cap: int = 10000
    pins: Mapping[GenId, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mode not in ("exists", "count", "list"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.generator_cap <= 0 or self.solution_cap <= 0:
            raise ValueError("caps must be positive")
        if self.rho < 0:
            raise ValueError("rho must be nonnegative")


@dataclass
class SearchResult:
    count: int
    augmentations: Optional[List[Augmentation]]
    nodes: int

    @property
    def exists(self) -> bool:
        return self.count > 0


def _as_dga(fc_or_dga) -> CellularDGA:
    return fc_or_dga if isinstance(fc_or_dga, CellularDGA) else CellularDGA(fc_or_dga)


def admissible(dga: CellularDGA, cfg: SearchConfig) -> List[int]:
    """Generator indices that may take the value 1 under the grading and the pins."""
    out = []
    for i, g in enumerate(dga.gens):
        if not _degree_ok(dga.degrees[i], cfg.rho):
            continue
        if cfg.pins.get(g, 1) == 0:
            continue
        out.append(i)
    return out


def _pins_feasible(dga: CellularDGA, cfg: SearchConfig) -> bool:
    for g, v in cfg.pins.items():
        if g not in dga.index:
            raise KeyError(f"unknown generator {g.label()}")
        if v and not _degree_ok(dga.degrees[dga.index[g]], cfg.rho):
            return False
    return True


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------


def brute_force(fc_or_dga, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Depth-first search over admissible generator values in canonical order.

    Each ``d g`` is checked as soon as all of its generators are assigned.
    """
    dga = _as_dga(fc_or_dga)
    free = admissible(dga, cfg)
    if len(free) > cfg.generator_cap:
        raise CapExceeded(f"{len(free)} admissible generators exceed the brute-force cap {cfg.generator_cap}")
    if not _pins_feasible(dga, cfg):
        return SearchResult(0, [] if cfg.mode == "list" else None, 0)
    slot = {g: k for k, g in enumerate(free)}
    forced = {slot[dga.index[g]]: v for g, v in cfg.pins.items() if v and dga.index[g] in slot}
    # each relation as a list of word bitmasks over free slots; words with a pinned-zero letter vanish
    checks: Dict[int, List[List[int]]] = {}
    for p in dga.differential():
        words = []
        for w in p.words:
            if all(g in slot for g in w):
                mask = 0
                for g in w:
                    mask |= 1 << slot[g]
                words.append(mask)
        if not words:
            continue
        last = max(m.bit_length() - 1 for m in words)
        checks.setdefault(last, []).append(words)
    k = len(free)
    nodes = 0
    found: List[int] = []
    stop = cfg.mode == "exists"

    def ok(level: int, values: int) -> bool:
        for words in checks.get(level, []):
            total = 0
            for m in words:
                if values & m == m:
                    total ^= 1
            if total:
                return False
        return True

    def dfs(level: int, values: int) -> bool:
        nonlocal nodes
        if level == k:
            found.append(values)
            return stop
        for bit in (0, 1):
            if level in forced and bit != forced[level]:
                continue
            nodes += 1
            v = values | (bit << level)
            if ok(level, v) and dfs(level + 1, v):
                return True
        return False

    if ok(-1, 0):
        dfs(0, 0)
    augs = None
    if cfg.mode == "list":
        if len(found) > cfg.solution_cap:
            raise CapExceeded(f"{len(found)} augmentations exceed the solution cap {cfg.solution_cap}")
        augs = []
        for values in found:
            full = [0] * len(dga.gens)
            for j, g in enumerate(free):
                full[g] = (values >> j) & 1
            augs.append(Augmentation(tuple(full), cfg.rho))
        augs.sort(key=lambda a: a.values)
    return SearchResult(len(found), augs, nodes)


def brute_force_tree_size(fc_or_dga, cfg: SearchConfig = SearchConfig()) -> int:
    """Node count of the unpruned assignment tree (2^(k+1) - 2)."""
    k = len(admissible(_as_dga(fc_or_dga), cfg))
    return (1 << (k + 1)) - 2


# ---------------------------------------------------------------------------
# staged search over chain homotopy diagrams
# ---------------------------------------------------------------------------


class _Plan:
    """Variable order, domains and face checks for the staged search."""

    def __init__(self, dga: CellularDGA, cfg: SearchConfig) -> None:
        self.dga = dga
        self.fc = fc = dga.fc
        self.cfg = cfg
        self._vcache: Dict[str, List[BitMatrix]] = {}
        self._ecache: Dict[Tuple, List[BitMatrix]] = {}
        self._fcache: Dict[Tuple, object] = {}
        self.free_pos: Dict[str, List[Tuple[int, int]]] = {}
        self.pinned_one: Dict[str, int] = {}
        for c in fc.cells:
            self.free_pos[c.id] = []
            self.pinned_one[c.id] = 0
        for i, g in enumerate(dga.gens):
            if not _degree_ok(dga.degrees[i], cfg.rho):
                continue
            pin = cfg.pins.get(g)
            lin = fc.order_of(g.cell)
            ij = (lin.index(g.p), lin.index(g.q))
            if pin is None:
                self.free_pos[g.cell].append(ij)
            elif pin:
                self.pinned_one[g.cell] |= 1 << (ij[0] * len(lin) + ij[1])
        self.face_vars: Dict[str, List[str]] = {}
        for face in fc.cells_of_dim(2):
            vs: List[str] = []
            for step in face.steps:
                for v in fc.step_endpoints(step):
                    if v not in vs:
                        vs.append(v)
            for v in (face.v0, face.v1):
                if v not in vs:
                    vs.append(v)
            for i in range(len(face.steps)):
                for st, _ in corner_marks(fc, face.id, i):
                    if st.vertex not in vs:
                        vs.append(st.vertex)
            es = []
            for step in face.steps:
                if step.edge not in es:
                    es.append(step.edge)
            self.face_vars[face.id] = vs + es
        self.order = self._order()
        pos = {v: i for i, v in enumerate(self.order)}
        self.completes: Dict[int, List[str]] = {}
        for face, vs in self.face_vars.items():
            self.completes.setdefault(max(pos[v] for v in vs), []).append(face)
        # variables still needed before each step
        last_use = {v: pos[v] for v in self.order}
        for face, vs in self.face_vars.items():
            t = max(pos[v] for v in vs)
            for v in vs:
                last_use[v] = max(last_use[v], t)
        for e in fc.cells_of_dim(1):
            for v in (e.source, e.target):
                last_use[v] = max(last_use[v], pos[e.id])
        self.live: List[Tuple[str, ...]] = []
        for t in range(len(self.order) + 1):
            self.live.append(tuple(v for v in self.order[:t] if last_use[v] >= t))

    def _order(self) -> List[str]:
        fc = self.fc
        done: List[str] = []
        seen = set()

        def add(v: str) -> None:
            if v in seen:
                return
            c = fc.cell(v)
            if c.dim == 1:
                add(c.source)
                add(c.target)
            seen.add(v)
            done.append(v)

        faces = [c.id for c in fc.cells_of_dim(2)]
        remaining = list(faces)
        # start next to pinned generators so contradictions surface early
        pinned = {g.cell for g in self.cfg.pins}
        for f in faces:
            if f in pinned or pinned & set(self.face_vars[f]):
                remaining.remove(f)
                remaining.insert(0, f)
                faces.remove(f)
                faces.insert(0, f)
                break
        while remaining:
            # prefer faces touching the assigned region that add the fewest new variables
            def score(f: str) -> Tuple[int, int, int]:
                vs = self.face_vars[f]
                old = sum(v in seen for v in vs)
                return (old - len(vs), old, -faces.index(f))

            touching = [f for f in remaining if any(v in seen for v in self.face_vars[f])]
            best = max(touching or remaining[:1], key=score)
            remaining.remove(best)
            for v in self.face_vars[best]:
                if fc.cell(v).dim == 0:
                    add(v)
            for v in self.face_vars[best]:
                add(v)
        for c in fc.cells:
            if c.dim < 2:
                add(c.id)
        return done

    # domains ---------------------------------------------------------------
    def vertex_domain(self, v: str) -> List[BitMatrix]:
        if v not in self._vcache:
            self._vcache[v] = list(self._vertex_domain(v))
        return self._vcache[v]

    def edge_domain(self, e: str, ds: Mapping[str, BitMatrix]) -> List[BitMatrix]:
        c = self.fc.cell(e)
        key = (e, ds[c.source].rows, ds[c.target].rows)
        if key not in self._ecache:
            self._ecache[key] = list(self._edge_domain(e, ds))
        return self._ecache[key]

    def face_solutions(self, face: str, ds: Mapping[str, BitMatrix], fs: Mapping[str, BitMatrix]):
        key = (face,) + tuple(ds[v].rows if v in ds else fs[v].rows for v in self.face_vars[face])
        if key not in self._fcache:
            self._fcache[key] = self._face_solutions(face, ds, fs)
        return self._fcache[key]

    def _vertex_domain(self, v: str) -> Iterator[BitMatrix]:
        n = len(self.fc.cell(v).sheets)
        pinned = self.pinned_one[v]
        base = [0] * n
        for i in range(n):
            for j in range(n):
                if (pinned >> (i * n + j)) & 1:
                    base[i] |= 1 << j
        free = self.free_pos[v]
        by_col: Dict[int, List[int]] = {}
        for i, j in free:
            by_col.setdefault(j, []).append(i)
        cols = [0] * n
        for i in range(n):
            for j in range(n):
                if (base[i] >> j) & 1:
                    cols[j] |= 1 << i

        def apply(col_vec: int, chosen: List[int]) -> int:
            out = 0
            k = 0
            while col_vec:
                if col_vec & 1:
                    out ^= chosen[k]
                col_vec >>= 1
                k += 1
            return out

        def rec(j: int, chosen: List[int]) -> Iterator[List[int]]:
            if j == n:
                yield list(chosen)
                return
            rows = by_col.get(j, [])
            for mask in range(1 << len(rows)):
                col = cols[j]
                for b, i in enumerate(rows):
                    if (mask >> b) & 1:
                        col |= 1 << i
                # column j of d^2 is d applied to column j; it only involves earlier columns
                if apply(col, chosen):
                    continue
                chosen.append(col)
                yield from rec(j + 1, chosen)
                chosen.pop()

        for columns in rec(0, []):
            rows = [0] * n
            for j, col in enumerate(columns):
                for i in range(n):
                    if (col >> i) & 1:
                        rows[i] |= 1 << j
            yield BitMatrix(n, n, tuple(rows))

    def _edge_domain(self, e: str, ds: Mapping[str, BitMatrix]) -> Iterator[BitMatrix]:
        """Chain maps ``I + B`` between the two end differentials."""
        dm, dp = edge_differentials(self.fc, e, ds)
        n = dm.nrows
        free = self.free_pos[e]
        base = BitMatrix.zeros(n)
        pinned = self.pinned_one[e]
        for i in range(n):
            for j in range(n):
                if (pinned >> (i * n + j)) & 1:
                    base = base.with_entry(i, j, 1)
        # B dm + dp B = dm + dp, unknowns are B's free entries
        const = base @ dm + dp @ base + dm + dp
        eqs, rhs = [], []
        for r in range(n):
            for c in range(n):
                mask = 0
                for k, (i, j) in enumerate(free):
                    # (B dm)[r, c] gets B[i, j] dm[j, c] when i == r; (dp B)[r, c] gets dp[r, i] B[i, j] when j == c
                    bit = 0
                    if i == r and dm[j, c]:
                        bit ^= 1
                    if j == c and dp[r, i]:
                        bit ^= 1
                    if bit:
                        mask |= 1 << k
                eqs.append(mask)
                rhs.append(const[r, c])
        sol = solve_affine(eqs, rhs, len(free))
        if sol is None:
            return
        part, kernel = sol
        ident = BitMatrix.identity(n)
        for x in span(kernel, part):
            m = base
            for k, (i, j) in enumerate(free):
                if (x >> k) & 1:
                    m = m.with_entry(i, j, 1)
            yield m + ident

    def _face_solutions(self, face: str, ds: Mapping[str, BitMatrix],
                        fs: Mapping[str, BitMatrix]) -> Optional[Tuple[BitMatrix, List[Tuple[int, int]], int, List[int]]]:
        """Affine space of homotopies: (base, free positions, particular, kernel) or None."""
        fc = self.fc
        d0 = corner_differential(fc, face, "v0", ds)
        d1 = corner_differential(fc, face, "v1", ds)
        target = path_composite(fc, face, "a", fs, ds) + path_composite(fc, face, "b", fs, ds)
        n = d0.nrows
        free = self.free_pos[face]
        base = BitMatrix.zeros(n)
        pinned = self.pinned_one[face]
        for i in range(n):
            for j in range(n):
                if (pinned >> (i * n + j)) & 1:
                    base = base.with_entry(i, j, 1)
        const = d1 @ base + base @ d0 + target
        eqs, rhs = [], []
        for r in range(n):
            for c in range(n):
                mask = 0
                for k, (i, j) in enumerate(free):
                    bit = 0
                    if j == c and d1[r, i]:
                        bit ^= 1
                    if i == r and d0[j, c]:
                        bit ^= 1
                    if bit:
                        mask |= 1 << k
                eqs.append(mask)
                rhs.append(const[r, c])
        sol = solve_affine(eqs, rhs, len(free))
        if sol is None:
            return None
        return base, free, sol[0], sol[1]


class _Counter:
    """Memoised count of completions from each step of the plan."""

    def __init__(self, plan: _Plan, stop: bool = False) -> None:
        self.plan = plan
        self.stop = stop
        self.nodes = 0
        self.memo: Dict[Tuple, int] = {}
        self.values: Dict[str, BitMatrix] = {}

    def domain(self, t: int) -> List[BitMatrix]:
        plan = self.plan
        v = plan.order[t]
        if plan.fc.cell(v).dim == 0:
            return plan.vertex_domain(v)
        return plan.edge_domain(v, self.values)

    def face_weight(self, t: int) -> int:
        w = 1
        for face in self.plan.completes.get(t, []):
            sol = self.plan.face_solutions(face, self.values, self.values)
            if sol is None:
                return 0
            w <<= len(sol[3])
        return w

    def count(self, t: int) -> int:
        plan, values = self.plan, self.values
        if t == len(plan.order):
            return 1
        key = (t,) + tuple(values[v].rows for v in plan.live[t])
        if key in self.memo:
            return self.memo[key]
        total = 0
        v = plan.order[t]
        for m in self.domain(t):
            self.nodes += 1
            values[v] = m
            w = self.face_weight(t)
            if w:
                total += w * self.count(t + 1)
            del values[v]
            if self.stop and total:
                break
        self.memo[key] = total
        return total


def staged_search(fc_or_dga, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Search over chain homotopy diagrams, memoised on the live frontier."""
    dga = _as_dga(fc_or_dga)
    if not _pins_feasible(dga, cfg):
        return SearchResult(0, [] if cfg.mode == "list" else None, 0)
    plan = _Plan(dga, cfg)
    stop = cfg.mode == "exists"
    counter = _Counter(plan, stop)
    total = counter.count(0)
    augs = None
    if cfg.mode == "list":
        if total > cfg.solution_cap:
            raise CapExceeded(f"{total} augmentations exceed the solution cap {cfg.solution_cap}")
        augs = sorted(_expand(plan, counter.memo), key=lambda a: a.values)
    return SearchResult(1 if (stop and total) else total, augs, counter.nodes)


def sample_augmentations(fc_or_dga, k: int, rho: int = 1, seed: int = 0) -> List[Augmentation]:
    """``k`` independent uniform samples from the augmentation set.

    One count pass fills the memo with subtree sizes; each sample then walks
    the variable order choosing values with probability proportional to the
    number of completions, and picks homotopies uniformly from their affine
    solution spaces.
    """
    dga = _as_dga(fc_or_dga)
    cfg = SearchConfig(rho=rho, mode="count")
    plan = _Plan(dga, cfg)
    counter = _Counter(plan)
    if not counter.count(0):
        raise NoAugmentations("the complex has no augmentations")
    rng = random.Random(seed)
    fc = plan.fc
    face_ids = [c.id for c in fc.cells_of_dim(2)]
    out = []
    for _ in range(k):
        values = counter.values
        values.clear()
        faces: Dict[str, Tuple] = {}
        for t, v in enumerate(plan.order):
            options, weights = [], []
            for m in counter.domain(t):
                values[v] = m
                w = counter.face_weight(t)
                if w:
                    w *= counter.count(t + 1)
                if w:
                    options.append(m)
                    weights.append(w)
                del values[v]
            pick = _weighted_choice(rng, weights)
            values[v] = options[pick]
            for face in plan.completes.get(t, []):
                faces[face] = plan.face_solutions(face, values, values)
        chd = CHD(rho=rho)
        for c in fc.cells:
            if c.dim == 0:
                chd.d[c.id] = values[c.id]
            elif c.dim == 1:
                chd.f[c.id] = values[c.id]
        for f in face_ids:
            base, free, part, kernel = faces[f]
            x = part
            for vec in kernel:
                if rng.getrandbits(1):
                    x ^= vec
            m = base
            for j, (r, c) in enumerate(free):
                if (x >> j) & 1:
                    m = m.with_entry(r, c, 1)
            chd.K[f] = m
        out.append(chd_to_aug(dga, chd))
        values.clear()
    return out


def _weighted_choice(rng: random.Random, weights: Sequence[int]) -> int:
    """Index drawn with probability proportional to exact integer weights."""
    r = rng.randrange(sum(weights))
    for i, w in enumerate(weights):
        if r < w:
            return i
        r -= w
    raise AssertionError("unreachable")


def _expand(plan: _Plan, memo: Mapping[Tuple, int]) -> Iterator[Augmentation]:
    """Enumerate every augmentation, skipping branches the count marked empty."""
    order = plan.order
    fc = plan.fc
    dga = plan.dga
    values: Dict[str, BitMatrix] = {}
    faces: Dict[str, Tuple] = {}

    def rec(t: int) -> Iterator[None]:
        if t == len(order):
            yield None
            return
        key = (t,) + tuple(values[v].rows for v in plan.live[t])
        if memo.get(key, 1) == 0:
            return
        v = order[t]
        dom = plan.vertex_domain(v) if fc.cell(v).dim == 0 else plan.edge_domain(v, values)
        for m in dom:
            values[v] = m
            ok = True
            done = []
            for face in plan.completes.get(t, []):
                sol = plan.face_solutions(face, values, values)
                if sol is None:
                    ok = False
                    break
                faces[face] = sol
                done.append(face)
            if ok:
                yield from rec(t + 1)
            for face in done:
                del faces[face]
            del values[v]

    face_ids = [c.id for c in fc.cells_of_dim(2)]
    for _ in rec(0):
        spaces = [faces[f] for f in face_ids]
        for combo in _product_spaces(spaces):
            chd = CHD(rho=plan.cfg.rho)
            for c in fc.cells:
                if c.dim == 0:
                    chd.d[c.id] = values[c.id]
                elif c.dim == 1:
                    chd.f[c.id] = values[c.id]
            for f, k in zip(face_ids, combo):
                chd.K[f] = k
            yield chd_to_aug(dga, chd)


def _product_spaces(spaces: Sequence[Tuple]) -> Iterator[List[BitMatrix]]:
    if not spaces:
        yield []
        return
    base, free, part, kernel = spaces[0]
    for x in span(kernel, part):
        m = base
        for k, (i, j) in enumerate(free):
            if (x >> k) & 1:
                m = m.with_entry(i, j, 1)
        for rest in _product_spaces(spaces[1:]):
            yield [m] + rest


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def search(fc_or_dga, cfg: SearchConfig = SearchConfig(), brute: bool = False) -> SearchResult:
    return (brute_force if brute else staged_search)(fc_or_dga, cfg)


def exists_augmentation(fc_or_dga, rho: int = 1) -> bool:
    return staged_search(fc_or_dga, SearchConfig(rho=rho, mode="exists")).exists


def count_augmentations(fc_or_dga, rho: int = 1) -> int:
    return staged_search(fc_or_dga, SearchConfig(rho=rho, mode="count")).count


def list_augmentations(fc_or_dga, rho: int = 1, cap: int = 10000) -> List[Augmentation]:
    return staged_search(fc_or_dga, SearchConfig(rho=rho, mode="list", solution_cap=cap)).augmentations


def value_patterns(fc_or_dga, gens: Sequence[GenId], rho: int = 1) -> List[Tuple[int, ...]]:
    """The value tuples that augmentations realise on ``gens``, via pinned existence queries."""
    dga = _as_dga(fc_or_dga)
    out = []
    for bits in range(1 << len(gens)):
        pattern = tuple((bits >> i) & 1 for i in range(len(gens)))
        pins = dict(zip(gens, pattern))
        if staged_search(dga, SearchConfig(rho=rho, mode="exists", pins=pins)).exists:
            out.append(pattern)
    return out


def constraint_probe(fc_or_dga, gen: GenId, rho: int = 1) -> Optional[int]:
    """The value every augmentation gives ``gen``, or None if both values occur.

    Raises ``NoAugmentations`` when the complex has none.
    """
    patterns = value_patterns(fc_or_dga, [gen], rho)
    if not patterns:
        raise NoAugmentations("the complex has no augmentations")
    if len(patterns) == 2:
        return None
    return patterns[0][0]


def verify(dga: CellularDGA, aug: Augmentation) -> bool:
    """Post-hoc check of ``eps(d g) = 0`` and the grading support."""
    if any(v and not _degree_ok(dga.degrees[i], aug.rho) for i, v in enumerate(aug.values)):
        return False
    return all(evaluate(p, aug.values) == 0 for p in dga.differential())
