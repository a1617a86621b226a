"""Combinatorial directed spaces and their trace monoids.

Two models are supported: directed graphs (d-paths are edge paths) and 2D
grids with forbidden unit cells (d-paths are monotone step words over R/U).
Forbidden cells are open: they never block a monotone vertex path, they only
forbid the elementary RU/UR swap that sweeps across them.  Dihomotopy classes
are the components of the path set under allowed swaps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import (
    DitraceError,
    ForeignSpaceError,
    NonInjectiveMapError,
    NotADMapError,
    SwapViolationError,
)
from .monoid import (
    ONE,
    WORD_BOUND_DEFAULT,
    WORD_TAG,
    ZERO,
    AbsMonoid,
    MonElement,
    MonoidMorphism,
)
from .modules import Bimodule, LazyCarrier, ModuleMorphism
from .pointed import STAR

RIGHT = "R"
UP = "U"


@dataclass(frozen=True)
class DPath:
    """A directed path: a start vertex plus a step word.

    Grid steps are 'R'/'U' characters; graph steps are edge labels.  The empty
    step word is the constant path at `start`.
    """

    start: object
    steps: tuple = ()

    @staticmethod
    def grid(start, steps: str | Iterable = "") -> "DPath":
        return DPath(tuple(start), tuple(steps))

    def step_word(self) -> str:
        return "".join(str(s) for s in self.steps)

    def __repr__(self):
        return f"<{self.start}:{self.step_word() or 'const'}>"


@dataclass(frozen=True)
class GridSpace:
    width: int
    height: int
    forbidden: frozenset = frozenset()  # unit cells (i, j), 0 <= i < W, 0 <= j < H

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise DitraceError("grid dimensions must be positive")
        for (i, j) in self.forbidden:
            if not (0 <= i < self.width and 0 <= j < self.height):
                raise DitraceError(f"forbidden cell {(i, j)} out of range")

    @staticmethod
    def from_rects(width: int, height: int, rects: Iterable = ()) -> "GridSpace":
        """Rectangles (x0, y0, x1, y1) cover the cells i in [x0,x1), j in [y0,y1)."""
        cells = set()
        for (x0, y0, x1, y1) in rects:
            for i in range(x0, x1):
                for j in range(y0, y1):
                    cells.add((i, j))
        return GridSpace(width, height, frozenset(cells))

    def vertices(self) -> list:
        return [(x, y) for y in range(self.height + 1) for x in range(self.width + 1)]

    def is_vertex(self, v) -> bool:
        return (isinstance(v, tuple) and len(v) == 2
                and 0 <= v[0] <= self.width and 0 <= v[1] <= self.height)

    def path_end(self, p: DPath):
        x, y = p.start
        return (x + sum(1 for s in p.steps if s == RIGHT),
                y + sum(1 for s in p.steps if s == UP))

    def valid_path(self, p: DPath) -> bool:
        if not self.is_vertex(p.start):
            return False
        x, y = p.start
        for s in p.steps:
            if s == RIGHT:
                x += 1
            elif s == UP:
                y += 1
            else:
                return False
        return x <= self.width and y <= self.height

    def paths_between(self, a, b) -> list:
        """All monotone paths a -> b in lexicographic step order (R < U)."""
        if not (self.is_vertex(tuple(a)) and self.is_vertex(tuple(b))):
            raise ForeignSpaceError(f"{a} or {b} is not a grid vertex")
        a, b = tuple(a), tuple(b)
        dx, dy = b[0] - a[0], b[1] - a[1]
        if dx < 0 or dy < 0:
            return []
        n = dx + dy
        out = []
        for rpos in itertools.combinations(range(n), dx):
            steps = [UP] * n
            for i in rpos:
                steps[i] = RIGHT
            out.append(DPath(a, tuple(steps)))
        return out

    def all_paths(self, bound: int) -> list:
        """Every path of length <= bound from every start, deterministic order."""
        out = []
        for v in self.vertices():
            stack = [(v, ())]
            while stack:
                (x, y), steps = stack.pop()
                out.append(DPath(v, steps))
                if len(steps) < bound:
                    if y + 1 <= self.height:
                        stack.append(((x, y + 1), steps + (UP,)))
                    if x + 1 <= self.width:
                        stack.append(((x + 1, y), steps + (RIGHT,)))
        out.sort(key=lambda p: (p.start, len(p.steps), p.steps))
        return out

    def swap_cell(self, p: DPath, i: int):
        """The unit cell swept when steps i, i+1 of p are transposed."""
        x, y = p.start
        for s in p.steps[:i]:
            if s == RIGHT:
                x += 1
            else:
                y += 1
        return (x, y)

    def allowed_swaps(self, p: DPath) -> list:
        """Positions where an RU/UR transposition sweeps a non-forbidden cell."""
        out = []
        for i in range(len(p.steps) - 1):
            if p.steps[i] != p.steps[i + 1] and self.swap_cell(p, i) not in self.forbidden:
                out.append(i)
        return out

    def swapped(self, p: DPath, i: int) -> DPath:
        s = list(p.steps)
        s[i], s[i + 1] = s[i + 1], s[i]
        return DPath(p.start, tuple(s))


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple
    edges: tuple  # (src, dst, label), labels unique

    def __post_init__(self):
        labels = [e[2] for e in self.edges]
        if len(set(labels)) != len(labels):
            raise DitraceError("edge labels must be unique")
        for (s, d, _) in self.edges:
            if s not in self.vertices or d not in self.vertices:
                raise DitraceError(f"edge endpoints {s}->{d} missing from vertex set")

    @cached_property
    def edge_by_label(self) -> dict:
        return {lab: (s, d) for (s, d, lab) in self.edges}

    def is_vertex(self, v) -> bool:
        return v in self.vertices

    def path_end(self, p: DPath):
        v = p.start
        for lab in p.steps:
            v = self.edge_by_label[lab][1]
        return v

    def valid_path(self, p: DPath) -> bool:
        if p.start not in self.vertices:
            return False
        v = p.start
        for lab in p.steps:
            edge = self.edge_by_label.get(lab)
            if edge is None or edge[0] != v:
                return False
            v = edge[1]
        return True

    def paths_between(self, a, b, bound: int = WORD_BOUND_DEFAULT) -> list:
        if not (self.is_vertex(a) and self.is_vertex(b)):
            raise ForeignSpaceError(f"{a} or {b} is not a graph vertex")
        out = []
        for p in self.all_paths(bound):
            if p.start == a and self.path_end(p) == b:
                out.append(p)
        return out

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for (s, d, lab) in self.edges:
            out[s].append((lab, d))
        for v in out:
            out[v].sort()
        return out

    def all_paths(self, bound: int) -> list:
        out = []
        for v in self.vertices:
            stack = [(v, ())]
            while stack:
                u, steps = stack.pop()
                out.append(DPath(v, steps))
                if len(steps) < bound:
                    for lab, d in reversed(self.out_edges[u]):
                        stack.append((d, steps + (lab,)))
        out.sort(key=lambda p: (str(p.start), len(p.steps), tuple(map(str, p.steps))))
        return out


Space = GridSpace | DirectedGraph


# ---------------------------------------------------------------------------
# the trace monoid


def path_element(p: DPath) -> MonElement:
    """Canonical handle of a path: its start vertex followed by its steps."""
    return MonElement(WORD_TAG, (p.start,) + tuple(p.steps))


def element_path(x: MonElement) -> DPath:
    return DPath(x.word[0], x.word[1:])


@dataclass(frozen=True)
class TraceMonoid(AbsMonoid):
    """Traces of a space: Zero, an adjoined One, and every d-path.

    Constant paths are ordinary elements (idempotents composable only at their
    vertex); the global unit is the adjoined One, matching the definition.
    """

    space: Space

    def describe(self):
        return f"trace monoid of {type(self.space).__name__}"

    def element_of(self, p: DPath) -> MonElement:
        x = path_element(p)
        self.require(x)
        return x

    def _contains_word(self, x):
        return self.space.valid_path(DPath(x.word[0], x.word[1:]))

    def _mul_words(self, a, b):
        pa, pb = element_path(a), element_path(b)
        if self.space.path_end(pa) != pb.start:
            return ZERO
        return path_element(DPath(pa.start, pa.steps + pb.steps))

    def _bounded_elements(self, bound):
        return [ZERO, ONE] + [path_element(p) for p in self.space.all_paths(bound)]

    def factor_occurrence(self, n: MonElement, x: MonElement) -> bool:
        """x = left * n * right: n's path appears as a contiguous sub-path."""
        if n.is_one:
            return True
        sub, whole = element_path(n), element_path(x)
        k = len(sub.steps)
        for i in range(len(whole.steps) - k + 1):
            at = self.space.path_end(DPath(whole.start, whole.steps[:i]))
            if at == sub.start and whole.steps[i:i + k] == sub.steps:
                return True
        return False


def trace_monoid(space: Space) -> TraceMonoid:
    return TraceMonoid(space)


def concat_action(m: TraceMonoid, t: MonElement, p: MonElement) -> MonElement:
    """Left concatenation action of a trace on a path handle; Zero marks *."""
    m.require(t)
    m.require(p)
    if t.is_zero or p.is_zero:
        return ZERO
    if t.is_one:
        return p
    if p.is_one:
        raise ForeignSpaceError("One is not a path; the path carrier has no unit")
    return m.mul(t, p)


def concat_action_right(m: TraceMonoid, p: MonElement, t: MonElement) -> MonElement:
    m.require(t)
    m.require(p)
    if t.is_zero or p.is_zero:
        return ZERO
    if t.is_one:
        return p
    if p.is_one:
        raise ForeignSpaceError("One is not a path; the path carrier has no unit")
    return m.mul(p, t)


def trace_bimodule(space: Space, bound: int = WORD_BOUND_DEFAULT) -> Bimodule:
    """Paths plus a basepoint as a bimodule over the trace monoid.

    Zero doubles as the basepoint of the carrier; the sample bound controls
    how much of the infinite carrier the checkers see.
    """
    m = trace_monoid(space)

    def sample(b):
        return [ZERO] + [path_element(p) for p in space.all_paths(min(b, bound))]

    def contains(x):
        return x.is_zero or (isinstance(x, MonElement) and x.tag == WORD_TAG
                             and m.contains(x))

    carrier = LazyCarrier(ZERO, sample, contains)
    return Bimodule(m, carrier,
                    lambda t, p: concat_action(m, t, p),
                    lambda p, t: concat_action_right(m, p, t),
                    carrier_kind="set",
                    label=f"path bimodule of {type(space).__name__}")


# ---------------------------------------------------------------------------
# dihomotopy classes


@dataclass(frozen=True)
class DihomotopyClass:
    """One component of the paths a -> b under allowed square swaps."""

    start: object
    end: object
    rep: DPath          # lexicographically least member
    index: int          # position within the (start, end) partition
    members: tuple

    def __repr__(self):
        return f"[{self.rep!r} #{self.index}]"


def enumerate_dipaths(space: Space, a, b, bound: int = WORD_BOUND_DEFAULT) -> list:
    """All d-paths from a to b (graphs: up to the length bound)."""
    if isinstance(space, GridSpace):
        return space.paths_between(a, b)
    return space.paths_between(a, b, bound)


def dihomotopy_classes(space: Space, a, b, bound: int = WORD_BOUND_DEFAULT) -> list:
    """Partition of the a -> b paths into swap components, reps sorted."""
    paths = enumerate_dipaths(space, a, b, bound)
    if isinstance(space, GridSpace):
        groups = _swap_closure_unionfind(space, paths)
    else:
        groups = [[p] for p in paths]  # no 2-cells: every path is its own class
    return _classes_from_groups(a, b, groups)


def _classes_from_groups(a, b, groups) -> list:
    key = lambda p: p.steps
    packed = []
    for g in groups:
        members = tuple(sorted(g, key=key))
        packed.append((members[0], members))
    packed.sort(key=lambda rm: key(rm[0]))
    return [DihomotopyClass(tuple(a) if isinstance(a, tuple) else a,
                            tuple(b) if isinstance(b, tuple) else b,
                            rep, i, members)
            for i, (rep, members) in enumerate(packed)]


def _swap_closure_unionfind(space: GridSpace, paths) -> list:
    from .unionfind import UnionFind
    uf = UnionFind()
    for p in paths:
        uf.find(p)
        for i in space.allowed_swaps(p):
            uf.union(p, space.swapped(p, i))
    return list(uf.classes().values())


def class_of_path(space: Space, p: DPath, bound: int = WORD_BOUND_DEFAULT) -> DihomotopyClass:
    a = p.start
    b = space.path_end(p)
    for c in dihomotopy_classes(space, a, b, bound):
        if p in c.members:
            return c
    raise ForeignSpaceError(f"{p!r} is not a path of the space")


# ---------------------------------------------------------------------------
# the first dihomotopy module


class Pi1Module(Bimodule):
    """Dihomotopy classes across all endpoint pairs, as a pointed-set bimodule.

    Endpoint pairs are materialized lazily and cached; the basepoint is the
    shared star.  Acting by a composable trace sends a class to the class of
    the concatenated representative.
    """

    def __init__(self, space: Space, bound: int = WORD_BOUND_DEFAULT):
        self.space = space
        self.bound = bound
        self._cache = {}
        monoid = trace_monoid(space)

        carrier = LazyCarrier(STAR, self._sample, self._contains)
        super().__init__(monoid, carrier, self._left, self._right,
                         carrier_kind="set",
                         label=f"pi1 module of {type(space).__name__}")

    # carrier ---------------------------------------------------------
    def classes(self, a, b) -> list:
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = dihomotopy_classes(self.space, a, b, self.bound)
        return self._cache[key]

    def class_of(self, p: DPath) -> DihomotopyClass:
        for c in self.classes(p.start, self.space.path_end(p)):
            if p in c.members:
                return c
        raise ForeignSpaceError(f"{p!r} is not a path of the space")

    def _sample(self, bound):
        out = [STAR]
        seen = set()
        for p in self.space.all_paths(min(bound, self.bound)):
            key = (p.start, self.space.path_end(p))
            if key in seen:
                continue
            seen.add(key)
            out.extend(self.classes(*key))
        return out

    def _contains(self, x):
        return x is STAR or isinstance(x, DihomotopyClass)

    # actions ---------------------------------------------------------
    def _left(self, t: MonElement, c):
        if c is STAR or t.is_zero:
            return STAR
        if t.is_one:
            return c
        p = element_path(t)
        if self.space.path_end(p) != c.start:
            return STAR
        return self.class_of(DPath(p.start, p.steps + c.rep.steps))

    def _right(self, c, t: MonElement):
        if c is STAR or t.is_zero:
            return STAR
        if t.is_one:
            return c
        p = element_path(t)
        if p.start != c.end:
            return STAR
        return self.class_of(DPath(c.start, c.rep.steps + p.steps))


def pi1_module(space: Space, bound: int = WORD_BOUND_DEFAULT) -> Pi1Module:
    return Pi1Module(space, bound)


# ---------------------------------------------------------------------------
# maps of spaces and the induced functors


@dataclass(frozen=True)
class GridEmbedding:
    """Translation embedding of one grid into another."""

    source: GridSpace
    target: GridSpace
    dx: int
    dy: int

    def __post_init__(self):
        if self.dx < 0 or self.dy < 0 \
                or self.source.width + self.dx > self.target.width \
                or self.source.height + self.dy > self.target.height:
            raise NotADMapError("translated grid does not fit inside the target")

    def vertex(self, v):
        return (v[0] + self.dx, v[1] + self.dy)

    def path(self, p: DPath) -> DPath:
        return DPath(self.vertex(p.start), p.steps)

    def preserves_free_cells(self) -> bool:
        for i in range(self.source.width):
            for j in range(self.source.height):
                if (i, j) not in self.source.forbidden \
                        and (i + self.dx, j + self.dy) in self.target.forbidden:
                    return False
        return True


@dataclass(frozen=True)
class GraphMap:
    source: DirectedGraph
    target: DirectedGraph
    vertex_map: tuple   # pairs (source vertex, target vertex)
    edge_map: tuple     # pairs (source label, target label)

    def __post_init__(self):
        vm = dict(self.vertex_map)
        em = dict(self.edge_map)
        if set(vm) != set(self.source.vertices):
            raise NotADMapError("vertex map must cover every source vertex")
        if len(set(vm.values())) != len(vm):
            raise NonInjectiveMapError("vertex map is not injective")
        if set(em) != set(self.source.edge_by_label):
            raise NotADMapError("edge map must cover every source edge")
        if len(set(em.values())) != len(em):
            raise NonInjectiveMapError("edge map is not injective")
        for lab, (s, d) in self.source.edge_by_label.items():
            image = self.target.edge_by_label.get(em[lab])
            if image is None or image != (vm[s], vm[d]):
                raise NotADMapError(
                    f"edge {lab} does not map to a target edge between image endpoints")

    def vertex(self, v):
        return dict(self.vertex_map)[v]

    def path(self, p: DPath) -> DPath:
        em = dict(self.edge_map)
        return DPath(self.vertex(p.start), tuple(em[lab] for lab in p.steps))


SpaceMap = GridEmbedding | GraphMap


def compose_space_maps(g: SpaceMap, f: SpaceMap) -> SpaceMap:
    if f.target != g.source:
        raise NotADMapError("maps are not composable")
    if isinstance(f, GridEmbedding) and isinstance(g, GridEmbedding):
        return GridEmbedding(f.source, g.target, f.dx + g.dx, f.dy + g.dy)
    if isinstance(f, GraphMap) and isinstance(g, GraphMap):
        gv, ge = dict(g.vertex_map), dict(g.edge_map)
        return GraphMap(f.source, g.target,
                        tuple((v, gv[w]) for v, w in f.vertex_map),
                        tuple((a, ge[b]) for a, b in f.edge_map))
    raise NotADMapError("cannot compose a grid map with a graph map")


def identity_space_map(space: Space) -> SpaceMap:
    if isinstance(space, GridSpace):
        return GridEmbedding(space, space, 0, 0)
    return GraphMap(space, space,
                    tuple((v, v) for v in space.vertices),
                    tuple((lab, lab) for lab in sorted(space.edge_by_label, key=str)))


def trace_monoid_map(f: SpaceMap) -> MonoidMorphism:
    """The induced morphism of trace monoids: a path goes to its image path."""
    src = trace_monoid(f.source)
    tgt = trace_monoid(f.target)

    def on_word(x: MonElement) -> MonElement:
        return tgt.element_of(f.path(element_path(x)))

    return MonoidMorphism(src, tgt, word_fn=on_word, label="trace map")


def pi1_map(f: SpaceMap, bound: int = WORD_BOUND_DEFAULT) -> ModuleMorphism:
    """The induced map of first dihomotopy modules.

    For grids the embedding must send every non-forbidden source cell to a
    non-forbidden target cell, otherwise an allowed swap would map onto a
    forbidden square and classes would not be respected.
    """
    if isinstance(f, GridEmbedding) and not f.preserves_free_cells():
        raise SwapViolationError(
            "embedding sends an allowed swap cell onto a forbidden cell")
    src = pi1_module(f.source, bound)
    tgt = pi1_module(f.target, bound)

    def on_class(c):
        if c is STAR:
            return STAR
        return tgt.class_of(f.path(c.rep))

    return ModuleMorphism(src, tgt, on_class, trace_monoid_map(f), label="pi1 map")
