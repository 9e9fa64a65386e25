"""Balanced bipartite digraphs, degree queries and degree-sum conditions.

A digraph of half-order ``a`` has partite sets ``V1 = {x1..xa}`` and
``V2 = {y1..ya}``.  Arcs are stored as two families of row bitmasks:
``out12[i]`` holds bit ``j`` when ``x(i+1) -> y(j+1)`` and ``out21[j]``
holds bit ``i`` when ``y(j+1) -> x(i+1)``.  Same-side arcs, loops and
parallel arcs cannot be expressed.

Internally every vertex also has an integer id: ``x(i+1)`` is ``i`` and
``y(j+1)`` is ``a + j``.  Ids order vertices exactly like ``Vertex``
tuples do, which is what the witness tie-breaking relies on.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Union

__all__ = [
    "Side",
    "Vertex",
    "x",
    "y",
    "BipartiteDigraph",
    "DigraphError",
    "NoQualifyingPairError",
    "DegreeProfile",
    "ConditionWitness",
    "AdjacencyKind",
    "AdjacencyClass",
    "build",
    "from_masks",
    "degree_profile",
    "condition_witness",
    "min_nonadjacent_sum",
    "satisfies_condition",
    "is_strong",
    "adjacency_class",
    "is_semicomplete",
    "common_neighbour_witness",
    "min_common_neighbour_sum",
    "swap_sides",
    "converse",
]


class DigraphError(ValueError):
    """Invalid vertex, arc or half-order."""


class NoQualifyingPairError(ValueError):
    """Raised when a degree-sum minimum ranges over an empty set of pairs."""


class Side(enum.IntEnum):
    ONE = 1
    TWO = 2

    @property
    def other(self) -> "Side":
        return Side.TWO if self is Side.ONE else Side.ONE


_NAME_RE = re.compile(r"^([xy])([1-9][0-9]*)$")


class Vertex(NamedTuple):
    """A vertex addressed by partite side and 0-based index.

    ``str(Vertex(Side.ONE, 0)) == "x1"``; external labels are 1-based.
    """

    side: Side
    index: int

    def __str__(self) -> str:
        return f"{'x' if self.side is Side.ONE else 'y'}{self.index + 1}"

    __repr__ = __str__

    @classmethod
    def parse(cls, name: str) -> "Vertex":
        m = _NAME_RE.match(name.strip())
        if m is None:
            raise DigraphError(f"bad vertex name {name!r}")
        side = Side.ONE if m.group(1) == "x" else Side.TWO
        return cls(side, int(m.group(2)) - 1)


def x(i: int) -> Vertex:
    """``x(1)`` is the first vertex of V1 (1-based, as in the notation)."""
    return Vertex(Side.ONE, i - 1)


def y(j: int) -> Vertex:
    return Vertex(Side.TWO, j - 1)


VertexLike = Union[Vertex, str]


def _as_vertex(v: VertexLike) -> Vertex:
    if isinstance(v, Vertex):
        return v
    if isinstance(v, str):
        return Vertex.parse(v)
    if isinstance(v, tuple) and len(v) == 2:
        return Vertex(Side(v[0]), int(v[1]))
    raise DigraphError(f"cannot interpret {v!r} as a vertex")


def _popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class BipartiteDigraph:
    a: int
    out12: tuple[int, ...]
    out21: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.a < 1:
            raise DigraphError("half-order must be at least 1")
        if len(self.out12) != self.a or len(self.out21) != self.a:
            raise DigraphError("row count does not match half-order")
        full = (1 << self.a) - 1
        for row in self.out12 + self.out21:
            if row & ~full:
                raise DigraphError("arc target index out of range")

    # -- vertex addressing -------------------------------------------------

    @property
    def order(self) -> int:
        return 2 * self.a

    def vid(self, v: VertexLike) -> int:
        v = _as_vertex(v)
        if not 0 <= v.index < self.a:
            raise DigraphError(f"vertex {v} out of range for a={self.a}")
        return v.index if v.side is Side.ONE else self.a + v.index

    def vertex(self, vid: int) -> Vertex:
        if vid < self.a:
            return Vertex(Side.ONE, vid)
        return Vertex(Side.TWO, vid - self.a)

    def vertices(self) -> list[Vertex]:
        return [self.vertex(v) for v in range(self.order)]

    # -- adjacency ---------------------------------------------------------

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Out-neighbourhoods as bitmasks over vertex ids."""
        a = self.a
        return tuple(r << a for r in self.out12) + self.out21

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        a = self.a
        inx = [0] * a
        iny = [0] * a
        for j, row in enumerate(self.out21):
            for i in range(a):
                if row >> i & 1:
                    inx[i] |= 1 << (a + j)
        for i, row in enumerate(self.out12):
            for j in range(a):
                if row >> j & 1:
                    iny[j] |= 1 << i
        return tuple(inx) + tuple(iny)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(
            _popcount(o) + _popcount(i) for o, i in zip(self.out_masks, self.in_masks)
        )

    def has_arc_id(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def has_arc(self, u: VertexLike, v: VertexLike) -> bool:
        return self.has_arc_id(self.vid(u), self.vid(v))

    def adjacent_id(self, u: int, v: int) -> bool:
        return bool((self.out_masks[u] >> v | self.out_masks[v] >> u) & 1)

    def arc_ids(self) -> Iterator[tuple[int, int]]:
        """All arcs as ``(tail, head)`` id pairs in lexicographic order."""
        for u, m in enumerate(self.out_masks):
            v = 0
            while m:
                if m & 1:
                    yield u, v
                m >>= 1
                v += 1

    def arcs(self) -> list[tuple[Vertex, Vertex]]:
        return [(self.vertex(u), self.vertex(v)) for u, v in self.arc_ids()]

    @cached_property
    def arc_count(self) -> int:
        return sum(_popcount(r) for r in self.out12 + self.out21)

    def with_arcs(
        self,
        add: Iterable[tuple[VertexLike, VertexLike]] = (),
        remove: Iterable[tuple[VertexLike, VertexLike]] = (),
    ) -> "BipartiteDigraph":
        """Return a copy with arcs added and/or removed."""
        out12 = list(self.out12)
        out21 = list(self.out21)
        for arcs, on in ((add, True), (remove, False)):
            for u, v in arcs:
                u, v = _check_arc(self.a, u, v)
                row, bit = (out12, u.index) if u.side is Side.ONE else (out21, u.index)
                if on:
                    row[bit] |= 1 << v.index
                else:
                    row[bit] &= ~(1 << v.index)
        return BipartiteDigraph(self.a, tuple(out12), tuple(out21))

    def __str__(self) -> str:
        body = ", ".join(f"{u}->{v}" for u, v in self.arcs())
        return f"BipartiteDigraph(a={self.a}, [{body}])"


def _check_arc(a: int, u: VertexLike, v: VertexLike) -> tuple[Vertex, Vertex]:
    u, v = _as_vertex(u), _as_vertex(v)
    if u.side == v.side:
        raise DigraphError(f"arc {u}->{v} joins two vertices of the same side")
    for w in (u, v):
        if not 0 <= w.index < a:
            raise DigraphError(f"vertex {w} out of range for a={a}")
    return u, v


def build(a: int, arcs: Iterable[tuple[VertexLike, VertexLike]]) -> BipartiteDigraph:
    """Build a digraph of half-order ``a`` from ``(tail, head)`` pairs.

    Vertices may be ``Vertex`` values or names such as ``"x1"``.  Duplicate
    arcs collapse.
    """
    if a < 1:
        raise DigraphError("half-order must be at least 1")
    out12 = [0] * a
    out21 = [0] * a
    for u, v in arcs:
        u, v = _check_arc(a, u, v)
        if u.side is Side.ONE:
            out12[u.index] |= 1 << v.index
        else:
            out21[u.index] |= 1 << v.index
    return BipartiteDigraph(a, tuple(out12), tuple(out21))


def from_masks(a: int, out12: Iterable[int], out21: Iterable[int]) -> BipartiteDigraph:
    return BipartiteDigraph(a, tuple(out12), tuple(out21))


def swap_sides(D: BipartiteDigraph) -> BipartiteDigraph:
    """Relabel so that V1 and V2 trade places (``x_i`` <-> ``y_i``)."""
    return BipartiteDigraph(D.a, D.out21, D.out12)


def converse(D: BipartiteDigraph) -> BipartiteDigraph:
    """Reverse every arc."""
    a = D.a
    out12 = [0] * a
    out21 = [0] * a
    for j, row in enumerate(D.out21):
        for i in range(a):
            if row >> i & 1:
                out12[i] |= 1 << j
    for i, row in enumerate(D.out12):
        for j in range(a):
            if row >> j & 1:
                out21[j] |= 1 << i
    return BipartiteDigraph(a, tuple(out12), tuple(out21))


# -- degrees -----------------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    a: int
    out_degree: tuple[int, ...]
    in_degree: tuple[int, ...]
    total_degree: tuple[int, ...]

    def of(self, D: BipartiteDigraph, v: VertexLike) -> tuple[int, int, int]:
        k = D.vid(v)
        return self.out_degree[k], self.in_degree[k], self.total_degree[k]

    def rows(self, D: BipartiteDigraph) -> list[tuple[Vertex, int, int, int]]:
        return [
            (D.vertex(k), self.out_degree[k], self.in_degree[k], self.total_degree[k])
            for k in range(D.order)
        ]


def degree_profile(D: BipartiteDigraph) -> DegreeProfile:
    outs = tuple(_popcount(m) for m in D.out_masks)
    ins = tuple(_popcount(m) for m in D.in_masks)
    return DegreeProfile(D.a, outs, ins, D.degrees)


# -- degree-sum conditions -----------------------------------------------------


@dataclass(frozen=True)
class ConditionWitness:
    """Minimum degree sum over a family of vertex pairs, with a witness.

    ``satisfies(k)`` answers whether ``min_sum >= 3a + k``.
    """

    a: int
    min_sum: int
    pair: tuple[Vertex, Vertex]

    def satisfies(self, k: int) -> bool:
        return self.min_sum >= 3 * self.a + k

    @property
    def level(self) -> int:
        """Largest ``k`` with ``min_sum >= 3a + k``."""
        return self.min_sum - 3 * self.a

    @property
    def k_threshold_satisfied(self) -> dict[int, bool]:
        return {k: self.satisfies(k) for k in range(-3, 2)}


def _min_pair(D: BipartiteDigraph, qualifies) -> Optional[tuple[int, int, int]]:
    deg = D.degrees
    best = None
    n = D.order
    for u in range(n):
        du = deg[u]
        for v in range(u + 1, n):
            s = du + deg[v]
            if (best is None or s < best[0]) and qualifies(u, v):
                best = (s, u, v)
    return best


def condition_witness(D: BipartiteDigraph) -> ConditionWitness:
    """Minimum of ``d(u) + d(v)`` over non-adjacent pairs.

    Same-side pairs are always non-adjacent and are included.  The witness
    is the lexicographically least pair attaining the minimum.
    """
    best = _min_pair(D, lambda u, v: not D.adjacent_id(u, v))
    if best is None:
        raise NoQualifyingPairError("digraph has no non-adjacent pair")
    s, u, v = best
    return ConditionWitness(D.a, s, (D.vertex(u), D.vertex(v)))


def min_nonadjacent_sum(D: BipartiteDigraph) -> Optional[int]:
    """Fast minimum used by the sweeps; ``None`` when every pair is adjacent."""
    deg = D.degrees
    a = D.a
    best = None
    if a >= 2:
        xs = sorted(deg[:a])
        ys = sorted(deg[a:])
        best = min(xs[0] + xs[1], ys[0] + ys[1])
    om = D.out_masks
    for i in range(a):
        row = om[i] >> a
        di = deg[i]
        for j in range(a):
            if not (row >> j & 1) and not (om[a + j] >> i & 1):
                s = di + deg[a + j]
                if best is None or s < best:
                    best = s
    return best


def satisfies_condition(D: BipartiteDigraph, k: int) -> bool:
    """Condition M_k; vacuously true when no non-adjacent pair exists."""
    m = min_nonadjacent_sum(D)
    return m is None or m >= 3 * D.a + k


def common_neighbour_witness(D: BipartiteDigraph) -> ConditionWitness:
    """Minimum of ``d(u) + d(v)`` over pairs with a common out- or in-neighbour."""
    om, im = D.out_masks, D.in_masks
    best = _min_pair(D, lambda u, v: bool(om[u] & om[v] or im[u] & im[v]))
    if best is None:
        raise NoQualifyingPairError("no two vertices share an out- or in-neighbour")
    s, u, v = best
    return ConditionWitness(D.a, s, (D.vertex(u), D.vertex(v)))


def min_common_neighbour_sum(D: BipartiteDigraph) -> Optional[int]:
    om, im, deg = D.out_masks, D.in_masks, D.degrees
    best = None
    n = D.order
    for u in range(n):
        for v in range(u + 1, n):
            if om[u] & om[v] or im[u] & im[v]:
                s = deg[u] + deg[v]
                if best is None or s < best:
                    best = s
    return best


# -- connectivity ------------------------------------------------------------


def _reach(masks: tuple[int, ...], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        v = 0
        while f:
            if f & 1:
                nxt |= masks[v]
            f >>= 1
            v += 1
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_strong(D: BipartiteDigraph) -> bool:
    full = (1 << D.order) - 1
    return _reach(D.out_masks, 0) == full and _reach(D.in_masks, 0) == full


# -- adjacency classes -------------------------------------------------------


class AdjacencyKind(enum.Enum):
    COMPLETE_BIPARTITE = "complete-bipartite"
    COMPLETE_MINUS_ONE_ARC = "complete-minus-one-arc"
    SEMICOMPLETE_BIPARTITE = "semicomplete-bipartite"
    GENERAL = "general"


@dataclass(frozen=True)
class AdjacencyClass:
    kind: AdjacencyKind
    missing: Optional[tuple[Vertex, Vertex]] = None

    def __str__(self) -> str:
        if self.missing is None:
            return self.kind.value
        u, v = self.missing
        return f"{self.kind.value}({u}->{v})"


def is_semicomplete(D: BipartiteDigraph) -> bool:
    a = D.a
    full = (1 << a) - 1
    for i in range(a):
        row = D.out12[i]
        back = 0
        for j in range(a):
            back |= (D.out21[j] >> i & 1) << j
        if (row | back) != full:
            return False
    return True


def adjacency_class(D: BipartiteDigraph) -> AdjacencyClass:
    """Most specific adjacency grade; the classes are mutually exclusive."""
    a = D.a
    n_arcs = D.arc_count
    if n_arcs == 2 * a * a:
        return AdjacencyClass(AdjacencyKind.COMPLETE_BIPARTITE)
    if n_arcs == 2 * a * a - 1:
        full = (1 << a) - 1
        for i, row in enumerate(D.out12):
            if row != full:
                j = (full & ~row).bit_length() - 1
                return AdjacencyClass(
                    AdjacencyKind.COMPLETE_MINUS_ONE_ARC,
                    (Vertex(Side.ONE, i), Vertex(Side.TWO, j)),
                )
        for j, row in enumerate(D.out21):
            if row != full:
                i = (full & ~row).bit_length() - 1
                return AdjacencyClass(
                    AdjacencyKind.COMPLETE_MINUS_ONE_ARC,
                    (Vertex(Side.TWO, j), Vertex(Side.ONE, i)),
                )
    if is_semicomplete(D):
        return AdjacencyClass(AdjacencyKind.SEMICOMPLETE_BIPARTITE)
    return AdjacencyClass(AdjacencyKind.GENERAL)
