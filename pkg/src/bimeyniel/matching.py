"""Directed perfect matchings, Hall violators and cycle factors.

A cycle factor exists exactly when there is a perfect matching from V1 to
V2 *and* one from V2 to V1: following the matched arcs gives every vertex a
single successor, and the resulting permutation splits into disjoint
cycles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence, Union

from .digraph import BipartiteDigraph, Side, Vertex

__all__ = [
    "Direction",
    "Matching",
    "HallViolator",
    "Cycle",
    "CycleFactor",
    "max_matching",
    "hall_violator",
    "cycle_factor",
    "has_cycle_factor_bruteforce",
    "out_neighbourhood",
]


class Direction(enum.Enum):
    ONE_TO_TWO = "V1->V2"
    TWO_TO_ONE = "V2->V1"

    @property
    def source(self) -> Side:
        return Side.ONE if self is Direction.ONE_TO_TWO else Side.TWO


def _rows(D: BipartiteDigraph, direction: Direction) -> tuple[int, ...]:
    return D.out12 if direction is Direction.ONE_TO_TWO else D.out21


@dataclass(frozen=True)
class Matching:
    direction: Direction
    pairs: dict[int, int]  # source index -> target index

    def __len__(self) -> int:
        return len(self.pairs)

    def arcs(self) -> list[tuple[Vertex, Vertex]]:
        s = self.direction.source
        return [(Vertex(s, i), Vertex(s.other, j)) for i, j in sorted(self.pairs.items())]


@dataclass(frozen=True)
class HallViolator:
    """A set ``S`` on one side with ``|N+(S)| < |S|``."""

    side: Side
    S: tuple[int, ...]
    out_neighbourhood: tuple[int, ...]

    @property
    def deficiency(self) -> int:
        return len(self.S) - len(self.out_neighbourhood)

    def vertices(self) -> list[Vertex]:
        return [Vertex(self.side, i) for i in self.S]

    def neighbours(self) -> list[Vertex]:
        return [Vertex(self.side.other, j) for j in self.out_neighbourhood]

    def __str__(self) -> str:
        s = ",".join(map(str, self.vertices()))
        n = ",".join(map(str, self.neighbours()))
        return f"S={{{s}}} N+(S)={{{n}}}"


def _bits(m: int) -> list[int]:
    out = []
    k = 0
    while m:
        if m & 1:
            out.append(k)
        m >>= 1
        k += 1
    return out


def out_neighbourhood(D: BipartiteDigraph, side: Side, S: Sequence[int]) -> tuple[int, ...]:
    """``N+(S)`` as sorted indices on the opposite side."""
    rows = D.out12 if side is Side.ONE else D.out21
    m = 0
    for i in S:
        m |= rows[i]
    return tuple(_bits(m))


def _kuhn(rows: tuple[int, ...], a: int) -> list[int]:
    """Return ``owner[target] = source`` (or -1) for a maximum matching.

    Sources are scanned in index order, targets in ascending order.
    """
    owner = [-1] * a

    def augment(s: int, seen: list[bool]) -> bool:
        row = rows[s]
        for t in range(a):
            if row >> t & 1 and not seen[t]:
                seen[t] = True
                if owner[t] < 0 or augment(owner[t], seen):
                    owner[t] = s
                    return True
        return False

    for s in range(a):
        augment(s, [False] * a)
    return owner


def max_matching(D: BipartiteDigraph, direction: Direction) -> Matching:
    owner = _kuhn(_rows(D, direction), D.a)
    pairs = {s: t for t, s in enumerate(owner) if s >= 0}
    return Matching(direction, dict(sorted(pairs.items())))


def _violator_from(rows: tuple[int, ...], a: int, owner: list[int], side: Side) -> Optional[HallViolator]:
    matched = {s for s in owner if s >= 0}
    if len(matched) == a:
        return None
    # sources reachable from every unmatched source by alternating paths
    S = set(range(a)) - matched
    stack = list(S)
    while stack:
        s = stack.pop()
        for t in _bits(rows[s]):
            p = owner[t]
            if p >= 0 and p not in S:
                S.add(p)
                stack.append(p)
    m = 0
    for s in S:
        m |= rows[s]
    return HallViolator(side, tuple(sorted(S)), tuple(_bits(m)))


def hall_violator(D: BipartiteDigraph, direction: Direction) -> Optional[HallViolator]:
    """The maximal Hall violator, or ``None`` if a perfect matching exists."""
    rows = _rows(D, direction)
    return _violator_from(rows, D.a, _kuhn(rows, D.a), direction.source)


@dataclass(frozen=True)
class Cycle:
    """A closed alternating vertex sequence, rotated to start at its least vertex."""

    vertices: tuple[Vertex, ...]

    @classmethod
    def from_ids(cls, D: BipartiteDigraph, ids: Sequence[int]) -> "Cycle":
        k = ids.index(min(ids))
        ids = tuple(ids[k:]) + tuple(ids[:k])
        return cls(tuple(D.vertex(v) for v in ids))

    def ids(self, D: BipartiteDigraph) -> tuple[int, ...]:
        return tuple(D.vid(v) for v in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return "".join(map(str, self.vertices + self.vertices[:1]))

    def validate(self, D: BipartiteDigraph) -> None:
        ids = self.ids(D)
        if len(ids) < 2 or len(ids) % 2:
            raise ValueError(f"cycle {self} has odd or too small length")
        if len(set(ids)) != len(ids):
            raise ValueError(f"cycle {self} repeats a vertex")
        for k, u in enumerate(ids):
            v = ids[(k + 1) % len(ids)]
            if not D.has_arc_id(u, v):
                raise ValueError(f"cycle {self} uses missing arc {D.vertex(u)}->{D.vertex(v)}")


@dataclass(frozen=True)
class CycleFactor:
    cycles: tuple[Cycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __str__(self) -> str:
        return " + ".join(map(str, self.cycles))

    def validate(self, D: BipartiteDigraph) -> None:
        seen: set[int] = set()
        for c in self.cycles:
            c.validate(D)
            ids = set(c.ids(D))
            if ids & seen:
                raise ValueError("cycles of the factor are not disjoint")
            seen |= ids
        if len(seen) != D.order:
            raise ValueError("cycle factor does not cover every vertex")


def _factor_from_successors(D: BipartiteDigraph, succ: list[int]) -> CycleFactor:
    seen = [False] * D.order
    cycles = []
    for start in range(D.order):
        if seen[start]:
            continue
        ids = []
        v = start
        while not seen[v]:
            seen[v] = True
            ids.append(v)
            v = succ[v]
        cycles.append(Cycle.from_ids(D, ids))
    return CycleFactor(tuple(cycles))


def cycle_factor(D: BipartiteDigraph) -> Union[CycleFactor, HallViolator]:
    """A cycle factor, or the Hall violator of the first failing direction.

    V1->V2 is checked before V2->V1.
    """
    a = D.a
    succ = [0] * D.order
    for direction in (Direction.ONE_TO_TWO, Direction.TWO_TO_ONE):
        rows = _rows(D, direction)
        owner = _kuhn(rows, a)
        bad = _violator_from(rows, a, owner, direction.source)
        if bad is not None:
            return bad
        for t, s in enumerate(owner):
            if direction is Direction.ONE_TO_TWO:
                succ[s] = a + t
            else:
                succ[a + s] = t
    return _factor_from_successors(D, succ)


def _bijections(rows: tuple[int, ...], a: int):
    for p in permutations(range(a)):
        if all(rows[i] >> p[i] & 1 for i in range(a)):
            yield p


def has_cycle_factor_bruteforce(D: BipartiteDigraph) -> bool:
    """Oracle: search every successor assignment for a spanning disjoint-cycle set.

    A spanning collection of disjoint cycles is the same thing as choosing
    one out-arc per vertex so that every vertex also receives exactly one;
    in a bipartite digraph that is a bijection V1->V2 plus one V2->V1.
    """
    a = D.a
    for _ in _bijections(D.out12, a):
        for _ in _bijections(D.out21, a):
            return True
        return False
    return False
