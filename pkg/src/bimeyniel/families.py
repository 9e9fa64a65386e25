"""Extremal digraphs, isomorphism testing and the M_{-1} classifier.

Labelling used by the generators (1-based names):

* H1, odd ``a``: ``S = x1..x(a+1)/2``, ``R`` the remaining x's,
  ``U = y1..y(a-1)/2``, ``W`` the remaining y's.
* H3, even ``a``: ``S = x1..x(a+2)/2``, ``R`` the rest,
  ``U = y1..y(a-2)/2``, ``W`` the rest.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .digraph import (
    BipartiteDigraph,
    Side,
    Vertex,
    build,
    from_masks,
    is_strong,
    min_nonadjacent_sum,
    swap_sides,
)
from .hamilton import ConstructionTrace, construct_hamiltonian
from .matching import Cycle, Direction, hall_violator, out_neighbourhood

__all__ = [
    "H1Spec",
    "H1Witness",
    "FamilyError",
    "generate_h1",
    "generate_h2",
    "generate_h3",
    "complete_bipartite",
    "directed_cycle",
    "is_isomorphic",
    "recognize_h1",
    "recognize_extremal",
    "Recognition",
    "ClassificationKind",
    "Classification",
    "classify_m_minus_one",
]


class FamilyError(ValueError):
    pass


# -- standard digraphs ---------------------------------------------------------


def complete_bipartite(a: int) -> BipartiteDigraph:
    full = (1 << a) - 1
    return from_masks(a, [full] * a, [full] * a)


def directed_cycle(a: int) -> BipartiteDigraph:
    """x1 -> y1 -> x2 -> y2 -> ... -> ya -> x1."""
    return from_masks(a, [1 << i for i in range(a)], [1 << ((j + 1) % a) for j in range(a)])


# -- H1 ------------------------------------------------------------------------


@dataclass(frozen=True)
class H1Spec:
    """Parameters of one member of the H1 family.

    ``ur`` holds pairs ``(u, r)`` meaning arc ``u -> r`` and ``ru`` pairs
    ``(r, u)`` meaning ``r -> u``; indices are 0-based within U and R.
    """

    a: int
    ur: frozenset[tuple[int, int]]
    ru: frozenset[tuple[int, int]] = frozenset()

    @property
    def m(self) -> int:
        return (self.a - 1) // 2

    @classmethod
    def minimal(cls, a: int) -> "H1Spec":
        """Fewest U-R arcs: ``u_i -> r_(i+t)`` for ``t < max(1, m - 1)``."""
        m = (a - 1) // 2
        if m < 1:
            raise FamilyError("H1 needs odd a >= 3")
        ur = {(i, (i + t) % m) for i in range(m) for t in range(max(1, m - 1))}
        return cls(a, frozenset(ur))

    @classmethod
    def full(cls, a: int) -> "H1Spec":
        m = (a - 1) // 2
        pairs = frozenset((i, j) for i in range(m) for j in range(m))
        return cls(a, pairs, pairs)

    @classmethod
    def preset(cls, a: int, pattern: str) -> "H1Spec":
        if pattern == "minimal":
            return cls.minimal(a)
        if pattern == "full":
            return cls.full(a)
        raise FamilyError(f"unknown pattern {pattern!r}")

    def validate(self) -> None:
        a, m = self.a, self.m
        if a < 3 or a % 2 == 0:
            raise FamilyError("H1 is defined for odd a >= 3")
        for i, j in self.ur | self.ru:
            if not (0 <= i < m and 0 <= j < m):
                raise FamilyError("U-R arc index out of range")
        if not self.ur:
            raise FamilyError("H1 needs at least one arc u -> r")
        floor = (a - 3) // 2
        for k in range(m):
            du = sum(1 for i, _ in self.ur if i == k) + sum(1 for _, i in self.ru if i == k)
            dr = sum(1 for _, j in self.ur if j == k) + sum(1 for j, _ in self.ru if j == k)
            if du < floor or dr < floor:
                raise FamilyError(f"U-R degree below (a-3)/2 = {floor}")


def generate_h1(spec: H1Spec) -> BipartiteDigraph:
    spec.validate()
    a, m = spec.a, spec.m
    s_n = m + 1
    S = range(s_n)
    R = range(s_n, a)
    U = range(m)
    W = range(m, a)
    out12 = [0] * a
    out21 = [0] * a
    for s in S:
        for u in U:
            out12[s] |= 1 << u
            out21[u] |= 1 << s
        for w in W:
            out21[w] |= 1 << s
    for r in R:
        for w in W:
            out12[r] |= 1 << w
            out21[w] |= 1 << r
    for u, r in spec.ur:
        out21[u] |= 1 << (s_n + r)
    for r, u in spec.ru:
        out12[s_n + r] |= 1 << u
    return from_masks(a, out12, out21)


# -- H2, H3 --------------------------------------------------------------------

_H2_ARCS = [
    ("x1", "y2"), ("y2", "x3"), ("x3", "y3"), ("y3", "x1"),
    ("x2", "y2"), ("y2", "x2"), ("x2", "y3"), ("y3", "x2"),
    ("y1", "x1"), ("x1", "y1"), ("y1", "x3"), ("x3", "y1"),
]


def generate_h2() -> BipartiteDigraph:
    return build(3, _H2_ARCS)


def generate_h3(a: int) -> BipartiteDigraph:
    if a < 4 or a % 2:
        raise FamilyError("H3 is defined for even a >= 4")
    s_n = (a + 2) // 2
    u_n = (a - 2) // 2
    full = (1 << a) - 1
    out12 = [0] * a
    out21 = [0] * a
    for r in range(s_n, a):
        out12[r] = full
        for y in range(a):
            out21[y] |= 1 << r
    for u in range(u_n):
        out21[u] |= full
        for x in range(a):
            out12[x] |= 1 << u
    for w in range(u_n, a):
        for s in range(s_n):
            out21[w] |= 1 << s
    return from_masks(a, out12, out21)


# -- isomorphism ---------------------------------------------------------------


def _signature(D: BipartiteDigraph, v: int) -> tuple[int, int]:
    return bin(D.out_masks[v]).count("1"), bin(D.in_masks[v]).count("1")


def _side_preserving_iso(D1: BipartiteDigraph, D2: BipartiteDigraph) -> Optional[list[int]]:
    a = D1.a
    n = D1.order
    sig1 = [_signature(D1, v) for v in range(n)]
    sig2 = [_signature(D2, v) for v in range(n)]
    for lo, hi in ((0, a), (a, n)):
        if sorted(sig1[lo:hi]) != sorted(sig2[lo:hi]):
            return None
    om1, om2 = D1.out_masks, D2.out_masks
    # most constrained first: rare signatures, then neighbours of placed vertices
    counts: dict[tuple[int, int], int] = {}
    for s in sig1:
        counts[s] = counts.get(s, 0) + 1
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        placed = 0
        for v in order:
            placed |= 1 << v
        v = min(
            remaining,
            key=lambda v: (
                -bin((om1[v] | D1.in_masks[v]) & placed).count("1"),
                counts[sig1[v]],
                v,
            ),
        )
        order.append(v)
        remaining.discard(v)

    phi = [-1] * n
    used = [False] * n

    def place(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        lo, hi = (0, a) if v < a else (a, n)
        for w in range(lo, hi):
            if used[w] or sig2[w] != sig1[v]:
                continue
            ok = True
            for u in order[:k]:
                pu = phi[u]
                if (om1[v] >> u & 1) != (om2[w] >> pu & 1) or (om1[u] >> v & 1) != (om2[pu] >> w & 1):
                    ok = False
                    break
            if not ok:
                continue
            phi[v] = w
            used[w] = True
            if place(k + 1):
                return True
            phi[v] = -1
            used[w] = False
        return False

    return phi if place(0) else None


def is_isomorphic(D1: BipartiteDigraph, D2: BipartiteDigraph) -> Optional[dict[Vertex, Vertex]]:
    """An arc-preserving bijection ``V(D1) -> V(D2)``, or ``None``.

    Side-preserving maps are tried first, then maps exchanging V1 and V2.
    """
    if D1.a != D2.a or D1.arc_count != D2.arc_count:
        return None
    phi = _side_preserving_iso(D1, D2)
    if phi is not None:
        return {D1.vertex(v): D2.vertex(w) for v, w in enumerate(phi)}
    phi = _side_preserving_iso(D1, swap_sides(D2))
    if phi is not None:
        a = D1.a
        # vertex id w in swap_sides(D2) is id (w + a) mod 2a in D2
        return {D1.vertex(v): D2.vertex((w + a) % (2 * a)) for v, w in enumerate(phi)}
    return None


# -- recognition ----------------------------------------------------------------


@dataclass(frozen=True)
class H1Witness:
    """Partition ``V1 = S + R``, ``V2 = U + W`` realising an H1 member.

    With ``swapped`` set, S and R live in V2 and U and W in V1 (the
    isomorphism exchanges the partite sets).
    """

    S: tuple[Vertex, ...]
    R: tuple[Vertex, ...]
    U: tuple[Vertex, ...]
    W: tuple[Vertex, ...]
    spec: H1Spec
    swapped: bool = False

    def __str__(self) -> str:
        def fmt(vs):
            return "{" + ",".join(map(str, vs)) + "}"

        return f"S={fmt(self.S)} R={fmt(self.R)} U={fmt(self.U)} W={fmt(self.W)}"


def _validate_h1_partition(D: BipartiteDigraph, S: tuple[int, ...], U: tuple[int, ...]) -> Optional[H1Spec]:
    """Check arc rules (a)-(d) exactly for the given S (in V1) and U (in V2)."""
    a = D.a
    m = (a - 1) // 2
    if a % 2 == 0 or a < 3 or len(S) != m + 1 or len(U) != m:
        return None
    R = tuple(i for i in range(a) if i not in S)
    W = tuple(j for j in range(a) if j not in U)
    o12, o21 = D.out12, D.out21
    for s in S:
        for u in U:
            if not (o12[s] >> u & 1 and o21[u] >> s & 1):
                return None
        for w in W:
            if o12[s] >> w & 1 or not o21[w] >> s & 1:
                return None
    for r in R:
        for w in W:
            if not (o12[r] >> w & 1 and o21[w] >> r & 1):
                return None
    ur = frozenset((ui, ri) for ui, u in enumerate(U) for ri, r in enumerate(R) if o21[u] >> r & 1)
    ru = frozenset((ri, ui) for ui, u in enumerate(U) for ri, r in enumerate(R) if o12[r] >> u & 1)
    spec = H1Spec(a, ur, ru)
    try:
        spec.validate()
    except FamilyError:
        return None
    return spec


def _recognize_h1_oriented(D: BipartiteDigraph) -> Optional[tuple[tuple[int, ...], tuple[int, ...], H1Spec]]:
    a = D.a
    bad = hall_violator(D, Direction.ONE_TO_TWO)
    if bad is not None:
        spec = _validate_h1_partition(D, bad.S, bad.out_neighbourhood)
        if spec is not None:
            return bad.S, bad.out_neighbourhood, spec
    if a <= 7:
        for S in combinations(range(a), (a + 1) // 2):
            U = out_neighbourhood(D, Side.ONE, S)
            if len(U) == (a - 1) // 2:
                spec = _validate_h1_partition(D, S, U)
                if spec is not None:
                    return S, U, spec
    return None


def recognize_h1(D: BipartiteDigraph) -> Optional[H1Witness]:
    a = D.a
    if a < 3 or a % 2 == 0:
        return None
    for swapped, E in ((False, D), (True, swap_sides(D))):
        found = _recognize_h1_oriented(E)
        if found is None:
            continue
        S, U, spec = found
        src, dst = (Side.TWO, Side.ONE) if swapped else (Side.ONE, Side.TWO)
        R = tuple(i for i in range(a) if i not in S)
        W = tuple(j for j in range(a) if j not in U)
        return H1Witness(
            tuple(Vertex(src, i) for i in S),
            tuple(Vertex(src, i) for i in R),
            tuple(Vertex(dst, j) for j in U),
            tuple(Vertex(dst, j) for j in W),
            spec,
            swapped,
        )
    return None


@dataclass(frozen=True)
class Recognition:
    family: str  # "H1" or "H2"
    witness: Union[H1Witness, dict[Vertex, Vertex]]


_H2 = generate_h2()


def recognize_extremal(D: BipartiteDigraph) -> Optional[Recognition]:
    if D.a == 3:
        phi = is_isomorphic(D, _H2)
        if phi is not None:
            return Recognition("H2", phi)
    w = recognize_h1(D)
    if w is not None:
        return Recognition("H1", w)
    return None


# -- classification -------------------------------------------------------------


class ClassificationKind(enum.Enum):
    HAMILTONIAN = "hamiltonian"
    EXTREMAL_H1 = "extremal-H1"
    EXTREMAL_H2 = "extremal-H2"
    HYPOTHESIS_FAILS = "hypothesis-fails"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class Classification:
    kind: ClassificationKind
    cycle: Optional[Cycle] = None
    h1: Optional[H1Witness] = None
    h2_map: Optional[dict[Vertex, Vertex]] = None
    reason: Optional[str] = None
    trace: Optional[ConstructionTrace] = None

    def describe(self) -> str:
        k = self.kind
        if k is ClassificationKind.HAMILTONIAN:
            return f"hamiltonian: {self.cycle}"
        if k is ClassificationKind.EXTREMAL_H1:
            orient = " (partite sets swapped)" if self.h1.swapped else ""
            return f"isomorphic to an H1 member{orient}: {self.h1}"
        if k is ClassificationKind.EXTREMAL_H2:
            m = ", ".join(f"{u}->{v}" for u, v in sorted(self.h2_map.items()))
            return f"isomorphic to H2: {m}"
        if k is ClassificationKind.HYPOTHESIS_FAILS:
            return f"hypothesis fails: {self.reason}"
        return "COUNTEREXAMPLE: strong, M_-1, non-hamiltonian and not extremal"


def classify_m_minus_one(D: BipartiteDigraph, budget: Optional[int] = None) -> Classification:
    """Hamiltonian, H1, H2, hypothesis failure, or counterexample."""
    if D.a < 3:
        return Classification(ClassificationKind.HYPOTHESIS_FAILS, reason="half-order below 3")
    if not is_strong(D):
        return Classification(ClassificationKind.HYPOTHESIS_FAILS, reason="not strong")
    m = min_nonadjacent_sum(D)
    if m is not None and m < 3 * D.a - 1:
        return Classification(
            ClassificationKind.HYPOTHESIS_FAILS,
            reason=f"M_-1 fails: minimum non-adjacent degree sum {m} < {3 * D.a - 1}",
        )
    trace = construct_hamiltonian(D, budget)
    if trace.hamiltonian:
        return Classification(ClassificationKind.HAMILTONIAN, cycle=trace.outcome.cycle, trace=trace)
    rec = recognize_extremal(D)
    if rec is not None and rec.family == "H2":
        return Classification(ClassificationKind.EXTREMAL_H2, h2_map=rec.witness, trace=trace)
    if rec is not None:
        return Classification(ClassificationKind.EXTREMAL_H1, h1=rec.witness, trace=trace)
    return Classification(ClassificationKind.COUNTEREXAMPLE, trace=trace)
